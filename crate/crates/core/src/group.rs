//! Elements of G(m,p,n) in wreath-product form `[u; (a_1, ..., a_n)]`.
//!
//! An element is a monomial matrix whose column `j` holds `ω^{a_j}` in row
//! `u(j)`, with `ω` a primitive `m`-th root of unity. Roots of unity are never
//! materialized: everything is exact arithmetic on exponents mod `m`.
//!
//! Products follow the matrix convention, so `a.multiply(b)` applies `b`
//! first and then `a`:
//!
//! ```text
//! [u; (a_1..a_n)] · [v; (b_1..b_n)] = [uv; (a_{v(1)} + b_1, ..., a_{v(n)} + b_n)]
//! ```
//!
//! Indices are 0-based internally and 1-based in text.

use std::fmt;

use crate::error::{Error, Result};

/// The triple `(m, p, n)` with `p | m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupParams {
    m: u32,
    p: u32,
    n: usize,
}

impl GroupParams {
    pub fn new(m: u32, p: u32, n: usize) -> Result<Self> {
        let bad = |reason| Err(Error::InvalidParams { m, p, n, reason });
        if m == 0 || p == 0 || n == 0 {
            return bad("m, p and n must be positive");
        }
        if !m.is_multiple_of(p) {
            return bad("p must divide m");
        }
        if n > u8::MAX as usize {
            return bad("n must be at most 255");
        }
        Ok(GroupParams { m, p, n })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `|G(m,p,n)| = m^n · n! / p`, or `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        let mut total: u128 = 1;
        for k in 1..=self.n as u128 {
            total = total.checked_mul(k)?.checked_mul(self.m as u128)?;
        }
        Some(total / self.p as u128)
    }

    /// Whether the group has diagonal reflections at all.
    pub fn has_diagonal_reflections(&self) -> bool {
        self.p < self.m
    }

    pub(crate) fn reduce(&self, x: i128) -> u32 {
        x.rem_euclid(self.m as i128) as u32
    }

    pub(crate) fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.m as u64) as u32
    }

    pub(crate) fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.m - a
        }
    }

    pub(crate) fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Whether `r` is a well-formed reflection of this group.
    pub fn contains_reflection(&self, r: &Reflection) -> bool {
        match *r {
            Reflection::Transposition { i, j, a } => i < j && (j as usize) < self.n && a < self.m,
            Reflection::Diagonal { i, b } => {
                (i as usize) < self.n && b != 0 && b < self.m && b % self.p == 0
            }
        }
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{},{})", self.m, self.p, self.n)
    }
}

impl std::str::FromStr for GroupParams {
    type Err = Error;

    /// Parses `m,p,n`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Syntax {
                offset: 0,
                message: format!("expected `m,p,n`, found `{s}`"),
            });
        }
        let num = |i: usize| -> Result<u64> {
            parts[i].parse::<u64>().map_err(|_| Error::Syntax {
                offset: 0,
                message: format!("`{}` is not a non-negative integer", parts[i]),
            })
        };
        let (m, p, n) = (num(0)?, num(1)?, num(2)?);
        if m > u32::MAX as u64 || p > u32::MAX as u64 {
            return Err(Error::Syntax {
                offset: 0,
                message: "m and p must fit in 32 bits".into(),
            });
        }
        GroupParams::new(m as u32, p as u32, n as usize)
    }
}

/// An element `[u; (a_1, ..., a_n)]` of G(m,p,n), weights canonical in `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    params: GroupParams,
    perm: Vec<u8>,
    weights: Vec<u32>,
}

impl Element {
    pub fn identity(params: GroupParams) -> Self {
        Element {
            params,
            perm: (0..params.n as u8).collect(),
            weights: vec![0; params.n],
        }
    }

    /// Builds an element from the 0-based image sequence of its permutation and
    /// arbitrary integer weights, which are reduced mod `m`.
    pub fn new(params: GroupParams, perm: Vec<usize>, weights: Vec<i64>) -> Result<Self> {
        let n = params.n;
        if weights.len() != n {
            return Err(Error::WeightCount {
                expected: n,
                found: weights.len(),
            });
        }
        if perm.len() != n {
            return Err(Error::Arity {
                expected: n,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; n];
        for &x in &perm {
            if x >= n {
                return Err(Error::IndexOutOfRange { index: x + 1, n });
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::RepeatedIndex(x + 1));
            }
        }
        let weights: Vec<u32> = weights
            .into_iter()
            .map(|w| params.reduce(w as i128))
            .collect();
        let element = Element {
            params,
            perm: perm.into_iter().map(|x| x as u8).collect(),
            weights,
        };
        let sum = element.weight();
        if !sum.is_multiple_of(params.p) {
            return Err(Error::NotMember { sum, p: params.p });
        }
        Ok(element)
    }

    /// Diagonal element `[id; weights]`.
    pub fn diagonal(params: GroupParams, weights: Vec<i64>) -> Result<Self> {
        Element::new(params, (0..params.n).collect(), weights)
    }

    pub(crate) fn from_raw(params: GroupParams, perm: Vec<u8>, weights: Vec<u32>) -> Self {
        debug_assert_eq!(perm.len(), params.n);
        debug_assert!(weights.iter().all(|&w| w < params.m));
        Element {
            params,
            perm,
            weights,
        }
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    /// Image of `i` under the underlying permutation (0-based).
    pub fn image(&self, i: usize) -> usize {
        self.perm[i] as usize
    }

    pub fn perm(&self) -> Vec<usize> {
        self.perm.iter().map(|&x| x as usize).collect()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Total weight `a_1 + ... + a_n` mod `m`.
    pub fn weight(&self) -> u32 {
        let m = self.params.m as u64;
        (self.weights.iter().map(|&w| w as u64).sum::<u64>() % m) as u32
    }

    pub fn is_identity(&self) -> bool {
        self.weights.iter().all(|&w| w == 0) && self.is_diagonal()
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn multiply(&self, other: &Element) -> Result<Element> {
        if self.params != other.params {
            return Err(Error::ParamsMismatch);
        }
        Ok(self.compose(other))
    }

    /// Product without the parameter check; callers guarantee a common group.
    pub(crate) fn compose(&self, other: &Element) -> Element {
        debug_assert_eq!(self.params, other.params);
        let pr = &self.params;
        let mut perm = Vec::with_capacity(pr.n);
        let mut weights = Vec::with_capacity(pr.n);
        for k in 0..pr.n {
            let vk = other.perm[k] as usize;
            perm.push(self.perm[vk]);
            weights.push(pr.add(self.weights[vk], other.weights[k]));
        }
        Element {
            params: self.params,
            perm,
            weights,
        }
    }

    pub fn inverse(&self) -> Element {
        let pr = &self.params;
        let mut perm = vec![0u8; pr.n];
        let mut weights = vec![0u32; pr.n];
        for j in 0..pr.n {
            let uj = self.perm[j] as usize;
            perm[uj] = j as u8;
            weights[uj] = pr.neg(self.weights[j]);
        }
        Element {
            params: self.params,
            perm,
            weights,
        }
    }

    /// `x⁻¹ · self · x`.
    pub fn conjugate_by(&self, x: &Element) -> Element {
        x.inverse().compose(self).compose(x)
    }

    /// The same element viewed in another group with identical `m` and `n`.
    pub fn with_params(&self, params: GroupParams) -> Result<Element> {
        if params.m != self.params.m || params.n != self.params.n {
            return Err(Error::ParamsMismatch);
        }
        let sum = self.weight();
        if !sum.is_multiple_of(params.p) {
            return Err(Error::NotMember { sum, p: params.p });
        }
        Ok(Element {
            params,
            ..self.clone()
        })
    }

    pub fn is_reflection(&self) -> bool {
        Reflection::from_element(self).is_some()
    }
}

/// A reflection of G(m,p,n): `[(i j); a]` or a diagonal reflection with weight `b` at `i`.
///
/// `[(i j); a]` has weight `a` at `i` and `-a` at `j`; it is stored with `i < j`.
/// Diagonal reflections need `b ≢ 0 (mod m)` and `b ≡ 0 (mod p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reflection {
    Transposition { i: u8, j: u8, a: u32 },
    Diagonal { i: u8, b: u32 },
}

impl Reflection {
    /// `[(i j); a]` with 0-based `i != j`; the pair is normalized to `i < j`.
    pub fn transposition(params: GroupParams, i: usize, j: usize, a: i64) -> Result<Self> {
        let n = params.n;
        for x in [i, j] {
            if x >= n {
                return Err(Error::IndexOutOfRange { index: x + 1, n });
            }
        }
        if i == j {
            return Err(Error::RepeatedIndex(i + 1));
        }
        let a = params.reduce(a as i128);
        Ok(if i < j {
            Reflection::Transposition {
                i: i as u8,
                j: j as u8,
                a,
            }
        } else {
            Reflection::Transposition {
                i: j as u8,
                j: i as u8,
                a: params.neg(a),
            }
        })
    }

    /// Diagonal reflection with weight `b` at 0-based position `i`.
    pub fn diagonal(params: GroupParams, i: usize, b: i64) -> Result<Self> {
        if i >= params.n {
            return Err(Error::IndexOutOfRange {
                index: i + 1,
                n: params.n,
            });
        }
        let b = params.reduce(b as i128);
        if b == 0 || !b.is_multiple_of(params.p) {
            return Err(Error::NotReflection(format!(
                "a diagonal reflection of {params} needs a weight that is a nonzero multiple of p, got {b}"
            )));
        }
        Ok(Reflection::Diagonal { i: i as u8, b })
    }

    /// Recognizes reflections: a transposition with opposite weights on its
    /// two points, or a diagonal element with exactly one nonzero weight.
    pub fn from_element(g: &Element) -> Option<Reflection> {
        let pr = g.params;
        let moved: Vec<usize> = (0..pr.n).filter(|&k| g.image(k) != k).collect();
        match moved.as_slice() {
            [] => {
                let mut nonzero = g.weights.iter().enumerate().filter(|(_, &w)| w != 0);
                let (i, &b) = nonzero.next()?;
                if nonzero.next().is_some() {
                    return None;
                }
                // Membership already forces p | b.
                Some(Reflection::Diagonal { i: i as u8, b })
            }
            &[i, j] => {
                let fixed_weights_zero = (0..pr.n)
                    .filter(|&k| k != i && k != j)
                    .all(|k| g.weights[k] == 0);
                if fixed_weights_zero && pr.add(g.weights[i], g.weights[j]) == 0 {
                    Some(Reflection::Transposition {
                        i: i as u8,
                        j: j as u8,
                        a: g.weights[i],
                    })
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn to_element(&self, params: GroupParams) -> Element {
        let mut perm: Vec<u8> = (0..params.n as u8).collect();
        let mut weights = vec![0u32; params.n];
        match *self {
            Reflection::Transposition { i, j, a } => {
                perm.swap(i as usize, j as usize);
                weights[i as usize] = a;
                weights[j as usize] = params.neg(a);
            }
            Reflection::Diagonal { i, b } => weights[i as usize] = b,
        }
        Element::from_raw(params, perm, weights)
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self, Reflection::Diagonal { .. })
    }

    /// Underlying transposition as a 0-based pair, `None` for diagonal reflections.
    pub fn support(&self) -> Option<(usize, usize)> {
        match *self {
            Reflection::Transposition { i, j, .. } => Some((i as usize, j as usize)),
            Reflection::Diagonal { .. } => None,
        }
    }

    /// Vertices touched by this reflection's edge (one for a loop).
    pub fn vertices(&self) -> (usize, usize) {
        match *self {
            Reflection::Transposition { i, j, .. } => (i as usize, j as usize),
            Reflection::Diagonal { i, .. } => (i as usize, i as usize),
        }
    }

    /// Weight of a transposition-like reflection read from endpoint `v`
    /// (`a` at `i`, `-a` at `j`).
    pub fn weight_at(&self, params: GroupParams, v: usize) -> Option<u32> {
        match *self {
            Reflection::Transposition { i, a, .. } if i as usize == v => Some(a),
            Reflection::Transposition { j, a, .. } if j as usize == v => Some(params.neg(a)),
            _ => None,
        }
    }

    /// `x⁻¹ · self · x` for another reflection `x`; the result is again a reflection.
    pub fn conjugate_by(&self, x: &Reflection, params: GroupParams) -> Reflection {
        match (*self, *x) {
            (Reflection::Diagonal { .. }, Reflection::Diagonal { .. }) => *self,
            _ => {
                let c = self
                    .to_element(params)
                    .conjugate_by(&x.to_element(params));
                Reflection::from_element(&c).expect("conjugate of a reflection is a reflection")
            }
        }
    }

    /// `x · self · x⁻¹`.
    pub fn conjugate_inverse_by(&self, x: &Reflection, params: GroupParams) -> Reflection {
        match (*self, *x) {
            (Reflection::Diagonal { .. }, Reflection::Diagonal { .. }) => *self,
            _ => {
                let xe = x.to_element(params);
                let c = xe.compose(&self.to_element(params)).compose(&xe.inverse());
                Reflection::from_element(&c).expect("conjugate of a reflection is a reflection")
            }
        }
    }
}

/// All reflections of the group: `[(i j); a]` for `i < j`, `a = 0..m`, then the
/// diagonal ones at each position with weights `p, 2p, ..., m - p`.
pub fn enumerate_reflections(params: GroupParams) -> Vec<Reflection> {
    let n = params.n;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for a in 0..params.m {
                out.push(Reflection::Transposition {
                    i: i as u8,
                    j: j as u8,
                    a,
                });
            }
        }
    }
    if params.has_diagonal_reflections() {
        for i in 0..n {
            for b in (params.p..params.m).step_by(params.p as usize) {
                out.push(Reflection::Diagonal { i: i as u8, b });
            }
        }
    }
    out
}

/// Every element of the group in a fixed order (permutations in lexicographic
/// order, then weight vectors). Refuses groups larger than `max`.
pub fn enumerate_elements(params: GroupParams, max: usize) -> Result<Vec<Element>> {
    let order = params.order().filter(|&o| o <= max as u128);
    let Some(order) = order else {
        return Err(Error::LimitExceeded {
            what: "group order",
            limit: max,
        });
    };
    let n = params.n;
    let m = params.m;
    let mut out = Vec::with_capacity(order as usize);
    let mut perm: Vec<u8> = (0..n as u8).collect();
    loop {
        // weight vectors: first n-1 free, last one ranges over the values keeping p | sum
        let mut w = vec![0u32; n];
        'weights: loop {
            let partial: u64 = w[..n - 1].iter().map(|&x| x as u64).sum();
            for last in 0..m {
                if (partial + last as u64).is_multiple_of(params.p as u64) {
                    let mut weights = w.clone();
                    weights[n - 1] = last;
                    out.push(Element::from_raw(params, perm.clone(), weights));
                }
            }
            // increment the first n-1 digits
            let mut k = 0;
            loop {
                if k == n - 1 {
                    break 'weights;
                }
                w[k] += 1;
                if w[k] < m {
                    break;
                }
                w[k] = 0;
                k += 1;
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    debug_assert_eq!(out.len() as u128, order);
    Ok(out)
}

fn next_permutation(xs: &mut [u8]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// Number of reflections: `m·n(n-1)/2` transposition-like plus `n(m/p - 1)` diagonal.
pub fn reflection_count(params: GroupParams) -> usize {
    let (m, p, n) = (params.m as usize, params.p as usize, params.n);
    m * n * (n - 1) / 2 + n * (m / p - 1)
}

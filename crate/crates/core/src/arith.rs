//! Small integer helpers: gcd with the "include m" convention and Bézout coefficients.

/// Greatest common divisor of two non-negative integers; `gcd(0, 0) = 0`.
pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `gcd(m, k_1, ..., k_r)` for residues mod `m`. Zero residues contribute
/// nothing, so the result always divides `m` and equals `m` when every `k_i` is 0.
pub fn gcd_mod(m: u32, residues: impl IntoIterator<Item = u32>) -> u32 {
    residues
        .into_iter()
        .fold(m as u64, |acc, k| gcd(acc, k as u64)) as u32
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b)`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Bézout coefficients for a whole sequence: `sum(c_i * q_i) = gcd(q_1, ..., q_k)`.
pub fn bezout(values: &[i128]) -> (i128, Vec<i128>) {
    let mut coeffs = Vec::with_capacity(values.len());
    let mut g = 0i128;
    for &v in values {
        let (ng, s, t) = ext_gcd(g, v);
        for c in coeffs.iter_mut() {
            *c *= s;
        }
        coeffs.push(t);
        g = ng;
    }
    (g, coeffs)
}

/// Canonical residue of `x` modulo `m` in `[0, m)`.
pub fn residue(x: i128, m: u32) -> u32 {
    x.rem_euclid(m as i128) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_includes_modulus() {
        assert_eq!(gcd_mod(4, [2, 2, 2, 2]), 2);
        assert_eq!(gcd_mod(4, [0, 0]), 4);
        assert_eq!(gcd_mod(30, [22, 7, 6]), 1);
        assert_eq!(gcd_mod(6, []), 6);
    }

    #[test]
    fn bezout_combination() {
        let vals = [12i128, 18, 8];
        let (g, c) = bezout(&vals);
        assert_eq!(g, 2);
        let sum: i128 = vals.iter().zip(&c).map(|(v, c)| v * c).sum();
        assert_eq!(sum, 2);

        let (g, c) = bezout(&[0, 0]);
        assert_eq!(g, 0);
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn residues_are_canonical() {
        assert_eq!(residue(-1, 4), 3);
        assert_eq!(residue(35, 30), 5);
    }
}

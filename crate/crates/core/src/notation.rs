//! Text forms of elements, reflections, factorizations and braid words.
//!
//! ```text
//! element       := "[" perm ";" "(" int ("," int)* ")" "]"
//! perm          := "id" | cycle+
//! cycle         := "(" index (ws index)* ")"
//! reflection    := "[" "(" i j ")" ";" int "]" | element
//! factorization := reflection (";" reflection)*      -- split at bracket depth 0
//! braid         := signed-int (ws signed-int)*
//! ```
//!
//! Whitespace is accepted anywhere between tokens. Indices are 1-based.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Element, GroupParams, Reflection};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.err(format!("expected `{c}`, found `{found}`")),
                None => self.err(format!("expected `{c}`, found end of input")),
            }
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let mut len = 0;
        for (k, ch) in rest.char_indices() {
            if ch.is_ascii_digit() || (k == 0 && (ch == '-' || ch == '+')) {
                len = k + ch.len_utf8();
            } else {
                break;
            }
        }
        let token = &rest[..len];
        match token.parse::<i64>() {
            Ok(v) => {
                self.pos += len;
                Ok(v)
            }
            Err(_) if token.is_empty() => self.err("expected an integer"),
            Err(_) => self.err(format!("`{token}` is not a 64-bit integer")),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected trailing `{c}`")),
        }
    }
}

/// Parses cycles into a 0-based one-line image sequence, also returning the
/// first index written.
fn parse_perm(cur: &mut Cursor<'_>, n: usize) -> Result<(Vec<usize>, Option<usize>)> {
    let mut image: Vec<usize> = (0..n).collect();
    if cur.eat_keyword("id") {
        return Ok((image, None));
    }
    let mut first = None;
    let mut seen = vec![false; n];
    let mut any = false;
    while cur.peek() == Some('(') {
        cur.expect('(')?;
        let mut cycle = Vec::new();
        while cur.peek() != Some(')') {
            let start = cur.pos;
            let v = cur.integer()?;
            if v < 1 || v as u64 > n as u64 {
                cur.pos = start;
                return Err(Error::IndexOutOfRange {
                    index: v.max(0) as usize,
                    n,
                });
            }
            let v = v as usize - 1;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::RepeatedIndex(v + 1));
            }
            first.get_or_insert(v);
            cycle.push(v);
            cur.eat(',');
        }
        cur.expect(')')?;
        if cycle.is_empty() {
            return cur.err("empty cycle");
        }
        for k in 0..cycle.len() {
            image[cycle[k]] = cycle[(k + 1) % cycle.len()];
        }
        any = true;
    }
    if !any {
        return cur.err("expected `id` or a cycle");
    }
    Ok((image, first))
}

fn parse_element_at(cur: &mut Cursor<'_>, params: GroupParams) -> Result<Element> {
    cur.expect('[')?;
    let (perm, _) = parse_perm(cur, params.n())?;
    cur.expect(';')?;
    cur.expect('(')?;
    let mut weights = vec![cur.integer()?];
    while cur.eat(',') {
        weights.push(cur.integer()?);
    }
    cur.expect(')')?;
    cur.expect(']')?;
    Element::new(params, perm, weights)
}

/// Parses `[PERM; (w_1,...,w_n)]`; weights may have any sign and are reduced mod `m`.
pub fn parse_element(text: &str, params: GroupParams) -> Result<Element> {
    let mut cur = Cursor::new(text);
    let g = parse_element_at(&mut cur, params)?;
    cur.finish()?;
    Ok(g)
}

/// Parses a reflection, either the shorthand `[(i j); a]` or a full element literal.
pub fn parse_reflection(text: &str, params: GroupParams) -> Result<Reflection> {
    let mut cur = Cursor::new(text);
    let element = {
        let save = cur.pos;
        cur.expect('[')?;
        let (perm, first) = parse_perm(&mut cur, params.n())?;
        cur.expect(';')?;
        if cur.peek() == Some('(') {
            cur.pos = save;
            parse_element_at(&mut cur, params)?
        } else {
            let a = cur.integer()?;
            cur.expect(']')?;
            let moved: Vec<usize> = (0..params.n()).filter(|&k| perm[k] != k).collect();
            match (moved.as_slice(), first) {
                // the weight belongs to the index written first
                (&[x, y], Some(i)) => {
                    let j = if i == x { y } else { x };
                    Reflection::transposition(params, i, j, a)?.to_element(params)
                }
                _ => {
                    return Err(Error::NotReflection(format!(
                        "the shorthand `[(i j); a]` needs a single transposition, got `{text}`"
                    )))
                }
            }
        }
    };
    cur.finish()?;
    Reflection::from_element(&element).ok_or_else(|| Error::NotReflection(text.trim().to_string()))
}

/// Splits at `;` outside brackets and parentheses.
fn split_top_level(text: &str) -> Vec<(usize, &str)> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, ch) in text.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ';' if depth == 0 => {
                parts.push((start, &text[start..k]));
                start = k + 1;
            }
            _ => {}
        }
    }
    parts.push((start, &text[start..]));
    parts
}

/// Parses `;`-separated reflection literals. Blank input is the empty factorization.
pub fn parse_reflections(text: &str, params: GroupParams) -> Result<Vec<Reflection>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(text)
        .into_iter()
        .map(|(offset, piece)| {
            parse_reflection(piece, params).map_err(|e| match e {
                Error::Syntax {
                    offset: o,
                    message,
                } => Error::Syntax {
                    offset: offset + o,
                    message,
                },
                other => other,
            })
        })
        .collect()
}

/// Writes the cycles of a 0-based image sequence, fixed points omitted, `id` if none.
pub(crate) fn write_cycles(f: &mut impl fmt::Write, image: &[usize]) -> fmt::Result {
    let n = image.len();
    let mut seen = vec![false; n];
    let mut any = false;
    for start in 0..n {
        if seen[start] || image[start] == start {
            continue;
        }
        any = true;
        f.write_char('(')?;
        let mut v = start;
        let mut first = true;
        while !seen[v] {
            seen[v] = true;
            if !first {
                f.write_char(' ')?;
            }
            write!(f, "{}", v + 1)?;
            first = false;
            v = image[v];
        }
        f.write_char(')')?;
    }
    if !any {
        f.write_str("id")?;
    }
    Ok(())
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char('[')?;
        write_cycles(f, &self.perm())?;
        f.write_str("; (")?;
        for (k, w) in self.weights().iter().enumerate() {
            if k > 0 {
                f.write_char(',')?;
            }
            write!(f, "{w}")?;
        }
        f.write_str(")]")
    }
}

use std::fmt::Write as _;

/// Display adapter for a reflection; diagonal reflections need `n` to print.
pub struct ReflectionDisplay {
    reflection: Reflection,
    params: GroupParams,
}

impl Reflection {
    pub fn display(&self, params: GroupParams) -> ReflectionDisplay {
        ReflectionDisplay {
            reflection: *self,
            params,
        }
    }
}

impl fmt::Display for ReflectionDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reflection {
            Reflection::Transposition { i, j, a } => write!(f, "[({} {}); {}]", i + 1, j + 1, a),
            Reflection::Diagonal { .. } => write!(f, "{}", self.reflection.to_element(self.params)),
        }
    }
}

/// `;`-separated reflections, the inverse of [`parse_reflections`].
pub fn format_reflections(factors: &[Reflection], params: GroupParams) -> String {
    let mut out = String::new();
    for (k, r) in factors.iter().enumerate() {
        if k > 0 {
            out.push_str("; ");
        }
        let _ = write!(out, "{}", r.display(params));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: u32, p: u32, n: usize) -> GroupParams {
        GroupParams::new(m, p, n).unwrap()
    }

    #[test]
    fn worked_element_in_one_line_form() {
        let pr = params(30, 5, 6);
        let g = parse_element("[(1 2)(3 4 5); (1,21,2,3,2,6)]", pr).unwrap();
        assert_eq!(g.perm(), vec![1, 0, 3, 4, 2, 5]);
        assert_eq!(g.weights(), &[1, 21, 2, 3, 2, 6]);
        assert_eq!(g.to_string(), "[(1 2)(3 4 5); (1,21,2,3,2,6)]");
    }

    #[test]
    fn whitespace_and_signs() {
        let pr = params(4, 2, 3);
        let g = parse_element("  [ ( 2 3 ) ;( -1 , 5,  0 ) ] ", pr).unwrap();
        assert_eq!(g.weights(), &[3, 1, 0]);
        assert_eq!(g.to_string(), "[(2 3); (3,1,0)]");
    }

    #[test]
    fn rejects_bad_input() {
        let pr = params(2, 2, 2);
        assert!(matches!(
            parse_element("[id;(1,0)]", pr),
            Err(Error::NotMember { sum: 1, p: 2 })
        ));
        assert!(matches!(
            parse_element("[(1 3);(0,0)]", pr),
            Err(Error::IndexOutOfRange { index: 3, n: 2 })
        ));
        assert!(matches!(
            parse_element("[(1 2)(2);(0,0)]", pr),
            Err(Error::RepeatedIndex(2))
        ));
        assert!(matches!(
            parse_element("[id;(0,0,0)]", pr),
            Err(Error::WeightCount { .. })
        ));
        assert!(matches!(
            parse_element("[id;(0,0)] x", pr),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn reflection_literals() {
        let pr = params(3, 1, 3);
        assert_eq!(
            parse_reflection("[(3 1); 1]", pr).unwrap(),
            Reflection::Transposition { i: 0, j: 2, a: 2 }
        );
        assert_eq!(
            parse_reflection("[id; (0,2,0)]", pr).unwrap(),
            Reflection::Diagonal { i: 1, b: 2 }
        );
        assert!(parse_reflection("[(1 2 3); 1]", pr).is_err());
        assert!(parse_reflection("[id; (1,2,0)]", pr).is_err());
    }

    #[test]
    fn factorization_round_trip() {
        let pr = params(30, 5, 6);
        let text = "[(1 3); 1]; [(1 3); 23]; [(3 6); 0]; [(3 6); 29]; [id; (0,0,0,0,0,5)]; [(1 2); 1]; [(3 4); 2]; [(4 5); 3]";
        let fs = parse_reflections(text, pr).unwrap();
        assert_eq!(fs.len(), 8);
        assert_eq!(format_reflections(&fs, pr), text);
        assert!(parse_reflections("  ", pr).unwrap().is_empty());
    }
}

//! Canonical text form of polynomials.
//!
//! Terms are listed from the largest word down and joined with `" + "`. A
//! coefficient is written in parentheses unless it is exactly `1`; the constant
//! term is written as its bare coefficient in parentheses (or `1`). The zero
//! polynomial is `0`. Example: `(q) z[2,1] z[1,1] + (1 - q^2)`.

use std::fmt;

use super::generator::{AlgebraTag, GeneratorSymbol, Word};
use super::poly::NCPolynomial;
use crate::error::ParseError;
use crate::laurent::LaurentScalar;

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write_term(f, w, c)?;
        }
        Ok(())
    }
}

pub(crate) fn write_term(f: &mut impl fmt::Write, w: &Word, c: &LaurentScalar) -> fmt::Result {
    match (w.is_empty(), c.is_one()) {
        (true, true) => write!(f, "1"),
        (true, false) => write!(f, "({c})"),
        (false, true) => write!(f, "{w}"),
        (false, false) => write!(f, "({c}) {w}"),
    }
}

/// Splits on `sep` outside parentheses.
pub(crate) fn split_top_level<'a>(s: &'a str, sep: &str) -> Vec<&'a str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut last = 0;
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && s[i..].starts_with(sep) {
            parts.push(&s[last..i]);
            i += sep.len();
            last = i;
            continue;
        }
        i += 1;
    }
    parts.push(&s[last..]);
    parts
}

pub(crate) fn parse_symbol(tok: &str) -> Result<GeneratorSymbol, ParseError> {
    let bad = || ParseError::new(format!("bad generator '{tok}'"));
    let open = tok.find('[').ok_or_else(bad)?;
    if !tok.ends_with(']') {
        return Err(bad());
    }
    let head = &tok[..open];
    let body = &tok[open + 1..tok.len() - 1];
    let (a, b) = body.split_once(',').ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || b == 0 || a > 255 || b > 255 {
        return Err(bad());
    }
    // z[a,alpha] lists the column first; t[i,j] is row, column
    match head {
        "z" => Ok(GeneratorSymbol::z(b, a)),
        "z*" => Ok(GeneratorSymbol::z_star(b, a)),
        "t" => Ok(GeneratorSymbol::t(a, b)),
        "t*" => Ok(GeneratorSymbol::t_star(a, b)),
        _ => Err(bad()),
    }
}

pub(crate) fn parse_word(s: &str) -> Result<Word, ParseError> {
    let s = s.trim();
    if s == "1" || s.is_empty() {
        return Ok(Word::unit());
    }
    s.split_whitespace().map(parse_symbol).collect::<Result<Vec<_>, _>>().map(Word)
}

/// Parses one term `"(coeff) word"`, `"(coeff)"`, `"word"` or `"1"`.
pub(crate) fn parse_term(s: &str) -> Result<(Word, LaurentScalar), ParseError> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('(') {
        let close = rest.find(')').ok_or_else(|| ParseError::new(format!("unbalanced term '{s}'")))?;
        let coeff: LaurentScalar = rest[..close].parse()?;
        let word = parse_word(&rest[close + 1..])?;
        Ok((word, coeff))
    } else {
        Ok((parse_word(s)?, LaurentScalar::one()))
    }
}

impl NCPolynomial {
    /// Parses the canonical text form. The tag is read off the symbols; a
    /// constant polynomial takes `default_tag`.
    pub fn parse(s: &str, default_tag: AlgebraTag, n: usize) -> Result<Self, ParseError> {
        let s = s.trim();
        let mut out = NCPolynomial::zero(default_tag, n);
        if s == "0" {
            return Ok(out);
        }
        let mut terms = Vec::new();
        let mut tag = None;
        for part in split_top_level(s, " + ") {
            let (w, c) = parse_term(part)?;
            for g in w.letters() {
                match tag {
                    None => tag = Some(g.tag),
                    Some(t) if t != g.tag => return Err(ParseError::new("mixed z and t symbols")),
                    _ => {}
                }
            }
            terms.push((w, c));
        }
        if let Some(t) = tag {
            out = NCPolynomial::zero(t, n);
        }
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out.validate().map_err(|e| ParseError::new(e.to_string()))?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_examples() {
        let p = NCPolynomial::z(2, 1, 2).scale(&LaurentScalar::q_pow(1));
        assert_eq!(p.to_string(), "(q) z[2,1]");
        assert_eq!(NCPolynomial::zero(AlgebraTag::MatQ, 2).to_string(), "0");
        assert_eq!(NCPolynomial::one(AlgebraTag::MatQ, 2).to_string(), "1");
    }

    #[test]
    fn round_trip() {
        let text = "(q^2) z[1,1] z*[1,1] + (1 - q^2)";
        let p = NCPolynomial::parse(text, AlgebraTag::MatQ, 1).unwrap();
        assert_eq!(p.to_string(), text);
        let t = NCPolynomial::parse("(-q) t[2,1] + t*[1,2]", AlgebraTag::SLnQ, 2).unwrap();
        assert_eq!(t.tag(), AlgebraTag::SLnQ);
        assert_eq!(NCPolynomial::parse(&t.to_string(), AlgebraTag::SLnQ, 2).unwrap(), t);
    }

    #[test]
    fn rejects_garbage() {
        assert!(NCPolynomial::parse("z[1,1", AlgebraTag::MatQ, 2).is_err());
        assert!(NCPolynomial::parse("z[3,1]", AlgebraTag::MatQ, 2).is_err());
        assert!(NCPolynomial::parse("z[1,1] t[1,1]", AlgebraTag::MatQ, 2).is_err());
    }
}

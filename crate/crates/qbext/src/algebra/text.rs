//! Text round-trip for elements.
//!
//! Grammar (node indices are 1-based in text):
//!   element  := "0" | term (("+" | "-") term)*
//!   term     := [coeff ["*"]] letter*        (missing coeff means 1)
//!   letter   := "f[" int "," int "]"
//!   coeff    := laurent-monomial | "(" laurent ")" | "(" laurent ")/(" laurent ")"
//!
//! Printing always emits a parseable form: multi-term or fractional
//! coefficients are parenthesized, scalars are canonical in `v`.

use super::{Algebra, Elem, Letter, Word};
use crate::coeffs::{parse_frac, parse_laurent, Frac, LaurentScalar};
use num_traits::Signed;
use std::fmt;

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms().enumerate() {
            let (negative, coeff) = coeff_string(c, !w.is_empty());
            if n == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            write!(f, "{}", coeff)?;
            for (k, l) in w.iter().enumerate() {
                if k > 0 || !coeff.is_empty() {
                    write!(f, " ")?;
                }
                write!(f, "f[{},{}]", l.i + 1, l.p)?;
            }
        }
        Ok(())
    }
}

/// Render a coefficient as (sign, magnitude text). The magnitude is empty
/// for a plain 1 in front of a nonempty word.
fn coeff_string(c: &Frac, have_word: bool) -> (bool, String) {
    if let Some(l) = c.as_laurent() {
        if l.num_terms() == 1 {
            let (exp, rat) = l.terms().next().map(|(e, r)| (e, r.clone())).unwrap();
            let negative = rat.is_negative();
            let mag = LaurentScalar::monomial(exp, rat.abs());
            if mag.is_one() && have_word {
                return (negative, String::new());
            }
            return (negative, format!("{mag}"));
        }
        return (false, format!("({l})"));
    }
    (false, format!("({})/({})", c.numer(), c.denom()))
}

/// Parse an element. Node indices are 1-based; levels are arbitrary
/// integers. Unparenthesized coefficients bind only their own monomial.
pub fn parse_elem(input: &str) -> Result<Elem, String> {
    let s = input.trim();
    if s.is_empty() {
        return Err("empty element".into());
    }
    if s == "0" {
        return Ok(Elem::zero());
    }
    let mut out = Elem::zero();
    for (sign, term) in split_terms(s)? {
        let (word, coeff) = parse_term(term)?;
        let coeff = if sign { -&coeff } else { coeff };
        out.add_term(word, &coeff);
    }
    Ok(out)
}

/// Split on top-level `+`/`-` (outside parentheses and brackets), keeping
/// each term's sign.
fn split_terms(s: &str) -> Result<Vec<(bool, &str)>, String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    let mut sign = false;
    let bytes = s.as_bytes();
    for (pos, &b) in bytes.iter().enumerate() {
        match b {
            b'(' | b'[' | b'{' => depth += 1,
            b')' | b']' | b'}' => {
                depth -= 1;
                if depth < 0 {
                    return Err(format!("unbalanced bracket at byte {pos}"));
                }
            }
            b'+' | b'-' if depth == 0 => {
                // A sign directly after '^', 'e', or another operator is
                // part of an exponent, not a term separator.
                let prev = s[..pos].trim_end().bytes().last();
                if matches!(prev, None | Some(b'^') | Some(b'*') | Some(b'/')) {
                    if pos == start || s[start..pos].trim().is_empty() {
                        if b == b'-' {
                            sign = !sign;
                        }
                        start = pos + 1;
                    }
                    continue;
                }
                out.push((sign, s[start..pos].trim()));
                sign = b == b'-';
                start = pos + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err("unbalanced brackets".into());
    }
    let last = s[start..].trim();
    if last.is_empty() {
        return Err("dangling sign".into());
    }
    out.push((sign, last));
    Ok(out)
}

/// Parse one signed term into its word and coefficient.
fn parse_term(term: &str) -> Result<(Word, Frac), String> {
    let first_letter = term.find("f[");
    let (coeff_text, word_text) = match first_letter {
        Some(pos) => (&term[..pos], &term[pos..]),
        None => (term, ""),
    };
    let coeff_text = coeff_text.trim().trim_end_matches('*').trim();
    let coeff = if coeff_text.is_empty() {
        Frac::one()
    } else {
        parse_coeff(coeff_text)?
    };
    let mut word: Word = Vec::new();
    let mut rest = word_text.trim();
    while !rest.is_empty() {
        if !rest.starts_with("f[") {
            return Err(format!("expected a generator `f[i,p]`, found `{rest}`"));
        }
        let close = rest
            .find(']')
            .ok_or_else(|| format!("unterminated generator in `{rest}`"))?;
        let inside = &rest[2..close];
        let (i_text, p_text) = inside
            .split_once(',')
            .ok_or_else(|| format!("generator needs `f[i,p]`, found `f[{inside}]`"))?;
        let i: usize = i_text
            .trim()
            .parse()
            .map_err(|_| format!("bad node index `{i_text}`"))?;
        if i == 0 {
            return Err("node indices are 1-based".into());
        }
        let p: i32 = p_text
            .trim()
            .parse()
            .map_err(|_| format!("bad level `{p_text}`"))?;
        word.push(Letter::new(i - 1, p));
        rest = rest[close + 1..].trim_start_matches(['*', ' ']).trim();
    }
    Ok((word, coeff))
}

fn parse_coeff(text: &str) -> Result<Frac, String> {
    if text.contains(")/(") || text.contains(") / (") {
        return parse_frac(text);
    }
    let inner = text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(text);
    parse_laurent(inner).map(Frac::from_laurent)
}


impl Algebra {
    /// Parse an element and validate node indices against the rank.
    pub fn parse_elem(&self, input: &str) -> crate::error::QbResult<Elem> {
        let e = parse_elem(input).map_err(crate::error::QbError::Usage)?;
        for (w, _) in e.terms() {
            for l in w {
                if l.i as usize >= self.cd.rank() {
                    return Err(crate::error::QbError::Usage(format!(
                        "node index {} exceeds the rank {}",
                        l.i + 1,
                        self.cd.rank()
                    )));
                }
            }
        }
        Ok(e)
    }
}

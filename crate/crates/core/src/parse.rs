//! Canonical text grammar for elements.
//!
//! ```text
//! element  := [sign] term ( ("+" | "-") term )*
//! term     := coeff "*" monomial | monomial | coeff
//! coeff    := integer [ "/" positive-integer ]
//! monomial := gen+
//! gen      := ("E" | "F") "[" i "," j "]" [ "^" exp ]
//! ```
//!
//! Parsing accepts generators in any order (and non-canonical index pairs for
//! the split/canonical families) and normalizes to PBW form. The Unicode
//! minus sign is accepted as a synonym for `-`.

use std::sync::Arc;

use crate::algebra::AlgebraSpec;
use crate::error::{AlgebraError, Result};
use crate::pbw::UElement;
use crate::scalar::{parse_q, q};

const MAX_PARSE_DEGREE: usize = 12;

struct Scanner<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner {
            chars: src.chars().collect(),
            pos: 0,
            src,
        }
    }

    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{msg} at position {} in `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            _ => Err(self.err(&format!("expected `{c}`"))),
        }
    }

    fn integer(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self
            .chars
            .get(self.pos)
            .map_or(false, |c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == start || (self.pos == start + 1 && self.chars[start] == '-') {
            return Err(self.err("expected integer"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }
}

/// Parse an element of U(g) against `spec`.
pub fn parse_element(spec: &Arc<AlgebraSpec>, src: &str) -> Result<UElement> {
    let mut sc = Scanner::new(src);
    let mut total = UElement::zero(spec);
    let mut first = true;
    loop {
        sc.skip_ws();
        if sc.pos >= sc.chars.len() {
            if first {
                return Err(sc.err("empty element"));
            }
            break;
        }
        let mut sign = q(1);
        match sc.peek() {
            Some('+') => {
                if first {
                    return Err(sc.err("unexpected leading `+`"));
                }
                sc.bump();
            }
            Some('-') | Some('\u{2212}') => {
                sc.bump();
                sign = q(-1);
            }
            _ => {
                if !first {
                    return Err(sc.err("expected `+` or `-` between terms"));
                }
            }
        }
        let term = parse_term(spec, &mut sc)?;
        total = &total + &term.scale(&sign);
        first = false;
    }
    Ok(total)
}

fn parse_term(spec: &Arc<AlgebraSpec>, sc: &mut Scanner<'_>) -> Result<UElement> {
    let mut coeff = q(1);
    let mut saw_coeff = false;
    if sc.peek().map_or(false, |c| c.is_ascii_digit()) {
        let n = sc.integer()?;
        let c = if sc.peek() == Some('/') {
            sc.bump();
            let d = sc.integer()?;
            parse_q(&format!("{n}/{d}")).map_err(|e| sc.err(&e))?
        } else {
            parse_q(&n).map_err(|e| sc.err(&e))?
        };
        coeff = c;
        saw_coeff = true;
        if sc.peek() == Some('*') {
            sc.bump();
        }
    }
    let mut elem = UElement::scalar(spec, coeff);
    let mut saw_gen = false;
    let mut degree = 0usize;
    while matches!(sc.peek(), Some('E') | Some('F')) {
        let letter = sc.bump().unwrap();
        let expected = spec.family().letter();
        if letter != expected {
            return Err(sc.err(&format!(
                "generator letter `{letter}` does not match family {} (expected `{expected}`)",
                spec.family()
            )));
        }
        sc.expect('[')?;
        let i: usize = sc.integer()?.parse().map_err(|_| sc.err("bad row index"))?;
        sc.expect(',')?;
        let j: usize = sc
            .integer()?
            .parse()
            .map_err(|_| sc.err("bad column index"))?;
        sc.expect(']')?;
        if i < 1 || i > spec.n() || j < 1 || j > spec.n() {
            return Err(AlgebraError::IndexOutOfRange { i, j, n: spec.n() });
        }
        let mut exp = 1u32;
        if sc.peek() == Some('^') {
            sc.bump();
            exp = sc.integer()?.parse().map_err(|_| sc.err("bad exponent"))?;
            if exp == 0 {
                return Err(sc.err("exponent must be positive"));
            }
        }
        degree += exp as usize;
        if degree > MAX_PARSE_DEGREE {
            return Err(AlgebraError::CapsExceeded(format!(
                "term degree exceeds {MAX_PARSE_DEGREE}"
            )));
        }
        let gen = UElement::entry(spec, i, j);
        elem = &elem * &gen.pow(exp);
        saw_gen = true;
    }
    if !saw_gen && !saw_coeff {
        return Err(sc.err("expected coefficient or generator"));
    }
    Ok(elem)
}

/// Scan an expression for the letters/indices it uses, for CLI family
/// inference: returns `(letter, max_index)`.
pub fn scan_expr(src: &str) -> Option<(char, usize)> {
    let chars: Vec<char> = src.chars().collect();
    let mut letter = None;
    let mut max_index = 0usize;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == 'E' || c == 'F' {
            letter = Some(match letter {
                // mixed letters: report the first, parse will reject anyway
                Some(l) if l != c => l,
                _ => c,
            });
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            // only count bracketed indices, not coefficients/exponents
            let before: String = chars[..start].iter().rev().take(1).collect();
            if before == "[" || before == "," {
                if let Ok(v) = chars[start..i].iter().collect::<String>().parse::<usize>() {
                    max_index = max_index.max(v);
                }
            }
            continue;
        }
        i += 1;
    }
    letter.map(|l| (l, max_index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Family;
    use crate::scalar::qr;

    #[test]
    fn parse_and_round_trip() {
        let s = AlgebraSpec::build(Family::GlN, 2).unwrap();
        for src in [
            "E[1,1]",
            "E[1,2]E[2,1]",
            "2*E[1,2]^2 + 1/2*E[1,1] - 3",
            "-E[2,2] + E[1,1]",
            "7/3",
        ] {
            let e = parse_element(&s, src).unwrap();
            let back = parse_element(&s, &e.to_string()).unwrap();
            assert_eq!(e, back, "round trip failed for `{src}`");
        }
    }

    #[test]
    fn unordered_input_normalizes() {
        let s = AlgebraSpec::build(Family::GlN, 2).unwrap();
        let unordered = parse_element(&s, "E[2,1]E[1,2]").unwrap();
        let expect = parse_element(&s, "E[1,2]E[2,1] - E[1,1] + E[2,2]").unwrap();
        assert_eq!(unordered, expect);
    }

    #[test]
    fn split_entries_resolve_on_parse() {
        let o4 = AlgebraSpec::build(Family::SplitO, 4).unwrap();
        // F[1,4] = F[1,1'] = 0
        assert!(parse_element(&o4, "F[1,4]").unwrap().is_zero());
        // F[4,3] = -F[2,1]
        let x = parse_element(&o4, "F[4,3]").unwrap();
        let y = parse_element(&o4, "F[2,1]").unwrap();
        assert_eq!(x, y.scale(&q(-1)));
    }

    #[test]
    fn unicode_minus_accepted() {
        let s = AlgebraSpec::build(Family::GlN, 2).unwrap();
        let a = parse_element(&s, "E[1,1] \u{2212} E[2,2]").unwrap();
        let b = parse_element(&s, "E[1,1] - E[2,2]").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_malformed() {
        let s = AlgebraSpec::build(Family::GlN, 2).unwrap();
        assert!(parse_element(&s, "").is_err());
        assert!(parse_element(&s, "E[1,3]").is_err()); // index out of range
        assert!(parse_element(&s, "F[1,1]").is_err()); // wrong letter
        assert!(parse_element(&s, "E[1,1]^0").is_err());
        assert!(parse_element(&s, "1/0").is_err());
        assert!(parse_element(&s, "E[1").is_err());
        assert!(parse_element(&s, "2 E[1,1] E").is_err());
    }

    #[test]
    fn coefficients_parse_exactly() {
        let s = AlgebraSpec::build(Family::GlN, 2).unwrap();
        let e = parse_element(&s, "3/6*E[1,1]").unwrap();
        assert_eq!(e, UElement::entry(&s, 1, 1).scale(&qr(1, 2)));
    }

    #[test]
    fn scan_infers_letter_and_size() {
        assert_eq!(scan_expr("E[1,2]E[2,1]"), Some(('E', 2)));
        assert_eq!(scan_expr("2*F[1,3]^2"), Some(('F', 3)));
        assert_eq!(scan_expr("42"), None);
    }

    mod properties {
        use super::*;
        use crate::pbw::normal_form;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            // arbitrary input is either parsed or rejected, never a panic
            #[test]
            fn parser_never_panics(src in "[EF0-9\\[\\],^*/+ -]{0,30}") {
                let s = AlgebraSpec::build(Family::GlN, 3).unwrap();
                let _ = parse_element(&s, &src);
            }

            // printing is canonical and parsing inverts it
            #[test]
            fn print_parse_round_trip(
                terms in proptest::collection::vec(
                    (proptest::collection::vec(0u16..9, 0..4), -6i64..=6, 1i64..=4),
                    1..4,
                )
            ) {
                let s = AlgebraSpec::build(Family::GlN, 3).unwrap();
                let mut e = UElement::zero(&s);
                for (w, num, den) in terms {
                    e = &e + &normal_form(&s, &w).scale(&qr(num, den));
                }
                let back = parse_element(&s, &e.to_string());
                if e.is_zero() {
                    // "0" is not a term of the grammar; zero round-trips as
                    // the bare coefficient
                    prop_assert_eq!(parse_element(&s, "0").unwrap(), e);
                } else {
                    prop_assert_eq!(back.unwrap(), e);
                }
            }
        }
    }
}

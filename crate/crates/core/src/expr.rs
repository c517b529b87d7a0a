//! Text syntax for scalars and algebra elements.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := scalar '*' label | scalar | label
//! scalar := integer ['/' integer] | '(' ring-expression ')'
//! ```
//!
//! A ring expression may use `+ - * / ^`, integers, `v` (the Laurent
//! variable, `q^{1/2}`), `q` (= `v^2`) and `z<d>` (a primitive d-th root of
//! unity). A bare scalar term means that multiple of the unit. Labels are
//! looked up in the basis first, then in an optional table of named
//! elements (such as `C[s1]` for Hecke algebras).

use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{Element, FiniteDimAlgebra};
use crate::scalar::{Cyclotomic, Rational, Scalar, ScalarError, ScalarRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown basis label {label:?} at position {pos}")]
    UnknownLabel { pos: usize, label: String },
    #[error("malformed scalar at position {pos}: {msg}")]
    Scalar { pos: usize, msg: String },
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { pos, msg: msg.into() }
}

fn scalar_err(pos: usize, e: ScalarError) -> ParseError {
    ParseError::Scalar {
        pos,
        msg: e.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Word(String),
    Group(String),
}

fn is_word_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '+' | '-' | '*' | '(' | ')')
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            '+' => {
                it.next();
                out.push((pos, Tok::Plus));
            }
            '-' => {
                it.next();
                out.push((pos, Tok::Minus));
            }
            '*' => {
                it.next();
                out.push((pos, Tok::Star));
            }
            ')' => return Err(syntax(pos, "unbalanced ')'")),
            '(' => {
                it.next();
                let mut depth = 1;
                let start = pos + 1;
                let mut end = None;
                for (p, ch) in it.by_ref() {
                    match ch {
                        '(' => depth += 1,
                        ')' => {
                            depth -= 1;
                            if depth == 0 {
                                end = Some(p);
                                break;
                            }
                        }
                        _ => {}
                    }
                }
                let end = end.ok_or_else(|| syntax(pos, "unclosed '('"))?;
                out.push((start, Tok::Group(text[start..end].to_string())));
            }
            _ => {
                let mut word = String::new();
                while let Some(&(_, ch)) = it.peek() {
                    if !is_word_char(ch) {
                        break;
                    }
                    word.push(ch);
                    it.next();
                }
                out.push((pos, Tok::Word(word)));
            }
        }
    }
    Ok(out)
}

fn parse_rational_word(word: &str) -> Option<Rational> {
    let (n, d) = match word.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (word, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(n) || !d.is_none_or(digits) {
        return None;
    }
    let n: num_bigint::BigInt = n.parse().ok()?;
    let d: num_bigint::BigInt = d.map_or(Some(1.into()), |d| d.parse().ok())?;
    if d == 0.into() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Parses a scalar literal in the syntax of `ring`.
pub fn parse_scalar(ring: &ScalarRing, text: &str) -> Result<Scalar, ParseError> {
    parse_scalar_at(ring, text, 0)
}

fn parse_scalar_at(ring: &ScalarRing, text: &str, offset: usize) -> Result<Scalar, ParseError> {
    let mut p = ScalarParser {
        ring,
        src: text.as_bytes(),
        pos: 0,
        offset,
    };
    let s = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(syntax(offset + p.pos, "unexpected trailing input in scalar"));
    }
    ring.check(&s).map_err(|e| scalar_err(offset, e))?;
    Ok(s)
}

struct ScalarParser<'a> {
    ring: &'a ScalarRing,
    src: &'a [u8],
    pos: usize,
    offset: usize,
}

impl ScalarParser<'_> {
    fn at(&self) -> usize {
        self.offset + self.pos
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn sum(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.product()?;
                    acc = acc.try_add(&rhs).map_err(|e| scalar_err(self.at(), e))?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.product()?;
                    acc = acc.try_sub(&rhs).map_err(|e| scalar_err(self.at(), e))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.try_mul(&rhs).map_err(|e| scalar_err(self.at(), e))?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.at();
                    let rhs = self.unary()?;
                    acc = self.ring.div(&acc, &rhs).map_err(|e| scalar_err(at, e))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, ParseError> {
        let base = self.primary()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.at();
        let exp: u32 = self
            .digits()
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| syntax(at, "expected an exponent"))?;
        let p = base.pow(exp);
        if neg {
            self.ring.invert(&p).map_err(|e| scalar_err(at, e))
        } else {
            Ok(p)
        }
    }

    fn primary(&mut self) -> Result<Scalar, ParseError> {
        let at = self.at();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let s = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(syntax(self.at(), "expected ')'"));
                }
                self.pos += 1;
                Ok(s)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                Ok(Scalar::Rat(Rational::from_integer(d.parse().unwrap())))
            }
            Some(b'v') | Some(b'q') => {
                let c = self.src[self.pos];
                self.pos += 1;
                if !matches!(self.ring, ScalarRing::Laurent | ScalarRing::RationalFunction) {
                    return Err(ParseError::Scalar {
                        pos: at,
                        msg: format!("'{}' is not available over {}", c as char, self.ring),
                    });
                }
                Ok(if c == b'v' { Scalar::v() } else { Scalar::v_pow(2) })
            }
            Some(b'z') => {
                self.pos += 1;
                let d: u32 = self
                    .digits()
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| syntax(self.at(), "expected root-of-unity order after 'z'"))?;
                match self.ring {
                    ScalarRing::Cyclotomic(f) if d > 0 && f.order() % d == 0 => {
                        let k = (f.order() / d) as i64;
                        Ok(Scalar::from_cyclotomic(Cyclotomic::root_power(f, k)))
                    }
                    _ => Err(ParseError::Scalar {
                        pos: at,
                        msg: format!("z{d} is not available over {}", self.ring),
                    }),
                }
            }
            Some(c) => Err(syntax(at, format!("unexpected '{}'", c as char))),
            None => Err(syntax(at, "unexpected end of scalar")),
        }
    }
}

/// Parses an element expression over the algebra's basis labels.
pub fn parse_element(alg: &FiniteDimAlgebra, text: &str) -> Result<Element, ParseError> {
    parse_element_with(alg, text, &|_| None)
}

/// Like [`parse_element`], with extra named elements consulted after the
/// basis labels.
pub fn parse_element_with(
    alg: &FiniteDimAlgebra,
    text: &str,
    named: &dyn Fn(&str) -> Option<Element>,
) -> Result<Element, ParseError> {
    let toks = tokenize(text)?;
    let ring = alg.ring();
    let lookup = |pos: usize, label: &str| -> Result<Element, ParseError> {
        match alg.basis().index_of(label) {
            Some(i) => Ok(alg.basis_element(i)),
            None => named(label).ok_or_else(|| ParseError::UnknownLabel {
                pos,
                label: label.to_string(),
            }),
        }
    };
    let scalar_of = |pos: usize, tok: &Tok| -> Result<Scalar, ParseError> {
        match tok {
            Tok::Word(w) => parse_rational_word(w)
                .map(Scalar::Rat)
                .ok_or_else(|| ParseError::Scalar {
                    pos,
                    msg: format!("{w:?} is not a rational literal"),
                }),
            Tok::Group(g) => parse_scalar_at(ring, g, pos),
            _ => Err(syntax(pos, "expected a scalar")),
        }
    };

    let mut acc = Element::zero(alg.dim());
    let mut i = 0;
    let mut first = true;
    if toks.is_empty() {
        return Err(syntax(0, "empty expression"));
    }
    while i < toks.len() {
        let mut negative = false;
        let mut saw_sign = false;
        while let Some((_, t @ (Tok::Plus | Tok::Minus))) = toks.get(i) {
            negative ^= *t == Tok::Minus;
            saw_sign = true;
            i += 1;
        }
        if !first && !saw_sign {
            return Err(syntax(toks[i].0, "expected '+' or '-' between terms"));
        }
        first = false;
        let Some((pos, tok)) = toks.get(i) else {
            return Err(syntax(text.len(), "expected a term"));
        };
        let (pos, tok) = (*pos, tok.clone());
        i += 1;
        let term = if matches!(toks.get(i), Some((_, Tok::Star))) {
            let c = scalar_of(pos, &tok)?;
            i += 1;
            match toks.get(i) {
                Some((lpos, Tok::Word(label))) => {
                    i += 1;
                    lookup(*lpos, label)?.scale(&c)
                }
                Some((p, _)) => return Err(syntax(*p, "expected a basis label after '*'")),
                None => return Err(syntax(text.len(), "expected a basis label after '*'")),
            }
        } else {
            match &tok {
                Tok::Word(w) => match lookup(pos, w) {
                    Ok(e) => e,
                    Err(err) => match parse_rational_word(w) {
                        Some(r) => alg.unit().scale(&Scalar::Rat(r)),
                        None => return Err(err),
                    },
                },
                Tok::Group(_) => alg.unit().scale(&scalar_of(pos, &tok)?),
                _ => return Err(syntax(pos, "expected a term")),
            }
        };
        acc = if negative { &acc - &term } else { &acc + &term };
    }
    Ok(acc)
}

/// Renders an element as a linear combination of basis labels, in basis
/// order. The output parses back to the same element.
pub fn render_element(alg: &FiniteDimAlgebra, e: &Element) -> String {
    render_coeffs(alg.basis().labels(), e.coeffs())
}

pub(crate) fn render_coeffs(labels: &[String], coeffs: &[Scalar]) -> String {
    let mut out = String::new();
    for (label, c) in labels.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative_leading();
        let mag = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match &mag {
            m if m.is_one() => {}
            Scalar::Rat(r) => {
                let _ = write!(out, "{r}*");
            }
            m => {
                let _ = write!(out, "({m})*");
            }
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Basis, StructureConstants};

    fn toy(ring: ScalarRing, labels: &[&str]) -> FiniteDimAlgebra {
        let n = labels.len();
        let basis = Basis::new(labels.iter().copied()).unwrap();
        // Only the unit matters for parsing.
        let sc = StructureConstants::zero(n);
        FiniteDimAlgebra::new(basis, sc, Element::basis(n, 0), ring).unwrap()
    }

    #[test]
    fn linear_combinations() {
        let a = toy(ScalarRing::Rational, &["1", "x", "y", "xy"]);
        let e = parse_element(&a, "2*x + y").unwrap();
        assert_eq!(
            e.coeffs(),
            &[Scalar::zero(), Scalar::int(2), Scalar::one(), Scalar::zero()]
        );
        let e = parse_element(&a, "(1/2)*xy - 1").unwrap();
        assert_eq!(
            e.coeffs(),
            &[Scalar::int(-1), Scalar::zero(), Scalar::zero(), Scalar::ratio(1, 2)]
        );
        let e = parse_element(&a, " -1/3*x+2*1").unwrap();
        assert_eq!(
            e.coeffs(),
            &[Scalar::int(2), Scalar::ratio(-1, 3), Scalar::zero(), Scalar::zero()]
        );
    }

    #[test]
    fn ring_literals() {
        let a = toy(ScalarRing::Laurent, &["T[]", "T[1]"]);
        let e = parse_element(&a, "(v + v^-1)*T[1] - (q)*T[]").unwrap();
        assert_eq!(e.coeff(1), &(&Scalar::v() + &Scalar::v_pow(-1)));
        assert_eq!(e.coeff(0), &-Scalar::v_pow(2));
        let c = toy(ScalarRing::cyclotomic(3), &["E0F0K0", "E1F2K0"]);
        let e = parse_element(&c, "(z3^2)*E1F2K0").unwrap();
        let z = ScalarRing::cyclotomic(3).root_of_unity().unwrap();
        assert_eq!(e.coeff(1), &(&z * &z));
        assert_eq!(parse_element(&c, "E1F2K0").unwrap(), Element::basis(2, 1));
        assert_eq!(
            parse_scalar(&ScalarRing::cyclotomic(6), "z3").unwrap(),
            parse_scalar(&ScalarRing::cyclotomic(6), "z6^2").unwrap()
        );
    }

    #[test]
    fn errors_carry_positions() {
        let a = toy(ScalarRing::Rational, &["1", "x"]);
        assert_eq!(
            parse_element(&a, "x + w"),
            Err(ParseError::UnknownLabel {
                pos: 4,
                label: "w".into()
            })
        );
        assert!(matches!(
            parse_element(&a, "x x"),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(parse_element(&a, "(v)*x"), Err(ParseError::Scalar { .. })));
        assert!(matches!(parse_element(&a, "2*"), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse_element(&a, "(1/2"),
            Err(ParseError::Syntax { pos: 0, .. })
        ));
        assert!(matches!(parse_element(&a, "1/0*x"), Err(ParseError::Scalar { .. })));
    }

    #[test]
    fn render_parse_round_trip() {
        let a = toy(ScalarRing::RationalFunction, &["T[]", "T[1]", "T[2]"]);
        let w = &Scalar::v() + &Scalar::v_pow(-1);
        let inv = ScalarRing::RationalFunction.invert(&w).unwrap();
        let e = Element::new(vec![-Scalar::v(), inv, Scalar::ratio(-3, 4)]);
        let text = render_element(&a, &e);
        assert_eq!(text, "-(v)*T[] + ((v)/(v^2 + 1))*T[1] - 3/4*T[2]");
        assert_eq!(parse_element(&a, &text).unwrap(), e);
        assert_eq!(render_element(&a, &Element::zero(3)), "0");
    }
}

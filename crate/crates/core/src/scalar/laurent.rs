//! Sparse Laurent polynomials in one variable `v` over the rationals.
//!
//! In the Hecke setting `v` stands for `q^{1/2}`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::poly::{write_terms, UniPoly};
use super::{Rational, ScalarError};

/// Exponent to nonzero coefficient. The zero polynomial is the empty map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// The variable `v`.
    pub fn var() -> Self {
        LaurentPoly::monomial(Rational::one(), 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, Rational)>) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exp: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i32, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(i32, &Rational)> {
        if self.terms.len() != 1 {
            return None;
        }
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, a) in &self.terms {
            for (eb, b) in &other.terms {
                out.add_term(ea + eb, a * b);
            }
        }
        out
    }

    /// Inverse of a monomial; every other Laurent polynomial is a non-unit.
    pub fn inverse(&self) -> Option<LaurentPoly> {
        let (e, c) = self.as_monomial()?;
        Some(LaurentPoly::monomial(c.recip(), -e))
    }

    /// Evaluates at `v = t`.
    pub fn specialize(&self, t: &Rational) -> Result<Rational, ScalarError> {
        if t.is_zero() {
            return Err(ScalarError::SpecializeAtZero);
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num_traits::pow(t.clone(), *e as usize)
            } else {
                num_traits::pow(t.recip(), e.unsigned_abs() as usize)
            };
            acc += c * p;
        }
        Ok(acc)
    }

    /// Splits as `v^shift * p(v)` with `p` an ordinary polynomial whose
    /// constant term is nonzero (for nonzero input).
    pub fn to_shifted_poly(&self) -> (i32, UniPoly) {
        let Some(lo) = self.min_exp() else {
            return (0, UniPoly::zero());
        };
        let hi = *self.terms.keys().next_back().unwrap();
        let mut dense = vec![Rational::zero(); (hi - lo) as usize + 1];
        for (e, c) in &self.terms {
            dense[(e - lo) as usize] = c.clone();
        }
        (lo, UniPoly::from_coeffs(dense))
    }

    /// `v^shift * p(v)`.
    pub fn from_shifted_poly(shift: i32, p: &UniPoly) -> LaurentPoly {
        LaurentPoly::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i32 + shift, c.clone())),
        )
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().rev().map(|(e, c)| (*e as i64, c));
        write_terms(terms, "v", f)
    }
}

//! Exact scalars.
//!
//! Four coefficient rings are supported: the rationals, a cyclotomic field
//! Q(ζ_d), Laurent polynomials in `v`, and rational functions in `v`. They
//! form two towers, Q ⊂ Q(ζ_d) and Q ⊂ Q[v, v⁻¹] ⊂ Q(v), and a [`Scalar`]
//! is always stored in the smallest ring of its tower that contains it. That
//! makes the representation canonical: two scalars are equal exactly when
//! they are structurally equal, and rationals act as the common zero and one
//! of every ring.
//!
//! A [`ScalarRing`] is the ring an algebra is defined over. It decides which
//! values are admissible and how division behaves (a Laurent polynomial is
//! only invertible in the Laurent ring when it is a monomial).

pub mod cyclotomic;
pub mod laurent;
pub mod poly;
pub mod ratfun;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic, CyclotomicField};
pub use laurent::LaurentPoly;
pub use poly::UniPoly;
pub use ratfun::RationalFunction;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("ring mismatch: cannot combine {left} with {right}")]
    RingMismatch { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a unit in {1}")]
    NonUnit(String, String),
    #[error("{0} does not belong to {1}")]
    NotInRing(String, String),
    #[error("cannot specialize at v = 0")]
    SpecializeAtZero,
}

/// The ring an algebra's scalars live in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarRing {
    Rational,
    Cyclotomic(Arc<CyclotomicField>),
    Laurent,
    RationalFunction,
}

impl ScalarRing {
    pub fn cyclotomic(order: u32) -> Self {
        ScalarRing::Cyclotomic(CyclotomicField::new(order))
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    /// Whether division by every nonzero element is possible.
    pub fn is_field(&self) -> bool {
        !matches!(self, ScalarRing::Laurent)
    }

    /// The ring itself when it is a field; Laurent polynomials lift to
    /// rational functions.
    pub fn fraction_field(&self) -> ScalarRing {
        match self {
            ScalarRing::Laurent => ScalarRing::RationalFunction,
            other => other.clone(),
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (_, Scalar::Rat(_)) => true,
            (ScalarRing::Cyclotomic(f), Scalar::Cyc(c)) => f.order() == c.field().order(),
            (ScalarRing::Laurent | ScalarRing::RationalFunction, Scalar::Lau(_)) => true,
            (ScalarRing::RationalFunction, Scalar::Rf(_)) => true,
            _ => false,
        }
    }

    pub fn check(&self, s: &Scalar) -> Result<(), ScalarError> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(ScalarError::NotInRing(s.to_string(), self.to_string()))
        }
    }

    /// Multiplicative inverse inside this ring.
    pub fn invert(&self, s: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(s)?;
        if s.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match (self, s) {
            (_, Scalar::Rat(r)) => Scalar::Rat(r.recip()),
            (_, Scalar::Cyc(c)) => Scalar::from_cyclotomic(c.inverse().expect("nonzero")),
            (ScalarRing::Laurent, Scalar::Lau(p)) => match p.inverse() {
                Some(inv) => Scalar::from_laurent(inv),
                None => return Err(ScalarError::NonUnit(s.to_string(), self.to_string())),
            },
            (_, Scalar::Lau(p)) => Scalar::from_ratfun(RationalFunction::from_laurent(p).inverse().expect("nonzero")),
            (_, Scalar::Rf(r)) => Scalar::from_ratfun(r.inverse().expect("nonzero")),
        })
    }

    /// `a / b` inside this ring.
    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, ScalarError> {
        let inv = match self.invert(b) {
            Ok(inv) => inv,
            // Exact division by a non-unit can still land in the ring.
            Err(ScalarError::NonUnit(..)) => {
                let q = a.try_mul(&ScalarRing::RationalFunction.invert(b)?)?;
                return if self.contains(&q) {
                    Ok(q)
                } else {
                    Err(ScalarError::NonUnit(b.to_string(), self.to_string()))
                };
            }
            Err(e) => return Err(e),
        };
        a.try_mul(&inv)
    }

    /// The generator `ζ_d` of a cyclotomic ring.
    pub fn root_of_unity(&self) -> Option<Scalar> {
        match self {
            ScalarRing::Cyclotomic(f) => Some(Scalar::from_cyclotomic(Cyclotomic::root_power(f, 1))),
            _ => None,
        }
    }
}

impl fmt::Display for ScalarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarRing::Rational => f.write_str("Q"),
            ScalarRing::Cyclotomic(field) => write!(f, "Q(z{})", field.order()),
            ScalarRing::Laurent => f.write_str("Q[v, v^-1]"),
            ScalarRing::RationalFunction => f.write_str("Q(v)"),
        }
    }
}

/// An exact scalar in canonical (smallest containing ring) form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rat(Rational),
    Cyc(Cyclotomic),
    Lau(LaurentPoly),
    Rf(RationalFunction),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(Rational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rat(Rational::from_integer(BigInt::from(n)))
    }

    /// `num / den`; panics when `den` is zero.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Rat(Rational::new(num.into(), den.into()))
    }

    /// The Laurent variable `v`.
    pub fn v() -> Self {
        Scalar::Lau(LaurentPoly::var())
    }

    /// `c * v^exp`.
    pub fn v_pow(exp: i32) -> Self {
        Scalar::from_laurent(LaurentPoly::monomial(Rational::one(), exp))
    }

    pub fn from_cyclotomic(c: Cyclotomic) -> Self {
        match c.as_rational() {
            Some(r) => Scalar::Rat(r),
            None => Scalar::Cyc(c),
        }
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        match p.as_rational() {
            Some(r) => Scalar::Rat(r),
            None => Scalar::Lau(p),
        }
    }

    pub fn from_ratfun(r: RationalFunction) -> Self {
        match r.as_laurent() {
            Some(p) => Scalar::from_laurent(p),
            None => Scalar::Rf(r),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            _ => None,
        }
    }

    fn kind_name(&self) -> String {
        match self {
            Scalar::Rat(_) => "Q".into(),
            Scalar::Cyc(c) => format!("Q(z{})", c.field().order()),
            Scalar::Lau(_) => "Q[v, v^-1]".into(),
            Scalar::Rf(_) => "Q(v)".into(),
        }
    }

    fn mismatch(&self, other: &Scalar) -> ScalarError {
        ScalarError::RingMismatch {
            left: self.kind_name(),
            right: other.kind_name(),
        }
    }

    fn to_ratfun(&self) -> Option<RationalFunction> {
        match self {
            Scalar::Rat(r) => Some(RationalFunction::from_rational(r.clone())),
            Scalar::Lau(p) => Some(RationalFunction::from_laurent(p)),
            Scalar::Rf(r) => Some(r.clone()),
            Scalar::Cyc(_) => None,
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        use Scalar::*;
        Ok(match (self, other) {
            (Rat(a), Rat(b)) => Rat(a + b),
            (Cyc(a), Cyc(b)) if a.same_field(b) => Scalar::from_cyclotomic(a.add(b)),
            (Rat(r), Cyc(c)) | (Cyc(c), Rat(r)) => Scalar::from_cyclotomic(c.add_rational(r)),
            (Lau(a), Lau(b)) => Scalar::from_laurent(a.add(b)),
            (Rat(r), Lau(p)) | (Lau(p), Rat(r)) => Scalar::from_laurent(p.add(&LaurentPoly::constant(r.clone()))),
            (Rf(_), _) | (_, Rf(_)) => match (self.to_ratfun(), other.to_ratfun()) {
                (Some(a), Some(b)) => Scalar::from_ratfun(a.add(&b)),
                _ => return Err(self.mismatch(other)),
            },
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        use Scalar::*;
        if self.is_zero() || other.is_zero() {
            return Ok(Scalar::zero());
        }
        Ok(match (self, other) {
            (Rat(a), Rat(b)) => Rat(a * b),
            (Cyc(a), Cyc(b)) if a.same_field(b) => Scalar::from_cyclotomic(a.mul(b)),
            (Rat(r), Cyc(c)) | (Cyc(c), Rat(r)) => Scalar::Cyc(c.scale(r)),
            (Lau(a), Lau(b)) => Scalar::from_laurent(a.mul(b)),
            (Rat(r), Lau(p)) | (Lau(p), Rat(r)) => Scalar::Lau(p.scale(r)),
            (Rat(r), Rf(f)) | (Rf(f), Rat(r)) => Scalar::Rf(f.scale(r)),
            (Rf(_), _) | (_, Rf(_)) => match (self.to_ratfun(), other.to_ratfun()) {
                (Some(a), Some(b)) => Scalar::from_ratfun(a.mul(&b)),
                _ => return Err(self.mismatch(other)),
            },
            _ => return Err(self.mismatch(other)),
        })
    }

    /// `self^n` for `n >= 0`.
    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates `v = t` (Laurent and rational-function scalars); rationals
    /// are returned unchanged.
    pub fn specialize(&self, t: &Rational) -> Result<Rational, ScalarError> {
        if t.is_zero() {
            return Err(ScalarError::SpecializeAtZero);
        }
        match self {
            Scalar::Rat(r) => Ok(r.clone()),
            Scalar::Lau(p) => p.specialize(t),
            Scalar::Rf(r) => r.specialize(t),
            Scalar::Cyc(_) => Err(ScalarError::NotInRing(self.to_string(), "Q(v)".into())),
        }
    }

    /// Whether the rendering should be written with a leading minus sign
    /// removed (used when printing linear combinations).
    pub fn is_negative_leading(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Cyc(c) => c
                .coeffs()
                .iter()
                .rev()
                .find(|x| !x.is_zero())
                .is_some_and(Signed::is_negative),
            Scalar::Lau(p) => p.terms().values().next_back().is_some_and(Signed::is_negative),
            Scalar::Rf(r) => r.numerator().leading().is_some_and(Signed::is_negative),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Cyc(c) => write!(f, "{c}"),
            Scalar::Lau(p) => write!(f, "{p}"),
            Scalar::Rf(r) => write!(f, "{r}"),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

// The operator impls panic on ring mismatch. Algebras validate the ring of
// every stored scalar at construction, so a mismatch here is a logic error;
// fallible code paths use `try_add` / `try_mul`.

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Cyc(c) => Scalar::Cyc(c.neg()),
            Scalar::Lau(p) => Scalar::Lau(p.neg()),
            Scalar::Rf(r) => Scalar::Rf(r.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if rhs.is_zero() {
            return;
        }
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (&mut *self, rhs) {
            *a += b;
            return;
        }
        *self = &*self + rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(d: u32) -> (ScalarRing, Scalar) {
        let ring = ScalarRing::cyclotomic(d);
        let zeta = ring.root_of_unity().unwrap();
        (ring, zeta)
    }

    #[test]
    fn phi3_relation_vanishes() {
        let (_, z3) = z(3);
        let s = &(&(&z3 * &z3) + &z3) + &Scalar::one();
        assert!(s.is_zero());
        assert_eq!(s, Scalar::zero());
    }

    #[test]
    fn laurent_times_v() {
        let w = &Scalar::v() + &Scalar::v_pow(-1);
        let expected = &Scalar::v_pow(2) + &Scalar::one();
        assert_eq!(&w * &Scalar::v(), expected);
    }

    #[test]
    fn cyclotomic_inverse_round_trip() {
        let (ring, z5) = z(5);
        let a = &Scalar::int(2) + &(&Scalar::int(2) * &z5);
        let inv = ring.invert(&a).unwrap();
        assert!((&a * &inv).is_one());
    }

    #[test]
    fn invert_rational_and_errors() {
        let r = ScalarRing::Rational;
        assert_eq!(r.invert(&Scalar::ratio(3, 4)).unwrap(), Scalar::ratio(4, 3));
        assert_eq!(r.invert(&Scalar::zero()), Err(ScalarError::DivisionByZero));
        let w = &Scalar::v() + &Scalar::v_pow(-1);
        assert!(matches!(ScalarRing::Laurent.invert(&w), Err(ScalarError::NonUnit(..))));
        let inv = ScalarRing::RationalFunction.invert(&w).unwrap();
        // v / (v^2 + 1)
        assert_eq!(inv.to_string(), "(v)/(v^2 + 1)");
        assert!((&inv * &w).is_one());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let (_, z3) = z(3);
        let (_, z5) = z(5);
        assert!(matches!(z3.try_add(&z5), Err(ScalarError::RingMismatch { .. })));
        assert!(matches!(
            z3.try_mul(&Scalar::v()),
            Err(ScalarError::RingMismatch { .. })
        ));
        assert!(ScalarRing::Rational.invert(&Scalar::v()).is_err());
    }

    #[test]
    fn exact_division_in_laurent_ring() {
        let w = &Scalar::v() + &Scalar::v_pow(-1);
        let w2 = &w * &w;
        assert_eq!(ScalarRing::Laurent.div(&w2, &w).unwrap(), w);
        assert!(ScalarRing::Laurent.div(&w, &w2).is_err());
    }

    #[test]
    fn canonical_forms_demote() {
        let (_, z4) = z(4);
        assert_eq!(&z4 * &z4, Scalar::int(-1));
        let w = &Scalar::v() + &Scalar::v_pow(-1);
        let inv = ScalarRing::RationalFunction.invert(&w).unwrap();
        assert_eq!(&inv * &w, Scalar::one());
        assert!(matches!(&Scalar::v() * &Scalar::v_pow(-1), Scalar::Rat(_)));
    }
}

//! Rational functions in `v` over the rationals, the fraction field of the
//! Laurent ring.

use std::fmt;

use num_traits::Zero;

use super::laurent::LaurentPoly;
use super::poly::UniPoly;
use super::{Rational, ScalarError};

/// `num / den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunction {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction::zero());
        }
        let (num, den) = if let Some(k) = den.as_unit_monomial() {
            // gcd(num, v^k) is a power of v.
            let m = k.min(num.valuation().unwrap_or(0));
            (num.shift_down(m), den.shift_down(m))
        } else if num.degree() == Some(0) {
            (num, den)
        } else {
            let g = UniPoly::gcd(&num, &den);
            if g.degree() == Some(0) {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        Ok(RationalFunction::normalized(num, den))
    }

    /// Scales a coprime pair so the denominator is monic.
    fn normalized(num: UniPoly, den: UniPoly) -> Self {
        let lc = den.leading().cloned().expect("nonzero denominator");
        if lc == Rational::from_integer(1.into()) {
            return RationalFunction { num, den };
        }
        let inv = lc.recip();
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// `a / b` for `b | a`.
    fn exact_div(a: &UniPoly, b: &UniPoly) -> UniPoly {
        if b.degree() == Some(0) {
            return a.scale(&b.coeffs()[0].recip());
        }
        a.div_rem(b).0
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn from_rational(c: Rational) -> Self {
        RationalFunction {
            num: UniPoly::constant(c),
            den: UniPoly::one(),
        }
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let (shift, poly) = p.to_shifted_poly();
        if shift >= 0 {
            let num = &poly * &UniPoly::monomial(Rational::from_integer(1.into()), shift as usize);
            RationalFunction {
                num,
                den: UniPoly::one(),
            }
        } else {
            // The constant term of `poly` is nonzero, so it is coprime to v^k.
            RationalFunction {
                num: poly,
                den: UniPoly::monomial(Rational::from_integer(1.into()), (-shift) as usize),
            }
        }
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The Laurent polynomial equal to this function, if the denominator is
    /// a power of `v`.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        let k = self.den.as_unit_monomial()?;
        Some(LaurentPoly::from_shifted_poly(-(k as i32), &self.num))
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RationalFunction::new(&self.num + &other.num, self.den.clone()).unwrap();
        }
        let g = UniPoly::gcd(&self.den, &other.den);
        if g.degree() == Some(0) {
            // Coprime denominators give a reduced sum directly.
            let num = &(&self.num * &other.den) + &(&other.num * &self.den);
            if num.is_zero() {
                return RationalFunction::zero();
            }
            return RationalFunction::normalized(num, &self.den * &other.den);
        }
        let (d1, d2) = (Self::exact_div(&self.den, &g), Self::exact_div(&other.den, &g));
        let num = &(&self.num * &d2) + &(&other.num * &d1);
        RationalFunction::new(num, &(&d1 * &d2) * &g).unwrap()
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        if self.is_zero() || other.is_zero() {
            return RationalFunction::zero();
        }
        // Cancelling across the two fractions leaves a reduced product.
        let g1 = UniPoly::gcd(&self.num, &other.den);
        let g2 = UniPoly::gcd(&other.num, &self.den);
        let num = &Self::exact_div(&self.num, &g1) * &Self::exact_div(&other.num, &g2);
        let den = &Self::exact_div(&self.den, &g2) * &Self::exact_div(&other.den, &g1);
        RationalFunction::normalized(num, den)
    }

    pub fn scale(&self, c: &Rational) -> RationalFunction {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inverse(&self) -> Option<RationalFunction> {
        if self.is_zero() {
            return None;
        }
        Some(RationalFunction::new(self.den.clone(), self.num.clone()).unwrap())
    }

    pub fn specialize(&self, t: &Rational) -> Result<Rational, ScalarError> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.num.eval(t) / d)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        self.num.fmt_in("v", 0, f)?;
        f.write_str(")/(")?;
        self.den.fmt_in("v", 0, f)?;
        f.write_str(")")
    }
}

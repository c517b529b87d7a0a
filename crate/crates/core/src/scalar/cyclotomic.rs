//! The cyclotomic field Q(ζ_d) in the power basis modulo Φ_d.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{write_terms, UniPoly};
use super::Rational;

/// The d-th cyclotomic polynomial, computed as `(x^d - 1) / prod Φ_k` over
/// the proper divisors `k` of `d`.
pub fn cyclotomic_polynomial(d: u32) -> UniPoly {
    fn go(d: u32, memo: &mut HashMap<u32, UniPoly>) -> UniPoly {
        if let Some(p) = memo.get(&d) {
            return p.clone();
        }
        let mut num = UniPoly::monomial(Rational::one(), d as usize);
        num = &num - &UniPoly::one();
        for k in (1..d).filter(|&k| d.is_multiple_of(k)) {
            let phi_k = go(k, memo);
            let (q, r) = num.div_rem(&phi_k);
            debug_assert!(r.is_zero());
            num = q;
        }
        memo.insert(d, num.clone());
        num
    }
    assert!(d >= 1, "cyclotomic order must be positive");
    go(d, &mut HashMap::new())
}

/// Q(ζ_d) together with its defining polynomial.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    modulus: UniPoly,
    /// `reduction[k]` holds the integer coordinates of `x^k mod Φ_d` for
    /// `k < 2φ(d) − 1`; Φ_d is monic with integer coefficients.
    reduction: Vec<Vec<i64>>,
}

impl CyclotomicField {
    pub fn new(order: u32) -> Arc<Self> {
        let modulus = cyclotomic_polynomial(order);
        let n = modulus.degree().unwrap_or(0);
        let phi: Vec<i64> = modulus
            .coeffs()
            .iter()
            .map(|c| {
                c.to_integer()
                    .to_i64()
                    .expect("cyclotomic coefficients are small integers")
            })
            .collect();
        let mut reduction = Vec::with_capacity(2 * n);
        let mut r = vec![0i64; n];
        r[0] = 1;
        for _ in 0..(2 * n).saturating_sub(1) {
            reduction.push(r.clone());
            // x·r, then subtract top·Φ_d.
            let top = r[n - 1];
            for m in (1..n).rev() {
                r[m] = r[m - 1] - top * phi[m];
            }
            r[0] = -top * phi[0];
        }
        Arc::new(CyclotomicField {
            order,
            modulus,
            reduction,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// φ(d), the length of every coefficient vector.
    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    fn reduce(&self, p: &UniPoly) -> Vec<Rational> {
        let r = p.div_rem(&self.modulus).1;
        let mut coeffs = r.into_coeffs();
        coeffs.resize(self.degree(), Rational::zero());
        coeffs
    }
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for CyclotomicField {}

/// `num / den` coordinatewise, with `den > 0` and the gcd of `den` and all
/// numerators equal to 1. The small form is used whenever everything fits
/// in an `i64`, so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Coeffs {
    Small { num: Vec<i64>, den: i64 },
    Big { num: Vec<BigInt>, den: BigInt },
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Coeffs {
    fn zero(n: usize) -> Self {
        Coeffs::Small {
            num: vec![0; n],
            den: 1,
        }
    }

    fn from_i128(mut num: Vec<i128>, mut den: i128) -> Self {
        debug_assert!(den != 0);
        if num.iter().all(|x| *x == 0) {
            return Coeffs::zero(num.len());
        }
        if den < 0 {
            match (
                den.checked_neg(),
                num.iter().map(|x| x.checked_neg()).collect::<Option<Vec<_>>>(),
            ) {
                (Some(d), Some(n)) => (den, num) = (d, n),
                _ => return Coeffs::from_big(num.into_iter().map(BigInt::from).collect(), BigInt::from(den)),
            }
        }
        let g = num
            .iter()
            .fold(den.unsigned_abs(), |g, x| gcd_u128(g, x.unsigned_abs())) as i128;
        if g > 1 {
            num.iter_mut().for_each(|x| *x /= g);
            den /= g;
        }
        let small = (
            num.iter().map(|&x| i64::try_from(x).ok()).collect::<Option<Vec<_>>>(),
            i64::try_from(den).ok(),
        );
        match small {
            (Some(num), Some(den)) => Coeffs::Small { num, den },
            _ => Coeffs::Big {
                num: num.into_iter().map(BigInt::from).collect(),
                den: BigInt::from(den),
            },
        }
    }

    fn from_big(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if num.iter().all(Zero::is_zero) {
            return Coeffs::zero(num.len());
        }
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|x| *x = -&*x);
        }
        let g = num.iter().fold(den.clone(), |g, x| g.gcd(x));
        if !g.is_one() {
            num.iter_mut().for_each(|x| *x /= &g);
            den /= &g;
        }
        let small = (
            num.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>(),
            den.to_i64(),
        );
        match small {
            (Some(num), Some(den)) => Coeffs::Small { num, den },
            _ => Coeffs::Big { num, den },
        }
    }

    fn from_rationals(rs: &[Rational]) -> Self {
        let den = rs.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
        let num = rs.iter().map(|r| r.numer() * (&den / r.denom())).collect();
        Coeffs::from_big(num, den)
    }

    fn to_big(&self) -> (Vec<BigInt>, BigInt) {
        match self {
            Coeffs::Small { num, den } => (num.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(*den)),
            Coeffs::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    fn to_rationals(&self) -> Vec<Rational> {
        let (num, den) = self.to_big();
        num.into_iter().map(|x| Rational::new(x, den.clone())).collect()
    }

    fn is_zero(&self) -> bool {
        match self {
            Coeffs::Small { num, .. } => num.iter().all(|x| *x == 0),
            Coeffs::Big { num, .. } => num.iter().all(Zero::is_zero),
        }
    }

    fn add(&self, other: &Coeffs) -> Coeffs {
        if let (Coeffs::Small { num: a, den: da }, Coeffs::Small { num: b, den: db }) = (self, other) {
            let (da, db) = (*da as i128, *db as i128);
            if da == db {
                return Coeffs::from_i128(a.iter().zip(b).map(|(x, y)| *x as i128 + *y as i128).collect(), da);
            }
            let num = a
                .iter()
                .zip(b)
                .map(|(x, y)| *x as i128 * db + *y as i128 * da)
                .collect();
            return Coeffs::from_i128(num, da * db);
        }
        let ((a, da), (b, db)) = (self.to_big(), other.to_big());
        let num = a.iter().zip(&b).map(|(x, y)| x * &db + y * &da).collect();
        Coeffs::from_big(num, da * db)
    }

    fn scale(&self, n: &BigInt, d: &BigInt) -> Coeffs {
        if let (Coeffs::Small { num, den }, Some(n), Some(d)) = (self, n.to_i64(), d.to_i64()) {
            let num = num.iter().map(|x| *x as i128 * n as i128).collect();
            return Coeffs::from_i128(num, *den as i128 * d as i128);
        }
        let (num, den) = self.to_big();
        Coeffs::from_big(num.iter().map(|x| x * n).collect(), den * d)
    }

    fn mul(&self, other: &Coeffs, reduction: &[Vec<i64>]) -> Coeffs {
        if let (Coeffs::Small { num: a, den: da }, Coeffs::Small { num: b, den: db }) = (self, other) {
            if let Some(num) = mul_reduce_i128(a, b, reduction) {
                return Coeffs::from_i128(num, *da as i128 * *db as i128);
            }
        }
        let ((a, da), (b, db)) = (self.to_big(), other.to_big());
        let n = a.len();
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                prod[i + j] += x * y;
            }
        }
        let mut out = vec![BigInt::zero(); n];
        for (k, p) in prod.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            for (m, r) in reduction[k].iter().enumerate().filter(|(_, r)| **r != 0) {
                out[m] += p * *r;
            }
        }
        Coeffs::from_big(out, da * db)
    }
}

/// Product of two coordinate vectors reduced modulo Φ_d, or `None` on
/// overflow.
fn mul_reduce_i128(a: &[i64], b: &[i64], reduction: &[Vec<i64>]) -> Option<Vec<i128>> {
    let n = a.len();
    let mut prod = vec![0i128; 2 * n - 1];
    for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
        for (j, &y) in b.iter().enumerate().filter(|(_, y)| **y != 0) {
            prod[i + j] = prod[i + j].checked_add(x as i128 * y as i128)?;
        }
    }
    let mut out = vec![0i128; n];
    for (k, &p) in prod.iter().enumerate().filter(|(_, p)| **p != 0) {
        for (m, &r) in reduction[k].iter().enumerate().filter(|(_, r)| **r != 0) {
            out[m] = out[m].checked_add(p.checked_mul(r as i128)?)?;
        }
    }
    Some(out)
}

/// An element of Q(ζ_d), `sum coeffs[i] * ζ^i` with `i < φ(d)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Coeffs,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Cyclotomic {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Cyclotomic {
            field: field.clone(),
            coeffs: Coeffs::zero(field.degree()),
        }
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, c: Rational) -> Self {
        let mut rs = vec![Rational::zero(); field.degree()];
        rs[0] = c;
        Cyclotomic {
            field: field.clone(),
            coeffs: Coeffs::from_rationals(&rs),
        }
    }

    /// Builds an element from coefficients in the power basis; the vector
    /// is reduced modulo Φ_d, so any length is accepted.
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: Vec<Rational>) -> Self {
        let coeffs = field.reduce(&UniPoly::from_coeffs(coeffs));
        Cyclotomic {
            field: field.clone(),
            coeffs: Coeffs::from_rationals(&coeffs),
        }
    }

    /// `ζ^k` for any integer `k`, using `ζ^d = 1`.
    pub fn root_power(field: &Arc<CyclotomicField>, k: i64) -> Self {
        Cyclotomic::reduce_terms(field, &[(k, Rational::one())])
    }

    /// Normal form of `sum c * ζ^k` with arbitrary integer exponents.
    pub fn reduce_terms(field: &Arc<CyclotomicField>, terms: &[(i64, Rational)]) -> Self {
        let d = field.order as i64;
        let mut dense = vec![Rational::zero(); d as usize];
        for (k, c) in terms {
            dense[k.rem_euclid(d) as usize] += c;
        }
        Cyclotomic::from_coeffs(field, dense)
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Power-basis coordinates, exactly φ(d) of them.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.coeffs.to_rationals()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// The value when it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        let rational = match &self.coeffs {
            Coeffs::Small { num, .. } => num[1..].iter().all(|x| *x == 0),
            Coeffs::Big { num, .. } => num[1..].iter().all(Zero::is_zero),
        };
        rational.then(|| self.coeffs.to_rationals().swap_remove(0))
    }

    pub fn same_field(&self, other: &Cyclotomic) -> bool {
        self.field.order == other.field.order
    }

    fn with(&self, coeffs: Coeffs) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        debug_assert!(self.same_field(other));
        self.with(self.coeffs.add(&other.coeffs))
    }

    pub fn neg(&self) -> Cyclotomic {
        self.with(self.coeffs.scale(&BigInt::from(-1), &BigInt::one()))
    }

    pub fn add_rational(&self, c: &Rational) -> Cyclotomic {
        self.add(&Cyclotomic::from_rational(&self.field, c.clone()))
    }

    pub fn scale(&self, c: &Rational) -> Cyclotomic {
        self.with(self.coeffs.scale(c.numer(), c.denom()))
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        debug_assert!(self.same_field(other));
        self.with(self.coeffs.mul(&other.coeffs, &self.field.reduction))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Φ_d. `None` for zero.
    pub fn inverse(&self) -> Option<Cyclotomic> {
        if self.is_zero() {
            return None;
        }
        let (g, s, _) = UniPoly::ext_gcd(&UniPoly::from_coeffs(self.coeffs()), &self.field.modulus);
        debug_assert_eq!(g, UniPoly::one(), "Φ_d is irreducible");
        Some(self.with(Coeffs::from_rationals(&self.field.reduce(&s))))
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = format!("z{}", self.field.order);
        let coeffs = self.coeffs();
        let terms = coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64, c));
        write_terms(terms, &var, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        let phi = |d| cyclotomic_polynomial(d).into_coeffs();
        assert_eq!(phi(1), vec![q(-1), q(1)]);
        assert_eq!(phi(3), vec![q(1), q(1), q(1)]);
        assert_eq!(phi(4), vec![q(1), q(0), q(1)]);
        assert_eq!(phi(6), vec![q(1), q(-1), q(1)]);
        assert_eq!(phi(12), vec![q(1), q(0), q(-1), q(0), q(1)]);
        assert_eq!(cyclotomic_polynomial(5).degree(), Some(4));
    }

    #[test]
    fn roots_of_unity_reduce() {
        let f3 = CyclotomicField::new(3);
        assert_eq!(Cyclotomic::root_power(&f3, 3).as_rational(), Some(q(1)));
        let f4 = CyclotomicField::new(4);
        assert_eq!(Cyclotomic::root_power(&f4, 2).as_rational(), Some(q(-1)));
        // ζ5^4 = -1 - ζ - ζ^2 - ζ^3, from long division by Φ5.
        let f5 = CyclotomicField::new(5);
        let z4 = Cyclotomic::root_power(&f5, 4);
        assert_eq!(z4.coeffs(), [q(-1), q(-1), q(-1), q(-1)]);
        assert_eq!(Cyclotomic::root_power(&f5, -1), z4);
    }

    #[test]
    fn inverse_multiplies_back_to_one() {
        let f5 = CyclotomicField::new(5);
        let a = Cyclotomic::from_coeffs(&f5, vec![q(2), q(2)]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).as_rational(), Some(q(1)));
        assert!(Cyclotomic::zero(&f5).inverse().is_none());
    }
}

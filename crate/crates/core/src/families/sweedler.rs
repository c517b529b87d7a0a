use crate::algebra::{Basis, Element, FiniteDimAlgebra, StructureConstants};
use crate::hopf::HopfAlgebra;
use crate::linalg::Matrix;
use crate::scalar::{Rational, Scalar, ScalarRing};

use super::FamilyError;

/// Index of `x^a y^b` in the basis `1, x, y, xy`.
fn idx(a: usize, b: usize) -> usize {
    a + 2 * b
}

/// The four-dimensional Hopf algebra generated by `x`, `y` with `x² = 1`,
/// `y² = 0`, `yx = −xy`, over the rationals.
///
/// `Δ(x) = x⊗x`, `Δ(y) = 1⊗y + y⊗x`, `ε(x) = 1`, `ε(y) = 0`, `S(x) = x`,
/// `S(y) = xy`.
pub fn sweedler() -> HopfAlgebra {
    let ring = ScalarRing::Rational;
    let basis = Basis::new(["1", "x", "y", "xy"]).expect("fixed labels");
    // x^a y^b · x^c y^d = (−1)^{bc} x^{a+c} y^{b+d}.
    let sc = StructureConstants::from_fn(4, |i, j| {
        let (a, b, c, d) = (i % 2, i / 2, j % 2, j / 2);
        if b + d > 1 {
            return vec![];
        }
        let sign = if b * c == 1 { -1 } else { 1 };
        vec![(idx((a + c) % 2, b + d), Scalar::int(sign))]
    })
    .expect("indices < 4");
    let algebra = FiniteDimAlgebra::new(basis, sc, Element::basis(4, 0), ring.clone()).expect("valid algebra");
    let one = Scalar::one;
    let coproduct = vec![
        vec![(0, 0, one())],
        vec![(1, 1, one())],
        vec![(0, 2, one()), (2, 1, one())],
        // Δ(x)Δ(y) = x⊗xy + xy⊗1.
        vec![(1, 3, one()), (3, 0, one())],
    ];
    let counit = vec![one(), one(), Scalar::zero(), Scalar::zero()];
    let mut antipode = Matrix::zeros(&ring, 4, 4);
    antipode.set(0, 0, one());
    antipode.set(1, 1, one());
    antipode.set(3, 2, one());
    // S(xy) = S(y)S(x) = xy·x = −y.
    antipode.set(2, 3, Scalar::int(-1));
    HopfAlgebra::new(algebra, coproduct, counit, antipode).expect("consistent shapes")
}

/// `μ₁(1 + x) + μ₂y + μ₃xy`.
pub fn sweedler_family_element(mu1: &Rational, mu2: &Rational, mu3: &Rational) -> Result<Element, FamilyError> {
    let s = |m: &Rational| Scalar::from(m.clone());
    let e = Element::new(vec![s(mu1), s(mu1), s(mu2), s(mu3)]);
    if e.is_zero() {
        return Err(FamilyError::ZeroElement);
    }
    Ok(e)
}

use rayon::prelude::*;

use crate::algebra::{Accumulator, Basis, Element, FiniteDimAlgebra, SparseVec, StructureConstants};
use crate::check::CheckPolicy;
use crate::scalar::{Rational, Scalar, ScalarRing};

use super::coxeter::CoxeterSystem;
use super::FamilyError;

/// The Iwahori-Hecke algebra of a finite Coxeter group over `Q[v, v⁻¹]`,
/// with `q = v²`, on the basis `T_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeAlgebra {
    coxeter: CoxeterSystem,
    algebra: FiniteDimAlgebra,
}

/// `T_x · T_s` for every `T_x` in `v`: `T_{xs}` if `l(xs) > l(x)`, else
/// `(q − 1)T_x + qT_{xs}`.
fn mul_generator(w: &CoxeterSystem, v: &[(usize, Scalar)], s: usize) -> SparseVec {
    let q = Scalar::v_pow(2);
    let q_minus_1 = &q - &Scalar::one();
    let mut acc = Accumulator::default();
    for (x, c) in v {
        let xs = w.right_mul(*x, s);
        if w.length(xs) > w.length(*x) {
            acc.add(xs, c.clone());
        } else {
            acc.add(*x, c * &q_minus_1);
            acc.add(xs, c * &q);
        }
    }
    acc.finish()
}

/// Builds the structure constants by expanding `T_u T_w` along the stored
/// reduced word of `w`, then certifies associativity and the unit under
/// `policy`.
pub fn hecke_algebra(w: &CoxeterSystem, policy: &CheckPolicy) -> Result<HeckeAlgebra, FamilyError> {
    let n = w.len();
    let rows: Vec<Vec<SparseVec>> = (0..n)
        .into_par_iter()
        .map(|u| {
            (0..n)
                .map(|x| {
                    w.word(x)
                        .iter()
                        .fold(vec![(u, Scalar::one())], |acc, &s| mul_generator(w, &acc, s))
                })
                .collect()
        })
        .collect();
    let mut sc = StructureConstants::zero(n);
    for (u, row) in rows.into_iter().enumerate() {
        for (x, terms) in row.into_iter().enumerate() {
            sc.set(u, x, terms)?;
        }
    }
    let basis = Basis::new((0..n).map(|x| w.label(x)))?;
    let algebra = FiniteDimAlgebra::new(basis, sc, Element::basis(n, w.identity()), ScalarRing::Laurent)?;
    let name = format!("hecke:{}", w.descriptor());
    super::self_check_algebra(&name, &algebra, policy)?;
    Ok(HeckeAlgebra {
        coxeter: w.clone(),
        algebra,
    })
}

impl HeckeAlgebra {
    pub fn coxeter(&self) -> &CoxeterSystem {
        &self.coxeter
    }

    pub fn algebra(&self) -> &FiniteDimAlgebra {
        &self.algebra
    }

    pub fn t(&self, w: usize) -> Element {
        Element::basis(self.algebra.dim(), w)
    }

    /// `C_s = v⁻¹T_s − vT_e` for the 0-based generator `s`.
    pub fn kl_generator(&self, s: usize) -> Result<Element, FamilyError> {
        if s >= self.coxeter.rank() {
            return Err(FamilyError::UnknownGenerator(format!("s{}", s + 1)));
        }
        let ts = self.t(self.coxeter.generator(s)).scale(&Scalar::v_pow(-1));
        let te = self.t(self.coxeter.identity()).scale(&Scalar::v());
        Ok(&ts - &te)
    }

    /// The algebra obtained by setting `v = t`, re-certified under `policy`.
    pub fn specialize(&self, t: &Rational, policy: &CheckPolicy) -> Result<FiniteDimAlgebra, FamilyError> {
        hecke_specialize(self, t, policy)
    }
}

/// `v ↦ t` on every structure constant, with associativity re-checked.
pub fn hecke_specialize(h: &HeckeAlgebra, t: &Rational, policy: &CheckPolicy) -> Result<FiniteDimAlgebra, FamilyError> {
    let alg = h
        .algebra
        .map_scalars(ScalarRing::Rational, |s| s.specialize(t).map(Scalar::from))?;
    let name = format!("hecke:{} at v = {t}", h.coxeter.descriptor());
    super::self_check_algebra(&name, &alg, policy)?;
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::super::coxeter::coxeter_system;
    use super::*;

    fn a2() -> HeckeAlgebra {
        hecke_algebra(&coxeter_system("A:2").unwrap(), &CheckPolicy::default()).unwrap()
    }

    #[test]
    fn quadratic_relation() {
        let h = a2();
        let a = h.algebra();
        let q = Scalar::v_pow(2);
        for s in 0..2 {
            let ts = h.t(h.coxeter().generator(s));
            let expected = &ts.scale(&(&q - &Scalar::one())) + &h.t(0).scale(&q);
            assert_eq!(a.mul(&ts, &ts), expected);
        }
    }

    #[test]
    fn length_additive_products() {
        let h = a2();
        let w = h.coxeter();
        for u in 0..w.len() {
            for x in 0..w.len() {
                let ux = w.mul(u, x);
                if w.length(ux) == w.length(u) + w.length(x) {
                    assert_eq!(h.algebra().mul(&h.t(u), &h.t(x)), h.t(ux));
                }
            }
        }
    }

    #[test]
    fn specialization_at_one_is_group_algebra() {
        let h = a2();
        let one = Rational::from_integer(1.into());
        let g = h.specialize(&one, &CheckPolicy::default()).unwrap();
        let ts = Element::basis(6, h.coxeter().generator(0));
        assert_eq!(g.mul(&ts, &ts), *g.unit());
        let zero = Rational::from_integer(0.into());
        assert!(h.specialize(&zero, &CheckPolicy::default()).is_err());
    }

    #[test]
    fn unknown_generator() {
        assert!(matches!(a2().kl_generator(2), Err(FamilyError::UnknownGenerator(_))));
    }
}

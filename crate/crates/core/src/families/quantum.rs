//! The small quantum group of `sl(2)` at a primitive `d`-th root of unity.
//!
//! Normal forms are the monomials `E^i F^j K^l` with `0 ≤ i, j, l < e`,
//! where `e = d` for odd `d` and `e = d/2` for even `d`. `K⁻¹` is stored as
//! `K^{e−1}`. Products come from a rewriting engine that right-multiplies a
//! normal form by one generator at a time using `K^l F = q^{−2l} F K^l`,
//! `K^l E = q^{2l} E K^l` and `FE = EF − H` with `H = (K − K⁻¹)/(q − q⁻¹)`.

use rayon::prelude::*;

use crate::algebra::{Accumulator, Basis, Element, FiniteDimAlgebra, SparseVec, StructureConstants};
use crate::check::CheckPolicy;
use crate::hopf::{tensor_mul, HopfAlgebra};
use crate::linalg::Matrix;
use crate::scalar::{Scalar, ScalarRing};

use super::FamilyError;

/// Largest `e` accepted (dimension `e³ ≤ 216`).
pub const MAX_E: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumGroupParams {
    d: u32,
    e: usize,
    ring: ScalarRing,
    /// `q^k` for `0 ≤ k < d`.
    q_powers: Vec<Scalar>,
}

impl QuantumGroupParams {
    pub fn new(d: u32) -> Result<Self, FamilyError> {
        if d <= 2 {
            return Err(FamilyError::OutOfRange(format!("uqsl2:{d} (d must exceed 2)")));
        }
        let e = if d % 2 == 1 { d as usize } else { d as usize / 2 };
        if e > MAX_E {
            return Err(FamilyError::OutOfRange(format!(
                "uqsl2:{d} (e = {e} exceeds the supported maximum {MAX_E})"
            )));
        }
        let ring = ScalarRing::cyclotomic(d);
        let q = ring.root_of_unity().expect("cyclotomic ring");
        let mut q_powers = vec![Scalar::one()];
        for k in 1..d as usize {
            let next = &q_powers[k - 1] * &q;
            q_powers.push(next);
        }
        Ok(QuantumGroupParams { d, e, ring, q_powers })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn dim(&self) -> usize {
        self.e * self.e * self.e
    }

    pub fn ring(&self) -> &ScalarRing {
        &self.ring
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(&self, k: i64) -> Scalar {
        self.q_powers[k.rem_euclid(self.d as i64) as usize].clone()
    }

    /// Basis index of `E^i F^j K^l`; exponents are taken as given.
    pub fn index(&self, i: usize, j: usize, l: usize) -> usize {
        (i * self.e + j) * self.e + l
    }

    pub fn exponents(&self, index: usize) -> (usize, usize, usize) {
        let e = self.e;
        (index / (e * e), (index / e) % e, index % e)
    }

    pub fn label(&self, i: usize, j: usize, l: usize) -> String {
        format!("E{i}F{j}K{l}")
    }
}

struct Engine<'a> {
    p: &'a QuantumGroupParams,
    /// `1/(q − q⁻¹)`.
    c_inv: Scalar,
    /// `w[i * e + j]` is `E^i F^j · E`.
    w: Vec<SparseVec>,
}

impl<'a> Engine<'a> {
    fn new(p: &'a QuantumGroupParams) -> Self {
        let c = &p.q_pow(1) - &p.q_pow(-1);
        let c_inv = p.ring.invert(&c).expect("q − q⁻¹ ≠ 0 for d > 2");
        let mut engine = Engine {
            p,
            c_inv,
            w: Vec::new(),
        };
        let e = p.e;
        let mut w = vec![Vec::new(); e * e];
        for i in 0..e {
            w[i * e] = if i + 1 < e {
                vec![(p.index(i + 1, 0, 0), Scalar::one())]
            } else {
                vec![]
            };
            for j in 1..e {
                // E^i F^j E = (E^i F^{j−1} E) F − E^i F^{j−1} H.
                let lower = engine.mul_f(&w[i * e + j - 1]);
                let h = engine.mul_h(&[(p.index(i, j - 1, 0), Scalar::one())]);
                w[i * e + j] = sub(&lower, &h);
            }
        }
        engine.w = w;
        engine
    }

    fn mul_k_pow(&self, v: &[(usize, Scalar)], t: usize) -> SparseVec {
        let e = self.p.e;
        let mut acc = Accumulator::default();
        for (m, c) in v {
            let (i, j, l) = self.p.exponents(*m);
            acc.add(self.p.index(i, j, (l + t) % e), c.clone());
        }
        acc.finish()
    }

    fn mul_f(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut acc = Accumulator::default();
        for (m, c) in v {
            let (i, j, l) = self.p.exponents(*m);
            if j + 1 < self.p.e {
                acc.add(self.p.index(i, j + 1, l), c * &self.p.q_pow(-2 * l as i64));
            }
        }
        acc.finish()
    }

    fn mul_h(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let diff = sub(&self.mul_k_pow(v, 1), &self.mul_k_pow(v, self.p.e - 1));
        diff.into_iter().map(|(m, c)| (m, &c * &self.c_inv)).collect()
    }

    fn mul_e(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let e = self.p.e;
        let mut acc = Accumulator::default();
        for (m, c) in v {
            let (i, j, l) = self.p.exponents(*m);
            let cq = c * &self.p.q_pow(2 * l as i64);
            for (n, s) in &self.w[i * e + j] {
                let (a, b, k) = self.p.exponents(*n);
                acc.add(self.p.index(a, b, (k + l) % e), &cq * s);
            }
        }
        acc.finish()
    }

    /// Row `a` of the multiplication table: `e_a · E^i F^j K^l` for all
    /// `(i, j, l)`, indexed like the basis.
    fn row(&self, a: usize) -> Vec<SparseVec> {
        let e = self.p.e;
        let mut out = vec![Vec::new(); self.p.dim()];
        let mut vi: SparseVec = vec![(a, Scalar::one())];
        for i in 0..e {
            let mut vij = vi.clone();
            for j in 0..e {
                for l in 0..e {
                    out[self.p.index(i, j, l)] = self.mul_k_pow(&vij, l);
                }
                vij = self.mul_f(&vij);
            }
            vi = self.mul_e(&vi);
        }
        out
    }
}

fn sub(a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> SparseVec {
    let mut acc = Accumulator::default();
    for (k, c) in a {
        acc.add(*k, c.clone());
    }
    for (k, c) in b {
        acc.add(*k, -c);
    }
    acc.finish()
}

/// The small quantum group together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumGroup {
    params: QuantumGroupParams,
    hopf: HopfAlgebra,
}

impl QuantumGroup {
    pub fn params(&self) -> &QuantumGroupParams {
        &self.params
    }

    pub fn hopf(&self) -> &HopfAlgebra {
        &self.hopf
    }

    pub fn algebra(&self) -> &FiniteDimAlgebra {
        self.hopf.algebra()
    }

    pub fn monomial(&self, i: usize, j: usize, l: usize) -> Element {
        Element::basis(self.params.dim(), self.params.index(i, j, l))
    }

    pub fn e(&self) -> Element {
        self.monomial(1, 0, 0)
    }

    pub fn f(&self) -> Element {
        self.monomial(0, 1, 0)
    }

    pub fn k(&self) -> Element {
        self.monomial(0, 0, 1)
    }

    /// `K⁻¹ = K^{e−1}`.
    pub fn k_inv(&self) -> Element {
        self.monomial(0, 0, self.params.e - 1)
    }

    /// `E^{e−1} F^{e−1} (1 + K + ⋯ + K^{e−1})`, verified to satisfy
    /// `aξ = ε(a)ξ` on every basis element.
    pub fn left_integral(&self) -> Result<Element, FamilyError> {
        uq_left_integral(self)
    }
}

/// Builds the algebra, coproduct, counit and antipode, then runs the
/// associativity, unit and Hopf checks under `policy`. A failing check is
/// returned as [`FamilyError::AxiomFailure`].
pub fn uq_sl2_bar(d: u32, policy: &CheckPolicy) -> Result<QuantumGroup, FamilyError> {
    let p = QuantumGroupParams::new(d)?;
    let name = format!("uqsl2:{d}");
    let (e, n) = (p.e, p.dim());
    let engine = Engine::new(&p);
    let rows: Vec<Vec<SparseVec>> = (0..n).into_par_iter().map(|a| engine.row(a)).collect();
    let mut sc = StructureConstants::zero(n);
    for (a, row) in rows.into_iter().enumerate() {
        for (b, terms) in row.into_iter().enumerate() {
            sc.set(a, b, terms)?;
        }
    }
    let labels = (0..n).map(|m| {
        let (i, j, l) = p.exponents(m);
        p.label(i, j, l)
    });
    let basis = Basis::new(labels)?;
    let algebra = FiniteDimAlgebra::new(basis, sc, Element::basis(n, 0), p.ring.clone())?;
    let one = Scalar::one;

    // Δ(E) = 1⊗E + E⊗K, Δ(F) = K⁻¹⊗F + F⊗1, Δ(K) = K⊗K.
    let (ie, i_f, ik, ikinv) = (
        p.index(1, 0, 0),
        p.index(0, 1, 0),
        p.index(0, 0, 1),
        p.index(0, 0, e - 1),
    );
    let t = |a: usize, b: usize| a * n + b;
    let delta_e = vec![(t(0, ie), one()), (t(ie, ik), one())];
    let mut delta_f = vec![(t(ikinv, i_f), one()), (t(i_f, 0), one())];
    delta_f.sort_by_key(|x| x.0);
    let delta_k = vec![(t(ik, ik), one())];
    let sc = algebra.constants();
    let mut coproduct = vec![Vec::new(); n];
    let mut di: SparseVec = vec![(t(0, 0), one())];
    for i in 0..e {
        let mut dij = di.clone();
        for j in 0..e {
            let mut dijl = dij.clone();
            for l in 0..e {
                coproduct[p.index(i, j, l)] = dijl.iter().map(|(ab, c)| (ab / n, ab % n, c.clone())).collect();
                dijl = tensor_mul(sc, &dijl, &delta_k);
            }
            dij = tensor_mul(sc, &dij, &delta_f);
        }
        di = tensor_mul(sc, &di, &delta_e);
    }
    let counit = (0..n)
        .map(|m| {
            let (i, j, _) = p.exponents(m);
            if i == 0 && j == 0 {
                one()
            } else {
                Scalar::zero()
            }
        })
        .collect();

    // S(E^i F^j K^l) = S(K)^l S(F)^j S(E)^i with S(E) = −EK⁻¹, S(F) = −KF,
    // S(K) = K⁻¹.
    let mono = |i, j, l| Element::basis(n, p.index(i, j, l));
    let s_e = -&algebra.mul(&mono(1, 0, 0), &mono(0, 0, e - 1));
    let s_f = -&algebra.mul(&mono(0, 0, 1), &mono(0, 1, 0));
    let s_k = mono(0, 0, e - 1);
    let mut columns = vec![Vec::new(); n];
    for i in 0..e {
        for j in 0..e {
            for l in 0..e {
                let x = algebra.mul(
                    &algebra.mul(&algebra.power(&s_k, l as u32), &algebra.power(&s_f, j as u32)),
                    &algebra.power(&s_e, i as u32),
                );
                columns[p.index(i, j, l)] = x.into_coeffs();
            }
        }
    }
    let antipode = Matrix::from_columns(&p.ring, n, &columns)?;
    let hopf = HopfAlgebra::new(algebra, coproduct, counit, antipode)?;
    super::self_check(&name, &hopf, policy)?;
    Ok(QuantumGroup { params: p, hopf })
}

/// The left integral `E^{e−1} F^{e−1} Σ_l K^l`, verified on every basis
/// element.
pub fn uq_left_integral(g: &QuantumGroup) -> Result<Element, FamilyError> {
    let e = g.params.e;
    let mut xi = Element::zero(g.params.dim());
    for l in 0..e {
        xi = &xi + &g.monomial(e - 1, e - 1, l);
    }
    let alg = g.algebra();
    for a in 0..alg.dim() {
        let lhs = alg.mul(&alg.basis_element(a), &xi);
        if lhs != xi.scale(&g.hopf.counit()[a]) {
            return Err(FamilyError::AxiomFailure {
                family: format!("uqsl2:{}", g.params.d),
                check: "left integral".into(),
                detail: format!("a·xi differs from counit(a)·xi at a = {}", alg.label(a)),
            });
        }
    }
    Ok(xi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d3() -> QuantumGroup {
        uq_sl2_bar(3, &CheckPolicy::default()).unwrap()
    }

    #[test]
    fn parameters() {
        assert!(matches!(QuantumGroupParams::new(2), Err(FamilyError::OutOfRange(_))));
        let p = QuantumGroupParams::new(6).unwrap();
        assert_eq!((p.e(), p.dim()), (3, 27));
        assert_eq!(QuantumGroupParams::new(5).unwrap().e(), 5);
        assert_eq!(p.q_pow(6), Scalar::one());
        assert_eq!(p.q_pow(-1), p.q_pow(5));
    }

    #[test]
    fn defining_relations_d3() {
        let g = d3();
        let a = g.algebra();
        let q = g.params().q_pow(1);
        let (e, f, k) = (g.e(), g.f(), g.k());
        assert_eq!(a.mul(&k, &e), a.mul(&e, &k).scale(&q.pow(2)));
        assert_eq!(a.mul(&k, &f), a.mul(&f, &k).scale(&g.params().q_pow(-2)));
        let lhs = &a.mul(&e, &f) - &a.mul(&f, &e);
        let c = &q - &g.params().q_pow(-1);
        let rhs = (&k - &g.k_inv()).scale(&a.ring().invert(&c).unwrap());
        assert_eq!(lhs, rhs);
        assert!(a.power(&e, 3).is_zero());
        assert!(a.power(&f, 3).is_zero());
        assert_eq!(a.power(&k, 3), *a.unit());
        assert_eq!(a.mul(&k, &g.k_inv()), *a.unit());
    }

    #[test]
    fn labels_and_integral() {
        let g = d3();
        assert_eq!(g.algebra().label(g.params().index(1, 2, 0)), "E1F2K0");
        let xi = g.left_integral().unwrap();
        assert!(g.hopf().counit_of(&xi).is_zero());
    }

    #[test]
    fn even_order_builds() {
        // d = 4 gives e = 2 and dimension 8.
        let g = uq_sl2_bar(4, &CheckPolicy::default()).unwrap();
        assert_eq!(g.algebra().dim(), 8);
    }
}

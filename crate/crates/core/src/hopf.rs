//! Hopf structures on finite-dimensional algebras: axiom checks, the dual
//! algebra, the trace element and integrals.
//!
//! Elements of `H ⊗ H` are sparse vectors indexed by `a * dim + b` for
//! `e_a ⊗ e_b`.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Accumulator, AlgebraError, Basis, Element, FiniteDimAlgebra, SparseVec, StructureConstants};
use crate::check::{scan_pairs, scan_units, CheckPolicy, Verdict};
use crate::expr::render_element;
use crate::linalg::{LinalgError, Matrix, RowReducer};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{what} has length {actual}, expected {expected}")]
    Shape {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("trace element check failed: {0}")]
    TraceElement(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BialgebraViolation {
    /// `Δ(1) != 1 ⊗ 1`.
    UnitCoproduct,
    /// `ε(1) != 1`.
    UnitCounit,
    /// `Δ(e_i e_j) != Δ(e_i) Δ(e_j)`.
    Coproduct { i: usize, j: usize },
    /// `ε(e_i e_j) != ε(e_i) ε(e_j)`.
    Counit { i: usize, j: usize },
}

/// Results of the four Hopf axiom checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfChecks {
    pub coassociativity: Verdict<usize>,
    pub counit: Verdict<usize>,
    pub bialgebra: Verdict<BialgebraViolation>,
    pub antipode: Verdict<usize>,
}

impl HopfChecks {
    pub fn all_pass(&self) -> bool {
        self.coassociativity.is_pass() && self.counit.is_pass() && self.bialgebra.is_pass() && self.antipode.is_pass()
    }

    /// Short description of the first failing axiom, if any.
    pub fn first_failure(&self, basis: &Basis) -> Option<String> {
        if let Some(k) = self.coassociativity.violation {
            return Some(format!("coassociativity fails at {}", basis.label(k)));
        }
        if let Some(k) = self.counit.violation {
            return Some(format!("counit axiom fails at {}", basis.label(k)));
        }
        if let Some(v) = self.bialgebra.violation {
            return Some(match v {
                BialgebraViolation::UnitCoproduct => "coproduct of the unit is not 1⊗1".into(),
                BialgebraViolation::UnitCounit => "counit of the unit is not 1".into(),
                BialgebraViolation::Coproduct { i, j } => {
                    format!(
                        "coproduct not multiplicative at ({}, {})",
                        basis.label(i),
                        basis.label(j)
                    )
                }
                BialgebraViolation::Counit { i, j } => {
                    format!("counit not multiplicative at ({}, {})", basis.label(i), basis.label(j))
                }
            });
        }
        self.antipode
            .violation
            .map(|k| format!("antipode identity fails at {}", basis.label(k)))
    }
}

/// A finite-dimensional Hopf algebra `(H, Δ, ε, S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebra {
    algebra: FiniteDimAlgebra,
    /// `coproduct[k]` is `Δ(e_k)` as a sparse tensor.
    coproduct: Vec<SparseVec>,
    counit: Vec<Scalar>,
    /// Column `k` is `S(e_k)`.
    antipode: Matrix,
}

impl HopfAlgebra {
    /// Assembles a Hopf structure. Axioms are not checked here; call
    /// [`HopfAlgebra::check_all`].
    pub fn new(
        algebra: FiniteDimAlgebra,
        coproduct: Vec<Vec<(usize, usize, Scalar)>>,
        counit: Vec<Scalar>,
        antipode: Matrix,
    ) -> Result<Self, HopfError> {
        let n = algebra.dim();
        let shape = |what, actual| {
            if actual == n {
                Ok(())
            } else {
                Err(HopfError::Shape {
                    what,
                    expected: n,
                    actual,
                })
            }
        };
        shape("coproduct", coproduct.len())?;
        shape("counit", counit.len())?;
        shape("antipode rows", antipode.rows())?;
        shape("antipode columns", antipode.cols())?;
        let ring = algebra.ring().clone();
        let mut delta = Vec::with_capacity(n);
        for terms in coproduct {
            let mut acc = Accumulator::default();
            for (a, b, s) in terms {
                if a >= n || b >= n {
                    return Err(AlgebraError::IndexOutOfRange {
                        index: a.max(b),
                        dim: n,
                    }
                    .into());
                }
                ring.check(&s).map_err(AlgebraError::from)?;
                acc.add(a * n + b, s);
            }
            delta.push(acc.finish());
        }
        for s in &counit {
            ring.check(s).map_err(AlgebraError::from)?;
        }
        let antipode = antipode.with_ring(&ring)?;
        Ok(HopfAlgebra {
            algebra,
            coproduct: delta,
            counit,
            antipode,
        })
    }

    pub fn algebra(&self) -> &FiniteDimAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }

    /// Terms `(a, b, c)` of `Δ(e_k) = Σ c e_a ⊗ e_b`.
    pub fn coproduct_terms(&self, k: usize) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        let n = self.dim();
        self.coproduct[k].iter().map(move |(ab, c)| (ab / n, ab % n, c))
    }

    pub fn coproduct_basis(&self, k: usize) -> &SparseVec {
        &self.coproduct[k]
    }

    pub fn coproduct_of(&self, x: &Element) -> SparseVec {
        let mut acc = Accumulator::default();
        for (k, c) in x.sparse() {
            for (ab, d) in &self.coproduct[k] {
                acc.add(*ab, &c * d);
            }
        }
        acc.finish()
    }

    pub fn counit_of(&self, x: &Element) -> Scalar {
        let mut s = Scalar::zero();
        for (k, c) in x.sparse() {
            s += &(&c * &self.counit[k]);
        }
        s
    }

    pub fn antipode_of(&self, x: &Element) -> Element {
        Element::new(self.antipode.mul_vec(x.coeffs()).expect("dimension checked"))
    }

    fn antipode_column(&self, k: usize) -> SparseVec {
        Element::new(self.antipode.column(k)).sparse()
    }

    /// Product in `H ⊗ H`.
    pub fn tensor_mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        tensor_mul(self.algebra.constants(), x, y)
    }

    /// Swaps the tensor factors.
    pub fn flip(&self, x: &SparseVec) -> SparseVec {
        let n = self.dim();
        let mut acc = Accumulator::default();
        for (ab, s) in x {
            acc.add((ab % n) * n + ab / n, s.clone());
        }
        acc.finish()
    }

    /// `(Δ⊗id)Δ(e_k) = (id⊗Δ)Δ(e_k)` for every `k`.
    pub fn check_coassociativity(&self) -> Verdict<usize> {
        let n = self.dim();
        scan_units(n, |k| {
            let mut left = Accumulator::default();
            let mut right = Accumulator::default();
            for (a, b, c) in self.coproduct_terms(k) {
                for (a12, d) in &self.coproduct[a] {
                    left.add(a12 * n + b, c * d);
                }
                for (b12, d) in &self.coproduct[b] {
                    right.add(a * n * n + b12, c * d);
                }
            }
            (left.finish() != right.finish()).then_some(k)
        })
    }

    /// `(ε⊗id)Δ = id = (id⊗ε)Δ` on every basis element.
    pub fn check_counit(&self) -> Verdict<usize> {
        scan_units(self.dim(), |k| {
            let mut left = Accumulator::default();
            let mut right = Accumulator::default();
            for (a, b, c) in self.coproduct_terms(k) {
                left.add(b, &self.counit[a] * c);
                right.add(a, c * &self.counit[b]);
            }
            let expected = vec![(k, Scalar::one())];
            (left.finish() != expected || right.finish() != expected).then_some(k)
        })
    }

    /// `Δ` and `ε` are unital algebra morphisms.
    pub fn check_bialgebra(&self, policy: &CheckPolicy) -> Verdict<BialgebraViolation> {
        let n = self.dim();
        let unit = self.algebra.unit();
        let unit_sparse = unit.sparse();
        let unit_tensor: SparseVec = {
            let mut acc = Accumulator::default();
            for (a, s) in &unit_sparse {
                for (b, t) in &unit_sparse {
                    acc.add(a * n + b, s * t);
                }
            }
            acc.finish()
        };
        if self.coproduct_of(unit) != unit_tensor {
            return Verdict::pass(0).with_violation(BialgebraViolation::UnitCoproduct);
        }
        if !self.counit_of(unit).is_one() {
            return Verdict::pass(0).with_violation(BialgebraViolation::UnitCounit);
        }
        let sc = self.algebra.constants();
        scan_pairs(n, policy, |i, j| {
            let prod = Element::from_sparse(n, sc.get(i, j));
            let lhs = self.coproduct_of(&prod);
            let rhs = self.tensor_mul(&self.coproduct[i], &self.coproduct[j]);
            if lhs != rhs {
                return Some(BialgebraViolation::Coproduct { i, j });
            }
            if self.counit_of(&prod) != &self.counit[i] * &self.counit[j] {
                return Some(BialgebraViolation::Counit { i, j });
            }
            None
        })
    }

    /// `Σ S(h₁)h₂ = ε(h)1 = Σ h₁S(h₂)` on every basis element.
    pub fn check_antipode(&self) -> Verdict<usize> {
        let n = self.dim();
        let sc = self.algebra.constants();
        let s_cols: Vec<SparseVec> = (0..n).map(|k| self.antipode_column(k)).collect();
        let unit = self.algebra.unit();
        scan_units(n, |k| {
            let mut lacc = Accumulator::default();
            let mut racc = Accumulator::default();
            for (a, b, c) in self.coproduct_terms(k) {
                for (m, s) in sc.product_sparse(&s_cols[a], &[(b, c.clone())]) {
                    lacc.add(m, s);
                }
                for (m, s) in sc.product_sparse(&[(a, c.clone())], &s_cols[b]) {
                    racc.add(m, s);
                }
            }
            let (left, right) = (lacc.finish(), racc.finish());
            let expected = unit.scale(&self.counit[k]).sparse();
            (left != expected || right != expected).then_some(k)
        })
    }

    pub fn check_all(&self, policy: &CheckPolicy) -> HopfChecks {
        HopfChecks {
            coassociativity: self.check_coassociativity(),
            counit: self.check_counit(),
            bialgebra: self.check_bialgebra(policy),
            antipode: self.check_antipode(),
        }
    }

    /// The algebra `H*` on the dual basis `f1, …, fn`:
    /// `f_i f_j = Σ_k Δ_k^{ij} f_k`, with unit `ε`.
    pub fn dual_algebra(&self) -> FiniteDimAlgebra {
        let n = self.dim();
        let mut terms: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n * n];
        for k in 0..n {
            for (ab, c) in &self.coproduct[k] {
                terms[*ab].push((k, c.clone()));
            }
        }
        let sc = StructureConstants::from_fn(n, |i, j| std::mem::take(&mut terms[i * n + j])).expect("indices < dim");
        let basis = Basis::new((1..=n).map(|i| format!("f{i}"))).expect("distinct labels");
        FiniteDimAlgebra::new(
            basis,
            sc,
            Element::new(self.counit.clone()),
            self.algebra.ring().clone(),
        )
        .expect("scalars come from H")
    }

    /// `x_H` from the coordinate formula `(x_H)_i = Σ_j Δ_j^{ij}`, i.e. the
    /// trace of left multiplication by `f_i` on `H*`.
    pub fn trace_element_closed_form(&self) -> Element {
        let n = self.dim();
        let mut coeffs = vec![Scalar::zero(); n];
        for j in 0..n {
            for (a, b, c) in self.coproduct_terms(j) {
                if b == j {
                    coeffs[a] += c;
                }
            }
        }
        Element::new(coeffs)
    }

    /// `x_H` computed literally: build each `l_{f_i}` on the dual algebra
    /// and take its trace.
    pub fn trace_element_via_matrices(&self) -> Element {
        let dual = self.dual_algebra();
        let coeffs = (0..self.dim())
            .map(|i| dual.left_mult_matrix(&dual.basis_element(i)).trace().expect("square"))
            .collect();
        Element::new(coeffs)
    }

    /// The element `x_H` with `<a*, x_H> = Tr(l_{a*})` for all `a* ∈ H*`.
    ///
    /// Both computation routes must agree, and the result must satisfy
    /// `ε(x_H) = dim H` and `x_H² = ε(x_H) x_H`; otherwise the Hopf data is
    /// inconsistent and an error is returned.
    pub fn trace_element(&self) -> Result<Element, HopfError> {
        let x = self.trace_element_closed_form();
        let via_traces = self.trace_element_via_matrices();
        let alg = &self.algebra;
        if x != via_traces {
            return Err(HopfError::TraceElement(format!(
                "coordinate formula gives {} but traces give {}",
                render_element(alg, &x),
                render_element(alg, &via_traces)
            )));
        }
        let eps = self.counit_of(&x);
        let dim = Scalar::int(self.dim() as i64);
        if eps != dim {
            return Err(HopfError::TraceElement(format!(
                "counit of x_H is {eps}, expected {dim}"
            )));
        }
        if alg.mul(&x, &x) != x.scale(&eps) {
            return Err(HopfError::TraceElement("x_H^2 differs from counit(x_H) * x_H".into()));
        }
        Ok(x)
    }

    /// Basis of the left (`aΛ = ε(a)Λ`) or right (`Λa = ε(a)Λ`) integrals.
    ///
    /// Solves the stacked homogeneous system `(l_{e_i} − ε(e_i)·id)Λ = 0`
    /// over all basis elements, working over the fraction field of the
    /// algebra's ring.
    pub fn integrals(&self, side: Side) -> Result<Vec<Element>, HopfError> {
        let n = self.dim();
        let ring = self.algebra.ring().fraction_field();
        let sc = self.algebra.constants();
        let mut reducer = RowReducer::new(&ring, n);
        for i in 0..n {
            let mut block = vec![vec![Scalar::zero(); n]; n];
            for (j, col) in (0..n).map(|j| (j, if side == Side::Left { sc.get(i, j) } else { sc.get(j, i) })) {
                for (r, c) in col {
                    block[*r][j] = c.clone();
                }
            }
            for (r, row) in block.iter_mut().enumerate() {
                row[r] = &row[r] - &self.counit[i];
            }
            for row in block {
                reducer.push_row(row)?;
            }
            if reducer.rank() == n {
                break;
            }
        }
        Ok(reducer.nullspace()?.into_iter().map(Element::new).collect())
    }

    /// Whether `Δ(c)` is invariant under the tensor flip.
    pub fn is_cocommutative_element(&self, c: &Element) -> bool {
        let d = self.coproduct_of(c);
        self.flip(&d) == d
    }

    /// Replaces the antipode (used for fault injection).
    pub fn with_antipode(&self, antipode: Matrix) -> Result<HopfAlgebra, HopfError> {
        let coproduct = (0..self.dim())
            .map(|k| self.coproduct_terms(k).map(|(a, b, c)| (a, b, c.clone())).collect())
            .collect();
        HopfAlgebra::new(self.algebra.clone(), coproduct, self.counit.clone(), antipode)
    }

    /// Replaces `Δ(e_k)` (used for fault injection).
    pub fn with_coproduct_of(&self, k: usize, terms: Vec<(usize, usize, Scalar)>) -> Result<HopfAlgebra, HopfError> {
        let mut coproduct: Vec<Vec<(usize, usize, Scalar)>> = (0..self.dim())
            .map(|k| self.coproduct_terms(k).map(|(a, b, c)| (a, b, c.clone())).collect())
            .collect();
        coproduct[k] = terms;
        HopfAlgebra::new(
            self.algebra.clone(),
            coproduct,
            self.counit.clone(),
            self.antipode.clone(),
        )
    }
}

/// `(a⊗b)(c⊗d) = ac ⊗ bd` with `a⊗b` stored at index `a·dim + b`.
pub(crate) fn tensor_mul(sc: &StructureConstants, x: &SparseVec, y: &SparseVec) -> SparseVec {
    let n = sc.dim();
    let mut acc = Accumulator::default();
    for (ab, s) in x {
        let (a, b) = (ab / n, ab % n);
        for (cd, t) in y {
            let (c, d) = (cd / n, cd % n);
            let st = s * t;
            for (k, u) in sc.get(a, c) {
                let stu = &st * u;
                for (l, w) in sc.get(b, d) {
                    acc.add(k * n + l, &stu * w);
                }
            }
        }
    }
    acc.finish()
}

impl<V> Verdict<V> {
    fn with_violation(mut self, v: V) -> Self {
        self.violation = Some(v);
        self
    }
}

//! Finite-dimensional associative algebras given by structure constants.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::check::{scan_triples, scan_units, CheckPolicy, Verdict};
use crate::linalg::Matrix;
use crate::scalar::{Scalar, ScalarError, ScalarRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("an algebra needs at least one basis element")]
    EmptyBasis,
    #[error("empty basis label")]
    EmptyLabel,
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Sparse vector: sorted by index, no zero entries.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Ordered, duplicate-free list of basis labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Basis {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self, AlgebraError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(AlgebraError::EmptyBasis);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(AlgebraError::EmptyLabel);
            }
            if index.insert(l.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Basis { labels, index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }
}

/// Accumulates a sparse linear combination.
#[derive(Default)]
pub(crate) struct Accumulator(BTreeMap<usize, Scalar>);

impl Accumulator {
    pub(crate) fn add(&mut self, k: usize, s: Scalar) {
        if s.is_zero() {
            return;
        }
        *self.0.entry(k).or_default() += &s;
    }

    pub(crate) fn finish(self) -> SparseVec {
        self.0.into_iter().filter(|(_, s)| !s.is_zero()).collect()
    }
}

/// `e_i · e_j = Σ_k c_{ij}^k e_k`, stored sparsely per pair `(i, j)`.
///
/// Also used for the auxiliary products (≺, ≻, ∗) of derived structures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    table: Vec<SparseVec>,
}

impl StructureConstants {
    pub fn zero(dim: usize) -> Self {
        StructureConstants {
            dim,
            table: vec![Vec::new(); dim * dim],
        }
    }

    /// Builds constants from a function giving the terms of `e_i · e_j`.
    /// Duplicate indices are merged and zeros dropped.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Vec<(usize, Scalar)>) -> Result<Self, AlgebraError> {
        let mut sc = StructureConstants::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                sc.set(i, j, f(i, j))?;
            }
        }
        Ok(sc)
    }

    pub fn set(&mut self, i: usize, j: usize, terms: Vec<(usize, Scalar)>) -> Result<(), AlgebraError> {
        for idx in [i, j].into_iter().chain(terms.iter().map(|t| t.0)) {
            if idx >= self.dim {
                return Err(AlgebraError::IndexOutOfRange {
                    index: idx,
                    dim: self.dim,
                });
            }
        }
        let mut acc = Accumulator::default();
        for (k, s) in terms {
            acc.add(k, s);
        }
        self.table[i * self.dim + j] = acc.finish();
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Terms of `e_i · e_j`.
    pub fn get(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    pub fn scalars(&self) -> impl Iterator<Item = &Scalar> {
        self.table.iter().flatten().map(|(_, s)| s)
    }

    /// Number of stored nonzero constants.
    pub fn nnz(&self) -> usize {
        self.table.iter().map(Vec::len).sum()
    }

    pub fn product_sparse(&self, a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> SparseVec {
        let mut acc = Accumulator::default();
        for (i, x) in a {
            for (j, y) in b {
                let xy = x * y;
                for (k, c) in self.get(*i, *j) {
                    acc.add(*k, &xy * c);
                }
            }
        }
        acc.finish()
    }

    pub fn product(&self, a: &Element, b: &Element) -> Element {
        Element::from_sparse(self.dim, &self.product_sparse(&a.sparse(), &b.sparse()))
    }

    /// Pointwise sum of two tensors of the same dimension.
    pub fn sum(&self, other: &StructureConstants) -> StructureConstants {
        assert_eq!(self.dim, other.dim);
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(a, b)| {
                let mut acc = Accumulator::default();
                for (k, s) in a.iter().chain(b) {
                    acc.add(*k, s.clone());
                }
                acc.finish()
            })
            .collect();
        StructureConstants { dim: self.dim, table }
    }

    /// First basis triple `(i, j, k)` with `(e_i e_j) e_k != e_i (e_j e_k)`.
    pub fn check_associativity(&self, policy: &CheckPolicy) -> Verdict<(usize, usize, usize)> {
        scan_triples(self.dim, policy, |i, j, k| {
            let left = self.product_sparse(self.get(i, j), &[(k, Scalar::one())]);
            let right = self.product_sparse(&[(i, Scalar::one())], self.get(j, k));
            (left != right).then_some((i, j, k))
        })
    }
}

/// Coefficient vector of an algebra element in the chosen basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    coeffs: Vec<Scalar>,
}

impl Element {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        Element { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        Element {
            coeffs: vec![Scalar::zero(); dim],
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Element::zero(dim);
        e.coeffs[i] = Scalar::one();
        e
    }

    pub fn from_sparse(dim: usize, terms: &[(usize, Scalar)]) -> Self {
        let mut e = Element::zero(dim);
        for (k, s) in terms {
            e.coeffs[*k] += s;
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn sparse(&self) -> SparseVec {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(i, s)| (i, s.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn try_scale(&self, c: &Scalar) -> Result<Element, ScalarError> {
        Ok(Element {
            coeffs: self.coeffs.iter().map(|x| x.try_mul(c)).collect::<Result<_, _>>()?,
        })
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "element dimension mismatch");
        Element {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "element dimension mismatch");
        Element {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

/// An associative algebra with unit over one of the exact scalar rings.
///
/// Associativity and the unit law are not enforced at construction (user
/// data may be broken on purpose); [`check_associativity`] and
/// [`check_unit`] verify them.
///
/// [`check_associativity`]: FiniteDimAlgebra::check_associativity
/// [`check_unit`]: FiniteDimAlgebra::check_unit
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDimAlgebra {
    basis: Basis,
    constants: StructureConstants,
    unit: Element,
    ring: ScalarRing,
}

impl FiniteDimAlgebra {
    pub fn new(
        basis: Basis,
        constants: StructureConstants,
        unit: Element,
        ring: ScalarRing,
    ) -> Result<Self, AlgebraError> {
        let dim = basis.len();
        if constants.dim() != dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim,
                actual: constants.dim(),
            });
        }
        if unit.dim() != dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim,
                actual: unit.dim(),
            });
        }
        for s in constants.scalars().chain(unit.coeffs()) {
            ring.check(s)?;
        }
        Ok(FiniteDimAlgebra {
            basis,
            constants,
            unit,
            ring,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn ring(&self) -> &ScalarRing {
        &self.ring
    }

    pub fn label(&self, i: usize) -> &str {
        self.basis.label(i)
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(self.dim(), i)
    }

    pub fn element_by_label(&self, label: &str) -> Result<Element, AlgebraError> {
        let i = self
            .basis
            .index_of(label)
            .ok_or_else(|| AlgebraError::UnknownLabel(label.to_string()))?;
        Ok(self.basis_element(i))
    }

    /// `Σ c * e_label`.
    pub fn element(&self, terms: &[(&str, Scalar)]) -> Result<Element, AlgebraError> {
        let mut e = Element::zero(self.dim());
        for (label, c) in terms {
            let i = self
                .basis
                .index_of(label)
                .ok_or_else(|| AlgebraError::UnknownLabel(label.to_string()))?;
            self.ring.check(c)?;
            e.coeffs[i] += c;
        }
        Ok(e)
    }

    /// Validates that an element belongs to this algebra.
    pub fn check_element(&self, a: &Element) -> Result<(), AlgebraError> {
        if a.dim() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                actual: a.dim(),
            });
        }
        for s in a.coeffs() {
            self.ring.check(s)?;
        }
        Ok(())
    }

    /// Product of two elements; panics if either has the wrong dimension.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        assert_eq!(a.dim(), self.dim(), "element dimension mismatch");
        assert_eq!(b.dim(), self.dim(), "element dimension mismatch");
        self.constants.product(a, b)
    }

    /// Checked product.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.mul(a, b))
    }

    pub fn power(&self, a: &Element, n: u32) -> Element {
        let mut acc = self.unit.clone();
        for _ in 0..n {
            acc = self.mul(a, &acc);
        }
        acc
    }

    pub fn check_associativity(&self, policy: &CheckPolicy) -> Verdict<(usize, usize, usize)> {
        self.constants.check_associativity(policy)
    }

    /// First basis index `i` with `unit·e_i != e_i` or `e_i·unit != e_i`.
    pub fn check_unit(&self) -> Verdict<usize> {
        let unit = self.unit.sparse();
        scan_units(self.dim(), |i| {
            let e = [(i, Scalar::one())];
            let ok = self.constants.product_sparse(&unit, &e) == e && self.constants.product_sparse(&e, &unit) == e;
            (!ok).then_some(i)
        })
    }

    /// Matrix of `b ↦ a·b`; column `j` is `a·e_j`.
    pub fn left_mult_matrix(&self, a: &Element) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| self.mul(a, &self.basis_element(j)).into_coeffs())
            .collect();
        Matrix::from_columns(&self.ring, self.dim(), &cols).expect("element scalars lie in the ring")
    }

    /// Matrix of `b ↦ b·a`; column `j` is `e_j·a`.
    pub fn right_mult_matrix(&self, a: &Element) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| self.mul(&self.basis_element(j), a).into_coeffs())
            .collect();
        Matrix::from_columns(&self.ring, self.dim(), &cols).expect("element scalars lie in the ring")
    }

    /// The same algebra read over a larger ring (e.g. Laurent → rational
    /// functions).
    pub fn with_ring(&self, ring: ScalarRing) -> Result<FiniteDimAlgebra, AlgebraError> {
        FiniteDimAlgebra::new(self.basis.clone(), self.constants.clone(), self.unit.clone(), ring)
    }

    /// Applies a scalar map to every structure constant and the unit.
    pub fn map_scalars(
        &self,
        ring: ScalarRing,
        mut f: impl FnMut(&Scalar) -> Result<Scalar, ScalarError>,
    ) -> Result<FiniteDimAlgebra, AlgebraError> {
        let dim = self.dim();
        let mut constants = StructureConstants::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                let terms = self
                    .constants
                    .get(i, j)
                    .iter()
                    .map(|(k, s)| Ok((*k, f(s)?)))
                    .collect::<Result<Vec<_>, ScalarError>>()?;
                constants.set(i, j, terms)?;
            }
        }
        let unit = Element::new(self.unit.coeffs().iter().map(&mut f).collect::<Result<_, _>>()?);
        FiniteDimAlgebra::new(self.basis.clone(), constants, unit, ring)
    }

    /// Replaces the structure constants (used for fault injection in tests
    /// and for user-edited specs).
    pub fn with_constants(&self, constants: StructureConstants) -> Result<FiniteDimAlgebra, AlgebraError> {
        FiniteDimAlgebra::new(self.basis.clone(), constants, self.unit.clone(), self.ring.clone())
    }

    pub fn with_unit(&self, unit: Element) -> Result<FiniteDimAlgebra, AlgebraError> {
        FiniteDimAlgebra::new(self.basis.clone(), self.constants.clone(), unit, self.ring.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 2x2 matrix algebra on e11, e12, e21, e22.
    fn matrix_units() -> FiniteDimAlgebra {
        let basis = Basis::new(["e11", "e12", "e21", "e22"]).unwrap();
        let sc = StructureConstants::from_fn(4, |a, b| {
            let (i, j) = (a / 2, a % 2);
            let (k, l) = (b / 2, b % 2);
            if j == k {
                vec![(2 * i + l, Scalar::one())]
            } else {
                vec![]
            }
        })
        .unwrap();
        let unit = Element::new(vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one()]);
        FiniteDimAlgebra::new(basis, sc, unit, ScalarRing::Rational).unwrap()
    }

    #[test]
    fn matrix_units_are_associative_with_unit() {
        let a = matrix_units();
        assert!(a.check_associativity(&CheckPolicy::default()).is_pass());
        assert!(a.check_unit().is_pass());
        assert_eq!(a.left_mult_matrix(a.unit()), Matrix::identity(a.ring(), 4));
        assert!(a.left_mult_matrix(&Element::zero(4)).is_zero());
        assert_eq!(a.power(a.unit(), 7), *a.unit());
    }

    #[test]
    fn broken_unit_detected() {
        let a = matrix_units();
        assert!(!a.with_unit(Element::zero(4)).unwrap().check_unit().is_pass());
        let doubled = a.unit().scale(&Scalar::int(2));
        assert!(!a.with_unit(doubled).unwrap().check_unit().is_pass());
    }

    #[test]
    fn injected_fault_reported_as_first_triple() {
        let a = matrix_units();
        let mut sc = a.constants().clone();
        // e12 e21 = 2 e11 instead of e11.
        sc.set(1, 2, vec![(0, Scalar::int(2))]).unwrap();
        let v = a
            .with_constants(sc)
            .unwrap()
            .check_associativity(&CheckPolicy::default());
        // (e12 e21) e12 = 2 e12 but e12 (e21 e12) = e12; every earlier
        // triple either avoids the faulty product or uses it on both sides.
        assert_eq!(v.violation, Some((1, 2, 1)));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Basis::new(Vec::<String>::new()), Err(AlgebraError::EmptyBasis));
        assert!(matches!(Basis::new(["a", "a"]), Err(AlgebraError::DuplicateLabel(_))));
        let mut sc = StructureConstants::zero(2);
        assert!(sc.set(0, 0, vec![(5, Scalar::one())]).is_err());
        let basis = Basis::new(["a", "b"]).unwrap();
        let unit = Element::new(vec![Scalar::v(), Scalar::zero()]);
        assert!(FiniteDimAlgebra::new(basis, sc, unit, ScalarRing::Rational).is_err());
    }
}

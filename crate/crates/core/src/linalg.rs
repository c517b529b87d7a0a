//! Dense exact linear algebra.
//!
//! Elimination picks the first nonzero entry as pivot; in exact arithmetic
//! there is nothing to gain from magnitude heuristics. Null-space bases are
//! normalized so that every vector's first nonzero coordinate is 1.

use std::fmt;

use thiserror::Error;

use crate::scalar::{Scalar, ScalarError, ScalarRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("elimination over {0} needs a field; embed Laurent data into rational functions first")]
    NotAField(String),
}

/// Row-major matrix over one scalar ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
    ring: ScalarRing,
}

impl Matrix {
    pub fn zeros(ring: &ScalarRing, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
            ring: ring.clone(),
        }
    }

    pub fn identity(ring: &ScalarRing, n: usize) -> Self {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(ring: &ScalarRing, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Shape("ragged rows".into()));
        }
        let n = rows.len();
        let entries: Vec<Scalar> = rows.into_iter().flatten().collect();
        for e in &entries {
            ring.check(e)?;
        }
        Ok(Matrix {
            rows: n,
            cols,
            entries,
            ring: ring.clone(),
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(ring: &ScalarRing, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        let mut m = Matrix::zeros(ring, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinalgError::Shape(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (i, x) in col.iter().enumerate() {
                ring.check(x)?;
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> &ScalarRing {
        &self.ring
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Reinterprets the entries over another ring that contains them.
    pub fn with_ring(&self, ring: &ScalarRing) -> Result<Matrix, LinalgError> {
        for e in &self.entries {
            ring.check(e)?;
        }
        Ok(Matrix {
            ring: ring.clone(),
            ..self.clone()
        })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn same_ring(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.ring != other.ring {
            return Err(ScalarError::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            }
            .into());
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_ring(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn matadd(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_ring(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::Shape(format!(
                "{}x{} plus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Matrix {
            entries,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &Scalar) -> Result<Matrix, LinalgError> {
        self.ring.check(c)?;
        Ok(Matrix {
            entries: self.entries.iter().map(|a| a * c).collect(),
            ..self.clone()
        })
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::Shape(format!(
                "vector of length {} for {} columns",
                x.len(),
                self.cols
            )));
        }
        let mut out = vec![Scalar::zero(); self.rows];
        for (i, slot) in out.iter_mut().enumerate() {
            for (a, b) in self.row(i).iter().zip(x) {
                if !a.is_zero() && !b.is_zero() {
                    *slot += &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<Scalar, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Shape(format!(
                "trace of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut t = Scalar::zero();
        for i in 0..self.rows {
            t += self.get(i, i);
        }
        Ok(t)
    }

    fn require_field(&self) -> Result<(), LinalgError> {
        if self.ring.is_field() {
            Ok(())
        } else {
            Err(LinalgError::NotAField(self.ring.to_string()))
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> Result<(Matrix, Vec<usize>), LinalgError> {
        self.require_field()?;
        let mut reducer = RowReducer::new(&self.ring, self.cols);
        for i in 0..self.rows {
            reducer.push_row(self.row(i).to_vec())?;
        }
        let pivots = reducer.pivot_columns();
        let mut out = Matrix::zeros(&self.ring, self.rows, self.cols);
        for (r, row) in reducer.rows.iter().enumerate() {
            for (j, x) in row.values.iter().enumerate() {
                out.set(r, j, x.clone());
            }
        }
        Ok((out, pivots))
    }

    pub fn rank(&self) -> Result<usize, LinalgError> {
        Ok(self.rref()?.1.len())
    }

    /// A basis of `{x : Ax = 0}`, each vector normalized to have its first
    /// nonzero coordinate equal to 1. Empty when the kernel is trivial.
    pub fn nullspace(&self) -> Result<Vec<Vec<Scalar>>, LinalgError> {
        self.require_field()?;
        let mut reducer = RowReducer::new(&self.ring, self.cols);
        for i in 0..self.rows {
            reducer.push_row(self.row(i).to_vec())?;
        }
        reducer.nullspace()
    }

    /// Some solution of `Ax = b`, or [`Solution::Inconsistent`].
    pub fn solve(&self, b: &[Scalar]) -> Result<Solution, LinalgError> {
        self.require_field()?;
        if b.len() != self.rows {
            return Err(LinalgError::Shape(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut reducer = RowReducer::new(&self.ring, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            self.ring.check(bi)?;
            let mut row = self.row(i).to_vec();
            row.push(bi.clone());
            reducer.push_row(row)?;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for row in &reducer.rows {
            if row.pivot == self.cols {
                return Ok(Solution::Inconsistent);
            }
            x[row.pivot] = row.values[self.cols].clone();
        }
        Ok(Solution::Found(x))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Found(Vec<Scalar>),
    Inconsistent,
}

#[derive(Clone, Debug)]
struct PivotRow {
    pivot: usize,
    values: Vec<Scalar>,
}

/// Incremental reduced row echelon form.
///
/// Rows can be streamed in one at a time; the reducer keeps at most `cols`
/// pivot rows, so a tall stacked system (for instance `n²` rows for an
/// integral computation) never has to be materialized.
#[derive(Clone, Debug)]
pub struct RowReducer {
    ring: ScalarRing,
    cols: usize,
    rows: Vec<PivotRow>,
}

impl RowReducer {
    pub fn new(ring: &ScalarRing, cols: usize) -> Self {
        RowReducer {
            ring: ring.clone(),
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.pivot).collect()
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn push_row(&mut self, mut row: Vec<Scalar>) -> Result<bool, LinalgError> {
        if !self.ring.is_field() {
            return Err(LinalgError::NotAField(self.ring.to_string()));
        }
        if row.len() != self.cols {
            return Err(LinalgError::Shape(format!(
                "row of length {}, expected {}",
                row.len(),
                self.cols
            )));
        }
        for pr in &self.rows {
            let c = row[pr.pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(&pr.values).skip(pr.pivot) {
                if !p.is_zero() {
                    *x = x.try_sub(&c.try_mul(p)?)?;
                }
            }
        }
        let Some(pivot) = row.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = self.ring.invert(&row[pivot])?;
        for x in row.iter_mut().skip(pivot) {
            if !x.is_zero() {
                *x = x.try_mul(&inv)?;
            }
        }
        for pr in &mut self.rows {
            let c = pr.values[pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, p) in pr.values.iter_mut().zip(&row).skip(pivot) {
                if !p.is_zero() {
                    *x = x.try_sub(&c.try_mul(p)?)?;
                }
            }
        }
        let at = self.rows.partition_point(|r| r.pivot < pivot);
        self.rows.insert(at, PivotRow { pivot, values: row });
        Ok(true)
    }

    /// Null-space basis of the rows pushed so far.
    pub fn nullspace(&self) -> Result<Vec<Vec<Scalar>>, LinalgError> {
        let pivots = self.pivot_columns();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for pr in &self.rows {
                v[pr.pivot] = -&pr.values[free];
            }
            basis.push(normalize_leading(&self.ring, v)?);
        }
        Ok(basis)
    }
}

/// Divides a vector by its first nonzero coordinate.
pub fn normalize_leading(ring: &ScalarRing, v: Vec<Scalar>) -> Result<Vec<Scalar>, LinalgError> {
    let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() else {
        return Ok(v);
    };
    if lead.is_one() {
        return Ok(v);
    }
    let inv = ring.invert(&lead)?;
    Ok(v.iter().map(|x| x * &inv).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ScalarRing {
        ScalarRing::Rational
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            &q(),
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn hand_expanded_product() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let swap = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.matmul(&swap).unwrap(), m(&[&[2, 1], &[4, 3]]));
        assert_eq!(Matrix::identity(&q(), 2).matmul(&a).unwrap(), a);
        assert!(a.scale(&Scalar::zero()).unwrap().is_zero());
        assert!(a.matmul(&m(&[&[1, 2, 3]])).is_err());
    }

    #[test]
    fn traces() {
        assert_eq!(Matrix::identity(&q(), 5).trace().unwrap(), Scalar::int(5));
        assert_eq!(Matrix::zeros(&q(), 3, 3).trace().unwrap(), Scalar::zero());
        assert!(Matrix::zeros(&q(), 2, 3).trace().is_err());
    }

    #[test]
    fn nullspace_edge_cases() {
        assert!(Matrix::identity(&q(), 3).nullspace().unwrap().is_empty());
        let ns = Matrix::zeros(&q(), 2, 2).nullspace().unwrap();
        assert_eq!(ns.len(), 2);
        let a = m(&[&[0, 2, -2], &[0, 1, -1]]);
        let ns = a.nullspace().unwrap();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
            assert!(v.iter().find(|x| !x.is_zero()).unwrap().is_one());
        }
        assert!(matches!(
            Matrix::identity(&ScalarRing::Laurent, 2).nullspace(),
            Err(LinalgError::NotAField(_))
        ));
    }

    #[test]
    fn solve_cases() {
        let b = vec![Scalar::int(3), Scalar::ratio(-1, 2)];
        assert_eq!(Matrix::identity(&q(), 2).solve(&b).unwrap(), Solution::Found(b.clone()));
        assert_eq!(Matrix::zeros(&q(), 2, 2).solve(&b).unwrap(), Solution::Inconsistent);
        assert_eq!(
            m(&[&[2]]).solve(&[Scalar::int(4)]).unwrap(),
            Solution::Found(vec![Scalar::int(2)])
        );
    }

    #[test]
    fn rref_is_idempotent() {
        let a = m(&[&[1, 2, 3], &[2, 4, 7], &[0, 0, 5]]);
        let (r, piv) = a.rref().unwrap();
        assert_eq!(piv, vec![0, 2]);
        assert_eq!(r.rref().unwrap().0, r);
    }
}

//! Dense exact linear algebra.
//!
//! Vectors are plain `Vec<F>`; matrices act on column vectors. Subspaces are
//! stored by their reduced row-echelon basis, so two subspaces are equal iff
//! their representations are equal.

use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: expected {expected}, got {found}")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("subspace is not contained in the ambient subspace")]
    NotContained,
}

/// A dense `rows x cols` matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Builds a matrix from its rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        Matrix {
            rows: nrows,
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "mul",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                op: "mul_vec",
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect())
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Display> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

pub fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Reduced row-echelon form with zero rows removed, together with the pivot
/// column of each remaining row.
pub fn rref<F: Scalar>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut rows: Vec<Vec<F>> = m.row_vectors();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x = x.clone() * inv.clone();
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in c..m.cols {
                if !pivot_row[j].is_zero() {
                    row[j] = row[j].clone() - factor.clone() * pivot_row[j].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (Matrix::from_rows(m.cols, rows), pivots)
}

/// A linear subspace of `F^n`, stored in canonical reduced row-echelon form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Scalar> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// The span of `vectors`, each of length `ambient`.
    pub fn span(ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        let (basis, pivots) = rref(&Matrix::from_rows(ambient, vectors));
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// The canonical echelon basis, one vector per row.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<F>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the echelon basis; the result is zero iff `v` lies
    /// in the subspace.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut v = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, b) in v.iter_mut().zip(self.basis.row(r)) {
                if !b.is_zero() {
                    *x = x.clone() - factor.clone() * b.clone();
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.ambient == other.ambient
            && (0..self.dim()).all(|r| other.contains(self.basis.row(r)))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        assert_eq!(self.ambient, other.ambient, "ambient dimension");
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::span(self.ambient, vs)
    }

    pub fn intersection(&self, other: &Subspace<F>) -> Subspace<F> {
        assert_eq!(self.ambient, other.ambient, "ambient dimension");
        // x = a·B1 = b·B2  <=>  (a, b) in ker [B1^T | -B2^T]
        let (d1, d2) = (self.dim(), other.dim());
        let mut stacked = Matrix::zeros(self.ambient, d1 + d2);
        for r in 0..d1 {
            for (i, x) in self.basis.row(r).iter().enumerate() {
                stacked[(i, r)] = x.clone();
            }
        }
        for r in 0..d2 {
            for (i, x) in other.basis.row(r).iter().enumerate() {
                stacked[(i, d1 + r)] = -x.clone();
            }
        }
        let ker = kernel(&stacked);
        let vectors = ker
            .basis_vectors()
            .into_iter()
            .map(|c| combine(&self.basis, &c[..d1]))
            .collect();
        Subspace::span(self.ambient, vectors)
    }
}

impl<F: fmt::Display> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(ambient {}, basis {:?})", self.ambient, self.basis)
    }
}

/// `Σ coeffs[r] · rows[r]`.
pub fn combine<F: Scalar>(rows: &Matrix<F>, coeffs: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); rows.cols()];
    for (r, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (x, b) in out.iter_mut().zip(rows.row(r)) {
            if !b.is_zero() {
                *x = x.clone() + c.clone() * b.clone();
            }
        }
    }
    out
}

/// The null space `{x : m·x = 0}`.
pub fn kernel<F: Scalar>(m: &Matrix<F>) -> Subspace<F> {
    let (r, pivots) = rref(m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![F::zero(); n];
            v[f] = F::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            v
        })
        .collect();
    Subspace::span(n, vectors)
}

/// The column space of `m` as a subspace of `F^rows`.
pub fn image<F: Scalar>(m: &Matrix<F>) -> Subspace<F> {
    Subspace::span(m.rows(), m.transpose().row_vectors())
}

/// Some `x` with `m·x = b`, or `None` if the system is inconsistent. Free
/// variables of the reduced system are set to zero.
pub fn solve<F: Scalar>(m: &Matrix<F>, b: &[F]) -> Result<Option<Vec<F>>, LinalgError> {
    if b.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch {
            op: "solve",
            expected: m.rows(),
            found: b.len(),
        });
    }
    let n = m.cols();
    let mut augmented = Matrix::zeros(m.rows(), n + 1);
    for i in 0..m.rows() {
        for j in 0..n {
            augmented[(i, j)] = m[(i, j)].clone();
        }
        augmented[(i, n)] = b[i].clone();
    }
    let (r, pivots) = rref(&augmented);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![F::zero(); n];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[(row, n)].clone();
    }
    Ok(Some(x))
}

/// Vectors of `big` whose classes form a basis of `big / small`.
///
/// Rows of `big`'s echelon basis are taken in order and kept whenever they are
/// independent of `small` plus the rows already kept.
pub fn quotient_basis<F: Scalar>(
    big: &Subspace<F>,
    small: &Subspace<F>,
) -> Result<Vec<Vec<F>>, LinalgError> {
    if big.ambient_dim() != small.ambient_dim() {
        return Err(LinalgError::DimensionMismatch {
            op: "quotient_basis",
            expected: big.ambient_dim(),
            found: small.ambient_dim(),
        });
    }
    if !small.is_subspace_of(big) {
        return Err(LinalgError::NotContained);
    }
    let mut running = small.clone();
    let mut out = Vec::new();
    for v in big.basis_vectors() {
        if out.len() + small.dim() == big.dim() {
            break;
        }
        if !running.contains(&v) {
            running = running.sum(&Subspace::span(big.ambient_dim(), vec![v.clone()]));
            out.push(v);
        }
    }
    Ok(out)
}

/// `{x : m·x ∈ target}`.
pub fn preimage_subspace<F: Scalar>(
    m: &Matrix<F>,
    target: &Subspace<F>,
) -> Result<Subspace<F>, LinalgError> {
    if target.ambient_dim() != m.rows() {
        return Err(LinalgError::DimensionMismatch {
            op: "preimage_subspace",
            expected: m.rows(),
            found: target.ambient_dim(),
        });
    }
    // target = ker(C) where the rows of C span the annihilator of target.
    let annihilator = kernel(target.basis());
    let c = annihilator.basis();
    Ok(kernel(&c.mul(m)?))
}

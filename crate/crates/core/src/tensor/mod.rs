//! Dense complex linear algebra: matrices, state vectors, Kronecker products,
//! null spaces, vectorization. Everything is small (dimensions ≤ 4096) and
//! row-major; values are immutable at the interface and safe to share.

mod random;

pub use num_complex::Complex64;
pub use random::{random_unitary, split_seed};

use thiserror::Error;

/// Composite dimensions produced by [`kron`] may not exceed this.
pub const KRON_DIM_CAP: usize = 4096;

pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[derive(Debug, Error)]
pub enum TensorError {
    #[error("{op}: shape {lhs_rows}x{lhs_cols} incompatible with {rhs_rows}x{rhs_cols}")]
    ShapeMismatch {
        op: &'static str,
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },
    #[error("entry buffer has length {len}, expected {rows}x{cols} = {}", rows * cols)]
    LengthMismatch { len: usize, rows: usize, cols: usize },
    #[error("composite dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
}

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self, TensorError> {
        if entries.len() != rows * cols {
            return Err(TensorError::LengthMismatch { len: entries.len(), rows, cols });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = ONE;
        }
        m
    }

    /// Build entry-by-entry from a closure over (row, col).
    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    /// Convenience constructor from real entries.
    pub fn from_real(rows: usize, cols: usize, reals: &[f64]) -> Result<Self, TensorError> {
        let entries = reals.iter().map(|&r| Complex64::new(r, 0.0)).collect();
        Self::new(rows, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.entries[row * self.cols + col] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace requires a square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_same_shape(other, "add")?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_same_shape(other, "sub")?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    /// √Σ|entry|².
    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ‖A†A − I‖_F; small iff the matrix is (numerically) unitary.
    pub fn unitarity_defect(&self) -> f64 {
        assert!(self.is_square(), "unitarity defect requires a square matrix");
        let gram = self.adjoint().matmul(self).expect("square product");
        gram.sub(&Self::identity(self.rows)).expect("same shape").frobenius_norm()
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|e| e.re.is_finite() && e.im.is_finite())
    }

    /// Hermitian part (A + A†)/2.
    pub fn hermitize(&self) -> Self {
        let adj = self.adjoint();
        self.add(&adj).expect("same shape").scale(Complex64::new(0.5, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, TensorError> {
        if self.cols != other.rows {
            return Err(TensorError::ShapeMismatch {
                op: "matmul",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: other.rows,
                rhs_cols: other.cols,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.entries[i * self.cols + k];
                if aik == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += aik * other.entries[k * other.cols + j];
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &StateVector) -> Result<StateVector, TensorError> {
        if self.cols != v.dim() {
            return Err(TensorError::ShapeMismatch {
                op: "matvec",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: v.dim(),
                rhs_cols: 1,
            });
        }
        let mut amps = vec![ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = ZERO;
            for j in 0..self.cols {
                acc += self.entries[i * self.cols + j] * v.amplitudes[j];
            }
            amps[i] = acc;
        }
        Ok(StateVector::new(amps))
    }

    fn check_same_shape(&self, other: &Self, op: &'static str) -> Result<(), TensorError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(TensorError::ShapeMismatch {
                op,
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: other.rows,
                rhs_cols: other.cols,
            });
        }
        Ok(())
    }
}

/// Complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { amplitudes: vec![ZERO; dim] }
    }

    /// Computational basis state |index⟩.
    pub fn basis_state(dim: usize, index: usize) -> Result<Self, TensorError> {
        if index >= dim {
            return Err(TensorError::IndexOutOfRange { index, dim });
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn get(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ⟨self|other⟩, conjugate-linear in self.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "inner product dimension mismatch");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self { amplitudes: self.amplitudes.iter().map(|a| a * factor).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "subtraction dimension mismatch");
        Self {
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Outer product |self⟩⟨other|.
    pub fn outer(&self, other: &Self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim(), other.dim(), |i, j| {
            self.amplitudes[i] * other.amplitudes[j].conj()
        })
    }

    /// Tensor product |self⟩⊗|other⟩ with index convention j·dim(other)+k.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Self { amplitudes }
    }

    pub fn is_finite(&self) -> bool {
        self.amplitudes.iter().all(|a| a.re.is_finite() && a.im.is_finite())
    }
}

/// Kronecker product a ⊗ b.
///
/// Composite index convention, fixed once for the whole crate: row j·b.rows+k
/// of the product corresponds to |j⟩⊗|k⟩ (and likewise for columns). Fails if
/// either composite dimension exceeds [`KRON_DIM_CAP`].
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, TensorError> {
    let rows = a.rows() * b.rows();
    let cols = a.cols() * b.cols();
    let dim = rows.max(cols);
    if dim > KRON_DIM_CAP {
        return Err(TensorError::DimensionCap { dim, cap: KRON_DIM_CAP });
    }
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a.get(i, j);
            if aij == ZERO {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out.set(i * b.rows() + k, j * b.cols() + l, aij * b.get(k, l));
                }
            }
        }
    }
    Ok(out)
}

/// Column-stacking vectorization: vec(M)[i + rows·j] = M[i][j].
///
/// With this convention vec(AXB) = (Bᵀ ⊗ A)·vec(X).
pub fn vectorize(a: &ComplexMatrix) -> StateVector {
    let mut amplitudes = Vec::with_capacity(a.rows() * a.cols());
    for j in 0..a.cols() {
        for i in 0..a.rows() {
            amplitudes.push(a.get(i, j));
        }
    }
    StateVector::new(amplitudes)
}

/// Inverse of [`vectorize`].
pub fn devectorize(v: &StateVector, rows: usize, cols: usize) -> Result<ComplexMatrix, TensorError> {
    if v.dim() != rows * cols {
        return Err(TensorError::LengthMismatch { len: v.dim(), rows, cols });
    }
    Ok(ComplexMatrix::from_fn(rows, cols, |i, j| v.get(i + rows * j)))
}

/// Partial trace over the first factor of a (d1·d2)×(d1·d2) operator.
pub fn trace_out_first(
    rho: &ComplexMatrix,
    d1: usize,
    d2: usize,
) -> Result<ComplexMatrix, TensorError> {
    check_bipartite(rho, d1, d2)?;
    let mut out = ComplexMatrix::zeros(d2, d2);
    for k in 0..d2 {
        for l in 0..d2 {
            let mut acc = ZERO;
            for i in 0..d1 {
                acc += rho.get(i * d2 + k, i * d2 + l);
            }
            out.set(k, l, acc);
        }
    }
    Ok(out)
}

/// Partial trace over the second factor of a (d1·d2)×(d1·d2) operator.
pub fn trace_out_second(
    rho: &ComplexMatrix,
    d1: usize,
    d2: usize,
) -> Result<ComplexMatrix, TensorError> {
    check_bipartite(rho, d1, d2)?;
    let mut out = ComplexMatrix::zeros(d1, d1);
    for i in 0..d1 {
        for j in 0..d1 {
            let mut acc = ZERO;
            for k in 0..d2 {
                acc += rho.get(i * d2 + k, j * d2 + k);
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

fn check_bipartite(rho: &ComplexMatrix, d1: usize, d2: usize) -> Result<(), TensorError> {
    let d = d1 * d2;
    if rho.rows() != d || rho.cols() != d {
        return Err(TensorError::ShapeMismatch {
            op: "partial trace",
            lhs_rows: rho.rows(),
            lhs_cols: rho.cols(),
            rhs_rows: d,
            rhs_cols: d,
        });
    }
    Ok(())
}

/// Orthonormal basis of the numerical null space of `a`.
///
/// Gaussian elimination with partial pivoting; a pivot is declared zero when
/// its magnitude falls below tol·‖a‖_F. Returned vectors are orthonormal and
/// each satisfies ‖a·v‖ ≤ tol·‖a‖·‖v‖. Empty when `a` has full column rank.
pub fn null_space(a: &ComplexMatrix, tol: f64) -> Vec<StateVector> {
    assert!(tol > 0.0, "null-space tolerance must be positive");
    let m = a.rows();
    let n = a.cols();
    let scale = a.frobenius_norm();
    if scale == 0.0 {
        return (0..n)
            .map(|i| StateVector::basis_state(n, i).expect("index in range"))
            .collect();
    }

    // Reduced row echelon form of a working copy.
    let mut w: Vec<Complex64> = a.entries().to_vec();
    let threshold = tol * scale;
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for col in 0..n {
        let (mut best_row, mut best_mag) = (r, 0.0f64);
        for row in r..m {
            let mag = w[row * n + col].norm();
            if mag > best_mag {
                best_mag = mag;
                best_row = row;
            }
        }
        if best_mag <= threshold {
            continue; // free column
        }
        if best_row != r {
            for j in 0..n {
                w.swap(r * n + j, best_row * n + j);
            }
        }
        let pivot = w[r * n + col];
        for j in col..n {
            w[r * n + j] /= pivot;
        }
        for row in 0..m {
            if row == r {
                continue;
            }
            let factor = w[row * n + col];
            if factor == ZERO {
                continue;
            }
            for j in col..n {
                let sub = factor * w[r * n + j];
                w[row * n + j] -= sub;
            }
        }
        pivot_cols.push(col);
        r += 1;
        if r == m {
            break;
        }
    }

    let mut basis: Vec<StateVector> = Vec::new();
    let pivot_set: std::collections::HashSet<usize> = pivot_cols.iter().copied().collect();
    for free in (0..n).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![ZERO; n];
        v[free] = ONE;
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -w[row * n + free];
        }
        basis.push(StateVector::new(v));
    }

    orthonormalize(&mut basis);
    basis
}

/// Modified Gram-Schmidt in place; drops numerically dependent vectors.
fn orthonormalize(vectors: &mut Vec<StateVector>) {
    let mut kept: Vec<StateVector> = Vec::with_capacity(vectors.len());
    for v in vectors.drain(..) {
        let mut w = v;
        for q in &kept {
            let coeff = q.inner(&w);
            w = w.sub(&q.scale(coeff));
        }
        let norm = w.norm();
        if norm > 1e-14 {
            kept.push(w.scale(Complex64::new(1.0 / norm, 0.0)));
        }
    }
    *vectors = kept;
}

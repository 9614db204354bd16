//! Dense complex matrix kernel for states of up to three spins: construction,
//! tensor products, partial trace, a cyclic-Jacobi Hermitian eigensolver, PSD
//! square root and von Neumann entropy.
//!
//! Basis convention for three spins: computational basis |abc> with spin 1
//! most significant, index = 4a + 2b + c.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Max-norm tolerance for Hermiticity checks.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Tolerance on |tr(rho) - 1| for density matrices.
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues above this floor are treated as non-negative roundoff.
pub const PSD_FLOOR: f64 = -1e-10;
/// Jacobi convergence: off-diagonal Frobenius norm threshold.
pub const JACOBI_OFF_TOL: f64 = 1e-14;
/// Jacobi sweep budget; exceeding it is a hard error.
pub const JACOBI_MAX_SWEEPS: usize = 50;

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                rows,
                cols,
                len: data.len(),
            });
        }
        let m = Self { rows, cols, data };
        m.check_finite()?;
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        m
    }

    /// Rank-1 projector |v><v| (no normalisation applied).
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        Self::from_fn(n, n, |i, j| v[i] * v[j].conj())
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

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    fn check_finite(&self) -> Result<()> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = self[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn conjugate(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in add"
        );
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in sub"
        );
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in matmul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-norm distance to another matrix of the same shape.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max-norm deviation from Hermitian symmetry.
    pub fn hermiticity_defect(&self) -> f64 {
        debug_assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Kronecker product with `(a (x) b)[i*rb + k, j*cb + l] = a[i, j] * b[k, l]`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ra, ca) = (a.rows(), a.cols());
    let (rb, cb) = (b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            let aij = a[(i, j)];
            if aij == Complex64::ZERO {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Reorder the tensor factors of an 8x8 three-spin operator. `source_factor[s]`
/// names the factor of `m`'s ordering that holds canonical spin s+1.
pub fn permute_qubits(m: &ComplexMatrix, source_factor: [usize; 3]) -> ComplexMatrix {
    assert_eq!(
        (m.rows(), m.cols()),
        (8, 8),
        "expected an 8x8 three-spin operator"
    );
    let src = |idx: usize| -> usize {
        let mut out = 0usize;
        for (s, &factor) in source_factor.iter().enumerate() {
            let bit = (idx >> (2 - s)) & 1;
            out |= bit << (2 - factor);
        }
        out
    };
    ComplexMatrix::from_fn(8, 8, |i, j| m[(src(i), src(j))])
}

/// Subset of the three spins, labelled 1, 2, 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinSet(u8);

impl SpinSet {
    pub fn new(spins: &[u8]) -> Result<Self> {
        let mut bits = 0u8;
        for &s in spins {
            if !(1..=3).contains(&s) {
                return Err(Error::InvalidKeepSet);
            }
            bits |= 1 << (s - 1);
        }
        Ok(Self(bits))
    }

    pub fn contains(self, spin: u8) -> bool {
        (1..=3).contains(&spin) && self.0 & (1 << (spin - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn spins(self) -> impl Iterator<Item = u8> {
        (1..=3u8).filter(move |&s| self.contains(s))
    }
}

/// Ascending eigenvalues with orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenSystem {
    /// V diag(values) V^dag.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * self.values[k] * v[(j, k)].conj())
                .sum()
        })
    }
}

/// Full spectrum of a Hermitian matrix (dim <= 8) by cyclic Jacobi rotations.
///
/// Rejects non-Hermitian input; failing to push the off-diagonal Frobenius
/// norm below [`JACOBI_OFF_TOL`] within [`JACOBI_MAX_SWEEPS`] sweeps is a hard
/// error rather than a silent partial result.
pub fn hermitian_eigensystem(h: &ComplexMatrix) -> Result<EigenSystem> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch {
            expected: h.rows(),
            got: h.cols(),
        });
    }
    let n = h.rows();
    if n > 8 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            got: n,
        });
    }
    let defect = h.hermiticity_defect();
    if defect > HERMITICITY_TOL {
        return Err(Error::NotHermitian { deviation: defect });
    }

    // symmetrise the working copy so roundoff in the input cannot drift
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);

    let off_norm = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = n < 2;
    let mut last_off = off_norm(&a);
    if last_off <= JACOBI_OFF_TOL {
        converged = true;
    }
    let mut sweeps = 0;
    while !converged {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::EigensolverDidNotConverge {
                sweeps,
                off_norm: last_off,
            });
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                // unitary rotation in the (p, q) plane annihilating a[p][q]
                let phase = apq / r;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let s_phase = phase * s;

                // rows p and q of R^dag A
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = apj * c - aqj * s_phase;
                    a[(q, j)] = apj * s_phase.conj() + aqj * c;
                }
                // columns p and q of (R^dag A) R, and accumulate V <- V R
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * c - aiq * s_phase.conj();
                    a[(i, q)] = aip * s_phase + aiq * c;

                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c - viq * s_phase.conj();
                    v[(i, q)] = vip * s_phase + viq * c;
                }
                a[(p, q)] = Complex64::ZERO;
                a[(q, p)] = Complex64::ZERO;
            }
        }
        sweeps += 1;
        last_off = off_norm(&a);
        converged = last_off <= JACOBI_OFF_TOL;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(EigenSystem { values, vectors })
}

/// Hermitian PSD square root via eigendecomposition. Eigenvalues in
/// [PSD_FLOOR, 0) are clamped to zero; anything below the floor is rejected.
pub fn psd_sqrt(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigensystem(h)?;
    let mut roots = Vec::with_capacity(eig.values.len());
    for &lambda in &eig.values {
        if lambda < PSD_FLOOR {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: lambda,
            });
        }
        roots.push(lambda.max(0.0).sqrt());
    }
    let n = roots.len();
    let v = &eig.vectors;
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n)
            .map(|k| v[(i, k)] * roots[k] * v[(j, k)].conj())
            .sum()
    }))
}

/// Quantum state of one, two or three spins: Hermitian, unit trace, PSD
/// (up to a small numerical floor), dimension 2, 4 or 8.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::DimensionMismatch {
                expected: mat.rows(),
                got: mat.cols(),
            });
        }
        let dim = mat.rows();
        if !matches!(dim, 2 | 4 | 8) {
            return Err(Error::InvalidStateDimension(dim));
        }
        mat.check_finite()?;
        let defect = mat.hermiticity_defect();
        if defect > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation: defect });
        }
        let trace = mat.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne { trace });
        }
        let eig = hermitian_eigensystem(&mat)?;
        if let Some(&min) = eig.values.first() {
            if min < PSD_FLOOR {
                return Err(Error::NotPositiveSemidefinite {
                    min_eigenvalue: min,
                });
            }
        }
        Ok(Self { dim, mat })
    }

    /// Projector onto a state vector; the amplitudes are normalised first.
    pub fn from_pure(amplitudes: &[Complex64]) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq <= 0.0 || !norm_sq.is_finite() {
            return Err(Error::NonFiniteEntry { row: 0, col: 0 });
        }
        let scale = 1.0 / norm_sq.sqrt();
        let v: Vec<Complex64> = amplitudes.iter().map(|z| z * scale).collect();
        Self::new(ComplexMatrix::outer(&v))
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if !matches!(dim, 2 | 4 | 8) {
            return Err(Error::InvalidStateDimension(dim));
        }
        Self::new(ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// tr(rho^2).
    pub fn purity(&self) -> f64 {
        self.mat.matmul(&self.mat).trace().re
    }
}

/// Trace out all spins not in `keep`, returning the reduced state on the kept
/// spins in ascending spin order. `keep` must be a non-empty proper subset.
pub fn partial_trace(rho: &DensityMatrix, keep: SpinSet) -> Result<DensityMatrix> {
    if rho.dim() != 8 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            got: rho.dim(),
        });
    }
    if keep.is_empty() || keep.len() == 3 {
        return Err(Error::InvalidKeepSet);
    }
    let kept: Vec<u8> = keep.spins().collect();
    let out_dim = 1usize << kept.len();
    // spin s occupies bit (3 - s) of the basis index
    let shift = |s: u8| 3 - s as usize;
    let traced_bits = |idx: usize| -> usize {
        (1..=3u8)
            .filter(|&s| !keep.contains(s))
            .fold(0, |acc, s| (acc << 1) | ((idx >> shift(s)) & 1))
    };
    let kept_bits = |idx: usize| -> usize {
        kept.iter()
            .fold(0, |acc, &s| (acc << 1) | ((idx >> shift(s)) & 1))
    };
    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for i in 0..8 {
        for j in 0..8 {
            if traced_bits(i) == traced_bits(j) {
                let z = rho.mat()[(i, j)];
                out[(kept_bits(i), kept_bits(j))] += z;
            }
        }
    }
    DensityMatrix::new(out)
}

/// -sum lambda log2 lambda over the spectrum, with 0 log 0 := 0. Bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let eig =
        hermitian_eigensystem(rho.mat()).expect("validated density matrix is Hermitian and small");
    // an eigenvalue of 1 + eps would otherwise push a pure state to -1e-16
    shannon_entropy(&eig.values).max(0.0)
}

/// Shannon entropy in bits of a (sub)normalised weight vector; negative
/// roundoff weights are ignored.
pub fn shannon_entropy(weights: &[f64]) -> f64 {
    weights
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

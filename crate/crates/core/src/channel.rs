//! The pure-dephasing channel on three spins: the eight-operator Kraus set
//! built from the decoherence factor, a reference Kraus-summation application,
//! and the equivalent coherence-scaling fast path.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{tensor_product, ComplexMatrix, DensityMatrix, HERMITICITY_TOL};
use crate::noise::DecoherenceFactor;

/// The eight Kraus operators, all real diagonal 8x8, in the fixed order
/// (111), (112), (121), (211), (122), (212), (221), (222) of single-spin
/// factor choices.
#[derive(Debug, Clone)]
pub struct KrausSet {
    ops: Vec<ComplexMatrix>,
}

/// Single-spin factor index pattern for each Kraus operator, 1-based.
const FACTOR_PATTERNS: [[u8; 3]; 8] = [
    [1, 1, 1],
    [1, 1, 2],
    [1, 2, 1],
    [2, 1, 1],
    [1, 2, 2],
    [2, 1, 2],
    [2, 2, 1],
    [2, 2, 2],
];

impl KrausSet {
    /// Wrap eight raw 8x8 operators. Shape is checked here; completeness is
    /// enforced where the set is applied.
    pub fn from_ops(ops: Vec<ComplexMatrix>) -> Result<Self> {
        if ops.len() != 8 {
            return Err(Error::DimensionMismatch {
                expected: 8,
                got: ops.len(),
            });
        }
        for op in &ops {
            if (op.rows(), op.cols()) != (8, 8) {
                return Err(Error::DimensionMismatch {
                    expected: 8,
                    got: op.rows(),
                });
            }
        }
        Ok(Self { ops })
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    /// Max-norm deviation of sum K^dag K from the identity.
    pub fn completeness_defect(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(8, 8);
        for k in &self.ops {
            sum = sum.add(&k.adjoint().matmul(k));
        }
        sum.max_abs_diff(&ComplexMatrix::identity(8))
    }
}

/// Build the Kraus set from the single-spin factors
/// F1 = diag(mu, 1) and F2 = diag(nu, 0).
pub fn build_kraus(f: &DecoherenceFactor) -> KrausSet {
    let f1 = ComplexMatrix::diagonal(&[f.mu(), 1.0]);
    let f2 = ComplexMatrix::diagonal(&[f.nu(), 0.0]);
    let pick = |which: u8| if which == 1 { &f1 } else { &f2 };
    let ops = FACTOR_PATTERNS
        .iter()
        .map(|p| tensor_product(&tensor_product(pick(p[0]), pick(p[1])), pick(p[2])))
        .collect();
    KrausSet { ops }
}

/// Apply the channel as the explicit Kraus sum  sum_i K_i rho K_i^dag.
/// Rejects Kraus sets whose completeness defect exceeds the Hermiticity
/// tolerance; the output satisfies all density-matrix invariants.
pub fn apply_channel(rho: &DensityMatrix, ks: &KrausSet) -> Result<DensityMatrix> {
    if rho.dim() != 8 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            got: rho.dim(),
        });
    }
    let defect = ks.completeness_defect();
    if defect > HERMITICITY_TOL {
        return Err(Error::KrausIncomplete { deviation: defect });
    }
    let mut out = ComplexMatrix::zeros(8, 8);
    for k in &ks.ops {
        out = out.add(&k.matmul(rho.mat()).matmul(&k.adjoint()));
    }
    DensityMatrix::new(out)
}

/// Fast path equivalent to [`apply_channel`]: each coherence `rho[a][b]` decays
/// by mu^h where h is the Hamming distance between the basis labels a and b.
pub fn dephase_coherences(rho: &DensityMatrix, f: &DecoherenceFactor) -> Result<DensityMatrix> {
    if rho.dim() != 8 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            got: rho.dim(),
        });
    }
    let mu_pow = [1.0, f.mu(), f.mu() * f.mu(), f.mu() * f.mu() * f.mu()];
    let out = ComplexMatrix::from_fn(8, 8, |i, j| {
        let h = (i ^ j).count_ones() as usize;
        rho.mat()[(i, j)] * Complex64::new(mu_pow[h], 0.0)
    });
    DensityMatrix::new(out)
}

//! Lower bound on genuine three-spin entanglement assembled from 18 bipartite
//! concurrence terms: six antisymmetric-generator rotations for each of the
//! three pair|single bipartitions.

use crate::error::{Error, Result};
use crate::matrix::{
    hermitian_eigensystem, permute_qubits, psd_sqrt, tensor_product, ComplexMatrix, DensityMatrix,
    PSD_FLOOR,
};

/// Grouping of two spins against the remaining one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bipartition {
    /// Spins 1 and 2 grouped, spin 3 single.
    OneTwoVsThree,
    /// Spins 1 and 3 grouped, spin 2 single.
    OneThreeVsTwo,
    /// Spins 2 and 3 grouped, spin 1 single.
    TwoThreeVsOne,
}

impl Bipartition {
    pub const ALL: [Bipartition; 3] = [
        Bipartition::OneTwoVsThree,
        Bipartition::OneThreeVsTwo,
        Bipartition::TwoThreeVsOne,
    ];

    pub fn pair(self) -> (u8, u8) {
        match self {
            Bipartition::OneTwoVsThree => (1, 2),
            Bipartition::OneThreeVsTwo => (1, 3),
            Bipartition::TwoThreeVsOne => (2, 3),
        }
    }

    pub fn single(self) -> u8 {
        match self {
            Bipartition::OneTwoVsThree => 3,
            Bipartition::OneThreeVsTwo => 2,
            Bipartition::TwoThreeVsOne => 1,
        }
    }

    /// For each canonical spin, the tensor factor holding it when the state
    /// is laid out as (pair spin a, pair spin b, single spin).
    fn source_factors(self) -> [usize; 3] {
        match self {
            Bipartition::OneTwoVsThree => [0, 1, 2],
            Bipartition::OneThreeVsTwo => [0, 2, 1],
            Bipartition::TwoThreeVsOne => [2, 0, 1],
        }
    }
}

/// The six antisymmetric generators E_mn - E_nm (1 <= m < n <= 4) of rotations
/// in four dimensions, in lexicographic (m, n) order.
pub fn so4_generators() -> [ComplexMatrix; 6] {
    let mut out: Vec<ComplexMatrix> = Vec::with_capacity(6);
    for m in 0..4 {
        for n in m + 1..4 {
            let mut l = ComplexMatrix::zeros(4, 4);
            l[(m, n)] = 1.0.into();
            l[(n, m)] = (-1.0).into();
            out.push(l);
        }
    }
    out.try_into().expect("exactly six generators")
}

/// The single antisymmetric generator of rotations in two dimensions.
pub fn so2_generator() -> ComplexMatrix {
    let mut l = ComplexMatrix::zeros(2, 2);
    l[(0, 1)] = 1.0.into();
    l[(1, 0)] = (-1.0).into();
    l
}

/// Real symmetric 8x8 rotation used to build the spin-flipped conjugate:
/// generator j on the grouped pair tensored with the two-dimensional
/// generator on the single spin, expressed in canonical spin order.
#[derive(Debug, Clone)]
pub struct RotationOperator {
    pub j: usize,
    pub bipartition: Bipartition,
    pub matrix: ComplexMatrix,
}

pub fn rotation_operator(j: usize, bipartition: Bipartition) -> Result<RotationOperator> {
    if !(1..=6).contains(&j) {
        return Err(Error::InvalidGeneratorIndex(j));
    }
    let grouped = tensor_product(&so4_generators()[j - 1], &so2_generator());
    let matrix = permute_qubits(&grouped, bipartition.source_factors());
    Ok(RotationOperator {
        j,
        bipartition,
        matrix,
    })
}

/// The at-most-four nonzero singular values of rho rho~, descending.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaSpectrum {
    pub values: [f64; 4],
}

/// Eigenvalues of the reduced product below this are roundoff images of
/// exact zeros; the square root would amplify them to ~1e-7-1e-9 and pollute
/// the concurrence differences, so they are flushed to zero first.
const RANK_NOISE_FLOOR: f64 = 1e-14;

/// Square roots of the nonzero eigenvalues of rho * (S rho^* S), descending.
///
/// S rho^* S is Hermitian PSD because S is real symmetric, so the non-Hermitian
/// product is reduced to the Hermitian matrix sqrt(rho~) rho sqrt(rho~) with
/// the same nonzero spectrum.
pub fn lambda_spectrum(
    rho: &DensityMatrix,
    j: usize,
    bipartition: Bipartition,
) -> Result<LambdaSpectrum> {
    if rho.dim() != 8 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            got: rho.dim(),
        });
    }
    let s = &rotation_operator(j, bipartition)?.matrix;
    let rho_tilde = s.matmul(&rho.mat().conjugate()).matmul(s);
    let root = psd_sqrt(&rho_tilde)?;
    let reduced = root.matmul(rho.mat()).matmul(&root);
    let eig = hermitian_eigensystem(&reduced)?;
    if let Some(&min) = eig.values.first() {
        if min < PSD_FLOOR {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: min,
            });
        }
    }
    let mut values = [0.0f64; 4];
    for (slot, lambda) in eig.values.iter().rev().take(4).enumerate() {
        values[slot] = if *lambda > RANK_NOISE_FLOOR {
            lambda.sqrt()
        } else {
            0.0
        };
    }
    Ok(LambdaSpectrum { values })
}

/// max(0, lambda_1 - lambda_2 - lambda_3 - lambda_4) for one rotation and
/// bipartition.
pub fn bipartite_concurrence(
    rho: &DensityMatrix,
    j: usize,
    bipartition: Bipartition,
) -> Result<f64> {
    let l = lambda_spectrum(rho, j, bipartition)?.values;
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// Entanglement lower bound: root-mean aggregate of all 18 bipartite terms,
/// sqrt(sum C^2 / 3).
pub fn tau3_lower_bound(rho: &DensityMatrix) -> Result<f64> {
    let mut sum_sq = 0.0;
    for bipartition in Bipartition::ALL {
        for j in 1..=6 {
            let c = bipartite_concurrence(rho, j, bipartition)?;
            sum_sq += c * c;
        }
    }
    Ok((sum_sq / 3.0).sqrt())
}

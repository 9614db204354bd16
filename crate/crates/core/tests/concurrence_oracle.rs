//! Brute-force cross-check of the entanglement bound: eigenvalues of the
//! non-Hermitian product rho * rho~ obtained from its characteristic
//! polynomial and polynomial root finding, with no shared code with the
//! Hermitian-reduction path under test.

use num_complex::Complex64;
use trispin_core::{
    dephase_coherences, ghz_state, lambda_spectrum, rotation_operator, tau3_lower_bound, w_state,
    Bipartition, ComplexMatrix, DecoherenceFactor, DensityMatrix,
};

/// Coefficients of det(lambda I - A) for an 8x8 matrix by the
/// Faddeev-LeVerrier recurrence; returns [a0, ..., a7] with
/// p(l) = l^8 + a7 l^7 + ... + a0.
fn characteristic_polynomial(a: &ComplexMatrix) -> [Complex64; 8] {
    let n = 8;
    let mut coeffs = [Complex64::ZERO; 8];
    let mut m = a.clone();
    for k in 1..=n {
        let c = -m.trace() / k as f64;
        coeffs[n - k] = c;
        if k < n {
            let shifted = m.add(&ComplexMatrix::identity(n).scale(c));
            m = a.matmul(&shifted);
        }
    }
    coeffs
}

/// Durand-Kerner iteration for a monic quartic.
fn quartic_roots(c: [Complex64; 4]) -> [Complex64; 4] {
    let p = |z: Complex64| (((z + c[3]) * z + c[2]) * z + c[1]) * z + c[0];
    let mut roots = [Complex64::ZERO; 4];
    let base = Complex64::new(0.4, 0.9);
    let mut power = Complex64::ONE;
    for r in roots.iter_mut() {
        power *= base;
        *r = power;
    }
    for _ in 0..300 {
        let mut worst_step = 0.0f64;
        for k in 0..4 {
            let mut denom = Complex64::ONE;
            for j in 0..4 {
                if j != k {
                    denom *= roots[k] - roots[j];
                }
            }
            let step = p(roots[k]) / denom;
            roots[k] -= step;
            worst_step = worst_step.max(step.norm());
        }
        if worst_step < 1e-15 {
            break;
        }
    }
    roots
}

/// Root-cluster radius of roundoff zeros; anything below is an exact zero of
/// the rank-deficient product.
const ZERO_CLUSTER: f64 = 1e-6;

/// The at-most-four nonzero eigenvalues of rho rho~ for one rotation and
/// bipartition, descending, straight from the characteristic polynomial.
fn oracle_eigenvalues(rho: &DensityMatrix, j: usize, bip: Bipartition) -> [f64; 4] {
    let s = &rotation_operator(j, bip).unwrap().matrix;
    let rho_tilde = s.matmul(&rho.mat().conjugate()).matmul(s);
    let product = rho.mat().matmul(&rho_tilde);
    let coeffs = characteristic_polynomial(&product);
    // rank <= 4 forces the four lowest coefficients to vanish, leaving the
    // quartic  l^4 + a7 l^3 + a6 l^2 + a5 l + a4
    for low in &coeffs[..4] {
        assert!(low.norm() < 1e-10, "rank-4 support violated: {low}");
    }
    let mut eigs: Vec<f64> = quartic_roots([coeffs[4], coeffs[5], coeffs[6], coeffs[7]])
        .into_iter()
        .map(|z| if z.norm() < ZERO_CLUSTER { 0.0 } else { z.re })
        .collect();
    eigs.sort_by(|a, b| b.total_cmp(a));
    [eigs[0], eigs[1], eigs[2], eigs[3]]
}

fn oracle_tau3(rho: &DensityMatrix) -> f64 {
    let mut sum_sq = 0.0;
    for bip in Bipartition::ALL {
        for j in 1..=6 {
            let lam = oracle_eigenvalues(rho, j, bip).map(|e| e.max(0.0).sqrt());
            let c = (lam[0] - lam[1] - lam[2] - lam[3]).max(0.0);
            sum_sq += c * c;
        }
    }
    (sum_sq / 3.0).sqrt()
}

fn random_state(seed: &mut u64) -> DensityMatrix {
    let mut next = || {
        *seed = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((*seed >> 11) as f64 / (1u64 << 53) as f64) - 0.5
    };
    let g = ComplexMatrix::from_fn(8, 8, |_, _| Complex64::new(next(), next()));
    let psd = g.matmul(&g.adjoint());
    let tr = psd.trace().re;
    DensityMatrix::new(psd.scale(Complex64::new(1.0 / tr, 0.0))).unwrap()
}

#[test]
fn golden_constants_from_the_oracle() {
    // the initial-state bounds are not tabulated anywhere; these are the
    // frozen values and the oracle reproduces them
    let tau_ghz = oracle_tau3(&ghz_state());
    assert!((tau_ghz - 1.0).abs() < 1e-10, "oracle GHZ bound {tau_ghz}");
    let tau_w = oracle_tau3(&w_state());
    let expected_w = (5.0f64 / 6.0).sqrt();
    assert!((tau_w - expected_w).abs() < 1e-10, "oracle W bound {tau_w}");

    // and the implementation agrees with the oracle
    assert!((tau3_lower_bound(&ghz_state()).unwrap() - tau_ghz).abs() < 1e-10);
    assert!((tau3_lower_bound(&w_state()).unwrap() - tau_w).abs() < 1e-10);
}

#[test]
fn oracle_confirms_scaling_laws() {
    for mu in [0.25, 0.5, 0.75] {
        let f = DecoherenceFactor::from_mu(mu).unwrap();
        let ghz = oracle_tau3(&dephase_coherences(&ghz_state(), &f).unwrap());
        assert!((ghz - mu.powi(3)).abs() < 1e-9, "mu={mu}: {ghz}");
        let w = oracle_tau3(&dephase_coherences(&w_state(), &f).unwrap());
        assert!(
            (w - mu.powi(2) * (5.0f64 / 6.0).sqrt()).abs() < 1e-9,
            "mu={mu}: {w}"
        );
    }
}

#[test]
fn hermitian_reduction_matches_oracle_on_random_states() {
    let mut seed = 2024u64;
    for case in 0..20 {
        let rho = random_state(&mut seed);
        for bip in Bipartition::ALL {
            for j in 1..=6 {
                let direct = oracle_eigenvalues(&rho, j, bip);
                let reduced = lambda_spectrum(&rho, j, bip).unwrap().values.map(|l| l * l);
                for (a, b) in direct.iter().zip(&reduced) {
                    assert!(
                        (a - b).abs() <= 1e-9,
                        "case {case} {bip:?} j={j}: {direct:?} vs {reduced:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn oracle_and_implementation_agree_on_random_mixed_states() {
    let mut seed = 77u64;
    for _ in 0..10 {
        let rho = random_state(&mut seed);
        let a = oracle_tau3(&rho);
        let b = tau3_lower_bound(&rho).unwrap();
        assert!((a - b).abs() <= 1e-9, "oracle {a} vs implementation {b}");
    }
}

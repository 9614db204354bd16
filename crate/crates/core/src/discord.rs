//! Global quantum discord of a three-spin state: local von Neumann
//! measurement parametrization, measured states, the entropic objective and
//! its minimization over the six measurement angles.

use num_complex::Complex64;
use rayon::prelude::*;

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::matrix::{
    partial_trace, shannon_entropy, tensor_product, von_neumann_entropy, ComplexMatrix,
    DensityMatrix, SpinSet,
};
use crate::simplex::NelderMead;

/// Three polar angles in [0, pi) and three azimuthal angles in [0, 2pi),
/// one pair per spin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementAngles {
    pub theta: [f64; 3],
    pub phi: [f64; 3],
}

impl MeasurementAngles {
    pub fn new(theta: [f64; 3], phi: [f64; 3]) -> Self {
        let mut a = Self { theta, phi };
        for l in 0..3 {
            let (t, p) = canonicalize(a.theta[l], a.phi[l]);
            a.theta[l] = t;
            a.phi[l] = p;
        }
        a
    }

    /// The computational (sigma_z) basis on every spin.
    pub fn sigma_z() -> Self {
        Self {
            theta: [0.0; 3],
            phi: [0.0; 3],
        }
    }

    fn from_flat(x: &[f64]) -> Self {
        Self::new([x[0], x[1], x[2]], [x[3], x[4], x[5]])
    }

    fn flat(&self) -> [f64; 6] {
        [
            self.theta[0],
            self.theta[1],
            self.theta[2],
            self.phi[0],
            self.phi[1],
            self.phi[2],
        ]
    }
}

/// Wrap an unconstrained (theta, phi) pair onto theta in [0, pi),
/// phi in [0, 2pi), using that negating theta is the same measurement as
/// shifting phi by pi.
fn canonicalize(theta: f64, phi: f64) -> (f64, f64) {
    let mut t = theta.rem_euclid(2.0 * PI);
    let mut p = phi;
    if t >= PI {
        t = 2.0 * PI - t;
        p += PI;
    }
    if t == PI {
        // the projector pair at theta = pi is the sigma_z pair again
        t = 0.0;
    }
    (t, p.rem_euclid(2.0 * PI))
}

/// The two orthogonal rank-1 projectors of one local measurement direction.
#[derive(Debug, Clone)]
pub struct ProjectorPair {
    pub p1: ComplexMatrix,
    pub p2: ComplexMatrix,
}

/// Direction vector whose projector |u><u| carries cos^2(theta/2) in the
/// upper-left corner and e^{i phi} cos(theta/2) sin(theta/2) upper-right.
fn basis_vector(theta: f64, phi: f64) -> [Complex64; 2] {
    let (half_sin, half_cos) = (0.5 * theta).sin_cos();
    [
        Complex64::new(half_cos, 0.0),
        Complex64::from_polar(half_sin, -phi),
    ]
}

fn orthogonal_vector(theta: f64, phi: f64) -> [Complex64; 2] {
    let (half_sin, half_cos) = (0.5 * theta).sin_cos();
    [
        Complex64::new(half_sin, 0.0),
        -Complex64::from_polar(half_cos, -phi),
    ]
}

/// Projectors onto the measurement direction (theta, phi) and its orthogonal
/// complement; p1 + p2 = I and p1 p2 = 0 by construction.
pub fn projector_pair(theta: f64, phi: f64) -> ProjectorPair {
    ProjectorPair {
        p1: ComplexMatrix::outer(&basis_vector(theta, phi)),
        p2: ComplexMatrix::outer(&orthogonal_vector(theta, phi)),
    }
}

/// Fully dephase a three-spin state in the rotated product basis: the sum of
/// the eight projective outcomes Pi_m rho Pi_m.
pub fn measured_state(rho: &DensityMatrix, angles: &MeasurementAngles) -> Result<DensityMatrix> {
    if rho.dim() != 8 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            got: rho.dim(),
        });
    }
    let pairs: Vec<ProjectorPair> = (0..3)
        .map(|l| projector_pair(angles.theta[l], angles.phi[l]))
        .collect();
    let mut out = ComplexMatrix::zeros(8, 8);
    for m in 0..8usize {
        let local = |l: usize| {
            if (m >> (2 - l)) & 1 == 0 {
                &pairs[l].p1
            } else {
                &pairs[l].p2
            }
        };
        let projector = tensor_product(&tensor_product(local(0), local(1)), local(2));
        out = out.add(&projector.matmul(rho.mat()).matmul(&projector));
    }
    DensityMatrix::new(out)
}

/// Dephase a single-spin state along one measurement direction:
/// P1 rho P1 + P2 rho P2.
pub fn local_measured_state(rho: &DensityMatrix, theta: f64, phi: f64) -> Result<DensityMatrix> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: rho.dim(),
        });
    }
    let pair = projector_pair(theta, phi);
    let out = pair
        .p1
        .matmul(rho.mat())
        .matmul(&pair.p1)
        .add(&pair.p2.matmul(rho.mat()).matmul(&pair.p2));
    DensityMatrix::new(out)
}

/// Grid and refinement budget for the discord minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Coarse grid points per polar angle.
    pub theta_grid: usize,
    /// Coarse grid points per azimuthal angle.
    pub phi_grid: usize,
    /// Simplex iterations per refinement start.
    pub refine_iters: usize,
    /// Simplex value-spread stopping tolerance.
    pub refine_tol: f64,
    /// Number of best grid cells refined; the sigma_z candidate is always
    /// refined in addition.
    pub multistart: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            theta_grid: 6,
            phi_grid: 8,
            refine_iters: 400,
            refine_tol: 1e-10,
            multistart: 8,
        }
    }
}

impl OptimizerConfig {
    /// Cheaper budget for dense parameter sweeps.
    pub fn reduced() -> Self {
        Self {
            theta_grid: 4,
            phi_grid: 4,
            refine_iters: 400,
            refine_tol: 1e-10,
            multistart: 4,
        }
    }
}

/// Precomputed pieces of the objective for one fixed state.
struct Objective {
    rho: [[Complex64; 8]; 8],
    entropy_rho: f64,
    locals: [[[Complex64; 2]; 2]; 3],
    entropy_locals: [f64; 3],
}

impl Objective {
    fn new(rho: &DensityMatrix) -> Result<Self> {
        if rho.dim() != 8 {
            return Err(Error::DimensionMismatch {
                expected: 8,
                got: rho.dim(),
            });
        }
        let mut entries = [[Complex64::ZERO; 8]; 8];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = rho.mat()[(i, j)];
            }
        }
        let mut locals = [[[Complex64::ZERO; 2]; 2]; 3];
        let mut entropy_locals = [0.0; 3];
        for (l, local) in locals.iter_mut().enumerate() {
            let reduced = partial_trace(rho, SpinSet::new(&[l as u8 + 1]).unwrap())?;
            for (i, row) in local.iter_mut().enumerate() {
                for (j, entry) in row.iter_mut().enumerate() {
                    *entry = reduced.mat()[(i, j)];
                }
            }
            entropy_locals[l] = von_neumann_entropy(&reduced);
        }
        Ok(Self {
            rho: entries,
            entropy_rho: von_neumann_entropy(rho),
            locals,
            entropy_locals,
        })
    }

    /// The entropic cost of measuring along `x` = (theta_1..3, phi_1..3):
    /// S(measured) - S(rho) - sum_l [S(measured_l) - S(rho_l)].
    ///
    /// The measured state is diagonal in the rotated product basis, so its
    /// entropy is the Shannon entropy of the eight outcome probabilities.
    fn eval(&self, x: &[f64]) -> f64 {
        let mut u = [[[Complex64::ZERO; 2]; 2]; 3];
        for (l, pair) in u.iter_mut().enumerate() {
            pair[0] = basis_vector(x[l], x[3 + l]);
            pair[1] = orthogonal_vector(x[l], x[3 + l]);
        }

        let mut probs = [0.0f64; 8];
        let mut v = [Complex64::ZERO; 8];
        for (m, p) in probs.iter_mut().enumerate() {
            let (m1, m2, m3) = ((m >> 2) & 1, (m >> 1) & 1, m & 1);
            for (i, vi) in v.iter_mut().enumerate() {
                let (a, b, c) = ((i >> 2) & 1, (i >> 1) & 1, i & 1);
                *vi = u[0][m1][a] * u[1][m2][b] * u[2][m3][c];
            }
            let mut acc = Complex64::ZERO;
            for (vi, rho_row) in v.iter().zip(&self.rho) {
                let mut row = Complex64::ZERO;
                for (entry, vj) in rho_row.iter().zip(&v) {
                    row += entry * vj;
                }
                acc += vi.conj() * row;
            }
            *p = acc.re.max(0.0);
        }
        let mut value = shannon_entropy(&probs) - self.entropy_rho;

        for ((pair, m), s_local) in u.iter().zip(&self.locals).zip(&self.entropy_locals) {
            let u1 = pair[0];
            let q = (u1[0].conj() * (m[0][0] * u1[0] + m[0][1] * u1[1])
                + u1[1].conj() * (m[1][0] * u1[0] + m[1][1] * u1[1]))
                .re
                .clamp(0.0, 1.0);
            value -= shannon_entropy(&[q, 1.0 - q]) - s_local;
        }
        value
    }
}

/// The objective of the discord minimization at fixed angles (in bits);
/// never below the minimized discord.
pub fn gqd_objective(rho: &DensityMatrix, angles: &MeasurementAngles) -> Result<f64> {
    Ok(Objective::new(rho)?.eval(&angles.flat()))
}

/// Minimize the measurement objective over all six angles: a coarse product
/// grid, simplex refinement of the best `multistart` cells plus the sigma_z
/// candidate, deterministic tie-breaking by the smaller angle tuple.
pub fn global_discord(
    rho: &DensityMatrix,
    cfg: &OptimizerConfig,
) -> Result<(f64, MeasurementAngles)> {
    let objective = Objective::new(rho)?;

    let nt = cfg.theta_grid.max(1);
    let np = cfg.phi_grid.max(1);
    let thetas: Vec<f64> = (0..nt).map(|i| i as f64 * PI / nt as f64).collect();
    let phis: Vec<f64> = (0..np).map(|i| i as f64 * 2.0 * PI / np as f64).collect();

    let total = nt * nt * nt * np * np * np;
    // flattened index is lexicographic in (theta1, theta2, theta3, phi1, phi2, phi3)
    let cell = |idx: usize| -> [f64; 6] {
        let mut rem = idx;
        let p3 = rem % np;
        rem /= np;
        let p2 = rem % np;
        rem /= np;
        let p1 = rem % np;
        rem /= np;
        let t3 = rem % nt;
        rem /= nt;
        let t2 = rem % nt;
        let t1 = rem / nt;
        [
            thetas[t1], thetas[t2], thetas[t3], phis[p1], phis[p2], phis[p3],
        ]
    };

    let values: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|idx| objective.eval(&cell(idx)))
        .collect();

    let mut order: Vec<usize> = (0..total).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));

    let mut starts: Vec<[f64; 6]> = order
        .iter()
        .take(cfg.multistart.max(1))
        .map(|&idx| cell(idx))
        .collect();
    starts.push(MeasurementAngles::sigma_z().flat());

    let step = 0.5 * PI / nt.max(np) as f64;
    let refiner = NelderMead::new(cfg.refine_iters, cfg.refine_tol, step);
    let mut best: Option<(f64, MeasurementAngles)> = None;
    for start in &starts {
        let (value, point) = refiner.minimize(|x| objective.eval(x), start);
        let angles = MeasurementAngles::from_flat(&point);
        best = Some(match best {
            None => (value, angles),
            Some(current) => {
                if value < current.0
                    || (value == current.0 && flat_less(&angles.flat(), &current.1.flat()))
                {
                    (value, angles)
                } else {
                    current
                }
            }
        });
    }
    Ok(best.expect("at least the sigma_z start was refined"))
}

fn flat_less(a: &[f64; 6], b: &[f64; 6]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

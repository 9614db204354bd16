//! Ornstein-Uhlenbeck dephasing noise: exponential correlation function, the
//! closed-form decoherence factor in its exact / Markov / non-Markov forms,
//! and a Monte Carlo trajectory oracle that recovers the closed form from
//! ensemble-averaged stochastic phases.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Memory regime of the noise: `Exact` keeps the finite bandwidth, the other
/// two are its memoryless and memory-dominated limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Exact,
    Markov,
    NonMarkov,
}

/// Coupling strength, noise bandwidth and regime selector. All three spins
/// couple with the same strength and see independent noises.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParams {
    /// Coupling strength (inverse time).
    pub coupling: f64,
    /// Noise bandwidth (inverse time); ignored in the Markov regime.
    pub bandwidth: f64,
    pub regime: Regime,
}

impl NoiseParams {
    pub fn new(coupling: f64, bandwidth: f64, regime: Regime) -> Result<Self> {
        if coupling <= 0.0 || !coupling.is_finite() {
            return Err(Error::InvalidNoiseParameter {
                name: "coupling",
                value: coupling,
            });
        }
        if regime != Regime::Markov && (bandwidth <= 0.0 || !bandwidth.is_finite()) {
            return Err(Error::InvalidNoiseParameter {
                name: "bandwidth",
                value: bandwidth,
            });
        }
        Ok(Self {
            coupling,
            bandwidth,
            regime,
        })
    }

    pub fn markov(coupling: f64) -> Result<Self> {
        Self::new(coupling, 0.0, Regime::Markov)
    }

    /// Environment memory time 1/bandwidth.
    pub fn correlation_time(&self) -> f64 {
        1.0 / self.bandwidth
    }
}

/// Single-spin coherence damping at one instant: mu together with
/// nu = sqrt(1 - mu^2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoherenceFactor {
    mu: f64,
    nu: f64,
}

impl DecoherenceFactor {
    pub fn from_mu(mu: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&mu) {
            return Err(Error::MuOutOfRange(mu));
        }
        Ok(Self {
            mu,
            nu: (1.0 - mu * mu).max(0.0).sqrt(),
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }
}

/// Stationary frequency autocorrelation (coupling * bandwidth / 2) * exp(-bandwidth * |lag|).
pub fn correlation_beta(lag: f64, p: &NoiseParams) -> f64 {
    0.5 * p.coupling * p.bandwidth * (-p.bandwidth * lag.abs()).exp()
}

/// Decoherence factor at time t for the selected regime.
///
/// Exact:     exp[-(coupling/2) (t + (e^{-bandwidth t} - 1)/bandwidth)]
/// Markov:    exp[-coupling t / 2]
/// NonMarkov: exp[-bandwidth coupling t^2 / 4]
pub fn decoherence_mu(t: f64, p: &NoiseParams) -> Result<DecoherenceFactor> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::NegativeTime(t));
    }
    let mu = match p.regime {
        Regime::Exact => {
            // exp_m1 keeps the small-bandwidth*t cancellation stable
            let inner = t + f64::exp_m1(-p.bandwidth * t) / p.bandwidth;
            (-0.5 * p.coupling * inner).exp()
        }
        Regime::Markov => (-0.5 * p.coupling * t).exp(),
        Regime::NonMarkov => (-0.25 * p.bandwidth * p.coupling * t * t).exp(),
    };
    DecoherenceFactor::from_mu(mu.min(1.0))
}

/// Gaussian phase variance predicted by the correlation function,
/// coupling * (t + (e^{-bandwidth t} - 1)/bandwidth); mu = exp(-variance/2).
pub fn phase_variance(t: f64, p: &NoiseParams) -> f64 {
    p.coupling * (t + f64::exp_m1(-p.bandwidth * t) / p.bandwidth)
}

/// Double integral of the correlation function over [0, t]^2 by composite
/// Simpson quadrature on the smooth triangle (n inner and outer subintervals,
/// rounded up to even; stiff kernels with bandwidth * t >> 1 get extra nodes).
/// Independent check of [`phase_variance`].
pub fn phase_variance_quadrature(t: f64, p: &NoiseParams, n: usize) -> f64 {
    let n = n.max(2).max((32.0 * p.bandwidth * t).ceil() as usize);
    let n = n + n % 2;
    let simpson = |f: &dyn Fn(f64) -> f64, a: f64, b: f64| -> f64 {
        let h = (b - a) / n as f64;
        let mut acc = f(a) + f(b);
        for k in 1..n {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(a + k as f64 * h);
        }
        acc * h / 3.0
    };
    // integrand has a kink on the diagonal; integrate the lower triangle and double
    let outer = |s: f64| simpson(&|u: f64| correlation_beta(s - u, p), 0.0, s);
    2.0 * simpson(&outer, 0.0, t)
}

/// One sampled noise trajectory: uniform time grid, frequency samples from the
/// exact stationary AR(1) update, and the trapezoidal accumulated phase.
#[derive(Debug, Clone)]
pub struct OuTrajectory {
    pub times: Vec<f64>,
    pub omegas: Vec<f64>,
    pub phase: f64,
}

impl OuTrajectory {
    pub fn sample(p: &NoiseParams, t_final: f64, n_steps: usize, rng: &mut ChaCha8Rng) -> Self {
        let dt = t_final / n_steps as f64;
        let sigma = (0.5 * p.coupling * p.bandwidth).sqrt();
        let decay = (-p.bandwidth * dt).exp();
        let innovation = sigma * (1.0 - decay * decay).max(0.0).sqrt();

        let mut times = Vec::with_capacity(n_steps + 1);
        let mut omegas = Vec::with_capacity(n_steps + 1);
        let mut omega = sigma * sample_normal(rng);
        times.push(0.0);
        omegas.push(omega);
        let mut phase = 0.5 * omega * dt;
        for k in 1..=n_steps {
            omega = omega * decay + innovation * sample_normal(rng);
            times.push(k as f64 * dt);
            omegas.push(omega);
            phase += if k == n_steps {
                0.5 * omega * dt
            } else {
                omega * dt
            };
        }
        Self {
            times,
            omegas,
            phase,
        }
    }
}

fn sample_normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Trapezoidal phase of one trajectory without storing the path.
fn sample_phase(p: &NoiseParams, t_final: f64, n_steps: usize, rng: &mut ChaCha8Rng) -> f64 {
    let dt = t_final / n_steps as f64;
    let sigma = (0.5 * p.coupling * p.bandwidth).sqrt();
    let decay = (-p.bandwidth * dt).exp();
    let innovation = sigma * (1.0 - decay * decay).max(0.0).sqrt();

    let mut omega = sigma * sample_normal(rng);
    let mut phase = 0.5 * omega * dt;
    for k in 1..=n_steps {
        omega = omega * decay + innovation * sample_normal(rng);
        phase += if k == n_steps {
            0.5 * omega * dt
        } else {
            omega * dt
        };
    }
    phase
}

/// Monte Carlo estimate of the decoherence factor at time t: the ensemble
/// mean of cos(phase) over stationary trajectories (the imaginary part of the
/// averaged phase factor vanishes by symmetry), with its standard error.
///
/// Trajectory i draws from an independent substream of `seed`, so the result
/// is reproducible bit-for-bit regardless of thread count.
pub fn mc_dephasing_estimate(
    t: f64,
    p: &NoiseParams,
    n_traj: usize,
    n_steps: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if p.regime != Regime::Exact {
        return Err(Error::McRequiresExactRegime);
    }
    if t < 0.0 || !t.is_finite() {
        return Err(Error::NegativeTime(t));
    }
    if n_traj < 1000 {
        return Err(Error::McConfig("need at least 1000 trajectories"));
    }
    if n_steps < 100 {
        return Err(Error::McConfig("need at least 100 time steps"));
    }
    if t == 0.0 {
        return Ok((1.0, 0.0));
    }

    let params = *p;
    let samples: Vec<f64> = (0..n_traj)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            sample_phase(&params, t, n_steps, &mut rng).cos()
        })
        .collect();

    let mean = pairwise_sum(&samples) / n_traj as f64;
    let sq_dev: Vec<f64> = samples.iter().map(|x| (x - mean) * (x - mean)).collect();
    let var = pairwise_sum(&sq_dev) / (n_traj as f64 - 1.0);
    let std_error = (var / n_traj as f64).sqrt();
    Ok((mean, std_error))
}

/// Pairwise (cascade) summation; accurate and insensitive to input order.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_direct_values() {
        let p = NoiseParams::new(1.0, 2.0, Regime::Exact).unwrap();
        assert!((correlation_beta(0.0, &p) - 1.0).abs() < 1e-15);
        assert!(correlation_beta(1e6, &p) < 1e-300);
        for lag in [0.3, 1.7, 42.0] {
            assert_eq!(correlation_beta(lag, &p), correlation_beta(-lag, &p));
        }
    }

    #[test]
    fn mu_at_zero_is_one() {
        for regime in [Regime::Exact, Regime::Markov, Regime::NonMarkov] {
            let p = NoiseParams::new(1.0, 0.5, regime).unwrap();
            let f = decoherence_mu(0.0, &p).unwrap();
            assert_eq!(f.mu(), 1.0);
            assert_eq!(f.nu(), 0.0);
        }
    }

    #[test]
    fn mu_markov_direct() {
        let p = NoiseParams::markov(1.0).unwrap();
        let f = decoherence_mu(2.0, &p).unwrap();
        assert!((f.mu() - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn mu_exact_matches_scalar_oracle() {
        // high-precision evaluation of the closed form at coupling 1,
        // bandwidth 0.01, t = 10
        let p = NoiseParams::new(1.0, 0.01, Regime::Exact).unwrap();
        let f = decoherence_mu(10.0, &p).unwrap();
        assert!((f.mu() - 0.785_157_533_435_127_6).abs() < 1e-13);
    }

    #[test]
    fn mu_rejects_negative_time() {
        let p = NoiseParams::markov(1.0).unwrap();
        assert!(matches!(
            decoherence_mu(-0.1, &p),
            Err(Error::NegativeTime(_))
        ));
    }

    #[test]
    fn mu_nu_circle_identity() {
        let p = NoiseParams::new(0.7, 0.3, Regime::Exact).unwrap();
        for t in [0.0, 0.1, 1.0, 7.5, 60.0] {
            let f = decoherence_mu(t, &p).unwrap();
            assert!((f.mu() * f.mu() + f.nu() * f.nu() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn mu_monotone_in_time() {
        for regime in [Regime::Exact, Regime::Markov, Regime::NonMarkov] {
            let p = NoiseParams::new(1.3, 0.2, regime).unwrap();
            let mut last = f64::INFINITY;
            for k in 0..1000 {
                let t = k as f64 * 0.02;
                let mu = decoherence_mu(t, &p).unwrap().mu();
                assert!(mu <= last + 1e-15, "mu increased at t={t} in {regime:?}");
                last = mu;
            }
        }
    }

    #[test]
    fn regime_limits_bracket_exact() {
        // wide bandwidth: exact ~ Markov
        let exact = decoherence_mu(1.0, &NoiseParams::new(1.0, 100.0, Regime::Exact).unwrap())
            .unwrap()
            .mu();
        let markov = decoherence_mu(1.0, &NoiseParams::markov(1.0).unwrap())
            .unwrap()
            .mu();
        assert!((exact - markov).abs() <= 0.01);
        // narrow bandwidth: exact ~ non-Markov
        let exact = decoherence_mu(1.0, &NoiseParams::new(1.0, 0.01, Regime::Exact).unwrap())
            .unwrap()
            .mu();
        let nm = decoherence_mu(
            1.0,
            &NoiseParams::new(1.0, 0.01, Regime::NonMarkov).unwrap(),
        )
        .unwrap()
        .mu();
        assert!((exact - nm).abs() <= 0.01);
    }

    #[test]
    fn variance_quadrature_matches_closed_form() {
        for (coupling, bandwidth, t) in [(1.0, 0.01, 10.0), (1.0, 100.0, 1.0), (2.0, 1.0, 3.0)] {
            let p = NoiseParams::new(coupling, bandwidth, Regime::Exact).unwrap();
            let numeric = phase_variance_quadrature(t, &p, 1024);
            let exact = phase_variance(t, &p);
            assert!(
                (numeric - exact).abs() < 1e-8,
                "quadrature off by {:e} at ({coupling}, {bandwidth}, {t})",
                (numeric - exact).abs()
            );
            let mu = decoherence_mu(t, &p).unwrap().mu();
            assert!((mu - (-exact / 2.0).exp()).abs() < 1e-14);
        }
    }

    #[test]
    fn trajectory_grid_and_phase_consistency() {
        let p = NoiseParams::new(1.0, 0.5, Regime::Exact).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let traj = OuTrajectory::sample(&p, 4.0, 200, &mut rng);
        assert_eq!(traj.times.len(), 201);
        assert_eq!(traj.omegas.len(), 201);
        let dt = traj.times[1] - traj.times[0];
        for w in traj.times.windows(2) {
            assert!((w[1] - w[0] - dt).abs() < 1e-12);
        }
        // same substream gives the same phase through the lean path
        let mut rng2 = ChaCha8Rng::seed_from_u64(11);
        assert_eq!(traj.phase, sample_phase(&p, 4.0, 200, &mut rng2));
    }

    #[test]
    fn mc_rejects_limit_regimes_and_bad_config() {
        let markov = NoiseParams::markov(1.0).unwrap();
        assert!(matches!(
            mc_dephasing_estimate(1.0, &markov, 2000, 200, 1),
            Err(Error::McRequiresExactRegime)
        ));
        let p = NoiseParams::new(1.0, 0.5, Regime::Exact).unwrap();
        assert!(mc_dephasing_estimate(1.0, &p, 10, 200, 1).is_err());
        assert!(mc_dephasing_estimate(1.0, &p, 2000, 10, 1).is_err());
    }

    #[test]
    fn mc_time_zero_is_exact() {
        let p = NoiseParams::new(1.0, 0.5, Regime::Exact).unwrap();
        let (est, se) = mc_dephasing_estimate(0.0, &p, 2000, 200, 1).unwrap();
        assert_eq!(est, 1.0);
        assert_eq!(se, 0.0);
    }

    #[test]
    fn mc_deterministic_for_fixed_seed() {
        let p = NoiseParams::new(1.0, 0.5, Regime::Exact).unwrap();
        let a = mc_dephasing_estimate(1.0, &p, 2000, 200, 99).unwrap();
        let b = mc_dephasing_estimate(1.0, &p, 2000, 200, 99).unwrap();
        assert_eq!(a, b);
        let c = mc_dephasing_estimate(1.0, &p, 2000, 200, 100).unwrap();
        assert_ne!(a.0, c.0);
    }

    #[test]
    fn mc_converges_to_closed_form() {
        let p = NoiseParams::new(1.0, 0.5, Regime::Exact).unwrap();
        let expected = decoherence_mu(2.0, &p).unwrap().mu();
        let (est, se) = mc_dephasing_estimate(2.0, &p, 20_000, 400, 7).unwrap();
        assert!(
            (est - expected).abs() <= 3.0 * se,
            "estimate {est} vs {expected} (3 se = {})",
            3.0 * se
        );
    }

    #[test]
    fn pairwise_sum_is_order_insensitive() {
        let mut seed = 5u64;
        let mut next = || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let xs: Vec<f64> = (0..10_001).map(|_| next()).collect();
        let mut rev = xs.clone();
        rev.reverse();
        assert!((pairwise_sum(&xs) - pairwise_sum(&rev)).abs() < 1e-12);
    }
}

//! Canonical initial states (GHZ and W), their exactly-dephased density
//! matrices, and the closed-form correlation curves they obey.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, DensityMatrix};

/// The two inequivalent genuinely entangled three-spin initial states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Ghz,
    W,
}

impl Scenario {
    pub const ALL: [Scenario; 2] = [Scenario::Ghz, Scenario::W];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Ghz => "ghz",
            Scenario::W => "w",
        }
    }

    pub fn initial_state(self) -> DensityMatrix {
        match self {
            Scenario::Ghz => ghz_state(),
            Scenario::W => w_state(),
        }
    }

    pub fn evolved(self, mu: f64) -> Result<DensityMatrix> {
        match self {
            Scenario::Ghz => ghz_evolved(mu),
            Scenario::W => w_evolved(mu),
        }
    }

    /// Entanglement bound relative to its initial value: mu^3 for GHZ,
    /// mu^2 for W.
    pub fn tau3_ratio(self, mu: f64) -> Result<f64> {
        check_mu(mu)?;
        Ok(match self {
            Scenario::Ghz => mu.powi(3),
            Scenario::W => mu.powi(2),
        })
    }

    /// Closed-form global discord. For W the raw value starts at 3/2;
    /// `normalized` rescales so both scenarios start at 1.
    pub fn discord(self, mu: f64, normalized: bool) -> Result<f64> {
        check_mu(mu)?;
        Ok(match self {
            Scenario::Ghz => ghz_discord(mu.powi(3)),
            Scenario::W => {
                let raw = w_discord_raw(mu);
                if normalized {
                    raw / 1.5
                } else {
                    raw
                }
            }
        })
    }

    /// Closed-form von Neumann entropy of the evolved state; only the GHZ
    /// scenario carries one here.
    pub fn entropy(self, mu: f64) -> Result<Option<f64>> {
        check_mu(mu)?;
        Ok(match self {
            Scenario::Ghz => Some(1.0 - ghz_discord(mu.powi(3))),
            Scenario::W => None,
        })
    }
}

fn check_mu(mu: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::MuOutOfRange(mu));
    }
    Ok(())
}

/// (|000> + |111>)/sqrt(2) as a rank-1 projector.
pub fn ghz_state() -> DensityMatrix {
    let a = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut amps = [Complex64::ZERO; 8];
    amps[0] = a;
    amps[7] = a;
    DensityMatrix::from_pure(&amps).expect("GHZ amplitudes are normalised")
}

/// (|100> + |010> + sqrt(2)|001>)/2 as a rank-1 projector.
pub fn w_state() -> DensityMatrix {
    let mut amps = [Complex64::ZERO; 8];
    amps[4] = Complex64::new(0.5, 0.0);
    amps[2] = Complex64::new(0.5, 0.0);
    amps[1] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    DensityMatrix::from_pure(&amps).expect("W amplitudes are normalised")
}

/// Dephased GHZ state: populations 1/2 on |000> and |111>, coherence mu^3/2.
pub fn ghz_evolved(mu: f64) -> Result<DensityMatrix> {
    check_mu(mu)?;
    let mut m = ComplexMatrix::zeros(8, 8);
    m[(0, 0)] = Complex64::new(0.5, 0.0);
    m[(7, 7)] = Complex64::new(0.5, 0.0);
    let coh = Complex64::new(0.5 * mu.powi(3), 0.0);
    m[(0, 7)] = coh;
    m[(7, 0)] = coh;
    DensityMatrix::new(m)
}

/// Dephased W state: all coherences sit between labels at Hamming distance
/// two and decay as mu^2.
pub fn w_evolved(mu: f64) -> Result<DensityMatrix> {
    check_mu(mu)?;
    let m2 = mu * mu;
    let s2 = std::f64::consts::SQRT_2;
    let mut m = ComplexMatrix::zeros(8, 8);
    m[(1, 1)] = Complex64::new(0.5, 0.0);
    m[(2, 2)] = Complex64::new(0.25, 0.0);
    m[(4, 4)] = Complex64::new(0.25, 0.0);
    for (i, j, v) in [
        (1, 2, s2 * m2 / 4.0),
        (1, 4, s2 * m2 / 4.0),
        (2, 4, m2 / 4.0),
    ] {
        m[(i, j)] = Complex64::new(v, 0.0);
        m[(j, i)] = Complex64::new(v, 0.0);
    }
    DensityMatrix::new(m)
}

/// GHZ discord as a function of x = mu^3:
/// (1+x)/2 log2(1+x) + (1-x)/2 log2(1-x), with 0 log 0 := 0.
fn ghz_discord(x: f64) -> f64 {
    let term = |p: f64| if p > 0.0 { 0.5 * p * p.log2() } else { 0.0 };
    term(1.0 + x) + term(1.0 - x)
}

/// Raw closed-form W discord; equals 3/2 - S(rho_W) where the evolved W
/// spectrum is {(1-mu^2)/4, (3+mu^2 +- sqrt(1-2mu^2+17mu^4))/8}.
fn w_discord_raw(mu: f64) -> f64 {
    let m2 = mu * mu;
    let root = (1.0 - 2.0 * m2 + 17.0 * m2 * m2).sqrt();
    let lg = |p: f64| if p > 0.0 { p.log2() } else { 0.0 };
    -0.25 * (5.0 + m2)
        + 0.25 * (1.0 - m2) * lg(1.0 - m2)
        + 0.125
            * ((3.0 + m2 - root) * lg(3.0 + m2 - root) + (3.0 + m2 + root) * lg(3.0 + m2 + root))
}

/// Eigenvalues of the evolved W state, used by the entropy cross-checks.
pub fn w_evolved_spectrum(mu: f64) -> [f64; 3] {
    let m2 = mu * mu;
    let root = (1.0 - 2.0 * m2 + 17.0 * m2 * m2).sqrt();
    [
        (1.0 - m2) / 4.0,
        (3.0 + m2 - root) / 8.0,
        (3.0 + m2 + root) / 8.0,
    ]
}

/// All closed-form curves of one scenario at a given decoherence factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticCurves {
    pub tau3_ratio: f64,
    pub discord: f64,
    pub entropy: Option<f64>,
}

pub fn analytic_curves(scenario: Scenario, mu: f64, normalized: bool) -> Result<AnalyticCurves> {
    Ok(AnalyticCurves {
        tau3_ratio: scenario.tau3_ratio(mu)?,
        discord: scenario.discord(mu, normalized)?,
        entropy: scenario.entropy(mu)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{apply_channel, build_kraus};
    use crate::matrix::{partial_trace, von_neumann_entropy, SpinSet};
    use crate::noise::DecoherenceFactor;

    #[test]
    fn ghz_entries_and_purity() {
        let rho = ghz_state();
        for (i, j) in [(0, 0), (7, 7), (0, 7), (7, 0)] {
            assert!((rho.mat()[(i, j)].re - 0.5).abs() < 1e-15);
        }
        assert!((rho.purity() - 1.0).abs() < 1e-13);
        for s in 1..=3u8 {
            let red = partial_trace(&rho, SpinSet::new(&[s]).unwrap()).unwrap();
            assert!(
                red.mat()
                    .max_abs_diff(&ComplexMatrix::diagonal(&[0.5, 0.5]))
                    < 1e-14
            );
        }
    }

    #[test]
    fn w_entries_and_reductions() {
        let rho = w_state();
        assert!((rho.mat()[(1, 1)].re - 0.5).abs() < 1e-15);
        assert!((rho.mat()[(2, 2)].re - 0.25).abs() < 1e-15);
        assert!((rho.mat()[(4, 4)].re - 0.25).abs() < 1e-15);
        assert!((rho.purity() - 1.0).abs() < 1e-13);
        // spins 1 and 2 reduce to diag(3/4, 1/4); spin 3 carries the
        // sqrt(2)-weighted excitation and reduces to I/2
        for s in [1u8, 2] {
            let red = partial_trace(&rho, SpinSet::new(&[s]).unwrap()).unwrap();
            assert!(
                red.mat()
                    .max_abs_diff(&ComplexMatrix::diagonal(&[0.75, 0.25]))
                    < 1e-14
            );
        }
    }

    #[test]
    fn evolved_limits() {
        assert!(
            ghz_evolved(1.0)
                .unwrap()
                .mat()
                .max_abs_diff(ghz_state().mat())
                < 1e-14
        );
        assert!(w_evolved(1.0).unwrap().mat().max_abs_diff(w_state().mat()) < 1e-14);
        let dead = ghz_evolved(0.0).unwrap();
        assert!(dead.mat()[(0, 7)].norm() < 1e-15);
        assert!((ghz_evolved(0.5).unwrap().mat()[(0, 7)].re - 0.0625).abs() < 1e-15);
        assert!(ghz_evolved(1.5).is_err());
        assert!(w_evolved(-0.1).is_err());
    }

    #[test]
    fn evolved_matches_channel_for_fifty_mu() {
        for k in 0..=50 {
            let mu = k as f64 / 50.0;
            let ks = build_kraus(&DecoherenceFactor::from_mu(mu).unwrap());
            let ghz_num = apply_channel(&ghz_state(), &ks).unwrap();
            assert!(ghz_num.mat().max_abs_diff(ghz_evolved(mu).unwrap().mat()) <= 1e-12);
            let w_num = apply_channel(&w_state(), &ks).unwrap();
            assert!(w_num.mat().max_abs_diff(w_evolved(mu).unwrap().mat()) <= 1e-12);
        }
    }

    #[test]
    fn ghz_entropy_identity() {
        for k in 0..=50 {
            let mu = k as f64 / 50.0;
            let numeric = von_neumann_entropy(&ghz_evolved(mu).unwrap());
            let analytic = Scenario::Ghz.entropy(mu).unwrap().unwrap();
            assert!((numeric - analytic).abs() <= 1e-10, "mu={mu}");
        }
    }

    #[test]
    fn w_discord_is_three_halves_minus_entropy() {
        for k in 0..=50 {
            let mu = k as f64 / 50.0;
            let numeric = von_neumann_entropy(&w_evolved(mu).unwrap());
            let raw = Scenario::W.discord(mu, false).unwrap();
            assert!((raw - (1.5 - numeric)).abs() <= 1e-10, "mu={mu}");
            let spectral = crate::matrix::shannon_entropy(&w_evolved_spectrum(mu));
            assert!((numeric - spectral).abs() <= 1e-10, "mu={mu}");
        }
    }

    #[test]
    fn curve_endpoints() {
        let ghz1 = analytic_curves(Scenario::Ghz, 1.0, true).unwrap();
        assert!((ghz1.discord - 1.0).abs() < 1e-14);
        assert!((ghz1.tau3_ratio - 1.0).abs() < 1e-15);
        assert!(ghz1.entropy.unwrap().abs() < 1e-14);

        let ghz0 = analytic_curves(Scenario::Ghz, 0.0, true).unwrap();
        assert_eq!(ghz0.discord, 0.0);
        assert_eq!(ghz0.tau3_ratio, 0.0);
        assert!((ghz0.entropy.unwrap() - 1.0).abs() < 1e-15);

        let w_raw = analytic_curves(Scenario::W, 1.0, false).unwrap();
        assert!((w_raw.discord - 1.5).abs() < 1e-12);
        let w_norm = analytic_curves(Scenario::W, 1.0, true).unwrap();
        assert!((w_norm.discord - 1.0).abs() < 1e-12);
        assert!(w_norm.entropy.is_none());
    }

    #[test]
    fn discord_values_match_scalar_oracle() {
        // frozen high-precision evaluations of the closed forms
        let cases_ghz = [
            (0.3f64, 0.000_525_926_253_316_895_9),
            (0.7, 0.086_613_516_204_325_75),
        ];
        for (mu, expected) in cases_ghz {
            assert!((Scenario::Ghz.discord(mu, false).unwrap() - expected).abs() < 1e-14);
        }
        let cases_w = [
            (0.3f64, 0.010_739_043_155_930_37),
            (0.7, 0.302_769_116_649_462_03),
        ];
        for (mu, expected) in cases_w {
            assert!((Scenario::W.discord(mu, false).unwrap() - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn ghz_correlations_decay_faster_than_w() {
        for k in 1..200 {
            let mu = k as f64 / 200.0;
            let ghz = analytic_curves(Scenario::Ghz, mu, true).unwrap();
            let w = analytic_curves(Scenario::W, mu, true).unwrap();
            // entanglement survives at least as long as discord for GHZ
            assert!(ghz.discord <= ghz.tau3_ratio + 1e-12, "mu={mu}");
            // the quadratic W curves dominate the cubic GHZ curves
            assert!(w.tau3_ratio >= ghz.tau3_ratio - 1e-12);
            assert!(w.discord >= ghz.discord - 1e-12);
        }
    }
}

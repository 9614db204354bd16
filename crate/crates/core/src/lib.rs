//! Numerical library for three correlated spins dephasing under local
//! Ornstein-Uhlenbeck classical noise.
//!
//! The pieces, bottom up:
//!
//! * [`matrix`]: dense complex kernel: tensor products, partial trace,
//!   a cyclic-Jacobi Hermitian eigensolver, PSD square root, entropy.
//! * [`noise`]: the OU noise model: correlation function, closed-form
//!   decoherence factor in three regimes, and a Monte Carlo trajectory
//!   oracle that recovers it from ensemble-averaged stochastic phases.
//! * [`channel`]: the eight-operator dephasing Kraus set and its
//!   coherence-scaling fast path.
//! * [`concurrence`]: a computable lower bound on genuine three-spin
//!   entanglement from 18 rotated bipartite concurrence terms.
//! * [`discord`]: global quantum discord via minimization over local
//!   von Neumann measurement angles.
//! * [`scenarios`]: GHZ and W initial states, their exactly dephased
//!   density matrices, and every closed-form correlation curve they obey.

pub mod channel;
pub mod concurrence;
pub mod discord;
pub mod error;
pub mod matrix;
pub mod noise;
pub mod scenarios;
pub mod simplex;

pub use channel::{apply_channel, build_kraus, dephase_coherences, KrausSet};
pub use concurrence::{
    bipartite_concurrence, lambda_spectrum, rotation_operator, so2_generator, so4_generators,
    tau3_lower_bound, Bipartition, LambdaSpectrum, RotationOperator,
};
pub use discord::{
    global_discord, gqd_objective, local_measured_state, measured_state, projector_pair,
    MeasurementAngles, OptimizerConfig, ProjectorPair,
};
pub use error::{Error, Result};
pub use matrix::{
    hermitian_eigensystem, partial_trace, permute_qubits, psd_sqrt, shannon_entropy,
    tensor_product, von_neumann_entropy, ComplexMatrix, DensityMatrix, EigenSystem, SpinSet,
};
pub use noise::{
    correlation_beta, decoherence_mu, mc_dephasing_estimate, pairwise_sum, phase_variance,
    phase_variance_quadrature, DecoherenceFactor, NoiseParams, OuTrajectory, Regime,
};
pub use scenarios::{
    analytic_curves, ghz_evolved, ghz_state, w_evolved, w_evolved_spectrum, w_state,
    AnalyticCurves, Scenario,
};

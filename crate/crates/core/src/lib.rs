//! Uniform sampling of binary matrices with fixed row and column sums and
//! forbidden entries, by switch, edge-switch, Curveball and k-Curveball
//! Markov chains, with exact spectral analysis of small instances.

pub mod error;
pub mod instance;
pub mod io;
pub mod matrix;
pub mod mixing;
pub mod rational;
pub mod realize;
pub mod rng;
pub mod samplers;
pub mod spectral;
pub mod statespace;

pub use error::{Error, Result};
pub use instance::{instances, MarginSpec};
pub use matrix::{BinaryMatrix, RowPairStats, Switch};
pub use mixing::{
    check_mixing_bounds, distribution_at, empirical_distribution, mixing_time, tv_distance, EmpiricalReport,
    MixingReport,
};
pub use rational::{Rational, SmallRatio};
pub use realize::find_state;
pub use rng::RngStream;
pub use samplers::{run_chain, run_chain_with, step, ChainKind, ChainRun, ChainSpec};
pub use spectral::{build_transition, spectral_report, Spectrum, TransitionMatrix};
pub use statespace::{enumerate_states, StateSpace, DEFAULT_MAX_STATES};

/// Library version, carried in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

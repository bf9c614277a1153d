//! Dense state-vector verification engine.
//!
//! Everything here is generic over the amplitude scalar; `f64` is the usual
//! choice (see the crate-level aliases). Registers follow the layouts
//! produced by [`crate::synth`].

mod catalysis;
mod catalyst;
mod io;
mod prep;
mod state;
mod unitaries;

pub use catalysis::{verify_catalysis, CatalysisMode, CatalysisReport};
pub use catalyst::{build_catalyst, catalyst_state, CatalystSpec};
pub use io::{read_state, write_state, STATE_MAGIC, STATE_VERSION};
pub use prep::{
    clone_catalyst, coprime_retry_stats, frobenius_shift, qpe_prepare, CloneResult, QpeExperiment, QpeOutcome,
    QpeShot, RetryStats,
};
pub use state::{apply, StateVector, MAX_QUBITS};
pub use unitaries::{apply_frobenius, apply_phase_dlog, apply_uf, apply_umul, apply_umul_inverse, Direction};

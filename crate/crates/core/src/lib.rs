//! Constant Toffoli-depth catalytic z-rotations.
//!
//! A primitive polynomial `f` of degree `n` over F2 gives a companion matrix
//! `C_f` of order `2^n - 1`. The permutation unitary `U_f |z> = |C_f z>` is a
//! Clifford whose controlled version has Toffoli depth 3, and its eigenstates
//! `psi_k` carry eigenphases `2 pi k / (2^n - 1)`. Phase kickback against
//! `psi_k` therefore rotates a control qubit by that angle while returning
//! the catalyst untouched.
//!
//! The crate is split into:
//!
//! * [`gf2n`]: field arithmetic, primitive-polynomial search and F2 matrices,
//! * [`circuit`]: a small gate-level IR with Toffoli/Clifford depth metrics,
//! * [`synth`]: the circuit constructions and resource reports,
//! * [`sim`]: a dense state-vector engine used to verify the constructions.
//!
//! Simulation code is generic over the real scalar type; the aliases below
//! fix the common choices.

pub mod circuit;
pub mod error;
pub mod gf2n;
pub mod scalar;
pub mod sim;
pub mod synth;

pub use error::{Error, Result};
pub use scalar::Real;

/// Double-precision state vector, the default for verification.
pub type State = sim::StateVector<f64>;
/// Single-precision state vector.
pub type State32 = sim::StateVector<f32>;
/// Double-precision complex amplitude.
pub type Complex64 = num_complex::Complex<f64>;
/// Exact rational used for totient ratios.
pub type Ratio = num_rational::Ratio<u128>;
/// Catalysis report with double-precision fields.
pub type CatalysisReport64 = sim::CatalysisReport<f64>;

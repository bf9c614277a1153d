//! Circuit constructions for the catalytic rotation.
//!
//! `U_f = S . CX_{n-1 -> Q_f}`: a CX fan from catalyst qubit `n-1` onto the
//! targets `Q_f`, then the cyclic shift `S` realized as two reversal layers
//! of SWAPs. Its controlled version fans the control out to `n` copies so
//! that the CX fan becomes one CCX layer and each reversal becomes one
//! CSWAP layer, giving Toffoli depth 3.

mod blocks;
mod kickback;
mod resources;

use serde::Serialize;

pub use blocks::{
    build_controlled_uf, build_controlled_uf_with, build_uf, build_variable_rotation,
    ControlledOptions, ShiftStrategy,
};
pub use kickback::{approximate_angle, select_kickbacks, KickbackPlan};
pub use resources::{estimate_resources, kappa_toffoli_depth};

use crate::circuit::{depth_metrics, expand_cswap, Circuit, Layout};
use crate::Result;

/// Register names shared by the builders, the simulator and the CLI.
pub mod reg {
    pub const CONTROL: &str = "control";
    pub const CONTROL_FANOUT: &str = "control_fanout";
    pub const CATALYST: &str = "catalyst";
    pub const QF_FANOUT: &str = "qf_fanout";
    pub const SHIFT_ANCILLA: &str = "shift_ancilla";

    /// Per-block register name in the variable-angle layout, e.g. `catalyst[2]`.
    pub fn indexed(base: &str, t: usize) -> String {
        format!("{base}[{t}]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResourceReport {
    pub n: u32,
    pub toffoli_count: usize,
    pub toffoli_depth: usize,
    pub clifford_depth: usize,
    pub qubits_total: usize,
    pub ancillas: usize,
    pub kappa: Option<u64>,
}

impl ResourceReport {
    /// Measures `c` after CSWAP expansion. `data_qubits` counts control and
    /// catalyst qubits; the rest are ancillas.
    pub(crate) fn measure(c: &Circuit, n: u32, data_qubits: usize, kappa: Option<u64>) -> Result<Self> {
        let m = depth_metrics(&expand_cswap(c))?;
        Ok(ResourceReport {
            n,
            toffoli_count: m.toffoli_count(),
            toffoli_depth: m.toffoli_depth,
            clifford_depth: m.clifford_depth,
            qubits_total: c.num_qubits,
            ancillas: c.num_qubits - data_qubits,
            kappa,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisResult {
    pub circuit: Circuit,
    pub report: ResourceReport,
}

impl SynthesisResult {
    pub fn layout(&self) -> &Layout {
        &self.circuit.layout
    }
}

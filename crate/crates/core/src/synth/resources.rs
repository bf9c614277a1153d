use super::{build_controlled_uf, build_controlled_uf_with, ControlledOptions, ResourceReport, ShiftStrategy};
use crate::gf2n::FieldPoly;
use crate::{Error, Result};

/// `2 ceil((n-1)/(kappa-1)) + ceil(4/kappa)` Toffoli layers when at most
/// `kappa` Toffolis may run at once.
pub fn kappa_toffoli_depth(n: u32, kappa: u64) -> Result<u64> {
    if kappa < 2 {
        return Err(Error::InvalidKappa(kappa));
    }
    let n = u64::from(n);
    Ok(2 * (n - 1).div_ceil(kappa - 1) + 4u64.div_ceil(kappa))
}

/// Resource report for controlled-`U_f`.
///
/// With `kappa`, counts and qubits come from the circuit built with
/// `min(kappa, n)` control copies, and the Toffoli depth is the closed-form
/// bound above. The built circuit never exceeds that bound.
pub fn estimate_resources(f: &FieldPoly, kappa: Option<u64>) -> Result<ResourceReport> {
    let Some(k) = kappa else {
        return Ok(build_controlled_uf(f).report);
    };
    let built = build_controlled_uf_with(f, ControlledOptions { shift: ShiftStrategy::Reversal, kappa: Some(k) })?;
    let depth = kappa_toffoli_depth(f.degree(), k)?;
    Ok(ResourceReport { toffoli_depth: depth as usize, ..built.report })
}

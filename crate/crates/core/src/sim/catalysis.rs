use std::ops::Range;

use num_complex::Complex;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::catalyst::{catalyst_state, root_of_unity};
use super::state::{check_cap, StateVector};
use crate::circuit::Circuit;
use crate::gf2n::FieldPoly;
use crate::synth::{build_controlled_uf, build_variable_rotation, reg, KickbackPlan};
use crate::{Error, Real, Result};

/// Amplitude mass allowed on ancilla-excited basis states.
const ANCILLA_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalysisMode {
    /// One controlled-`U_f` against `psi_k`.
    Fixed { k: u64 },
    /// The kickback network for `plan`, with `catalyst[t]` holding
    /// `psi_{a 2^t}` for every `t < n`.
    Variable { plan: KickbackPlan, parallel: bool },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalysisReport<T: Real> {
    pub measured_phase: Complex<T>,
    pub expected_phase: Complex<T>,
    pub phase_error: T,
    pub catalyst_fidelity: T,
    pub ancilla_restored: bool,
}

impl<T: Real> CatalysisReport<T> {
    pub fn within(&self, tolerance: f64) -> bool {
        self.ancilla_restored
            && self.phase_error.to_f64_lossy() < tolerance
            && self.catalyst_fidelity.to_f64_lossy() > 1.0 - tolerance
    }
}

struct Unit<T>(Complex<T>);

impl<T: Real> Serialize for Unit<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Complex", 2)?;
        st.serialize_field("re", &self.0.re.to_f64_lossy())?;
        st.serialize_field("im", &self.0.im.to_f64_lossy())?;
        st.end()
    }
}

impl<T: Real> Serialize for CatalysisReport<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CatalysisReport", 5)?;
        st.serialize_field("measured_phase", &Unit(self.measured_phase))?;
        st.serialize_field("expected_phase", &Unit(self.expected_phase))?;
        st.serialize_field("phase_error", &self.phase_error.to_f64_lossy())?;
        st.serialize_field("catalyst_fidelity", &self.catalyst_fidelity.to_f64_lossy())?;
        st.serialize_field("ancilla_restored", &self.ancilla_restored)?;
        st.end()
    }
}

/// Product of register states, every other qubit in `|0>`.
fn embed<T: Real>(num_qubits: usize, parts: &[(usize, &StateVector<T>)]) -> Result<StateVector<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let mut amps = vec![zero; 1usize << num_qubits];
    let mut partial: Vec<(usize, Complex<T>)> = vec![(0, Complex::new(T::one(), T::zero()))];
    for &(start, s) in parts {
        let mut next = Vec::with_capacity(partial.len() * s.dim());
        for &(idx, amp) in &partial {
            for (z, a) in s.amps().iter().enumerate() {
                if *a != zero {
                    next.push((idx | z << start, amp * a));
                }
            }
        }
        partial = next;
    }
    for (idx, amp) in partial {
        amps[idx] = amp;
    }
    StateVector::from_amplitudes(amps)
}

struct Setup<T: Real> {
    circuit: Circuit,
    catalysts: Vec<(Range<usize>, StateVector<T>)>,
    expected: Complex<T>,
}

fn setup<T: Real>(f: &FieldPoly, mode: &CatalysisMode) -> Result<Setup<T>> {
    let modulus = f.group_order();
    match mode {
        CatalysisMode::Fixed { k } => {
            let psi = catalyst_state(f, *k)?;
            let synth = build_controlled_uf(f);
            check_cap(synth.circuit.num_qubits)?;
            let range = synth.layout().get(reg::CATALYST).expect("catalyst register");
            Ok(Setup {
                catalysts: vec![(range, psi)],
                circuit: synth.circuit,
                expected: root_of_unity(*k as i128, modulus),
            })
        }
        CatalysisMode::Variable { plan, parallel } => {
            let synth = build_variable_rotation(f, plan, *parallel)?;
            check_cap(synth.circuit.num_qubits)?;
            let mut catalysts = Vec::new();
            for t in 0..f.degree() as usize {
                let k = ((plan.a as u128 * (1u128 << t)) % modulus as u128) as u64;
                let range = synth.layout().get(&reg::indexed(reg::CATALYST, t)).expect("catalyst register");
                catalysts.push((range, catalyst_state(f, k)?));
            }
            Ok(Setup { catalysts, circuit: synth.circuit, expected: root_of_unity(plan.b as i128, modulus) })
        }
    }
}

/// Runs the rotation circuit on `(alpha|0> + beta|1>) (x) catalysts (x) |0..0>`
/// and checks the catalysis contract.
pub fn verify_catalysis<T: Real>(
    f: &FieldPoly,
    alpha: Complex<T>,
    beta: Complex<T>,
    mode: &CatalysisMode,
) -> Result<CatalysisReport<T>> {
    let norm = (alpha.norm_sqr() + beta.norm_sqr()).to_f64_lossy();
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Error::InvalidArgument(format!("|alpha|^2 + |beta|^2 = {norm}, expected 1")));
    }
    let setup = setup::<T>(f, mode)?;
    let q = setup.circuit.num_qubits;
    let control = |a: Complex<T>, b: Complex<T>| StateVector::from_amplitudes(vec![a, b]);
    let input = |ctl: &StateVector<T>| {
        let mut parts: Vec<(usize, &StateVector<T>)> = vec![(0, ctl)];
        parts.extend(setup.catalysts.iter().map(|(r, s)| (r.start, s)));
        embed(q, &parts)
    };
    let run = |ctl: StateVector<T>| -> Result<StateVector<T>> {
        let mut s = input(&ctl)?;
        s.apply_circuit(&setup.circuit)?;
        Ok(s)
    };
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let reference = [input(&control(one, zero)?)?, input(&control(zero, one)?)?];

    // each control branch is run on its own so the phase is not polluted by
    // dividing out alpha and beta; the superposed run checks the catalysts
    let out = run(control(alpha, beta)?)?;
    let c0 = reference[0].inner(&run(control(one, zero)?)?)?;
    let c1 = reference[1].inner(&run(control(zero, one)?)?)?;
    let ratio = if c0.norm().to_f64_lossy() > 1e-12 { c1 / c0 } else { zero };
    let measured_phase = if ratio.norm().to_f64_lossy() > 1e-12 { ratio / ratio.norm() } else { zero };

    let catalyst_fidelity = catalyst_overlap(&out, &setup.catalysts)?;
    let ancilla_mask = ancilla_mask(q, &setup.catalysts);
    let leaked = out
        .amps()
        .iter()
        .enumerate()
        .filter(|(i, _)| i & ancilla_mask != 0)
        .map(|(_, a)| a.norm_sqr().to_f64_lossy())
        .sum::<f64>();

    Ok(CatalysisReport {
        measured_phase,
        expected_phase: setup.expected,
        phase_error: (measured_phase - setup.expected).norm(),
        catalyst_fidelity,
        ancilla_restored: leaked < ANCILLA_TOLERANCE,
    })
}

fn register_mask(r: &Range<usize>) -> usize {
    r.clone().fold(0, |m, q| m | 1 << q)
}

/// Every qubit other than the control (qubit 0) and the catalysts.
fn ancilla_mask<T: Real>(q: usize, catalysts: &[(Range<usize>, StateVector<T>)]) -> usize {
    let cat: usize = catalysts.iter().map(|(r, _)| register_mask(r)).fold(0, |a, b| a | b);
    ((1usize << q) - 1) & !cat & !1
}

/// `<cat| rho_cat |cat>` for the reduced state of `out` on the catalyst
/// registers.
fn catalyst_overlap<T: Real>(out: &StateVector<T>, catalysts: &[(Range<usize>, StateVector<T>)]) -> Result<T> {
    let q = out.num_qubits();
    let cat_mask: usize = catalysts.iter().map(|(r, _)| register_mask(r)).fold(0, |a, b| a | b);
    let rest: Vec<usize> = (0..q).filter(|b| cat_mask >> b & 1 == 0).collect();
    let zero = Complex::new(T::zero(), T::zero());
    let mut acc = vec![zero; 1 << rest.len()];
    for (i, a) in out.amps().iter().enumerate() {
        if *a == zero {
            continue;
        }
        let mut weight = Complex::new(T::one(), T::zero());
        for (r, s) in catalysts {
            let z = (i >> r.start) & ((1 << r.len()) - 1);
            weight = weight * s.amps()[z].conj();
        }
        let key = rest.iter().enumerate().fold(0, |k, (pos, &b)| k | ((i >> b) & 1) << pos);
        acc[key] = acc[key] + weight * a;
    }
    Ok(acc.iter().map(|c| c.norm_sqr()).fold(T::zero(), |s, x| s + x))
}

use super::{reg, ResourceReport, SynthesisResult};
use crate::circuit::{Circuit, Gate, Layout};
use crate::gf2n::FieldPoly;
use crate::synth::KickbackPlan;
use crate::{Error, Result};

/// How the controlled cyclic shift is realized.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ShiftStrategy {
    /// `S = Rev_{1,n-1} . Rev_{0,n-1}`: two CSWAP layers, `n - 1` CSWAPs, no ancillas.
    #[default]
    Reversal,
    /// Park every catalyst qubit in a zeroed ancilla, then swap it into the
    /// next slot: two CSWAP layers, `2n` CSWAPs, `n` extra ancillas.
    Ancilla,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ControlledOptions {
    pub shift: ShiftStrategy,
    /// At most this many Toffolis per layer: the control is fanned out to
    /// `min(kappa, n)` copies, which serializes wider layers.
    pub kappa: Option<u64>,
}

/// Pairs swapped by a reversal of positions `lo..=hi`.
fn reversal_pairs(lo: usize, hi: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    let (mut a, mut b) = (lo, hi);
    while a < b {
        pairs.push((a, b));
        a += 1;
        b -= 1;
    }
    pairs
}

/// The two layers of the cyclic shift `e_j -> e_{j+1 mod n}`.
fn shift_layers(n: usize) -> [Vec<(usize, usize)>; 2] {
    [reversal_pairs(0, n - 1), reversal_pairs(1, n - 1)]
}

/// Uncontrolled `U_f` on `n` qubits (qubit `j` holds coefficient `c_j`).
pub fn build_uf(f: &FieldPoly) -> Circuit {
    let n = f.degree() as usize;
    let mut c = Circuit::new(n);
    c.layout.push(reg::CATALYST, 0..n);
    for &j in f.q_set() {
        c.push(Gate::cx(n - 1, j));
    }
    for layer in shift_layers(n) {
        c.extend(layer.into_iter().map(|(a, b)| Gate::swap(a, b)));
    }
    c
}

struct Block<'a> {
    controls: &'a [usize],
    catalyst: &'a [usize],
    catalyst_copies: &'a [usize],
    shift_ancillas: &'a [usize],
}

/// Controlled-`U_f` on one catalyst register, assuming `controls` already
/// hold copies of the control bit. Layers wider than `controls` reuse
/// copies round-robin.
fn emit_block(c: &mut Circuit, f: &FieldPoly, q: &Block<'_>, shift: ShiftStrategy) {
    let n = q.catalyst.len();
    let width = q.controls.len();
    let top = q.catalyst[n - 1];
    let mut sources = vec![top];
    sources.extend_from_slice(q.catalyst_copies);

    if !q.catalyst_copies.is_empty() {
        c.push(Gate::fanout(top, q.catalyst_copies));
    }
    for (i, &j) in f.q_set().iter().enumerate() {
        c.push(Gate::ccx(q.controls[i % width], sources[i % sources.len()], q.catalyst[j]));
    }
    if !q.catalyst_copies.is_empty() {
        c.push(Gate::unfanout(top, q.catalyst_copies));
    }

    match shift {
        ShiftStrategy::Reversal => {
            for layer in shift_layers(n) {
                for (i, (a, b)) in layer.into_iter().enumerate() {
                    c.push(Gate::cswap(q.controls[i % width], q.catalyst[a], q.catalyst[b]));
                }
            }
        }
        ShiftStrategy::Ancilla => {
            let anc = q.shift_ancillas;
            for x in 0..n {
                c.push(Gate::cswap(q.controls[x % width], q.catalyst[x], anc[x]));
            }
            for x in 0..n {
                c.push(Gate::cswap(q.controls[x % width], anc[x], q.catalyst[(x + 1) % n]));
            }
        }
    }
}

/// Allocates consecutive qubit ranges while recording them in a layout.
struct Allocator {
    next: usize,
    layout: Layout,
}

impl Allocator {
    fn new() -> Self {
        Allocator { next: 0, layout: Layout::new() }
    }

    fn take(&mut self, name: impl Into<String>, len: usize) -> Vec<usize> {
        let range = self.next..self.next + len;
        self.next += len;
        if len > 0 {
            self.layout.push(name, range.clone());
        }
        range.collect()
    }

    fn finish(self) -> Circuit {
        Circuit { num_qubits: self.next, gates: Vec::new(), layout: self.layout }
    }
}

/// Controlled-`U_f` with Toffoli depth 3 and `(n - 1) + |Q_f|` Toffolis.
///
/// Layout: `control` (1), `control_fanout` (n - 1), `catalyst` (n),
/// `qf_fanout` (|Q_f| - 1, only when |Q_f| > 1).
pub fn build_controlled_uf(f: &FieldPoly) -> SynthesisResult {
    build_controlled_uf_with(f, ControlledOptions::default()).expect("default options are valid")
}

pub fn build_controlled_uf_with(f: &FieldPoly, opts: ControlledOptions) -> Result<SynthesisResult> {
    let n = f.degree() as usize;
    let copies = match opts.kappa {
        Some(k) if k < 2 => return Err(Error::InvalidKappa(k)),
        Some(k) => (k.min(n as u64)) as usize,
        None => n,
    };
    let q_len = f.q_set().len();
    let cat_copies = copies.min(q_len).saturating_sub(1);

    let mut alloc = Allocator::new();
    let control = alloc.take(reg::CONTROL, 1);
    let fanout = alloc.take(reg::CONTROL_FANOUT, copies - 1);
    let catalyst = alloc.take(reg::CATALYST, n);
    let qf = alloc.take(reg::QF_FANOUT, cat_copies);
    let shift_anc = match opts.shift {
        ShiftStrategy::Reversal => Vec::new(),
        ShiftStrategy::Ancilla => alloc.take(reg::SHIFT_ANCILLA, n),
    };
    let mut c = alloc.finish();

    let controls: Vec<usize> = control.iter().chain(&fanout).copied().collect();
    c.push(Gate::fanout(control[0], &fanout));
    emit_block(
        &mut c,
        f,
        &Block { controls: &controls, catalyst: &catalyst, catalyst_copies: &qf, shift_ancillas: &shift_anc },
        opts.shift,
    );
    c.push(Gate::unfanout(control[0], &fanout));

    let report = ResourceReport::measure(&c, f.degree(), 1 + n, opts.kappa)?;
    Ok(SynthesisResult { circuit: c, report })
}

/// Kickback network for a variable angle.
///
/// Catalyst register `catalyst[t]` (t in 0..n) is meant to hold
/// `psi_{a 2^t}`; a controlled-`U_f` block targets it for every `t` in
/// `plan.bits`. In parallel mode each block has private control copies and
/// catalyst fanout, so the Toffoli depth stays 3; otherwise the blocks share
/// ancillas and run one after another.
pub fn build_variable_rotation(f: &FieldPoly, plan: &KickbackPlan, parallel: bool) -> Result<SynthesisResult> {
    plan.check_for(f)?;
    let n = f.degree() as usize;
    let bits: Vec<usize> = plan.bits.iter().map(|&t| t as usize).collect();
    let blocks = bits.len();
    let q_len = f.q_set().len();

    let mut alloc = Allocator::new();
    let control = alloc.take(reg::CONTROL, 1);
    let fanout_len = match (blocks, parallel) {
        (0, _) => 0,
        (_, true) => n * blocks - 1,
        (_, false) => n - 1,
    };
    let fanout = alloc.take(reg::CONTROL_FANOUT, fanout_len);
    let catalysts: Vec<Vec<usize>> =
        (0..n).map(|t| alloc.take(reg::indexed(reg::CATALYST, t), n)).collect();
    let qf: Vec<Vec<usize>> = if parallel {
        bits.iter().map(|&t| alloc.take(reg::indexed(reg::QF_FANOUT, t), q_len - 1)).collect()
    } else {
        let shared = alloc.take(reg::QF_FANOUT, if blocks > 0 { q_len - 1 } else { 0 });
        vec![shared; blocks]
    };
    let mut c = alloc.finish();

    if blocks > 0 {
        let controls: Vec<usize> = control.iter().chain(&fanout).copied().collect();
        c.push(Gate::fanout(control[0], &fanout));
        for (i, &t) in bits.iter().enumerate() {
            let ctl = if parallel { &controls[i * n..(i + 1) * n] } else { &controls[..] };
            let block = Block { controls: ctl, catalyst: &catalysts[t], catalyst_copies: &qf[i], shift_ancillas: &[] };
            emit_block(&mut c, f, &block, ShiftStrategy::Reversal);
        }
        c.push(Gate::unfanout(control[0], &fanout));
    }

    let report = ResourceReport::measure(&c, f.degree(), 1 + n * n, None)?;
    Ok(SynthesisResult { circuit: c, report })
}

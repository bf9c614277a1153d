use std::collections::BTreeMap;

use serde::Serialize;

use super::{lower_fanout, Circuit, GateKind};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    /// ASAP depth with every gate (FANOUT included) one layer deep.
    pub total_depth: usize,
    /// Toffoli layers: Clifford gates are free, each CCX/CSWAP starts a new
    /// layer after the latest Toffoli layer any of its operands depends on.
    pub toffoli_depth: usize,
    /// Layers of the fanout-lowered circuit that contain only Clifford gates.
    pub clifford_depth: usize,
    pub gate_counts: BTreeMap<GateKind, usize>,
}

impl DepthReport {
    pub fn count(&self, kind: GateKind) -> usize {
        self.gate_counts.get(&kind).copied().unwrap_or(0)
    }

    pub fn toffoli_count(&self) -> usize {
        self.count(GateKind::Ccx) + self.count(GateKind::Cswap)
    }
}

/// ASAP layer (0-based) of every gate, and the resulting depth.
fn asap_layers(c: &Circuit) -> (Vec<usize>, usize) {
    let mut front = vec![0usize; c.num_qubits];
    let mut layers = Vec::with_capacity(c.gates.len());
    let mut depth = 0;
    for g in &c.gates {
        let layer = g.qubits.iter().map(|&q| front[q]).max().unwrap_or(0);
        for &q in &g.qubits {
            front[q] = layer + 1;
        }
        depth = depth.max(layer + 1);
        layers.push(layer);
    }
    (layers, depth)
}

pub fn toffoli_count(c: &Circuit) -> usize {
    c.gates.iter().filter(|g| g.kind.is_toffoli()).count()
}

/// Number of Toffoli layers when Clifford gates take no Toffoli time.
pub fn toffoli_depth(c: &Circuit) -> usize {
    let mut level = vec![0usize; c.num_qubits];
    let mut depth = 0;
    for g in &c.gates {
        let mut l = g.qubits.iter().map(|&q| level[q]).max().unwrap_or(0);
        if g.kind.is_toffoli() {
            l += 1;
            depth = depth.max(l);
        }
        for &q in &g.qubits {
            level[q] = l;
        }
    }
    depth
}

pub fn depth_metrics(c: &Circuit) -> Result<DepthReport> {
    c.ensure_valid()?;
    let (_, total_depth) = asap_layers(c);

    let lowered = lower_fanout(c);
    let (layers, depth) = asap_layers(&lowered);
    let mut has_toffoli = vec![false; depth];
    for (g, &l) in lowered.gates.iter().zip(&layers) {
        has_toffoli[l] |= g.kind.is_toffoli();
    }
    let clifford_depth = has_toffoli.iter().filter(|&&t| !t).count();

    let mut gate_counts = BTreeMap::new();
    for g in &c.gates {
        *gate_counts.entry(g.kind).or_insert(0) += 1;
    }
    Ok(DepthReport { total_depth, toffoli_depth: toffoli_depth(c), clifford_depth, gate_counts })
}

/// Greedy list schedule of the Toffoli gates with at most `kappa` per layer.
///
/// A Toffoli depends on every earlier Toffoli reachable through shared
/// qubits (Clifford gates pass dependencies along). Each layer takes up to
/// `kappa` ready gates in program order. Returns gate indices per layer.
pub fn schedule_toffoli_layers(c: &Circuit, kappa: usize) -> Result<Vec<Vec<usize>>> {
    if kappa == 0 {
        return Err(Error::InvalidKappa(0));
    }
    c.ensure_valid()?;
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new(); c.num_qubits];
    let mut preds: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, g) in c.gates.iter().enumerate() {
        let mut deps: Vec<usize> = g.qubits.iter().flat_map(|&q| frontier[q].iter().copied()).collect();
        deps.sort_unstable();
        deps.dedup();
        if g.kind.is_toffoli() {
            let node = preds.len();
            preds.push((i, deps));
            for &q in &g.qubits {
                frontier[q] = vec![node];
            }
        } else {
            for &q in &g.qubits {
                frontier[q] = deps.clone();
            }
        }
    }

    let mut layer_of: Vec<Option<usize>> = vec![None; preds.len()];
    let mut layers: Vec<Vec<usize>> = Vec::new();
    let mut remaining = preds.len();
    while remaining > 0 {
        let current = layers.len();
        let mut picked = Vec::new();
        for (node, (_, deps)) in preds.iter().enumerate() {
            if picked.len() == kappa {
                break;
            }
            let ready = layer_of[node].is_none()
                && deps.iter().all(|&d| matches!(layer_of[d], Some(l) if l < current));
            if ready {
                picked.push(node);
            }
        }
        debug_assert!(!picked.is_empty(), "dependency graph is acyclic");
        for &node in &picked {
            layer_of[node] = Some(current);
        }
        remaining -= picked.len();
        layers.push(picked.into_iter().map(|node| preds[node].0).collect());
    }
    Ok(layers)
}

use super::{Circuit, Gate, GateKind};

/// CX pairs of a balanced doubling tree copying `source` onto `targets`.
///
/// Every round each qubit already holding the value feeds one fresh target,
/// so `m` total qubits need `ceil(log2 m)` CX layers.
pub fn fanout_tree(source: usize, targets: &[usize]) -> Vec<(usize, usize)> {
    let mut holders = vec![source];
    let mut pending = targets.iter().copied();
    let mut pairs = Vec::with_capacity(targets.len());
    loop {
        let round: Vec<usize> = holders.clone();
        let mut progressed = false;
        for h in round {
            match pending.next() {
                Some(t) => {
                    pairs.push((h, t));
                    holders.push(t);
                    progressed = true;
                }
                None => break,
            }
        }
        if !progressed {
            return pairs;
        }
    }
}

/// Replaces FANOUT/UNFANOUT by CX doubling trees (UNFANOUT by the mirror).
///
/// Equivalent to the first-class gates whenever fanout targets hold `|0>`
/// before FANOUT and copies of the source before UNFANOUT.
pub fn lower_fanout(c: &Circuit) -> Circuit {
    let mut out = Circuit { num_qubits: c.num_qubits, gates: Vec::new(), layout: c.layout.clone() };
    for g in &c.gates {
        match g.kind {
            GateKind::Fanout | GateKind::Unfanout if !g.qubits.is_empty() => {
                let mut pairs = fanout_tree(g.qubits[0], &g.qubits[1..]);
                if g.kind == GateKind::Unfanout {
                    pairs.reverse();
                }
                out.gates.extend(pairs.into_iter().map(|(a, b)| Gate::cx(a, b)));
            }
            _ => out.gates.push(g.clone()),
        }
    }
    out
}

/// CSWAP(a, b, c) -> CX(c, b) CCX(a, b, c) CX(c, b).
pub fn expand_cswap(c: &Circuit) -> Circuit {
    let mut out = Circuit { num_qubits: c.num_qubits, gates: Vec::new(), layout: c.layout.clone() };
    for g in &c.gates {
        if g.kind == GateKind::Cswap {
            let (a, b, t) = (g.qubits[0], g.qubits[1], g.qubits[2]);
            out.gates.extend([Gate::cx(t, b), Gate::ccx(a, b, t), Gate::cx(t, b)]);
        } else {
            out.gates.push(g.clone());
        }
    }
    out
}

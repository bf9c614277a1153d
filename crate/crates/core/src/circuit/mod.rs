//! Gate-level circuit IR.
//!
//! The gate set is fixed: Pauli/Clifford single-qubit gates, CX/CZ/SWAP,
//! the two non-Clifford three-qubit gates CCX and CSWAP, and first-class
//! FANOUT/UNFANOUT so that Toffoli-depth accounting can treat fanout as a
//! Clifford that is lowered only on request.

mod depth;
mod text;
mod transform;

use std::fmt;
use std::ops::Range;

use serde::Serialize;

pub use depth::{depth_metrics, schedule_toffoli_layers, toffoli_count, toffoli_depth, DepthReport};
pub use text::{from_text, to_text};
pub use transform::{expand_cswap, fanout_tree, lower_fanout};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GateKind {
    X,
    Z,
    H,
    S,
    Sdg,
    Cx,
    Cz,
    Swap,
    Ccx,
    Cswap,
    Fanout,
    Unfanout,
}

impl GateKind {
    pub const ALL: [GateKind; 12] = [
        GateKind::X,
        GateKind::Z,
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::Cx,
        GateKind::Cz,
        GateKind::Swap,
        GateKind::Ccx,
        GateKind::Cswap,
        GateKind::Fanout,
        GateKind::Unfanout,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::Z => "z",
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::Cx => "cx",
            GateKind::Cz => "cz",
            GateKind::Swap => "swap",
            GateKind::Ccx => "ccx",
            GateKind::Cswap => "cswap",
            GateKind::Fanout => "fanout",
            GateKind::Unfanout => "unfanout",
        }
    }

    pub fn from_name(name: &str) -> Option<GateKind> {
        GateKind::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Exact operand count, or `None` for the variadic fanout gates.
    pub fn arity(self) -> Option<usize> {
        match self {
            GateKind::X | GateKind::Z | GateKind::H | GateKind::S | GateKind::Sdg => Some(1),
            GateKind::Cx | GateKind::Cz | GateKind::Swap => Some(2),
            GateKind::Ccx | GateKind::Cswap => Some(3),
            GateKind::Fanout | GateKind::Unfanout => None,
        }
    }

    /// CCX and CSWAP; everything else is Clifford.
    pub fn is_toffoli(self) -> bool {
        matches!(self, GateKind::Ccx | GateKind::Cswap)
    }

    pub fn is_clifford(self) -> bool {
        !self.is_toffoli()
    }

    pub fn inverse(self) -> GateKind {
        match self {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::Fanout => GateKind::Unfanout,
            GateKind::Unfanout => GateKind::Fanout,
            k => k,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A gate with ordered operands. Controls come first; FANOUT/UNFANOUT take
/// the source followed by the copy targets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<usize>) -> Self {
        Gate { kind, qubits }
    }

    pub fn x(q: usize) -> Self {
        Gate::new(GateKind::X, vec![q])
    }

    pub fn h(q: usize) -> Self {
        Gate::new(GateKind::H, vec![q])
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Gate::new(GateKind::Cx, vec![control, target])
    }

    pub fn swap(a: usize, b: usize) -> Self {
        Gate::new(GateKind::Swap, vec![a, b])
    }

    pub fn ccx(c0: usize, c1: usize, target: usize) -> Self {
        Gate::new(GateKind::Ccx, vec![c0, c1, target])
    }

    pub fn cswap(control: usize, a: usize, b: usize) -> Self {
        Gate::new(GateKind::Cswap, vec![control, a, b])
    }

    pub fn fanout(source: usize, targets: &[usize]) -> Self {
        let mut q = vec![source];
        q.extend_from_slice(targets);
        Gate::new(GateKind::Fanout, q)
    }

    pub fn unfanout(source: usize, targets: &[usize]) -> Self {
        let mut q = vec![source];
        q.extend_from_slice(targets);
        Gate::new(GateKind::Unfanout, q)
    }

    pub fn inverse(&self) -> Gate {
        Gate::new(self.kind.inverse(), self.qubits.clone())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for q in &self.qubits {
            write!(f, " {q}")?;
        }
        Ok(())
    }
}

/// Named, half-open qubit range.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Register {
    pub name: String,
    pub range: Range<usize>,
}

/// Register map in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Layout {
    registers: Vec<Register>,
}

impl Layout {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, range: Range<usize>) {
        self.registers.push(Register { name: name.into(), range });
    }

    pub fn get(&self, name: &str) -> Option<Range<usize>> {
        self.registers.iter().find(|r| r.name == name).map(|r| r.range.clone())
    }

    /// Qubit indices of register `name`, empty if absent.
    pub fn qubits(&self, name: &str) -> Vec<usize> {
        self.get(name).map(|r| r.collect()).unwrap_or_default()
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn is_empty(&self) -> bool {
        self.registers.is_empty()
    }
}

/// A structural problem reported by [`Circuit::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Arity { gate: usize, kind: GateKind, got: usize },
    OutOfRange { gate: usize, qubit: usize },
    DuplicateOperand { gate: usize, qubit: usize },
    RegisterOutOfRange { name: String },
    RegisterOverlap { first: String, second: String },
    DuplicateRegister { name: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Arity { gate, kind, got } => {
                write!(f, "gate {gate}: {kind} takes {:?} operands, got {got}", kind.arity())
            }
            Violation::OutOfRange { gate, qubit } => {
                write!(f, "gate {gate}: qubit {qubit} out of range")
            }
            Violation::DuplicateOperand { gate, qubit } => {
                write!(f, "gate {gate}: duplicate operand {qubit}")
            }
            Violation::RegisterOutOfRange { name } => write!(f, "register {name} out of range"),
            Violation::RegisterOverlap { first, second } => {
                write!(f, "registers {first} and {second} overlap")
            }
            Violation::DuplicateRegister { name } => write!(f, "duplicate register {name}"),
        }
    }
}

pub(crate) fn gate_violations(index: usize, gate: &Gate, num_qubits: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = gate.qubits.len();
    let arity_ok = match gate.kind.arity() {
        Some(k) => n == k,
        None => n >= 1,
    };
    if !arity_ok {
        out.push(Violation::Arity { gate: index, kind: gate.kind, got: n });
    }
    for (i, &q) in gate.qubits.iter().enumerate() {
        if q >= num_qubits {
            out.push(Violation::OutOfRange { gate: index, qubit: q });
        }
        if gate.qubits[..i].contains(&q) {
            out.push(Violation::DuplicateOperand { gate: index, qubit: q });
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Circuit {
    pub num_qubits: usize,
    pub gates: Vec<Gate>,
    pub layout: Layout,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit { num_qubits, gates: Vec::new(), layout: Layout::new() }
    }

    pub fn push(&mut self, gate: Gate) -> &mut Self {
        self.gates.push(gate);
        self
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> &mut Self {
        self.gates.extend(gates);
        self
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Collects every violation: arity, operand bounds and distinctness,
    /// register bounds and disjointness.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut out: Vec<Violation> = self
            .gates
            .iter()
            .enumerate()
            .flat_map(|(i, g)| gate_violations(i, g, self.num_qubits))
            .collect();
        let regs = self.layout.registers();
        for (i, r) in regs.iter().enumerate() {
            if r.range.end > self.num_qubits || r.range.start > r.range.end {
                out.push(Violation::RegisterOutOfRange { name: r.name.clone() });
            }
            for s in &regs[..i] {
                if s.name == r.name {
                    out.push(Violation::DuplicateRegister { name: r.name.clone() });
                } else if r.range.start < s.range.end && s.range.start < r.range.end {
                    out.push(Violation::RegisterOverlap {
                        first: s.name.clone(),
                        second: r.name.clone(),
                    });
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        self.validate()
            .map_err(|v| Error::InvalidCircuit(v.iter().map(ToString::to_string).collect()))
    }

    /// Reverses the gate order and inverts each gate.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            layout: self.layout.clone(),
        }
    }

    /// Runs a permutation circuit on a computational basis state in place.
    /// FANOUT and UNFANOUT XOR the source into every target. Fails with the
    /// offending gate kind on H, S or Sdg; Z and CZ only change phases and are
    /// skipped.
    pub fn eval_classical(&self, bits: &mut [bool]) -> std::result::Result<(), GateKind> {
        assert_eq!(bits.len(), self.num_qubits, "basis state length");
        for g in &self.gates {
            let q = &g.qubits;
            match g.kind {
                GateKind::X => bits[q[0]] ^= true,
                GateKind::Z | GateKind::Cz => {}
                GateKind::Cx => bits[q[1]] ^= bits[q[0]],
                GateKind::Swap => bits.swap(q[0], q[1]),
                GateKind::Ccx => bits[q[2]] ^= bits[q[0]] & bits[q[1]],
                GateKind::Cswap => {
                    if bits[q[0]] {
                        bits.swap(q[1], q[2]);
                    }
                }
                GateKind::Fanout | GateKind::Unfanout => {
                    let s = bits[q[0]];
                    for &t in &q[1..] {
                        bits[t] ^= s;
                    }
                }
                k @ (GateKind::H | GateKind::S | GateKind::Sdg) => return Err(k),
            }
        }
        Ok(())
    }

    /// `self` followed by `other`. The layout is `self`'s, extended by
    /// registers of `other` whose names are new.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::QubitCountMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        let mut out = self.clone();
        out.gates.extend(other.gates.iter().cloned());
        for r in other.layout.registers() {
            if out.layout.get(&r.name).is_none() {
                out.layout.push(r.name.clone(), r.range.clone());
            }
        }
        Ok(out)
    }
}

/// Free-function form of [`Circuit::validate`].
pub fn validate(c: &Circuit) -> std::result::Result<(), Vec<Violation>> {
    c.validate()
}

pub fn compose(a: &Circuit, b: &Circuit) -> Result<Circuit> {
    a.compose(b)
}

pub fn inverse(c: &Circuit) -> Circuit {
    c.inverse()
}

//! Native text form:
//!
//! ```text
//! qubits 6
//! # layout control 0..1
//! # layout catalyst 3..6
//! fanout 0 1 2
//! ccx 0 5 3
//! ```
//!
//! Lowercase, space separated, one gate per line, LF endings. Comments other
//! than `# layout` lines and blank lines are ignored.

use std::fmt::Write;

use super::{gate_violations, Circuit, Gate, GateKind};
use crate::{Error, Result};

pub fn to_text(c: &Circuit) -> String {
    let mut s = String::new();
    writeln!(s, "qubits {}", c.num_qubits).unwrap();
    for r in c.layout.registers() {
        writeln!(s, "# layout {} {}..{}", r.name, r.range.start, r.range.end).unwrap();
    }
    for g in &c.gates {
        writeln!(s, "{g}").unwrap();
    }
    s
}

pub fn from_text(src: &str) -> Result<Circuit> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in src.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if let Some(rest) = line.strip_prefix('#') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.first() != Some(&"layout") {
                continue;
            }
            let c = circuit
                .as_mut()
                .ok_or_else(|| err(line_no, "layout before `qubits` header".into()))?;
            let [_, name, range] = parts[..] else {
                return Err(err(line_no, "expected `# layout <name> <lo>..<hi>`".into()));
            };
            let (lo, hi) = range
                .split_once("..")
                .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                .ok_or_else(|| err(line_no, format!("bad range {range:?}")))?;
            if lo > hi || hi > c.num_qubits {
                return Err(err(line_no, format!("range {range} outside 0..{}", c.num_qubits)));
            }
            c.layout.push(name, lo..hi);
            continue;
        }
        match circuit.as_mut() {
            None => {
                if tokens.len() != 2 || tokens[0] != "qubits" {
                    return Err(err(line_no, "expected `qubits N` header".into()));
                }
                let n = tokens[1]
                    .parse()
                    .map_err(|_| err(line_no, format!("bad qubit count {:?}", tokens[1])))?;
                circuit = Some(Circuit::new(n));
            }
            Some(c) => {
                let kind = GateKind::from_name(tokens[0])
                    .ok_or_else(|| err(line_no, format!("unknown gate {:?}", tokens[0])))?;
                let qubits = tokens[1..]
                    .iter()
                    .map(|t| t.parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| err(line_no, format!("bad operand in {line:?}")))?;
                let gate = Gate::new(kind, qubits);
                if let Some(v) = gate_violations(c.gates.len(), &gate, c.num_qubits).first() {
                    return Err(err(line_no, v.to_string()));
                }
                c.gates.push(gate);
            }
        }
    }
    let c = circuit.ok_or_else(|| err(0, "missing `qubits N` header".into()))?;
    c.ensure_valid()?;
    Ok(c)
}

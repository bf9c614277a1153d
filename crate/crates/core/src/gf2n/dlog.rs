use super::{FieldPoly, GFElement};
use crate::{Error, Result};

/// Largest degree for which an orbit table is built (`2^n` entries).
pub const DLOG_TABLE_CAP: u32 = 28;

/// Lookup table `alpha^j -> j`, built by walking the orbit of `alpha`.
///
/// Stands in for a quantum discrete-log routine at sizes where a classical
/// table is affordable.
#[derive(Clone, Debug)]
pub struct DlogTable {
    n: u32,
    logs: Vec<u32>,
}

impl DlogTable {
    pub fn new(f: &FieldPoly) -> Result<Self> {
        let n = f.degree();
        if n > DLOG_TABLE_CAP {
            return Err(Error::DlogCap { n, cap: DLOG_TABLE_CAP });
        }
        let order = f.group_order();
        let mut logs = vec![u32::MAX; 1usize << n];
        let mut g = 1u64;
        for j in 0..order {
            logs[g as usize] = j as u32;
            g = f.mul_alpha_bits(g);
        }
        Ok(DlogTable { n, logs })
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    /// `j` in `[0, 2^n - 2]` with `alpha^j = g`.
    pub fn log(&self, g: GFElement) -> Result<u64> {
        if g.degree() != self.n {
            return Err(Error::DegreeMismatch { expected: self.n, found: g.degree() });
        }
        self.log_bits(g.bits())
    }

    pub(crate) fn log_bits(&self, bits: u64) -> Result<u64> {
        if bits == 0 {
            return Err(Error::ZeroElement);
        }
        Ok(self.logs[bits as usize] as u64)
    }
}

/// One-shot discrete logarithm base `alpha`.
pub fn discrete_log(g: GFElement, f: &FieldPoly) -> Result<u64> {
    if g.degree() != f.degree() {
        return Err(Error::DegreeMismatch { expected: f.degree(), found: g.degree() });
    }
    if g.is_zero() {
        return Err(Error::ZeroElement);
    }
    DlogTable::new(f)?.log(g)
}

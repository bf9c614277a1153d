use std::fmt;

use super::poly::{degree_mask, FieldPoly};
use crate::{Error, Result};

/// An element `sum_j c_j alpha^j` of GF(2^n); bit `j` of `bits` is `c_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GFElement {
    bits: u64,
    n: u32,
}

impl GFElement {
    /// Builds an element of degree-`n` field; bits above `n` are rejected.
    pub fn new(bits: u64, n: u32) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::UnsupportedDegree(n));
        }
        if bits & !degree_mask(n) != 0 {
            return Err(Error::InvalidArgument(format!(
                "element {bits:#x} has bits above degree {n}"
            )));
        }
        Ok(GFElement { bits, n })
    }

    pub fn zero(n: u32) -> Self {
        GFElement { bits: 0, n }
    }

    pub fn one(n: u32) -> Self {
        GFElement { bits: 1, n }
    }

    /// The root `alpha` itself.
    pub fn alpha(f: &FieldPoly) -> Self {
        GFElement { bits: 2 & degree_mask(f.degree()), n: f.degree() }
    }

    /// `alpha^j`.
    pub fn alpha_pow(f: &FieldPoly, j: u64) -> Self {
        GFElement { bits: f.pow_bits(2, j), n: f.degree() }
    }

    /// Element from little-endian coefficients `c_0, c_1, ...`.
    pub fn from_coeffs(coeffs: &[u8]) -> Result<Self> {
        let bits = coeffs.iter().enumerate().try_fold(0u64, |acc, (j, &c)| match c {
            0 => Ok(acc),
            1 => Ok(acc | 1 << j),
            _ => Err(Error::InvalidArgument(format!("coefficient {c} is not a bit"))),
        })?;
        GFElement::new(bits, coeffs.len() as u32)
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn degree(self) -> u32 {
        self.n
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn coeff(self, j: u32) -> bool {
        j < self.n && (self.bits >> j) & 1 == 1
    }

    pub fn coeffs(self) -> Vec<u8> {
        (0..self.n).map(|j| self.coeff(j) as u8).collect()
    }
}

impl std::ops::Add for GFElement {
    type Output = GFElement;

    fn add(self, rhs: GFElement) -> GFElement {
        assert_eq!(self.n, rhs.n, "adding elements of different fields");
        GFElement { bits: self.bits ^ rhs.bits, n: self.n }
    }
}

impl fmt::Display for GFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = (0..self.n)
            .filter(|&j| self.coeff(j))
            .map(|j| match j {
                0 => "1".to_string(),
                1 => "a".to_string(),
                _ => format!("a^{j}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

fn check(f: &FieldPoly, e: GFElement) -> Result<()> {
    if e.n != f.degree() {
        return Err(Error::DegreeMismatch { expected: f.degree(), found: e.n });
    }
    Ok(())
}

/// Product reduced modulo `f`.
pub fn gf_mul(a: GFElement, b: GFElement, f: &FieldPoly) -> Result<GFElement> {
    check(f, a)?;
    check(f, b)?;
    Ok(GFElement { bits: f.mul_bits(a.bits, b.bits), n: a.n })
}

/// `a^e` by square-and-multiply; `a^0 = 1`.
pub fn gf_pow(a: GFElement, e: u64, f: &FieldPoly) -> Result<GFElement> {
    check(f, a)?;
    Ok(GFElement { bits: f.pow_bits(a.bits, e), n: a.n })
}

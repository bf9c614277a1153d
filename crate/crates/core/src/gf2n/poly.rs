//! Polynomials over F2, primitivity certification and search.

use std::fmt;
use std::str::FromStr;

use super::numtheory::prime_factors;
use crate::{Error, Result};

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 64;

/// A polynomial over F2 of degree below 128; bit `i` is the coefficient of `x^i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryPoly(pub u128);

impl BinaryPoly {
    pub fn from_exponents(exps: &[u32]) -> Self {
        BinaryPoly(exps.iter().fold(0u128, |acc, &e| acc | 1u128 << e))
    }

    pub fn degree(self) -> Option<u32> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros())
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn coeff(self, i: u32) -> bool {
        i < 128 && (self.0 >> i) & 1 == 1
    }

    /// Exponents with nonzero coefficient, highest first.
    pub fn exponents(self) -> Vec<u32> {
        (0..128).rev().filter(|&i| self.coeff(i)).collect()
    }

    pub fn term_count(self) -> u32 {
        self.0.count_ones()
    }

    /// Remainder of polynomial division by `m` (nonzero).
    pub fn rem(self, m: BinaryPoly) -> BinaryPoly {
        let dm = m.degree().expect("division by zero polynomial");
        let mut r = self.0;
        while r != 0 {
            let dr = 127 - r.leading_zeros();
            if dr < dm {
                break;
            }
            r ^= m.0 << (dr - dm);
        }
        BinaryPoly(r)
    }

    pub fn gcd(self, other: BinaryPoly) -> BinaryPoly {
        let (mut a, mut b) = (self, other);
        while !b.is_zero() {
            let r = a.rem(b);
            a = b;
            b = r;
        }
        a
    }

    /// `x^27 + x^20 + x^13 + x^7 + 1` style text, highest degree first.
    pub fn to_text(self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.exponents()
            .into_iter()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_hex(self) -> String {
        format!("{:#x}", self.0)
    }

    /// Parses either the text form or a `0x` hex mask. Whitespace is ignored.
    pub fn parse(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::PolyParse("empty polynomial".into()));
        }
        if let Some(hex) = compact.strip_prefix("0x").or_else(|| compact.strip_prefix("0X")) {
            let v = u128::from_str_radix(hex, 16)
                .map_err(|e| Error::PolyParse(format!("bad hex mask {compact:?}: {e}")))?;
            return Ok(BinaryPoly(v));
        }
        let mut bits = 0u128;
        for term in compact.split('+') {
            let e = parse_term(term)?;
            if bits >> e & 1 == 1 {
                return Err(Error::PolyParse(format!("duplicate term {term:?}")));
            }
            bits |= 1u128 << e;
        }
        Ok(BinaryPoly(bits))
    }
}

fn parse_term(term: &str) -> Result<u32> {
    let bad = || Error::PolyParse(format!("bad term {term:?}"));
    let e = match term {
        "1" => 0,
        "x" | "X" => 1,
        t => {
            let rest = t.strip_prefix("x^").or_else(|| t.strip_prefix("X^")).ok_or_else(bad)?;
            rest.parse::<u32>().map_err(|_| bad())?
        }
    };
    if e >= 128 {
        return Err(Error::PolyParse(format!("exponent {e} too large")));
    }
    Ok(e)
}

impl fmt::Display for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for BinaryPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

pub(crate) fn degree_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Multiplies a residue by `x` modulo `x^n + low`.
#[inline]
pub(crate) fn mul_x(a: u64, n: u32, low: u64) -> u64 {
    let carry = (a >> (n - 1)) & 1;
    let shifted = (a << 1) & degree_mask(n);
    if carry == 1 {
        shifted ^ low
    } else {
        shifted
    }
}

/// Shift-and-add product of two residues modulo `x^n + low`.
pub(crate) fn mul_residues(mut a: u64, mut b: u64, n: u32, low: u64) -> u64 {
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a = mul_x(a, n, low);
    }
    acc
}

pub(crate) fn pow_residue(mut base: u64, mut exp: u64, n: u32, low: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_residues(acc, base, n, low);
        }
        base = mul_residues(base, base, n, low);
        exp >>= 1;
    }
    acc
}

/// `2^n - 1` as a `u64`.
pub fn group_order(n: u32) -> u64 {
    degree_mask(n)
}

/// A monic degree-`n` polynomial certified primitive over F2.
///
/// Construct with [`certify_primitive`] or [`find_primitive`]. The residue
/// representation keeps `f_0..f_{n-1}` in `low`; `f_n = 1` is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldPoly {
    n: u32,
    low: u64,
    q_set: Vec<usize>,
    order_primes: Vec<u64>,
}

impl FieldPoly {
    pub fn degree(&self) -> u32 {
        self.n
    }

    /// Coefficients `f_0..f_{n-1}` as a bit mask.
    pub fn low_mask(&self) -> u64 {
        self.low
    }

    /// `f_j`, with `f_n = 1`.
    pub fn coeff(&self, j: u32) -> bool {
        match j.cmp(&self.n) {
            std::cmp::Ordering::Less => (self.low >> j) & 1 == 1,
            std::cmp::Ordering::Equal => true,
            std::cmp::Ordering::Greater => false,
        }
    }

    /// CX targets `{ j in [0, n-2] : f_{j+1} = 1 }` of the upper-triangular factor.
    pub fn q_set(&self) -> &[usize] {
        &self.q_set
    }

    /// Multiplicative group order `2^n - 1`.
    pub fn group_order(&self) -> u64 {
        group_order(self.n)
    }

    /// Distinct primes dividing `2^n - 1`.
    pub fn order_primes(&self) -> &[u64] {
        &self.order_primes
    }

    pub fn as_binary(&self) -> BinaryPoly {
        BinaryPoly(1u128 << self.n | self.low as u128)
    }

    pub fn to_text(&self) -> String {
        self.as_binary().to_text()
    }

    pub fn to_hex(&self) -> String {
        self.as_binary().to_hex()
    }

    pub(crate) fn mul_bits(&self, a: u64, b: u64) -> u64 {
        mul_residues(a, b, self.n, self.low)
    }

    pub(crate) fn pow_bits(&self, a: u64, e: u64) -> u64 {
        pow_residue(a, e, self.n, self.low)
    }

    pub(crate) fn mul_alpha_bits(&self, a: u64) -> u64 {
        mul_x(a, self.n, self.low)
    }

    pub fn parse(s: &str) -> Result<Self> {
        certify_primitive(BinaryPoly::parse(s)?)
    }
}

impl fmt::Display for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for FieldPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

fn q_set_of(n: u32, low: u64) -> Vec<usize> {
    (0..n - 1).filter(|j| (low >> (j + 1)) & 1 == 1).map(|j| j as usize).collect()
}

/// Rabin's test: `x^(2^n) = x (mod f)` and `gcd(x^(2^(n/q)) - x, f) = 1` for
/// every prime `q | n`.
fn is_irreducible(f: BinaryPoly, n: u32, low: u64) -> Result<bool> {
    let x = 2u64;
    let frob = |k: u32| {
        let mut h = x;
        for _ in 0..k {
            h = mul_residues(h, h, n, low);
        }
        h
    };
    if frob(n) != x {
        return Ok(false);
    }
    for q in prime_factors(n as u64)? {
        let h = frob(n / q as u32);
        let diff = BinaryPoly((h ^ x) as u128);
        if diff.gcd(f).degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_degree(candidate: BinaryPoly) -> Result<u32> {
    match candidate.degree() {
        Some(n) if (MIN_DEGREE..=MAX_DEGREE).contains(&n) => Ok(n),
        Some(n) => Err(Error::UnsupportedDegree(n)),
        None => Err(Error::UnsupportedDegree(0)),
    }
}

fn certify_with(candidate: BinaryPoly, primes: &[u64]) -> Result<FieldPoly> {
    let n = check_degree(candidate)?;
    let low = (candidate.0 & degree_mask(n) as u128) as u64;
    if low & 1 == 0 || !is_irreducible(candidate, n, low)? {
        return Err(Error::Reducible(candidate.to_text()));
    }
    let order = group_order(n);
    let x = 2u64;
    let primitive = pow_residue(x, order, n, low) == 1
        && primes.iter().all(|&p| pow_residue(x, order / p, n, low) != 1);
    if !primitive {
        return Err(Error::NotPrimitive(candidate.to_text()));
    }
    Ok(FieldPoly { n, low, q_set: q_set_of(n, low), order_primes: primes.to_vec() })
}

/// Accepts `candidate` iff `x` has multiplicative order exactly `2^n - 1`
/// modulo it. Rejections distinguish reducible from irreducible-but-not-primitive.
pub fn certify_primitive(candidate: BinaryPoly) -> Result<FieldPoly> {
    let n = check_degree(candidate)?;
    certify_with(candidate, &prime_factors(group_order(n))?)
}

/// Smallest primitive trinomial of degree `n`, else (when `max_terms == 5`)
/// the smallest primitive pentanomial. Candidates are ordered by their
/// integer coefficient mask, so lower middle terms win.
pub fn find_primitive(n: u32, max_terms: u32) -> Result<FieldPoly> {
    if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
        return Err(Error::UnsupportedDegree(n));
    }
    if max_terms != 3 && max_terms != 5 {
        return Err(Error::InvalidArgument(format!("max_terms must be 3 or 5, got {max_terms}")));
    }
    let primes = prime_factors(group_order(n))?;
    let top = 1u128 << n | 1;
    for k in 1..n {
        if let Ok(f) = certify_with(BinaryPoly(top | 1u128 << k), &primes) {
            return Ok(f);
        }
    }
    if max_terms == 5 {
        for c in 3..n {
            for b in 2..c {
                for a in 1..b {
                    let cand = BinaryPoly(top | 1u128 << a | 1u128 << b | 1u128 << c);
                    if let Ok(f) = certify_with(cand, &primes) {
                        return Ok(f);
                    }
                }
            }
        }
    }
    Err(Error::NoPrimitivePolynomial { n, max_terms })
}

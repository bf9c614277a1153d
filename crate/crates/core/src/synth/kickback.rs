use serde::Serialize;

use crate::gf2n::numtheory::{gcd, mod_inverse, mul_mod};
use crate::gf2n::{group_order, FieldPoly, MAX_DEGREE, MIN_DEGREE};
use crate::{Error, Real, Result};

/// Which catalyst kickbacks realize the phase `2 pi b / N` when only the
/// states `psi_{a 2^t}` are available: `m a = b (mod N)` and `bits` is the
/// binary support of `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KickbackPlan {
    pub a: u64,
    pub b: u64,
    pub m: u64,
    pub modulus: u64,
    pub bits: Vec<u32>,
}

impl KickbackPlan {
    /// Total kicked-back multiple `sum_t a 2^t mod N`; equals `b`.
    pub fn total(&self) -> u64 {
        self.bits.iter().fold(0u64, |acc, &t| {
            let term = mul_mod(self.a, (1u64 << t) % self.modulus, self.modulus);
            ((acc as u128 + term as u128) % self.modulus as u128) as u64
        })
    }

    pub(crate) fn check_for(&self, f: &FieldPoly) -> Result<()> {
        let n = f.degree();
        if self.modulus != f.group_order() {
            return Err(Error::InvalidPlan(format!(
                "plan modulus {} does not match 2^{n} - 1 = {}",
                self.modulus,
                f.group_order()
            )));
        }
        if self.bits.iter().any(|&t| t >= n) {
            return Err(Error::InvalidPlan(format!("kickback bit outside 0..{n}")));
        }
        if mul_mod(self.a, self.m, self.modulus) != self.b % self.modulus || self.total() != self.b {
            return Err(Error::InvalidPlan("a * m != b (mod N)".into()));
        }
        Ok(())
    }
}

/// `m = b a^{-1} mod N` and its bit support.
pub fn select_kickbacks(b: u64, a: u64, modulus: u64) -> Result<KickbackPlan> {
    if modulus < 2 {
        return Err(Error::InvalidArgument(format!("modulus must be at least 2, got {modulus}")));
    }
    if b >= modulus {
        return Err(Error::InvalidArgument(format!("b = {b} must be below N = {modulus}")));
    }
    if gcd(a, modulus) != 1 {
        return Err(Error::NotInvertible { a, modulus });
    }
    let a = a % modulus;
    let m = mul_mod(b, mod_inverse(a, modulus)?, modulus);
    let bits = (0..64).filter(|t| (m >> t) & 1 == 1).collect();
    Ok(KickbackPlan { a, b, m, modulus, bits })
}

/// Nearest grid angle `2 pi b / (2^n - 1)` to `theta`, with the absolute
/// error folded into `[0, pi]`.
///
/// The grid step shrinks below `f64` resolution once `n` passes about 50, so
/// the reported error is then dominated by rounding of `theta` itself.
pub fn approximate_angle<T: Real>(theta: T, n: u32) -> Result<(u64, T)> {
    if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
        return Err(Error::UnsupportedDegree(n));
    }
    if !theta.is_finite() {
        return Err(Error::InvalidArgument(format!("angle must be finite, got {theta}")));
    }
    let modulus = group_order(n);
    let tau = std::f64::consts::TAU;
    let turns = theta.to_f64_lossy().rem_euclid(tau) / tau;
    let b = ((turns * modulus as f64).round() as u128 % modulus as u128) as u64;

    let grid = tau * (b as f64 / modulus as f64);
    let mut err = (theta.to_f64_lossy() - grid).rem_euclid(tau);
    if err > std::f64::consts::PI {
        err = tau - err;
    }
    Ok((b, T::of(err)))
}

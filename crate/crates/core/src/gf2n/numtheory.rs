//! Integer helpers: factorization of `2^n - 1`, modular inverses and the
//! totient bound used to estimate the coprime-retry success rate.

use num_integer::Integer;
use serde::Serialize;

use crate::{Error, Ratio, Result};

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
/// Euler-Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor of the
/// composite `n`, trying successive increments from a fixed seed.
fn pollard_rho(n: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    for c in 1..64u64 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        let mut steps = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
            steps += 1;
            if steps > 1 << 22 {
                break;
            }
        }
        if d != 1 && d != n {
            return Some(d);
        }
    }
    None
}

/// Prime factorization as sorted `(prime, multiplicity)` pairs.
///
/// Trial division up to 10^6, then Pollard rho on the cofactor.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    let mut primes = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p <= TRIAL_DIVISION_LIMIT && p.saturating_mul(p) <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            primes.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![];
    if rest > 1 {
        stack.push(rest);
    }
    let mut large = Vec::new();
    while let Some(m) = stack.pop() {
        if is_prime(m) {
            large.push(m);
            continue;
        }
        let d = pollard_rho(m).ok_or(Error::Factorization(n))?;
        stack.push(d);
        stack.push(m / d);
    }
    large.sort_unstable();
    for q in large {
        match primes.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => primes.push((q, 1)),
        }
    }
    primes.sort_unstable();
    Ok(primes)
}

/// Distinct prime factors of `n`.
pub fn prime_factors(n: u64) -> Result<Vec<u64>> {
    Ok(factorize(n)?.into_iter().map(|(p, _)| p).collect())
}

/// `a^{-1} mod modulus` by the extended Euclidean algorithm.
pub fn mod_inverse(a: u64, modulus: u64) -> Result<u64> {
    if modulus == 0 || a == 0 || a >= modulus {
        return Err(Error::InvalidArgument(format!(
            "mod_inverse requires 0 < a < N, got a = {a}, N = {modulus}"
        )));
    }
    let ext = (a as i128).extended_gcd(&(modulus as i128));
    if ext.gcd != 1 {
        return Err(Error::NotInvertible { a, modulus });
    }
    Ok(ext.x.rem_euclid(modulus as i128) as u64)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Euler's totient.
pub fn totient(n: u64) -> Result<u64> {
    if n == 0 {
        return Ok(0);
    }
    let mut phi = n;
    for (p, _) in factorize(n)? {
        phi = phi / p * (p - 1);
    }
    Ok(phi)
}

/// Exact totient ratio against the Rosser-Schoenfeld lower bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TotientCheck {
    pub modulus: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub ratio: Ratio,
    pub bound: f64,
    pub satisfied: bool,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

/// `1 / (e^gamma ln ln N + 3 / ln ln N)`.
pub fn totient_lower_bound(modulus: u64) -> f64 {
    let ll = (modulus as f64).ln().ln();
    1.0 / (EULER_GAMMA.exp() * ll + 3.0 / ll)
}

/// Compares `phi(N)/N` (exact) with the lower bound; requires `N >= 5`.
pub fn totient_check(modulus: u64) -> Result<TotientCheck> {
    if modulus < 5 {
        return Err(Error::InvalidArgument(format!(
            "totient bound needs N >= 5, got {modulus}"
        )));
    }
    let ratio = Ratio::new(totient(modulus)? as u128, modulus as u128);
    let bound = totient_lower_bound(modulus);
    let as_f64 = *ratio.numer() as f64 / *ratio.denom() as f64;
    Ok(TotientCheck { modulus, ratio, bound, satisfied: as_f64 >= bound })
}

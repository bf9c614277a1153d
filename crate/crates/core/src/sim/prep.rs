//! Desk-scale catalyst preparation: multiplicative cloning, phase
//! estimation on `U_f`, and the coprime-retry statistics.

use num_complex::Complex;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::FftPlanner;
use serde::Serialize;

use super::catalyst::{build_catalyst, catalyst_state, CatalystSpec};
use super::state::{check_cap, StateVector};
use super::unitaries::{apply_frobenius, apply_umul, apply_umul_inverse, Direction};
use crate::gf2n::numtheory::{gcd, totient_check};
use crate::gf2n::{companion_matrix, group_order, FieldPoly, GFElement};
use crate::{Error, Real, Result};

/// Splits a two-register state `low (x) high` into its factors, anchored on
/// the largest amplitude. Returns the factors and `|<low (x) high|pair>|^2`.
fn split<T: Real>(pair: &StateVector<T>, n: usize) -> Result<(StateVector<T>, StateVector<T>, T)> {
    let mask = (1usize << n) - 1;
    let (peak, _) = pair
        .amps()
        .iter()
        .enumerate()
        .fold((0, T::zero()), |best, (i, a)| if a.norm_sqr() > best.1 { (i, a.norm_sqr()) } else { best });
    let (g0, h0) = (peak & mask, peak >> n);
    let mut low = StateVector::from_amplitudes((0..=mask).map(|g| pair.amps()[g | h0 << n]).collect())?;
    let mut high = StateVector::from_amplitudes((0..=mask).map(|h| pair.amps()[g0 | h << n]).collect())?;
    low.normalize()?;
    high.normalize()?;
    let product = low.tensor(&high)?;
    let fid = product.fidelity(pair)?;
    Ok((low, high, fid))
}

#[derive(Clone, Debug)]
pub struct CloneResult<T: Real> {
    /// The input `psi_k`, returned after the schedule.
    pub original: StateVector<T>,
    pub copies: Vec<StateVector<T>>,
    /// Fidelity of each copy with `psi_k`.
    pub fidelities: Vec<T>,
    pub original_fidelity: T,
    /// Fidelity of the uncomputed work register with `psi_0`.
    pub restored_fidelity: T,
    /// Smallest product-state fidelity seen when splitting register pairs.
    pub min_split_fidelity: T,
    pub mul_count: usize,
}

/// Makes `copies` copies of `psi_k` from one `psi_k` and fresh `psi_0`
/// registers.
///
/// `U_mul (psi_0 (x) psi_k) = psi_{-k} (x) psi_k`; each copy is
/// `U_mul (psi_0 (x) psi_{-k}) = psi_k (x) psi_{-k}`; finally
/// `U_mul^dagger (psi_{-k} (x) psi_k)` returns the work register to
/// `psi_0`. The registers stay in product form, so every step is simulated
/// on a single pair of `n`-qubit registers.
pub fn clone_catalyst<T: Real>(f: &FieldPoly, k: u64, copies: usize) -> Result<CloneResult<T>> {
    let modulus = f.group_order();
    let n = f.degree() as usize;
    if copies == 0 {
        return Err(Error::InvalidArgument("copies must be at least 1".into()));
    }
    if k >= modulus || gcd(k, modulus) != 1 {
        return Err(Error::InvalidArgument(format!("k = {k} must be coprime to {modulus}")));
    }
    check_cap(2 * n)?;
    let psi_k: StateVector<T> = catalyst_state(f, k)?;
    let psi_0: StateVector<T> = catalyst_state(f, 0)?;
    let mut mul_count = 0;
    let mut min_split = T::one();

    let mut step = |g: &StateVector<T>, h: &StateVector<T>, inverse: bool| -> Result<(StateVector<T>, StateVector<T>)> {
        let mut pair = g.tensor(h)?;
        if inverse {
            apply_umul_inverse(&mut pair, f)?;
        } else {
            apply_umul(&mut pair, f)?;
        }
        mul_count += 1;
        let (lo, hi, fid) = split(&pair, n)?;
        min_split = min_split.min(fid);
        Ok((lo, hi))
    };

    let (minus_k, original) = step(&psi_0, &psi_k, false)?;
    let mut out = Vec::with_capacity(copies);
    let mut minus = minus_k;
    for _ in 0..copies {
        let (copy, m) = step(&psi_0, &minus, false)?;
        out.push(copy);
        minus = m;
    }
    let (restored, original) = step(&minus, &original, true)?;

    let fidelities = out.iter().map(|c| c.fidelity(&psi_k)).collect::<Result<Vec<_>>>()?;
    Ok(CloneResult {
        original_fidelity: original.fidelity(&psi_k)?,
        restored_fidelity: restored.fidelity(&psi_0)?,
        original,
        copies: out,
        fidelities,
        min_split_fidelity: min_split,
        mul_count,
    })
}

/// `(U_F^dagger)^t psi = psi_{k 2^t}` when `psi = psi_k`.
pub fn frobenius_shift<T: Real>(state: &mut StateVector<T>, f: &FieldPoly, t: u32) -> Result<()> {
    for _ in 0..t {
        apply_frobenius(state, f, Direction::Inverse)?;
    }
    Ok(())
}

/// Phase estimation of `U_f` on `|v>` with a `t_bits` counting register,
/// simulated once so that outcomes can be sampled cheaply.
///
/// After the controlled powers the joint state is
/// `T^{-1/2} sum_x |x> |C_f^x v>`; the inverse QFT on the counting register
/// is an FFT along `x` for every target basis state.
pub struct QpeExperiment<T: Real> {
    f: FieldPoly,
    spec: CatalystSpec,
    t_bits: u32,
    /// Target basis state -> counting-register amplitudes after the inverse QFT.
    rows: Vec<(usize, Vec<Complex<T>>)>,
    probs: Vec<f64>,
    dist: WeightedIndex<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QpeShot<T: Real> {
    /// Raw counting-register outcome.
    pub outcome: u64,
    /// Nearest eigenvalue index `round(outcome N / 2^t) mod N`.
    pub k: u64,
    /// `|<psi_k|post-measurement target>|^2`.
    pub fidelity: T,
}

impl<T: Real> QpeExperiment<T> {
    pub fn new(f: &FieldPoly, t_bits: u32) -> Result<Self> {
        Self::with_start(f, t_bits, GFElement::one(f.degree()))
    }

    pub fn with_start(f: &FieldPoly, t_bits: u32, v: GFElement) -> Result<Self> {
        let n = f.degree() as usize;
        if t_bits == 0 {
            return Err(Error::InvalidArgument("t_bits must be at least 1".into()));
        }
        check_cap(n + t_bits as usize)?;
        let spec = CatalystSpec::with_start(f, 0, v)?;
        let len = 1usize << t_bits;

        // C_f^{2^s} by repeated squaring
        let mut powers = vec![companion_matrix(f)];
        for s in 1..t_bits as usize {
            let p = powers[s - 1].mul(&powers[s - 1]);
            powers.push(p);
        }
        let mut targets = vec![0u64; len];
        targets[0] = v.bits();
        for x in 1..len {
            let s = usize::BITS - 1 - x.leading_zeros();
            targets[x] = powers[s as usize].mul_vec(targets[x ^ (1 << s)]);
        }

        let zero = Complex::new(T::zero(), T::zero());
        let amp = Complex::new(T::one() / T::of_u64(len as u64).sqrt(), T::zero());
        let mut slot = vec![usize::MAX; 1 << n];
        let mut rows: Vec<(usize, Vec<Complex<T>>)> = Vec::new();
        for (x, &z) in targets.iter().enumerate() {
            let z = z as usize;
            if slot[z] == usize::MAX {
                slot[z] = rows.len();
                rows.push((z, vec![zero; len]));
            }
            rows[slot[z]].1[x] = amp;
        }

        let fft = FftPlanner::<T>::new().plan_fft_forward(len);
        let scale = T::one() / T::of_u64(len as u64).sqrt();
        let mut probs = vec![0.0f64; len];
        for (_, row) in &mut rows {
            fft.process(row);
            for (y, a) in row.iter_mut().enumerate() {
                *a = *a * scale;
                probs[y] += a.norm_sqr().to_f64_lossy();
            }
        }
        let dist = WeightedIndex::new(&probs).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        Ok(QpeExperiment { f: f.clone(), spec, t_bits, rows, probs, dist })
    }

    pub fn t_bits(&self) -> u32 {
        self.t_bits
    }

    pub fn outcome_probability(&self, y: u64) -> f64 {
        self.probs[y as usize]
    }

    pub fn k_of(&self, y: u64) -> u64 {
        let modulus = self.f.group_order() as u128;
        let len = 1u128 << self.t_bits;
        ((2 * y as u128 * modulus + len) / (2 * len) % modulus) as u64
    }

    /// Normalized target state after reading `y`.
    pub fn post_state(&self, y: u64) -> Result<StateVector<T>> {
        let n = self.f.degree() as usize;
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << n];
        for (z, row) in &self.rows {
            amps[*z] = row[y as usize];
        }
        let mut s = StateVector::from_amplitudes(amps)?;
        s.normalize()?;
        Ok(s)
    }

    /// The eigenstate `psi_k` built on the same orbit start as the input.
    pub fn eigenstate(&self, k: u64) -> Result<StateVector<T>> {
        build_catalyst(&CatalystSpec { k, ..self.spec.clone() })
    }

    pub fn shot(&self, y: u64) -> Result<QpeShot<T>> {
        let k = self.k_of(y);
        let fidelity = self.eigenstate(k)?.fidelity(&self.post_state(y)?)?;
        Ok(QpeShot { outcome: y, k, fidelity })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<QpeShot<T>> {
        self.shot(self.dist.sample(rng) as u64)
    }
}

#[derive(Clone, Debug)]
pub struct QpeOutcome<T: Real> {
    pub outcome: u64,
    pub k: u64,
    pub fidelity: T,
    pub state: StateVector<T>,
}

/// One seeded phase-estimation shot on `U_f |1>`.
pub fn qpe_prepare<T: Real>(f: &FieldPoly, t_bits: u32, seed: u64) -> Result<QpeOutcome<T>> {
    let exp = QpeExperiment::new(f, t_bits)?;
    let shot = exp.sample(&mut ChaCha8Rng::seed_from_u64(seed))?;
    Ok(QpeOutcome { outcome: shot.outcome, k: shot.k, fidelity: shot.fidelity, state: exp.post_state(shot.outcome)? })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RetryStats {
    pub n: u32,
    pub trials: u64,
    pub successes: u64,
    pub success_rate: f64,
    /// Exact `phi(N) / N`.
    pub exact_rate: f64,
    pub bound: f64,
    /// Binomial standard deviation of the sample rate.
    pub sigma: f64,
    /// `success_rate + 3 sigma >= bound`.
    pub meets_bound: bool,
}

/// Samples `k` uniformly from `0..N` and counts how often it is coprime to
/// `N = 2^n - 1`.
pub fn coprime_retry_stats(n: u32, trials: u64, seed: u64) -> Result<RetryStats> {
    if !(3..=20).contains(&n) {
        return Err(Error::InvalidArgument(format!("retry statistics need 3 <= n <= 20, got {n}")));
    }
    if trials == 0 {
        return Err(Error::EmptySample);
    }
    let modulus = group_order(n);
    let check = totient_check(modulus)?;
    let exact_rate = *check.ratio.numer() as f64 / *check.ratio.denom() as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let successes = (0..trials).filter(|_| gcd(rng.random_range(0..modulus), modulus) == 1).count() as u64;
    let success_rate = successes as f64 / trials as f64;
    let sigma = (exact_rate * (1.0 - exact_rate) / trials as f64).sqrt();
    Ok(RetryStats {
        n,
        trials,
        successes,
        success_rate,
        exact_rate,
        bound: check.bound,
        sigma,
        meets_bound: success_rate + 3.0 * sigma >= check.bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2n::find_primitive;

    fn f3() -> FieldPoly {
        FieldPoly::parse("x^3 + x + 1").unwrap()
    }

    #[test]
    fn clone_counts_and_fidelities() {
        let f = f3();
        for (copies, muls) in [(1, 3), (4, 6)] {
            let r: CloneResult<f64> = clone_catalyst(&f, 1, copies).unwrap();
            assert_eq!(r.mul_count, muls);
            assert_eq!(r.copies.len(), copies);
            assert!(r.fidelities.iter().all(|&x| x > 1.0 - 1e-9));
            assert!(r.original_fidelity > 1.0 - 1e-9);
            assert!(r.restored_fidelity > 1.0 - 1e-9);
            assert!(r.min_split_fidelity > 1.0 - 1e-9);
        }
    }

    #[test]
    fn clone_every_coprime_k() {
        let f = find_primitive(4, 5).unwrap();
        for k in (1..15).filter(|&k| gcd(k, 15) == 1) {
            let r: CloneResult<f64> = clone_catalyst(&f, k, 2).unwrap();
            assert!(r.fidelities.iter().all(|&x| x > 1.0 - 1e-9), "k = {k}");
        }
    }

    #[test]
    fn clone_rejects_non_coprime_k() {
        let f = find_primitive(4, 5).unwrap();
        assert!(clone_catalyst::<f64>(&f, 0, 1).is_err());
        assert!(clone_catalyst::<f64>(&f, 3, 1).is_err());
        assert!(clone_catalyst::<f64>(&f3(), 1, 0).is_err());
    }

    #[test]
    fn frobenius_ladder() {
        let f = f3();
        for t in 0..3 {
            let mut s: StateVector<f64> = catalyst_state(&f, 3).unwrap();
            frobenius_shift(&mut s, &f, t).unwrap();
            let target = (3 << t) % 7;
            assert!(s.fidelity(&catalyst_state(&f, target).unwrap()).unwrap() > 1.0 - 1e-10);
        }
    }

    #[test]
    fn qpe_probabilities_sum_to_one() {
        let exp: QpeExperiment<f64> = QpeExperiment::new(&f3(), 8).unwrap();
        let total: f64 = (0..256).map(|y| exp.outcome_probability(y)).sum();
        assert!((total - 1.0).abs() < 1e-10);
        assert_eq!(exp.k_of(0), 0);
        assert_eq!(exp.k_of(37), 1); // 37 * 7 / 256 = 1.01
        assert_eq!(exp.k_of(255), 0); // wraps: 6.97 rounds to 7 = 0 mod 7
    }

    fn median(mut xs: Vec<f64>) -> f64 {
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        xs[xs.len() / 2]
    }

    fn median_fidelity(t: u32) -> f64 {
        let exp: QpeExperiment<f64> = QpeExperiment::new(&f3(), t).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        median((0..100).map(|_| exp.sample(&mut rng).unwrap().fidelity).collect())
    }

    #[test]
    fn qpe_fidelity_examples() {
        assert!(median_fidelity(8) > 0.9);
        assert!(median_fidelity(12) > median_fidelity(6));
    }

    #[test]
    fn qpe_prepare_is_deterministic() {
        let a: QpeOutcome<f64> = qpe_prepare(&f3(), 8, 7).unwrap();
        let b: QpeOutcome<f64> = qpe_prepare(&f3(), 8, 7).unwrap();
        assert_eq!((a.outcome, a.k), (b.outcome, b.k));
        assert_eq!(a.state, b.state);
        assert!(a.fidelity > 0.5);
    }

    #[test]
    fn qpe_cap() {
        let f = find_primitive(12, 5).unwrap();
        assert!(matches!(QpeExperiment::<f64>::new(&f, 11), Err(Error::SimulationCap { requested: 23, .. })));
        assert!(QpeExperiment::<f64>::new(&f3(), 0).is_err());
    }

    #[test]
    fn retry_stats() {
        let r = coprime_retry_stats(3, 10_000, 1).unwrap();
        assert!((r.exact_rate - 6.0 / 7.0).abs() < 1e-15);
        assert!((r.success_rate - 6.0 / 7.0).abs() < 4.0 * r.sigma);
        assert!(r.meets_bound);
        assert!(matches!(coprime_retry_stats(3, 0, 1), Err(Error::EmptySample)));
        assert_eq!(Error::EmptySample.to_string(), "empty sample");
    }
}

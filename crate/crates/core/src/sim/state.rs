use num_complex::Complex;
use rand::Rng;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::{Error, Real, Result};

/// Largest register the dense simulator accepts (2^22 amplitudes).
pub const MAX_QUBITS: usize = 22;

pub(crate) fn check_cap(requested: usize) -> Result<()> {
    if requested > MAX_QUBITS {
        return Err(Error::SimulationCap { requested, cap: MAX_QUBITS });
    }
    Ok(())
}

/// Dense amplitude vector; qubit 0 is the least significant index bit.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Real> {
    num_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// `|0...0>` on `num_qubits` qubits.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        check_cap(num_qubits)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::InvalidArgument(format!("basis index {index} outside 0..{dim}")));
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); dim];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(StateVector { num_qubits, amps })
    }

    /// Takes ownership of `amps`; the length must be a power of two. The
    /// vector is not renormalized.
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::StateFormat(format!("{} amplitudes is not a power of two", amps.len())));
        }
        let num_qubits = amps.len().trailing_zeros() as usize;
        check_cap(num_qubits)?;
        Ok(StateVector { num_qubits, amps })
    }

    /// Random normalized state (components uniform in [-1, 1], then scaled).
    pub fn random<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> Result<Self> {
        check_cap(num_qubits)?;
        let amps = (0..1usize << num_qubits)
            .map(|_| Complex::new(T::of(rng.random_range(-1.0..1.0)), T::of(rng.random_range(-1.0..1.0))))
            .collect();
        let mut s = StateVector { num_qubits, amps };
        s.normalize()?;
        Ok(s)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amps
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.amps
    }

    pub fn norm(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).fold(T::zero(), |s, x| s + x).sqrt()
    }

    pub fn normalize(&mut self) -> Result<()> {
        let norm = self.norm();
        if norm == T::zero() {
            return Err(Error::InvalidArgument("cannot normalize the zero vector".into()));
        }
        for a in &mut self.amps {
            *a = *a / norm;
        }
        Ok(())
    }

    pub fn probability(&self, index: usize) -> T {
        self.amps[index].norm_sqr()
    }

    fn same_size(&self, other: &Self) -> Result<()> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::QubitCountMismatch { left: self.num_qubits, right: other.num_qubits });
        }
        Ok(())
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        self.same_size(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::new(T::zero(), T::zero()), |s, (a, b)| s + a.conj() * b))
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &Self) -> Result<T> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Euclidean distance `||self - other||`.
    pub fn distance(&self, other: &Self) -> Result<T> {
        self.same_size(other)?;
        let d2 = self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm_sqr());
        Ok(d2.fold(T::zero(), |s, x| s + x).sqrt())
    }

    pub fn scale(&mut self, c: Complex<T>) {
        for a in &mut self.amps {
            *a = *a * c;
        }
    }

    /// `self (x) high`: `self` keeps the low qubits, `high` is placed above.
    pub fn tensor(&self, high: &Self) -> Result<Self> {
        check_cap(self.num_qubits + high.num_qubits)?;
        let mut amps = Vec::with_capacity(self.dim() * high.dim());
        for h in &high.amps {
            amps.extend(self.amps.iter().map(|l| l * h));
        }
        Ok(StateVector { num_qubits: self.num_qubits + high.num_qubits, amps })
    }

    /// Moves amplitude `i` to `p(i)`; `p` must be a bijection on `0..dim`.
    pub(crate) fn permute(&mut self, p: impl Fn(usize) -> usize) {
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            out[p(i)] = *a;
        }
        self.amps = out;
    }

    /// In-place action of an involutive basis permutation.
    fn swap_pairs(&mut self, p: impl Fn(usize) -> usize) {
        for i in 0..self.amps.len() {
            let j = p(i);
            if j > i {
                self.amps.swap(i, j);
            }
        }
    }

    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        if let Some(&q) = g.qubits.iter().find(|&&q| q >= self.num_qubits) {
            return Err(Error::InvalidArgument(format!("gate {g}: qubit {q} outside 0..{}", self.num_qubits)));
        }
        let m: Vec<usize> = g.qubits.iter().map(|&q| 1usize << q).collect();
        let set = |i: usize, mask: usize| i & mask != 0;
        let i_unit = Complex::new(T::zero(), T::one());
        match g.kind {
            GateKind::X => self.swap_pairs(|i| i ^ m[0]),
            GateKind::Z => self.phase_where(|i| set(i, m[0]), -Complex::new(T::one(), T::zero())),
            GateKind::S => self.phase_where(|i| set(i, m[0]), i_unit),
            GateKind::Sdg => self.phase_where(|i| set(i, m[0]), -i_unit),
            GateKind::Cz => self.phase_where(|i| set(i, m[0]) && set(i, m[1]), -Complex::new(T::one(), T::zero())),
            GateKind::H => {
                let r = T::FRAC_1_SQRT_2();
                for i in 0..self.amps.len() {
                    if !set(i, m[0]) {
                        let (a, b) = (self.amps[i], self.amps[i | m[0]]);
                        self.amps[i] = (a + b) * r;
                        self.amps[i | m[0]] = (a - b) * r;
                    }
                }
            }
            GateKind::Cx => self.swap_pairs(|i| if set(i, m[0]) { i ^ m[1] } else { i }),
            GateKind::Swap => self.swap_pairs(|i| {
                if set(i, m[0]) != set(i, m[1]) {
                    i ^ m[0] ^ m[1]
                } else {
                    i
                }
            }),
            GateKind::Ccx => self.swap_pairs(|i| if set(i, m[0]) && set(i, m[1]) { i ^ m[2] } else { i }),
            GateKind::Cswap => self.swap_pairs(|i| {
                if set(i, m[0]) && set(i, m[1]) != set(i, m[2]) {
                    i ^ m[1] ^ m[2]
                } else {
                    i
                }
            }),
            GateKind::Fanout | GateKind::Unfanout => {
                let targets: usize = m[1..].iter().sum();
                self.swap_pairs(|i| if set(i, m[0]) { i ^ targets } else { i });
            }
        }
        Ok(())
    }

    fn phase_where(&mut self, pred: impl Fn(usize) -> bool, phase: Complex<T>) {
        for (i, a) in self.amps.iter_mut().enumerate() {
            if pred(i) {
                *a = *a * phase;
            }
        }
    }

    pub fn apply_circuit(&mut self, c: &Circuit) -> Result<()> {
        if c.num_qubits != self.num_qubits {
            return Err(Error::QubitCountMismatch { left: self.num_qubits, right: c.num_qubits });
        }
        c.ensure_valid()?;
        for g in &c.gates {
            self.apply_gate(g)?;
        }
        Ok(())
    }
}

/// Applies `c` to `state` and returns the result.
pub fn apply<T: Real>(mut state: StateVector<T>, c: &Circuit) -> Result<StateVector<T>> {
    state.apply_circuit(c)?;
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{expand_cswap, lower_fanout};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type S = StateVector<f64>;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(11)
    }

    #[test]
    fn x_flips_zero() {
        let mut c = Circuit::new(1);
        c.push(Gate::x(0));
        let out = apply(S::zero(1).unwrap(), &c).unwrap();
        assert_eq!(out, S::basis(1, 1).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(S::zero(23), Err(Error::SimulationCap { requested: 23, cap: 22 })));
        let e = S::zero(30).unwrap_err();
        assert_eq!(e.to_string(), "simulation cap exceeded (22 qubits): requested 30");
        assert!(S::zero(22).is_ok());
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let c = Circuit::new(3);
        assert!(matches!(apply(S::zero(2).unwrap(), &c), Err(Error::QubitCountMismatch { .. })));
    }

    #[test]
    fn h_s_relations() {
        let mut s = S::zero(1).unwrap();
        for g in [Gate::h(0), Gate::new(GateKind::S, vec![0]), Gate::new(GateKind::S, vec![0]), Gate::h(0)] {
            s.apply_gate(&g).unwrap();
        }
        // H S S H = H Z H = X
        assert!(s.distance(&S::basis(1, 1).unwrap()).unwrap() < 1e-15);
    }

    fn all_gate_circuit() -> Circuit {
        let mut c = Circuit::new(5);
        c.push(Gate::h(0))
            .push(Gate::new(GateKind::S, vec![1]))
            .push(Gate::new(GateKind::Z, vec![2]))
            .push(Gate::cx(0, 3))
            .push(Gate::new(GateKind::Cz, vec![1, 4]))
            .push(Gate::swap(2, 4))
            .push(Gate::ccx(0, 1, 2))
            .push(Gate::cswap(3, 0, 4))
            .push(Gate::new(GateKind::Sdg, vec![0]))
            .push(Gate::x(4))
            .push(Gate::fanout(1, &[2, 3]))
            .push(Gate::h(3))
            .push(Gate::unfanout(1, &[2]));
        c
    }

    #[test]
    fn circuit_then_inverse_is_identity() {
        let c = all_gate_circuit();
        let roundtrip = c.compose(&c.inverse()).unwrap();
        let mut rng = rng();
        for _ in 0..5 {
            let s = S::random(5, &mut rng).unwrap();
            let out = apply(s.clone(), &roundtrip).unwrap();
            assert!(out.distance(&s).unwrap() < 1e-12);
            assert!((apply(s, &c).unwrap().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn permutation_gates_agree_with_classical_evaluation() {
        let mut c = Circuit::new(5);
        c.push(Gate::cx(0, 3))
            .push(Gate::swap(2, 4))
            .push(Gate::ccx(0, 1, 2))
            .push(Gate::cswap(3, 0, 4))
            .push(Gate::x(4))
            .push(Gate::fanout(1, &[2, 3]));
        for z in 0..32usize {
            let mut bits: Vec<bool> = (0..5).map(|q| (z >> q) & 1 == 1).collect();
            c.eval_classical(&mut bits).unwrap();
            let expected = bits.iter().enumerate().fold(0, |acc, (q, &b)| acc | (b as usize) << q);
            assert_eq!(apply(S::basis(5, z).unwrap(), &c).unwrap(), S::basis(5, expected).unwrap());
        }
    }

    #[test]
    fn expand_cswap_preserves_the_unitary() {
        let mut c = Circuit::new(3);
        c.push(Gate::cswap(0, 1, 2));
        for z in 0..8 {
            let s = S::basis(3, z).unwrap();
            assert_eq!(apply(s.clone(), &c).unwrap(), apply(s, &expand_cswap(&c)).unwrap());
        }
        let big = all_gate_circuit();
        let s = S::random(5, &mut rng()).unwrap();
        let d = apply(s.clone(), &big).unwrap().distance(&apply(s, &expand_cswap(&big)).unwrap()).unwrap();
        assert!(d < 1e-12);
    }

    #[test]
    fn lowered_fanout_matches_on_zeroed_targets() {
        let targets: Vec<usize> = (1..10).collect();
        let mut c = Circuit::new(10);
        c.push(Gate::fanout(0, &targets)).push(Gate::h(4)).push(Gate::h(4)).push(Gate::unfanout(0, &targets));
        let lowered = lower_fanout(&c);
        for src in 0..2 {
            let s = S::basis(10, src).unwrap();
            assert_eq!(apply(s.clone(), &c).unwrap(), apply(s, &lowered).unwrap());
        }
        let mut only_fanout = Circuit::new(10);
        only_fanout.push(Gate::fanout(0, &targets));
        let out = apply(S::basis(10, 1).unwrap(), &lower_fanout(&only_fanout)).unwrap();
        assert_eq!(out, S::basis(10, 1023).unwrap());
    }

    #[test]
    fn tensor_places_high_register_above() {
        let low = S::basis(2, 1).unwrap();
        let high = S::basis(1, 1).unwrap();
        assert_eq!(low.tensor(&high).unwrap(), S::basis(3, 0b101).unwrap());
    }

    #[test]
    fn single_precision_works() {
        let mut s = StateVector::<f32>::zero(2).unwrap();
        s.apply_gate(&Gate::h(0)).unwrap();
        s.apply_gate(&Gate::cx(0, 1)).unwrap();
        assert!((s.probability(3) - 0.5).abs() < 1e-6);
    }

    #[test]
    fn from_amplitudes_checks_length() {
        let z = Complex::new(0.0, 0.0);
        assert!(S::from_amplitudes(vec![z; 3]).is_err());
        assert_eq!(S::from_amplitudes(vec![z; 8]).unwrap().num_qubits(), 3);
    }
}

use num_complex::Complex;

use super::state::{check_cap, StateVector};
use crate::gf2n::{FieldPoly, GFElement};
use crate::{Error, Real, Result};

/// `omega^e` with `omega = exp(2 pi i / modulus)`, `e` taken mod `modulus`.
pub(crate) fn root_of_unity<T: Real>(e: i128, modulus: u64) -> Complex<T> {
    let r = e.rem_euclid(modulus as i128) as f64 / modulus as f64;
    let angle = std::f64::consts::TAU * r;
    Complex::new(T::of(angle.cos()), T::of(angle.sin()))
}

/// Parameters of `psi_k = N^{-1/2} sum_j omega^{-jk} |C_f^j v>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalystSpec {
    pub f: FieldPoly,
    pub k: u64,
    pub v: GFElement,
}

impl CatalystSpec {
    /// Starts the orbit at `v = 1`.
    pub fn new(f: &FieldPoly, k: u64) -> Result<Self> {
        Self::with_start(f, k, GFElement::one(f.degree()))
    }

    pub fn with_start(f: &FieldPoly, k: u64, v: GFElement) -> Result<Self> {
        if k >= f.group_order() {
            return Err(Error::InvalidArgument(format!("k = {k} outside 0..{}", f.group_order())));
        }
        if v.degree() != f.degree() {
            return Err(Error::DegreeMismatch { expected: f.degree(), found: v.degree() });
        }
        if v.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(CatalystSpec { f: f.clone(), k, v })
    }
}

pub fn build_catalyst<T: Real>(spec: &CatalystSpec) -> Result<StateVector<T>> {
    let n = spec.f.degree() as usize;
    check_cap(n)?;
    let modulus = spec.f.group_order();
    let scale = T::one() / T::of_u64(modulus).sqrt();
    let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << n];
    let mut z = spec.v.bits();
    for j in 0..modulus {
        let e = -((j as i128 * spec.k as i128) % modulus as i128);
        amps[z as usize] = root_of_unity::<T>(e, modulus) * scale;
        z = spec.f.mul_alpha_bits(z);
    }
    StateVector::from_amplitudes(amps)
}

/// `psi_k` for `v = 1`.
pub fn catalyst_state<T: Real>(f: &FieldPoly, k: u64) -> Result<StateVector<T>> {
    build_catalyst(&CatalystSpec::new(f, k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2n::{find_primitive, gf_pow};

    fn f3() -> FieldPoly {
        FieldPoly::parse("x^3 + x + 1").unwrap()
    }

    #[test]
    fn k0_is_uniform_on_nonzero_states() {
        let s: StateVector<f64> = catalyst_state(&f3(), 0).unwrap();
        assert_eq!(s.amps()[0], Complex::new(0.0, 0.0));
        for a in &s.amps()[1..] {
            assert!((a - Complex::new(1.0 / 7f64.sqrt(), 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn n3_k1_amplitudes_follow_the_orbit() {
        let f = f3();
        let s: StateVector<f64> = catalyst_state(&f, 1).unwrap();
        for j in 0..7u64 {
            let idx = gf_pow(GFElement::alpha(&f), j, &f).unwrap().bits() as usize;
            let angle = -std::f64::consts::TAU * j as f64 / 7.0;
            let expected = Complex::from_polar(1.0 / 7f64.sqrt(), angle);
            assert!((s.amps()[idx] - expected).norm() < 1e-15, "j = {j}");
        }
    }

    #[test]
    fn starting_vector_moves_the_orbit() {
        let f = find_primitive(4, 5).unwrap();
        let v = GFElement::alpha_pow(&f, 5);
        let shifted: StateVector<f64> = build_catalyst(&CatalystSpec::with_start(&f, 2, v).unwrap()).unwrap();
        let plain: StateVector<f64> = catalyst_state(&f, 2).unwrap();
        // starting at alpha^5 multiplies psi_2 by omega^{10}
        let ratio = plain.inner(&shifted).unwrap();
        assert!((ratio - root_of_unity::<f64>(10, 15)).norm() < 1e-12);
    }

    #[test]
    fn spec_validation() {
        let f = f3();
        assert!(CatalystSpec::new(&f, 7).is_err());
        assert!(matches!(CatalystSpec::with_start(&f, 1, GFElement::zero(3)), Err(Error::ZeroElement)));
        assert!(matches!(
            CatalystSpec::with_start(&f, 1, GFElement::one(4)),
            Err(Error::DegreeMismatch { expected: 3, found: 4 })
        ));
    }

    #[test]
    fn cap_applies() {
        let f = find_primitive(23, 5).unwrap();
        assert!(matches!(catalyst_state::<f64>(&f, 1), Err(Error::SimulationCap { .. })));
    }
}

//! Basis permutations and diagonal phases acting on whole field registers.

use super::catalyst::root_of_unity;
use super::state::{check_cap, StateVector};
use crate::gf2n::{companion_matrix, frobenius_matrix, BinMatrix, DlogTable, FieldPoly};
use crate::{Error, Real, Result};

fn expect_qubits<T: Real>(state: &StateVector<T>, expected: usize) -> Result<()> {
    if state.num_qubits() != expected {
        return Err(Error::QubitCountMismatch { left: state.num_qubits(), right: expected });
    }
    Ok(())
}

fn apply_matrix<T: Real>(state: &mut StateVector<T>, m: &BinMatrix) -> Result<()> {
    expect_qubits(state, m.dim())?;
    state.permute(|i| m.mul_vec(i as u64) as usize);
    Ok(())
}

/// `U_f |z> = |C_f z>` on an `n`-qubit state.
pub fn apply_uf<T: Real>(state: &mut StateVector<T>, f: &FieldPoly) -> Result<()> {
    apply_matrix(state, &companion_matrix(f))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// `U_F |g> = |g^2>` (forward) or its inverse.
pub fn apply_frobenius<T: Real>(state: &mut StateVector<T>, f: &FieldPoly, dir: Direction) -> Result<()> {
    let m = frobenius_matrix(f);
    let m = match dir {
        Direction::Forward => m,
        Direction::Inverse => m.inverse()?,
    };
    apply_matrix(state, &m)
}

fn mul_registers<T: Real>(state: &mut StateVector<T>, f: &FieldPoly, invert: bool) -> Result<()> {
    let n = f.degree() as usize;
    check_cap(2 * n)?;
    expect_qubits(state, 2 * n)?;
    let mask = (1usize << n) - 1;
    let modulus = f.group_order();
    let factor: Vec<u64> = (0..=mask as u64)
        .map(|g| match (g, invert) {
            (0, _) => 0,
            (g, false) => g,
            (g, true) => f.pow_bits(g, modulus - 1),
        })
        .collect();
    state.permute(|i| {
        let (g, h) = (i & mask, i >> n);
        if g == 0 {
            i
        } else {
            g | (f.mul_bits(factor[g], h as u64) as usize) << n
        }
    });
    Ok(())
}

/// `U_mul |g>|h> = |g>|g h>` on two `n`-qubit registers (`g` low, `h`
/// high); the identity when `g = 0`.
pub fn apply_umul<T: Real>(state: &mut StateVector<T>, f: &FieldPoly) -> Result<()> {
    mul_registers(state, f, false)
}

/// `U_mul^dagger |g>|h> = |g>|g^{-1} h>`.
pub fn apply_umul_inverse<T: Real>(state: &mut StateVector<T>, f: &FieldPoly) -> Result<()> {
    mul_registers(state, f, true)
}

/// `U_m |alpha^j> = omega^{-jm} |alpha^j>`, with `j` read from a discrete
/// log table; `|0>` is left alone.
pub fn apply_phase_dlog<T: Real>(state: &mut StateVector<T>, f: &FieldPoly, m: i64) -> Result<()> {
    expect_qubits(state, f.degree() as usize)?;
    let table = DlogTable::new(f)?;
    let modulus = f.group_order();
    for (z, a) in state.amps_mut().iter_mut().enumerate().skip(1) {
        let j = table.log_bits(z as u64)?;
        *a = *a * root_of_unity::<T>(-(j as i128) * m as i128, modulus);
    }
    Ok(())
}

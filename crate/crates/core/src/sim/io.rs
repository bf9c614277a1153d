//! Binary state files: the magic `QSTV`, a little-endian `u32` version (1),
//! a little-endian `u32` qubit count, then `2^q` pairs of little-endian
//! `f64` (re, im).

use std::io::{Read, Write};

use num_complex::Complex;

use super::state::{check_cap, StateVector};
use crate::{Error, Real, Result};

pub const STATE_MAGIC: [u8; 4] = *b"QSTV";
pub const STATE_VERSION: u32 = 1;

pub fn write_state<T: Real, W: Write>(state: &StateVector<T>, mut w: W) -> Result<()> {
    w.write_all(&STATE_MAGIC)?;
    w.write_all(&STATE_VERSION.to_le_bytes())?;
    w.write_all(&(state.num_qubits() as u32).to_le_bytes())?;
    for a in state.amps() {
        w.write_all(&a.re.to_f64_lossy().to_le_bytes())?;
        w.write_all(&a.im.to_f64_lossy().to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

fn read_array<const N: usize>(r: &mut impl Read) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf).map_err(|e| match e.kind() {
        std::io::ErrorKind::UnexpectedEof => Error::StateFormat("truncated state file".into()),
        _ => Error::Io(e),
    })?;
    Ok(buf)
}

pub fn read_state<T: Real, R: Read>(mut r: R) -> Result<StateVector<T>> {
    if read_array::<4>(&mut r)? != STATE_MAGIC {
        return Err(Error::StateFormat("bad magic".into()));
    }
    let version = u32::from_le_bytes(read_array(&mut r)?);
    if version != STATE_VERSION {
        return Err(Error::StateFormat(format!("unsupported version {version}")));
    }
    let q = u32::from_le_bytes(read_array(&mut r)?) as usize;
    check_cap(q)?;
    let mut amps = Vec::with_capacity(1 << q);
    for _ in 0..1usize << q {
        let re = f64::from_le_bytes(read_array(&mut r)?);
        let im = f64::from_le_bytes(read_array(&mut r)?);
        amps.push(Complex::new(T::of(re), T::of(im)));
    }
    if r.read(&mut [0u8; 1])? != 0 {
        return Err(Error::StateFormat("trailing bytes after amplitudes".into()));
    }
    StateVector::from_amplitudes(amps)
}

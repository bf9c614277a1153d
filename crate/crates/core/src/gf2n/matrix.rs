use std::fmt;

use super::poly::{degree_mask, FieldPoly};
use super::GFElement;
use crate::{Error, Result};

/// Iteration cap for orders that cannot be reduced via `2^n - 1`.
pub const ORDER_ITERATION_CAP: u64 = 1 << 20;

/// Square `n x n` matrix over F2, `n <= 64`. Row `i`, bit `j` is entry `(i, j)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinMatrix {
    n: usize,
    rows: Vec<u64>,
}

impl BinMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!((1..=64).contains(&n), "dimension {n} outside 1..=64");
        BinMatrix { n, rows: vec![0; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.rows[i] = 1 << i;
        }
        m
    }

    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if !(1..=64).contains(&n) {
            return Err(Error::InvalidArgument(format!("matrix dimension {n} outside 1..=64")));
        }
        if rows.iter().any(|r| r & !degree_mask(n as u32) != 0) {
            return Err(Error::InvalidArgument("row has bits beyond dimension".into()));
        }
        Ok(BinMatrix { n, rows })
    }

    /// Builds the matrix whose column `j` is `cols[j]`.
    pub fn from_columns(cols: &[u64]) -> Result<Self> {
        let n = cols.len();
        let mut rows = vec![0u64; n];
        for (j, &c) in cols.iter().enumerate() {
            for (i, row) in rows.iter_mut().enumerate() {
                *row |= ((c >> i) & 1) << j;
            }
        }
        Self::from_rows(rows)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.rows[i] >> j) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        if v {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    pub fn column(&self, j: usize) -> u64 {
        self.rows.iter().enumerate().fold(0, |acc, (i, r)| acc | ((r >> j) & 1) << i)
    }

    /// `M v` with `v` as a bit vector.
    pub fn mul_vec(&self, v: u64) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | (((r & v).count_ones() & 1) as u64) << i)
    }

    pub fn mul(&self, other: &BinMatrix) -> BinMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        // row i of AB is the XOR of rows j of B where A[i][j] = 1
        let rows = self
            .rows
            .iter()
            .map(|&a| {
                (0..self.n).filter(|&j| (a >> j) & 1 == 1).fold(0, |acc, j| acc ^ other.rows[j])
            })
            .collect();
        BinMatrix { n: self.n, rows }
    }

    pub fn pow(&self, mut e: u64) -> BinMatrix {
        let mut acc = Self::identity(self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, &r)| r == 1 << i)
    }

    /// Gauss-Jordan inverse over F2.
    pub fn inverse(&self) -> Result<BinMatrix> {
        let n = self.n;
        let mut a = self.rows.clone();
        let mut inv = Self::identity(n).rows;
        for col in 0..n {
            let pivot = (col..n).find(|&r| (a[r] >> col) & 1 == 1).ok_or(Error::SingularMatrix)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && (a[r] >> col) & 1 == 1 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Ok(BinMatrix { n, rows: inv })
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, &r)| r & ((1u64 << i) - 1) == 0)
    }
}

impl fmt::Debug for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinMatrix({}x{})", self.n, self.n)?;
        for i in 0..self.n {
            let row: String = (0..self.n).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// Multiply-by-`alpha` matrix: subdiagonal ones, last column `(f_0, ..., f_{n-1})`.
pub fn companion_matrix(f: &FieldPoly) -> BinMatrix {
    let n = f.degree() as usize;
    let mut m = BinMatrix::zeros(n);
    for i in 0..n {
        if i > 0 {
            m.set(i, i - 1, true);
        }
        m.set(i, n - 1, f.coeff(i as u32));
    }
    m
}

/// Splits `C_f` into the cyclic shift `e_j -> e_{j+1 mod n}` times an upper
/// unitriangular matrix whose last column is `(f_1, ..., f_{n-1}, f_0)`.
pub fn companion_decompose(f: &FieldPoly) -> (BinMatrix, BinMatrix) {
    let n = f.degree() as usize;
    let mut perm = BinMatrix::zeros(n);
    for j in 0..n {
        perm.set((j + 1) % n, j, true);
    }
    let mut upper = BinMatrix::identity(n);
    for i in 0..n - 1 {
        upper.set(i, n - 1, f.coeff(i as u32 + 1));
    }
    upper.set(n - 1, n - 1, f.coeff(0));
    (perm, upper)
}

/// Matrix of the squaring map: column `j` holds `alpha^(2j) mod f`.
pub fn frobenius_matrix(f: &FieldPoly) -> BinMatrix {
    let n = f.degree();
    let cols: Vec<u64> = (0..n as u64).map(|j| GFElement::alpha_pow(f, 2 * j).bits()).collect();
    BinMatrix::from_columns(&cols).expect("square columns")
}

/// Smallest `t >= 1` with `M^t = I`.
///
/// When `M^(2^n - 1) = I` (as for companion matrices of primitive
/// polynomials) the order is found by stripping prime factors of `2^n - 1`;
/// otherwise powers are iterated up to [`ORDER_ITERATION_CAP`].
pub fn matrix_order(m: &BinMatrix) -> Result<u64> {
    if !m.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let n = m.dim() as u32;
    let big = degree_mask(n);
    if m.pow(big).is_identity() {
        let mut t = big;
        for p in super::numtheory::prime_factors(big)? {
            while t % p == 0 && m.pow(t / p).is_identity() {
                t /= p;
            }
        }
        return Ok(t);
    }
    let mut acc = m.clone();
    for t in 1..=ORDER_ITERATION_CAP {
        if acc.is_identity() {
            return Ok(t);
        }
        acc = acc.mul(m);
    }
    Err(Error::OrderCapExceeded(ORDER_ITERATION_CAP))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2n::find_primitive;

    fn brute_order(m: &BinMatrix) -> u64 {
        let mut acc = m.clone();
        let mut t = 1;
        while !acc.is_identity() {
            acc = acc.mul(m);
            t += 1;
        }
        t
    }

    fn f3() -> FieldPoly {
        FieldPoly::parse("x^3 + x + 1").unwrap()
    }

    #[test]
    fn companion_n3_rows() {
        let c = companion_matrix(&f3());
        assert_eq!(c, BinMatrix::from_rows(vec![0b100, 0b101, 0b010]).unwrap());
        assert_eq!(c.mul_vec(1), 0b10);
    }

    #[test]
    fn decomposition_n3() {
        let (perm, upper) = companion_decompose(&f3());
        // rows [1,0,1], [0,1,0], [0,0,1]
        assert_eq!(upper, BinMatrix::from_rows(vec![0b101, 0b010, 0b100]).unwrap());
        assert!(upper.is_upper_triangular());
        assert_eq!(perm.mul(&upper), companion_matrix(&f3()));
    }

    #[test]
    fn decomposition_product_and_q_set_for_all_small_polys() {
        for n in 2..=16 {
            let f = find_primitive(n, 5).unwrap();
            let (perm, upper) = companion_decompose(&f);
            assert_eq!(perm.mul(&upper), companion_matrix(&f));
            let last = upper.column(n as usize - 1);
            let targets: Vec<usize> = (0..n as usize - 1).filter(|&i| (last >> i) & 1 == 1).collect();
            assert_eq!(targets, f.q_set());
        }
    }

    #[test]
    fn companion_orders() {
        assert_eq!(matrix_order(&BinMatrix::identity(5)).unwrap(), 1);
        assert_eq!(matrix_order(&companion_matrix(&f3())).unwrap(), 7);
        for n in 3..=8 {
            let c = companion_matrix(&find_primitive(n, 5).unwrap());
            assert!(c.pow((1 << n) - 1).is_identity());
        }
        let f36 = FieldPoly::parse("x^36 + x^11 + 1").unwrap();
        assert_eq!(matrix_order(&companion_matrix(&f36)).unwrap(), (1 << 36) - 1);
        assert!(matches!(matrix_order(&BinMatrix::zeros(3)), Err(Error::SingularMatrix)));
    }

    #[test]
    fn companion_action_matches_alpha_powers() {
        for n in 3..=10 {
            let f = find_primitive(n, 5).unwrap();
            let c = companion_matrix(&f);
            let mut v = 1u64;
            for j in 0..(1u64 << n) {
                assert_eq!(v, GFElement::alpha_pow(&f, j).bits());
                v = c.mul_vec(v);
            }
        }
    }

    #[test]
    fn frobenius_n3_columns() {
        let fr = frobenius_matrix(&f3());
        assert_eq!(fr.column(0), 0b001);
        assert_eq!(fr.column(1), 0b100);
        assert_eq!(fr.column(2), 0b110);
        assert_eq!(fr.mul_vec(1), 1);
    }

    #[test]
    fn frobenius_order_and_conjugation() {
        for n in 3..=8u32 {
            let f = find_primitive(n, 5).unwrap();
            let fr = frobenius_matrix(&f);
            assert_eq!(matrix_order(&fr).unwrap(), n as u64);
            assert_eq!(brute_order(&fr), n as u64);
            let c = companion_matrix(&f);
            assert_eq!(fr.mul(&c).mul(&fr.inverse().unwrap()), c.mul(&c));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let c = companion_matrix(&find_primitive(13, 5).unwrap());
        assert!(c.mul(&c.inverse().unwrap()).is_identity());
    }
}

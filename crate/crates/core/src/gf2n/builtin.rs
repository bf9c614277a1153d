use super::{certify_primitive, find_primitive, BinaryPoly, FieldPoly};
use crate::Result;

/// Shipped polynomials: search results for `3 <= n <= 20` plus the n = 27
/// pentanomial and n = 36 trinomial used for the large-precision examples.
/// Degree 2 is left out: its shift is a single SWAP, so the controlled
/// construction is one Toffoli layer shallower than for n >= 3.
const TABLE: &[(u32, &str)] = &[
    (3, "x^3 + x + 1"),
    (4, "x^4 + x + 1"),
    (5, "x^5 + x^2 + 1"),
    (6, "x^6 + x + 1"),
    (7, "x^7 + x + 1"),
    (8, "x^8 + x^4 + x^3 + x^2 + 1"),
    (9, "x^9 + x^4 + 1"),
    (10, "x^10 + x^3 + 1"),
    (11, "x^11 + x^2 + 1"),
    (12, "x^12 + x^6 + x^4 + x + 1"),
    (13, "x^13 + x^4 + x^3 + x + 1"),
    (14, "x^14 + x^5 + x^3 + x + 1"),
    (15, "x^15 + x + 1"),
    (16, "x^16 + x^5 + x^3 + x^2 + 1"),
    (17, "x^17 + x^3 + 1"),
    (18, "x^18 + x^7 + 1"),
    (19, "x^19 + x^5 + x^2 + x + 1"),
    (20, "x^20 + x^3 + 1"),
    (27, "x^27 + x^20 + x^13 + x^7 + 1"),
    (36, "x^36 + x^11 + 1"),
];

pub fn builtin_degrees() -> impl Iterator<Item = u32> {
    TABLE.iter().map(|&(n, _)| n)
}

/// The shipped polynomial of degree `n`, if any.
pub fn builtin_poly(n: u32) -> Option<FieldPoly> {
    TABLE.iter().find(|&&(d, _)| d == n).map(|&(_, text)| {
        certify_primitive(BinaryPoly::parse(text).expect("table entry parses"))
            .expect("table entry is primitive")
    })
}

/// Built-in polynomial when available, otherwise the deterministic search
/// result with up to five terms.
pub fn default_poly(n: u32) -> Result<FieldPoly> {
    match builtin_poly(n) {
        Some(f) => Ok(f),
        None => find_primitive(n, 5),
    }
}

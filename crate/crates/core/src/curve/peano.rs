//! Digit-pair state machine for the 2-D ternary serpentine curve.
//!
//! The parameter is expanded in base 9; each digit `w = 3a + b` selects a
//! column digit `a` and a row digit `b`. Writing `k(x) = 2 - x` for the
//! ternary complement, the coordinate digits are
//!
//! ```text
//! x_i = k^(b_1 + ... + b_(i-1))(a_i)
//! y_i = k^(a_1 + ... + a_i)(b_i)
//! ```
//!
//! so the curve snakes up the first column of every 3x3 block, down the
//! second and up the third. It starts at `(0, 0)` and ends at `(1, 1)`,
//! and every cell is crossed corner to opposite corner.

use super::digits::Tail;
use super::{CurvePoint, ExactCoord};

fn complement(digit: u32, times: u32) -> u32 {
    if times % 2 == 1 {
        2 - digit
    } else {
        digit
    }
}

/// Exact evaluation from a base-9 digit expansion.
pub(super) fn eval(digits: &[u8], tail: Tail) -> CurvePoint {
    let (x, y, pa, pb) = advance(digits);
    // Entry corner: all-zero continuation contributes the repeating digit
    // `k^parity(0)`, i.e. the corner bit equals the parity. Exit corner:
    // all-two continuation flips it.
    let (cx, cy) = match tail {
        Tail::Zero | Tail::Interior => (pb as u64, pa as u64),
        Tail::Full => (1 - pb as u64, 1 - pa as u64),
    };
    let exp = digits.len() as u32;
    CurvePoint {
        coords: vec![
            ExactCoord { numer: x + cx, base: 3, exp },
            ExactCoord { numer: y + cy, base: 3, exp },
        ],
    }
}

/// Integer grid coordinates of the cell reached by a digit expansion.
pub(super) fn cell_coords(digits: &[u8]) -> Vec<u64> {
    let (x, y, _, _) = advance(digits);
    vec![x, y]
}

fn advance(digits: &[u8]) -> (u64, u64, u32, u32) {
    let mut pa = 0u32; // parity of consumed column digits
    let mut pb = 0u32; // parity of consumed row digits
    let mut x = 0u64;
    let mut y = 0u64;
    for &w in digits {
        let a = (w / 3) as u32;
        let b = (w % 3) as u32;
        let xd = complement(a, pb);
        pa = (pa + a) % 2;
        let yd = complement(b, pa);
        pb = (pb + b) % 2;
        x = x * 3 + xd as u64;
        y = y * 3 + yd as u64;
    }
    (x, y, pa, pb)
}

/// Visit rank of the cell with the given grid coordinates at resolution
/// `3^depth` (inverse of the traversal).
pub(super) fn index_from_coords(coords: &[u64], depth: u32) -> u128 {
    let mut pa = 0u32;
    let mut pb = 0u32;
    let mut h: u128 = 0;
    for level in (0..depth).rev() {
        let p = 3u64.pow(level);
        let xd = ((coords[0] / p) % 3) as u32;
        let yd = ((coords[1] / p) % 3) as u32;
        let a = complement(xd, pb);
        pa = (pa + a) % 2;
        let b = complement(yd, pa);
        pb = (pb + b) % 2;
        h = h * 9 + (3 * a + b) as u128;
    }
    h
}

//! Gray-code / rotation state machine for the binary space-filling curve
//! in dimensions 2 and 3.
//!
//! Each refinement level consumes one digit `w` in `[0, 2^n)` of the
//! parameter expansion. The machine keeps an entry corner `e` (an n-bit
//! label) and an axis offset `d`; the geometric subcell visited in
//! traversal position `w` is
//!
//! ```text
//! label(w) = rol(gray(w), d + 1) ^ e
//! ```
//!
//! and the state recursion is `e ^= rol(entry(w), d + 1)`,
//! `d = (d + dir(w) + 1) mod n`. With the initial state `(e, d) = (0, 0)`
//! and coordinate `j` stored in bit `j`, the dimension-2 instance visits
//! the quadrants lower-left, upper-left, upper-right, lower-right - the
//! classical traversal that starts in `(0, 0)` and ends in `(1, 0)`.

use super::digits::Tail;
use super::{CurveKind, CurvePoint, ExactCoord};

fn gray(w: u32) -> u32 {
    w ^ (w >> 1)
}

fn gray_inv(mut g: u32) -> u32 {
    let mut mask = g >> 1;
    while mask != 0 {
        g ^= mask;
        mask >>= 1;
    }
    g
}

/// Rotate the low `n` bits of `b` left by `k`.
fn rol(b: u32, k: u32, n: u32) -> u32 {
    let k = k % n;
    let mask = (1u32 << n) - 1;
    if k == 0 {
        b & mask
    } else {
        ((b << k) | (b >> (n - k))) & mask
    }
}

/// Rotate the low `n` bits of `b` right by `k`.
fn ror(b: u32, k: u32, n: u32) -> u32 {
    let k = k % n;
    rol(b, n - k, n)
}

fn trailing_ones(w: u32) -> u32 {
    (!w).trailing_zeros()
}

/// Entry corner label of the subcell in traversal position `w`.
fn entry_label(w: u32) -> u32 {
    if w == 0 {
        0
    } else {
        gray(2 * ((w - 1) / 2))
    }
}

/// Axis along which the traversal leaves the subcell in position `w`.
fn dir_incr(w: u32, n: u32) -> u32 {
    if w == 0 {
        0
    } else if w % 2 == 0 {
        trailing_ones(w - 1) % n
    } else {
        trailing_ones(w) % n
    }
}

#[derive(Clone, Copy)]
struct State {
    e: u32,
    d: u32,
}

impl State {
    fn initial() -> Self {
        State { e: 0, d: 0 }
    }

    /// Geometric orthant label of the child in traversal position `w`.
    fn child_label(&self, w: u32, n: u32) -> u32 {
        rol(gray(w), self.d + 1, n) ^ self.e
    }

    /// Traversal position of the child with geometric orthant label `l`.
    fn child_rank(&self, label: u32, n: u32) -> u32 {
        gray_inv(ror(label ^ self.e, self.d + 1, n))
    }

    fn descend(&mut self, w: u32, n: u32) {
        self.e ^= rol(entry_label(w), self.d + 1, n);
        self.d = (self.d + dir_incr(w, n) + 1) % n;
    }

    /// Corner label toward which the remaining curve converges inside the
    /// current cell.
    fn tail_corner(&self, tail: Tail, n: u32) -> u32 {
        match tail {
            // Continuing with all-zero digits appends the entry label forever.
            Tail::Zero | Tail::Interior => self.e,
            // Continuing with maximal digits converges to the exit corner.
            Tail::Full => rol(gray((1 << n) - 1), self.d + 1, n) ^ self.e,
        }
    }
}

/// Exact evaluation from a digit-group expansion.
pub(super) fn eval(kind: CurveKind, digits: &[u8], tail: Tail) -> CurvePoint {
    let n = kind.dim() as u32;
    let mut state = State::initial();
    let mut coords = vec![0u64; n as usize];
    for &w in digits {
        let label = state.child_label(w as u32, n);
        for (j, c) in coords.iter_mut().enumerate() {
            *c = (*c << 1) | ((label >> j) & 1) as u64;
        }
        state.descend(w as u32, n);
    }
    let corner = state.tail_corner(tail, n);
    let exp = digits.len() as u32;
    let coords = coords
        .iter()
        .enumerate()
        .map(|(j, &c)| ExactCoord { numer: c + ((corner >> j) & 1) as u64, base: 2, exp })
        .collect();
    CurvePoint { coords }
}

/// Integer grid coordinates of the cell reached by a digit expansion.
pub(super) fn cell_coords(kind: CurveKind, digits: &[u8]) -> Vec<u64> {
    let n = kind.dim() as u32;
    let mut state = State::initial();
    let mut coords = vec![0u64; n as usize];
    for &w in digits {
        let label = state.child_label(w as u32, n);
        for (j, c) in coords.iter_mut().enumerate() {
            *c = (*c << 1) | ((label >> j) & 1) as u64;
        }
        state.descend(w as u32, n);
    }
    coords
}

/// Visit rank of the cell with the given grid coordinates at resolution
/// `2^depth` (inverse of the traversal).
pub(super) fn index_from_coords(kind: CurveKind, coords: &[u64], depth: u32) -> u128 {
    let n = kind.dim() as u32;
    let mut state = State::initial();
    let mut h: u128 = 0;
    for level in (0..depth).rev() {
        let mut label = 0u32;
        for (j, &c) in coords.iter().enumerate() {
            label |= (((c >> level) & 1) as u32) << j;
        }
        let w = state.child_rank(label, n);
        h = (h << n) | w as u128;
        state.descend(w, n);
    }
    h
}

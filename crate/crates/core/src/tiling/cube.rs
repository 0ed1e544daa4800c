//! Space-filling parametrizations of `[0,1]^d` for every finite `d`.
//!
//! Dimensions 2 and 3 are the exact binary curves from the curve layer.
//! Higher dimensions are built recursively: write `d = a + b` with
//! `a = ceil(d/2)`, run the planar curve, and feed its two coordinates to
//! the curves for dimensions `a` and `b`. Dimension 1 is the identity
//! map. Every evaluation and inverse lookup stays in exact rational
//! arithmetic, so a located parameter interval provably lands inside its
//! target cell.

use crate::curve::{self, CellAddress, CurveError, CurveKind, MAX_DEPTH};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// Binary digits of the curve parameter consumed per unit of
/// per-coordinate depth.
fn unit_len(dim: usize) -> u32 {
    match dim {
        1 => 1,
        2 => 2,
        3 => 3,
        d => 2 * unit_len(d.div_ceil(2)),
    }
}

fn split(dim: usize) -> (usize, usize) {
    let a = dim.div_ceil(2);
    (a, dim - a)
}

/// Deepest per-coordinate resolution supported in dimension `dim` by the
/// exact machinery (0 when the dimension is not representable at all).
pub fn max_coord_depth(dim: usize) -> u32 {
    match dim {
        0 => 0,
        1..=3 => MAX_DEPTH,
        d => MAX_DEPTH / unit_len(d.div_ceil(2)),
    }
}

fn check(dim: usize, depth: u32) -> Result<(), CurveError> {
    if dim == 0 {
        return Err(CurveError::UnsupportedDimension { dim: 0 });
    }
    if depth == 0 {
        return Err(CurveError::InvalidDepth);
    }
    let max = max_coord_depth(dim);
    if depth > max {
        return Err(CurveError::DepthOverflow { depth, max });
    }
    Ok(())
}

/// Evaluate the dimension-`dim` cube curve at `t ∈ [0, 1]`, resolving
/// every coordinate to `depth` base-2 digits.
pub fn cube_eval(
    dim: usize,
    t: &BigRational,
    depth: u32,
) -> Result<Vec<BigRational>, CurveError> {
    check(dim, depth)?;
    if t.is_negative() || *t > BigRational::one() {
        return Err(CurveError::ParamOutOfRange);
    }
    Ok(eval_rec(dim, t, depth))
}

fn eval_rec(dim: usize, t: &BigRational, depth: u32) -> Vec<BigRational> {
    match dim {
        1 => vec![t.clone()],
        2 | 3 => {
            let kind = if dim == 2 { CurveKind::Hilbert2 } else { CurveKind::Hilbert3 };
            let point = curve::eval_rational(kind, t, depth).expect("validated");
            point.coords.iter().map(|c| c.to_rational()).collect()
        }
        d => {
            let (a, b) = split(d);
            let m = depth * unit_len(a);
            let plane =
                curve::eval_rational(CurveKind::Hilbert2, t, m).expect("validated");
            let x = plane.coords[0].to_rational();
            let y = plane.coords[1].to_rational();
            let mut out = eval_rec(a, &x, depth);
            out.extend(eval_rec(b, &y, depth));
            out
        }
    }
}

/// Curve value at `t = 1`: `(1)` in dimension 1, the unit vector `e_1`
/// in every higher dimension.
pub fn end_corner(dim: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::from(BigInt::from(0)); dim];
    out[0] = BigRational::one();
    out
}

/// Aligned binary interval `[numer, numer + 1] / 2^bits` of curve
/// parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamInterval {
    pub numer: u128,
    pub bits: u32,
}

impl ParamInterval {
    pub fn lower(&self) -> BigRational {
        BigRational::new(self.numer.into(), BigInt::one() << self.bits)
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new((self.numer + 1).into(), BigInt::one() << self.bits)
    }
}

/// Parameter interval whose curve image lies inside the closed grid cell
/// with the given per-coordinate integer coordinates at resolution
/// `2^depth`.
pub fn locate_cell(
    dim: usize,
    cell: &[u64],
    depth: u32,
) -> Result<ParamInterval, CurveError> {
    check(dim, depth)?;
    if cell.len() != dim {
        return Err(CurveError::InvalidCell {
            reason: format!("expected {dim} coordinates, got {}", cell.len()),
        });
    }
    let side = 1u64 << depth;
    if let Some(&c) = cell.iter().find(|&&c| c >= side) {
        return Err(CurveError::InvalidCell {
            reason: format!("grid coordinate {c} out of range [0, {side})"),
        });
    }
    Ok(locate_rec(dim, cell, depth))
}

fn locate_rec(dim: usize, cell: &[u64], depth: u32) -> ParamInterval {
    match dim {
        1 => ParamInterval { numer: cell[0] as u128, bits: depth },
        2 | 3 => {
            let kind = if dim == 2 { CurveKind::Hilbert2 } else { CurveKind::Hilbert3 };
            let addr = CellAddress::from_grid_coords(kind, cell, depth).expect("validated");
            let rank = curve::cell_rank(&addr).expect("validated");
            ParamInterval { numer: rank, bits: depth * dim as u32 }
        }
        d => {
            let (a, b) = split(d);
            let ia = locate_rec(a, &cell[..a], depth);
            let ib = locate_rec(b, &cell[a..], depth);
            // Refine both intervals to the finer scale; the left-aligned
            // subinterval keeps the containment guarantee.
            let m = ia.bits.max(ib.bits);
            let x = (ia.numer << (m - ia.bits)) as u64;
            let y = (ib.numer << (m - ib.bits)) as u64;
            let addr = CellAddress::from_grid_coords(CurveKind::Hilbert2, &[x, y], m)
                .expect("in range");
            let rank = curve::cell_rank(&addr).expect("validated");
            ParamInterval { numer: rank, bits: 2 * m }
        }
    }
}

//! Exact evaluation of classical space-filling curves on the unit cube.
//!
//! Supported curves:
//!
//! * Hilbert curve in dimensions 2 and 3 (Gray-code / rotation state
//!   machine over binary digit groups),
//! * the ternary serpentine curve in dimension 2 (digit-pair map with
//!   parity complements).
//!
//! All arithmetic is exact: parameters are rationals whose base-B digit
//! groups drive the state machine, and evaluation returns points with
//! coordinates of the form `numer / base^depth`. Floating point never
//! enters this module.
//!
//! Conventions frozen here and relied on by the tiling layer:
//!
//! * every curve starts at the all-zero corner;
//! * the 2-D Hilbert curve visits the quadrants lower-left, upper-left,
//!   upper-right, lower-right and ends at `(1, 0)`;
//! * the 3-D Hilbert curve ends at `(1, 0, 0)`;
//! * the ternary curve ends at `(1, 1)`;
//! * cell digits are geometric orthant labels: bit `j` (binary curves) or
//!   base-3 digit pair `x + 3*y` (ternary curve) of the subcell at each
//!   refinement level, most significant level first.

mod digits;
mod hilbert;
mod peano;

use num_bigint::{BigUint, ToBigInt};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use digits::{DigitStream, Tail};

/// Hard cap on refinement depth so that every intermediate quantity fits
/// in built-in integer types.
pub const MAX_DEPTH: u32 = 32;

/// Errors for curve evaluation and cell addressing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    /// Only dimensions 2 and 3 are supported for the binary curve.
    #[error("unsupported dimension {dim}: binary curves exist here for dim 2 and 3")]
    UnsupportedDimension { dim: u32 },
    /// Depth exceeds the exact-arithmetic bound.
    #[error("depth {depth} exceeds the maximum exact depth {max}")]
    DepthOverflow { depth: u32, max: u32 },
    /// Depth must be at least 1 for cell-level operations.
    #[error("depth must be a positive integer")]
    InvalidDepth,
    /// A cell digit lies outside `[0, branching)` or the digit list is empty.
    #[error("invalid cell: {reason}")]
    InvalidCell { reason: String },
    /// The curve parameter lies outside `[0, 1]`.
    #[error("curve parameter must lie in [0, 1]")]
    ParamOutOfRange,
}

/// Identifies one of the supported unit-cube curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveKind {
    /// 2-D Hilbert curve, base 2, 4 subcells per level.
    Hilbert2,
    /// 3-D Hilbert curve, base 2, 8 subcells per level.
    Hilbert3,
    /// 2-D ternary serpentine curve, base 3, 9 subcells per level.
    Peano,
}

impl CurveKind {
    /// Ambient dimension of the image cube.
    pub fn dim(self) -> usize {
        match self {
            CurveKind::Hilbert2 | CurveKind::Peano => 2,
            CurveKind::Hilbert3 => 3,
        }
    }

    /// Radix of the coordinate expansion (2 for Hilbert, 3 for ternary).
    pub fn base(self) -> u32 {
        match self {
            CurveKind::Hilbert2 | CurveKind::Hilbert3 => 2,
            CurveKind::Peano => 3,
        }
    }

    /// Number of subcells (parameter digits) consumed per refinement
    /// level: `base^dim`.
    pub fn branching(self) -> u32 {
        match self {
            CurveKind::Hilbert2 => 4,
            CurveKind::Hilbert3 => 8,
            CurveKind::Peano => 9,
        }
    }

    /// Binary curve for the requested dimension.
    pub fn binary(dim: u32) -> Result<Self, CurveError> {
        match dim {
            2 => Ok(CurveKind::Hilbert2),
            3 => Ok(CurveKind::Hilbert3),
            _ => Err(CurveError::UnsupportedDimension { dim }),
        }
    }

    /// Exact curve value at `t = 1`: the far corner where the traversal
    /// finishes.
    pub fn end_corner(self) -> Vec<u8> {
        match self {
            CurveKind::Hilbert2 => vec![1, 0],
            CurveKind::Hilbert3 => vec![1, 0, 0],
            CurveKind::Peano => vec![1, 1],
        }
    }
}

/// Canonical parameter `numerator / branching^depth` in `[0, 1]`.
///
/// Canonical form divides out whole factors of the branching number, so
/// two parameters with equal value have equal fields. `1` is stored as
/// `numerator = 1, depth = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicParam {
    numerator: u128,
    depth: u32,
}

impl DyadicParam {
    /// Build a canonical parameter for the given curve. Fails when the
    /// depth exceeds [`MAX_DEPTH`] or the value exceeds 1.
    pub fn new(numerator: u128, depth: u32, kind: CurveKind) -> Result<Self, CurveError> {
        if depth > MAX_DEPTH {
            return Err(CurveError::DepthOverflow { depth, max: MAX_DEPTH });
        }
        let b = kind.branching() as u128;
        if numerator > b.pow(depth) {
            return Err(CurveError::ParamOutOfRange);
        }
        let mut num = numerator;
        let mut depth = depth;
        while depth > 0 && num % b == 0 {
            num /= b;
            depth -= 1;
        }
        Ok(DyadicParam { numerator: num, depth })
    }

    pub fn zero() -> Self {
        DyadicParam { numerator: 0, depth: 0 }
    }

    pub fn one() -> Self {
        DyadicParam { numerator: 1, depth: 0 }
    }

    pub fn numerator(&self) -> u128 {
        self.numerator
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// The parameter as an exact rational.
    pub fn to_rational(&self, kind: CurveKind) -> BigRational {
        let den = BigUint::from(kind.branching()).pow(self.depth);
        BigRational::new(self.numerator.into(), BigUint::to_bigint(&den).unwrap())
    }

    pub fn to_f64(&self, kind: CurveKind) -> f64 {
        self.numerator as f64 / (kind.branching() as f64).powi(self.depth as i32)
    }
}

/// Exact coordinate `numer / base^exp` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExactCoord {
    pub numer: u64,
    pub base: u32,
    pub exp: u32,
}

impl ExactCoord {
    pub fn to_f64(self) -> f64 {
        self.numer as f64 / (self.base as f64).powi(self.exp as i32)
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(
            BigUint::from(self.numer).to_bigint().unwrap(),
            BigUint::from(self.base).pow(self.exp).to_bigint().unwrap(),
        )
    }
}

/// Exact image point of a curve evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvePoint {
    pub coords: Vec<ExactCoord>,
}

impl CurvePoint {
    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.to_f64()).collect()
    }

    /// Euclidean distance to another exact point, in floating point.
    pub fn distance_to(&self, other: &CurvePoint) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a.to_f64() - b.to_f64()).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// Address of one subcell of side `base^-depth`, as geometric orthant
/// labels per refinement level (most significant level first).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellAddress {
    pub kind: CurveKind,
    pub digits: Vec<u8>,
}

impl CellAddress {
    pub fn new(kind: CurveKind, digits: Vec<u8>) -> Result<Self, CurveError> {
        if digits.is_empty() {
            return Err(CurveError::InvalidCell { reason: "empty digit list".into() });
        }
        if digits.len() as u32 > MAX_DEPTH {
            return Err(CurveError::DepthOverflow {
                depth: digits.len() as u32,
                max: MAX_DEPTH,
            });
        }
        let b = kind.branching() as u8;
        if let Some(&d) = digits.iter().find(|&&d| d >= b) {
            return Err(CurveError::InvalidCell {
                reason: format!("digit {d} out of range [0, {b})"),
            });
        }
        Ok(CellAddress { kind, digits })
    }

    pub fn depth(&self) -> u32 {
        self.digits.len() as u32
    }

    /// Integer grid coordinates of the cell's lower-left corner at
    /// resolution `base^depth`.
    pub fn grid_coords(&self) -> Vec<u64> {
        let dim = self.kind.dim();
        let base = self.kind.base() as u64;
        let mut coords = vec![0u64; dim];
        for &digit in &self.digits {
            match self.kind {
                CurveKind::Hilbert2 | CurveKind::Hilbert3 => {
                    for (j, c) in coords.iter_mut().enumerate() {
                        *c = (*c << 1) | ((digit as u64 >> j) & 1);
                    }
                }
                CurveKind::Peano => {
                    coords[0] = coords[0] * base + (digit % 3) as u64;
                    coords[1] = coords[1] * base + (digit / 3) as u64;
                }
            }
        }
        coords
    }

    /// Build an address from integer grid coordinates at the given depth.
    pub fn from_grid_coords(
        kind: CurveKind,
        coords: &[u64],
        depth: u32,
    ) -> Result<Self, CurveError> {
        if depth == 0 {
            return Err(CurveError::InvalidDepth);
        }
        if depth > MAX_DEPTH {
            return Err(CurveError::DepthOverflow { depth, max: MAX_DEPTH });
        }
        if coords.len() != kind.dim() {
            return Err(CurveError::InvalidCell {
                reason: format!("expected {} coordinates, got {}", kind.dim(), coords.len()),
            });
        }
        let side = (kind.base() as u64).pow(depth);
        if let Some(&c) = coords.iter().find(|&&c| c >= side) {
            return Err(CurveError::InvalidCell {
                reason: format!("grid coordinate {c} out of range [0, {side})"),
            });
        }
        let mut digits = vec![0u8; depth as usize];
        match kind {
            CurveKind::Hilbert2 | CurveKind::Hilbert3 => {
                for level in 0..depth {
                    let shift = depth - 1 - level;
                    let mut label = 0u8;
                    for (j, &c) in coords.iter().enumerate() {
                        label |= (((c >> shift) & 1) as u8) << j;
                    }
                    digits[level as usize] = label;
                }
            }
            CurveKind::Peano => {
                for level in 0..depth {
                    let p = 3u64.pow(depth - 1 - level);
                    let x = (coords[0] / p) % 3;
                    let y = (coords[1] / p) % 3;
                    digits[level as usize] = (x + 3 * y) as u8;
                }
            }
        }
        CellAddress::new(kind, digits)
    }
}

/// Extract `depth` base-`branching` digits of `t = num/den` together with
/// the classification of the remaining tail.
fn extract_digits(
    num: &BigUint,
    den: &BigUint,
    kind: CurveKind,
    depth: u32,
) -> (Vec<u8>, Tail) {
    let b = BigUint::from(kind.branching());
    let mut rem = num.clone();
    let mut digits = Vec::with_capacity(depth as usize);
    for _ in 0..depth {
        rem *= &b;
        let mut w = (&rem / den).to_u32().expect("digit fits in u32");
        if w >= kind.branching() {
            w = kind.branching() - 1;
        }
        rem -= den * w;
        digits.push(w as u8);
    }
    let tail = if rem.is_zero() {
        Tail::Zero
    } else if rem == *den {
        Tail::Full
    } else {
        Tail::Interior
    };
    (digits, tail)
}

fn check_depth(depth: u32) -> Result<(), CurveError> {
    if depth == 0 {
        return Err(CurveError::InvalidDepth);
    }
    if depth > MAX_DEPTH {
        return Err(CurveError::DepthOverflow { depth, max: MAX_DEPTH });
    }
    Ok(())
}

/// Evaluate the curve at an arbitrary exact rational parameter in
/// `[0, 1]`, at the given refinement depth.
///
/// The result is the exact curve value at the parameter truncated to
/// `depth` digit groups; for parameters on the depth-`depth` grid this is
/// the exact limit value of the curve itself. Successive depths move the
/// point by at most `sqrt(dim) * base^-depth`.
pub fn eval_rational(
    kind: CurveKind,
    t: &BigRational,
    depth: u32,
) -> Result<CurvePoint, CurveError> {
    check_depth(depth)?;
    if t.is_negative() || *t > BigRational::one() {
        return Err(CurveError::ParamOutOfRange);
    }
    let num = t.numer().to_biguint().expect("non-negative");
    let den = t.denom().to_biguint().expect("positive");
    let (digits, tail) = extract_digits(&num, &den, kind, depth);
    Ok(eval_digits(kind, &digits, tail))
}

/// Evaluate from an explicit digit-group expansion plus tail class.
pub fn eval_digits(kind: CurveKind, digits: &[u8], tail: Tail) -> CurvePoint {
    match kind {
        CurveKind::Hilbert2 | CurveKind::Hilbert3 => hilbert::eval(kind, digits, tail),
        CurveKind::Peano => peano::eval(digits, tail),
    }
}

/// Evaluate the binary (Hilbert) curve at a canonical parameter.
///
/// `hilbert_eval(0) = origin`; in dimension 2 the value at `t = 1` is
/// `(1, 0)` for every depth.
pub fn hilbert_eval(t: &DyadicParam, dim: u32, depth: u32) -> Result<CurvePoint, CurveError> {
    let kind = CurveKind::binary(dim)?;
    eval_kind(kind, t, depth)
}

/// Evaluate the 2-D ternary curve at a canonical parameter.
///
/// `peano_eval(0) = (0, 0)` and `peano_eval(1) = (1, 1)` at every depth.
pub fn peano_eval(t: &DyadicParam, depth: u32) -> Result<CurvePoint, CurveError> {
    eval_kind(CurveKind::Peano, t, depth)
}

/// Kind-generic evaluation at a canonical parameter.
pub fn eval_kind(kind: CurveKind, t: &DyadicParam, depth: u32) -> Result<CurvePoint, CurveError> {
    check_depth(depth)?;
    let num = BigUint::from(t.numerator);
    let den = BigUint::from(kind.branching()).pow(t.depth);
    if num > den {
        return Err(CurveError::ParamOutOfRange);
    }
    let (digits, tail) = extract_digits(&num, &den, kind, depth);
    Ok(eval_digits(kind, &digits, tail))
}

/// One-sided limit side selector for boundary-parameter checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Evaluate the one-sided limit of the depth-`depth` evaluation at `t`.
///
/// At parameters on the depth grid the left limit uses the
/// non-terminating expansion (previous cell, full tail); everywhere else
/// both sides agree with [`eval_kind`]. The left limit at `t = 0` does
/// not exist and is rejected.
pub fn eval_limit(
    kind: CurveKind,
    t: &DyadicParam,
    depth: u32,
    side: Side,
) -> Result<CurvePoint, CurveError> {
    check_depth(depth)?;
    if side == Side::Right {
        return eval_kind(kind, t, depth);
    }
    if t.numerator == 0 {
        return Err(CurveError::ParamOutOfRange);
    }
    if t.depth > depth {
        // Not on the depth grid: the truncated expansion is locally constant.
        return eval_kind(kind, t, depth);
    }
    let b = kind.branching() as u128;
    let scaled = t.numerator * b.pow(depth - t.depth);
    let mut digits = Vec::with_capacity(depth as usize);
    let mut h = scaled - 1;
    for level in (0..depth).rev() {
        let p = b.pow(level);
        digits.push((h / p) as u8);
        h %= p;
    }
    Ok(eval_digits(kind, &digits, Tail::Full))
}

/// Depth-`depth` cell containing the image of `t`; the evaluated point
/// lies in the closed cell.
pub fn cell_of(t: &DyadicParam, kind: CurveKind, depth: u32) -> Result<CellAddress, CurveError> {
    check_depth(depth)?;
    let num = BigUint::from(t.numerator);
    let den = BigUint::from(kind.branching()).pow(t.depth);
    if num > den {
        return Err(CurveError::ParamOutOfRange);
    }
    let (digits, _) = extract_digits(&num, &den, kind, depth);
    cell_from_traversal_digits(kind, &digits)
}

fn cell_from_traversal_digits(kind: CurveKind, digits: &[u8]) -> Result<CellAddress, CurveError> {
    let coords = match kind {
        CurveKind::Hilbert2 | CurveKind::Hilbert3 => hilbert::cell_coords(kind, digits),
        CurveKind::Peano => peano::cell_coords(digits),
    };
    CellAddress::from_grid_coords(kind, &coords, digits.len() as u32)
}

/// Exact parameter subinterval `[lo, hi]` whose image at the cell's depth
/// lies in the closed cell. Left endpoints at a fixed depth partition
/// `[0, 1)`.
pub fn preimage_of_cell(cell: &CellAddress) -> Result<(DyadicParam, DyadicParam), CurveError> {
    let depth = cell.depth();
    check_depth(depth)?;
    let coords = cell.grid_coords();
    let h = match cell.kind {
        CurveKind::Hilbert2 | CurveKind::Hilbert3 => hilbert::index_from_coords(cell.kind, &coords, depth),
        CurveKind::Peano => peano::index_from_coords(&coords, depth),
    };
    let lo = DyadicParam::new(h, depth, cell.kind)?;
    let hi = DyadicParam::new(h + 1, depth, cell.kind)?;
    Ok((lo, hi))
}

/// Visit rank of a cell along the curve: `preimage_of_cell` equals
/// `[rank, rank + 1] / branching^depth`.
pub fn cell_rank(cell: &CellAddress) -> Result<u128, CurveError> {
    let depth = cell.depth();
    check_depth(depth)?;
    let coords = cell.grid_coords();
    Ok(match cell.kind {
        CurveKind::Hilbert2 | CurveKind::Hilbert3 => hilbert::index_from_coords(cell.kind, &coords, depth),
        CurveKind::Peano => peano::index_from_coords(&coords, depth),
    })
}

impl DyadicParam {
    /// Convenience constructor from a u128 numerator over `branching^depth`
    /// that must already be canonical-compatible (used by tests).
    pub fn from_f64_lossy(value: f64, depth: u32, kind: CurveKind) -> Result<Self, CurveError> {
        if !(0.0..=1.0).contains(&value) {
            return Err(CurveError::ParamOutOfRange);
        }
        let b = kind.branching() as f64;
        let scaled = (value * b.powi(depth as i32)).round();
        DyadicParam::new(scaled as u128, depth, kind)
    }
}

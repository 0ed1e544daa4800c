//! Continuous surjections of the half-line onto an increasing family of
//! compact boxes, with unbounded fibers.
//!
//! The half-line `[0, +infinity)` is tiled by unit intervals
//! `[j, j+1]`. A pairing bijection decodes each tile index `j` into a
//! pair `(k, n)`: `k` selects the box `K_k` that the tile traverses and
//! `n` is the channel the tile belongs to. Inside a tile the map runs a
//! fixed profile: the first eighth travels from the origin to the curve's
//! start corner, the middle three quarters run a space-filling curve
//! scaled onto `K_k`, and the last eighth returns to the origin. The
//! single-channel maps vanish identically off their own tiles, so any
//! finite linear combination over distinct channels keeps each summand's
//! behaviour on its own tiles.
//!
//! Targets are either `R^d` with boxes `K_k = [-k, k]^d`, or the space of
//! finitely supported sequences (often written `c00`) with truncated
//! boxes `K_k = [-k, k]^k x {0}`. Points are exact rationals end to end;
//! floating point appears only in residual reports.
//!
//! Boxes whose curve dimension exceeds the exact depth budget (see
//! [`max_coord_depth`]) are traversed at the deepest representable
//! resolution; witness searches only use tiles whose resolution certifies
//! the requested tolerance.

mod cube;
pub mod pairing;

pub use cube::{cube_eval, end_corner, locate_cell, max_coord_depth, ParamInterval};

use crate::curve::{CurveError, MAX_DEPTH};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Errors for tiling, block evaluation, and fiber search.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TilingError {
    /// The parameter lies left of the tiled half-line.
    #[error("parameter is negative: tiles cover only [0, +infinity)")]
    NegativeParameter,
    /// Requested depth exceeds the exact-arithmetic budget.
    #[error("depth {depth} exceeds the maximum exact depth {max}")]
    DepthOverflow { depth: u32, max: u32 },
    /// The target point lies outside every box the machinery can traverse.
    #[error("target point outside every representable box: {reason}")]
    TargetOutOfRange { reason: String },
    /// The tolerance cannot be certified at any representable depth.
    #[error("tolerance {tol:e} below achievable resolution {achievable:e}")]
    ResolutionTooCoarse { tol: f64, achievable: f64 },
    /// Malformed argument (arity, counts, non-finite values, ...).
    #[error("invalid input: {reason}")]
    InvalidInput { reason: String },
    /// Propagated exact-curve error.
    #[error(transparent)]
    Curve(#[from] CurveError),
}

pub type Result<T> = std::result::Result<T, TilingError>;

/// Ambient space the tiled map lands in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetSpace {
    /// `R^dim` with boxes `K_k = [-k, k]^dim`.
    Euclidean { dim: usize },
    /// Finitely supported sequences with boxes `K_k = [-k, k]^k x {0}`.
    FiniteSupport,
}

impl TargetSpace {
    /// Curve dimension used inside a tile of box size `k`.
    pub fn box_dim(&self, k: u64) -> usize {
        match self {
            TargetSpace::Euclidean { dim } => *dim,
            TargetSpace::FiniteSupport => k as usize,
        }
    }

    fn validate(&self) -> Result<()> {
        if let TargetSpace::Euclidean { dim } = self {
            if *dim == 0 || max_coord_depth(*dim) == 0 {
                return Err(TilingError::InvalidInput {
                    reason: format!("euclidean dimension {dim} not representable"),
                });
            }
        }
        Ok(())
    }
}

/// Point of the target space as exact rational coordinates. For the
/// finitely-supported-sequence target the vector holds the support
/// prefix; omitted trailing entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetPoint {
    pub coords: Vec<BigRational>,
}

impl TargetPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        TargetPoint { coords }
    }

    /// Exact binary-rational point from floating-point coordinates.
    pub fn from_f64s(coords: &[f64]) -> Result<Self> {
        let exact = coords
            .iter()
            .map(|&c| {
                BigRational::from_float(c).ok_or_else(|| TilingError::InvalidInput {
                    reason: format!("non-finite coordinate {c}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TargetPoint::new(exact))
    }

    pub fn zero(target: &TargetSpace) -> Self {
        match target {
            TargetSpace::Euclidean { dim } => {
                TargetPoint::new(vec![BigRational::zero(); *dim])
            }
            TargetSpace::FiniteSupport => TargetPoint::new(Vec::new()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Euclidean distance, padding the shorter support with zeros.
    pub fn distance_f64(&self, other: &TargetPoint) -> f64 {
        let len = self.coords.len().max(other.coords.len());
        let zero = BigRational::zero();
        (0..len)
            .map(|i| {
                let a = self.coords.get(i).unwrap_or(&zero);
                let b = other.coords.get(i).unwrap_or(&zero);
                let d = (a - b).to_f64().unwrap_or(f64::NAN);
                d * d
            })
            .sum::<f64>()
            .sqrt()
    }
}

/// Which tiles of the half-line a map is active on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapMode {
    /// Active only on tiles of one channel, zero elsewhere.
    Channel(u64),
    /// Active on every tile.
    Composite,
}

/// Specification of a tiled map of the half-line into a target space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineMap {
    pub target: TargetSpace,
    pub mode: MapMode,
}

impl LineMap {
    /// Single-channel map: traverses `K_k` on every tile `(k, n)` of the
    /// given channel `n`, identically zero elsewhere.
    pub fn channel(target: TargetSpace, n: u64) -> Result<Self> {
        target.validate()?;
        if n == 0 {
            return Err(TilingError::InvalidInput { reason: "channels start at 1".into() });
        }
        Ok(LineMap { target, mode: MapMode::Channel(n) })
    }

    /// Composite map: traverses `K_k` on every tile.
    pub fn composite(target: TargetSpace) -> Result<Self> {
        target.validate()?;
        Ok(LineMap { target, mode: MapMode::Composite })
    }
}

/// Tile containing a parameter: index `j`, decoded `(k, n)`, and the
/// affine local coordinate in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileIndex {
    pub j: u64,
    pub k: u64,
    pub n: u64,
    pub local: BigRational,
}

/// Locate the tile containing `t >= 0` (right-open at interior
/// endpoints: integer parameters open the tile they name).
pub fn tile_lookup(t: &BigRational) -> Result<TileIndex> {
    if t.is_negative() {
        return Err(TilingError::NegativeParameter);
    }
    let j = t
        .floor()
        .to_integer()
        .to_u64()
        .ok_or_else(|| TilingError::InvalidInput {
            reason: "tile index exceeds u64".into(),
        })?;
    let local = t - BigRational::from(BigInt::from(j));
    let (k, n) = pairing::decode(j);
    Ok(TileIndex { j, k, n, local })
}

/// Map a curve coordinate in `[0, 1]` onto `[-k, k]`.
fn scale_coord(c: &BigRational, k: u64) -> BigRational {
    let k = BigRational::from(BigInt::from(k));
    (c * BigRational::from(BigInt::from(2)) - BigRational::one()) * k
}

/// Value of the in-tile profile at local coordinate `local ∈ [0, 1]` for
/// a tile traversing `K_k`.
fn tile_value(
    target: &TargetSpace,
    k: u64,
    local: &BigRational,
    depth: u32,
) -> Vec<BigRational> {
    let dim = target.box_dim(k);
    let budget = max_coord_depth(dim);
    if budget == 0 {
        // Box beyond the exact budget: constant at the origin.
        return match target {
            TargetSpace::Euclidean { dim } => vec![BigRational::zero(); *dim],
            TargetSpace::FiniteSupport => Vec::new(),
        };
    }
    let depth = depth.clamp(1, budget);
    let eighth = BigRational::new(1.into(), 8.into());
    let seven_eighths = BigRational::new(7.into(), 8.into());
    let eight = BigRational::from(BigInt::from(8));
    let neg_k = -BigRational::from(BigInt::from(k));
    if *local <= eighth {
        // Straight leg from the origin to the curve's start corner
        // (-k, ..., -k).
        let f = local * &eight;
        return (0..dim).map(|_| &f * &neg_k).collect();
    }
    if *local >= seven_eighths {
        // Straight leg from the curve's end corner back to the origin.
        let f = (BigRational::one() - local) * &eight;
        return end_corner(dim)
            .iter()
            .map(|c| &f * scale_coord(c, k))
            .collect();
    }
    let u = (local - eighth) * BigRational::new(4.into(), 3.into());
    let point = cube_eval(dim, &u, depth).expect("u in [0,1], depth within budget");
    point.iter().map(|c| scale_coord(c, k)).collect()
}

fn check_eval_depth(depth: u32) -> Result<()> {
    if depth == 0 {
        return Err(TilingError::Curve(CurveError::InvalidDepth));
    }
    if depth > MAX_DEPTH {
        return Err(TilingError::DepthOverflow { depth, max: MAX_DEPTH });
    }
    Ok(())
}

/// Evaluate the map at `t`, honouring the map's channel restriction:
/// channel maps vanish exactly on other channels' tiles and on
/// `(-infinity, 0]`.
pub fn block_map_eval(map: &LineMap, t: &BigRational, depth: u32) -> Result<TargetPoint> {
    check_eval_depth(depth)?;
    if !t.is_positive() {
        return Ok(TargetPoint::zero(&map.target));
    }
    let tile = tile_lookup(t)?;
    if let MapMode::Channel(n) = map.mode {
        if tile.n != n {
            return Ok(TargetPoint::zero(&map.target));
        }
    }
    Ok(TargetPoint::new(tile_value(&map.target, tile.k, &tile.local, depth)))
}

/// Evaluate the composite map joining every channel: on each tile the
/// value agrees with that tile's channel map; zero for `t <= 0`.
pub fn composite_eval(map: &LineMap, t: &BigRational, depth: u32) -> Result<TargetPoint> {
    let all = LineMap { target: map.target, mode: MapMode::Composite };
    block_map_eval(&all, t, depth)
}

/// Fiber witnesses for a target point: strictly increasing parameters
/// whose images come within `tol` of the point, the last one beyond the
/// given bound.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    pub witnesses: Vec<BigRational>,
    pub residuals: Vec<f64>,
}

/// Smallest box size whose `K_k` contains the point.
fn min_box(target: &TargetSpace, a: &TargetPoint) -> Result<u64> {
    let mut k0 = 1u64;
    match target {
        TargetSpace::Euclidean { dim } => {
            if a.coords.len() != *dim {
                return Err(TilingError::InvalidInput {
                    reason: format!(
                        "point has {} coordinates, target dimension is {dim}",
                        a.coords.len()
                    ),
                });
            }
        }
        TargetSpace::FiniteSupport => {
            let support = a
                .coords
                .iter()
                .rposition(|c| !c.is_zero())
                .map_or(0, |i| i + 1);
            k0 = k0.max(support as u64);
        }
    }
    for c in &a.coords {
        let m = c.abs().ceil().to_integer().to_u64().ok_or_else(|| {
            TilingError::TargetOutOfRange { reason: "coordinate magnitude overflows".into() }
        })?;
        k0 = k0.max(m);
    }
    if max_coord_depth(target.box_dim(k0)) == 0 {
        return Err(TilingError::TargetOutOfRange {
            reason: format!("needs box size {k0}, beyond the exact depth budget"),
        });
    }
    Ok(k0)
}

/// Depth certifying `tol` on a box of size `k`, if one exists within the
/// budget: the scaled closed-cell diameter `2k*sqrt(dim)*2^-r` must not
/// exceed `tol`.
fn certifying_depth(target: &TargetSpace, k: u64, tol: f64) -> Option<u32> {
    let dim = target.box_dim(k);
    let budget = max_coord_depth(dim);
    let diam = 2.0 * k as f64 * (dim as f64).sqrt();
    let mut r = (diam / tol).log2().ceil().max(1.0) as u32;
    while r <= budget && diam * (0.5f64).powi(r as i32) > tol {
        r += 1;
    }
    (1..=budget).contains(&r).then_some(r)
}

/// Grid cell of the normalized point inside `[-k, k]^dim` at depth `r`.
fn cell_of_point(a: &TargetPoint, k: u64, dim: usize, r: u32) -> Vec<u64> {
    let side = 1u64 << r;
    let zero = BigRational::zero();
    (0..dim)
        .map(|i| {
            let c = a.coords.get(i).unwrap_or(&zero);
            // u = (c + k) / 2k in [0, 1], cell = floor(u * side), clamped.
            let u = (c + BigRational::from(BigInt::from(k)))
                / BigRational::from(BigInt::from(2 * k));
            let cell = (u * BigRational::from(BigInt::from(side)))
                .floor()
                .to_integer()
                .to_u64()
                .unwrap_or(0);
            cell.min(side - 1)
        })
        .collect()
}

/// Find `count` strictly increasing parameters with `|F(t_i) - a| <= tol`
/// and `t_count > beyond`, by exact inverse cell lookup inside successive
/// usable tiles (never by blind sampling).
pub fn fiber_witnesses(
    map: &LineMap,
    a: &TargetPoint,
    count: usize,
    beyond: f64,
    tol: f64,
) -> Result<WitnessReport> {
    if count == 0 {
        return Err(TilingError::InvalidInput { reason: "count must be at least 1".into() });
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(TilingError::InvalidInput { reason: format!("bad tolerance {tol}") });
    }
    if !beyond.is_finite() {
        return Err(TilingError::InvalidInput { reason: "bound must be finite".into() });
    }

    let k0 = min_box(&map.target, a)?;

    // The origin is hit exactly at every tile endpoint.
    if a.is_zero() {
        let mut witnesses: Vec<BigRational> =
            (1..count as u64).map(|i| BigRational::from(BigInt::from(i))).collect();
        let last = if beyond < 0.0 { 0 } else { beyond.floor() as u64 + 1 };
        let last = last.max(count as u64);
        witnesses.push(BigRational::from(BigInt::from(last)));
        let residuals = vec![0.0; count];
        return Ok(WitnessReport { witnesses, residuals });
    }
    if certifying_depth(&map.target, k0, tol).is_none() {
        let dim = map.target.box_dim(k0);
        let budget = max_coord_depth(dim);
        let achievable =
            2.0 * k0 as f64 * (dim as f64).sqrt() * (0.5f64).powi(budget as i32);
        return Err(TilingError::ResolutionTooCoarse { tol, achievable });
    }

    let beyond_tile = if beyond < 0.0 { 0 } else { beyond.floor() as u64 + 1 };
    let scan_cap = 20_000_000u64;
    let mut witnesses = Vec::with_capacity(count);
    let mut residuals = Vec::with_capacity(count);
    let mut j = 0u64;
    let mut scanned = 0u64;
    while witnesses.len() < count {
        if witnesses.len() + 1 == count {
            j = j.max(beyond_tile);
        }
        let (k, n) = pairing::decode(j);
        let usable = match map.mode {
            MapMode::Channel(c) => n == c,
            MapMode::Composite => true,
        } && k >= k0;
        if usable {
            if let Some(r) = certifying_depth(&map.target, k, tol) {
                let dim = map.target.box_dim(k);
                let cell = cell_of_point(a, k, dim, r);
                let interval = locate_cell(dim, &cell, r)?;
                let local = BigRational::new(1.into(), 8.into())
                    + BigRational::new(3.into(), 4.into()) * interval.lower();
                let t = BigRational::from(BigInt::from(j)) + local;
                let image = block_map_eval(map, &t, r)?;
                let residual = image.distance_f64(a);
                witnesses.push(t);
                residuals.push(residual);
            }
        }
        j += 1;
        scanned += 1;
        if scanned > scan_cap {
            return Err(TilingError::ResolutionTooCoarse { tol, achievable: f64::NAN });
        }
    }
    Ok(WitnessReport { witnesses, residuals })
}

/// A map on `R^m` obtained by composing with the projection onto the
/// first coordinate: same image, fibers become cylinders (unbounded in
/// every extra coordinate).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedMap {
    pub base: LineMap,
    pub arity: usize,
}

pub fn projection_lift(map: &LineMap, arity: usize) -> Result<LiftedMap> {
    if arity == 0 {
        return Err(TilingError::InvalidInput { reason: "arity must be at least 1".into() });
    }
    Ok(LiftedMap { base: map.clone(), arity })
}

impl LiftedMap {
    /// `G(t_1, ..., t_m) = F(t_1)`.
    pub fn eval(&self, args: &[BigRational], depth: u32) -> Result<TargetPoint> {
        if args.len() != self.arity {
            return Err(TilingError::InvalidInput {
                reason: format!("expected {} arguments, got {}", self.arity, args.len()),
            });
        }
        block_map_eval(&self.base, &args[0], depth)
    }
}

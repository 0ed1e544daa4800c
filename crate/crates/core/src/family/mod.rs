//! A linearly independent family of line-to-space maps indexed by
//! irrational seeds.
//!
//! A fixed diagonal enumeration lists the rationals; for each
//! irrational seed an almost-disjoint index set is carved out greedily
//! (the k-th chosen rational must lie within 1/k of the seed). Any two
//! seeds eventually separate, so two such index sets share only
//! finitely many elements. A family member sums the channel maps of
//! its index set: on any single tile at most one summand is active, so
//! evaluation is exact, and linear combinations restricted to a
//! channel exclusive to one member reduce to a single scaled channel
//! map — the lever behind the rank (independence) report.
//!
//! Seeds are held as 120-fractional-bit fixed-point integers and all
//! membership comparisons are exact integer arithmetic; when a
//! comparison cannot be decided at that precision the operation
//! reports it rather than guessing.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_bigint::{BigInt, BigUint};
use num_integer::{gcd, Roots};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::tiling::{
    composite_eval, pairing, tile_lookup, LineMap, TargetPoint, TargetSpace, TilingError,
};

/// Fractional bits of the fixed-point representation of seeds.
pub const SEED_FRACTION_BITS: u32 = 120;

/// Hard cap on how far the rational enumeration is scanned while
/// extending one index set.
const ENUMERATION_SCAN_CAP: usize = 4_000_000;

/// Relative singular-value threshold under which directions are
/// considered dependent.
pub const RANK_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FamilyError {
    #[error("invalid seed: {reason}")]
    InvalidSeed { reason: String },
    #[error("seed {seed} cannot separate candidates at step {k} with the stored precision")]
    PrecisionExhausted { seed: String, k: usize },
    #[error("no admissible rational within the first {scanned} enumerated for step {k}")]
    EnumerationExhausted { scanned: usize, k: usize },
    #[error("degenerate sample plan: {reason}")]
    DegenerateSamplePlan { reason: String },
    #[error("invalid input: {reason}")]
    InvalidInput { reason: String },
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

pub type Result<T> = std::result::Result<T, FamilyError>;

/// The fixed enumeration `q_1, q_2, ...` of all rationals: diagonals
/// of increasing `|p| + q` over reduced fractions `p/q` (`q >= 1`),
/// within a diagonal by increasing `|p|`, positive sign first. It
/// starts `0, 1, -1, 1/2, -1/2, 2, -2, 1/3, -1/3, 3, -3, ...`.
#[derive(Debug, Clone, Default)]
pub struct RationalEnumeration {
    values: Vec<BigRational>,
    next_diagonal: u64,
}

impl RationalEnumeration {
    pub fn new() -> Self {
        RationalEnumeration { values: Vec::new(), next_diagonal: 1 }
    }

    /// The `n`-th rational, 1-based.
    pub fn get(&mut self, n: usize) -> BigRational {
        self.ensure(n);
        self.values[n - 1].clone()
    }

    /// All of `q_1 ..= q_n`.
    pub fn prefix(&mut self, n: usize) -> &[BigRational] {
        self.ensure(n);
        &self.values[..n]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn ensure(&mut self, n: usize) {
        while self.values.len() < n {
            let d = self.next_diagonal;
            for a in 0..d {
                let q = d - a;
                if gcd(a, q) == 1 {
                    self.values.push(BigRational::new(BigInt::from(a), BigInt::from(q)));
                    if a > 0 {
                        self.values
                            .push(BigRational::new(-BigInt::from(a), BigInt::from(q)));
                    }
                }
            }
            self.next_diagonal += 1;
        }
    }
}

/// A named irrational constant, stored to 120 fractional bits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeedConstant {
    /// Square root of a non-square positive integer.
    Sqrt(u32),
    /// The golden ratio (1 + sqrt 5) / 2.
    Phi,
    Pi,
}

impl SeedConstant {
    /// Accepts `sqrtN`, `phi`, `pi`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim().to_ascii_lowercase();
        if let Some(rest) = text.strip_prefix("sqrt") {
            let m: u32 = rest.parse().map_err(|_| FamilyError::InvalidSeed {
                reason: format!("bad square-root seed {text}"),
            })?;
            return SeedConstant::sqrt(m);
        }
        match text.as_str() {
            "phi" => Ok(SeedConstant::Phi),
            "pi" => Ok(SeedConstant::Pi),
            other => Err(FamilyError::InvalidSeed { reason: format!("unknown seed {other}") }),
        }
    }

    pub fn sqrt(m: u32) -> Result<Self> {
        let r = (m as u64).sqrt();
        if m == 0 || r * r == m as u64 {
            return Err(FamilyError::InvalidSeed {
                reason: format!("sqrt{m} is rational"),
            });
        }
        Ok(SeedConstant::Sqrt(m))
    }

    pub fn name(&self) -> String {
        match self {
            SeedConstant::Sqrt(m) => format!("sqrt{m}"),
            SeedConstant::Phi => "phi".into(),
            SeedConstant::Pi => "pi".into(),
        }
    }

    /// `floor(alpha * 2^120)` as an exact integer.
    pub fn fixed_point(&self) -> BigInt {
        match self {
            SeedConstant::Sqrt(m) => {
                let shifted = BigUint::from(*m) << (2 * SEED_FRACTION_BITS);
                BigInt::from(shifted.sqrt())
            }
            SeedConstant::Phi => {
                let five = BigUint::from(5u32) << (2 * SEED_FRACTION_BITS);
                let root = BigInt::from(five.sqrt());
                ((BigInt::from(1) << SEED_FRACTION_BITS) + root) / 2
            }
            // floor(pi * 2^120), from the decimal expansion of pi.
            SeedConstant::Pi => "4175892906503776358826876457663557747".parse().unwrap(),
        }
    }

    pub fn approx_f64(&self) -> f64 {
        let fp = self.fixed_point();
        fp.to_f64().unwrap() / 2f64.powi(SEED_FRACTION_BITS as i32)
    }
}

/// Does `|p/q - alpha| < 1/k` hold? Decided exactly from the
/// fixed-point window `alpha * 2^120 in [A, A+1)`; `None` when the
/// window straddles the boundary.
fn within_schedule(q_n: &BigRational, alpha_fp: &BigInt, k: u64) -> Option<bool> {
    let p = q_n.numer();
    let q = q_n.denom(); // > 0 in lowest terms
    let scale = BigInt::from(1) << SEED_FRACTION_BITS;
    let k = BigInt::from(k);
    // x = k * (p * 2^120 - q * alpha * 2^120) ranges over (x_lo, x_hi].
    let x_hi = &k * (p * &scale - q * alpha_fp);
    let x_lo = &x_hi - &k * q;
    let bound = q * &scale;
    if x_lo >= -&bound && x_hi < bound {
        Some(true)
    } else if x_hi <= -&bound || x_lo >= bound {
        Some(false)
    } else {
        None
    }
}

/// An almost-disjoint index set: positions in the rational enumeration
/// whose entries approach the seed on the 1/k schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdSet {
    pub seed: SeedConstant,
    /// Strictly increasing enumeration indices `n_1 < n_2 < ...` with
    /// `|q_{n_k} - alpha| < 1/k`, each chosen greedily minimal.
    pub indices: Vec<u64>,
    /// The approximants `q_{n_k}` themselves, as exact strings `p/q`.
    pub approximants: Vec<String>,
}

/// First `count` indices of the seed's index set.
pub fn ad_set(
    enumeration: &mut RationalEnumeration,
    seed: &SeedConstant,
    count: usize,
) -> Result<AdSet> {
    if count == 0 {
        return Err(FamilyError::InvalidInput { reason: "count must be at least 1".into() });
    }
    let alpha_fp = seed.fixed_point();
    let mut indices = Vec::with_capacity(count);
    let mut approximants = Vec::with_capacity(count);
    let mut n = 0usize;
    for k in 1..=count {
        loop {
            n += 1;
            if n > ENUMERATION_SCAN_CAP {
                return Err(FamilyError::EnumerationExhausted { scanned: n - 1, k });
            }
            let candidate = enumeration.get(n);
            match within_schedule(&candidate, &alpha_fp, k as u64) {
                Some(true) => {
                    indices.push(n as u64);
                    approximants.push(crate::format_rational(&candidate));
                    break;
                }
                Some(false) => {}
                None => {
                    return Err(FamilyError::PrecisionExhausted { seed: seed.name(), k })
                }
            }
        }
    }
    Ok(AdSet { seed: seed.clone(), indices, approximants })
}

/// Enumeration indices two sets share. Beyond the step where the 1/k
/// neighborhoods of the two seeds separate, the sets cannot pick the
/// same rational, so over a fixed enumeration prefix this is the
/// stabilized (final) intersection.
pub fn common_indices(a: &AdSet, b: &AdSet) -> Vec<u64> {
    let bs: BTreeSet<u64> = b.indices.iter().copied().collect();
    a.indices.iter().copied().filter(|i| bs.contains(i)).collect()
}

/// One family member: the sum of the channel maps over its index set.
/// On any tile at most one summand is nonzero, so the sum needs no
/// convergence argument and evaluation stays exact.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    label: String,
    indices: BTreeSet<u64>,
    target: TargetSpace,
    map: LineMap,
}

impl FamilyMember {
    pub fn from_indices(
        label: impl Into<String>,
        indices: impl IntoIterator<Item = u64>,
        target: TargetSpace,
    ) -> Result<Self> {
        let indices: BTreeSet<u64> = indices.into_iter().collect();
        if indices.is_empty() {
            return Err(FamilyError::InvalidInput {
                reason: "a member needs at least one channel index".into(),
            });
        }
        if indices.contains(&0) {
            return Err(FamilyError::InvalidInput {
                reason: "channel indices are 1-based".into(),
            });
        }
        let map = LineMap::composite(target)?;
        Ok(FamilyMember { label: label.into(), indices, target, map })
    }

    pub fn from_ad_set(set: &AdSet, target: TargetSpace) -> Result<Self> {
        Self::from_indices(set.seed.name(), set.indices.iter().copied(), target)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn indices(&self) -> &BTreeSet<u64> {
        &self.indices
    }

    pub fn target(&self) -> &TargetSpace {
        &self.target
    }

    /// Exact value at `t`: zero off the member's channels, the common
    /// tile profile on them.
    pub fn eval(&self, t: &BigRational, depth: u32) -> Result<TargetPoint> {
        if t <= &BigRational::zero() {
            return Ok(TargetPoint::zero(&self.target));
        }
        let tile = tile_lookup(t)?;
        if self.indices.contains(&tile.n) {
            Ok(composite_eval(&self.map, t, depth)?)
        } else {
            Ok(TargetPoint::zero(&self.target))
        }
    }
}

/// Pointwise linear combination of members, exact in rational
/// arithmetic: on the tile containing `t`, the active coefficients sum
/// and scale the single tile profile value.
pub fn combo_eval(
    coeffs: &[f64],
    members: &[FamilyMember],
    t: &BigRational,
    depth: u32,
) -> Result<TargetPoint> {
    if coeffs.len() != members.len() || members.is_empty() {
        return Err(FamilyError::InvalidInput {
            reason: format!(
                "need matching nonempty lists, got {} coefficients and {} members",
                coeffs.len(),
                members.len()
            ),
        });
    }
    let target = members[0].target;
    if members.iter().any(|m| m.target != target) {
        return Err(FamilyError::InvalidInput {
            reason: "members must share one target space".into(),
        });
    }
    if t <= &BigRational::zero() {
        return Ok(TargetPoint::zero(&target));
    }
    let tile = tile_lookup(t)?;
    let mut scalar = BigRational::zero();
    for (c, m) in coeffs.iter().zip(members) {
        if m.indices.contains(&tile.n) {
            let c = BigRational::from_float(*c).ok_or_else(|| FamilyError::InvalidInput {
                reason: format!("non-finite coefficient {c}"),
            })?;
            scalar += c;
        }
    }
    if scalar.is_zero() {
        return Ok(TargetPoint::zero(&target));
    }
    let point = composite_eval(&members[0].map, t, depth)?;
    Ok(TargetPoint::new(point.coords.into_iter().map(|c| c * &scalar).collect()))
}

/// Rank evidence for a set of members.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RankReport {
    pub members: usize,
    pub samples: usize,
    pub rank: usize,
    /// Descending singular values of the row-normalized value matrix.
    pub singular_values: Vec<f64>,
    /// Whether each member contributed a channel no other member has;
    /// without one, its row cannot be forced independent by sampling.
    pub exclusive_sampled: Vec<bool>,
    pub pass: bool,
}

/// Build the matrix of member values over a deterministic sample plan
/// and measure its numerical rank.
///
/// For each member the plan prefers a channel exclusive to it (tiles
/// of that channel pin the member's row apart from all others); if a
/// member has no exclusive channel — duplicated index sets, say — its
/// smallest channel is sampled instead and the fact is reported. Every
/// member is evaluated at every sample point; rows are normalized and
/// the singular-value spectrum decides the rank at a relative
/// threshold of [`RANK_THRESHOLD`].
pub fn independence_test(
    members: &[FamilyMember],
    tiles_per_member: usize,
    locals: &[BigRational],
    depth: u32,
) -> Result<RankReport> {
    if members.len() < 2 {
        return Err(FamilyError::InvalidInput {
            reason: "need at least two members to compare".into(),
        });
    }
    let target = members[0].target;
    if members.iter().any(|m| m.target != target) {
        return Err(FamilyError::InvalidInput {
            reason: "members must share one target space".into(),
        });
    }
    if tiles_per_member == 0 {
        return Err(FamilyError::DegenerateSamplePlan {
            reason: "tiles_per_member must be at least 1".into(),
        });
    }
    if locals.is_empty() {
        return Err(FamilyError::DegenerateSamplePlan {
            reason: "need at least one within-tile offset".into(),
        });
    }
    let zero = BigRational::zero();
    let one = BigRational::from(BigInt::from(1));
    if locals.iter().any(|l| l <= &zero || l >= &one) {
        return Err(FamilyError::DegenerateSamplePlan {
            reason: "within-tile offsets must lie strictly inside (0, 1)".into(),
        });
    }

    // Choose a probe channel per member and collect sample parameters.
    let mut exclusive_sampled = Vec::with_capacity(members.len());
    let mut samples: Vec<BigRational> = Vec::new();
    for (i, m) in members.iter().enumerate() {
        let mut exclusive = m.indices.clone();
        for (j, other) in members.iter().enumerate() {
            if i != j {
                exclusive = &exclusive - &other.indices;
            }
        }
        let (channel, is_exclusive) = match exclusive.iter().next() {
            Some(&c) => (c, true),
            None => (*m.indices.iter().next().expect("members are nonempty"), false),
        };
        exclusive_sampled.push(is_exclusive);
        for k in 1..=tiles_per_member as u64 {
            let j = pairing::encode(k, channel);
            for local in locals {
                samples.push(BigRational::from(BigInt::from(j)) + local);
            }
        }
    }

    // Value matrix: one row per member, coordinates flattened and
    // padded to a common width per sample.
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for t in &samples {
        let values: Vec<Vec<f64>> =
            members.iter().map(|m| m.eval(t, depth).map(|p| p.to_f64())).collect::<Result<_>>()?;
        let width = values.iter().map(Vec::len).max().unwrap_or(0);
        for c in 0..width {
            columns.push(values.iter().map(|v| v.get(c).copied().unwrap_or(0.0)).collect());
        }
    }
    let rows = members.len();
    let cols = columns.len();
    let mut data = vec![0.0f64; rows * cols];
    for (j, col) in columns.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            data[i * cols + j] = v;
        }
    }
    // Row normalization: scale-free rank.
    for i in 0..rows {
        let norm = data[i * cols..(i + 1) * cols].iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 0.0 {
            for v in &mut data[i * cols..(i + 1) * cols] {
                *v /= norm;
            }
        }
    }

    let matrix = DMatrix::from_row_slice(rows, cols, &data);
    let mut singular_values: Vec<f64> = matrix.svd(false, false).singular_values.iter().copied().collect();
    singular_values.sort_by(|a, b| b.total_cmp(a));
    let top = singular_values.first().copied().unwrap_or(0.0);
    let rank = if top == 0.0 {
        0
    } else {
        singular_values.iter().filter(|&&s| s > RANK_THRESHOLD * top).count()
    };
    Ok(RankReport {
        members: rows,
        samples: samples.len(),
        rank,
        singular_values,
        exclusive_sampled,
        pass: rank == rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn enumeration_starts_with_the_documented_prefix() {
        let mut e = RationalEnumeration::new();
        let expect = [
            (0, 1),
            (1, 1),
            (-1, 1),
            (1, 2),
            (-1, 2),
            (2, 1),
            (-2, 1),
            (1, 3),
            (-1, 3),
            (3, 1),
            (-3, 1),
            (1, 4),
            (-1, 4),
            (2, 3),
            (-2, 3),
            (3, 2),
            (-3, 2),
            (4, 1),
            (-4, 1),
        ];
        for (i, (p, q)) in expect.iter().enumerate() {
            assert_eq!(e.get(i + 1), rat(*p, *q), "at position {}", i + 1);
        }
    }

    #[test]
    fn enumeration_is_injective_and_complete_on_small_fractions() {
        let mut e = RationalEnumeration::new();
        let prefix = e.prefix(20_000).to_vec();
        let set: BTreeSet<String> = prefix.iter().map(crate::format_rational).collect();
        assert_eq!(set.len(), prefix.len(), "enumeration repeated a value");
        // Every reduced p/q with |p|, q <= 50 appears in diagonals up
        // to 100, which this prefix covers.
        let mut expected = 0usize;
        for p in -50i64..=50 {
            for q in 1i64..=50 {
                if gcd(p.unsigned_abs(), q as u64) == 1 {
                    expected += 1;
                    assert!(
                        set.contains(&crate::format_rational(&rat(p, q))),
                        "{p}/{q} missing"
                    );
                }
            }
        }
        assert!(expected > 3000);
    }

    #[test]
    fn seeds_parse_and_reject_rational_roots() {
        assert_eq!(SeedConstant::parse("sqrt2").unwrap(), SeedConstant::Sqrt(2));
        assert_eq!(SeedConstant::parse(" PHI ").unwrap(), SeedConstant::Phi);
        assert!(matches!(SeedConstant::parse("sqrt9"), Err(FamilyError::InvalidSeed { .. })));
        assert!(matches!(SeedConstant::parse("sqrt0"), Err(FamilyError::InvalidSeed { .. })));
        assert!(matches!(SeedConstant::parse("tau"), Err(FamilyError::InvalidSeed { .. })));
    }

    #[test]
    fn fixed_point_values_match_known_expansions() {
        assert!((SeedConstant::Sqrt(2).approx_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!((SeedConstant::Pi.approx_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!((SeedConstant::Phi.approx_f64() - 1.618_033_988_749_895).abs() < 1e-15);
    }

    #[test]
    fn schedule_comparison_is_exact_near_the_boundary() {
        // alpha = sqrt2; candidate 3/2 at k = 2: |3/2 - sqrt2| = 0.0858 < 1/2.
        let fp = SeedConstant::Sqrt(2).fixed_point();
        assert_eq!(within_schedule(&rat(3, 2), &fp, 2), Some(true));
        // 2 at k = 2: |2 - sqrt2| = 0.5858 >= 1/2.
        assert_eq!(within_schedule(&rat(2, 1), &fp, 2), Some(false));
        // 1 at k = 1: 0.414 < 1.
        assert_eq!(within_schedule(&rat(1, 1), &fp, 1), Some(true));
    }

    #[test]
    fn ad_set_indices_strictly_increase_and_approximants_converge() {
        let mut e = RationalEnumeration::new();
        let set = ad_set(&mut e, &SeedConstant::Sqrt(2), 12).unwrap();
        assert_eq!(set.indices.len(), 12);
        assert!(set.indices.windows(2).all(|w| w[0] < w[1]));
        for (k, s) in set.approximants.iter().enumerate() {
            let q = crate::parse_rational(s).unwrap();
            let err = (q.to_f64().unwrap() - std::f64::consts::SQRT_2).abs();
            assert!(err < 1.0 / (k as f64 + 1.0), "step {}: error {err}", k + 1);
        }
    }

    #[test]
    fn member_sums_only_its_own_channels() {
        let target = TargetSpace::Euclidean { dim: 2 };
        let m = FamilyMember::from_indices("demo", [1u64, 4], target).unwrap();
        // Tile 0 is channel 1 (in the set); tile 2 is channel 2 (not).
        let inside = m.eval(&rat(5, 16), 12).unwrap();
        assert_eq!(inside.to_f64(), vec![-1.0, 0.0]);
        let off = m.eval(&rat(37, 16), 12).unwrap();
        assert!(off.is_zero());
        assert!(m.eval(&rat(-3, 1), 12).unwrap().is_zero());
        assert!(m.eval(&rat(0, 1), 12).unwrap().is_zero());
    }

    #[test]
    fn combo_reduces_to_scaled_profile_on_exclusive_channels() {
        let target = TargetSpace::Euclidean { dim: 2 };
        let m1 = FamilyMember::from_indices("a", [1u64, 2], target).unwrap();
        let m2 = FamilyMember::from_indices("b", [1u64, 3], target).unwrap();
        let coeffs = [0.5, -2.5];
        // Channel 3 belongs only to m2; tile encode(1, 3) hosts it.
        let j = pairing::encode(1, 3);
        let t = BigRational::from(BigInt::from(j)) + rat(5, 16);
        let combo = combo_eval(&coeffs, &[m1.clone(), m2.clone()], &t, 12).unwrap();
        let single = m2.eval(&t, 12).unwrap();
        let scaled: Vec<BigRational> = single
            .coords
            .iter()
            .map(|c| c * BigRational::from_float(-2.5).unwrap())
            .collect();
        assert_eq!(combo.coords, scaled, "exact identity on the exclusive channel");
        // Shared channel 1: coefficients add.
        let t = rat(5, 16);
        let combo = combo_eval(&coeffs, &[m1, m2], &t, 12).unwrap();
        let expect: Vec<BigRational> = [rat(2, 1), rat(0, 1)]
            .iter()
            .map(|c| c * BigRational::from_float(-2.0).unwrap() * rat(-1, 2))
            .collect();
        assert_eq!(combo.coords, expect);
    }

    #[test]
    fn zero_coefficients_give_zero_everywhere() {
        let target = TargetSpace::Euclidean { dim: 2 };
        let m1 = FamilyMember::from_indices("a", [1u64], target).unwrap();
        let m2 = FamilyMember::from_indices("b", [2u64], target).unwrap();
        for t in [rat(5, 16), rat(21, 16), rat(7, 2)] {
            assert!(combo_eval(&[0.0, 0.0], &[m1.clone(), m2.clone()], &t, 12)
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn duplicated_member_fails_rank_with_fallback_sampling() {
        let target = TargetSpace::Euclidean { dim: 2 };
        let m = FamilyMember::from_indices("dup", [1u64, 2], target).unwrap();
        let locals = [rat(1, 4), rat(5, 16), rat(3, 8)];
        let report = independence_test(&[m.clone(), m], 2, &locals, 12).unwrap();
        assert_eq!(report.rank, 1);
        assert!(!report.pass);
        assert_eq!(report.exclusive_sampled, vec![false, false]);
    }

    #[test]
    fn disjoint_prefixes_get_full_rank() {
        let target = TargetSpace::Euclidean { dim: 2 };
        let m1 = FamilyMember::from_indices("a", [1u64, 3], target).unwrap();
        let m2 = FamilyMember::from_indices("b", [2u64, 5], target).unwrap();
        let locals = [rat(1, 4), rat(5, 16), rat(3, 8)];
        let report = independence_test(&[m1, m2], 2, &locals, 12).unwrap();
        assert_eq!(report.rank, 2);
        assert!(report.pass);
        assert_eq!(report.exclusive_sampled, vec![true, true]);
        assert!(report.singular_values[1] / report.singular_values[0] > RANK_THRESHOLD);
    }

    #[test]
    fn degenerate_plans_are_rejected() {
        let target = TargetSpace::Euclidean { dim: 2 };
        let m1 = FamilyMember::from_indices("a", [1u64], target).unwrap();
        let m2 = FamilyMember::from_indices("b", [2u64], target).unwrap();
        assert!(matches!(
            independence_test(&[m1.clone(), m2.clone()], 0, &[rat(1, 4)], 12),
            Err(FamilyError::DegenerateSamplePlan { .. })
        ));
        assert!(matches!(
            independence_test(&[m1.clone(), m2.clone()], 2, &[], 12),
            Err(FamilyError::DegenerateSamplePlan { .. })
        ));
        assert!(matches!(
            independence_test(&[m1, m2], 2, &[rat(3, 2)], 12),
            Err(FamilyError::DegenerateSamplePlan { .. })
        ));
    }
}

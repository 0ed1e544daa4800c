//! Verification harness: epsilon-net coverage scans over boxes,
//! fiber-unboundedness certification, and named property suites, all
//! emitting deterministic machine-readable reports.
//!
//! Reports are plain data. Every recorded residual or rank can be
//! recomputed from the inputs stored alongside it, and a run with the
//! same flags and seed serializes to byte-identical JSON; wall-clock
//! times are kept out of the serialized form for that reason.

use std::time::Instant;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::family::{
    ad_set, common_indices, independence_test, FamilyError, FamilyMember, RationalEnumeration,
    SeedConstant, RANK_THRESHOLD,
};
use crate::orders::{
    compose_poly, order_from_coeff_fit, order_from_coeffs, prescribed_order_series, OrderError,
    PolySpec, TruncatedSeries, DEFAULT_WINDOW_FRACTION,
};
use crate::seqmaps::{
    big_phi, equicontinuity_bound, phi_r, product_metric, uniform_metric, BoxSpec, FiniteSeq,
    RateVector, SeqError,
};
use crate::tiling::{
    block_map_eval, fiber_witnesses, max_coord_depth, tile_lookup, LineMap, TargetPoint,
    TargetSpace, TilingError,
};
use crate::format_rational;

/// Suites accepted by [`run_suite`].
pub const SUITE_NAMES: [&str; 5] =
    ["order-laws", "lemma", "family-rank", "adset", "seq-bounds"];

/// Truncation used by the order-law and random-composition suites.
pub const SUITE_TRUNCATION: usize = 400;

/// Largest net a coverage scan will materialize.
pub const NET_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("invalid input: {reason}")]
    InvalidInput { reason: String },
    #[error("unknown suite {name:?}; expected one of {}", SUITE_NAMES.join(", "))]
    UnknownSuite { name: String },
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

pub type Result<T> = std::result::Result<T, VerifyError>;

/// Serialize a report with a stable layout and a trailing newline.
pub fn report_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}

// ---------------------------------------------------------------------------
// Coverage scans
// ---------------------------------------------------------------------------

/// A net point reached by the map: the parameter as an exact rational,
/// its decimal shadow, and the re-verified distance to the target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetPointHit {
    pub target: Vec<f64>,
    pub witness: String,
    pub witness_f64: f64,
    pub residual: f64,
}

/// A net point the scan could not certify, with the reason.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetPointMiss {
    pub target: Vec<f64>,
    pub reason: String,
}

/// Result of an epsilon-net coverage scan. Hits and misses partition
/// the net in enumeration order, and each hit's residual was
/// recomputed by evaluating the map at the recorded witness before
/// emission.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub map: String,
    pub net_box: BoxSpec,
    pub eps: f64,
    pub t_budget: f64,
    pub net_size: usize,
    pub hits: Vec<NetPointHit>,
    pub misses: Vec<NetPointMiss>,
    #[serde(skip)]
    pub wall_time_ms: f64,
}

impl CoverageReport {
    pub fn fully_covered(&self) -> bool {
        self.misses.is_empty() && self.hits.len() == self.net_size
    }
}

fn describe_map(map: &LineMap) -> String {
    let mode = match map.mode {
        crate::tiling::MapMode::Composite => "composite".to_string(),
        crate::tiling::MapMode::Channel(n) => format!("channel-{n}"),
    };
    let target = match map.target {
        TargetSpace::Euclidean { dim } => format!("euclidean-{dim}"),
        TargetSpace::FiniteSupport => "finite-support".to_string(),
    };
    format!("{mode}:{target}")
}

fn check_box(spec: &BoxSpec) -> Result<()> {
    if spec.intervals.is_empty() {
        return Err(VerifyError::InvalidInput { reason: "empty box".into() });
    }
    for &(lo, hi) in &spec.intervals {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(VerifyError::InvalidInput {
                reason: format!("bad interval [{lo}, {hi}]"),
            });
        }
    }
    Ok(())
}

/// Grid points covering the closed box with spacing at most `eps` on
/// each axis. A box whose diameter fits inside `eps` is covered by its
/// center alone.
pub fn box_net(spec: &BoxSpec, eps: f64) -> Result<Vec<Vec<f64>>> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(VerifyError::InvalidInput { reason: format!("bad net spacing {eps}") });
    }
    check_box(spec)?;
    let diameter = spec
        .intervals
        .iter()
        .map(|(lo, hi)| (hi - lo) * (hi - lo))
        .sum::<f64>()
        .sqrt();
    if diameter <= eps {
        let center: Vec<f64> =
            spec.intervals.iter().map(|(lo, hi)| 0.5 * (lo + hi)).collect();
        return Ok(vec![center]);
    }
    let mut total = 1usize;
    for &(lo, hi) in &spec.intervals {
        let count = if lo == hi { 1 } else { ((hi - lo) / eps).ceil().max(1.0) as usize + 1 };
        total = total.checked_mul(count).unwrap_or(usize::MAX);
        if total > NET_CAP {
            return Err(VerifyError::InvalidInput {
                reason: format!("net would exceed {NET_CAP} points"),
            });
        }
    }
    let axes: Vec<Vec<f64>> = spec
        .intervals
        .iter()
        .map(|&(lo, hi)| {
            if lo == hi {
                return vec![lo];
            }
            let steps = ((hi - lo) / eps).ceil().max(1.0) as usize;
            (0..=steps).map(|i| lo + (hi - lo) * i as f64 / steps as f64).collect()
        })
        .collect();
    let mut points = Vec::new();
    let mut index = vec![0usize; axes.len()];
    loop {
        points.push(index.iter().zip(&axes).map(|(&i, axis)| axis[i]).collect());
        let mut axis = axes.len();
        loop {
            if axis == 0 {
                return Ok(points);
            }
            axis -= 1;
            index[axis] += 1;
            if index[axis] < axes[axis].len() {
                break;
            }
            index[axis] = 0;
        }
    }
}

/// Evaluate the map at a witness parameter at the deepest exact depth
/// for the tile it falls in, so recomputation reproduces certified
/// residuals bit for bit.
fn certified_eval(map: &LineMap, t: &BigRational) -> Result<TargetPoint> {
    let tile = tile_lookup(t)?;
    let depth = max_coord_depth(map.target.box_dim(tile.k)).max(1);
    Ok(block_map_eval(map, t, depth)?)
}

/// Attempt a certified fiber witness for every point of the
/// `eps`-net of the box, accepting only witnesses at parameters within
/// `t_budget` whose re-evaluated image lies within `eps` of the
/// target.
pub fn coverage_scan(
    map: &LineMap,
    net_box: &BoxSpec,
    eps: f64,
    t_budget: f64,
) -> Result<CoverageReport> {
    if !t_budget.is_finite() || t_budget <= 0.0 {
        return Err(VerifyError::InvalidInput {
            reason: format!("bad parameter budget {t_budget}"),
        });
    }
    let start = Instant::now();

    // The resolution precondition binds hardest at the farthest corner
    // of the box; check it before materializing the net so a too-fine
    // eps is a scan error, not a wall of identical misses.
    if !eps.is_finite() || eps <= 0.0 {
        return Err(VerifyError::InvalidInput { reason: format!("bad net spacing {eps}") });
    }
    check_box(net_box)?;
    let corner: Vec<f64> = net_box
        .intervals
        .iter()
        .map(|&(lo, hi)| if hi.abs() >= lo.abs() { hi } else { lo })
        .collect();
    let probe = TargetPoint::from_f64s(&corner)?;
    if let Err(e @ TilingError::ResolutionTooCoarse { .. }) =
        fiber_witnesses(map, &probe, 1, 0.0, eps)
    {
        return Err(VerifyError::Tiling(e));
    }

    let net = box_net(net_box, eps)?;

    let mut hits = Vec::new();
    let mut misses = Vec::new();
    for point in &net {
        let a = TargetPoint::from_f64s(point)?;
        match fiber_witnesses(map, &a, 1, 0.0, eps) {
            Err(e) => misses.push(NetPointMiss { target: point.clone(), reason: e.to_string() }),
            Ok(report) => {
                let t = report.witnesses.last().expect("count >= 1");
                let t_f64 = t.to_f64().unwrap_or(f64::INFINITY);
                if t_f64 > t_budget {
                    misses.push(NetPointMiss {
                        target: point.clone(),
                        reason: format!("witness {t_f64} beyond the parameter budget"),
                    });
                    continue;
                }
                let image = certified_eval(map, t)?;
                let residual = image.distance_f64(&a);
                if residual <= eps {
                    hits.push(NetPointHit {
                        target: point.clone(),
                        witness: format_rational(t),
                        witness_f64: t_f64,
                        residual,
                    });
                } else {
                    misses.push(NetPointMiss {
                        target: point.clone(),
                        reason: format!("re-evaluated residual {residual} above {eps}"),
                    });
                }
            }
        }
    }
    Ok(CoverageReport {
        map: describe_map(map),
        net_box: net_box.clone(),
        eps,
        t_budget,
        net_size: net.len(),
        hits,
        misses,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Recompute a coverage report from its recorded inputs: the hit and
/// miss targets must partition the regenerated net in order, and every
/// hit's witness must still evaluate within `eps` of its target (and
/// within `1e-9` of the recorded residual).
pub fn reverify_coverage(map: &LineMap, report: &CoverageReport) -> Result<bool> {
    let net = box_net(&report.net_box, report.eps)?;
    if report.hits.len() + report.misses.len() != net.len() || report.net_size != net.len() {
        return Ok(false);
    }
    let mut hit_iter = report.hits.iter().peekable();
    let mut miss_iter = report.misses.iter().peekable();
    for point in &net {
        if hit_iter.peek().is_some_and(|h| &h.target == point) {
            hit_iter.next();
        } else if miss_iter.peek().is_some_and(|m| &m.target == point) {
            miss_iter.next();
        } else {
            return Ok(false);
        }
    }
    for hit in &report.hits {
        let t = crate::parse_rational(&hit.witness).ok_or_else(|| VerifyError::InvalidInput {
            reason: format!("unparseable witness {:?}", hit.witness),
        })?;
        let image = certified_eval(map, &t)?;
        let residual = image.distance_f64(&TargetPoint::from_f64s(&hit.target)?);
        if residual > report.eps || (residual - hit.residual).abs() > 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Suite results
// ---------------------------------------------------------------------------

/// One checked statement. `expected` and `observed` are either decimal
/// numbers compared within `tolerance`, a one-sided claim (`"> B"` or
/// `"< B"` in `expected`, checked against the observed value), or
/// plain strings compared exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteCase {
    pub id: String,
    pub expected: String,
    pub observed: String,
    pub tolerance: f64,
    pub pass: bool,
}

/// A named batch of checks, with the seed that drove any random cases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<SuiteCase>,
    #[serde(skip)]
    pub wall_time_ms: f64,
}

impl SuiteResult {
    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }
}

fn numeric_case(id: &str, expected: f64, observed: f64, tolerance: f64) -> SuiteCase {
    SuiteCase {
        id: id.to_string(),
        expected: format!("{expected}"),
        observed: format!("{observed}"),
        tolerance,
        pass: (expected - observed).abs() <= tolerance,
    }
}

fn exact_case(id: &str, expected: &str, observed: &str) -> SuiteCase {
    SuiteCase {
        id: id.to_string(),
        expected: expected.to_string(),
        observed: observed.to_string(),
        tolerance: 0.0,
        pass: expected == observed,
    }
}

fn above_case(id: &str, bound: f64, observed: f64) -> SuiteCase {
    SuiteCase {
        id: id.to_string(),
        expected: format!("> {bound}"),
        observed: format!("{observed}"),
        tolerance: 0.0,
        pass: observed > bound,
    }
}

fn below_case(id: &str, bound: f64, observed: f64) -> SuiteCase {
    SuiteCase {
        id: id.to_string(),
        expected: format!("< {bound}"),
        observed: format!("{observed}"),
        tolerance: 0.0,
        pass: observed < bound,
    }
}

// ---------------------------------------------------------------------------
// Unboundedness certification
// ---------------------------------------------------------------------------

/// For each target point and each bound, look for a certified fiber
/// witness past the bound. A witness in a tile past `tile_budget`
/// cannot be certified within the enumerated prefix, so such cases are
/// reported as budget exhaustion rather than searched for.
pub fn unboundedness_scan(
    map: &LineMap,
    points: &[Vec<f64>],
    bounds: &[f64],
    tile_budget: u64,
    eps: f64,
) -> Result<SuiteResult> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(VerifyError::InvalidInput { reason: format!("bad tolerance {eps}") });
    }
    if bounds.iter().any(|b| !b.is_finite() || *b < 0.0) {
        return Err(VerifyError::InvalidInput { reason: "bounds must be finite and >= 0".into() });
    }
    let start = Instant::now();
    let mut cases = Vec::new();
    for (i, point) in points.iter().enumerate() {
        let a = TargetPoint::from_f64s(point)?;
        for &bound in bounds {
            let id = format!("point-{i}-beyond-{bound}");
            let needed_tile = bound.floor() as u64 + 1;
            if needed_tile > tile_budget {
                cases.push(SuiteCase {
                    id,
                    expected: format!("> {bound}"),
                    observed: format!(
                        "budget exhausted: needs tile {needed_tile}, prefix ends at {tile_budget}"
                    ),
                    tolerance: 0.0,
                    pass: false,
                });
                continue;
            }
            match fiber_witnesses(map, &a, 1, bound, eps) {
                Ok(report) => {
                    let t = report.witnesses.last().expect("count >= 1");
                    let t_f64 = t.to_f64().unwrap_or(f64::INFINITY);
                    cases.push(SuiteCase {
                        id,
                        expected: format!("> {bound}"),
                        observed: format_rational(t),
                        tolerance: 0.0,
                        pass: t_f64 > bound,
                    });
                }
                Err(e) => cases.push(SuiteCase {
                    id,
                    expected: format!("> {bound}"),
                    observed: e.to_string(),
                    tolerance: 0.0,
                    pass: false,
                }),
            }
        }
    }
    Ok(SuiteResult {
        suite: "unboundedness".into(),
        seed: 0,
        cases,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

// ---------------------------------------------------------------------------
// Named property suites
// ---------------------------------------------------------------------------

/// Run one of the named property suites with pinned truncations; the
/// seed drives any random cases and is recorded in the result.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteResult> {
    let start = Instant::now();
    let mut result = match name {
        "order-laws" => suite_order_laws(seed),
        "lemma" => suite_lemma(seed),
        "family-rank" => suite_family_rank(seed),
        "adset" => suite_adset(seed),
        "seq-bounds" => suite_seq_bounds(seed),
        other => Err(VerifyError::UnknownSuite { name: other.to_string() }),
    }?;
    result.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(result)
}

/// Exact coefficient reads for prescribed-growth series, plus the
/// scale/power and dominant-sum laws at the pinned truncation.
fn suite_order_laws(seed: u64) -> Result<SuiteResult> {
    let mut cases = Vec::new();
    for alpha in [0.5, 1.5, 2.5] {
        for n in [64usize, SUITE_TRUNCATION] {
            let series = prescribed_order_series(alpha, n)?;
            let est = order_from_coeffs(&series, DEFAULT_WINDOW_FRACTION)?;
            cases.push(numeric_case(
                &format!("exact-order-alpha-{alpha}-n{n}"),
                alpha,
                est.value,
                1e-9,
            ));
        }
    }

    // Scalar factors and fixed powers leave the growth order alone.
    let f = prescribed_order_series(1.3, SUITE_TRUNCATION)?;
    let direct = order_from_coeff_fit(&f, DEFAULT_WINDOW_FRACTION)?.value;
    let powered = compose_poly(&PolySpec::parse("3*z1^4")?, std::slice::from_ref(&f))?;
    let powered_est = order_from_coeff_fit(&powered, DEFAULT_WINDOW_FRACTION)?.value;
    cases.push(numeric_case("power-scale-preserves-order", direct, powered_est, 0.1));

    // A sum grows like its fastest-growing part.
    let slow = prescribed_order_series(0.5, SUITE_TRUNCATION)?;
    let fast = prescribed_order_series(1.5, SUITE_TRUNCATION)?;
    let sum = compose_poly(&PolySpec::parse("z1 + z2")?, &[slow, fast])?;
    let sum_est = order_from_coeff_fit(&sum, DEFAULT_WINDOW_FRACTION)?.value;
    cases.push(numeric_case("sum-dominant-order", 1.5, sum_est, 0.1));

    Ok(SuiteResult { suite: "order-laws".into(), seed, cases, wall_time_ms: 0.0 })
}

/// Orders for a random composition case: drawn from `(0.05, 2.95)`,
/// kept clear of the integers and of each other.
fn random_orders(rng: &mut ChaCha8Rng, count: usize) -> Vec<f64> {
    let mut orders: Vec<f64> = Vec::with_capacity(count);
    while orders.len() < count {
        let cand: f64 = rng.gen_range(0.05..2.95);
        if (cand - cand.round()).abs() < 0.05 {
            continue;
        }
        if orders.iter().any(|o| (o - cand).abs() < 0.4) {
            continue;
        }
        orders.push(cand);
    }
    orders
}

/// A random non-constant polynomial in `nvars` variables: one to three
/// terms, exponents up to 2, integer coefficients up to 5.
fn random_poly(rng: &mut ChaCha8Rng, nvars: usize) -> Result<PolySpec> {
    loop {
        let nterms = rng.gen_range(1..=3usize);
        let mut text = String::new();
        for term in 0..nterms {
            let coeff: i32 = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let mut exps = vec![0u32; nvars];
            while exps.iter().all(|e| *e == 0) {
                for e in exps.iter_mut() {
                    *e = rng.gen_range(0..=2);
                }
            }
            if term > 0 {
                text.push_str(if coeff >= 0 { " + " } else { " - " });
            } else if coeff < 0 {
                text.push('-');
            }
            text.push_str(&coeff.abs().to_string());
            for (var, &e) in exps.iter().enumerate() {
                if e > 0 {
                    text.push_str(&format!("*z{}", var + 1));
                    if e > 1 {
                        text.push_str(&format!("^{e}"));
                    }
                }
            }
        }
        let poly = PolySpec::parse(&text)?.widen(nvars)?;
        if !poly.is_constant() {
            return Ok(poly);
        }
    }
}

/// Twenty random compositions: the estimated order of
/// `P(f_1, ..., f_m)` must sit within 0.2 of the largest order among
/// the variables the polynomial actually uses.
fn suite_lemma(seed: u64) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for case in 0..20 {
        let nvars = rng.gen_range(2..=3usize);
        let orders = random_orders(&mut rng, nvars);
        let poly = random_poly(&mut rng, nvars)?;
        let series: Vec<TruncatedSeries> = orders
            .iter()
            .map(|&alpha| prescribed_order_series(alpha, SUITE_TRUNCATION))
            .collect::<std::result::Result<_, _>>()?;
        let used = poly.index_set()?;
        // Variable indices are 1-based ("z1" is the first order).
        let expected = used
            .iter()
            .map(|&i| orders[i - 1])
            .fold(0.0f64, f64::max);
        let composed = compose_poly(&poly, &series)?;
        let est = order_from_coeff_fit(&composed, DEFAULT_WINDOW_FRACTION)?.value;
        cases.push(numeric_case(
            &format!("random-composition-{case}"),
            expected,
            est,
            0.2,
        ));
    }
    Ok(SuiteResult { suite: "lemma".into(), seed, cases, wall_time_ms: 0.0 })
}

fn suite_family_seeds() -> Result<Vec<SeedConstant>> {
    ["sqrt2", "sqrt3", "sqrt5", "sqrt6", "sqrt7", "sqrt10", "sqrt11", "sqrt13", "phi", "pi"]
        .iter()
        .map(|s| Ok(SeedConstant::parse(s)?))
        .collect()
}

fn quarter_locals() -> Vec<BigRational> {
    [(1i64, 4i64), (5, 16), (3, 8)]
        .iter()
        .map(|&(n, d)| BigRational::new(n.into(), d.into()))
        .collect()
}

/// Ten members must read as independent under sampled evaluation, and
/// a deliberately duplicated member must be caught.
fn suite_family_rank(seed: u64) -> Result<SuiteResult> {
    let target = TargetSpace::Euclidean { dim: 2 };
    let mut enumeration = RationalEnumeration::new();
    let mut members = Vec::new();
    for constant in suite_family_seeds()? {
        let set = ad_set(&mut enumeration, &constant, 24)?;
        members.push(FamilyMember::from_ad_set(&set, target)?);
    }
    let locals = quarter_locals();
    let report = independence_test(&members, 2, &locals, 16)?;
    let mut cases = Vec::new();
    cases.push(exact_case("ten-seed-rank", "10", &report.rank.to_string()));
    let ratio = report
        .singular_values
        .last()
        .copied()
        .unwrap_or(0.0)
        / report.singular_values.first().copied().unwrap_or(1.0);
    cases.push(above_case("singular-ratio", RANK_THRESHOLD, ratio));
    cases.push(exact_case(
        "all-members-exclusively-sampled",
        "true",
        &report.exclusive_sampled.iter().all(|b| *b).to_string(),
    ));

    // Negative control: the same index set twice can never read as
    // independent, and the report must say so.
    let dup = ad_set(&mut RationalEnumeration::new(), &SeedConstant::parse("sqrt2")?, 24)?;
    let twins = vec![
        FamilyMember::from_ad_set(&dup, target)?,
        FamilyMember::from_ad_set(&dup, target)?,
    ];
    let control = independence_test(&twins, 2, &locals, 16)?;
    let flagged = !control.pass
        && control.rank < twins.len()
        && control.exclusive_sampled.iter().all(|b| !*b);
    cases.push(exact_case(
        "duplicate-member-negative-control",
        "rank deficiency detected",
        if flagged { "rank deficiency detected" } else { "duplicate went unnoticed" },
    ));
    Ok(SuiteResult { suite: "family-rank".into(), seed, cases, wall_time_ms: 0.0 })
}

fn format_indices(indices: &[u64]) -> String {
    indices.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

/// Golden enumeration prefixes and the early stabilization of pairwise
/// intersections.
fn suite_adset(seed: u64) -> Result<SuiteResult> {
    let mut enumeration = RationalEnumeration::new();
    let sqrt2 = SeedConstant::parse("sqrt2")?;
    let sqrt3 = SeedConstant::parse("sqrt3")?;
    let mut cases = Vec::new();

    let prefix = ad_set(&mut enumeration, &sqrt2, 5)?;
    cases.push(exact_case(
        "sqrt2-prefix-indices",
        "2 16 30 50 88",
        &format_indices(&prefix.indices),
    ));
    cases.push(exact_case(
        "sqrt2-prefix-approximants",
        "1/1 3/2 4/3 5/4 7/5",
        &prefix.approximants.join(" "),
    ));

    let mut intersections = Vec::new();
    let mut last_index = 0u64;
    for count in [16usize, 32, 48] {
        let a = ad_set(&mut enumeration, &sqrt2, count)?;
        let b = ad_set(&mut enumeration, &sqrt3, count)?;
        intersections.push(format_indices(&common_indices(&a, &b)));
        last_index = last_index
            .max(*a.indices.last().expect("nonempty"))
            .max(*b.indices.last().expect("nonempty"));
    }
    cases.push(exact_case(
        "sqrt2-sqrt3-intersection-stable",
        "2 16 | 2 16 | 2 16",
        &intersections.join(" | "),
    ));
    cases.push(below_case("indices-within-enumeration-prefix", 10_000.0, last_index as f64));
    Ok(SuiteResult { suite: "adset".into(), seed, cases, wall_time_ms: 0.0 })
}

/// Sequence-space bounds: the pinned value of the first coordinate
/// map, exhaustive random sweeps for the equicontinuity and sup
/// bounds, metric caps, and the overflow contract.
fn suite_seq_bounds(seed: u64) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();

    let e = std::f64::consts::E;
    cases.push(numeric_case("phi-rate-1-at-1", e - 1.0 / e, phi_r(1.0, 1.0)?, 1e-12));

    let mut equi_violations = 0u64;
    for _ in 0..10_000 {
        let rates = RateVector::new(
            (0..3).map(|_| rng.gen_range(0.05..=2.0)).collect(),
            rng.gen_range(0.05..=2.0),
        )?;
        let t = rng.gen_range(-3.0..=3.0);
        let s = rng.gen_range(-3.0..=3.0);
        let bound = equicontinuity_bound(&rates, t, s);
        for n in 1..=4 {
            let r = rates.rate(n);
            if (phi_r(r, t)? - phi_r(r, s)?).abs() > bound + 1e-12 {
                equi_violations += 1;
            }
        }
    }
    cases.push(numeric_case("equicontinuity-violations", 0.0, equi_violations as f64, 0.0));

    let mut sup_violations = 0u64;
    let mut support_violations = 0u64;
    for _ in 0..1_000 {
        let rates = RateVector::new(vec![rng.gen_range(0.1..=2.0)], rng.gen_range(0.1..=2.0))?;
        let len = rng.gen_range(0..8usize);
        let entries: Vec<f64> = (0..len)
            .map(|_| if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(-2.0..=2.0) })
            .collect();
        let x = FiniteSeq::new(entries)?;
        let image = big_phi(&rates, &x)?;
        let cap = (rates.sup_norm() * x.sup_norm()).exp();
        if image.entries().iter().any(|v| v.abs() > cap) {
            sup_violations += 1;
        }
        if image.support() != x.support() {
            support_violations += 1;
        }
    }
    cases.push(numeric_case("sup-bound-violations", 0.0, sup_violations as f64, 0.0));
    cases.push(numeric_case("support-preservation-violations", 0.0, support_violations as f64, 0.0));

    let mut cap_violations = 0u64;
    for _ in 0..1_000 {
        let len = rng.gen_range(0..6usize);
        let a = FiniteSeq::new((0..len).map(|_| rng.gen_range(-40.0..=40.0)).collect())?;
        let b = FiniteSeq::new((0..len).map(|_| rng.gen_range(-40.0..=40.0)).collect())?;
        if product_metric(&a, &b, 24)?.value >= 1.0 {
            cap_violations += 1;
        }
        let f: crate::seqmaps::IndexedValues = (0..4)
            .map(|i| (format!("k{i}"), rng.gen_range(-40.0..=40.0)))
            .collect();
        let g: crate::seqmaps::IndexedValues = (0..4)
            .map(|i| (format!("k{i}"), rng.gen_range(-40.0..=40.0)))
            .collect();
        if uniform_metric(&f, &g)? > 1.0 {
            cap_violations += 1;
        }
    }
    cases.push(numeric_case("metric-cap-violations", 0.0, cap_violations as f64, 0.0));

    cases.push(exact_case(
        "overflow-is-flagged",
        "overflow error",
        match phi_r(100.0, 10.0) {
            Err(SeqError::Overflow { .. }) => "overflow error",
            _ => "no error raised",
        },
    ));
    Ok(SuiteResult { suite: "seq-bounds".into(), seed, cases, wall_time_ms: 0.0 })
}

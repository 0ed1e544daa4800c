//! Polynomial combinations of prescribed-order entire functions,
//! precomposed with the plane-filling line map.
//!
//! A generator is an entire function `f_s` of prescribed growth order
//! `s` (positive, non-integer), represented by a power-series
//! truncation with zero constant term. An element is a non-constant
//! polynomial `P` without constant term applied to finitely many
//! generators, all of distinct orders, each precomposed with the same
//! surjective line-to-plane map `F`:
//!
//! `t  |->  P(f_{s_1}(F(t)), ..., f_{s_m}(F(t)))`
//!
//! identifying the plane with the complex numbers. Because every
//! monomial of `P` carries at least one generator factor and every
//! generator vanishes at the origin, an element vanishes exactly where
//! `F` does: on the closed negative half-line and at the integer tile
//! endpoints. Those zeros are produced exactly (the half-line test and
//! the tile endpoints are decided in rational arithmetic).
//!
//! [`surjectivity_scan`] probes the image of an element over a disc:
//! for each point of an epsilon-net it searches for an explicit
//! parameter `t` whose value lands within the tolerance, by inverting
//! the composed series with a damped Newton iteration and then asking
//! the line map for a preimage of the resulting plane point.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::orders::{
    compose_poly, order_from_coeffs, prescribed_order_series, OrderError, OrderEstimate,
    PolySpec, TruncatedSeries, WideComplex, DEFAULT_WINDOW_FRACTION,
};
use crate::tiling::{
    composite_eval, fiber_witnesses, LineMap, TargetPoint, TargetSpace, TilingError,
};

/// Evaluation depth used when a caller does not supply one: enough for
/// roughly single-float accuracy of the plane point on the boxes the
/// scans visit, far below the exact-arithmetic depth limit.
pub const DEFAULT_EVAL_DEPTH: u32 = 28;

/// Newton iteration cap per starting point in [`surjectivity_scan`].
const NEWTON_MAX_ITERS: usize = 50;

/// Radial and angular resolution of the seed grid used to start the
/// Newton searches.
const SCAN_GRID: (usize, usize) = (64, 96);

/// Newton starting points tried per net target before giving up.
const NEWTON_STARTS: usize = 6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("invalid generator: {reason}")]
    InvalidGenerator { reason: String },
    #[error("invalid element: {reason}")]
    InvalidElement { reason: String },
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

/// One generator: a prescribed growth order together with its series
/// truncation and the plane-filling base map shared by all generators.
#[derive(Debug, Clone)]
pub struct GeneratorSpec {
    order: f64,
    series: TruncatedSeries,
    base: LineMap,
}

impl GeneratorSpec {
    /// A generator of growth order `order`, kept to `truncation` series
    /// coefficients. The order must be positive and non-integer: the
    /// integer orders are exactly the degenerate ones for the
    /// independence structure the algebra is built to exhibit, so they
    /// are rejected at the door.
    pub fn new(order: f64, truncation: usize) -> Result<Self> {
        if !order.is_finite() || order <= 0.0 {
            return Err(AlgebraError::InvalidGenerator {
                reason: format!("order must be positive and finite, got {order}"),
            });
        }
        if order.fract() == 0.0 {
            return Err(AlgebraError::InvalidGenerator {
                reason: format!("order must not be an integer, got {order}"),
            });
        }
        let series = prescribed_order_series(order, truncation)?;
        let base = LineMap::composite(TargetSpace::Euclidean { dim: 2 })?;
        Ok(GeneratorSpec { order, series, base })
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn base(&self) -> &LineMap {
        &self.base
    }
}

/// A polynomial without constant term applied to generators of pairwise
/// distinct orders, all precomposed with the same line-to-plane map.
#[derive(Debug, Clone)]
pub struct AlgebraElement {
    poly: PolySpec,
    generators: Vec<GeneratorSpec>,
}

impl AlgebraElement {
    pub fn new(poly: PolySpec, generators: Vec<GeneratorSpec>) -> Result<Self> {
        if generators.is_empty() {
            return Err(AlgebraError::InvalidElement {
                reason: "need at least one generator".into(),
            });
        }
        if poly.vars() != generators.len() {
            return Err(AlgebraError::InvalidElement {
                reason: format!(
                    "polynomial uses {} variables but {} generators were supplied",
                    poly.vars(),
                    generators.len()
                ),
            });
        }
        if poly.is_constant() {
            return Err(AlgebraError::InvalidElement {
                reason: "polynomial must not be constant".into(),
            });
        }
        if poly.constant_term() != (0.0, 0.0) {
            return Err(AlgebraError::InvalidElement {
                reason: "polynomial must have zero constant term".into(),
            });
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                if generators[i].order == generators[j].order {
                    return Err(AlgebraError::InvalidElement {
                        reason: format!(
                            "generator orders must be pairwise distinct, got {} twice",
                            generators[i].order
                        ),
                    });
                }
            }
        }
        Ok(AlgebraElement { poly, generators })
    }

    pub fn poly(&self) -> &PolySpec {
        &self.poly
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    /// The shared plane point `F(t)` under the element's base map.
    pub fn plane_value(&self, t: &BigRational, depth: u32) -> Result<TargetPoint> {
        Ok(composite_eval(self.generators[0].base(), t, depth)?)
    }

    /// Evaluate the element at parameter `t`, as a complex number
    /// `(re, im)`. Zeros of the base map (all of `t <= 0` and the
    /// integer tile endpoints) evaluate to exactly `(0, 0)`. Returns
    /// the truncation-reliability error when `F(t)` lands far enough
    /// out that the stored series tails are no longer negligible.
    pub fn eval(&self, t: &BigRational, depth: u32) -> Result<(f64, f64)> {
        let z = self.plane_value(t, depth)?;
        if z.is_zero() {
            return Ok((0.0, 0.0));
        }
        let xy = z.to_f64();
        let (x, y) = (xy[0], xy[1]);
        let r = x.hypot(y);
        let values: Vec<WideComplex> = self
            .generators
            .iter()
            .map(|g| {
                let v = g.series.eval(x, y);
                check_tail_at_point(g.series(), r, &v)?;
                Ok(v)
            })
            .collect::<Result<_>>()?;
        Ok(apply_poly(&self.poly, &values).to_f64_pair())
    }

    /// Convenience wrapper: evaluate at a float parameter (converted
    /// exactly to a rational).
    pub fn eval_f64(&self, t: f64, depth: u32) -> Result<(f64, f64)> {
        let tq = BigRational::from_float(t).ok_or_else(|| AlgebraError::InvalidElement {
            reason: format!("parameter {t} is not finite"),
        })?;
        self.eval(&tq, depth)
    }

    /// The single power series of the element as a function of the
    /// plane variable: the polynomial composed with the generator
    /// series, truncated at the shortest generator truncation.
    pub fn composed_series(&self) -> Result<TruncatedSeries> {
        let series: Vec<TruncatedSeries> =
            self.generators.iter().map(|g| g.series.clone()).collect();
        Ok(compose_poly(&self.poly, &series)?)
    }

    /// Growth order of the element read from its composed series by the
    /// windowed coefficient formula.
    pub fn order(&self) -> Result<OrderEstimate> {
        Ok(order_from_coeffs(&self.composed_series()?, DEFAULT_WINDOW_FRACTION)?)
    }
}

/// Polynomial evaluation on wide-exponent complex values, monomial by
/// monomial with exact repeated multiplication.
fn apply_poly(poly: &PolySpec, values: &[WideComplex]) -> WideComplex {
    let mut acc = WideComplex::ZERO;
    for (exps, &(re, im)) in poly.terms() {
        let mut term = WideComplex::new(re, im);
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                term = term.mul(&values[i]);
            }
        }
        acc = acc.add(&term);
    }
    acc
}

/// Reject a pointwise series evaluation whose dropped tail is not at
/// least twelve decades below the computed value (or below 1, so a
/// genuine near-zero of the function is not misread as unreliable).
fn check_tail_at_point(series: &TruncatedSeries, r: f64, value: &WideComplex) -> Result<()> {
    if r <= 0.0 {
        return Ok(());
    }
    let tail = series.tail_ln_bound(r);
    let reference = value.ln_norm().max(0.0);
    if tail.is_finite() && tail > reference + (1e-12f64).ln() {
        return Err(AlgebraError::Order(OrderError::TruncationUnreliable {
            radius: r,
            tail_ratio: (tail - reference).exp(),
        }));
    }
    Ok(())
}

/// One net point that was reached: the explicit rational parameter and
/// the achieved distance to the target value.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetHit {
    pub target: [f64; 2],
    /// Exact witness parameter, printed as `numerator/denominator`.
    pub witness: String,
    pub witness_f64: f64,
    pub residual: f64,
}

/// One net point for which no witness within tolerance was found, with
/// the reason the search gave up.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetMiss {
    pub target: [f64; 2],
    pub reason: String,
}

/// Outcome of [`surjectivity_scan`]: every net point is listed exactly
/// once, either as a hit or as a miss.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanReport {
    pub radius: f64,
    pub eps: f64,
    pub t_budget: f64,
    pub net_size: usize,
    /// Radius of the disc in the plane on which series inversion was
    /// trusted and seeded.
    pub seed_radius: f64,
    pub hits: Vec<NetHit>,
    pub misses: Vec<NetMiss>,
}

struct NewtonOutcome {
    z: (f64, f64),
    derivative: f64,
}

/// For every point `w` of an `eps`-net of the closed disc of radius
/// `radius`, search for an explicit parameter `t <= t_budget` with
/// `|element(t) - w| <= eps`. The search is deterministic: a fixed
/// polar seed grid, damped Newton refinement of the composed series,
/// and an exact-arithmetic preimage query against the base map. Failed
/// points are reported as misses with reasons, never dropped.
pub fn surjectivity_scan(
    element: &AlgebraElement,
    radius: f64,
    eps: f64,
    t_budget: f64,
) -> Result<ScanReport> {
    if !radius.is_finite() || radius <= 0.0 || !eps.is_finite() || eps <= 0.0 {
        return Err(AlgebraError::InvalidElement {
            reason: format!("scan needs positive radius and eps, got {radius}, {eps}"),
        });
    }
    if !t_budget.is_finite() || t_budget <= 0.0 {
        return Err(AlgebraError::InvalidElement {
            reason: format!("scan needs a positive parameter budget, got {t_budget}"),
        });
    }

    let g = element.composed_series()?;
    let dg = g.derivative()?;
    let seed_radius = seed_radius_for(&g, &dg, radius, eps);
    let base = element.generators[0].base();

    // Seed grid: g sampled over concentric circles, plus the origin
    // (which the series maps to itself).
    let (n_rad, n_ang) = SCAN_GRID;
    let mut seeds: Vec<((f64, f64), (f64, f64))> = Vec::with_capacity(n_rad * n_ang + 1);
    seeds.push(((0.0, 0.0), (0.0, 0.0)));
    for l in 1..=n_rad {
        let rho = seed_radius * l as f64 / n_rad as f64;
        for a in 0..n_ang {
            let theta = 2.0 * std::f64::consts::PI * a as f64 / n_ang as f64;
            let z = (rho * theta.cos(), rho * theta.sin());
            let v = g.eval(z.0, z.1).to_f64_pair();
            seeds.push((z, v));
        }
    }

    let net = disc_net(radius, eps);
    let mut hits = Vec::new();
    let mut misses = Vec::new();
    for w in &net {
        match chase_target(element, base, &g, &dg, &seeds, *w, eps, t_budget, seed_radius) {
            Ok(hit) => hits.push(hit),
            Err(reason) => misses.push(NetMiss { target: [w.0, w.1], reason }),
        }
    }

    Ok(ScanReport {
        radius,
        eps,
        t_budget,
        net_size: net.len(),
        seed_radius,
        hits,
        misses,
    })
}

/// Smallest disc radius (on a fixed geometric ladder) from which the
/// Newton inversion actually reaches the target boundary: every probe
/// value on the target circle (and a half-radius ring) must be
/// attained by a trial Newton run seeded from a coarse sample of the
/// disc. Proximity of sampled values alone is not enough — near a
/// critical value the series folds, and the shadow sheet carries
/// values close to the target without ever reaching it — so the trial
/// runs are the criterion. Growth of the ladder stops where the series
/// truncation stops being trustworthy; if the boundary is never fully
/// reached, the radius with the highest probe success count wins.
fn seed_radius_for(
    g: &TruncatedSeries,
    dg: &TruncatedSeries,
    target_radius: f64,
    eps: f64,
) -> f64 {
    let mut probes: Vec<(f64, f64)> = Vec::with_capacity(304);
    for (fraction, steps) in [(1.0, 96), (0.9, 72), (0.75, 64), (0.5, 48), (0.25, 24)] {
        for a in 0..steps {
            let th = 2.0 * std::f64::consts::PI * a as f64 / steps as f64;
            let rho = fraction * target_radius;
            probes.push((rho * th.cos(), rho * th.sin()));
        }
    }

    let mut r = 0.5;
    let mut best = (0usize, r);
    for _ in 0..40 {
        if g.max_modulus(r, 64).is_err() {
            break;
        }
        // Coarse sample of the disc of radius r, evaluated once.
        let mut coarse: Vec<((f64, f64), (f64, f64))> = Vec::with_capacity(32 * 64 + 1);
        coarse.push(((0.0, 0.0), (0.0, 0.0)));
        for l in 1..=32 {
            let rho = r * l as f64 / 32.0;
            for a in 0..64 {
                let th = 2.0 * std::f64::consts::PI * a as f64 / 64.0;
                let z = (rho * th.cos(), rho * th.sin());
                coarse.push((z, g.eval(z.0, z.1).to_f64_pair()));
            }
        }
        let mut success = 0usize;
        for &w in &probes {
            let starts = diversified_starts(&coarse, w, 3, 0.1 * r);
            if starts
                .iter()
                .any(|&i| newton_invert(g, dg, coarse[i].0, w, eps / 10.0, r).is_some())
            {
                success += 1;
            }
        }
        if success == probes.len() {
            return r;
        }
        if success > best.0 {
            best = (success, r);
        }
        r *= 1.25;
    }
    best.1
}

/// Indices of up to `count` seeds whose values lie nearest `w`, kept
/// pairwise at least `separation` apart in the source plane so
/// distinct sheets of the image all contribute a start.
fn diversified_starts(
    seeds: &[((f64, f64), (f64, f64))],
    w: (f64, f64),
    count: usize,
    separation: f64,
) -> Vec<usize> {
    let mut ranked: Vec<(f64, usize)> = Vec::with_capacity(40);
    for (idx, (_, v)) in seeds.iter().enumerate() {
        let d = (v.0 - w.0).hypot(v.1 - w.1);
        ranked.push((d, idx));
        if ranked.len() > 32 {
            ranked.sort_by(|a, b| a.0.total_cmp(&b.0));
            ranked.truncate(32);
        }
    }
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut starts: Vec<usize> = Vec::with_capacity(count);
    for &(_, idx) in &ranked {
        let z = seeds[idx].0;
        if starts
            .iter()
            .all(|&s| (seeds[s].0 .0 - z.0).hypot(seeds[s].0 .1 - z.1) >= separation)
        {
            starts.push(idx);
            if starts.len() == count {
                break;
            }
        }
    }
    starts
}

/// The epsilon-net of the closed disc: concentric rings spaced at most
/// `eps` apart radially, each filled with angular steps at most `eps`
/// long, outermost ring exactly on the boundary.
fn disc_net(radius: f64, eps: f64) -> Vec<(f64, f64)> {
    let rings = (radius / eps - 1e-9).ceil().max(1.0) as usize;
    let mut net = vec![(0.0, 0.0)];
    for i in 1..=rings {
        let r = radius * i as f64 / rings as f64;
        let steps = ((2.0 * std::f64::consts::PI * r / eps).ceil() as usize).max(1);
        for a in 0..steps {
            let theta = 2.0 * std::f64::consts::PI * a as f64 / steps as f64;
            net.push((r * theta.cos(), r * theta.sin()));
        }
    }
    net
}

#[allow(clippy::too_many_arguments)]
fn chase_target(
    element: &AlgebraElement,
    base: &LineMap,
    g: &TruncatedSeries,
    dg: &TruncatedSeries,
    seeds: &[((f64, f64), (f64, f64))],
    w: (f64, f64),
    eps: f64,
    t_budget: f64,
    seed_radius: f64,
) -> std::result::Result<NetHit, String> {
    // The target zero is hit exactly, at the canonical parameter 0.
    if w.0 == 0.0 && w.1 == 0.0 {
        return Ok(NetHit {
            target: [0.0, 0.0],
            witness: "0/1".into(),
            witness_f64: 0.0,
            residual: 0.0,
        });
    }

    // Rank seeds by how close their value sits to the target, then
    // force the chosen starts apart in the source plane: near a fold,
    // several sheets produce nearby values, and only one of them
    // actually reaches the target.
    let starts = diversified_starts(seeds, w, NEWTON_STARTS, 0.1 * seed_radius);

    let mut last_reason = "no seed converged".to_string();
    for &idx in &starts {
        let Some(sol) = newton_invert(g, dg, seeds[idx].0, w, eps / 10.0, seed_radius) else {
            last_reason = "newton did not converge".into();
            continue;
        };
        // A preimage of the plane point z* under the base map, pinned
        // tightly enough that the Lipschitz slack of g stays well
        // inside the tolerance.
        let tol_z = (0.4 * eps / (sol.derivative + 1.0)).min(0.05);
        let a = match TargetPoint::from_f64s(&[sol.z.0, sol.z.1]) {
            Ok(a) => a,
            Err(e) => {
                last_reason = format!("plane point rejected: {e}");
                continue;
            }
        };
        let report = match fiber_witnesses(base, &a, 1, 0.0, tol_z) {
            Ok(r) => r,
            Err(e) => {
                last_reason = format!("no preimage at tolerance {tol_z:.3e}: {e}");
                continue;
            }
        };
        let t = &report.witnesses[0];
        let t_f64 = t.to_f64().unwrap_or(f64::INFINITY);
        if t_f64 > t_budget {
            last_reason = format!("witness parameter {t_f64:.3} exceeds budget {t_budget}");
            continue;
        }
        let value = match element.eval(t, DEFAULT_EVAL_DEPTH) {
            Ok(v) => v,
            Err(e) => {
                last_reason = format!("witness evaluation failed: {e}");
                continue;
            }
        };
        let residual = (value.0 - w.0).hypot(value.1 - w.1);
        if residual <= eps {
            return Ok(NetHit {
                target: [w.0, w.1],
                witness: crate::format_rational(t),
                witness_f64: t_f64,
                residual,
            });
        }
        last_reason = format!("witness landed {residual:.3e} away (> eps)");
    }
    Err(last_reason)
}

/// Damped Newton iteration for `g(z) = w`, kept inside a disc slightly
/// larger than the seeded one so the series stays trustworthy. Returns
/// the solution and `|g'|` there, or nothing on stall.
fn newton_invert(
    g: &TruncatedSeries,
    dg: &TruncatedSeries,
    start: (f64, f64),
    w: (f64, f64),
    tol: f64,
    seed_radius: f64,
) -> Option<NewtonOutcome> {
    let cap = 1.3 * seed_radius;
    let mut z = start;
    let mut residual = {
        let v = g.eval(z.0, z.1).to_f64_pair();
        (v.0 - w.0).hypot(v.1 - w.1)
    };
    for _ in 0..NEWTON_MAX_ITERS {
        if residual <= tol {
            let d = dg.eval(z.0, z.1).to_f64_pair();
            return Some(NewtonOutcome { z, derivative: d.0.hypot(d.1) });
        }
        let v = g.eval(z.0, z.1).to_f64_pair();
        let d = dg.eval(z.0, z.1).to_f64_pair();
        let denom = d.0 * d.0 + d.1 * d.1;
        if denom < 1e-28 {
            return None;
        }
        // step = (g(z) - w) / g'(z)
        let num = (v.0 - w.0, v.1 - w.1);
        let step = (
            (num.0 * d.0 + num.1 * d.1) / denom,
            (num.1 * d.0 - num.0 * d.1) / denom,
        );
        let mut lambda = 1.0;
        let mut improved = false;
        for _ in 0..10 {
            let mut cand = (z.0 - lambda * step.0, z.1 - lambda * step.1);
            let norm = cand.0.hypot(cand.1);
            if norm > cap {
                let shrink = cap / norm;
                cand = (cand.0 * shrink, cand.1 * shrink);
            }
            let cv = g.eval(cand.0, cand.1).to_f64_pair();
            let cr = (cv.0 - w.0).hypot(cv.1 - w.1);
            if cr < residual {
                z = cand;
                residual = cr;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if !improved {
            return None;
        }
    }
    if residual <= tol {
        let d = dg.eval(z.0, z.1).to_f64_pair();
        return Some(NewtonOutcome { z, derivative: d.0.hypot(d.1) });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn gen(order: f64, trunc: usize) -> GeneratorSpec {
        GeneratorSpec::new(order, trunc).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn generator_rejects_integer_and_nonpositive_orders() {
        for bad in [2.0, 1.0, 0.0, -1.5, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                GeneratorSpec::new(bad, 50),
                Err(AlgebraError::InvalidGenerator { .. })
            ));
        }
        assert!(GeneratorSpec::new(2.5, 50).is_ok());
    }

    #[test]
    fn element_validation_rejects_malformed_combinations() {
        let p = PolySpec::parse("z1 + 7").unwrap();
        assert!(matches!(
            AlgebraElement::new(p, vec![gen(1.5, 50)]),
            Err(AlgebraError::InvalidElement { .. })
        ));

        let p = PolySpec::parse("z1*z2").unwrap();
        assert!(matches!(
            AlgebraElement::new(p, vec![gen(1.5, 50)]),
            Err(AlgebraError::InvalidElement { .. })
        ));

        let p = PolySpec::parse("z1*z2").unwrap();
        assert!(matches!(
            AlgebraElement::new(p, vec![gen(1.5, 50), gen(1.5, 50)]),
            Err(AlgebraError::InvalidElement { .. })
        ));

        let p = PolySpec::parse("z1*z2").unwrap();
        assert!(AlgebraElement::new(p, vec![gen(1.5, 50), gen(0.5, 50)]).is_ok());
    }

    #[test]
    fn vanishes_exactly_on_the_closed_negative_half_line_and_integers() {
        let p = PolySpec::parse("z1^2 + 2z1").unwrap();
        let e = AlgebraElement::new(p, vec![gen(1.5, 60)]).unwrap();
        for t in [rat(0, 1), rat(-7, 2), rat(-1, 3), rat(1, 1), rat(2, 1), rat(9, 1)] {
            assert_eq!(e.eval(&t, 12).unwrap(), (0.0, 0.0));
        }
        // And a nearby non-zero of the base map is not sent to zero.
        let v = e.eval(&rat(5, 16), 12).unwrap();
        assert!(v.0.hypot(v.1) > 1e-3);
    }

    #[test]
    fn linear_elements_add_generator_values() {
        let e12 = AlgebraElement::new(
            PolySpec::parse("z1 + z2").unwrap(),
            vec![gen(0.5, 80), gen(1.5, 80)],
        )
        .unwrap();
        let e1 =
            AlgebraElement::new(PolySpec::parse("z1").unwrap(), vec![gen(0.5, 80)]).unwrap();
        let e2 =
            AlgebraElement::new(PolySpec::parse("z1").unwrap(), vec![gen(1.5, 80)]).unwrap();
        for t in [rat(5, 16), rat(1, 3), rat(7, 5)] {
            let sum = e12.eval(&t, 20).unwrap();
            let a = e1.eval(&t, 20).unwrap();
            let b = e2.eval(&t, 20).unwrap();
            assert!((sum.0 - (a.0 + b.0)).abs() < 1e-12);
            assert!((sum.1 - (a.1 + b.1)).abs() < 1e-12);
        }
    }

    #[test]
    fn single_generator_order_is_read_back_exactly() {
        let e =
            AlgebraElement::new(PolySpec::parse("z1").unwrap(), vec![gen(2.5, 120)]).unwrap();
        let est = e.order().unwrap();
        assert!((est.value - 2.5).abs() < 1e-12, "got {}", est.value);
    }

    #[test]
    fn derivative_of_composed_series_matches_difference_quotient() {
        let e = AlgebraElement::new(
            PolySpec::parse("z1^2 + z2").unwrap(),
            vec![gen(0.5, 60), gen(1.5, 60)],
        )
        .unwrap();
        let g = e.composed_series().unwrap();
        let dg = g.derivative().unwrap();
        let h = 1e-6;
        let at = (0.4, 0.2);
        let up = g.eval(at.0 + h, at.1).to_f64_pair();
        let dn = g.eval(at.0 - h, at.1).to_f64_pair();
        let fd = ((up.0 - dn.0) / (2.0 * h), (up.1 - dn.1) / (2.0 * h));
        let an = dg.eval(at.0, at.1).to_f64_pair();
        assert!((fd.0 - an.0).abs() < 1e-6 && (fd.1 - an.1).abs() < 1e-6);
    }

    #[test]
    fn disc_net_spacing_and_reach() {
        let net = disc_net(1.5, 0.05);
        assert!(net.iter().all(|&(x, y)| x.hypot(y) <= 1.5 + 1e-12));
        assert!(net.iter().any(|&(x, y)| (x.hypot(y) - 1.5).abs() < 1e-12));
        // Every disc point within eps of some net point: spot-check a
        // coarse probe lattice.
        let mut worst: f64 = 0.0;
        let mut probe: f64 = -1.5;
        while probe <= 1.5 {
            let mut q = -1.5;
            while q <= 1.5 {
                if probe.hypot(q) <= 1.5 {
                    let d = net
                        .iter()
                        .map(|&(x, y)| (x - probe).hypot(y - q))
                        .fold(f64::INFINITY, f64::min);
                    worst = worst.max(d);
                }
                q += 0.011;
            }
            probe += 0.011;
        }
        assert!(worst <= 0.05, "covering radius {worst}");
    }
}

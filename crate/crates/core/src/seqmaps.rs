//! Sequence-space targets: eventually-null sequences, the coordinate
//! homeomorphisms `phi_r(t) = e^{rt} - e^{-rt}` and their product
//! maps, an equicontinuity bound, the product-topology metric, the
//! capped uniform metric over finite index sets, and box profiles.
//!
//! Every map here is pure; overflow of the exponentials is an error
//! carrying the offending input, never a silently saturated value.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// `r * t` beyond this magnitude would push `e^{rt}` outside double
/// range.
const EXP_ARG_LIMIT: f64 = 709.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SeqError {
    #[error("exponential overflow at rt = {rt}{}", coordinate.map(|c| format!(" (coordinate {c})")).unwrap_or_default())]
    Overflow { rt: f64, coordinate: Option<usize> },
    #[error("invalid input: {reason}")]
    InvalidInput { reason: String },
    #[error("index mismatch: {reason}")]
    IndexMismatch { reason: String },
}

pub type Result<T> = std::result::Result<T, SeqError>;

/// An eventually-null sequence, stored canonically: trailing zeros
/// trimmed, so the support is the length.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FiniteSeq {
    entries: Vec<f64>,
}

/// On-disk shape of a sequence: `{"entries": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeqFile {
    pub entries: Vec<f64>,
}

impl FiniteSeq {
    pub fn new(mut entries: Vec<f64>) -> Result<Self> {
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(SeqError::InvalidInput {
                reason: "entries must be finite".into(),
            });
        }
        while entries.last() == Some(&0.0) {
            entries.pop();
        }
        Ok(FiniteSeq { entries })
    }

    pub fn zero() -> Self {
        FiniteSeq { entries: Vec::new() }
    }

    /// Index of the last nonzero entry, counting from 1; zero for the
    /// zero sequence.
    pub fn support(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Coordinate `n`, 1-based, zero beyond the support.
    pub fn coordinate(&self, n: usize) -> f64 {
        if n == 0 || n > self.entries.len() {
            0.0
        } else {
            self.entries[n - 1]
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.entries.iter().fold(0.0f64, |m, e| m.max(e.abs()))
    }

    pub fn to_file(&self) -> SeqFile {
        SeqFile { entries: self.entries.clone() }
    }

    pub fn from_file(file: &SeqFile) -> Result<Self> {
        FiniteSeq::new(file.entries.clone())
    }
}

/// Positive rates, one per coordinate: an explicit prefix and a
/// constant tail, all within a finite sup bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateVector {
    prefix: Vec<f64>,
    tail: f64,
}

impl RateVector {
    pub fn new(prefix: Vec<f64>, tail: f64) -> Result<Self> {
        let ok = |r: &f64| r.is_finite() && *r > 0.0;
        if !ok(&tail) || !prefix.iter().all(|r| ok(r)) {
            return Err(SeqError::InvalidInput {
                reason: "rates must be positive and finite".into(),
            });
        }
        Ok(RateVector { prefix, tail })
    }

    pub fn uniform(rate: f64) -> Result<Self> {
        RateVector::new(Vec::new(), rate)
    }

    /// Rate for coordinate `n`, 1-based.
    pub fn rate(&self, n: usize) -> f64 {
        if n >= 1 && n <= self.prefix.len() {
            self.prefix[n - 1]
        } else {
            self.tail
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.prefix.iter().fold(self.tail, |m, r| m.max(*r))
    }
}

/// `phi_r(t) = e^{rt} - e^{-rt}`: strictly increasing, odd, onto the
/// reals.
pub fn phi_r(r: f64, t: f64) -> Result<f64> {
    if !r.is_finite() || r <= 0.0 {
        return Err(SeqError::InvalidInput { reason: format!("rate must be positive, got {r}") });
    }
    if !t.is_finite() {
        return Err(SeqError::InvalidInput { reason: format!("argument must be finite, got {t}") });
    }
    let rt = r * t;
    if rt.abs() > EXP_ARG_LIMIT {
        return Err(SeqError::Overflow { rt, coordinate: None });
    }
    Ok(rt.exp() - (-rt).exp())
}

/// Numeric inverse of [`phi_r`]: monotone bisection to a safe bracket,
/// then Newton with the bracket as a safeguard.
pub fn phi_inverse(r: f64, y: f64) -> Result<f64> {
    if !r.is_finite() || r <= 0.0 {
        return Err(SeqError::InvalidInput { reason: format!("rate must be positive, got {r}") });
    }
    if !y.is_finite() {
        return Err(SeqError::InvalidInput { reason: format!("value must be finite, got {y}") });
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    // Bracket [lo, hi] with phi(lo) <= y <= phi(hi), grown by doubling.
    let mut step = 1.0 / r;
    let (mut lo, mut hi);
    if y > 0.0 {
        lo = 0.0;
        hi = step;
        while phi_r(r, hi)? < y {
            step *= 2.0;
            hi += step;
        }
    } else {
        hi = 0.0;
        lo = -step;
        while phi_r(r, lo)? > y {
            step *= 2.0;
            lo -= step;
        }
    }
    let mut t = 0.5 * (lo + hi);
    for _ in 0..200 {
        let v = phi_r(r, t)? - y;
        if v.abs() <= 1e-14 * y.abs().max(1.0) {
            return Ok(t);
        }
        if v > 0.0 {
            hi = t;
        } else {
            lo = t;
        }
        // Newton step; derivative r(e^{rt} + e^{-rt}) >= 2r > 0.
        let rt = r * t;
        let d = r * (rt.exp() + (-rt).exp());
        let newton = t - v / d;
        t = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
    }
    Ok(t)
}

/// Coordinate-wise application of the homeomorphisms: support is
/// preserved exactly because zero maps to zero and nothing else does.
pub fn big_phi(rates: &RateVector, x: &FiniteSeq) -> Result<FiniteSeq> {
    let mapped = x
        .entries()
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            phi_r(rates.rate(i + 1), t).map_err(|e| match e {
                SeqError::Overflow { rt, .. } => SeqError::Overflow { rt, coordinate: Some(i + 1) },
                other => other,
            })
        })
        .collect::<Result<Vec<f64>>>()?;
    FiniteSeq::new(mapped)
}

/// Coordinate-wise inverse of [`big_phi`].
pub fn big_phi_inverse(rates: &RateVector, y: &FiniteSeq) -> Result<FiniteSeq> {
    let mapped = y
        .entries()
        .iter()
        .enumerate()
        .map(|(i, &v)| phi_inverse(rates.rate(i + 1), v))
        .collect::<Result<Vec<f64>>>()?;
    FiniteSeq::new(mapped)
}

/// Upper bound for `|phi_{r_n}(t) - phi_{r_n}(s)|` over every
/// coordinate `n` at once. The derivative is
/// `phi_r'(u) = r (e^{ru} + e^{-ru}) = 2 r cosh(ru) <= 2 r e^{r|u|}`,
/// and the mean-value point lies within `max(|t|, |s|)` of zero, so
/// `2 * sup_n r_n * e^{sup_n r_n * max(|t|, |s|)} * |t - s|` dominates
/// the difference; the leading 2 is sharp as `t, s -> 0`.
pub fn equicontinuity_bound(rates: &RateVector, t: f64, s: f64) -> f64 {
    let r = rates.sup_norm();
    let reach = t.abs().max(s.abs());
    2.0 * r * (r * reach).exp() * (t - s).abs()
}

/// A truncated product-topology distance together with the tail bound
/// the truncation leaves open.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricValue {
    pub value: f64,
    pub tail_bound: f64,
}

/// The product-topology metric
/// `sum_n 2^{-n} |x_n - y_n| / (1 + |x_n - y_n|)`, truncated after
/// `terms` coordinates. `terms` must reach past both supports, so the
/// truncation drops only zero terms of the sum; the reported tail
/// bound `2^{-terms}` covers them.
pub fn product_metric(x: &FiniteSeq, y: &FiniteSeq, terms: u32) -> Result<MetricValue> {
    let needed = x.support().max(y.support());
    if (terms as usize) < needed {
        return Err(SeqError::InvalidInput {
            reason: format!("need at least {needed} terms, got {terms}"),
        });
    }
    let mut value = 0.0f64;
    for n in 1..=terms as usize {
        let d = (x.coordinate(n) - y.coordinate(n)).abs();
        value += 0.5f64.powi(n as i32) * d / (1.0 + d);
    }
    Ok(MetricValue { value, tail_bound: 0.5f64.powi(terms as i32) })
}

/// Values of a function over a finite index set.
pub type IndexedValues = BTreeMap<String, f64>;

/// `sup over the index set of min(1, |f - g|)`: the capped uniform
/// metric. The index sets must agree exactly.
pub fn uniform_metric(f: &IndexedValues, g: &IndexedValues) -> Result<f64> {
    if f.len() != g.len() || f.keys().zip(g.keys()).any(|(a, b)| a != b) {
        return Err(SeqError::IndexMismatch {
            reason: "functions are indexed by different sets".into(),
        });
    }
    Ok(f.iter()
        .map(|(k, v)| (v - g[k]).abs().min(1.0))
        .fold(0.0f64, f64::max))
}

/// A finite index inclusion: a sub-index-set with a rate for each of
/// its elements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexMap {
    lambda: Vec<String>,
    gamma: Vec<String>,
    rates: BTreeMap<String, f64>,
}

impl IndexMap {
    /// `gamma` must be contained in `lambda`; rates cover exactly
    /// `gamma` and lie in `(0, 1]`.
    pub fn new(
        lambda: Vec<String>,
        gamma: Vec<String>,
        rates: BTreeMap<String, f64>,
    ) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for l in &lambda {
            if !seen.insert(l.clone()) {
                return Err(SeqError::InvalidInput {
                    reason: format!("duplicate index {l}"),
                });
            }
        }
        for g in &gamma {
            if !lambda.contains(g) {
                return Err(SeqError::IndexMismatch {
                    reason: format!("{g} is not in the larger index set"),
                });
            }
        }
        if rates.len() != gamma.len() || gamma.iter().any(|g| !rates.contains_key(g)) {
            return Err(SeqError::IndexMismatch {
                reason: "rates must cover exactly the smaller index set".into(),
            });
        }
        if rates.values().any(|r| !r.is_finite() || *r <= 0.0 || *r > 1.0) {
            return Err(SeqError::InvalidInput {
                reason: "rates must lie in (0, 1]".into(),
            });
        }
        Ok(IndexMap { lambda, gamma, rates })
    }

    pub fn lambda(&self) -> &[String] {
        &self.lambda
    }

    pub fn gamma(&self) -> &[String] {
        &self.gamma
    }

    pub fn rate(&self, gamma_index: &str) -> Option<f64> {
        self.rates.get(gamma_index).copied()
    }
}

/// `f` over the large set restricted to the small set and pushed
/// through the coordinate homeomorphisms: depends only on the
/// restriction of `f`.
pub fn index_surjection(map: &IndexMap, f: &IndexedValues) -> Result<IndexedValues> {
    if f.len() != map.lambda.len() || map.lambda.iter().any(|l| !f.contains_key(l)) {
        return Err(SeqError::IndexMismatch {
            reason: "function must be indexed by the larger set".into(),
        });
    }
    map.gamma
        .iter()
        .map(|g| Ok((g.clone(), phi_r(map.rates[g], f[g])?)))
        .collect()
}

/// A right inverse for [`index_surjection`]: hits `target` exactly (to
/// solver precision) with zeros on the complementary indices.
pub fn index_preimage(map: &IndexMap, target: &IndexedValues) -> Result<IndexedValues> {
    if target.len() != map.gamma.len() || map.gamma.iter().any(|g| !target.contains_key(g)) {
        return Err(SeqError::IndexMismatch {
            reason: "target must be indexed by the smaller set".into(),
        });
    }
    let mut f: IndexedValues =
        map.lambda.iter().map(|l| (l.clone(), 0.0)).collect();
    for g in &map.gamma {
        f.insert(g.clone(), phi_inverse(map.rates[g], target[g])?);
    }
    Ok(f)
}

/// Axis-aligned box profiles used as target-space covers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxSpec {
    /// Closed intervals, one per coordinate.
    pub intervals: Vec<(f64, f64)>,
}

impl BoxSpec {
    pub fn contains(&self, point: &[f64]) -> bool {
        point.len() <= self.intervals.len()
            && point.iter().zip(&self.intervals).all(|(p, (lo, hi))| lo <= p && p <= hi)
    }
}

/// The cube `[-k, k]^dims`.
pub fn box_cover(k: u32, dims: usize) -> BoxSpec {
    BoxSpec { intervals: vec![(-(k as f64), k as f64); dims] }
}

/// The truncated Hilbert-cube box: `[-1/n, 1/n]` in coordinate `n`.
pub fn hilbert_cube_box(dims: usize) -> BoxSpec {
    BoxSpec {
        intervals: (1..=dims).map(|n| (-1.0 / n as f64, 1.0 / n as f64)).collect(),
    }
}

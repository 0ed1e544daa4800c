//! Growth-order estimators: two coefficient-based readings of the
//! decay rate of `|a_n|`, and a maximum-modulus slope on circles.

use super::series::TruncatedSeries;
use super::OrderError;

/// Ceiling applied to every estimate; hit when coefficients fail to
/// decay (order effectively infinite at the available truncation).
pub const ORDER_CAP: f64 = 1e6;

/// Default fraction of the coefficient range skipped before the
/// estimation window starts (window = last half).
pub const DEFAULT_WINDOW_FRACTION: f64 = 0.5;

/// Default truncation for series algebra.
pub const DEFAULT_ALGEBRA_TRUNCATION: usize = 400;

/// Default truncation for order estimation on raw series.
pub const DEFAULT_ESTIMATION_TRUNCATION: usize = 2000;

/// Circle sample count used by the modulus-growth estimator.
pub const GROWTH_SAMPLES: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateMethod {
    /// Window maximum of `n ln n / ln(1/|a_n|)`.
    CoefficientWindowMax,
    /// Drag-corrected regression of `ln(1/|a_n|)/(n ln n)`; immune to
    /// the bias that scalar multiples, fixed powers, and products with
    /// lower-order factors add to the raw window maximum.
    CoefficientFit,
    /// Slope of `ln ln M(r)` against `ln r`.
    ModulusGrowth,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct OrderEstimate {
    pub value: f64,
    pub method: EstimateMethod,
    /// Inclusive index range actually used (coefficient index or radius
    /// position, depending on the method).
    pub window: (usize, usize),
    /// Root-mean-square misfit of the regression, when one was run.
    pub residual: Option<f64>,
    /// Input had no nonzero coefficient past index zero.
    pub constant_input: bool,
    /// Estimate hit [`ORDER_CAP`].
    pub capped: bool,
}

fn window_start(order_n: usize, window_fraction: f64) -> Result<usize, OrderError> {
    if !(0.0..1.0).contains(&window_fraction) {
        return Err(OrderError::InvalidInput {
            reason: format!("window fraction {window_fraction} outside [0, 1)"),
        });
    }
    Ok(((order_n as f64 * window_fraction).ceil() as usize).max(1))
}

/// Estimate the order as the largest value of `n ln n / ln(1/|a_n|)`
/// over nonzero coefficients in the trailing window.
pub fn order_from_coeffs(
    series: &TruncatedSeries,
    window_fraction: f64,
) -> Result<OrderEstimate, OrderError> {
    let n_max = series.order_n();
    let start = window_start(n_max, window_fraction)?;
    let mut est = OrderEstimate {
        value: 0.0,
        method: EstimateMethod::CoefficientWindowMax,
        window: (start, n_max),
        residual: None,
        constant_input: series.is_constant(),
        capped: false,
    };
    if est.constant_input {
        return Ok(est);
    }
    // n = 1 carries no signal: the numerator n ln n vanishes there.
    for n in start.max(2)..=n_max {
        let a = series.coefficient(n);
        if a.is_zero() {
            continue;
        }
        let ln_inv = -a.ln_norm();
        if ln_inv <= 0.0 {
            // |a_n| >= 1: no decay visible at this truncation.
            est.value = ORDER_CAP;
            est.capped = true;
            return Ok(est);
        }
        est.value = est.value.max((n as f64) * (n as f64).ln() / ln_inv);
    }
    if est.value >= ORDER_CAP {
        est.value = ORDER_CAP;
        est.capped = true;
    }
    Ok(est)
}

/// Debiased coefficient estimate built on `u_n = ln(1/|a_n|)/(n ln n)`
/// as a function of `x_n = 1/ln n`. For decays of the shape
/// `|a_n| = c^n (n^(-n/p))^m · exp(K n^g)` (a scalar multiple of an
/// `m`-th power times the leftover from lower-order factors in a
/// product) one has
///
/// `u_n = 1/p - (ln m) x_n / p - K x_n n^(g-1) - (ln c) x_n / n`,
///
/// so the model `u = a + b x + c x n^(-beta)` fit by least squares —
/// with the drag exponent `beta` profiled over a grid — recovers the
/// order as `1/a`, the extrapolation of `u` to `x = 0`. Scalar factors,
/// fixed powers, and mixed products therefore do not bias the reading,
/// unlike the raw window maximum of `1/u_n`.
pub fn order_from_coeff_fit(
    series: &TruncatedSeries,
    window_fraction: f64,
) -> Result<OrderEstimate, OrderError> {
    let n_max = series.order_n();
    let start = window_start(n_max, window_fraction)?;
    let mut est = OrderEstimate {
        value: 0.0,
        method: EstimateMethod::CoefficientFit,
        window: (start, n_max),
        residual: None,
        constant_input: series.is_constant(),
        capped: false,
    };
    if est.constant_input {
        return Ok(est);
    }
    // (x, u, n) for nonzero window coefficients.
    let mut pts: Vec<(f64, f64, f64)> = Vec::new();
    for n in start.max(2)..=n_max {
        let a = series.coefficient(n);
        if a.is_zero() {
            continue;
        }
        let ln_n = (n as f64).ln();
        pts.push((1.0 / ln_n, -a.ln_norm() / (n as f64 * ln_n), n as f64));
    }
    if pts.len() < 2 {
        // Not enough decay data for a regression; fall back to the
        // window maximum so polynomials still read as order ~0.
        let fallback = order_from_coeffs(series, window_fraction)?;
        est.value = fallback.value;
        est.capped = fallback.capped;
        return Ok(est);
    }
    let fitted = if pts.len() < 8 {
        // Short windows: drop the drag column, keep the straight line.
        let line: Vec<(f64, f64)> = pts.iter().map(|p| (p.0, p.1)).collect();
        let (_, intercept, residual) = least_squares_line(&line);
        Some((intercept, residual))
    } else {
        profiled_drag_fit(&pts)
    };
    match fitted {
        Some((intercept, residual)) if intercept > 0.0 && intercept.is_finite() => {
            est.residual = Some(residual);
            est.value = 1.0 / intercept;
            if est.value >= ORDER_CAP {
                est.value = ORDER_CAP;
                est.capped = true;
            }
        }
        _ => {
            est.value = ORDER_CAP;
            est.capped = true;
        }
    }
    Ok(est)
}

/// Fit `u = a + b x + c x n^(-beta)` over a grid of drag exponents and
/// keep the positive-intercept solution with the smallest residual.
/// Returns `(a, rms_residual)`.
fn profiled_drag_fit(pts: &[(f64, f64, f64)]) -> Option<(f64, f64)> {
    let mut best: Option<(f64, f64)> = None;
    for step in 1..=20 {
        let beta = 0.05 * step as f64;
        let cols: Vec<[f64; 3]> =
            pts.iter().map(|&(x, _, n)| [1.0, x, x * n.powf(-beta)]).collect();
        // Normalize the non-constant columns to keep the 3x3 solve
        // well-conditioned; the intercept is unaffected.
        let rms = |k: usize| {
            (cols.iter().map(|c| c[k] * c[k]).sum::<f64>() / cols.len() as f64).sqrt()
        };
        let (s1, s2) = (rms(1), rms(2));
        if s1 == 0.0 || s2 == 0.0 {
            continue;
        }
        let mut ata = [[0.0f64; 3]; 3];
        let mut aty = [0.0f64; 3];
        for (c, &(_, u, _)) in cols.iter().zip(pts) {
            let row = [c[0], c[1] / s1, c[2] / s2];
            for i in 0..3 {
                for j in 0..3 {
                    ata[i][j] += row[i] * row[j];
                }
                aty[i] += row[i] * u;
            }
        }
        let Some(sol) = solve3(ata, aty) else { continue };
        let a = sol[0];
        if a <= 0.0 || !a.is_finite() {
            continue;
        }
        let sq: f64 = cols
            .iter()
            .zip(pts)
            .map(|(c, &(_, u, _))| {
                (u - (sol[0] + sol[1] * c[1] / s1 + sol[2] * c[2] / s2)).powi(2)
            })
            .sum::<f64>()
            / pts.len() as f64;
        let residual = sq.sqrt();
        if best.map_or(true, |(_, r)| residual < r) {
            best = Some((a, residual));
        }
    }
    best
}

/// Solve a symmetric 3x3 system by Gaussian elimination with partial
/// pivoting; `None` when numerically singular.
fn solve3(a: [[f64; 3]; 3], y: [f64; 3]) -> Option<[f64; 3]> {
    let mut m = [[0.0f64; 4]; 3];
    for i in 0..3 {
        m[i][..3].copy_from_slice(&a[i]);
        m[i][3] = y[i];
    }
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&p, &q| m[p][col].abs().partial_cmp(&m[q][col].abs()).unwrap())?;
        m.swap(col, piv);
        if m[col][col].abs() < 1e-300 {
            return None;
        }
        for row in (col + 1)..3 {
            let f = m[row][col] / m[col][col];
            for j in col..4 {
                m[row][j] -= f * m[col][j];
            }
        }
    }
    let mut sol = [0.0f64; 3];
    for i in (0..3).rev() {
        let mut v = m[i][3];
        for j in (i + 1)..3 {
            v -= m[i][j] * sol[j];
        }
        sol[i] = v / m[i][i];
    }
    Some(sol)
}

/// Estimate the order from maximum-modulus samples: least-squares slope
/// of `ln ln M(r)` against `ln r` over the given radii. Radii where
/// `M(r) <= e` carry no usable double-log signal and are dropped.
pub fn order_from_growth(
    series: &TruncatedSeries,
    radii: &[f64],
) -> Result<OrderEstimate, OrderError> {
    if radii.len() < 2 {
        return Err(OrderError::InvalidInput {
            reason: format!("need at least 2 radii, got {}", radii.len()),
        });
    }
    for pair in radii.windows(2) {
        if !(pair[0] > 0.0 && pair[1] > pair[0] && pair[1].is_finite()) {
            return Err(OrderError::InvalidInput {
                reason: "radii must be positive, finite, strictly increasing".into(),
            });
        }
    }
    let mut pts: Vec<(f64, f64)> = Vec::new();
    let mut window = (usize::MAX, 0usize);
    for (i, &r) in radii.iter().enumerate() {
        let ln_m = series.ln_max_modulus(r, GROWTH_SAMPLES)?;
        if ln_m <= 1.0 {
            continue;
        }
        window.0 = window.0.min(i);
        window.1 = window.1.max(i);
        pts.push((r.ln(), ln_m.ln()));
    }
    if pts.len() < 2 {
        return Err(OrderError::DomainError {
            usable: pts.len(),
            reason: "maximum modulus stays at or below e on almost all radii".into(),
        });
    }
    let (slope, residual) = least_squares(&pts);
    let mut est = OrderEstimate {
        value: slope.max(0.0),
        method: EstimateMethod::ModulusGrowth,
        window,
        residual: Some(residual),
        constant_input: series.is_constant(),
        capped: false,
    };
    if est.value >= ORDER_CAP {
        est.value = ORDER_CAP;
        est.capped = true;
    }
    Ok(est)
}

/// Number of radii in the automatically chosen ladder.
pub const AUTO_LADDER_POINTS: usize = 8;

/// Largest circle radius on which the truncated series still evaluates
/// reliably (the dropped tail stays far below the attained maximum).
/// Found by doubling until the reliability check trips, then bisecting.
pub fn reliable_radius(series: &TruncatedSeries) -> Result<f64, OrderError> {
    const SEARCH_SAMPLES: usize = 64;
    let probe = |r: f64| series.ln_max_modulus(r, SEARCH_SAMPLES).is_ok();
    if !probe(1.0) {
        // Retreat below 1 for series that are already borderline there.
        let mut r = 0.5;
        while r > 1e-12 && !probe(r) {
            r /= 2.0;
        }
        if r <= 1e-12 {
            return Err(OrderError::DomainError {
                usable: 0,
                reason: "no radius evaluates reliably at this truncation".into(),
            });
        }
        let (mut lo, mut hi) = (r, 2.0 * r);
        for _ in 0..40 {
            let mid = 0.5 * (lo + hi);
            if probe(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return Ok(lo);
    }
    let mut lo = 1.0f64;
    let mut hi = 2.0f64;
    let mut doublings = 0;
    while probe(hi) {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings >= 60 {
            // Truncation never becomes unreliable (top coefficients
            // vanish identically); any large radius will do.
            return Ok(lo);
        }
    }
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if probe(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Growth-order estimate with an automatically selected radius ladder:
/// a geometric grid over the top of the reliable range, where the
/// leading-order term of `ln M(r)` dominates its corrections.
pub fn order_from_growth_auto(series: &TruncatedSeries) -> Result<OrderEstimate, OrderError> {
    let r_hi = reliable_radius(series)? * 0.98;
    let mut r_lo = r_hi / 4.0;
    // Skip radii with weak double-log signal when room allows.
    while r_lo < r_hi / 1.3 {
        match series.ln_max_modulus(r_lo, 64) {
            Ok(ln_m) if ln_m <= 2.0 => r_lo *= 1.25,
            _ => break,
        }
    }
    let radii: Vec<f64> = (0..AUTO_LADDER_POINTS)
        .map(|i| r_lo * (r_hi / r_lo).powf(i as f64 / (AUTO_LADDER_POINTS - 1) as f64))
        .collect();
    order_from_growth(series, &radii)
}

/// Slope and RMS residual of the least-squares line through `pts`.
fn least_squares(pts: &[(f64, f64)]) -> (f64, f64) {
    let (slope, _, residual) = least_squares_line(pts);
    (slope, residual)
}

/// Slope, intercept, and RMS residual of the least-squares line.
fn least_squares_line(pts: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = pts.len() as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let var: f64 = pts.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let cov: f64 = pts.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    if var == 0.0 {
        return (f64::INFINITY, f64::NAN, 0.0);
    }
    let slope = cov / var;
    let intercept = mean_y - slope * mean_x;
    let sq_err: f64 =
        pts.iter().map(|p| (p.1 - slope * p.0 - intercept).powi(2)).sum::<f64>() / n;
    (slope, intercept, sq_err.sqrt())
}

//! Truncated MacLaurin series with wide-exponent coefficients.

use super::wide::WideComplex;
use super::OrderError;
use serde::{Deserialize, Serialize};

/// Series `a_0 + a_1 z + ... + a_N z^N` truncated at order `N >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<WideComplex>,
}

/// On-disk shape: `{"coeffs": [[re, im], ...]}`. Double precision only;
/// coefficients outside the double range saturate to zero or infinity,
/// so the file format suits moderate truncations.
#[derive(Serialize, Deserialize)]
pub struct SeriesFile {
    pub coeffs: Vec<[f64; 2]>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<WideComplex>) -> Result<Self, OrderError> {
        if coeffs.len() < 2 {
            return Err(OrderError::TruncationTooShort { n: coeffs.len().saturating_sub(1), min: 1 });
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(OrderError::InvalidInput { reason: "non-finite coefficient".into() });
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn zero(order: usize) -> Result<Self, OrderError> {
        TruncatedSeries::new(vec![WideComplex::ZERO; order + 1])
    }

    /// `c * z^degree`, truncated at `order`.
    pub fn monomial(degree: usize, c: WideComplex, order: usize) -> Result<Self, OrderError> {
        if degree > order {
            return Err(OrderError::InvalidInput {
                reason: format!("degree {degree} above truncation {order}"),
            });
        }
        let mut coeffs = vec![WideComplex::ZERO; order + 1];
        coeffs[degree] = c;
        TruncatedSeries::new(coeffs)
    }

    pub fn from_f64_pairs(pairs: &[(f64, f64)]) -> Result<Self, OrderError> {
        TruncatedSeries::new(pairs.iter().map(|&(re, im)| WideComplex::new(re, im)).collect())
    }

    /// Truncation order `N`.
    pub fn order_n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficient(&self, n: usize) -> WideComplex {
        self.coeffs.get(n).copied().unwrap_or(WideComplex::ZERO)
    }

    pub fn coefficients(&self) -> &[WideComplex] {
        &self.coeffs
    }

    /// True when every degree-1-and-up coefficient vanishes.
    pub fn is_constant(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_json(&self) -> String {
        let file = SeriesFile {
            coeffs: self.coeffs.iter().map(|c| { let (re, im) = c.to_f64_pair(); [re, im] }).collect(),
        };
        serde_json::to_string(&file).expect("plain arrays always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, OrderError> {
        let file: SeriesFile = serde_json::from_str(text)
            .map_err(|e| OrderError::InvalidInput { reason: format!("bad series JSON: {e}") })?;
        TruncatedSeries::new(
            file.coeffs.iter().map(|&[re, im]| WideComplex::new(re, im)).collect(),
        )
    }

    /// Horner evaluation at `z = re + i*im`.
    pub fn eval(&self, re: f64, im: f64) -> WideComplex {
        let z = WideComplex::new(re, im);
        let mut acc = WideComplex::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&z).add(c);
        }
        acc
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order_n().min(other.order_n());
        let coeffs = (0..=n)
            .map(|k| self.coeffs[k].add(&other.coeffs[k]))
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Cauchy product. Coefficients are complete (hence kept) only up to
    /// `min(N1, N2)`.
    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order_n().min(other.order_n());
        let mut coeffs = vec![WideComplex::ZERO; n + 1];
        for (k, slot) in coeffs.iter_mut().enumerate() {
            let mut acc = WideComplex::ZERO;
            for i in 0..=k {
                let term = self.coeffs[i].mul(&other.coeffs[k - i]);
                acc = acc.add(&term);
            }
            *slot = acc;
        }
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, factor: &WideComplex) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| c.mul(factor)).collect() }
    }

    /// `ln` of the sampled maximum modulus over the circle of radius `r`,
    /// with the truncation-tail reliability check.
    pub fn ln_max_modulus(&self, r: f64, samples: usize) -> Result<f64, OrderError> {
        if samples == 0 || !r.is_finite() || r <= 0.0 {
            return Err(OrderError::InvalidInput {
                reason: format!("need positive radius and samples, got r={r}, samples={samples}"),
            });
        }
        let mut best = f64::NEG_INFINITY;
        for i in 0..samples {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / samples as f64;
            let v = self.eval(r * theta.cos(), r * theta.sin());
            best = best.max(v.ln_norm());
        }
        let tail = self.tail_ln_bound(r);
        // Tail must stay 12 decades below the attained maximum.
        if tail.is_finite() && tail > best + (1e-12f64).ln() {
            return Err(OrderError::TruncationUnreliable {
                radius: r,
                tail_ratio: (tail - best).exp(),
            });
        }
        Ok(best)
    }

    /// Sampled maximum modulus `max |s(z)|` over `|z| = r`. Saturates to
    /// infinity if the value leaves the double range.
    pub fn max_modulus(&self, r: f64, samples: usize) -> Result<f64, OrderError> {
        let ln = self.ln_max_modulus(r, samples)?;
        Ok(if ln == f64::NEG_INFINITY { 0.0 } else { ln.exp() })
    }

    /// `ln` bound on the size of the dropped tail at radius `r`, read off
    /// the trailing stored coefficients. A window of the top coefficients
    /// is used (never reaching below the top half), so one accidentally
    /// cancelled leading coefficient cannot masquerade as convergence.
    pub fn tail_ln_bound(&self, r: f64) -> f64 {
        let n = self.order_n();
        (n.saturating_sub(4).max(n / 2 + 1)..=n)
            .map(|k| self.coeffs[k].ln_norm() + k as f64 * r.ln())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Termwise derivative; the truncation shortens by one degree.
    pub fn derivative(&self) -> Result<TruncatedSeries, OrderError> {
        if self.order_n() < 3 {
            return Err(OrderError::TruncationTooShort { n: self.order_n(), min: 3 });
        }
        let coeffs = (1..self.coeffs.len())
            .map(|k| self.coeffs[k].mul(&WideComplex::new(k as f64, 0.0)))
            .collect();
        Ok(TruncatedSeries { coeffs })
    }
}

/// Series with coefficients `a_0 = 0`, `a_n = n^(-n/alpha)`: a truncation
/// of an entire function whose growth order is exactly `alpha`, term by
/// term in the coefficient formula.
pub fn prescribed_order_series(alpha: f64, order: usize) -> Result<TruncatedSeries, OrderError> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(OrderError::InvalidAlpha { alpha });
    }
    if order < 2 {
        return Err(OrderError::TruncationTooShort { n: order, min: 2 });
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(WideComplex::ZERO);
    for n in 1..=order {
        let ln_coeff = -(n as f64 / alpha) * (n as f64).ln();
        coeffs.push(WideComplex::from_ln_modulus(ln_coeff));
    }
    TruncatedSeries::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prescribed_coefficients_match_the_formula() {
        let s = prescribed_order_series(2.0, 6).unwrap();
        assert!(s.coefficient(0).is_zero());
        let (re, im) = s.coefficient(4).to_f64_pair();
        assert!((re - 0.0625).abs() < 1e-15 && im == 0.0);
        assert!((s.coefficient(1).to_f64_pair().0 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_alpha_and_short_truncations() {
        assert!(matches!(
            prescribed_order_series(0.0, 10),
            Err(OrderError::InvalidAlpha { .. })
        ));
        assert!(matches!(
            prescribed_order_series(-1.5, 10),
            Err(OrderError::InvalidAlpha { .. })
        ));
        assert!(matches!(
            prescribed_order_series(1.0, 1),
            Err(OrderError::TruncationTooShort { .. })
        ));
    }

    #[test]
    fn identity_series_modulus_is_the_radius() {
        let z = TruncatedSeries::monomial(1, WideComplex::from_re(1.0), 4).unwrap();
        let m = z.max_modulus(2.0, 64).unwrap();
        assert!((m - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_series_modulus_is_zero() {
        let s = TruncatedSeries::zero(8).unwrap();
        assert_eq!(s.max_modulus(5.0, 32).unwrap(), 0.0);
    }

    #[test]
    fn product_of_monomials_is_the_sum_of_degrees() {
        let z = TruncatedSeries::monomial(1, WideComplex::from_re(1.0), 4).unwrap();
        let sq = z.mul(&z);
        assert!(sq.coefficient(2).to_f64_pair().0 == 1.0);
        assert!(sq.coefficient(1).is_zero() && sq.coefficient(0).is_zero());
    }

    #[test]
    fn addition_with_zero_is_identity() {
        let s = prescribed_order_series(1.5, 12).unwrap();
        let sum = s.add(&TruncatedSeries::zero(12).unwrap());
        assert_eq!(sum, s);
    }

    #[test]
    fn unreliable_truncation_is_flagged() {
        // exp-like series truncated at N = 8 cannot support radius 50.
        let coeffs: Vec<WideComplex> = (0..=8)
            .map(|n| {
                let ln_inv_fact = -(1..=n).map(|k| (k as f64).ln()).sum::<f64>();
                WideComplex::from_ln_modulus(ln_inv_fact)
            })
            .collect();
        let s = TruncatedSeries::new(coeffs).unwrap();
        assert!(matches!(
            s.ln_max_modulus(50.0, 64),
            Err(OrderError::TruncationUnreliable { .. })
        ));
    }

    #[test]
    fn json_round_trip_preserves_in_range_coefficients() {
        let s = TruncatedSeries::from_f64_pairs(&[(0.0, 0.0), (1.5, -2.0), (0.25, 0.0)]).unwrap();
        let back = TruncatedSeries::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }
}

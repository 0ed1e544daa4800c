//! Building blocks for continuous surjections of the real line onto
//! Euclidean spaces and onto the space of finitely supported sequences,
//! together with a small calculus for growth orders of entire functions.
//!
//! The crate is organised in layers:
//!
//! * [`curve`] — exact evaluation of classical space-filling curves
//!   (Hilbert in dimensions 2 and 3, the ternary serpentine map in
//!   dimension 2) with cell addressing and parameter preimages.
//! * [`tiling`] — a pairing-indexed tiling of `[0, +inf)` into unit
//!   intervals, per-channel block maps built from scaled curves, the
//!   composite line map, and fiber-witness search by inverse cell lookup.
//! * [`orders`] — truncated Maclaurin series with wide-exponent
//!   coefficients, growth-order estimators, series arithmetic and
//!   polynomial composition.
//! * [`algebra`] — elements `P(g_1, ..., g_M) ∘ F` built from series with
//!   prescribed orders over a base line map, their order bookkeeping and a
//!   surjectivity scan over complex disks.
//! * [`family`] — a deterministic enumeration of the rationals,
//!   almost-disjoint index sets attached to irrational seeds, the induced
//!   family of line maps and a numerical independence test.
//! * [`seqmaps`] — odd exponential coordinate maps, their inverses,
//!   product/uniform metrics and finite-index surjections for sequence
//!   spaces.
//! * [`verify`] — coverage scans, unboundedness scans and named
//!   verification suites with deterministic JSON reports.

pub mod algebra;
pub mod curve;
pub mod family;
pub mod orders;
pub mod seqmaps;
pub mod tiling;
pub mod verify;

pub use num_rational::BigRational;

/// Parse an exact rational from the forms `p/q`, `p` (integer) or a
/// finite decimal such as `-0.375`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    use num_bigint::BigInt;
    use std::str::FromStr;
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num = BigInt::from_str(num.trim()).ok()?;
        let den = BigInt::from_str(den.trim()).ok()?;
        if den == BigInt::from(0) {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.trim_start().starts_with('-');
        let int = if int.is_empty() || int == "-" {
            BigInt::from(0)
        } else {
            BigInt::from_str(int).ok()?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = BigInt::from_str(frac).ok()?;
        let whole = &int * &scale;
        let numer = if negative { whole - frac_part } else { whole + frac_part };
        return Some(BigRational::new(numer, scale));
    }
    BigInt::from_str(text).ok().map(BigRational::from)
}

/// Render a rational as `p/q` in lowest terms (`q >= 1`).
pub fn format_rational(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

//! Complex numbers with a separated power-of-two exponent.
//!
//! Growth-order work routinely touches magnitudes like `n^(-2n)` at
//! `n = 2000`, far below the double-precision floor. A value is stored
//! as `(re + i*im) * 2^exp2` with the mantissa normalized so its larger
//! component lies in `[1, 2)`; logarithms of moduli then stay exact to
//! double precision across the whole range.

/// Complex value `(re + i*im) * 2^exp2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WideComplex {
    pub re: f64,
    pub im: f64,
    pub exp2: i64,
}

/// Multiply by a power of two without overflowing intermediate scales.
fn mul_exp2(x: f64, k: i64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let mut x = x;
    let mut k = k;
    while k > 900 {
        x *= 2f64.powi(900);
        k -= 900;
        if !x.is_finite() {
            return x;
        }
    }
    while k < -900 {
        x *= 2f64.powi(-900);
        k += 900;
        if x == 0.0 {
            return 0.0;
        }
    }
    x * 2f64.powi(k as i32)
}

impl WideComplex {
    pub const ZERO: WideComplex = WideComplex { re: 0.0, im: 0.0, exp2: 0 };

    /// Normalize so that `max(|re|, |im|) ∈ [1, 2)` (zero stays zero).
    fn normalized(re: f64, im: f64, exp2: i64) -> WideComplex {
        let mag = re.abs().max(im.abs());
        if mag == 0.0 {
            return WideComplex::ZERO;
        }
        if !mag.is_finite() {
            return WideComplex { re, im, exp2 };
        }
        let k = mag.log2().floor() as i64;
        WideComplex { re: mul_exp2(re, -k), im: mul_exp2(im, -k), exp2: exp2 + k }
    }

    pub fn new(re: f64, im: f64) -> Self {
        WideComplex::normalized(re, im, 0)
    }

    pub fn from_re(re: f64) -> Self {
        WideComplex::new(re, 0.0)
    }

    /// Positive real value `exp(ln_value)`, exact in the exponent even
    /// when `exp(ln_value)` itself would leave the double range.
    pub fn from_ln_modulus(ln_value: f64) -> Self {
        let log2_value = ln_value / std::f64::consts::LN_2;
        let e = log2_value.floor();
        WideComplex { re: (log2_value - e).exp2(), im: 0.0, exp2: e as i64 }
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    pub fn add(&self, other: &WideComplex) -> WideComplex {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.exp2 >= other.exp2 { (self, other) } else { (other, self) };
        let shift = lo.exp2 - hi.exp2; // <= 0
        if shift < -128 {
            return *hi;
        }
        let f = mul_exp2(1.0, shift);
        WideComplex::normalized(hi.re + lo.re * f, hi.im + lo.im * f, hi.exp2)
    }

    pub fn mul(&self, other: &WideComplex) -> WideComplex {
        WideComplex::normalized(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
            self.exp2 + other.exp2,
        )
    }

    pub fn scale(&self, factor: f64) -> WideComplex {
        WideComplex::normalized(self.re * factor, self.im * factor, self.exp2)
    }

    pub fn neg(&self) -> WideComplex {
        WideComplex { re: -self.re, im: -self.im, exp2: self.exp2 }
    }

    /// Natural log of the modulus; `-inf` for zero.
    pub fn ln_norm(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        0.5 * (self.re * self.re + self.im * self.im).ln()
            + self.exp2 as f64 * std::f64::consts::LN_2
    }

    /// Collapse to a double-precision complex pair; saturates to 0 or
    /// infinity outside the representable range.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (mul_exp2(self.re, self.exp2), mul_exp2(self.im, self.exp2))
    }

    pub fn norm_f64(&self) -> f64 {
        mul_exp2((self.re * self.re + self.im * self.im).sqrt(), self.exp2)
    }
}

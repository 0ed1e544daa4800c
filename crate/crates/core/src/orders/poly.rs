//! Multivariate polynomials `P(z_1, ..., z_M)` in canonical form, and
//! their action on truncated series.

use super::series::TruncatedSeries;
use super::wide::WideComplex;
use super::OrderError;
use std::collections::{BTreeMap, BTreeSet};

/// Canonical polynomial: map from exponent vectors (length = variable
/// count) to nonzero complex coefficients. Zero coefficients are never
/// stored, so syntactically cancelled monomials disappear.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySpec {
    vars: usize,
    terms: BTreeMap<Vec<u32>, (f64, f64)>,
}

impl PolySpec {
    pub fn new(
        vars: usize,
        raw_terms: impl IntoIterator<Item = (Vec<u32>, (f64, f64))>,
    ) -> Result<Self, OrderError> {
        let mut terms: BTreeMap<Vec<u32>, (f64, f64)> = BTreeMap::new();
        for (exps, (re, im)) in raw_terms {
            if exps.len() != vars {
                return Err(OrderError::InvalidInput {
                    reason: format!("exponent vector {exps:?} does not match {vars} variables"),
                });
            }
            if !re.is_finite() || !im.is_finite() {
                return Err(OrderError::InvalidInput { reason: "non-finite coefficient".into() });
            }
            let slot = terms.entry(exps).or_insert((0.0, 0.0));
            slot.0 += re;
            slot.1 += im;
        }
        terms.retain(|_, &mut (re, im)| re != 0.0 || im != 0.0);
        Ok(PolySpec { vars, terms })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &(f64, f64))> {
        self.terms.iter()
    }

    /// Coefficient of the constant monomial (zero if absent).
    pub fn constant_term(&self) -> (f64, f64) {
        self.terms.get(&vec![0u32; self.vars]).copied().unwrap_or((0.0, 0.0))
    }

    /// True when no stored monomial involves a variable.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|exps| exps.iter().all(|&e| e == 0))
    }

    /// Parse text like `z1*z2 + z1`, `3z1^4 - 2`, `z2 + 7`. Variables
    /// are `z1, z2, ...`; `*` between factors is optional; exponents use
    /// `^`. The variable count is the largest index mentioned.
    pub fn parse(text: &str) -> Result<Self, OrderError> {
        let tokens = tokenize(text)?;
        let mut raw_terms: Vec<(BTreeMap<usize, u32>, f64)> = Vec::new();
        let mut i = 0usize;
        let mut sign = 1.0f64;
        let mut current: Option<(BTreeMap<usize, u32>, f64)> = None;
        let mut max_var = 0usize;
        while i < tokens.len() {
            match &tokens[i] {
                Token::Plus | Token::Minus => {
                    if let Some(t) = current.take() {
                        raw_terms.push(t);
                        sign = 1.0;
                    }
                    if matches!(tokens[i], Token::Minus) {
                        sign = -sign;
                    }
                    i += 1;
                }
                Token::Star => {
                    if current.is_none() {
                        return Err(bad_syntax(text));
                    }
                    i += 1;
                }
                Token::Number(v) => {
                    let term = current.get_or_insert((BTreeMap::new(), sign));
                    term.1 *= v;
                    i += 1;
                }
                Token::Var(idx) => {
                    let idx = *idx;
                    max_var = max_var.max(idx);
                    let mut exp = 1u32;
                    if matches!(tokens.get(i + 1), Some(Token::Caret)) {
                        match tokens.get(i + 2) {
                            Some(Token::Number(v)) if *v >= 1.0 && v.fract() == 0.0 => {
                                exp = *v as u32;
                                i += 2;
                            }
                            _ => return Err(bad_syntax(text)),
                        }
                    }
                    let term = current.get_or_insert((BTreeMap::new(), sign));
                    *term.0.entry(idx).or_insert(0) += exp;
                    i += 1;
                }
                Token::Caret => return Err(bad_syntax(text)),
            }
        }
        if let Some(t) = current.take() {
            raw_terms.push(t);
        }
        if raw_terms.is_empty() {
            return Err(bad_syntax(text));
        }
        let vars = max_var.max(1);
        PolySpec::new(
            vars,
            raw_terms.into_iter().map(|(exps_map, coeff)| {
                let mut exps = vec![0u32; vars];
                for (idx, e) in exps_map {
                    exps[idx - 1] = e;
                }
                (exps, (coeff, 0.0))
            }),
        )
    }

    /// Same polynomial over a larger variable list (unused variables
    /// get exponent zero everywhere).
    pub fn widen(&self, vars: usize) -> Result<Self, OrderError> {
        if vars < self.vars {
            return Err(OrderError::InvalidInput {
                reason: format!("cannot narrow {} variables to {vars}", self.vars),
            });
        }
        PolySpec::new(
            vars,
            self.terms.iter().map(|(exps, &c)| {
                let mut wide = exps.clone();
                wide.resize(vars, 0);
                (wide, c)
            }),
        )
    }

    /// Indices (1-based) of variables that appear with positive exponent
    /// in some stored monomial.
    pub fn index_set(&self) -> Result<BTreeSet<usize>, OrderError> {
        let mut set = BTreeSet::new();
        for exps in self.terms.keys() {
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    set.insert(i + 1);
                }
            }
        }
        if set.is_empty() {
            return Err(OrderError::ConstantPolynomial {
                reason: "no variable appears; the index set is empty".into(),
            });
        }
        Ok(set)
    }

    /// Substitute series for the variables and expand over the series
    /// ring. Truncation is the minimum of the inputs' truncations.
    pub fn compose(&self, series: &[TruncatedSeries]) -> Result<TruncatedSeries, OrderError> {
        if series.len() != self.vars {
            return Err(OrderError::InvalidInput {
                reason: format!("expected {} series, got {}", self.vars, series.len()),
            });
        }
        if self.is_constant() {
            return Err(OrderError::ConstantPolynomial {
                reason: "composition with a constant polynomial".into(),
            });
        }
        let order = series.iter().map(|s| s.order_n()).min().expect("vars >= 1");
        let mut acc = TruncatedSeries::zero(order)?;
        for (exps, &(re, im)) in &self.terms {
            let mut factor: Option<TruncatedSeries> = None;
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    factor = Some(match factor {
                        None => series[i].clone(),
                        Some(f) => f.mul(&series[i]),
                    });
                }
            }
            let coeff = WideComplex::new(re, im);
            let term = match factor {
                None => TruncatedSeries::monomial(0, coeff, order)?,
                Some(f) => f.scale(&coeff),
            };
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

/// Free-function forms of the polynomial operations.
pub fn index_set(p: &PolySpec) -> Result<BTreeSet<usize>, OrderError> {
    p.index_set()
}

pub fn compose_poly(
    p: &PolySpec,
    series: &[TruncatedSeries],
) -> Result<TruncatedSeries, OrderError> {
    p.compose(series)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Plus,
    Minus,
    Star,
    Caret,
    Number(f64),
    Var(usize),
}

fn bad_syntax(text: &str) -> OrderError {
    OrderError::InvalidInput { reason: format!("cannot parse polynomial {text:?}") }
}

fn tokenize(text: &str) -> Result<Vec<Token>, OrderError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            'z' => {
                let start = i + 1;
                let mut end = start;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                let idx: usize = chars[start..end]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| bad_syntax(text))?;
                if idx == 0 {
                    return Err(bad_syntax(text));
                }
                out.push(Token::Var(idx));
                i = end;
            }
            d if d.is_ascii_digit() || d == '.' => {
                let start = i;
                let mut end = i;
                while end < chars.len() && (chars[end].is_ascii_digit() || chars[end] == '.') {
                    end += 1;
                }
                let v: f64 = chars[start..end]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| bad_syntax(text))?;
                out.push(Token::Number(v));
                i = end;
            }
            _ => return Err(bad_syntax(text)),
        }
    }
    if out.is_empty() {
        return Err(bad_syntax(text));
    }
    Ok(out)
}

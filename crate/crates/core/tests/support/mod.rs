//! Shared oracles for integration tests.
//!
//! Everything in this module is implemented independently of the library
//! paths it is used to check: the curve oracle performs geometric
//! subdivision with explicit orientation matrices instead of the
//! Gray-code bit machine, the order oracles use closed-form asymptotics,
//! and the inverse-map oracle uses plain bisection.

#![allow(dead_code)]

use peano_lab_core::curve::CurveKind;

/// Orientation of a subcurve inside a cell: `out_j = flip_j (.) in_perm[j]`
/// where `(.)` is complement when the flip flag is set.
#[derive(Clone, Copy)]
pub struct Orient {
    perm: [usize; 3],
    flip: [bool; 3],
    dim: usize,
}

impl Orient {
    fn identity(dim: usize) -> Self {
        Orient { perm: [0, 1, 2], flip: [false; 3], dim }
    }

    fn compose(&self, other: &Orient) -> Orient {
        let mut out = Orient::identity(self.dim);
        for j in 0..self.dim {
            out.perm[j] = other.perm[self.perm[j]];
            out.flip[j] = self.flip[j] ^ other.flip[self.perm[j]];
        }
        out
    }

    /// Apply to a child-cell position with digits in `[0, base)`.
    fn apply(&self, pos: &[u64], base: u64) -> Vec<u64> {
        (0..self.dim)
            .map(|j| {
                let c = pos[self.perm[j]];
                if self.flip[j] {
                    base - 1 - c
                } else {
                    c
                }
            })
            .collect()
    }
}

struct Rules {
    base: u64,
    positions: Vec<Vec<u64>>,
    orients: Vec<Orient>,
}

/// Classical 2-D rules: quadrants lower-left (transposed), upper-left,
/// upper-right (both upright), lower-right (anti-transposed).
fn rules_h2() -> Rules {
    let t = Orient { perm: [1, 0, 2], flip: [false, false, false], dim: 2 };
    let id = Orient::identity(2);
    let anti = Orient { perm: [1, 0, 2], flip: [true, true, false], dim: 2 };
    Rules {
        base: 2,
        positions: vec![vec![0, 0], vec![0, 1], vec![1, 1], vec![1, 0]],
        orients: vec![t, id, id, anti],
    }
}

/// 3-D rules for the traversal that walks the Gray path
/// 000,010,011,001,101,111,110,100 over the octants.
fn rules_h3() -> Rules {
    let o = |perm: [usize; 3], flip: [bool; 3]| Orient { perm, flip, dim: 3 };
    Rules {
        base: 2,
        positions: vec![
            vec![0, 0, 0],
            vec![0, 1, 0],
            vec![0, 1, 1],
            vec![0, 0, 1],
            vec![1, 0, 1],
            vec![1, 1, 1],
            vec![1, 1, 0],
            vec![1, 0, 0],
        ],
        orients: vec![
            o([2, 0, 1], [false, false, false]),
            o([1, 2, 0], [false, false, false]),
            o([1, 2, 0], [false, false, false]),
            o([0, 1, 2], [false, true, true]),
            o([0, 1, 2], [false, true, true]),
            o([1, 2, 0], [true, false, true]),
            o([1, 2, 0], [true, false, true]),
            o([2, 0, 1], [true, true, false]),
        ],
    }
}

/// Ternary serpentine rules: columns bottom-up, top-down, bottom-up, with
/// per-child reflections given by digit parities.
fn rules_peano() -> Rules {
    let mut positions = Vec::new();
    let mut orients = Vec::new();
    for p in 0..9u64 {
        let a = p / 3;
        let b = p % 3;
        let col = a;
        let row = if a % 2 == 1 { 2 - b } else { b };
        positions.push(vec![col, row]);
        orients.push(Orient {
            perm: [0, 1, 2],
            flip: [b % 2 == 1, a % 2 == 1, false],
            dim: 2,
        });
    }
    Rules { base: 3, positions, orients }
}

fn rules_for(kind: CurveKind) -> Rules {
    match kind {
        CurveKind::Hilbert2 => rules_h2(),
        CurveKind::Hilbert3 => rules_h3(),
        CurveKind::Peano => rules_peano(),
    }
}

/// Ordered list of grid cells visited by the curve at the given depth,
/// computed by recursive geometric subdivision.
pub fn oracle_cells(kind: CurveKind, depth: u32) -> Vec<Vec<u64>> {
    let rules = rules_for(kind);
    let dim = kind.dim();
    let mut out = Vec::new();
    let side = rules.base.pow(depth);
    recurse(&rules, dim, depth, &vec![0u64; dim], side, Orient::identity(dim), &mut out);
    out
}

fn recurse(
    rules: &Rules,
    dim: usize,
    depth: u32,
    origin: &[u64],
    side: u64,
    orient: Orient,
    out: &mut Vec<Vec<u64>>,
) {
    if depth == 0 {
        out.push(origin.to_vec());
        return;
    }
    let child_side = side / rules.base;
    for p in 0..rules.positions.len() {
        let actual = orient.apply(&rules.positions[p], rules.base);
        let origin: Vec<u64> = (0..dim).map(|j| origin[j] + actual[j] * child_side).collect();
        let orient = orient.compose(&rules.orients[p]);
        recurse(rules, dim, depth - 1, &origin, child_side, orient, out);
    }
}

/// Stirling estimate of `log(n!)`, used as an independent check of
/// factorial-coefficient order estimates.
pub fn stirling_ln_factorial(n: f64) -> f64 {
    n * n.ln() - n + 0.5 * (2.0 * std::f64::consts::PI * n).ln() + 1.0 / (12.0 * n)
}

/// Plain bisection inverse for the odd map `t -> e^(rt) - e^(-rt)`.
pub fn bisect_inverse_phi(r: f64, y: f64) -> f64 {
    let f = |t: f64| (r * t).exp() - (-r * t).exp();
    let (mut lo, mut hi) = if y >= 0.0 { (0.0, 1.0) } else { (-1.0, 0.0) };
    while f(hi) < y {
        hi *= 2.0;
    }
    while f(lo) > y {
        lo *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

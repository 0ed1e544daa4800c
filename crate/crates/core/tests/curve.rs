//! Integration tests for the exact curve engine.
//!
//! The implementation (a Gray-code/rotation digit machine) is checked
//! against an independent oracle that performs geometric subdivision with
//! explicit orientation tables, plus closed-form golden values and
//! metric invariants.

mod support;

use num_rational::BigRational;
use peano_lab_core::curve::{
    cell_of, cell_rank, eval_kind, eval_limit, eval_rational, hilbert_eval, preimage_of_cell,
    CellAddress, CurveKind, DyadicParam, Side,
};
use proptest::prelude::*;

const ALL_KINDS: [CurveKind; 3] = [CurveKind::Hilbert2, CurveKind::Hilbert3, CurveKind::Peano];

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

#[test]
fn every_curve_starts_at_the_origin() {
    for kind in ALL_KINDS {
        for depth in 1..=8 {
            let p = eval_kind(kind, &DyadicParam::zero(), depth).unwrap();
            for c in &p.coords {
                assert_eq!(c.to_rational(), rat(0, 1));
            }
        }
    }
}

#[test]
fn endpoint_values_are_the_documented_corners() {
    for kind in ALL_KINDS {
        for depth in 1..=8 {
            let p = eval_kind(kind, &DyadicParam::one(), depth).unwrap();
            let got: Vec<BigRational> = p.coords.iter().map(|c| c.to_rational()).collect();
            let want: Vec<BigRational> = kind
                .end_corner()
                .iter()
                .map(|&b| rat(b as i64, 1))
                .collect();
            assert_eq!(got, want, "kind {kind:?} depth {depth}");
        }
    }
}

#[test]
fn second_quarter_of_binary_curve_lies_in_upper_left_quadrant() {
    // Parameters in [1/4, 1/2] map into the closed quadrant
    // [0, 1/2] x [1/2, 1], at depth 1 and at finer depths.
    let params = [
        DyadicParam::new(1, 1, CurveKind::Hilbert2).unwrap(),
        DyadicParam::new(5, 2, CurveKind::Hilbert2).unwrap(),
        DyadicParam::new(6, 2, CurveKind::Hilbert2).unwrap(),
        DyadicParam::new(7, 2, CurveKind::Hilbert2).unwrap(),
        DyadicParam::new(23, 3, CurveKind::Hilbert2).unwrap(),
        DyadicParam::new(2, 1, CurveKind::Hilbert2).unwrap(),
    ];
    let half = rat(1, 2);
    for t in params {
        for depth in [1, 3, 6] {
            let p = hilbert_eval(&t, 2, depth).unwrap();
            let x = p.coords[0].to_rational();
            let y = p.coords[1].to_rational();
            assert!(x <= half && y >= half, "t={t:?} depth={depth} -> ({x}, {y})");
        }
    }
}

#[test]
fn ternary_curve_is_continuous_at_one_third() {
    // 1/3 separates the first and second thirds of the traversal; the
    // left limit and the value agree exactly, and both equal (1/3, 1).
    let t = DyadicParam::new(3, 1, CurveKind::Peano).unwrap();
    for depth in 1..=6 {
        let right = eval_limit(CurveKind::Peano, &t, depth, Side::Right).unwrap();
        let left = eval_limit(CurveKind::Peano, &t, depth, Side::Left).unwrap();
        assert_eq!(right, left, "one-sided limits differ at depth {depth}");
        assert_eq!(right.coords[0].to_rational(), rat(1, 3));
        assert_eq!(right.coords[1].to_rational(), rat(1, 1));
    }
}

#[test]
fn left_limit_agrees_with_value_at_every_grid_point() {
    // The curve is continuous, so evaluating the previous cell's exit
    // corner must reproduce the value computed from the digit expansion.
    for kind in ALL_KINDS {
        let b = kind.branching() as u128;
        for depth in 1..=3u32 {
            for h in 1..=b.pow(depth) {
                let t = DyadicParam::new(h, depth, kind).unwrap();
                let eval_depth = depth + 1;
                let left = eval_limit(kind, &t, eval_depth, Side::Left).unwrap();
                let right = eval_kind(kind, &t, eval_depth).unwrap();
                assert_eq!(left, right, "kind {kind:?} t={h}/{b}^{depth}");
            }
        }
    }
}

#[test]
fn cell_of_identifies_the_final_quadrant() {
    // t = 3/4 lies in the last quarter of the binary traversal, which is
    // the lower-right quadrant: geometric digit 1 (x bit set, y bit clear).
    let t = DyadicParam::new(3, 1, CurveKind::Hilbert2).unwrap();
    let cell = cell_of(&t, CurveKind::Hilbert2, 1).unwrap();
    assert_eq!(cell.digits, vec![1]);
    assert_eq!(cell.grid_coords(), vec![1, 0]);
}

#[test]
fn first_cell_preimage_is_the_first_quarter() {
    let cell = CellAddress::new(CurveKind::Hilbert2, vec![0]).unwrap();
    let (lo, hi) = preimage_of_cell(&cell).unwrap();
    assert_eq!(lo, DyadicParam::zero());
    assert_eq!(hi, DyadicParam::new(1, 1, CurveKind::Hilbert2).unwrap());
}

#[test]
fn preimage_left_endpoints_partition_the_unit_interval() {
    for kind in ALL_KINDS {
        let b = kind.branching() as usize;
        for depth in 1..=3u32 {
            let total = b.pow(depth);
            let mut seen = vec![false; total];
            let width = BigRational::new(1.into(), (total as i64).into());
            // Enumerate every cell address at this depth.
            for code in 0..total {
                let mut digits = vec![0u8; depth as usize];
                let mut c = code;
                for slot in digits.iter_mut().rev() {
                    *slot = (c % b) as u8;
                    c /= b;
                }
                let cell = CellAddress::new(kind, digits).unwrap();
                let (lo, hi) = preimage_of_cell(&cell).unwrap();
                let lo_r = lo.to_rational(kind);
                let hi_r = hi.to_rational(kind);
                assert_eq!(&hi_r - &lo_r, width);
                let rank = cell_rank(&cell).unwrap() as usize;
                assert_eq!(lo_r, BigRational::new((rank as i64).into(), (total as i64).into()));
                assert!(!seen[rank], "rank {rank} hit twice at depth {depth}");
                seen[rank] = true;
            }
            assert!(seen.iter().all(|&s| s), "kind {kind:?} depth {depth}");
        }
    }
}

#[test]
fn refining_depth_moves_points_at_most_one_cell_diameter() {
    for kind in ALL_KINDS {
        let dim = kind.dim() as f64;
        let base = kind.base() as f64;
        for k in 0..=193u32 {
            let t = rat(k as i64, 193);
            for depth in 1..=7u32 {
                let a = eval_rational(kind, &t, depth).unwrap();
                let b = eval_rational(kind, &t, depth + 1).unwrap();
                let bound = dim.sqrt() * base.powi(-(depth as i32));
                assert!(
                    a.distance_to(&b) <= bound * (1.0 + 1e-12),
                    "kind {kind:?} t={k}/193 depth {depth}"
                );
            }
        }
    }
}

#[test]
fn depth_six_binary_curve_visits_every_planar_cell_once() {
    let depth = 6u32;
    let side = 1u64 << depth;
    let mut seen = vec![false; (side * side) as usize];
    for h in 0..4u128.pow(depth) {
        let t = DyadicParam::new(h, depth, CurveKind::Hilbert2).unwrap();
        let cell = cell_of(&t, CurveKind::Hilbert2, depth).unwrap();
        let coords = cell.grid_coords();
        let idx = (coords[1] * side + coords[0]) as usize;
        assert!(!seen[idx], "cell {coords:?} visited twice");
        seen[idx] = true;
    }
    assert!(seen.iter().all(|&s| s));
}

/// Depth budget per curve for exhaustive oracle comparison.
fn oracle_depths(kind: CurveKind) -> std::ops::RangeInclusive<u32> {
    match kind {
        CurveKind::Hilbert2 => 1..=5,
        CurveKind::Hilbert3 => 1..=4,
        CurveKind::Peano => 1..=4,
    }
}

#[test]
fn traversal_order_matches_geometric_subdivision_oracle() {
    for kind in ALL_KINDS {
        for depth in oracle_depths(kind) {
            let oracle = support::oracle_cells(kind, depth);
            assert_eq!(oracle.len(), (kind.branching() as usize).pow(depth));
            for (h, want) in oracle.iter().enumerate() {
                let t = DyadicParam::new(h as u128, depth, kind).unwrap();
                let cell = cell_of(&t, kind, depth).unwrap();
                assert_eq!(
                    &cell.grid_coords(),
                    want,
                    "kind {kind:?} depth {depth} rank {h}"
                );
                assert_eq!(cell_rank(&cell).unwrap(), h as u128);
            }
        }
    }
}

#[test]
fn oracle_walk_is_face_connected() {
    // Sanity-check the oracle itself: consecutive cells share a face.
    for kind in ALL_KINDS {
        for depth in 1..=3u32 {
            let cells = support::oracle_cells(kind, depth);
            for pair in cells.windows(2) {
                let step: u64 = pair[0]
                    .iter()
                    .zip(&pair[1])
                    .map(|(&a, &b)| a.abs_diff(b))
                    .sum();
                assert_eq!(step, 1, "kind {kind:?} depth {depth}: {pair:?}");
            }
        }
    }
}

#[test]
fn oracle_refinement_nests_inside_parent_cells() {
    for kind in ALL_KINDS {
        let base = kind.base() as u64;
        let b = kind.branching() as usize;
        for depth in 1..=3u32 {
            let coarse = support::oracle_cells(kind, depth);
            let fine = support::oracle_cells(kind, depth + 1);
            for (h, parent) in coarse.iter().enumerate() {
                for i in 0..b {
                    let child = &fine[h * b + i];
                    let reduced: Vec<u64> = child.iter().map(|&c| c / base).collect();
                    assert_eq!(&reduced, parent, "kind {kind:?} depth {depth} rank {h}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Canonical-parameter evaluation agrees with general rational
    /// evaluation of the same value.
    #[test]
    fn prop_param_and_rational_eval_agree(
        kind in prop::sample::select(ALL_KINDS.to_vec()),
        t in (1u32..=10).prop_flat_map(|d| (Just(d), 0u128..=1u128 << 20)),
        depth in 1u32..=9,
    ) {
        for kind in [kind] {
            let (d, raw) = t;
            let max = (kind.branching() as u128).pow(d);
            let num = raw % (max + 1);
            let param = DyadicParam::new(num, d, kind).unwrap();
            let a = eval_kind(kind, &param, depth).unwrap();
            let b = eval_rational(kind, &param.to_rational(kind), depth).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    /// Evaluation is monotone in refinement: each extra digit keeps the
    /// point inside the current cell, so the total drift from depth d to
    /// any deeper depth is below one depth-d cell diameter times 2.
    #[test]
    fn prop_refinement_drift_is_geometrically_bounded(
        kind in prop::sample::select(ALL_KINDS.to_vec()),
        num in 0u128..=1u128 << 24,
        depth in 1u32..=6,
    ) {
        let max = (kind.branching() as u128).pow(10);
        let t = DyadicParam::new(num % (max + 1), 10, kind).unwrap();
        let base = kind.base() as f64;
        let dim = kind.dim() as f64;
        let shallow = eval_kind(kind, &t, depth).unwrap();
        let deep = eval_kind(kind, &t, 10).unwrap();
        let bound = 2.0 * dim.sqrt() * base.powi(-(depth as i32));
        prop_assert!(shallow.distance_to(&deep) <= bound);
    }
}

#[test]
fn evaluation_satisfies_a_holder_continuity_bound() {
    // |f(t) - f(s)| <= C * |t - s|^(1/dim) with C = 2 * sqrt(dim), checked
    // on grid pairs at several scales (evaluation depth 8, with one cell
    // diameter of slack for the truncation).
    for kind in [CurveKind::Hilbert2, CurveKind::Peano] {
        holder_check(kind, 2.0 * (kind.dim() as f64).sqrt());
    }
    holder_check(CurveKind::Hilbert3, 2.0 * 3.0f64.sqrt());
}

fn holder_check(kind: CurveKind, c: f64) {
    let dim = kind.dim() as f64;
    let base = kind.base() as f64;
    let eval_depth = 8u32;
    let slack = dim.sqrt() * base.powi(-(eval_depth as i32));
    let b = kind.branching() as u128;
    for scale in 1..=4u32 {
        let total = b.pow(scale);
        let step = (total / 64).max(1);
        let mut h = 0u128;
        while h < total {
            // Pair each sample with a few nearby offsets, including the
            // mid-range gaps where the worst dilation pairs live.
            for delta in [1u128, 2, 3, b, b * 2, b * 4 + 2, b * 5] {
                if h + delta > total {
                    continue;
                }
                let t = DyadicParam::new(h, scale, kind).unwrap();
                let s = DyadicParam::new(h + delta, scale, kind).unwrap();
                let pt = eval_kind(kind, &t, eval_depth).unwrap();
                let ps = eval_kind(kind, &s, eval_depth).unwrap();
                let gap = delta as f64 / total as f64;
                let bound = c * gap.powf(1.0 / dim) + slack;
                assert!(
                    pt.distance_to(&ps) <= bound,
                    "kind {kind:?} scale {scale} h {h} delta {delta}: {} > {bound}",
                    pt.distance_to(&ps)
                );
            }
            h += step;
        }
    }
}

//! Integration tests for the sequence-space layer: the coordinate
//! homeomorphisms and their inverses, support preservation, the
//! equicontinuity estimate, both metrics, finite index surjections,
//! and the composition with the half-line tiling that reaches a full
//! net of a plane slice inside the eventually-null sequences.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use peano_lab_core::seqmaps::{
    big_phi, big_phi_inverse, equicontinuity_bound, index_preimage, index_surjection,
    phi_inverse, phi_r, product_metric, uniform_metric, FiniteSeq, IndexMap, IndexedValues,
    RateVector,
};
use peano_lab_core::tiling::{composite_eval, fiber_witnesses, LineMap, TargetPoint, TargetSpace};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn inverse_round_trips_on_a_thousand_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..1_000 {
        let r = rng.gen_range(0.1..=3.0);
        let t = rng.gen_range(-5.0..=5.0);
        let y = phi_r(r, t).unwrap();
        let back = phi_inverse(r, y).unwrap();
        assert!((back - t).abs() < 1e-10, "r={r}, t={t}: got {back}");
        // Solver agrees with the closed form asinh(y/2)/r.
        let oracle = (y / 2.0).asinh() / r;
        assert!((back - oracle).abs() < 1e-10);
    }
}

#[test]
fn homeomorphisms_are_strictly_monotone_in_the_argument() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for _ in 0..10_000 {
        let r = rng.gen_range(0.01..=3.0);
        let a = rng.gen_range(-6.0..=6.0);
        let b = rng.gen_range(-6.0..=6.0);
        let (t, s) = if a < b { (a, b) } else { (b, a) };
        if t == s {
            continue;
        }
        assert!(
            phi_r(r, t).unwrap() < phi_r(r, s).unwrap(),
            "not increasing at r={r}, t={t}, s={s}"
        );
    }
}

#[test]
fn equicontinuity_bound_dominates_every_coordinate() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for _ in 0..10_000 {
        let rates = RateVector::new(
            (0..3).map(|_| rng.gen_range(0.05..=2.0)).collect(),
            rng.gen_range(0.05..=2.0),
        )
        .unwrap();
        let t = rng.gen_range(-3.0..=3.0);
        let s = rng.gen_range(-3.0..=3.0);
        let bound = equicontinuity_bound(&rates, t, s);
        for n in 1..=5 {
            let r = rates.rate(n);
            let actual = (phi_r(r, t).unwrap() - phi_r(r, s).unwrap()).abs();
            assert!(
                actual <= bound + 1e-12,
                "coordinate {n} exceeds the bound: {actual} > {bound}"
            );
        }
    }
}

#[test]
fn support_never_changes_under_the_product_map() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let rates = RateVector::new(vec![1.3, 0.8, 0.8, 2.0], 0.4).unwrap();
    for _ in 0..1_000 {
        let len = rng.gen_range(0..10usize);
        let entries: Vec<f64> = (0..len)
            .map(|_| {
                if rng.gen_bool(0.25) {
                    0.0
                } else {
                    rng.gen_range(-3.0..=3.0)
                }
            })
            .collect();
        let x = FiniteSeq::new(entries).unwrap();
        let y = big_phi(&rates, &x).unwrap();
        assert_eq!(y.support(), x.support(), "support moved for {:?}", x.entries());
        // Interior zeros stay zero, nonzeros stay nonzero.
        for n in 1..=x.support() {
            assert_eq!(y.coordinate(n) == 0.0, x.coordinate(n) == 0.0);
        }
        let back = big_phi_inverse(&rates, &y).unwrap();
        assert_eq!(back.support(), x.support());
        for n in 1..=x.support() {
            assert!((back.coordinate(n) - x.coordinate(n)).abs() < 1e-9);
        }
    }
}

#[test]
fn index_surjection_hits_a_half_step_net_of_the_small_cube() {
    // Eight ambient indices, four active ones with mixed rates.
    let lambda: Vec<String> = (1..=8).map(|i| format!("l{i}")).collect();
    let gamma: Vec<String> = (1..=4).map(|i| format!("l{i}")).collect();
    let rate_values = [1.0, 0.5, 0.25, 0.125];
    let rates: BTreeMap<String, f64> = gamma
        .iter()
        .zip(rate_values)
        .map(|(g, r)| (g.clone(), r))
        .collect();
    let map = IndexMap::new(lambda, gamma.clone(), rates).unwrap();

    let steps: Vec<f64> = (0..=8).map(|i| -2.0 + 0.5 * i as f64).collect();
    let mut checked = 0usize;
    for &a in &steps {
        for &b in &steps {
            for &c in &steps {
                for &d in &steps {
                    let target: IndexedValues = gamma
                        .iter()
                        .zip([a, b, c, d])
                        .map(|(g, v)| (g.clone(), v))
                        .collect();
                    let pre = index_preimage(&map, &target).unwrap();
                    assert_eq!(pre.len(), 8);
                    let hit = index_surjection(&map, &pre).unwrap();
                    for g in &gamma {
                        assert!(
                            (hit[g] - target[g]).abs() < 1e-8,
                            "missed {g} of ({a},{b},{c},{d})"
                        );
                    }
                    checked += 1;
                }
            }
        }
    }
    assert_eq!(checked, 9usize.pow(4));
}

#[test]
fn composition_with_the_tiling_covers_a_net_of_the_plane_slice() {
    // Targets on the 0.05-net of [-1,1]^2 x {0}: pull back through the
    // coordinate homeomorphisms, locate a certified fiber witness past
    // t = 100, and verify the fully composed map lands within the net
    // spacing of the target.
    let rates = RateVector::new(vec![1.0, 0.5], 0.25).unwrap();
    let map = LineMap::composite(TargetSpace::FiniteSupport).unwrap();
    let mut worst = 0.0f64;
    for i in 0..=40 {
        for j in 0..=40 {
            let y1 = -1.0 + 0.05 * i as f64;
            let y2 = -1.0 + 0.05 * j as f64;
            let y = FiniteSeq::new(vec![y1, y2]).unwrap();
            let x = big_phi_inverse(&rates, &y).unwrap();
            let mut coords = x.entries().to_vec();
            coords.resize(2, 0.0);
            let a = TargetPoint::from_f64s(&coords).unwrap();
            let report = fiber_witnesses(&map, &a, 1, 100.0, 0.008)
                .unwrap_or_else(|e| panic!("no witness for ({y1},{y2}): {e}"));
            let t = report.witnesses.last().unwrap();
            assert!(t.to_f64().unwrap() > 100.0);

            let image = composite_eval(&map, t, 20).unwrap();
            let seq = FiniteSeq::new(image.to_f64()).unwrap();
            let out = big_phi(&rates, &seq).unwrap();
            let mut dist = 0.0f64;
            for n in 1..=out.support().max(2) {
                let want = match n {
                    1 => y1,
                    2 => y2,
                    _ => 0.0,
                };
                dist = dist.max((out.coordinate(n) - want).abs());
            }
            assert!(dist <= 0.05, "composed image misses ({y1},{y2}) by {dist}");
            worst = worst.max(dist);
        }
    }
    assert!(worst < 0.05);
}

fn seq_strategy() -> impl Strategy<Value = FiniteSeq> {
    prop::collection::vec(-50.0f64..50.0, 0..8)
        .prop_map(|v| FiniteSeq::new(v).unwrap())
}

proptest! {
    #[test]
    fn product_metric_is_a_bounded_metric(
        x in seq_strategy(),
        y in seq_strategy(),
        z in seq_strategy(),
    ) {
        let terms = 24u32;
        let dxy = product_metric(&x, &y, terms).unwrap().value;
        let dyx = product_metric(&y, &x, terms).unwrap().value;
        let dxz = product_metric(&x, &z, terms).unwrap().value;
        let dyz = product_metric(&y, &z, terms).unwrap().value;
        prop_assert!(dxy < 1.0);
        prop_assert!((dxy - dyx).abs() < 1e-15);
        prop_assert_eq!(product_metric(&x, &x, terms).unwrap().value, 0.0);
        prop_assert!(dxz <= dxy + dyz + 1e-12);
    }

    #[test]
    fn uniform_metric_is_a_bounded_metric(
        vals in prop::collection::vec((-40.0f64..40.0, -40.0f64..40.0, -40.0f64..40.0), 1..6),
    ) {
        let key = |i: usize| format!("k{i}");
        let f: IndexedValues = vals.iter().enumerate().map(|(i, v)| (key(i), v.0)).collect();
        let g: IndexedValues = vals.iter().enumerate().map(|(i, v)| (key(i), v.1)).collect();
        let h: IndexedValues = vals.iter().enumerate().map(|(i, v)| (key(i), v.2)).collect();
        let dfg = uniform_metric(&f, &g).unwrap();
        prop_assert!(dfg <= 1.0);
        prop_assert_eq!(uniform_metric(&f, &f).unwrap(), 0.0);
        prop_assert!((dfg - uniform_metric(&g, &f).unwrap()).abs() < 1e-15);
        let dfh = uniform_metric(&f, &h).unwrap();
        let dgh = uniform_metric(&g, &h).unwrap();
        prop_assert!(dfh <= dfg + dgh + 1e-12);
    }
}

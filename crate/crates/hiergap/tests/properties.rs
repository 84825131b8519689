//! Randomized invariants of the transfer-matrix algebra, the element gap
//! sets, and the spectral scan.

use hiergap::model::{ElementModel, UnitCell};
use hiergap::sl2::{
    coefficient_product, lemma_entry_check, pendulum_form, product, t_matrix, theorem_margin,
};
use hiergap::spectrum::{
    classify, dispersion_rhs, hierarchical_gaps, scan_spectrum, Classification,
};
use hiergap::{IntervalKind, LambdaRange, SpectralInterval};
use proptest::prelude::*;

fn signed_gap_t() -> impl Strategy<Value = f64> {
    (2.0001f64..1e3, any::<bool>()).prop_map(|(m, neg)| if neg { -m } else { m })
}

fn any_t() -> impl Strategy<Value = f64> {
    -1e3f64..1e3
}

fn any_element() -> impl Strategy<Value = ElementModel> {
    prop_oneof![
        (0.05f64..10.0, 0.05f64..5.0)
            .prop_map(|(m, k)| ElementModel::mass_spring("ms", m, k).unwrap()),
        (0.05f64..10.0, 0.05f64..5.0, 0.0f64..10.0)
            .prop_map(|(m, k, r)| ElementModel::pendulum("pd", m, k, r).unwrap()),
        (0.1f64..5.0, 0.05f64..5.0, 0.05f64..5.0, 0.5f64..12.0)
            .prop_map(|(mo, mi, k, r)| ElementModel::resonant("rs", mo, mi, k, r).unwrap()),
    ]
}

fn mass_spring_cell() -> impl Strategy<Value = UnitCell> {
    prop::collection::vec((0.05f64..10.0, 0.05f64..5.0), 1..=3).prop_map(|params| {
        let elements = params
            .into_iter()
            .enumerate()
            .map(|(i, (m, k))| ElementModel::mass_spring(format!("m{i}"), m, k).unwrap())
            .collect();
        UnitCell::new("prop cell", elements).unwrap()
    })
}

fn small_cell() -> impl Strategy<Value = UnitCell> {
    prop::collection::vec(any_element(), 1..=4)
        .prop_map(|elements| UnitCell::new("prop cell", elements).unwrap())
}

fn min_pole_distance(cell: &UnitCell, lambda: f64, range: LambdaRange) -> f64 {
    cell.poles_in(range)
        .iter()
        .map(|p| (lambda - p).abs())
        .fold(f64::INFINITY, f64::min)
}

fn covered_by(inner: &[SpectralInterval], outer: &[SpectralInterval]) -> bool {
    inner
        .iter()
        .all(|iv| outer.iter().any(|o| o.lo <= iv.lo && iv.hi <= o.hi))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    // det T(t) = -0*t - (-1)*1 = 1 exactly; products only accumulate
    // rounding in the entries, and the scaled drift stays tiny. factor
    // counts and magnitudes are capped so entries stay finite: growth is
    // at most (|t| + 1) per factor
    #[test]
    fn det_drift_short_products(ts in prop::collection::vec(any_t(), 1..=50)) {
        let m = coefficient_product(&ts).unwrap();
        prop_assert!(m.det_drift() <= 1e-12, "drift {} for {} factors", m.det_drift(), ts.len());
    }

    #[test]
    fn det_drift_long_products(ts in prop::collection::vec(-2.5f64..2.5, 51..=512)) {
        let m = coefficient_product(&ts).unwrap();
        prop_assert!(m.det_drift() <= 1e-9, "drift {} for {} factors", m.det_drift(), ts.len());
    }

    // reversing the site order preserves the trace
    #[test]
    fn trace_reversal_invariance(ts in prop::collection::vec(any_t(), 1..=64)) {
        let fwd = coefficient_product(&ts).unwrap().trace();
        let mut rev = ts.clone();
        rev.reverse();
        let bwd = coefficient_product(&rev).unwrap().trace();
        let scale = fwd.abs().max(1.0);
        prop_assert!((fwd - bwd).abs() <= 1e-9 * scale, "fwd {fwd} bwd {bwd}");
    }

    // P(t) = D T(t) D with D = diag(1, -1) only flips signs of entries,
    // which is exact, so the product traces agree bit for bit
    #[test]
    fn pendulum_conjugation_trace(ts in prop::collection::vec(any_t(), 1..=64)) {
        let plain: Vec<_> = ts.iter().map(|&t| t_matrix(t).unwrap()).collect();
        let conj: Vec<_> = ts.iter().map(|&t| pendulum_form(t).unwrap()).collect();
        let a = product(&plain).trace();
        let b = product(&conj).trace();
        prop_assert_eq!(a.to_bits(), b.to_bits(), "traces {} vs {}", a, b);
    }

    // the closure theorem and the entry bounds that prove it
    #[test]
    fn gap_side_products_stay_hyperbolic(ts in prop::collection::vec(signed_gap_t(), 1..=50)) {
        let verdict = theorem_margin(&ts).unwrap();
        prop_assert!(verdict.in_m, "trace {} for ts {ts:?}", verdict.trace);
        prop_assert!(lemma_entry_check(&ts).unwrap(), "entry bounds failed for ts {ts:?}");
    }

    // an element's analytic gap set agrees with a pointwise |t| > 2 test
    #[test]
    fn gap_set_matches_coefficient(e in any_element(), hi in 5.0f64..30.0) {
        let range = LambdaRange::new(0.0, hi).unwrap();
        let gaps = e.gap_set(range).unwrap();
        let endpoints: Vec<f64> = gaps
            .intervals
            .iter()
            .flat_map(|iv| [iv.lo, iv.hi])
            .collect();
        for j in 0..200 {
            let lambda = range.lo + range.width() * (j as f64) / 199.0;
            if let Some(p) = e.pole() {
                if (lambda - p).abs() < 1e-6 {
                    continue;
                }
            }
            if endpoints.iter().any(|&b| (lambda - b).abs() < 1e-9 * lambda.abs().max(1.0)) {
                continue;
            }
            let t = e.coefficient(lambda).unwrap();
            let in_gap = gaps.intervals.iter().any(|iv| iv.lo < lambda && lambda < iv.hi);
            prop_assert_eq!(
                t.abs() > 2.0,
                in_gap,
                "lambda {} has |t| = {} but in_gap = {}",
                lambda, t.abs(), in_gap
            );
        }
    }

    // intersecting with one more element can only shrink the common gaps
    #[test]
    fn hierarchy_is_monotone(
        elements in prop::collection::vec(any_element(), 1..=6),
        extra in any_element(),
        hi in 5.0f64..30.0,
    ) {
        let range = LambdaRange::new(0.0, hi).unwrap();
        let base = hierarchical_gaps(&elements, range).unwrap();
        let mut more = elements.clone();
        more.push(extra);
        let refined = hierarchical_gaps(&more, range).unwrap();
        prop_assert!(
            covered_by(&refined.intervals, &base.intervals),
            "intersection grew: {:?} not within {:?}",
            refined.intervals.iter().map(|iv| (iv.lo, iv.hi)).collect::<Vec<_>>(),
            base.intervals.iter().map(|iv| (iv.lo, iv.hi)).collect::<Vec<_>>()
        );
        for w in refined.intervals.windows(2) {
            prop_assert!(w[0].hi <= w[1].lo, "intervals out of order");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // a scan tiles its window exactly: no holes, no overlaps, only
    // pass-band and band-gap pieces
    #[test]
    fn scan_tiles_the_range(cell in small_cell(), hi in 5.0f64..20.0, grid in 256usize..=768) {
        let range = LambdaRange::new(0.0, hi).unwrap();
        let scan = scan_spectrum(&cell, range, grid, 1e-9).unwrap();
        prop_assert!(!scan.intervals.is_empty());
        prop_assert_eq!(scan.intervals.first().unwrap().lo, range.lo);
        prop_assert_eq!(scan.intervals.last().unwrap().hi, range.hi);
        for w in scan.intervals.windows(2) {
            prop_assert_eq!(w[0].hi, w[1].lo, "gap or overlap in tiling");
        }
        for iv in &scan.intervals {
            prop_assert!(
                iv.kind == IntervalKind::PassBand || iv.kind == IntervalKind::BandGap,
                "unexpected kind {:?}", iv.kind
            );
        }
    }

    // the dispersion value does not depend on the traversal direction
    #[test]
    fn dispersion_reversal_invariance(cell in small_cell(), hi in 5.0f64..20.0) {
        let range = LambdaRange::new(0.0, hi).unwrap();
        let reversed = cell.reversed();
        for j in 0..64 {
            let lambda = range.lo + range.width() * (j as f64 + 0.5) / 64.0;
            if min_pole_distance(&cell, lambda, range) < 1e-6 {
                continue;
            }
            let fwd = dispersion_rhs(&cell, lambda).unwrap();
            let bwd = dispersion_rhs(&reversed, lambda).unwrap();
            let scale = fwd.abs().max(1.0);
            prop_assert!((fwd - bwd).abs() <= 1e-9 * scale, "{fwd} vs {bwd} at {lambda}");
        }
    }

    // refined band edges really sit on |RHS| = 2 to bisection accuracy:
    // the local residual is bounded by tol times the local slope
    #[test]
    fn refined_edges_are_accurate(cell in mass_spring_cell(), hi in 5.0f64..20.0) {
        let range = LambdaRange::new(0.0, hi).unwrap();
        let tol = 1e-9;
        let scan = scan_spectrum(&cell, range, 512, tol).unwrap();
        for iv in &scan.intervals {
            for (edge, refined) in [(iv.lo, iv.lo_refined), (iv.hi, iv.hi_refined)] {
                if !refined || edge <= range.lo || edge >= range.hi {
                    continue;
                }
                let f = |x: f64| dispersion_rhs(&cell, x).map(|r| r.abs() - 2.0);
                let residual = f(edge).unwrap().abs();
                let h = 1e-6;
                let slope = ((f(edge + h).unwrap() - f(edge - h).unwrap()) / (2.0 * h)).abs();
                prop_assert!(
                    residual <= 10.0 * tol * slope.max(1.0),
                    "edge {edge}: residual {residual:.3e}, slope {slope:.3e}"
                );
            }
        }
    }

    // every point strictly inside a predicted common gap classifies as a
    // band gap of the combined cell, with zero tolerance on |RHS| > 2
    #[test]
    fn predicted_gaps_classify_as_gaps(
        elements in prop::collection::vec(any_element(), 1..=8),
        hi in 5.0f64..20.0,
    ) {
        let range = LambdaRange::new(0.0, hi).unwrap();
        let predicted = hierarchical_gaps(&elements, range).unwrap();
        let cell = UnitCell::new("prop cell", elements).unwrap();
        for iv in &predicted.intervals {
            if iv.hi - iv.lo < 1e-6 {
                continue;
            }
            for u in [0.25, 0.5, 0.75] {
                let lambda = iv.lo + (iv.hi - iv.lo) * u;
                if min_pole_distance(&cell, lambda, range) < 1e-6 {
                    continue;
                }
                let got = classify(&cell, lambda, 0.0).unwrap();
                prop_assert_eq!(
                    got,
                    Classification::BandGap,
                    "lambda {} inside predicted gap ({}, {})",
                    lambda, iv.lo, iv.hi
                );
            }
        }
    }
}

//! Pendulum chains: coupled resonators with a gap below resonance.
//!
//! A pendulum site carries the coefficient t(lambda) = 2 - (lambda -
//! lambda_res) m / kappa, which opens two gaps per element: (0,
//! lambda_res) below the resonance and (lambda_res + 4 kappa / m, inf)
//! above the upper band edge. For a family sharing one resonance the
//! low gaps coincide; modulating the masses and resonances moves the
//! upper edges around and the common gap structure follows from four
//! thresholds computed element by element.

use hiergap::model::{pendulum_thresholds, ElementModel, UnitCell};
use hiergap::spectrum::{hierarchical_gaps, verify_containment};
use hiergap::LambdaRange;

fn check(val: f64, want: f64, what: &str) {
    assert!((val - want).abs() <= 1e-12 * want.abs().max(1.0), "{what}: {val} != {want}");
}

fn main() -> hiergap::Result<()> {
    let range = LambdaRange::new(0.0, 4.8)?;

    // masses follow a 1.2 / 2 / 1 / 2.2 / 1.2 pattern; resonances
    // alternate 2 / 0.5 between odd and even sites
    let masses = [1.2, 2.0, 1.0, 2.2, 1.2];
    let resonances = [2.0, 0.5, 2.0, 0.5, 2.0];
    let kappa = 0.5;

    let mut elements = Vec::new();
    for i in 0..5 {
        elements.push(ElementModel::pendulum(format!("p{}", i + 1), masses[i], kappa, resonances[i])?);
    }

    println!("per-element gap sets on (0, 4.8):");
    for e in &elements {
        let gaps = e.gap_set(range)?;
        let parts: Vec<String> =
            gaps.intervals.iter().map(|iv| format!("({}, {})", iv.lo, iv.hi)).collect();
        println!("  {}: {}", e.label, parts.join(" u "));
    }

    let omega = pendulum_thresholds(&elements)?;
    println!("\nthresholds:");
    println!("  Omega1 (lowest resonance)        = {}", omega.omega1);
    println!("  Omega2 (lowest upper band edge)  = {}", omega.omega2);
    println!("  Omega3 (highest resonance)       = {}", omega.omega3);
    println!("  Omega4 (highest upper band edge) = {}", omega.omega4);
    check(omega.omega1, 0.5, "Omega1");
    check(omega.omega2, 0.5 + 2.0 / 2.2, "Omega2");
    check(omega.omega3, 2.0, "Omega3");
    check(omega.omega4, 4.0, "Omega4");

    // a common mid gap needs Omega2 < Omega3; here the intersection
    // starts at 1.5, above Omega2, because the heavy even sites only
    // clear their upper band edge at 0.5 + 2/2 = 1.5
    let predicted = hierarchical_gaps(&elements, range)?;
    println!("\ncommon gaps of the family:");
    for iv in &predicted.intervals {
        println!("  ({}, {})", iv.lo, iv.hi);
    }
    assert_eq!(predicted.intervals.len(), 3);
    check(predicted.intervals[0].hi, 0.5, "low gap top");
    check(predicted.intervals[1].lo, 1.5, "mid gap bottom");
    check(predicted.intervals[1].hi, 2.0, "mid gap top");
    check(predicted.intervals[2].lo, 4.0, "high gap bottom");

    let cell = UnitCell::new("modulated pendulums", elements)?;
    let report = verify_containment(&cell, range, 256)?;
    println!(
        "\ncontainment in the combined spectrum: {} ({} samples)",
        if report.containment_verified { "verified" } else { "FAILED" },
        report.samples_checked
    );
    assert!(report.containment_verified);

    // a massless site is degenerate: t(lambda) = 2 for every lambda, its
    // gap set is empty and the strict intersection collapses with it
    let mut with_dead_site = cell.elements.clone();
    with_dead_site.push(ElementModel::pendulum("p6", 0.0, kappa, 2.0)?);
    let collapsed = hierarchical_gaps(&with_dead_site, range)?;
    println!(
        "\nadding a massless pendulum: {} common gaps, degenerate = {:?}",
        collapsed.intervals.len(),
        collapsed.degenerate
    );
    assert!(collapsed.intervals.is_empty());
    assert_eq!(collapsed.degenerate, vec!["p6".to_string()]);

    Ok(())
}

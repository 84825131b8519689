//! A five-mass chain and its guaranteed high-frequency gap.
//!
//! Five masses m_i coupled by identical springs of stiffness kappa form
//! the unit cell. Each site's gap set is (4 kappa / m_i, infinity), so
//! the intersection over the cell is (4 kappa / min m_i, infinity): one
//! hierarchical gap controlled entirely by the lightest mass. The scan
//! of the full cell must place a band gap around every point of that
//! interval, and it does.

use hiergap::model::{ElementModel, UnitCell};
use hiergap::spectrum::{classify, hierarchical_gaps, scan_spectrum, verify_containment, Classification};
use hiergap::LambdaRange;

fn main() -> hiergap::Result<()> {
    let masses = [0.6, 1.0, 0.8, 0.5, 1.0];
    let kappa = 0.75;
    let elements: Vec<ElementModel> = masses
        .iter()
        .enumerate()
        .map(|(i, &m)| ElementModel::mass_spring(format!("m{}", i + 1), m, kappa))
        .collect::<hiergap::Result<_>>()?;
    let cell = UnitCell::new("five masses", elements.clone())?;
    let range = LambdaRange::new(0.0, 12.0)?;

    println!("unit cell: {} sites, kappa = {kappa}", cell.len());
    for e in &elements {
        let gaps = e.gap_set(range)?;
        let g = &gaps.intervals[0];
        println!("  {}: gap ({}, {}) within the scan window", e.label, g.lo, g.hi);
    }

    // lightest mass 0.5 puts the common gap edge at 4 * 0.75 / 0.5 = 6
    let predicted = hierarchical_gaps(&elements, range)?;
    println!("\npredicted hierarchical gaps:");
    for iv in &predicted.intervals {
        println!("  ({}, {})", iv.lo, iv.hi);
    }
    assert_eq!(predicted.intervals.len(), 1);
    assert!((predicted.intervals[0].lo - 6.0).abs() < 1e-12);

    let scan = scan_spectrum(&cell, range, 4096, 1e-9)?;
    println!("\nscan of the combined cell ({} intervals):", scan.intervals.len());
    for iv in &scan.intervals {
        println!("  {:>9} ({:.9}, {:.9})", iv.kind.as_str(), iv.lo, iv.hi);
    }

    let report = verify_containment(&cell, range, 256)?;
    println!(
        "\ncontainment check: {} ({} samples classified)",
        if report.containment_verified { "verified" } else { "FAILED" },
        report.samples_checked
    );
    assert!(report.containment_verified);

    // spot checks: a low-frequency acoustic point and one in the gap
    for (lambda, expect) in [(0.2, Classification::PassBand), (6.5, Classification::BandGap)] {
        let got = classify(&cell, lambda, 1e-9)?;
        println!("classify(lambda = {lambda}) = {got}");
        assert_eq!(got, expect);
    }

    Ok(())
}

//! Chains of mass-in-mass resonators and gaps pinned to poles.
//!
//! A resonant site hides an inner mass m tuned to lambda_res inside an
//! outer mass M. Near the resonance the effective mass M_eff(lambda) =
//! M + m lambda_res / (lambda_res - lambda) diverges, so each element
//! owns a gap pair hugging its pole, (lambda_-, lambda_res) and
//! (lambda_res, lambda_z), plus a high gap (lambda_+, inf). With five
//! different resonances the common gaps are whatever survives the
//! five-fold intersection, and every pole of every element punches a
//! point out of the spectrum's domain.

use hiergap::model::{ElementModel, UnitCell};
use hiergap::spectrum::{dispersion_rhs, hierarchical_gaps, scan_spectrum, verify_containment};
use hiergap::{Error, LambdaRange};

fn main() -> hiergap::Result<()> {
    let resonances = [6.0, 4.0, 8.0, 6.0, 10.0];
    let outer = 2.0;
    let inner = 0.5;
    let kappa = 0.5;
    let range = LambdaRange::new(0.0, 16.0)?;

    let elements: Vec<ElementModel> = resonances
        .iter()
        .enumerate()
        .map(|(i, &r)| ElementModel::resonant(format!("r{}", i + 1), outer, inner, kappa, r))
        .collect::<hiergap::Result<_>>()?;
    let cell = UnitCell::new("resonant crystal", elements.clone())?;

    println!("five resonant sites, M = {outer}, m = {inner}, kappa = {kappa}");
    println!("poles in (0, 16): {:?}", cell.poles_in(range));

    println!("\nper-element gap sets:");
    for e in &elements {
        let gaps = e.gap_set(range)?;
        let parts: Vec<String> =
            gaps.intervals.iter().map(|iv| format!("({:.6}, {:.6})", iv.lo, iv.hi)).collect();
        println!("  {} (pole {}): {}", e.label, e.pole().unwrap(), parts.join(" u "));
    }

    let predicted = hierarchical_gaps(&elements, range)?;
    println!("\ncommon gaps ({} pieces):", predicted.intervals.len());
    for iv in &predicted.intervals {
        println!("  ({:.9}, {:.9})", iv.lo, iv.hi);
    }
    assert!(!predicted.intervals.is_empty());

    // evaluation exactly at a pole is refused rather than returning junk
    match dispersion_rhs(&cell, 4.0) {
        Err(Error::PoleProximity { pole, .. }) => {
            println!("\ndispersion at lambda = 4 refused: resonance pole at {pole}")
        }
        other => panic!("expected a pole error, got {other:?}"),
    }
    // a hair away from the pole the trace is huge and the frequency is
    // deep in a gap
    let near = dispersion_rhs(&cell, 4.0 + 1e-6)?;
    println!("|rhs| just above the pole: {:.3e}", near.abs());
    assert!(near.abs() > 1e3);

    // the scan splits the window at the poles on its own
    let scan = scan_spectrum(&cell, range, 4096, 1e-9)?;
    let gaps: Vec<_> = scan
        .intervals
        .iter()
        .filter(|iv| iv.kind == hiergap::IntervalKind::BandGap)
        .collect();
    println!("\nscan found {} band gaps in the combined cell:", gaps.len());
    for iv in &gaps {
        println!("  ({:.9}, {:.9})", iv.lo, iv.hi);
    }

    let report = verify_containment(&cell, range, 256)?;
    println!(
        "\ncontainment: {} ({} samples)",
        if report.containment_verified { "verified" } else { "FAILED" },
        report.samples_checked
    );
    assert!(report.containment_verified);

    Ok(())
}

//! Fibonacci tilings share the gaps of their two-letter alphabet.
//!
//! Build words by W1 = A, W2 = B, Wn = W(n-2) ++ W(n-1) and use each
//! word as a unit cell. The cells grow like the golden ratio and never
//! repeat periodically, yet every common gap of the pair {A, B} is a
//! gap of every word, because the closure argument only needs each
//! letter's coefficient to sit on the gap side. The prediction is depth
//! independent; only the band structure between the common gaps gets
//! finer as the word grows.

use hiergap::model::{fibonacci_cell, ElementModel};
use hiergap::spectrum::{hierarchical_gaps, verify_containment_against};
use hiergap::LambdaRange;

fn main() -> hiergap::Result<()> {
    let a = ElementModel::pendulum("A", 1.2, 0.5, 2.0)?;
    let b = ElementModel::pendulum("B", 2.0, 0.5, 0.5)?;
    let range = LambdaRange::new(0.0, 4.8)?;

    let predicted = hierarchical_gaps(&[a.clone(), b.clone()], range)?;
    println!("common gaps of the pair, fixed for every depth:");
    for iv in &predicted.intervals {
        println!("  ({}, {})", iv.lo, iv.hi);
    }

    println!("\nword growth and letter layout:");
    for depth in 1..=8 {
        let cell = fibonacci_cell(&a, &b, depth)?;
        let word: String = cell.elements.iter().map(|e| e.label.as_str()).collect();
        let shown = if word.len() > 34 { format!("{}...", &word[..31]) } else { word };
        println!("  F{depth}: {:>2} sites  {shown}", cell.len());
    }

    // F6 = [B, A, B, A, B, B, A, B], the concatenation F4 ++ F5
    let f6 = fibonacci_cell(&a, &b, 6)?;
    let labels: Vec<&str> = f6.elements.iter().map(|e| e.label.as_str()).collect();
    assert_eq!(labels, ["B", "A", "B", "A", "B", "B", "A", "B"]);

    println!("\nclassification check of every depth against the pair prediction:");
    for depth in 1..=10 {
        let cell = fibonacci_cell(&a, &b, depth)?;
        let report =
            verify_containment_against(&cell, range, predicted.intervals.clone(), 64)?;
        println!(
            "  F{depth:<2} ({:>2} sites): {} over {} samples",
            cell.len(),
            if report.containment_verified { "contained" } else { "VIOLATED" },
            report.samples_checked
        );
        assert!(report.containment_verified);
    }

    println!("\nok: one prediction covers the whole substitution family");
    Ok(())
}

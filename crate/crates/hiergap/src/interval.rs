//! Intervals on the squared-frequency axis λ = ω².

use std::fmt;

use crate::error::{Error, Result};

/// The λ window a computation operates on. Always `0 <= lo < hi`, finite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaRange {
    pub lo: f64,
    pub hi: f64,
}

impl LambdaRange {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::invalid(format!(
                "range endpoints must be finite, got ({lo}, {hi})"
            )));
        }
        if lo < 0.0 {
            return Err(Error::invalid(format!(
                "range must start at a non-negative lambda, got {lo}"
            )));
        }
        if lo >= hi {
            return Err(Error::invalid(format!(
                "range must satisfy lo < hi, got ({lo}, {hi})"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Open-interval membership.
    pub fn contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }
}

impl fmt::Display for LambdaRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// What a labeled interval means spectrally.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalKind {
    /// Real Bloch wavenumber exists: |dispersion| <= 2.
    PassBand,
    /// Evanescent only: |dispersion| > 2 for the full cell.
    BandGap,
    /// |t(λ)| > 2 for a single constituent element.
    ElementGap,
    /// Interval inside the gap set of every constituent element.
    HierarchicalGap,
}

impl IntervalKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            IntervalKind::PassBand => "pass_band",
            IntervalKind::BandGap => "band_gap",
            IntervalKind::ElementGap => "element_gap",
            IntervalKind::HierarchicalGap => "hierarchical_gap",
        }
    }
}

impl fmt::Display for IntervalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A labeled open interval of λ. The `*_refined` flags record whether an
/// endpoint is a genuine spectral boundary (an analytic root, a resonance
/// pole, or a bisection-refined edge) as opposed to a clip at the scan
/// range boundary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralInterval {
    pub lo: f64,
    pub hi: f64,
    pub kind: IntervalKind,
    pub lo_refined: bool,
    pub hi_refined: bool,
}

impl SpectralInterval {
    pub fn new(lo: f64, hi: f64, kind: IntervalKind, lo_refined: bool, hi_refined: bool) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::invalid(format!(
                "interval endpoints must be finite, got ({lo}, {hi})"
            )));
        }
        if lo >= hi {
            return Err(Error::invalid(format!(
                "interval must satisfy lo < hi, got ({lo}, {hi})"
            )));
        }
        Ok(Self { lo, hi, kind, lo_refined, hi_refined })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Open-interval membership.
    pub fn contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }
}

impl fmt::Display for SpectralInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}, {})", self.kind, self.lo, self.hi)
    }
}

/// Intersection of two sorted lists of disjoint open intervals, as
/// (lo, hi) pairs. Two-pointer sweep; output is again sorted and disjoint.
pub(crate) fn intersect_pairs(a: &[(f64, f64)], b: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let lo = a[i].0.max(b[j].0);
        let hi = a[i].1.min(b[j].1);
        if lo < hi {
            out.push((lo, hi));
        }
        if a[i].1 <= b[j].1 {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

/// Complement of a sorted list of disjoint (lo, hi) pairs within `range`.
pub(crate) fn complement_pairs(range: LambdaRange, pairs: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut cursor = range.lo;
    for &(lo, hi) in pairs {
        if lo > cursor {
            out.push((cursor, lo));
        }
        cursor = cursor.max(hi);
    }
    if cursor < range.hi {
        out.push((cursor, range.hi));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_validation() {
        assert!(LambdaRange::new(0.0, 10.0).is_ok());
        assert!(LambdaRange::new(-1.0, 10.0).is_err());
        assert!(LambdaRange::new(4.0, 4.0).is_err());
        assert!(LambdaRange::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn interval_validation_and_membership() {
        let iv = SpectralInterval::new(1.0, 2.0, IntervalKind::BandGap, true, false).unwrap();
        assert!(iv.contains(1.5));
        assert!(!iv.contains(1.0));
        assert!(!iv.contains(2.0));
        assert!(SpectralInterval::new(2.0, 1.0, IntervalKind::BandGap, true, true).is_err());
    }

    #[test]
    fn kind_labels() {
        assert_eq!(IntervalKind::PassBand.as_str(), "pass_band");
        assert_eq!(IntervalKind::HierarchicalGap.to_string(), "hierarchical_gap");
    }

    #[test]
    fn pair_intersection() {
        let a = [(0.0, 2.0), (3.0, 10.0)];
        let b = [(1.0, 4.0), (5.0, 6.0)];
        assert_eq!(intersect_pairs(&a, &b), vec![(1.0, 2.0), (3.0, 4.0), (5.0, 6.0)]);
        assert_eq!(intersect_pairs(&a, &[]), vec![]);
        // touching endpoints do not intersect: intervals are open
        let c = [(0.0, 1.0)];
        let d = [(1.0, 2.0)];
        assert_eq!(intersect_pairs(&c, &d), vec![]);
    }

    #[test]
    fn pair_complement() {
        let range = LambdaRange::new(0.0, 10.0).unwrap();
        assert_eq!(
            complement_pairs(range, &[(0.0, 2.0), (4.0, 6.0)]),
            vec![(2.0, 4.0), (6.0, 10.0)]
        );
        assert_eq!(complement_pairs(range, &[]), vec![(0.0, 10.0)]);
        assert_eq!(complement_pairs(range, &[(0.0, 10.0)]), vec![]);
        assert_eq!(complement_pairs(range, &[(3.0, 10.0)]), vec![(0.0, 3.0)]);
    }
}

//! Physical element catalog.
//!
//! Every element reduces to a coefficient map λ ↦ t(λ), λ = ω², feeding the
//! transfer matrix T(t(λ)) of one lattice site:
//!
//! * mass-spring: `t(λ) = λ·m/κ - 2`. One gap, (4κ/m, ∞).
//! * pendulum:    `t(λ) = 2 - (λ - λ_res)·m/κ` for a pendulum of squared
//!   resonance frequency λ_res = g/l attached to the mass. Gaps
//!   (0, λ_res) and (λ_res + 4κ/m, ∞).
//! * resonant:    `t(λ) = 2 - M_eff(λ)·λ/κ` with the frequency-dependent
//!   effective mass `M_eff(λ) = M + m·λ_res/(λ_res - λ)` of a locally
//!   resonant inclusion. t has a pole at λ_res; the three gaps
//!   (λ₋, λ_res), (λ_res, λ_z), (λ₊, ∞) come from the closed-form roots of
//!   t = ±2 after clearing the pole denominator.
//!
//! Gap sets are computed analytically, never by scanning, so hierarchical
//! predictions inherit exact endpoints.

use crate::error::{Error, Result};
use crate::interval::{IntervalKind, LambdaRange, SpectralInterval};

/// Half-width of the guard zone around a resonant pole, in λ units.
/// Evaluation inside the guard is refused; gap classification next to the
/// pole comes from the analytic solver instead.
pub const POLE_GUARD: f64 = 1e-9;

/// Element species and its physical parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ElementKind {
    MassSpring { mass: f64, stiffness: f64 },
    Pendulum { mass: f64, stiffness: f64, resonance: f64 },
    Resonant { outer_mass: f64, inner_mass: f64, stiffness: f64, resonance: f64 },
}

impl ElementKind {
    pub fn name(&self) -> &'static str {
        match self {
            ElementKind::MassSpring { .. } => "mass_spring",
            ElementKind::Pendulum { .. } => "pendulum",
            ElementKind::Resonant { .. } => "resonant",
        }
    }
}

/// A labeled physical element.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementModel {
    pub label: String,
    pub kind: ElementKind,
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::invalid(format!("{name} must be positive and finite, got {x}")));
    }
    Ok(())
}

fn check_non_negative(name: &str, x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::invalid(format!("{name} must be non-negative and finite, got {x}")));
    }
    Ok(())
}

impl ElementModel {
    pub fn mass_spring(label: impl Into<String>, mass: f64, stiffness: f64) -> Result<Self> {
        check_positive("mass", mass)?;
        check_positive("stiffness", stiffness)?;
        Ok(Self { label: label.into(), kind: ElementKind::MassSpring { mass, stiffness } })
    }

    /// mass = 0 is accepted as a documented degeneracy: the coefficient
    /// collapses to t ≡ 2, a permanent band edge with no strict gaps.
    pub fn pendulum(
        label: impl Into<String>,
        mass: f64,
        stiffness: f64,
        resonance: f64,
    ) -> Result<Self> {
        check_non_negative("mass", mass)?;
        check_positive("stiffness", stiffness)?;
        check_non_negative("resonance", resonance)?;
        Ok(Self { label: label.into(), kind: ElementKind::Pendulum { mass, stiffness, resonance } })
    }

    pub fn resonant(
        label: impl Into<String>,
        outer_mass: f64,
        inner_mass: f64,
        stiffness: f64,
        resonance: f64,
    ) -> Result<Self> {
        check_positive("outer_mass", outer_mass)?;
        check_positive("inner_mass", inner_mass)?;
        check_positive("stiffness", stiffness)?;
        check_positive("resonance", resonance)?;
        Ok(Self {
            label: label.into(),
            kind: ElementKind::Resonant { outer_mass, inner_mass, stiffness, resonance },
        })
    }

    /// The pole of the coefficient map, present only for resonant elements.
    pub fn pole(&self) -> Option<f64> {
        match self.kind {
            ElementKind::Resonant { resonance, .. } => Some(resonance),
            _ => None,
        }
    }

    /// True for the pendulum degeneracy m = 0 (t ≡ 2, no strict gaps).
    pub fn is_degenerate(&self) -> bool {
        matches!(self.kind, ElementKind::Pendulum { mass, .. } if mass == 0.0)
    }

    /// The on-site coefficient t(λ).
    pub fn coefficient(&self, lambda: f64) -> Result<f64> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::invalid(format!(
                "lambda must be finite and non-negative, got {lambda}"
            )));
        }
        match self.kind {
            ElementKind::MassSpring { mass, stiffness } => Ok(lambda * mass / stiffness - 2.0),
            ElementKind::Pendulum { mass, stiffness, resonance } => {
                Ok(2.0 - (lambda - resonance) * mass / stiffness)
            }
            ElementKind::Resonant { outer_mass, inner_mass, stiffness, resonance } => {
                if (lambda - resonance).abs() <= POLE_GUARD {
                    return Err(Error::PoleProximity { pole: resonance, lambda });
                }
                let m_eff = outer_mass + inner_mass * resonance / (resonance - lambda);
                Ok(2.0 - m_eff * lambda / stiffness)
            }
        }
    }

    /// Open intervals of λ within `range` where |t(λ)| > 2, with exact
    /// endpoints. A degenerate pendulum (m = 0) yields an empty set with the
    /// `degenerate` flag raised instead of an error.
    pub fn gap_set(&self, range: LambdaRange) -> Result<ElementGaps> {
        let mut gaps = ElementGaps { intervals: Vec::new(), degenerate: false };
        match self.kind {
            ElementKind::MassSpring { mass, stiffness } => {
                // t rises affinely through -2 at λ = 0 and +2 at 4κ/m
                push_clipped(&mut gaps.intervals, range, 4.0 * stiffness / mass, f64::INFINITY);
            }
            ElementKind::Pendulum { mass, stiffness, resonance } => {
                if mass == 0.0 {
                    gaps.degenerate = true;
                    return Ok(gaps);
                }
                // t falls affinely through +2 at λ_res and -2 at λ_res + 4κ/m
                push_clipped(&mut gaps.intervals, range, 0.0, resonance);
                push_clipped(&mut gaps.intervals, range, resonance + 4.0 * stiffness / mass, f64::INFINITY);
            }
            ElementKind::Resonant { outer_mass, inner_mass, stiffness, resonance } => {
                let roots = resonant_gap_roots(outer_mass, inner_mass, stiffness, resonance);
                push_clipped(&mut gaps.intervals, range, roots.lam_minus, resonance);
                push_clipped(&mut gaps.intervals, range, resonance, roots.lam_z);
                push_clipped(&mut gaps.intervals, range, roots.lam_plus, f64::INFINITY);
                self.debug_check_signs(&roots);
            }
        }
        Ok(gaps)
    }

    /// Sign sanity for the closed-form resonant roots: |t| must exceed 2
    /// inside each gap piece and stay within 2 between them.
    fn debug_check_signs(&self, roots: &ResonantRoots) {
        if cfg!(debug_assertions) {
            let pole = roots.pole;
            let probes = [
                (0.5 * roots.lam_minus, false),
                (0.5 * (roots.lam_minus + pole), true),
                (0.5 * (pole + roots.lam_z), true),
                (0.5 * (roots.lam_z + roots.lam_plus), false),
                (roots.lam_plus + 1.0, true),
            ];
            for (x, in_gap) in probes {
                if x <= 0.0 || (x - pole).abs() <= 2.0 * POLE_GUARD {
                    continue;
                }
                let t = self.coefficient(x).expect("probe is outside the guard");
                debug_assert_eq!(t.abs() > 2.0, in_gap, "sign check at lambda = {x}");
            }
        }
    }
}

/// Gap set of one element; `degenerate` marks the pendulum m = 0 case whose
/// coefficient is identically 2.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementGaps {
    pub intervals: Vec<SpectralInterval>,
    pub degenerate: bool,
}

/// Clips the open interval (lo, hi) to `range` and appends it when
/// non-empty. Endpoints strictly inside the range are analytic gap
/// boundaries and are flagged refined; endpoints produced by the clip are
/// not.
fn push_clipped(out: &mut Vec<SpectralInterval>, range: LambdaRange, lo: f64, hi: f64) {
    let clo = lo.max(range.lo);
    let chi = hi.min(range.hi);
    if clo < chi {
        out.push(SpectralInterval {
            lo: clo,
            hi: chi,
            kind: IntervalKind::ElementGap,
            lo_refined: clo > range.lo,
            hi_refined: chi < range.hi,
        });
    }
}

struct ResonantRoots {
    pole: f64,
    /// Root of t = -2 below the pole.
    lam_minus: f64,
    /// Root of t = +2 above the pole: λ_res·(M + m)/M.
    lam_z: f64,
    /// Root of t = -2 above λ_z.
    lam_plus: f64,
}

/// Roots of t(λ) = ±2 for the resonant coefficient, after clearing the
/// (λ_res - λ) denominator.
///
/// t = 2 gives λ·(M·λ - (M + m)·λ_res) = 0, hence λ_z above.
/// t = -2 gives M·λ² - ((M + m)·λ_res + 4κ)·λ + 4κ·λ_res = 0. M_eff·λ is
/// strictly increasing on both sides of the pole, so this quadratic always
/// has two real roots interlaced as 0 < λ₋ < λ_res < λ_z < λ₊.
fn resonant_gap_roots(outer_mass: f64, inner_mass: f64, stiffness: f64, resonance: f64) -> ResonantRoots {
    let b = (outer_mass + inner_mass) * resonance + 4.0 * stiffness;
    let disc = b * b - 16.0 * outer_mass * stiffness * resonance;
    debug_assert!(disc > 0.0, "resonant quadratic must have two real roots");
    let sq = disc.max(0.0).sqrt();
    ResonantRoots {
        pole: resonance,
        lam_minus: (b - sq) / (2.0 * outer_mass),
        lam_z: resonance * (outer_mass + inner_mass) / outer_mass,
        lam_plus: (b + sq) / (2.0 * outer_mass),
    }
}

/// The repeating block of a periodic material.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitCell {
    pub name: String,
    pub elements: Vec<ElementModel>,
}

impl UnitCell {
    pub fn new(name: impl Into<String>, elements: Vec<ElementModel>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::invalid("a unit cell must contain at least one element"));
        }
        Ok(Self { name: name.into(), elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Cell with the site order reversed; its spectrum is identical because
    /// product traces are reversal-invariant.
    pub fn reversed(&self) -> Self {
        let mut elements = self.elements.clone();
        elements.reverse();
        Self { name: format!("{} (reversed)", self.name), elements }
    }

    /// Physically distinct elements in first-appearance order (labels are
    /// ignored in the comparison).
    pub fn distinct_elements(&self) -> Vec<ElementModel> {
        let mut out: Vec<ElementModel> = Vec::new();
        for e in &self.elements {
            if !out.iter().any(|seen| seen.kind == e.kind) {
                out.push(e.clone());
            }
        }
        out
    }

    /// Resonance poles strictly inside `range`, sorted and deduplicated.
    pub fn poles_in(&self, range: LambdaRange) -> Vec<f64> {
        let mut poles: Vec<f64> = self
            .elements
            .iter()
            .filter_map(|e| e.pole())
            .filter(|&p| range.contains(p))
            .collect();
        poles.sort_by(f64::total_cmp);
        poles.dedup();
        poles
    }
}

/// Fibonacci tiling cell over two materials.
///
/// Words follow W(1) = `[a]`, W(2) = `[b]`, W(n) = W(n-2) ++ W(n-1), so that the
/// ordered site product (first site acts first) satisfies
/// F(n) = F(n-1)·F(n-2) as a matrix identity, and |W(n)| is the n-th
/// Fibonacci number. Word length grows geometrically: depth 20 has 6765
/// sites.
pub fn fibonacci_cell(a: &ElementModel, b: &ElementModel, depth: u32) -> Result<UnitCell> {
    if depth < 1 {
        return Err(Error::invalid("fibonacci depth must be >= 1"));
    }
    // false = a, true = b
    let mut prev: Vec<bool> = vec![false];
    let mut cur: Vec<bool> = vec![true];
    let word = match depth {
        1 => prev,
        2 => cur,
        _ => {
            for _ in 3..=depth {
                let mut next = prev.clone();
                next.extend_from_slice(&cur);
                prev = cur;
                cur = next;
            }
            cur
        }
    };
    let elements = word
        .iter()
        .map(|&is_b| if is_b { b.clone() } else { a.clone() })
        .collect();
    UnitCell::new(format!("fibonacci depth {depth} over {}/{}", a.label, b.label), elements)
}

/// Analytic thresholds of an all-pendulum family:
/// Ω₁ = min λ_res, Ω₂ = min(λ_res + 4κ/m), Ω₃ = max λ_res,
/// Ω₄ = max(λ_res + 4κ/m).
///
/// Every member's low gap reaches down to Ω₁ and the family's common high
/// gap starts at Ω₄. A mid-frequency common gap can open between Ω₂ and Ω₃;
/// its exact extent is the interval intersection of the per-element gap
/// sets, which may start above Ω₂ (see `spectrum::hierarchical_gaps`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PendulumThresholds {
    pub omega1: f64,
    pub omega2: f64,
    pub omega3: f64,
    pub omega4: f64,
}

/// Computes [`PendulumThresholds`] for a family of pendulum elements.
/// A degenerate member (m = 0) contributes an infinite upper threshold.
pub fn pendulum_thresholds(elements: &[ElementModel]) -> Result<PendulumThresholds> {
    if elements.is_empty() {
        return Err(Error::invalid("threshold computation needs at least one element"));
    }
    let mut omega1 = f64::INFINITY;
    let mut omega2 = f64::INFINITY;
    let mut omega3 = f64::NEG_INFINITY;
    let mut omega4 = f64::NEG_INFINITY;
    for e in elements {
        let ElementKind::Pendulum { mass, stiffness, resonance } = e.kind else {
            return Err(Error::invalid(format!(
                "thresholds are defined for pendulum elements only; '{}' is {}",
                e.label,
                e.kind.name()
            )));
        };
        let upper = resonance + 4.0 * stiffness / mass;
        omega1 = omega1.min(resonance);
        omega2 = omega2.min(upper);
        omega3 = omega3.max(resonance);
        omega4 = omega4.max(upper);
    }
    Ok(PendulumThresholds { omega1, omega2, omega3, omega4 })
}

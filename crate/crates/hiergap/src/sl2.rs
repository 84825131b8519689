//! Algebra of 2x2 unimodular transfer matrices.
//!
//! The atom of every spectral computation here is the companion matrix
//!
//! ```text
//!          ( 0  -1 )
//! T(t)  =  ( 1   t )
//! ```
//!
//! which advances the state (g(i-1), g(i)) of a second-order difference
//! equation across one lattice site with on-site coefficient t. Its
//! determinant is exactly 1, so products of such matrices stay unimodular,
//! and a periodic chain has a spectral gap at a given frequency precisely
//! when the trace of its per-cell product exceeds 2 in absolute value.
//!
//! Two structural facts carry the rest of the crate:
//!
//! * trace closure: if every factor satisfies |t_i| > 2 then the ordered
//!   product keeps |trace| > 2 ([`theorem_margin`], [`lemma_entry_check`]);
//! * no such closure holds for general unimodular matrices with |trace| > 2,
//!   witnessed by [`non_closure_counterexample`].
//!
//! Products with many large coefficients grow their entries geometrically;
//! determinants are therefore checked with a drift measure scaled by the
//! magnitude of the products being cancelled, not by 1.

use crate::error::{Error, Result};

/// Allowed relative determinant drift for products of at most 64 factors.
pub const DET_TOL_SHORT: f64 = 1e-12;
/// Allowed relative determinant drift for longer products.
pub const DET_TOL_LONG: f64 = 1e-9;

/// Real 2x2 matrix with determinant 1 up to roundoff.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransferMatrix {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl TransferMatrix {
    pub const IDENTITY: Self = Self { a11: 1.0, a12: 0.0, a21: 0.0, a22: 1.0 };

    /// Builds a matrix from entries, rejecting non-finite values and
    /// determinants that drift from 1 by more than [`DET_TOL_SHORT`].
    pub fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Result<Self> {
        let m = Self { a11, a12, a21, a22 };
        if ![a11, a12, a21, a22].iter().all(|x| x.is_finite()) {
            return Err(Error::invalid("matrix entries must be finite"));
        }
        let drift = m.det_drift();
        if drift > DET_TOL_SHORT {
            return Err(Error::invalid(format!(
                "determinant {} is not 1 (relative drift {drift:.3e})",
                m.det()
            )));
        }
        Ok(m)
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    /// |det - 1| scaled by the magnitude of the cancelled products, so the
    /// measure stays meaningful when entries are huge.
    pub fn det_drift(&self) -> f64 {
        let scale = 1f64
            .max((self.a11 * self.a22).abs())
            .max((self.a12 * self.a21).abs());
        (self.det() - 1.0).abs() / scale
    }

    pub fn trace(&self) -> f64 {
        self.a11 + self.a22
    }

    pub fn transpose(&self) -> Self {
        Self { a11: self.a11, a12: self.a21, a21: self.a12, a22: self.a22 }
    }

    /// Trace verdict of this matrix; see [`TraceVerdict`].
    pub fn verdict(&self) -> TraceVerdict {
        TraceVerdict::of(self)
    }
}

impl std::ops::Mul for TransferMatrix {
    type Output = Self;

    /// Standard matrix product: `a * b` applies `b` first.
    fn mul(self, rhs: Self) -> Self {
        Self {
            a11: self.a11 * rhs.a11 + self.a12 * rhs.a21,
            a12: self.a11 * rhs.a12 + self.a12 * rhs.a22,
            a21: self.a21 * rhs.a11 + self.a22 * rhs.a21,
            a22: self.a21 * rhs.a12 + self.a22 * rhs.a22,
        }
    }
}

/// Membership test for the set of unimodular matrices with |trace| > 2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceVerdict {
    pub trace: f64,
    /// |trace| - 2.
    pub margin: f64,
    /// True iff margin > 0.
    pub in_m: bool,
}

impl TraceVerdict {
    pub fn of(m: &TransferMatrix) -> Self {
        let trace = m.trace();
        let margin = trace.abs() - 2.0;
        Self { trace, margin, in_m: margin > 0.0 }
    }
}

/// Companion transfer matrix with rows (0, -1) and (1, t).
pub fn t_matrix(t: f64) -> Result<TransferMatrix> {
    if !t.is_finite() {
        return Err(Error::invalid(format!("coefficient t = {t} must be finite")));
    }
    Ok(TransferMatrix { a11: 0.0, a12: -1.0, a21: 1.0, a22: t })
}

/// Pendulum-form matrix with rows (0, 1) and (-1, t): the conjugate of
/// [`t_matrix`] by diag(1, -1), so products of either form share traces.
pub fn pendulum_form(t: f64) -> Result<TransferMatrix> {
    if !t.is_finite() {
        return Err(Error::invalid(format!("coefficient t = {t} must be finite")));
    }
    Ok(TransferMatrix { a11: 0.0, a12: 1.0, a21: -1.0, a22: t })
}

/// Ordered product of a site sequence. The first matrix acts first on the
/// state vector, so `product(&[m1, m2, m3])` is `m3 * m2 * m1`; the empty
/// product is the identity.
pub fn product(seq: &[TransferMatrix]) -> TransferMatrix {
    seq.iter().fold(TransferMatrix::IDENTITY, |acc, m| *m * acc)
}

/// [`product`] of [`t_matrix`] factors for a coefficient sequence.
pub fn coefficient_product(ts: &[f64]) -> Result<TransferMatrix> {
    let mut acc = TransferMatrix::IDENTITY;
    for &t in ts {
        acc = t_matrix(t)? * acc;
    }
    Ok(acc)
}

/// Closed form for T(2)^n, n >= 1: T(2) + (n-1)·[-1, -1; 1, 1].
/// The trace is exactly 2 for every n, so the boundary coefficient t = 2
/// pins a permanent band edge no matter how many sites repeat it.
pub fn power_t2(n: u32) -> Result<TransferMatrix> {
    if n == 0 {
        return Err(Error::invalid("n must be >= 1; the empty product is the identity"));
    }
    let s = f64::from(n - 1);
    Ok(TransferMatrix { a11: -s, a12: -1.0 - s, a21: 1.0 + s, a22: 2.0 + s })
}

/// Closed form for T(-2)^n, n >= 1: (-1)^n·{(n-1)·[-1, 1; -1, 1] - T(-2)}.
/// The trace is 2 for even n and -2 for odd n.
pub fn power_tm2(n: u32) -> Result<TransferMatrix> {
    if n == 0 {
        return Err(Error::invalid("n must be >= 1; the empty product is the identity"));
    }
    let s = f64::from(n - 1);
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(TransferMatrix {
        a11: sign * -s,
        a12: sign * (s + 1.0),
        a21: sign * (-s - 1.0),
        a22: sign * (s + 2.0),
    })
}

/// Entry inequalities behind the trace-closure theorem: for the ordered
/// product P of T(t_i) factors, checks |p22| > |p12| + 1 and
/// |p22| > |p21| + 1.
///
/// Requires every |t_i| > 2 strictly. The boundary |t| = 2 is rejected: the
/// strict conclusion degenerates there (at n = 1 the second inequality would
/// read 2 > 2), and boundary chains are covered exactly by [`power_t2`] and
/// [`power_tm2`] instead.
pub fn lemma_entry_check(ts: &[f64]) -> Result<bool> {
    if ts.is_empty() {
        return Err(Error::invalid("coefficient sequence must be non-empty"));
    }
    for &t in ts {
        if !t.is_finite() {
            return Err(Error::invalid(format!("coefficient t = {t} must be finite")));
        }
        if t.abs() <= 2.0 {
            return Err(Error::precondition(format!(
                "|t| = {} is not strictly greater than 2",
                t.abs()
            )));
        }
    }
    let p = coefficient_product(ts)?;
    Ok(p.a22.abs() > p.a12.abs() + 1.0 && p.a22.abs() > p.a21.abs() + 1.0)
}

/// Trace verdict of the ordered product of T(t_i) factors.
///
/// Whenever every |t_i| > 2 the verdict must report `in_m = true`; a false
/// result under that hypothesis signals an implementation bug, not a valid
/// outcome. Coefficients inside [-2, 2] are accepted and may land anywhere.
pub fn theorem_margin(ts: &[f64]) -> Result<TraceVerdict> {
    if ts.is_empty() {
        return Err(Error::invalid("coefficient sequence must be non-empty"));
    }
    Ok(coefficient_product(ts)?.verdict())
}

/// Fixed witness that unimodular matrices with |trace| > 2 are not closed
/// under multiplication: A = diag(3, 1/3) and B = T(3) both qualify, yet
/// tr(A·B) = 1. Returns (A, B, verdict of A·B).
pub fn non_closure_counterexample() -> (TransferMatrix, TransferMatrix, TraceVerdict) {
    let a = TransferMatrix { a11: 3.0, a12: 0.0, a21: 0.0, a22: 1.0 / 3.0 };
    let b = t_matrix(3.0).expect("3.0 is finite");
    let ab = a * b;
    (a, b, ab.verdict())
}

//! Floquet-Bloch spectra and hierarchical band gaps of one-dimensional
//! periodic difference equations.
//!
//! A second-order difference equation with an n-periodic on-site coefficient
//! reduces to a product of 2x2 companion matrices `T(t) = [0, -1; 1, t]`, one
//! per lattice site. A squared frequency λ = ω² lies in a spectral gap of the
//! periodic material exactly when the trace of that product exceeds 2 in
//! absolute value.
//!
//! The structural fact this crate is built around: a product of `T(t_i)`
//! factors with every |t_i| > 2 always has |trace| > 2. So if an interval of
//! λ sits inside a band gap of *every* constituent element of a composite
//! unit cell, it sits inside a band gap of the composite material. Such
//! intervals are *hierarchical band gaps*: they can be predicted by
//! intersecting the analytically known gap sets of the constituents, with no
//! spectral computation on the composite cell at all.
//!
//! The crate provides:
//!
//! * [`sl2`]: transfer-matrix algebra, closed-form powers of `T(±2)`, the
//!   trace-closure predicates, and the counterexample showing that closure
//!   fails for general unimodular matrices;
//! * [`model`]: the element catalog (mass-spring, coupled pendulum, locally
//!   resonant) with analytic per-element gap sets, plus Fibonacci tiling
//!   cells;
//! * [`spectrum`]: dispersion scans with bisection-refined band edges,
//!   hierarchical gap prediction by interval intersection, and containment
//!   verification by sampling;
//! * [`config`], [`report`], [`cli`]: the JSON system description, CSV/SVG
//!   emission, and the `hiergap` command-line front end;
//! * [`verify`]: the randomized self-check suite behind `hiergap verify`.
//!
//! Runnable walkthroughs live in `examples/`; each major capability has one.
//!
//! ```
//! use hiergap::model::ElementModel;
//! use hiergap::interval::LambdaRange;
//! use hiergap::spectrum::hierarchical_gaps;
//!
//! // Two pendulum materials with staggered resonances share a mid gap.
//! let a = ElementModel::pendulum("A", 1.2, 0.5, 2.0).unwrap();
//! let b = ElementModel::pendulum("B", 2.0, 0.5, 0.5).unwrap();
//! let range = LambdaRange::new(0.0, 4.8).unwrap();
//! let gaps = hierarchical_gaps(&[a, b], range).unwrap();
//! assert_eq!(gaps.intervals.len(), 3);
//! ```

pub mod cli;
pub mod config;
pub mod error;
pub mod interval;
pub mod model;
pub mod report;
pub mod sl2;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use interval::{IntervalKind, LambdaRange, SpectralInterval};
pub use model::{ElementKind, ElementModel, UnitCell};
pub use sl2::{TraceVerdict, TransferMatrix};
pub use spectrum::{HierarchicalReport, SpectrumResult};

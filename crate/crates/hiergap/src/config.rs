//! JSON system descriptions.
//!
//! A config describes one periodic material: the element kind per site,
//! parameter lists, the λ scan range, and optional output/tuning knobs.
//! Scalars broadcast across sites, so a five-site chain sharing one
//! stiffness writes `"stiffness": 0.5` once. Example:
//!
//! ```json
//! {
//!   "name": "modulated pendulums",
//!   "kind": "pendulum",
//!   "masses": [1.2, 2.0, 1.0, 2.2, 1.2],
//!   "stiffness": 0.5,
//!   "resonances": [2.0, 0.5, 2.0, 0.5, 2.0],
//!   "range": { "lo": 0.0, "hi": 4.8 },
//!   "grid": 4096,
//!   "tol": 1e-9
//! }
//! ```
//!
//! All quantities are dimensionless: masses and stiffnesses in the units of
//! the difference equation, resonances as squared frequencies.

use crate::error::{Error, Result};
use crate::interval::LambdaRange;
use crate::model::{fibonacci_cell, ElementModel, UnitCell};
use crate::spectrum::{DEFAULT_GRID, DEFAULT_TOL};
use serde::Deserialize;
use std::path::Path;

/// Default RNG seed for randomized verification.
pub const DEFAULT_SEED: u64 = 42;

/// A scalar that broadcasts, or one value per site.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    fn len_hint(&self) -> Option<usize> {
        match self {
            OneOrMany::One(_) => None,
            OneOrMany::Many(v) => Some(v.len()),
        }
    }

    fn get(&self, i: usize) -> T {
        match self {
            OneOrMany::One(x) => x.clone(),
            OneOrMany::Many(v) => v[i].clone(),
        }
    }
}

/// Element species selector.
#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum KindName {
    MassSpring,
    Pendulum,
    Resonant,
}

impl KindName {
    fn short(&self) -> &'static str {
        match self {
            KindName::MassSpring => "m",
            KindName::Pendulum => "p",
            KindName::Resonant => "r",
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeSpec {
    pub lo: f64,
    pub hi: f64,
}

/// Fibonacci tiling request: two element labels and a maximum depth.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibonacciSpec {
    pub a: String,
    pub b: String,
    pub depth: u32,
}

/// Parsed system description. See the module docs for the schema.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    /// Display name of the cell; defaults to the config file stem.
    #[serde(default)]
    pub name: Option<String>,
    pub kind: OneOrMany<KindName>,
    #[serde(default)]
    pub masses: Option<OneOrMany<f64>>,
    pub stiffness: OneOrMany<f64>,
    #[serde(default)]
    pub resonances: Option<OneOrMany<f64>>,
    #[serde(default)]
    pub outer_mass: Option<OneOrMany<f64>>,
    #[serde(default)]
    pub inner_mass: Option<OneOrMany<f64>>,
    /// One label per site; defaults to kind initial + 1-based index.
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    pub range: RangeSpec,
    #[serde(default)]
    pub grid: Option<usize>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Output directory; default "out".
    #[serde(default)]
    pub out: Option<String>,
    /// Whether to emit SVG diagrams; default true.
    #[serde(default)]
    pub svg: Option<bool>,
    #[serde(default)]
    pub fibonacci: Option<FibonacciSpec>,
    /// Free-text annotations (assumptions, provenance of parameter values).
    #[serde(default)]
    pub notes: Option<String>,
}

impl SystemConfig {
    /// Reads and parses a config file. Structural validation happens here;
    /// physical validation happens when elements are built.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut config: SystemConfig = serde_json::from_str(&text)?;
        if config.name.is_none() {
            config.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        }
        config.site_count()?;
        Ok(config)
    }

    /// Number of sites: the common length of all per-site lists. Scalars
    /// broadcast; at least one list (or a lone scalar meaning one site)
    /// fixes the count.
    pub fn site_count(&self) -> Result<usize> {
        let hints = [
            ("kind", self.kind.len_hint()),
            ("masses", self.masses.as_ref().and_then(|m| m.len_hint())),
            ("stiffness", self.stiffness.len_hint()),
            ("resonances", self.resonances.as_ref().and_then(|m| m.len_hint())),
            ("outer_mass", self.outer_mass.as_ref().and_then(|m| m.len_hint())),
            ("inner_mass", self.inner_mass.as_ref().and_then(|m| m.len_hint())),
            ("labels", self.labels.as_ref().map(|l| l.len())),
        ];
        let mut count: Option<(&str, usize)> = None;
        for (field, hint) in hints {
            let Some(len) = hint else { continue };
            if len == 0 {
                return Err(Error::config(format!("{field} must not be an empty list")));
            }
            match count {
                None => count = Some((field, len)),
                Some((first, n)) if n != len => {
                    return Err(Error::config(format!(
                        "list lengths disagree: {first} has {n} entries, {field} has {len}"
                    )));
                }
                _ => {}
            }
        }
        Ok(count.map_or(1, |(_, n)| n))
    }

    /// Builds the per-site element models.
    pub fn elements(&self) -> Result<Vec<ElementModel>> {
        let n = self.site_count()?;
        let mut used = FieldUse::default();
        let mut elements = Vec::with_capacity(n);
        for i in 0..n {
            let kind = self.kind.get(i);
            let label = match &self.labels {
                Some(labels) => labels[i].clone(),
                None => format!("{}{}", kind.short(), i + 1),
            };
            let stiffness = self.stiffness.get(i);
            let element = match kind {
                KindName::MassSpring => {
                    used.masses = true;
                    ElementModel::mass_spring(label, self.require(&self.masses, "masses", i)?, stiffness)?
                }
                KindName::Pendulum => {
                    used.masses = true;
                    used.resonances = true;
                    ElementModel::pendulum(
                        label,
                        self.require(&self.masses, "masses", i)?,
                        stiffness,
                        self.require(&self.resonances, "resonances", i)?,
                    )?
                }
                KindName::Resonant => {
                    used.outer_mass = true;
                    used.inner_mass = true;
                    used.resonances = true;
                    ElementModel::resonant(
                        label,
                        self.require(&self.outer_mass, "outer_mass", i)?,
                        self.require(&self.inner_mass, "inner_mass", i)?,
                        stiffness,
                        self.require(&self.resonances, "resonances", i)?,
                    )?
                }
            };
            elements.push(element);
        }
        used.check(self)?;
        Ok(elements)
    }

    fn require(&self, field: &Option<OneOrMany<f64>>, name: &str, i: usize) -> Result<f64> {
        field
            .as_ref()
            .map(|f| f.get(i))
            .ok_or_else(|| Error::config(format!("site {} needs {name}", i + 1)))
    }

    /// Builds the unit cell named after the config.
    pub fn cell(&self) -> Result<UnitCell> {
        UnitCell::new(self.name.clone().unwrap_or_else(|| "cell".into()), self.elements()?)
    }

    pub fn lambda_range(&self) -> Result<LambdaRange> {
        LambdaRange::new(self.range.lo, self.range.hi)
    }

    pub fn grid(&self) -> usize {
        self.grid.unwrap_or(DEFAULT_GRID)
    }

    pub fn tol(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_TOL)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn out_dir(&self) -> &str {
        self.out.as_deref().unwrap_or("out")
    }

    pub fn want_svg(&self) -> bool {
        self.svg.unwrap_or(true)
    }

    /// Resolves the Fibonacci block, if any, to the two named elements.
    pub fn fibonacci_pair(&self) -> Result<Option<(ElementModel, ElementModel, u32)>> {
        let Some(spec) = &self.fibonacci else { return Ok(None) };
        let elements = self.elements()?;
        let find = |label: &str| {
            elements
                .iter()
                .find(|e| e.label == label)
                .cloned()
                .ok_or_else(|| Error::config(format!("fibonacci refers to unknown label '{label}'")))
        };
        Ok(Some((find(&spec.a)?, find(&spec.b)?, spec.depth)))
    }

    /// Convenience: the depth-`depth` Fibonacci cell of the configured pair.
    pub fn fibonacci_cell_at(&self, depth: u32) -> Result<UnitCell> {
        let (a, b, _) = self
            .fibonacci_pair()?
            .ok_or_else(|| Error::config("config has no fibonacci block"))?;
        fibonacci_cell(&a, &b, depth)
    }
}

/// Tracks which optional parameter lists any site consumed, to reject
/// fields that silently do nothing.
#[derive(Default)]
struct FieldUse {
    masses: bool,
    resonances: bool,
    outer_mass: bool,
    inner_mass: bool,
}

impl FieldUse {
    fn check(&self, config: &SystemConfig) -> Result<()> {
        let stray = [
            ("masses", config.masses.is_some() && !self.masses),
            ("resonances", config.resonances.is_some() && !self.resonances),
            ("outer_mass", config.outer_mass.is_some() && !self.outer_mass),
            ("inner_mass", config.inner_mass.is_some() && !self.inner_mass),
        ];
        for (name, unused) in stray {
            if unused {
                return Err(Error::config(format!("{name} is set but no site uses it")));
            }
        }
        Ok(())
    }
}

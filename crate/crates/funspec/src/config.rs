//! Run configuration, read from JSON. See `docs/config.md` for the schema.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use funspec_core::linalg::Field;
use funspec_core::quiver::Quiver;
use funspec_core::ringcat::FiniteRing;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Points,
    Supports,
    Ideals,
    Primes,
    Comparison,
    Stalks,
    PathAlgebra,
    Transport,
    Gamma,
    Axioms,
}

impl Task {
    pub const ALL: [Task; 10] = [
        Task::Points,
        Task::Supports,
        Task::Ideals,
        Task::Primes,
        Task::Comparison,
        Task::Stalks,
        Task::PathAlgebra,
        Task::Transport,
        Task::Gamma,
        Task::Axioms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Task::Points => "points",
            Task::Supports => "supports",
            Task::Ideals => "ideals",
            Task::Primes => "primes",
            Task::Comparison => "comparison",
            Task::Stalks => "stalks",
            Task::PathAlgebra => "path-algebra",
            Task::Transport => "transport",
            Task::Gamma => "gamma",
            Task::Axioms => "axioms",
        }
    }

    pub fn parse(s: &str) -> Option<Task> {
        Task::ALL.into_iter().find(|t| t.name() == s)
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RingSpec {
    Zmod(u64),
    PrimeField(u64),
    /// `F_p[x]/(f)`, coefficients of `f` lowest degree first.
    Poly { p: u64, modulus: Vec<u64> },
    Product(Vec<RingSpec>),
}

impl RingSpec {
    pub fn build(&self) -> funspec_core::Result<FiniteRing> {
        match self {
            RingSpec::Zmod(n) => FiniteRing::zmod(*n),
            RingSpec::PrimeField(p) => FiniteRing::prime_field(*p),
            RingSpec::Poly { p, modulus } => FiniteRing::poly_quotient(*p, modulus),
            RingSpec::Product(parts) => FiniteRing::product(parts.iter().map(|r| r.build()).collect::<Result<_, _>>()?),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InstanceSpec {
    Quiver {
        vertices: Vec<String>,
        /// `[source, target, label]`.
        #[serde(default)]
        arrows: Vec<[String; 3]>,
        field: String,
        /// Dimension bound for the indecomposable search outside type A.
        #[serde(default)]
        dim_bound: Option<usize>,
    },
    Ring(RingSpec),
    Orbit { m: usize, field: String },
}

impl InstanceSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            InstanceSpec::Quiver { .. } => "quiver",
            InstanceSpec::Ring(_) => "ring",
            InstanceSpec::Orbit { .. } => "orbit",
        }
    }

    pub fn supports(&self, task: Task) -> bool {
        match self {
            InstanceSpec::Quiver { .. } => true,
            InstanceSpec::Ring(_) => !matches!(task, Task::PathAlgebra | Task::Transport),
            InstanceSpec::Orbit { .. } => matches!(task, Task::Points | Task::Ideals | Task::Primes | Task::Comparison),
        }
    }
}

/// `F_p`, `F_{p^e}` or `Q`, written `f7`, `f4`, `f9`, `q`.
pub fn parse_field(s: &str) -> Result<Field, String> {
    let lower = s.trim().to_ascii_lowercase();
    if lower == "q" || lower == "qq" || lower == "rationals" {
        return Ok(Field::Rationals);
    }
    let digits = lower.strip_prefix('f').or_else(|| lower.strip_prefix("gf")).ok_or_else(|| format!("unknown field {s:?}"))?;
    let q: u64 = digits.trim_start_matches('_').parse().map_err(|_| format!("unknown field {s:?}"))?;
    let (p, e) = prime_power(q).ok_or_else(|| format!("{q} is not a prime power"))?;
    if e == 1 {
        Field::prime(p).map_err(|e| e.to_string())
    } else {
        Field::gf(p, e).map_err(|e| e.to_string())
    }
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    /// Shifts `-window..=window` in the path algebra test category.
    #[serde(default = "default_window")]
    pub window: i64,
    /// Random objects per sampled check.
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Rounds of cone closure for quiver thick closures.
    #[serde(default = "default_rounds")]
    pub closure_rounds: usize,
    /// Morphisms tried per ideal member when building roofs for stalks.
    #[serde(default = "default_stalk")]
    pub stalk_budget: usize,
}

fn default_window() -> i64 {
    1
}
fn default_samples() -> usize {
    200
}
fn default_rounds() -> usize {
    32
}
fn default_stalk() -> usize {
    16
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { window: default_window(), samples: default_samples(), closure_rounds: default_rounds(), stalk_budget: default_stalk() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GammaSpec {
    /// Restrict to the full subquiver on these vertex labels.
    Keep(Vec<String>),
    /// Base change along `R -> S`.
    Quotient(RingSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TransportSpec {
    /// Unit `1[s]`.
    Shift(i64),
    /// A vertex permutation, as the image label of each vertex in order.
    Automorphism(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub instance: InstanceSpec,
    pub tasks: Vec<Task>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub budgets: Budgets,
    #[serde(default)]
    pub gamma: Option<GammaSpec>,
    #[serde(default)]
    pub transport: Option<TransportSpec>,
    #[serde(default)]
    pub out: Option<String>,
}

/// One problem with a configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub field: String,
    pub message: String,
}

impl Diagnostic {
    fn new(field: &str, message: impl Into<String>) -> Self {
        Diagnostic { field: field.into(), message: message.into() }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, Vec<Diagnostic>> {
        serde_json::from_str(text).map_err(|e| vec![Diagnostic::new("", e.to_string())])
    }

    /// All problems found, empty when the config is usable.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.tasks.is_empty() {
            out.push(Diagnostic::new("tasks", "at least one task is required"));
        }
        let unique: BTreeSet<Task> = self.tasks.iter().copied().collect();
        if unique.len() != self.tasks.len() {
            out.push(Diagnostic::new("tasks", "tasks are listed more than once"));
        }
        for t in &self.tasks {
            if !self.instance.supports(*t) {
                out.push(Diagnostic::new("tasks", format!("task {t} does not apply to a {} instance", self.instance.kind())));
            }
        }
        let b = &self.budgets;
        for (name, ok) in [
            ("budgets.window", b.window > 0),
            ("budgets.samples", b.samples > 0),
            ("budgets.closure_rounds", b.closure_rounds > 0),
            ("budgets.stalk_budget", b.stalk_budget > 0),
        ] {
            if !ok {
                out.push(Diagnostic::new(name, "must be positive"));
            }
        }
        match &self.instance {
            InstanceSpec::Quiver { vertices, arrows, field, .. } => {
                if let Err(e) = parse_field(field) {
                    out.push(Diagnostic::new("instance.quiver.field", e));
                }
                if let Err(e) = build_quiver(vertices, arrows).and_then(|q| q.topological_order().map(|_| ())) {
                    out.push(Diagnostic::new("instance.quiver", e.to_string()));
                }
                match &self.gamma {
                    Some(GammaSpec::Keep(keep)) if keep.iter().any(|v| !vertices.contains(v)) => {
                        out.push(Diagnostic::new("gamma.keep", "unknown vertex label"));
                    }
                    Some(GammaSpec::Quotient(_)) => out.push(Diagnostic::new("gamma", "a quiver instance takes gamma.keep")),
                    _ => {}
                }
                if let Some(TransportSpec::Automorphism(img)) = &self.transport {
                    let set: BTreeSet<&String> = img.iter().collect();
                    if img.len() != vertices.len() || set.len() != img.len() || img.iter().any(|v| !vertices.contains(v)) {
                        out.push(Diagnostic::new("transport.automorphism", "must list every vertex label exactly once"));
                    }
                }
            }
            InstanceSpec::Ring(r) => {
                if let Err(e) = r.build() {
                    out.push(Diagnostic::new("instance.ring", e.to_string()));
                }
                match &self.gamma {
                    Some(GammaSpec::Quotient(t)) => {
                        if let Err(e) = t.build() {
                            out.push(Diagnostic::new("gamma.quotient", e.to_string()));
                        }
                    }
                    Some(GammaSpec::Keep(_)) => out.push(Diagnostic::new("gamma", "a ring instance takes gamma.quotient")),
                    None if self.tasks.contains(&Task::Gamma) => {
                        out.push(Diagnostic::new("gamma", "the gamma task on a ring needs gamma.quotient"));
                    }
                    None => {}
                }
            }
            InstanceSpec::Orbit { m, field } => {
                if *m == 0 {
                    out.push(Diagnostic::new("instance.orbit.m", "must be positive"));
                }
                if let Err(e) = parse_field(field) {
                    out.push(Diagnostic::new("instance.orbit.field", e));
                }
            }
        }
        out
    }
}

pub fn build_quiver(vertices: &[String], arrows: &[[String; 3]]) -> funspec_core::Result<Arc<Quiver>> {
    let arrows: Vec<(&str, &str, &str)> = arrows.iter().map(|[s, t, l]| (s.as_str(), t.as_str(), l.as_str())).collect();
    let vertices: Vec<&str> = vertices.iter().map(String::as_str).collect();
    Quiver::new(&vertices, &arrows).map(Arc::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields() {
        assert_eq!(parse_field("f2").unwrap(), Field::Prime(2));
        assert_eq!(parse_field("Q").unwrap(), Field::Rationals);
        assert_eq!(parse_field("f4").unwrap().order(), Some(4));
        assert!(parse_field("f6").is_err());
        assert!(parse_field("r").is_err());
    }

    #[test]
    fn parse_and_validate() {
        let c = RunConfig::from_json(
            r#"{"instance": {"ring": {"zmod": 12}}, "tasks": ["points", "stalks"], "seed": 3}"#,
        )
        .unwrap();
        assert!(c.validate().is_empty());
        assert_eq!(c.budgets, Budgets::default());

        let bad = RunConfig::from_json(r#"{"instance": {"orbit": {"m": 2, "field": "f2"}}, "tasks": ["stalks"], "budgets": {"samples": 0}}"#)
            .unwrap();
        let fields: Vec<String> = bad.validate().into_iter().map(|d| d.field).collect();
        assert_eq!(fields, ["tasks", "budgets.samples"]);

        assert!(RunConfig::from_json(r#"{"instance": {"ring": {"zmod": 12}}, "tasks": ["nope"]}"#).is_err());
    }
}

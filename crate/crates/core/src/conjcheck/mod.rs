//! Condition checkers for the homological conjectures and verifiers for the
//! transfer results along matrix and skew group extensions.
//!
//! Every checker returns a [`Report`] with a three-valued outcome. Nothing
//! here proves or refutes a conjecture: a finite cutoff bounds every
//! resolution, and "holds" for a conjecture condition only means the
//! condition was settled on this algebra.

mod conditions;
mod probes;
mod transfer;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::exactlin::Matrix;
use crate::modhom::ModuleMap;

pub use conditions::{auslander_condition, gsc_check, nakayama_condition, one_sided_ids, OneSidedIds};
pub use probes::{arc_probe, findim_probe, gnc_probe, snc_probe};
pub use transfer::{
    g_stability, verify_adjoint, verify_lemma31, verify_prop27, verify_prop35, verify_thm36_machinery, Extension,
    GStability,
};

pub const DEFAULT_CUTOFF: usize = 10;

/// Cutoff and seed shared by every checker.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    pub cutoff: usize,
    pub seed: u64,
}

impl Default for Params {
    fn default() -> Self {
        Params { cutoff: DEFAULT_CUTOFF, seed: 0 }
    }
}

impl Params {
    pub fn new(cutoff: usize, seed: u64) -> Self {
        Params { cutoff, seed }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    HoldsDefinitively,
    /// Fails at the given degree (or index, for claims without a degree).
    ViolatedAt(usize),
    /// Not settled by the cutoff.
    InconclusiveUpTo(usize),
}

impl Outcome {
    pub fn verdict(&self) -> &'static str {
        match self {
            Outcome::HoldsDefinitively => "holds",
            Outcome::ViolatedAt(_) => "violated",
            Outcome::InconclusiveUpTo(_) => "inconclusive",
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Outcome::HoldsDefinitively)
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, Outcome::ViolatedAt(_))
    }
}

/// A module map recorded so a claim can be re-checked without re-running
/// the pipeline that found it.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub name: String,
    /// `isomorphism`, `retraction` or `section`.
    pub kind: &'static str,
    pub source_dim: usize,
    pub target_dim: usize,
    pub matrix: Matrix,
}

impl Certificate {
    pub fn new(name: impl Into<String>, kind: &'static str, map: &ModuleMap) -> Self {
        Certificate {
            name: name.into(),
            kind,
            source_dim: map.source().dim(),
            target_dim: map.target().dim(),
            matrix: map.matrix().clone(),
        }
    }
}

/// Result of one checker run.
#[derive(Clone, Debug)]
pub struct Report {
    pub claim: String,
    pub outcome: Outcome,
    pub cutoff: usize,
    pub seed: u64,
    pub evidence: Value,
    pub certificates: Vec<Certificate>,
    /// A potential counterexample to a conjecture was observed (e.g. Ext
    /// vanishing through the cutoff for a nonzero module).
    pub candidate: bool,
    /// A known implication failed on this input. Almost certainly a bug.
    pub anomaly: Option<String>,
}

impl Report {
    pub(crate) fn new(claim: &str, outcome: Outcome, params: Params, evidence: Value) -> Self {
        Report {
            claim: claim.to_string(),
            outcome,
            cutoff: params.cutoff,
            seed: params.seed,
            evidence,
            certificates: Vec::new(),
            candidate: false,
            anomaly: None,
        }
    }

    /// Banner text for an anomaly, with the full report attached.
    pub fn banner(&self) -> Option<String> {
        let reason = self.anomaly.as_ref()?;
        let dump = serde_json::to_string_pretty(self).unwrap_or_default();
        Some(format!(
            "*** POTENTIAL COUNTEREXAMPLE / PROBABLE BUG ***\nclaim {}: {reason}\n{dump}",
            self.claim
        ))
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        // keys in lexicographic order, matching the rest of the output
        let mut map = s.serialize_map(None)?;
        if let Some(a) = &self.anomaly {
            map.serialize_entry("anomaly", a)?;
        }
        map.serialize_entry("candidate", &self.candidate)?;
        map.serialize_entry("certificates", &self.certificates)?;
        map.serialize_entry("claim", &self.claim)?;
        map.serialize_entry("cutoff", &self.cutoff)?;
        map.serialize_entry("evidence", &self.evidence)?;
        match self.outcome {
            Outcome::InconclusiveUpTo(c) => map.serialize_entry("inconclusive_up_to", &c)?,
            Outcome::ViolatedAt(i) => map.serialize_entry("violated_at", &i)?,
            Outcome::HoldsDefinitively => {}
        }
        map.serialize_entry("seed", &self.seed)?;
        map.serialize_entry("verdict", self.outcome.verdict())?;
        map.end()
    }
}

/// Descriptor of an algebra inside report evidence.
pub(crate) fn describe(a: &crate::algcore::Algebra) -> Value {
    serde_json::json!({ "dim": a.dim(), "field": a.field().to_string() })
}

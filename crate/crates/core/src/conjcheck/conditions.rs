use serde::Serialize;
use serde_json::json;

use crate::modhom::{minimal_resolution, projective_dimension, Direction, HomDim, ModError, ModuleCategory, Resolution};

use super::{Outcome, Params, Report};

/// Injective dimensions of the left and right regular modules, with the
/// resolutions that produced them.
#[derive(Clone, Debug, Serialize)]
pub struct OneSidedIds {
    pub left: HomDim,
    pub right: HomDim,
    #[serde(skip)]
    pub left_resolution: Resolution,
    #[serde(skip)]
    pub right_resolution: Resolution,
}

impl OneSidedIds {
    pub fn self_injective(&self) -> bool {
        self.left == HomDim::Finite(0)
    }

    pub fn gorenstein(&self) -> bool {
        self.left.is_finite() && self.right.is_finite()
    }
}

/// `id _ΛΛ` and `id Λ_Λ`; the right module is the left regular module of
/// the opposite algebra.
pub fn one_sided_ids(cat: &ModuleCategory, cutoff: usize) -> Result<OneSidedIds, ModError> {
    let left_resolution = minimal_resolution(cat, &cat.regular(), Direction::Injective, cutoff)?;
    let op = cat.opposite();
    let right_resolution = minimal_resolution(op, &op.regular(), Direction::Injective, cutoff)?;
    Ok(OneSidedIds {
        left: left_resolution.dimension(),
        right: right_resolution.dimension(),
        left_resolution,
        right_resolution,
    })
}

/// Gorenstein symmetry: `id _ΛΛ = id Λ_Λ`.
pub fn gsc_check(cat: &ModuleCategory, params: Params) -> Result<Report, ModError> {
    let ids = one_sided_ids(cat, params.cutoff)?;
    let outcome = match (ids.left, ids.right) {
        (HomDim::Finite(l), HomDim::Finite(r)) if l == r => Outcome::HoldsDefinitively,
        (HomDim::Finite(l), HomDim::Finite(r)) => Outcome::ViolatedAt(l.min(r)),
        _ => Outcome::InconclusiveUpTo(params.cutoff),
    };
    let evidence = json!({
        "algebra": super::describe(cat.algebra()),
        "left_id": ids.left,
        "right_id": ids.right,
        "left_resolution": ids.left_resolution,
        "right_resolution": ids.right_resolution,
    });
    let mut report = Report::new("gsc", outcome, params, evidence);
    if outcome.is_violated() {
        report.anomaly = Some(format!("one-sided self-injective dimensions differ: {} vs {}", ids.left, ids.right));
    }
    Ok(report)
}

/// Which indecomposable injectives are projective, by class.
fn projective_injectives(cat: &ModuleCategory) -> Result<Vec<bool>, ModError> {
    cat.injectives().iter().map(|i| cat.is_projective(i)).collect()
}

/// Nakayama condition: every term `I^i` of the minimal injective resolution
/// of `_ΛΛ` is projective. Also reports self-injectivity.
pub fn nakayama_condition(cat: &ModuleCategory, params: Params) -> Result<Report, ModError> {
    let res = minimal_resolution(cat, &cat.regular(), Direction::Injective, params.cutoff)?;
    let proj = projective_injectives(cat)?;
    let first_bad = res.summands.iter().position(|s| s.iter().any(|&c| !proj[c]));
    let outcome = match first_bad {
        Some(i) => Outcome::ViolatedAt(i),
        None if res.terminated => Outcome::HoldsDefinitively,
        None => Outcome::InconclusiveUpTo(params.cutoff),
    };
    let id = res.dimension();
    let self_injective = id == HomDim::Finite(0);
    let non_projective: Vec<usize> = first_bad
        .map(|i| {
            let mut v: Vec<usize> = res.summands[i].iter().copied().filter(|&c| !proj[c]).collect();
            v.dedup();
            v
        })
        .unwrap_or_default();
    let evidence = json!({
        "algebra": super::describe(cat.algebra()),
        "injective_dimension": id,
        "self_injective": self_injective,
        "terms_projective": res.summands.iter().map(|s| s.iter().all(|&c| proj[c])).collect::<Vec<_>>(),
        "non_projective_summands": non_projective,
        "resolution": res,
    });
    let mut report = Report::new("nc", outcome, params, evidence);
    if outcome.holds() && !self_injective {
        report.anomaly = Some("every injective term is projective but the algebra is not self-injective".into());
    }
    Ok(report)
}

/// Auslander condition: `pd I^i ≤ i` for the minimal injective resolution
/// of `_ΛΛ`. Also reports the Gorenstein flag.
///
/// Beyond the cutoff the condition still follows when every indecomposable
/// injective has projective dimension at most `cutoff + 1`.
pub fn auslander_condition(cat: &ModuleCategory, params: Params) -> Result<Report, ModError> {
    let ids = one_sided_ids(cat, params.cutoff)?;
    let res = &ids.left_resolution;
    let pds: Vec<HomDim> =
        cat.injectives().iter().map(|i| projective_dimension(cat, i, params.cutoff)).collect::<Result<_, _>>()?;
    // pd of a sum is the max over summands; AtLeast(cutoff + 1) exceeds every computed degree
    let term_pd = |s: &[usize]| -> HomDim {
        s.iter().map(|&c| pds[c]).fold(HomDim::Finite(0), |acc, p| match (acc, p) {
            (HomDim::Finite(a), HomDim::Finite(b)) => HomDim::Finite(a.max(b)),
            (HomDim::AtLeast(a), _) | (_, HomDim::AtLeast(a)) => HomDim::AtLeast(a),
        })
    };
    let term_pds: Vec<HomDim> = res.summands.iter().map(|s| term_pd(s)).collect();
    let first_bad = term_pds.iter().enumerate().position(|(i, p)| p.finite().is_none_or(|d| d > i));
    let bounded_beyond = pds.iter().all(|p| p.finite().is_some_and(|d| d <= params.cutoff + 1));
    let outcome = match first_bad {
        Some(i) => Outcome::ViolatedAt(i),
        None if res.terminated || bounded_beyond => Outcome::HoldsDefinitively,
        None => Outcome::InconclusiveUpTo(params.cutoff),
    };
    let gorenstein = ids.gorenstein();
    let evidence = json!({
        "algebra": super::describe(cat.algebra()),
        "left_id": ids.left,
        "right_id": ids.right,
        "gorenstein": gorenstein,
        "injective_pds": pds,
        "term_pds": term_pds,
        "resolution": res,
    });
    let mut report = Report::new("agc", outcome, params, evidence);
    if outcome.holds() && !gorenstein {
        report.anomaly = Some("the Auslander condition holds but the algebra is not Gorenstein at this cutoff".into());
    }
    Ok(report)
}

use serde_json::json;

use crate::modhom::{direct_sum, ext_dims, projective_dimension, HomDim, ModError, Module, ModuleCategory};

use super::{Outcome, Params, Report};

/// Strong Nakayama probe: least `i ≤ cutoff` with `Ext^i(m, Λ) ≠ 0`.
///
/// Vanishing through the cutoff marks `m` as a counterexample candidate;
/// it is never a proof.
pub fn snc_probe(cat: &ModuleCategory, m: &Module, params: Params) -> Result<Report, ModError> {
    if m.is_zero() {
        return Err(ModError::BadModule("the strong Nakayama probe needs a nonzero module".into()));
    }
    let exts = ext_dims(cat, m, &cat.regular(), params.cutoff)?;
    let witness = exts.iter().position(|&d| d != 0);
    let outcome = match witness {
        Some(_) => Outcome::HoldsDefinitively,
        None => Outcome::InconclusiveUpTo(params.cutoff),
    };
    let evidence = json!({
        "module_dim": m.dim(),
        "witness": witness,
        "ext_dims": exts,
    });
    let mut report = Report::new("snc", outcome, params, evidence);
    report.candidate = witness.is_none();
    Ok(report)
}

/// Generalized Nakayama probe: the strong probe on every simple module.
pub fn gnc_probe(cat: &ModuleCategory, params: Params) -> Result<Report, ModError> {
    let regular = cat.regular();
    let per_simple: Vec<(usize, Option<usize>, Vec<usize>)> = cat
        .simples()
        .iter()
        .map(|s| {
            let exts = ext_dims(cat, s, &regular, params.cutoff)?;
            Ok((s.dim(), exts.iter().position(|&d| d != 0), exts))
        })
        .collect::<Result<_, ModError>>()?;
    let all = per_simple.iter().all(|(_, w, _)| w.is_some());
    let outcome = if all { Outcome::HoldsDefinitively } else { Outcome::InconclusiveUpTo(params.cutoff) };
    let simples: Vec<_> = per_simple
        .iter()
        .enumerate()
        .map(|(c, (d, w, e))| json!({ "class": c, "dim": d, "witness": w, "ext_dims": e }))
        .collect();
    let evidence = json!({
        "algebra": super::describe(cat.algebra()),
        "simples": simples,
    });
    let mut report = Report::new("gnc", outcome, params, evidence);
    report.candidate = !all;
    Ok(report)
}

/// Auslander–Reiten probe: do `Ext^{1..cutoff}(m, m ⊕ Λ)` all vanish, and
/// is `m` projective? Vanishing for a non-projective `m` is a candidate.
pub fn arc_probe(cat: &ModuleCategory, m: &Module, params: Params) -> Result<Report, ModError> {
    let target = direct_sum(cat.algebra(), &[m.clone(), cat.regular()])?;
    let exts = ext_dims(cat, m, &target, params.cutoff)?;
    let first_nonzero = exts.iter().skip(1).position(|&d| d != 0).map(|i| i + 1);
    let projective = cat.is_projective(m)?;
    let candidate = first_nonzero.is_none() && !projective;
    let outcome = if candidate { Outcome::InconclusiveUpTo(params.cutoff) } else { Outcome::HoldsDefinitively };
    let evidence = json!({
        "module_dim": m.dim(),
        "projective": projective,
        "vanishing": first_nonzero.is_none(),
        "first_nonzero": first_nonzero,
        "ext_dims": exts,
    });
    let mut report = Report::new("arc", outcome, params, evidence);
    report.candidate = candidate;
    Ok(report)
}

/// Supremum of the finite projective dimensions in `modules`: a lower bound
/// for the finitistic dimension, not its value.
pub fn findim_probe(cat: &ModuleCategory, modules: &[Module], params: Params) -> Result<Report, ModError> {
    let pds: Vec<HomDim> =
        modules.iter().map(|m| projective_dimension(cat, m, params.cutoff)).collect::<Result<_, _>>()?;
    let bound = pds.iter().filter_map(HomDim::finite).max().unwrap_or(0);
    let evidence = json!({
        "lower_bound": bound,
        "pds": pds,
    });
    Ok(Report::new("findim", Outcome::HoldsDefinitively, params, evidence))
}

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algcore::{matrix_algebra, skew_group_algebra, Algebra, GroupAction};
use crate::modhom::{
    direct_sum, ext_dims, hom_dim, induce, is_isomorphic, regular_module, restrict, split_mono_section, twist,
    unit_map, IsoEvidence, ModError, Module, ModuleCategory,
};

use super::conditions::one_sided_ids;
use super::{Certificate, Outcome, Params, Report};

/// The extension `Γ ⊇ Λ` handed to [`verify_lemma31`].
#[derive(Clone, Debug)]
pub enum Extension {
    Matrix(usize),
    Skew(Arc<GroupAction>),
}

impl Extension {
    pub fn build(&self, a: &Arc<Algebra>) -> Result<Arc<Algebra>, ModError> {
        match self {
            Extension::Matrix(n) => Ok(Arc::new(matrix_algebra(a, *n)?)),
            Extension::Skew(action) => {
                if !crate::modhom::same_algebra(action.algebra(), a) {
                    return Err(ModError::AlgebraMismatch);
                }
                Ok(Arc::new(skew_group_algebra(action)?))
            }
        }
    }

    fn describe(&self) -> Value {
        match self {
            Extension::Matrix(n) => json!({ "kind": "matrix", "n": n }),
            Extension::Skew(action) => json!({ "kind": "skew", "group_order": action.order() }),
        }
    }
}

/// `id Λ = id Γ` on both sides, and self-injectivity / Gorenstein transfer.
///
/// Structurally equal values where some side only reached the cutoff give an
/// inconclusive outcome: they agree, but equality of the dimensions is not
/// decided.
pub fn verify_lemma31(a: &Arc<Algebra>, extension: &Extension, params: Params) -> Result<Report, ModError> {
    let gamma = extension.build(a)?;
    let cat_a = ModuleCategory::new(a, params.seed)?;
    let cat_g = ModuleCategory::new(&gamma, params.seed)?;
    let base = one_sided_ids(&cat_a, params.cutoff)?;
    let ext = one_sided_ids(&cat_g, params.cutoff)?;
    let left_eq = base.left == ext.left;
    let right_eq = base.right == ext.right;
    let self_inj_eq = base.self_injective() == ext.self_injective();
    let gorenstein_eq = base.gorenstein() == ext.gorenstein();
    let all_finite = [base.left, base.right, ext.left, ext.right].iter().all(|d| d.is_finite());
    let outcome = if !(left_eq && right_eq && self_inj_eq && gorenstein_eq) {
        // first degree at which the two resolutions differ in length
        let len = |d: crate::modhom::HomDim| d.finite().unwrap_or(params.cutoff + 1);
        let mut at = usize::MAX;
        if !left_eq {
            at = at.min(len(base.left).min(len(ext.left)));
        }
        if !right_eq {
            at = at.min(len(base.right).min(len(ext.right)));
        }
        Outcome::ViolatedAt(if at == usize::MAX { 0 } else { at })
    } else if all_finite {
        Outcome::HoldsDefinitively
    } else {
        Outcome::InconclusiveUpTo(params.cutoff)
    };
    let evidence = json!({
        "base_algebra": super::describe(a),
        "extension_algebra": super::describe(&gamma),
        "extension": extension.describe(),
        "base": { "left_id": base.left, "right_id": base.right, "self_injective": base.self_injective(), "gorenstein": base.gorenstein() },
        "extended": { "left_id": ext.left, "right_id": ext.right, "self_injective": ext.self_injective(), "gorenstein": ext.gorenstein() },
        "structurally_equal": left_eq && right_eq,
        "self_injectivity_agrees": self_inj_eq,
        "gorenstein_agrees": gorenstein_eq,
    });
    let mut report = Report::new("lemma3.1", outcome, params, evidence);
    if outcome.is_violated() {
        report.anomaly = Some("injective dimensions differ across an excellent extension".into());
    }
    Ok(report)
}

/// Result of the `^σX ≅ X` test for every group element.
#[derive(Clone, Debug)]
pub struct GStability {
    pub stable: bool,
    /// First group element whose twist was not shown isomorphic.
    pub failing: Option<usize>,
    pub evidence: Vec<IsoEvidence>,
    pub certificates: Vec<Certificate>,
}

/// Whether `^σX ≅ X` for all `σ`, with isomorphism certificates.
pub fn g_stability(x: &Module, action: &GroupAction, seed: u64) -> Result<GStability, ModError> {
    let mut out = GStability { stable: true, failing: None, evidence: Vec::new(), certificates: Vec::new() };
    for (s, sigma) in action.images().iter().enumerate() {
        let tw = twist(x, sigma)?;
        let v = is_isomorphic(&tw, x, seed)?;
        if let Some(c) = &v.certificate {
            out.certificates.push(Certificate::new(format!("twist by {} -> module", action.labels()[s]), "isomorphism", c));
        }
        if !v.isomorphic && out.stable {
            out.stable = false;
            out.failing = Some(s);
        }
        out.evidence.push(v.evidence);
    }
    Ok(out)
}

fn skew_of(action: &Arc<GroupAction>) -> Result<Arc<Algebra>, ModError> {
    Ok(Arc::new(skew_group_algebra(action)?))
}

/// `HFM ≅ ⊕_σ ^σM` with a certificate, and `M -> HFM` split mono with an
/// explicit retraction.
pub fn verify_prop27(m: &Module, action: &Arc<GroupAction>, seed: u64) -> Result<Report, ModError> {
    let gamma = skew_of(action)?;
    let fm = induce(m, &gamma)?;
    let hfm = restrict(&fm)?;
    let twists: Vec<Module> = action.images().iter().map(|s| twist(m, s)).collect::<Result<_, _>>()?;
    let sum = direct_sum(m.algebra(), &twists)?;
    let iso = is_isomorphic(&hfm, &sum, seed)?;
    let unit = unit_map(m, &gamma)?;
    let retraction = split_mono_section(&unit)?;
    let outcome = match (&iso.evidence, iso.isomorphic, retraction.is_some()) {
        (_, true, true) => Outcome::HoldsDefinitively,
        (IsoEvidence::Invariant(_), false, _) => Outcome::ViolatedAt(0),
        (_, _, false) => Outcome::ViolatedAt(1),
        _ => Outcome::InconclusiveUpTo(0),
    };
    let params = Params { cutoff: 0, seed };
    let evidence = json!({
        "module_dim": m.dim(),
        "group_order": action.order(),
        "hfm_dim": hfm.dim(),
        "twist_sum_dim": sum.dim(),
        "isomorphism": iso.evidence,
        "split_mono": retraction.is_some(),
    });
    let mut report = Report::new("prop2.7", outcome, params, evidence);
    if let Some(c) = &iso.certificate {
        report.certificates.push(Certificate::new("HFM -> sum of twists", "isomorphism", c));
    }
    report.certificates.push(Certificate::new("M -> HFM", "section", &unit));
    if let Some(r) = &retraction {
        report.certificates.push(Certificate::new("HFM -> M", "retraction", r));
    }
    if outcome.is_violated() {
        report.anomaly = Some("induction followed by restriction does not match the sum of twists".into());
    }
    Ok(report)
}

/// For `G`-stable `n`: `dim Ext^i_ΛG(FM, FN) = |G| · dim Ext^i_Λ(M, N)` for
/// `i ≤ i_max`, hence `Ext_Λ = 0 ⟹ Ext_ΛG = 0`. A non-stable `n` fails the
/// hypothesis and gives an inconclusive report naming the group element.
pub fn verify_prop35(
    m: &Module,
    n: &Module,
    action: &Arc<GroupAction>,
    i_max: usize,
    seed: u64,
) -> Result<Report, ModError> {
    let params = Params { cutoff: i_max, seed };
    let base = action.algebra();
    let stability = g_stability(n, action, seed)?;
    let n_regular = *n == regular_module(base);
    if !stability.stable {
        let evidence = json!({
            "hypothesis": "not-g-stable",
            "failing_element": stability.failing.map(|s| action.labels()[s].clone()),
            "stability": stability.evidence,
        });
        let mut report = Report::new("prop3.5", Outcome::InconclusiveUpTo(i_max), params, evidence);
        report.certificates = stability.certificates;
        return Ok(report);
    }
    let gamma = skew_of(action)?;
    let cat_a = ModuleCategory::new(base, seed)?;
    let cat_g = ModuleCategory::new(&gamma, seed)?;
    let (fm, fn_) = (induce(m, &gamma)?, induce(n, &gamma)?);
    let lower = ext_dims(&cat_a, m, n, i_max)?;
    let upper = ext_dims(&cat_g, &fm, &fn_, i_max)?;
    let g = action.order();
    let identity_fails = (0..=i_max).find(|&i| upper[i] != g * lower[i]);
    let implication_fails = (0..=i_max).find(|&i| lower[i] == 0 && upper[i] != 0);
    let outcome = match identity_fails.or(implication_fails) {
        Some(i) => Outcome::ViolatedAt(i),
        None => Outcome::HoldsDefinitively,
    };
    let mut evidence = json!({
        "group_order": g,
        "g_stable": true,
        "stability": stability.evidence,
        "ext_base": lower,
        "ext_extended": upper,
        "identity_holds": identity_fails.is_none(),
        "implication_holds": implication_fails.is_none(),
    });
    if n_regular {
        evidence["note"] = json!("the regular module is G-stable for every action: x -> sigma^-1(x) is an isomorphism onto its twist");
    }
    let mut report = Report::new("prop3.5", outcome, params, evidence);
    report.certificates = stability.certificates;
    if outcome.is_violated() {
        report.anomaly = Some("Ext dimensions over the skew group algebra are not |G| times those over the base".into());
    }
    Ok(report)
}

/// The machinery of the SNC/GNC transfer: `FS` is semisimple for every
/// simple `S`, its decomposition into simples of `ΛG`, the Ext identity
/// against the regular module, and the one-directional witness transfer
/// (witnesses for all simples of `ΛG` give witnesses for all simples of `Λ`).
pub fn verify_thm36_machinery(action: &Arc<GroupAction>, params: Params) -> Result<Report, ModError> {
    let base = action.algebra();
    let gamma = skew_of(action)?;
    let cat_a = ModuleCategory::new(base, params.seed)?;
    let cat_g = ModuleCategory::new(&gamma, params.seed)?;
    let g = action.order();
    let reg_a = cat_a.regular();
    let f_reg = induce(&reg_a, &gamma)?;
    let reg_g = cat_g.regular();

    let witness = |e: &[usize]| e.iter().position(|&d| d != 0);
    let gamma_witnesses: Vec<Option<usize>> = cat_g
        .simples()
        .iter()
        .map(|s| Ok(witness(&ext_dims(&cat_g, s, &reg_g, params.cutoff)?)))
        .collect::<Result<_, ModError>>()?;

    let mut semisimple_fail = None;
    let mut identity_fail = None;
    let mut simples = Vec::new();
    let mut base_witnesses = Vec::new();
    for (c, s) in cat_a.simples().iter().enumerate() {
        let fs = induce(s, &gamma)?;
        let semisimple = cat_g.radical_of(&fs).is_zero();
        let mults = cat_g.composition_multiplicities(&fs)?;
        let lower = ext_dims(&cat_a, s, &reg_a, params.cutoff)?;
        let upper = ext_dims(&cat_g, &fs, &f_reg, params.cutoff)?;
        if !semisimple && semisimple_fail.is_none() {
            semisimple_fail = Some(c);
        }
        if let Some(i) = (0..=params.cutoff).find(|&i| upper[i] != g * lower[i]) {
            identity_fail.get_or_insert(i);
        }
        let w = witness(&lower);
        base_witnesses.push(w);
        simples.push(json!({
            "class": c,
            "dim": s.dim(),
            "fs_dim": fs.dim(),
            "semisimple": semisimple,
            "decomposition": mults,
            "witness": w,
            "ext_base": lower,
            "ext_extended": upper,
        }));
    }
    let hypothesis = gamma_witnesses.iter().all(Option::is_some);
    let conclusion = base_witnesses.iter().all(Option::is_some);
    let outcome = if let Some(c) = semisimple_fail {
        Outcome::ViolatedAt(c)
    } else if let Some(i) = identity_fail {
        Outcome::ViolatedAt(i)
    } else if hypothesis && !conclusion {
        Outcome::ViolatedAt(base_witnesses.iter().position(Option::is_none).unwrap_or(0))
    } else if hypothesis {
        Outcome::HoldsDefinitively
    } else {
        Outcome::InconclusiveUpTo(params.cutoff)
    };
    let evidence = json!({
        "base_algebra": super::describe(base),
        "extension_algebra": super::describe(&gamma),
        "group_order": g,
        "extended_simple_dims": cat_g.decomposition().simple_dims,
        "extended_witnesses": gamma_witnesses,
        "simples": simples,
    });
    let mut report = Report::new("thm3.6", outcome, params, evidence);
    if outcome.is_violated() {
        report.anomaly = Some(match (semisimple_fail, identity_fail) {
            (Some(c), _) => format!("F applied to simple {c} is not semisimple"),
            (None, Some(i)) => format!("Ext identity against the regular module fails in degree {i}"),
            _ => "witnesses for every simple of the extension but not of the base".into(),
        });
    }
    Ok(report)
}

/// Adjunction counts over all pairs: `dim Hom_ΛG(FM, N) = dim Hom_Λ(M, HN)`
/// and `dim Hom_ΛG(N, FM) = dim Hom_Λ(HN, M)`.
pub fn verify_adjoint(
    action: &Arc<GroupAction>,
    base_modules: &[Module],
    extended_modules: &[Module],
    seed: u64,
) -> Result<Report, ModError> {
    let gamma = skew_of(action)?;
    let fms: Vec<Module> = base_modules.iter().map(|m| induce(m, &gamma)).collect::<Result<_, _>>()?;
    let hns: Vec<Module> = extended_modules.iter().map(restrict).collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    let mut first_bad = None;
    for (i, (m, fm)) in base_modules.iter().zip(&fms).enumerate() {
        for (j, (n, hn)) in extended_modules.iter().zip(&hns).enumerate() {
            let left = (hom_dim(fm, n)?, hom_dim(m, hn)?);
            let right = (hom_dim(n, fm)?, hom_dim(hn, m)?);
            if (left.0 != left.1 || right.0 != right.1) && first_bad.is_none() {
                first_bad = Some(rows.len());
            }
            rows.push(json!({
                "m": i,
                "n": j,
                "hom_fm_n": left.0,
                "hom_m_hn": left.1,
                "hom_n_fm": right.0,
                "hom_hn_m": right.1,
            }));
        }
    }
    let outcome = match first_bad {
        Some(k) => Outcome::ViolatedAt(k),
        None => Outcome::HoldsDefinitively,
    };
    let evidence = json!({ "pairs": rows.len(), "table": rows });
    let mut report = Report::new("lemma2.4", outcome, Params { cutoff: 0, seed }, evidence);
    if outcome.is_violated() {
        report.anomaly = Some("Hom dimensions break the induction/restriction adjunctions".into());
    }
    Ok(report)
}

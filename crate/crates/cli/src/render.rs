//! Output documents: deterministic JSON, a short text form, exit codes.

use halg_core::conjcheck::{Outcome, Report};
use serde_json::Value;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Exit code for a checker report.
pub fn report_code(r: &Report) -> i32 {
    if r.anomaly.is_some() || r.candidate || r.outcome.is_violated() {
        EXIT_VIOLATED
    } else if matches!(r.outcome, Outcome::InconclusiveUpTo(_)) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

/// Merges per-module reports of one claim: violated beats inconclusive
/// beats holds; certificate names are prefixed with the module label.
pub fn combine(claim: &str, parts: Vec<(String, Report)>) -> Report {
    let mut outcome = Outcome::HoldsDefinitively;
    let (mut cutoff, mut seed) = (0, 0);
    let mut candidate = false;
    let mut anomaly = None;
    let mut items = Vec::new();
    let mut certificates = Vec::new();
    for (label, r) in parts {
        outcome = match (outcome, r.outcome) {
            (Outcome::ViolatedAt(i), _) => Outcome::ViolatedAt(i),
            (_, Outcome::ViolatedAt(i)) => Outcome::ViolatedAt(i),
            (Outcome::InconclusiveUpTo(c), _) | (_, Outcome::InconclusiveUpTo(c)) => Outcome::InconclusiveUpTo(c),
            _ => Outcome::HoldsDefinitively,
        };
        cutoff = r.cutoff;
        seed = r.seed;
        candidate |= r.candidate;
        if anomaly.is_none() {
            anomaly = r.anomaly.map(|a| format!("{label}: {a}"));
        }
        items.push(serde_json::json!({ "module": label, "verdict": r.outcome.verdict(), "evidence": r.evidence }));
        for mut c in r.certificates {
            c.name = format!("{label}: {}", c.name);
            certificates.push(c);
        }
    }
    Report {
        claim: claim.to_string(),
        outcome,
        cutoff,
        seed,
        evidence: serde_json::json!({ "modules": items }),
        certificates,
        candidate,
        anomaly,
    }
}

pub fn to_json(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

/// Human-readable summary: verdict first, then one line per field.
pub fn to_text(doc: &Value) -> String {
    let mut out = String::new();
    let Some(obj) = doc.as_object() else {
        return compact(doc) + "\n";
    };
    for key in ["claim", "verdict", "violated_at", "inconclusive_up_to", "cutoff", "seed"] {
        if let Some(v) = obj.get(key) {
            let shown = v.as_str().map_or_else(|| compact(v), str::to_string);
            out.push_str(&format!("{key}: {shown}\n"));
        }
    }
    for (key, v) in obj {
        match key.as_str() {
            "claim" | "verdict" | "violated_at" | "inconclusive_up_to" | "cutoff" | "seed" => {}
            "certificates" => out.push_str(&format!("certificates: {}\n", v.as_array().map_or(0, Vec::len))),
            "command" => {
                let argv: Vec<&str> =
                    v["argv"].as_array().map(|a| a.iter().filter_map(Value::as_str).collect()).unwrap_or_default();
                out.push_str(&format!("command: halg {}\n", argv.join(" ")));
            }
            "evidence" if v.is_object() => {
                for (k, x) in v.as_object().into_iter().flatten() {
                    out.push_str(&format!("evidence.{k}: {}\n", compact(x)));
                }
            }
            _ => out.push_str(&format!("{key}: {}\n", compact(v))),
        }
    }
    out
}

use qmodulus::modulus::{sort_reports, VerificationReport};
use serde_json::Value;

const HEADER: &str = "| params | h0 region | h1 | h2 | pass |\n|---|---|---|---|---|\n";

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => "-".into(),
        Some(Value::String(s)) => s.clone(),
        Some(Value::Array(xs)) => xs.iter().map(|x| cell(Some(x))).collect::<Vec<_>>().join("; "),
        Some(other) => other.to_string(),
    }
}

/// One row per report, sorted by parameters. Seed and generator are the
/// same for every row of a run and are left out of the params column.
pub fn emit_table(reports: &[VerificationReport]) -> String {
    let mut sorted = reports.to_vec();
    sort_reports(&mut sorted);
    let mut out = String::from(HEADER);
    for r in &sorted {
        let params: Vec<String> =
            r.params.iter().filter(|(k, _)| *k != "seed" && *k != "rng").map(|(k, v)| format!("{k}={v}")).collect();
        let h = r.rhs.get("h");
        let region = cell(r.rhs.get("h0_region")).replace('|', "\\|");
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} |\n",
            params.join(", "),
            region,
            cell(h.and_then(|h| h.get(1))),
            cell(h.and_then(|h| h.get(2))),
            if r.pass { "yes" } else { "**FAIL**" }
        ));
    }
    out
}

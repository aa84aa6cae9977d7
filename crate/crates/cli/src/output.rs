//! The machine-readable command result and its text rendering.
//!
//! JSON is the contract; the text form is computed from a [`CommandResult`]
//! alone, so both carry the same information.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandResult {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub result: Payload,
    /// Which rules produced the answer.
    pub refs: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Payload {
    /// Arc strings of the main set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<String>>,
    /// Arc strings of the companion strict set (`T~`, or the strong set).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strict_set: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exactness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realizable: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Named scalar values (Bézout data, oracle statistics, endpoints).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
    /// Oracle disagreements as `(τ′, expected, got)`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<(String, bool, bool)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub a: u64,
    pub n: u64,
    /// Numerator given to each slot of the reduced tuple (γ slots first).
    pub numerators: Vec<u64>,
    /// True when the search ran on the reflected values `1 − x`.
    pub complemented: bool,
}

fn join(set: &[String]) -> String {
    if set.is_empty() {
        "∅".to_string()
    } else {
        set.join("∪")
    }
}

pub fn render_text(r: &CommandResult) -> String {
    let p = &r.result;
    let mut lines = Vec::new();
    match r.command.as_str() {
        "jn" => {
            lines.push(p.realizable.unwrap_or(false).to_string());
            if let Some(w) = &p.witness {
                let nums: Vec<String> = w.numerators.iter().map(u64::to_string).collect();
                let refl = if w.complemented { " (reflected)" } else { "" };
                lines.push(format!("witness: A/N = {}/{}, numerators [{}]{refl}", w.a, w.n, nums.join(",")));
            }
        }
        "interval" => {
            let t = join(p.set.as_deref().unwrap_or_default());
            let ts = join(p.strict_set.as_deref().unwrap_or_default());
            lines.push(format!("{t} (T), {ts} (T~)"));
        }
        "torus" => {
            let reg = join(p.set.as_deref().unwrap_or_default());
            let strong = join(p.strict_set.as_deref().unwrap_or_default());
            lines.push(format!("{reg} regular; {strong} strong"));
        }
        "cable" => {
            let set = join(p.set.as_deref().unwrap_or_default());
            lines.push(format!("{set} ({})", p.exactness.as_deref().unwrap_or("contains")));
        }
        "oracle" => {
            let hull = match (p.values.get("hull_low"), p.values.get("hull_high")) {
                (Some(lo), Some(hi)) => format!("[{lo},{hi}]"),
                _ => "∅".to_string(),
            };
            let tested = p.values.get("tested_points").map(String::as_str).unwrap_or("0");
            lines.push(format!("hull {hull}, {tested} points, {} mismatches", p.mismatches.len()));
            for (x, want, got) in &p.mismatches {
                lines.push(format!("  {x}: closed form {want}, oracle {got}"));
            }
        }
        _ => {
            if let Some(set) = &p.set {
                lines.push(join(set));
            }
            let pairs: Vec<String> = p.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
            if !pairs.is_empty() {
                lines.push(pairs.join(" "));
            }
        }
    }
    lines.join("\n")
}

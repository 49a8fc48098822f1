//! Report accumulation and rendering.
//!
//! Every subcommand builds an [`Outcome`]: ordered text lines for human
//! output and ordered verdict/certificate/witness entries for machine
//! output. Machine mode is a single JSON document with fixed top-level
//! key order: `verdicts`, `certificates`, `witnesses`, `timing_ms`,
//! `engine`, `input_digest`. All rendering is deterministic; `timing_ms`
//! is 0 unless timing was explicitly requested.

use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use tgx_core::galois::Verdict;

#[derive(Default)]
pub struct Outcome {
    text: Vec<String>,
    verdicts: Vec<(String, &'static str)>,
    certificates: Vec<(String, String)>,
    witnesses: Vec<(String, Value)>,
    pub any_unknown: bool,
}

impl Outcome {
    pub fn new() -> Self {
        Outcome::default()
    }

    /// Appends a text-mode line.
    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    /// Records a named verdict: one text line `name: Verdict(...)` plus
    /// machine entries (certified payloads under `certificates`, refuted
    /// payloads under `witnesses`).
    pub fn verdict(&mut self, name: &str, v: &Verdict) {
        self.text.push(format!("{name}: {v}"));
        self.verdicts.push((name.to_string(), v.status()));
        match v {
            Verdict::Certified(c) => {
                self.certificates.push((name.to_string(), c.clone()));
            }
            Verdict::Refuted(w) => {
                self.witnesses
                    .push((name.to_string(), Value::String(w.clone())));
            }
            Verdict::Unknown => {
                self.any_unknown = true;
            }
        }
    }

    /// Records a machine-only witness payload (arrays, numbers, nested
    /// structures); text mode carries the same data via explicit lines.
    pub fn witness(&mut self, key: &str, val: Value) {
        self.witnesses.push((key.to_string(), val));
    }

    /// Appends another outcome's lines and entries after this one's.
    pub fn merge(&mut self, other: Outcome) {
        self.text.extend(other.text);
        self.verdicts.extend(other.verdicts);
        self.certificates.extend(other.certificates);
        self.witnesses.extend(other.witnesses);
        self.any_unknown |= other.any_unknown;
    }

    pub fn render_text(&self, timing_ms: Option<u128>) -> String {
        let mut out = self.text.join("\n");
        if let Some(ms) = timing_ms {
            out.push_str(&format!("\ntiming_ms: {ms}"));
        }
        out.push('\n');
        out
    }

    pub fn render_machine(&self, timing_ms: u128, engine: &str, digest: &str) -> String {
        let mut verdicts = Map::new();
        for (k, v) in &self.verdicts {
            verdicts.insert(k.clone(), Value::String((*v).to_string()));
        }
        let mut certificates = Map::new();
        for (k, v) in &self.certificates {
            certificates.insert(k.clone(), Value::String(v.clone()));
        }
        let mut witnesses = Map::new();
        for (k, v) in &self.witnesses {
            witnesses.insert(k.clone(), v.clone());
        }
        let mut top = Map::new();
        top.insert("verdicts".to_string(), Value::Object(verdicts));
        top.insert("certificates".to_string(), Value::Object(certificates));
        top.insert("witnesses".to_string(), Value::Object(witnesses));
        top.insert(
            "timing_ms".to_string(),
            Value::Number(serde_json::Number::from(timing_ms as u64)),
        );
        top.insert("engine".to_string(), Value::String(engine.to_string()));
        top.insert("input_digest".to_string(), Value::String(digest.to_string()));
        let mut s = serde_json::to_string_pretty(&Value::Object(top))
            .expect("report serialization cannot fail");
        s.push('\n');
        s
    }
}

/// SHA-256 digest of the canonical input description, hex-encoded. Parts
/// are length-prefixed so distinct part lists never collide.
pub fn input_digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_be_bytes());
        h.update(p.as_bytes());
    }
    let bytes = h.finalize();
    let mut hex = String::with_capacity(7 + 64);
    hex.push_str("sha256:");
    for b in bytes {
        hex.push_str(&format!("{b:02x}"));
    }
    hex
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_key_order_is_fixed() {
        let mut o = Outcome::new();
        o.verdict("galois", &Verdict::Certified("trivial".to_string()));
        o.verdict("absolute", &Verdict::Unknown);
        let s = o.render_machine(0, "tgx 0.1.0", "sha256:00");
        let iv = s.find("\"verdicts\"").unwrap();
        let ic = s.find("\"certificates\"").unwrap();
        let iw = s.find("\"witnesses\"").unwrap();
        let it = s.find("\"timing_ms\"").unwrap();
        let ie = s.find("\"engine\"").unwrap();
        let id = s.find("\"input_digest\"").unwrap();
        assert!(iv < ic && ic < iw && iw < it && it < ie && ie < id);
        assert!(o.any_unknown);
        let parsed: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(parsed["verdicts"]["galois"], "certified");
        assert_eq!(parsed["verdicts"]["absolute"], "unknown");
        assert_eq!(parsed["certificates"]["galois"], "trivial");
        assert_eq!(parsed["timing_ms"], 0);
    }

    #[test]
    fn digest_is_stable_and_injective_on_parts() {
        let a = input_digest(&["ab", "c"]);
        let b = input_digest(&["ab", "c"]);
        let c = input_digest(&["a", "bc"]);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.starts_with("sha256:"));
        assert_eq!(a.len(), 7 + 64);
    }
}

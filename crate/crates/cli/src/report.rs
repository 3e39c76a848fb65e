use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Where a number in a report comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    PaperScript,
    VerifiedCertificate,
    Search,
    AxiomImport,
}

pub struct Report {
    command: String,
    inputs: Map<String, Value>,
    results: Map<String, Value>,
    provenance: BTreeMap<String, Tag>,
    pub summary: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            inputs: Map::new(),
            results: Map::new(),
            provenance: BTreeMap::new(),
            summary: Vec::new(),
        }
    }

    pub fn input(&mut self, k: &str, v: impl Serialize) -> &mut Self {
        self.inputs.insert(k.into(), json!(v));
        self
    }

    pub fn result(&mut self, k: &str, v: impl Serialize) -> &mut Self {
        self.results.insert(k.into(), json!(v));
        self
    }

    /// A numeric claim together with its provenance.
    pub fn number(&mut self, k: &str, v: impl Serialize, tag: Tag) -> &mut Self {
        self.provenance.insert(k.into(), tag);
        self.result(k, v)
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.summary.push(s.into());
        self
    }

    fn body(&self) -> Value {
        let inputs = Value::Object(self.inputs.clone());
        json!({
            "command": self.command,
            "version": VERSION,
            "inputs": inputs,
            "inputs_digest": sha256(&serde_json::to_string(&inputs).expect("json")),
            "results": Value::Object(self.results.clone()),
            "provenance": self.provenance,
        })
    }

    /// sha256 over everything except the timestamp.
    pub fn digest(&self) -> String {
        sha256(&serde_json::to_string(&self.body()).expect("json"))
    }

    pub fn to_json(&self) -> String {
        let mut v = self.body();
        let ts = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let obj = v.as_object_mut().expect("object");
        obj.insert("digest".into(), json!(self.digest()));
        obj.insert("timestamp".into(), json!(ts));
        let mut s = serde_json::to_string_pretty(&v).expect("json");
        s.push('\n');
        s
    }
}

pub fn sha256(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_ignores_timestamp_but_not_results() {
        let mut a = Report::new("x");
        a.input("n", 3).number("cost", 1, Tag::VerifiedCertificate);
        let d = a.digest();
        let j1: Value = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(j1["digest"], json!(d));
        a.result("extra", true);
        assert_ne!(a.digest(), d);
    }
}

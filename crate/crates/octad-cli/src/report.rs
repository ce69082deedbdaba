use std::time::Instant;

use octad::{Verdict, Witness};
use serde_json::{json, Map, Value};

/// Exit status for a completed command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fails,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Fails => 2,
        }
    }
}

pub struct Report {
    pub command: String,
    pub params: Map<String, Value>,
    pub fields: Map<String, Value>,
    /// Human-readable lines printed without `--json`.
    pub text: Vec<String>,
    pub seed: u64,
    pub started: Instant,
    pub status: Status,
}

impl Report {
    pub fn new(command: String, seed: u64) -> Self {
        Report {
            command,
            params: Map::new(),
            fields: Map::new(),
            text: Vec::new(),
            seed,
            started: Instant::now(),
            status: Status::Ok,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.to_string(), value.into());
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn render(&self, as_json: bool, timing: bool) -> String {
        let millis = self.started.elapsed().as_millis() as u64;
        if as_json {
            let mut out = Map::new();
            out.insert("command".into(), Value::String(self.command.clone()));
            out.insert("params".into(), Value::Object(self.params.clone()));
            for (k, v) in &self.fields {
                out.insert(k.clone(), v.clone());
            }
            out.insert("seed".into(), json!(self.seed));
            if timing {
                out.insert("millis".into(), json!(millis));
            }
            serde_json::to_string_pretty(&Value::Object(out)).expect("report serializes")
        } else {
            let mut lines = self.text.clone();
            lines.push(format!("seed: {}", self.seed));
            if timing {
                lines.push(format!("time: {millis} ms"));
            }
            lines.join("\n")
        }
    }
}

/// Witness JSON with basis labels attached to monomial and sample witnesses.
pub fn witness_json(w: &Witness, labels: &[String]) -> Value {
    let mut v = w.to_json();
    if let Witness::Monomial { args, coordinate, .. } = w {
        let named: Vec<Vec<&str>> = args.iter().map(|a| a.iter().map(|&i| labels[i].as_str()).collect()).collect();
        v["basis"] = json!(named);
        if let Some(c) = coordinate {
            v["coordinate_label"] = json!(labels[*c]);
        }
    }
    if let Witness::Sample { coordinate: Some(c), .. } = w {
        v["coordinate_label"] = json!(labels[*c]);
    }
    v
}

pub fn witness_text(w: &Witness, labels: &[String]) -> String {
    const VARS: [&str; 4] = ["x", "y", "z", "w"];
    match w {
        Witness::Monomial { args, coordinate, value, .. } => {
            let vars: Vec<String> = args
                .iter()
                .enumerate()
                .map(|(v, a)| {
                    let names: Vec<&str> = a.iter().map(|&i| labels[i].as_str()).collect();
                    format!("{} ~ {{{}}}", VARS.get(v).copied().unwrap_or("v"), names.join(", "))
                })
                .collect();
            let at = coordinate.map(|c| format!(" at {}", labels[c])).unwrap_or_default();
            format!("monomial {}: coefficient {value}{at}", vars.join(", "))
        }
        Witness::Sample { point, coordinate, value, .. } => {
            let pts: Vec<String> = point
                .iter()
                .map(|p| format!("({})", p.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")))
                .collect();
            let at = coordinate.map(|c| format!(" at {}", labels[c])).unwrap_or_default();
            format!("sample {}: defect {value}{at}", pts.join(" "))
        }
        Witness::Relation { relation, .. } => format!("relation {relation} fails"),
        Witness::Product { left, right, product } => {
            let p: Vec<String> = product.iter().map(|s| s.to_string()).collect();
            format!("{left}*{right} = ({}) leaves the lattice", p.join(", "))
        }
    }
}

pub fn verdict_word(v: &Verdict) -> &'static str {
    if v.holds() {
        "Holds"
    } else {
        "Fails"
    }
}

use serde_json::{json, Value};

use crate::io::Input;

pub const SCHEMA_VERSION: u32 = 1;

/// What a command produced: text lines (the last one the headline value),
/// a JSON result and whether all checks held.
pub struct Report {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub lines: Vec<String>,
    pub result: Value,
    pub ok: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            inputs: Vec::new(),
            lines: Vec::new(),
            result: Value::Null,
            ok: true,
        }
    }

    pub fn input(&mut self, i: &Input) {
        self.inputs.push((i.path.display().to_string(), i.sha256.clone()));
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// Headline value: last text line and `result.value`.
    pub fn value(&mut self, v: impl ToString, result: Value) {
        self.lines.push(v.to_string());
        self.result = result;
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let inputs: Vec<Value> = self
                .inputs
                .iter()
                .map(|(p, h)| json!({"path": p, "sha256": h}))
                .collect();
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": self.command,
                "inputs": inputs,
                "ok": self.ok,
                "result": self.result,
            });
            serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n"
        } else {
            let mut s = self.lines.join("\n");
            s.push('\n');
            s
        }
    }
}

use serde::Serialize;
use serde_json::{Map, Value};

/// One pass/fail decision.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of cases examined.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, checked: usize) -> Self {
        Check {
            name: name.into(),
            passed,
            checked,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// Output of one command. Both output formats are rendered from this, so
/// they carry the same decisions.
#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub fields: Map<String, Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            fields: Map::new(),
            checks: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.into(), value.into());
        self
    }

    pub fn check(&mut self, check: Check) -> &mut Self {
        self.checks.push(check);
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("command".into(), self.command.clone().into());
        for (k, v) in &self.fields {
            doc.insert(k.clone(), v.clone());
        }
        if !self.checks.is_empty() {
            doc.insert(
                "checks".into(),
                serde_json::to_value(&self.checks).expect("checks serialize"),
            );
        }
        doc.insert("passed".into(), self.passed().into());
        Value::Object(doc)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for (k, v) in &self.fields {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("  {k}: {shown}\n"));
        }
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {} ({} checked)", c.name, c.checked));
            if let Some(d) = &c.detail {
                out.push_str(&format!(": {d}"));
            }
            out.push('\n');
        }
        out.push_str(if self.passed() {
            "result: pass\n"
        } else {
            "result: fail\n"
        });
        out
    }
}

/// Error document for JSON mode.
pub fn error_json(command: &str, kind: &str, message: &str) -> Value {
    serde_json::json!({
        "command": command,
        "error": { "kind": kind, "message": message },
        "passed": false,
    })
}

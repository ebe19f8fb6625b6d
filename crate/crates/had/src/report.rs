//! The machine-readable report emitted next to the human-readable output.
//! The JSON schema is versioned; `exit_status` is the scripting contract:
//! 0 = all checks passed, 1 = a verification failed, 2 = input error.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct JsonCheck {
    pub id: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct JsonReport {
    pub schema_version: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<JsonCheck>,
    pub notes: Vec<String>,
    pub derived_outputs: Vec<String>,
    pub exit_status: i32,
}

impl JsonReport {
    pub fn new(command: &str) -> Self {
        JsonReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            seed: None,
            checks: Vec::new(),
            notes: Vec::new(),
            derived_outputs: Vec::new(),
            exit_status: 0,
        }
    }

    pub fn from_check_report(command: &str, r: &algebroid::CheckReport) -> Self {
        let mut out = Self::new(command);
        out.absorb(r);
        out
    }

    pub fn absorb(&mut self, r: &algebroid::CheckReport) {
        for item in &r.items {
            self.checks.push(JsonCheck {
                id: item.id.clone(),
                pass: item.pass,
                witness: item.witness.clone(),
            });
        }
        self.notes.extend(r.notes.iter().cloned());
    }

    pub fn check(&mut self, id: &str, pass: bool, witness: Option<String>) {
        self.checks.push(JsonCheck { id: id.into(), pass, witness });
    }

    pub fn finalize(&mut self) -> i32 {
        if self.exit_status == 0 && self.checks.iter().any(|c| !c.pass) {
            self.exit_status = 1;
        }
        self.exit_status
    }

    /// The human-readable rendering printed to standard output.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        for c in &self.checks {
            match (&c.pass, &c.witness) {
                (true, _) => out.push_str(&format!("check {}: pass\n", c.id)),
                (false, Some(w)) => {
                    out.push_str(&format!("check {}: FAIL (witness {w})\n", c.id))
                }
                (false, None) => out.push_str(&format!("check {}: FAIL\n", c.id)),
            }
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        for d in &self.derived_outputs {
            out.push_str(&format!("derived: {d}\n"));
        }
        let verdict = match self.exit_status {
            0 => "ok",
            1 => "verification failed",
            _ => "input error",
        };
        out.push_str(&format!("result: {verdict} (exit {})\n", self.exit_status));
        out
    }
}

//! Pass/fail reports produced by the structure validators.

/// One verified identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckItem {
    /// Stable identifier, e.g. `"axiom_iii"` or `"cocycle_cuentas_at_unit"`.
    pub id: String,
    pub pass: bool,
    /// Witness coordinates of the first failure, when there is one.
    pub witness: Option<String>,
}

/// The full report of a validation run. Running the same checks twice
/// yields an identical report; nothing here depends on iteration order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
    /// Free-form records, e.g. which comultiplication convention was used.
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, id: &str) {
        self.items.push(CheckItem { id: id.into(), pass: true, witness: None });
    }

    pub fn fail(&mut self, id: &str, witness: Option<String>) {
        self.items.push(CheckItem { id: id.into(), pass: false, witness });
    }

    pub fn record(&mut self, id: &str, ok: bool, witness: Option<String>) {
        if ok {
            self.pass(id);
        } else {
            self.fail(id, witness);
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.items.iter().find(|i| !i.pass)
    }
}

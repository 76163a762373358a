//! Tree-shaped check reports shared by the verifiers and the CLI.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

/// One named check; `witness` locates a failure, `value` carries an exact
/// result string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Check>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Check {
            name: name.into(),
            status,
            witness: None,
            value: None,
            children: Vec::new(),
        }
    }

    pub fn pass(name: impl Into<String>) -> Self {
        Self::new(name, Status::Pass)
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self::new(name, Status::Fail).with_witness(witness)
    }

    pub fn skip(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Self::new(name, Status::Skip).with_witness(reason)
    }

    /// Pass or fail depending on `ok`.
    pub fn from_bool(name: impl Into<String>, ok: bool) -> Self {
        Self::new(name, if ok { Status::Pass } else { Status::Fail })
    }

    /// A group whose status is failing iff some child fails.
    pub fn group(name: impl Into<String>, children: Vec<Check>) -> Self {
        let failed = children.iter().any(|c| c.status == Status::Fail);
        Check {
            name: name.into(),
            status: if failed { Status::Fail } else { Status::Pass },
            witness: None,
            value: None,
            children,
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn with_value(mut self, v: impl Into<String>) -> Self {
        self.value = Some(v.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    /// Depth-first search for a check by name.
    pub fn find(&self, name: &str) -> Option<&Check> {
        if self.name == name {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(name))
    }

    fn render(&self, depth: usize, out: &mut String) {
        let _ = write!(out, "{}[{}] {}", "  ".repeat(depth), self.status.tag(), self.name);
        if let Some(v) = &self.value {
            let _ = write!(out, " = {v}");
        }
        if let Some(w) = &self.witness {
            let _ = write!(out, " ({w})");
        }
        out.push('\n');
        for c in &self.children {
            c.render(depth + 1, out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub status: Status,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>, checks: Vec<Check>) -> Self {
        let failed = checks.iter().any(|c| c.status == Status::Fail);
        Report {
            title: title.into(),
            status: if failed { Status::Fail } else { Status::Pass },
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find_map(|c| c.find(name))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("[{}] {}\n", self.status.tag(), self.title);
        for c in &self.checks {
            c.render(1, &mut out);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

//! Pass/fail trees with exact witnesses.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Report>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            pass: true,
            witness: None,
            children: Vec::new(),
        }
    }

    /// Leaf check. Failing leaves always carry a witness.
    pub fn check(name: impl Into<String>, pass: bool, witness: impl Into<String>) -> Self {
        let w = witness.into();
        Report {
            name: name.into(),
            pass,
            witness: if w.is_empty() && !pass {
                Some("(no detail)".into())
            } else if w.is_empty() {
                None
            } else {
                Some(w)
            },
            children: Vec::new(),
        }
    }

    /// Appends a leaf check.
    pub fn leaf(&mut self, name: impl Into<String>, pass: bool, witness: impl Into<String>) {
        self.push(Report::check(name, pass, witness));
    }

    pub fn push(&mut self, child: Report) {
        if !child.pass {
            self.pass = false;
        }
        self.children.push(child);
    }

    pub fn with(mut self, child: Report) -> Self {
        self.push(child);
        self
    }

    pub fn failures(&self) -> Vec<&Report> {
        let mut out = Vec::new();
        self.collect_failures(&mut out);
        out
    }

    fn collect_failures<'a>(&'a self, out: &mut Vec<&'a Report>) {
        if !self.pass && self.children.iter().all(|c| c.pass) {
            out.push(self);
        }
        for c in &self.children {
            c.collect_failures(out);
        }
    }

    pub fn first_failure(&self) -> Option<&Report> {
        self.failures().into_iter().next()
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes"),
            Format::Text => {
                if self.pass && self.children.is_empty() && self.witness.is_none() {
                    return "all checks passed\n".into();
                }
                let mut s = String::new();
                self.text(0, &mut s);
                if self.pass {
                    s.push_str("all checks passed\n");
                } else {
                    s.push_str(&format!("{} check(s) failed\n", self.failures().len()));
                }
                s
            }
        }
    }

    fn text(&self, depth: usize, out: &mut String) {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("{}[{tag}] {}", "  ".repeat(depth), self.name));
        if let Some(w) = &self.witness {
            if w.contains('\n') {
                out.push(':');
                for line in w.lines() {
                    out.push_str(&format!("\n{}  {line}", "  ".repeat(depth)));
                }
            } else {
                out.push_str(&format!(": {w}"));
            }
        }
        out.push('\n');
        for c in &self.children {
            c.text(depth + 1, out);
        }
    }
}

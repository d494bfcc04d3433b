use serde::Serialize;

/// One line of a report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassEntry {
    pub s_coeff: i64,
    pub constant: i64,
    pub euler_char: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Component {
    pub label: String,
    pub shape: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessEntry {
    pub components: Vec<Component>,
    pub multiplicities: Vec<usize>,
    pub target: Vec<usize>,
    pub pieces: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Sampling {
    pub seed: u64,
    pub count: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub group: String,
    pub checks: Vec<CheckEntry>,
    pub witness: Option<WitnessEntry>,
    pub sampling: Option<Sampling>,
    pub status: &'static str,
}

impl Report {
    pub fn new(command: String, group: String) -> Report {
        Report {
            command,
            group,
            checks: Vec::new(),
            witness: None,
            sampling: None,
            status: "pass",
        }
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>, witness: Option<String>) {
        self.checks.push(CheckEntry {
            name: name.into(),
            passed,
            detail: detail.into(),
            witness,
            class: None,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.sampling.as_ref().is_none_or(|s| s.failures == 0)
    }

    /// Sets the status from the checks and returns the exit code.
    pub fn finish(&mut self) -> u8 {
        let ok = self.passed();
        self.status = if ok { "pass" } else { "fail" };
        u8::from(!ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\ngroup: {}\n", self.command, self.group);
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{mark} {}: {}\n", c.name, c.detail));
            if let Some(w) = &c.witness {
                out.push_str(&format!("     witness: {w}\n"));
            }
        }
        if let Some(w) = &self.witness {
            out.push_str(&format!("witness: {} components, {} pieces\n", w.components.len(), w.pieces));
            for comp in &w.components {
                out.push_str(&format!("  {} = {}\n", comp.label, comp.shape));
            }
            if !w.multiplicities.is_empty() {
                out.push_str(&format!(
                    "multiplicities: ({}, {}), target ({}, {})\n",
                    w.multiplicities[0], w.multiplicities[1], w.target[0], w.target[1]
                ));
            }
        }
        if let Some(s) = &self.sampling {
            out.push_str(&format!("sampling: seed {}, {} round trips, {} failures\n", s.seed, s.count, s.failures));
        }
        out.push_str(&format!("status: {}\n", self.status));
        out
    }
}

//! Run reports: command, input digests, outputs and a pass/fail list.  The body is
//! deterministic; timing is printed after it and is not covered by the digest.

use std::fmt;
use std::time::Duration;

use sha2::{Digest, Sha256};

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunReport {
    pub command: String,
    /// `(name, sha256)` in the order given.
    pub inputs: Vec<(String, String)>,
    pub outputs: Vec<(String, String)>,
    pub assertions: Vec<Assertion>,
    pub timing: Option<Duration>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport { command: command.into(), ..Default::default() }
    }

    pub fn input(&mut self, name: impl Into<String>, text: &str) -> &mut Self {
        self.inputs.push((name.into(), sha256_hex(text)));
        self
    }

    pub fn output(&mut self, key: impl Into<String>, value: impl fmt::Display) -> &mut Self {
        self.outputs.push((key.into(), value.to_string()));
        self
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) -> &mut Self {
        self.assertions.push(Assertion { name: name.into(), pass, detail: detail.into() });
        self
    }

    pub fn all_pass(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    /// Everything except timing.
    pub fn body(&self) -> String {
        let mut s = format!("command: {}\n", self.command);
        for (name, sha) in &self.inputs {
            s.push_str(&format!("input: {name} sha256={sha}\n"));
        }
        for (key, value) in &self.outputs {
            if value.contains('\n') {
                s.push_str(&format!("{key}:\n"));
                for line in value.lines() {
                    s.push_str(if line.is_empty() { "|\n" } else { "| " });
                    if !line.is_empty() {
                        s.push_str(line);
                        s.push('\n');
                    }
                }
            } else {
                s.push_str(&format!("{key}: {value}\n"));
            }
        }
        for a in &self.assertions {
            let tag = if a.pass { "PASS" } else { "FAIL" };
            if a.detail.is_empty() {
                s.push_str(&format!("{tag} {}\n", a.name));
            } else {
                s.push_str(&format!("{tag} {}: {}\n", a.name, a.detail));
            }
        }
        s
    }

    pub fn digest(&self) -> String {
        sha256_hex(&self.body())
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body())?;
        writeln!(f, "report-sha256: {}", self.digest())?;
        if let Some(t) = self.timing {
            writeln!(f, "---\ntiming-ms: {}", t.as_millis())?;
        }
        Ok(())
    }
}

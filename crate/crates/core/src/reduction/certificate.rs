//! Certificate text and replay.
//!
//! ```text
//! ssred-certificate v1
//! probes: 3
//! input-sha256: ...
//! lift-sha256: ...
//! begin-input
//! | [group]
//! ...
//! end-input
//!
//! node 0
//! field: Q
//! ...
//! ```

use std::fmt;
use std::str::FromStr;

use super::driver::{run_reduction_with, tautological_lifter, NodeKind, ReductionNode};
use super::step::StepPlan;
use super::{RamModulus, ReductionError};
use crate::fixture::{formal_sections, galois_sections, render, Fixture};
use crate::gw::LocalPrescription;
use crate::ldata::{FormalDatum, GaloisDatum};
use crate::par::Mode;
use crate::report::sha256_hex;

const HEADER: &str = "ssred-certificate v1";

fn datum_digest(d: &GaloisDatum) -> String {
    sha256_hex(&render(galois_sections("node", d)))
}

fn lift_digest(l: &FormalDatum) -> String {
    sha256_hex(&render(formal_sections("lift", l)))
}

fn list(xs: &[String]) -> String {
    if xs.is_empty() {
        "-".into()
    } else {
        xs.join(" ")
    }
}

fn fmt_modulus(m: Option<RamModulus>) -> String {
    m.map_or("semistable".into(), |m| m.to_string())
}

pub(crate) fn node_header(path: &str, d: &GaloisDatum, m: Option<RamModulus>) -> String {
    format!("node {path}\nfield: {}\ndatum-sha256: {}\nmodulus: {}\n", d.field(), datum_digest(d), fmt_modulus(m))
}

pub(crate) fn plan_block(plan: &StepPlan) -> String {
    let mut s = format!("T: {}\np: {}\n", list(&plan.t), plan.p);
    for e in &plan.eta {
        s.push_str(&format!("eta: {e}\n"));
    }
    for (label, k) in &plan.links {
        let k: Vec<String> = k.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!("link: {label} = {}\n", k.join(",")));
    }
    s.push_str(&format!("v0: none\nw0: {}\nprobes: {}\n", list(&plan.w0), list(&plan.probes)));
    s
}

fn node_block(n: &ReductionNode, out: &mut String) {
    out.push_str(&node_header(&n.path, &n.datum, n.modulus));
    match &n.kind {
        NodeKind::Leaf => out.push_str("leaf: semistable\n"),
        NodeKind::Step(s) => {
            out.push_str(&plan_block(&s.plan));
            for b in &s.branches {
                let aux: Vec<String> = b.auxiliary.iter().map(|q| q.to_string()).collect();
                out.push_str(&format!(
                    "branch: {} | {} | aux {} | child {} {}\n",
                    b.probe,
                    b.character,
                    list(&aux),
                    b.child.path,
                    fmt_modulus(b.child.modulus)
                ));
            }
            out.push_str(&format!("descent: twist {} of {} | good {}\n", s.twist, s.candidates, list(&s.good)));
        }
    }
    out.push_str(&format!("lift-sha256: {}\n", lift_digest(&n.lift)));
}

/// A finished reduction: the input, the probe budget and the node tree.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub input: GaloisDatum,
    pub budget: usize,
    pub root: ReductionNode,
}

impl Certificate {
    pub fn new(input: GaloisDatum, budget: usize, root: ReductionNode) -> Self {
        Certificate { input, budget, root }
    }

    pub fn lift(&self) -> &FormalDatum {
        &self.root.lift
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let input = render(galois_sections("input", &self.input));
        writeln!(f, "{HEADER}")?;
        writeln!(f, "probes: {}", self.budget)?;
        writeln!(f, "input-sha256: {}", sha256_hex(&input))?;
        writeln!(f, "lift-sha256: {}", lift_digest(&self.root.lift))?;
        writeln!(f, "depth: {}", self.root.depth())?;
        writeln!(f, "begin-input")?;
        for line in input.lines() {
            if line.is_empty() {
                writeln!(f, "|")?;
            } else {
                writeln!(f, "| {line}")?;
            }
        }
        writeln!(f, "end-input")?;
        for n in self.root.nodes() {
            let mut s = String::new();
            node_block(n, &mut s);
            write!(f, "\n{s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ReplayReport {
    pub checks: Vec<ReplayCheck>,
}

impl ReplayReport {
    fn push(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(ReplayCheck { name: name.into(), pass, detail: detail.into() });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl fmt::Display for ReplayReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{tag} {}", c.name)?;
            } else {
                writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
}

/// Re-runs the recorded reduction with the tautological lifter and compares the text,
/// then checks the recorded moduli and local characters on their own.
pub fn replay(text: &str) -> Result<ReplayReport, ReductionError> {
    let bad = |m: &str| ReductionError::BadCertificate(m.to_string());
    if text.lines().next() != Some(HEADER) {
        return Err(bad("missing certificate header"));
    }
    let budget: usize = field(text, "probes").and_then(|s| s.parse().ok()).ok_or_else(|| bad("missing probe budget"))?;
    let mut input = String::new();
    let mut inside = false;
    let mut closed = false;
    for line in text.lines() {
        match line {
            "begin-input" => inside = true,
            "end-input" => {
                closed = inside;
                break;
            }
            l if inside => {
                let body = l.strip_prefix('|').ok_or_else(|| bad("input line without `|`"))?;
                input.push_str(body.strip_prefix(' ').unwrap_or(body));
                input.push('\n');
            }
            _ => {}
        }
    }
    if !closed {
        return Err(bad("missing begin-input/end-input block"));
    }

    let mut report = ReplayReport::default();
    let digest = field(text, "input-sha256").unwrap_or_default();
    report.push("input digest", sha256_hex(&input) == digest, "");
    let fixture = Fixture::parse(&input)?;
    let d = fixture.first_galois().map(|(_, d)| d.clone()).ok_or_else(|| bad("input has no Galois datum"))?;

    let mut eta_ok = true;
    let mut descent_ok = true;
    for l in text.lines() {
        if let Some(e) = l.strip_prefix("eta: ") {
            eta_ok &= LocalPrescription::from_str(e).is_ok_and(|p| p.to_string() == e);
        }
    }
    report.push("local characters round-trip", eta_ok, "");

    let mut parent: Option<RamModulus> = None;
    let mut edges = 0;
    let mut decreasing = true;
    for l in text.lines() {
        if let Some(m) = l.strip_prefix("modulus: ") {
            parent = m.parse().ok();
        } else if let Some(b) = l.strip_prefix("branch: ") {
            edges += 1;
            let child = b.rsplit(' ').next().unwrap_or_default();
            decreasing &= match (parent, child) {
                (Some(_), "semistable") => true,
                (Some(p), c) => c.parse::<RamModulus>().is_ok_and(|c| c < p),
                (None, _) => false,
            };
        } else if let Some(dl) = l.strip_prefix("descent: twist ") {
            descent_ok &= dl.split(' ').nth(2).is_some_and(|c| c.parse::<usize>().is_ok_and(|c| c >= 2));
        }
    }
    report.push("modulus decreases on every edge", decreasing, format!("{edges} edges"));
    report.push("descent candidates recorded", descent_ok, "");

    match run_reduction_with(&d, &tautological_lifter, budget, Mode::Sequential) {
        Ok(cert) => {
            let again = cert.to_string();
            report.push("lift digest", field(text, "lift-sha256") == Some(lift_digest(cert.lift()).as_str()), "");
            let detail = if again == text {
                String::new()
            } else {
                let line = again.lines().zip(text.lines()).position(|(a, b)| a != b).map_or(0, |i| i + 1);
                format!("first difference at line {line}")
            };
            report.push("byte-identical rerun", again == text, detail);
        }
        Err(e) => report.push("rerun", false, format!("{}: {e}", e.code())),
    }
    Ok(report)
}

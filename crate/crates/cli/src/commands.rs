//! One function per verb.  Each returns a finished report; the caller prints it and
//! turns failed assertions into exit code 1.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use ssred::algebra::fmt_poly;
use ssred::builtin;
use ssred::fixture::Fixture;
use ssred::gw::{solve, DirichletCharacter, LocalPrescription};
use ssred::ldata::{CyclicExtension, Field, LData};
use ssred::par::{self, Mode};
use ssred::reduction::{compositum_tables, descend, replay, run_reduction, tautological_lifter, DescentObject};
use ssred::report::{sha256_hex, RunReport};
use ssred::transfer::{verify_strong_transfer, TransferPair};

use crate::error::CliError;

/// Reads a fixture path; `builtin:NAME` selects one of the embedded fixtures.
pub fn read_input(path: &str) -> Result<String, CliError> {
    if let Some(name) = path.strip_prefix("builtin:") {
        return builtin::builtin_fixture(name)
            .ok_or_else(|| CliError::parse("E_IO", format!("no builtin fixture `{name}` (have {})", builtin::BUILTIN_FIXTURES.join(", "))));
    }
    fs::read_to_string(path).map_err(|e| CliError::parse("E_IO", format!("{path}: {e}")))
}

fn load(report: &mut RunReport, path: &str) -> Result<Fixture, CliError> {
    let text = read_input(path)?;
    report.input(path, &text);
    Ok(Fixture::parse(&text)?)
}

fn pick_ldata<'a>(fx: &'a Fixture, name: Option<&str>) -> Result<(&'a str, &'a LData), CliError> {
    match name {
        Some(n) => fx
            .ldata
            .iter()
            .find(|(k, _)| k == n)
            .map(|(k, d)| (k.as_str(), d))
            .ok_or_else(|| CliError::parse("E_DANGLING_REF", format!("no [ldata] named `{n}`"))),
        None => fx.first_ldata().ok_or_else(|| CliError::domain("E_MISSING", "fixture has no [ldata] section")),
    }
}

fn pick_pair<'a>(fx: &'a Fixture, name: Option<&str>) -> Result<(&'a str, &'a TransferPair), CliError> {
    let found = match name {
        Some(n) => fx.pairs.iter().find(|(k, _)| k == n),
        None => fx.pairs.first(),
    };
    found
        .map(|(k, p)| (k.as_str(), p))
        .ok_or_else(|| CliError::domain("E_MISSING", format!("no [pair] section{}", name.map(|n| format!(" named `{n}`")).unwrap_or_default())))
}

pub fn lfactor(paths: &[String], place: Option<&str>, ldata: Option<&str>) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("lfactor");
    // fixtures are independent: parse and evaluate them concurrently, report in order
    let per_file = par::map(Mode::Parallel, paths, |path| -> Result<(String, Vec<(String, String)>), CliError> {
        let text = read_input(path)?;
        let fx = Fixture::parse(&text)?;
        let (name, ld) = pick_ldata(&fx, ldata)?;
        let labels: Vec<String> = match place {
            Some(l) => vec![ld.place(l)?.label.clone()],
            None => ld.places().iter().map(|p| p.label.clone()).collect(),
        };
        let mut out = Vec::new();
        for l in labels {
            let f = ld.local_factor(&l)?;
            out.push((format!("{name}@{l}"), f.to_string()));
            out.push((format!("{name}@{l} expansion"), fmt_poly(&f.expand())));
            out.push((format!("{name}@{l} semistable"), ld.semistable_at(&l)?.to_string()));
        }
        Ok((text, out))
    });
    let many = paths.len() > 1;
    for (i, (path, r)) in paths.iter().zip(per_file).enumerate() {
        let (text, out) = r?;
        report.input(path, &text);
        for (k, v) in out {
            report.output(if many { format!("[{i}] {k}") } else { k }, v);
        }
    }
    Ok(report)
}

pub fn bc(path: &str, ext: Option<&str>, ldata: Option<&str>) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("bc");
    let fx = load(&mut report, path)?;
    let (name, ld) = pick_ldata(&fx, ldata)?;
    let exts: Vec<(&String, &CyclicExtension)> = match ext {
        Some(e) => vec![fx
            .extensions
            .iter()
            .find(|(k, _)| k == e)
            .map(|(k, x)| (k, x))
            .ok_or_else(|| CliError::parse("E_DANGLING_REF", format!("no [extension] named `{e}`")))?],
        None => fx.extensions.iter().map(|(k, x)| (k, x)).collect(),
    };
    if exts.is_empty() {
        return Err(CliError::domain("E_MISSING", "fixture has no [extension] section"));
    }
    let formal = ld.to_formal()?;
    for (en, e) in exts {
        let up = ld.base_change(e)?;
        report.output(format!("{name}/{en} field"), up.field());
        for w in up.places() {
            report.output(format!("{name}/{en}@{}", w.label), up.local_factor(&w.label)?);
        }
        // the character-product formula must agree with the restricted datum wherever
        // both the datum and the cutting character are unramified
        let product = formal.base_change(e)?;
        let mut checked = 0;
        let mut bad = Vec::new();
        for v in ld.places() {
            let unram = match ld {
                LData::Galois(g) => g.unramified_at(&v.label)?,
                LData::Formal(_) => ld.semistable_at(&v.label)?,
            };
            if !unram || Field::char_value(e.chi(), v).is_none() {
                continue;
            }
            for (w, _) in e.places_above(v) {
                checked += 1;
                if up.local_factor(&w.label)? != product.local_factor(&w.label)? {
                    bad.push(w.label.clone());
                }
            }
        }
        let detail = if bad.is_empty() { format!("{checked} places") } else { format!("differs at {}", bad.join(" ")) };
        report.check(format!("{en}: restriction equals character product"), bad.is_empty(), detail);
    }
    Ok(report)
}

pub fn twist(path: &str, chi: Option<&str>, ldata: Option<&str>) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("twist");
    let fx = load(&mut report, path)?;
    let (name, ld) = pick_ldata(&fx, ldata)?;
    let chi: DirichletCharacter = match chi {
        Some(s) => s.parse()?,
        None => fx
            .extensions
            .first()
            .map(|(_, e)| e.chi().clone())
            .ok_or_else(|| CliError::parse("E_MISSING", "give --chi or an [extension] section"))?,
    };
    report.output("chi", &chi);
    let tw = ld.twist(&chi)?;
    let back = tw.twist(&chi.inv())?;
    let mut bad = Vec::new();
    for v in ld.places() {
        report.output(format!("{name}@{}", v.label), tw.local_factor(&v.label)?);
        if back.local_factor(&v.label)? != ld.local_factor(&v.label)? {
            bad.push(v.label.clone());
        }
    }
    report.check("twist by the inverse restores every factor", bad.is_empty(), bad.join(" "));
    Ok(report)
}

pub fn gw_solve(at: &[String], order: u32, avoid: &[u64]) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("gw-solve");
    let prescriptions: Vec<LocalPrescription> = at.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    for (i, p) in prescriptions.iter().enumerate() {
        report.output(format!("prescription {i}"), p);
    }
    report.output("order", order);
    let avoid: BTreeSet<u64> = avoid.iter().copied().collect();
    let sol = solve(&prescriptions, order, &avoid)?;
    report.output("character", &sol.character);
    report.output("conductor", sol.character.conductor());
    if !sol.auxiliary.is_empty() {
        report.output("auxiliary", sol.auxiliary.iter().map(u64::to_string).collect::<Vec<_>>().join(" "));
    }
    if let Some(v0) = &sol.v0 {
        report.output("v0", v0);
    }
    report.check("order is exact", sol.character.order() == order, format!("{}", sol.character.order()));
    for p in &prescriptions {
        let got = sol.character.local_component(p.p);
        report.check(format!("local component at {}", p.p), &got == p, got.to_string());
    }
    let clean = sol.character.support().iter().all(|q| !avoid.contains(q));
    report.check("unramified on the avoid set", clean, "");
    Ok(report)
}

pub fn reduce(path: &str, probes: usize, ldata: Option<&str>, out: Option<&Path>) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("reduce");
    let fx = load(&mut report, path)?;
    let (name, ld) = pick_ldata(&fx, ldata)?;
    let LData::Galois(d) = ld else {
        return Err(CliError::domain("E_NOT_GALOIS", format!("[ldata] `{name}` is not Galois-backed")));
    };
    report.output("probes", probes);
    let cert = run_reduction(d, &tautological_lifter, probes)?;
    let text = cert.to_string();
    report.output("depth", cert.root.depth());
    report.output("nodes", cert.root.nodes().len());
    report.output("leaves", cert.root.leaves());
    report.output("certificate-sha256", sha256_hex(&text));
    match out {
        Some(p) => {
            fs::write(p, &text).map_err(|e| CliError::domain("E_IO", format!("{}: {e}", p.display())))?;
            report.output("certificate", p.display());
        }
        None => {
            report.output("certificate", &text);
        }
    }
    let rerun = run_reduction(d, &tautological_lifter, probes)?.to_string();
    report.check("rerun is byte-identical", rerun == text, "");
    Ok(report)
}

pub fn replay_cmd(path: &str) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("replay");
    let text = fs::read_to_string(path).map_err(|e| CliError::parse("E_IO", format!("{path}: {e}")))?;
    report.input(path, &text);
    let r = replay(&text)?;
    for c in r.checks {
        report.check(c.name, c.pass, c.detail);
    }
    Ok(report)
}

/// The ldata over the common base field is the seed; each extension's table is the
/// ldata over its top field.
pub fn descend_cmd(path: &str) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("descend");
    let fx = load(&mut report, path)?;
    if fx.extensions.len() < 2 {
        return Err(CliError::domain("E_MISSING", "descent needs at least two [extension] sections"));
    }
    let base = fx.extensions[0].1.base().clone();
    let (seed_name, seed) = fx
        .ldata
        .iter()
        .find(|(_, d)| d.field() == &base)
        .ok_or_else(|| CliError::domain("E_MISSING", format!("no [ldata] over {base} to seed the descent")))?;
    report.output("seed", seed_name);
    let seed = seed.to_formal()?;
    let mut objects = Vec::new();
    for (en, e) in &fx.extensions {
        let (tn, table) = fx
            .ldata
            .iter()
            .find(|(_, d)| d.field() == e.top())
            .ok_or_else(|| CliError::domain("E_MISSING", format!("no [ldata] over {} for `{en}`", e.top())))?;
        report.output(format!("table {en}"), tn);
        objects.push(DescentObject { ext: e.clone(), table: table.to_formal()?, seed: Some(seed.clone()) });
    }
    let mut good = Vec::new();
    for p in seed.places() {
        if p.semistable && objects.iter().all(|o| Field::char_value(o.ext.chi(), &p.place).is_some()) {
            good.push(p.place.label.clone());
        }
    }
    report.output("good", good.join(" "));
    let comp = compositum_tables(&objects)?;
    let found = descend(&objects, &comp, &good)?;
    report.output("twist", format!("{} of {}", found.twist, found.candidates));
    for p in found.datum.places() {
        report.output(format!("descended@{}", p.place.label), &p.factor);
    }
    report.check("descent base-changes to every table", found.checked == objects.len(), format!("{} objects", found.checked));
    Ok(report)
}

pub fn complete(path: &str, pair: Option<&str>, place: Option<&str>) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("complete");
    let fx = load(&mut report, path)?;
    let (pn, tp) = pick_pair(&fx, pair)?;
    report.output("pair", pn);
    let label = match place {
        Some(l) => l.to_string(),
        None => {
            let unknown: BTreeSet<String> = tp
                .unknown(ssred::transfer::Side::Left)
                .iter()
                .chain(tp.unknown(ssred::transfer::Side::Right))
                .cloned()
                .collect();
            match unknown.len() {
                1 => unknown.into_iter().next().unwrap(),
                0 => return Err(CliError::domain("E_PRECONDITION", "no unknown factor to complete")),
                _ => return Err(CliError::domain("E_PRECONDITION", "several unknown places; choose one with --place")),
            }
        }
    };
    let (done, c) = tp.complete(&label)?;
    report.output("place", &c.label);
    report.output("filled", c.filled.map(|s| s.to_string()).unwrap_or_else(|| "none".into()));
    report.output("factor", &c.factor);
    report.output("expansion", fmt_poly(&c.factor.expand()));
    report.output("transcript", c.transcript.join("\n") + "\n");
    let v = verify_strong_transfer(&done)?;
    report.output("verification", v.to_string() + "\n");
    report.check("completed pair is strongly compatible", v.strong, "");
    report.check("epsilon data consistent", v.consistent(), "");
    Ok(report)
}

pub fn verify(path: &str, pair: Option<&str>) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("verify");
    let fx = load(&mut report, path)?;
    let (pn, tp) = pick_pair(&fx, pair)?;
    report.output("pair", pn);
    let v = verify_strong_transfer(tp)?;
    for (l, verdict) in &v.places {
        report.output(format!("place {l}"), verdict);
    }
    report.output("verdict", if v.strong { "strong" } else { "weak-only" });
    let mism = v.mismatches();
    report.check("no mismatched places", mism.is_empty(), mism.join(" "));
    report.check("epsilon data consistent", v.consistent(), "");
    Ok(report)
}

//! Data objects back to canonical fixture sections.

use super::{FixtureDocument, Section, SectionKind};
use crate::algebra::cyclo::fmt_rational;
use crate::algebra::{ArchFactor, CycNum, EpsilonDatum};
use crate::galois::{FiniteGroup, Matrix};
use crate::ldata::{FormalDatum, GaloisDatum, Place};

/// Rationals print bare, everything else as `cyc(...)`.
fn fmt_entry(c: &CycNum) -> String {
    match c.to_rational() {
        Some(r) => fmt_rational(&r),
        None => c.to_string(),
    }
}

fn fmt_matrix(m: &Matrix) -> String {
    m.rows().map(|r| r.iter().map(fmt_entry).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join(" | ")
}

fn fmt_list(xs: impl IntoIterator<Item = impl ToString>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn fmt_epsilon(e: &EpsilonDatum) -> String {
    format!("{} {}", fmt_entry(&e.root_number), fmt_rational(&e.conductor))
}

fn place_line(p: &Place, extra: &str) -> String {
    let mut s = format!("{} q={}", p.label, p.q());
    if p.e != 1 {
        s.push_str(&format!(" e={}", p.e));
    }
    s + extra
}

fn group_section(name: &str, g: &FiniteGroup) -> Section {
    let mut s = Section::new(SectionKind::Group);
    s.push("name", name).push("order", g.order().to_string());
    for row in g.table() {
        s.push("row", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
    }
    s
}

fn common_tail(s: &mut Section, epsilon: Option<&EpsilonDatum>, arch: Option<&ArchFactor>) {
    if let Some(e) = epsilon {
        s.push("epsilon", fmt_epsilon(e));
    }
    if let Some(a) = arch {
        s.push("arch", a.to_string());
    }
}

/// `[group]`, `[rep]`, `[places]` and `[ldata]` sections named after `name`.
pub fn galois_sections(name: &str, d: &GaloisDatum) -> Vec<Section> {
    let (gname, rname, pname) = (format!("{name}-group"), format!("{name}-rep"), format!("{name}-places"));
    let g = d.group();
    let mut rep = Section::new(SectionKind::Rep);
    rep.push("name", rname.clone()).push("group", gname.clone()).push("dim", d.rep().dim().to_string());
    for &x in g.generators() {
        rep.push("gen", format!("{x} = {}", fmt_matrix(d.rep().matrix(x))));
    }
    let mut places = Section::new(SectionKind::Places);
    places.push("name", pname.clone()).push("group", gname.clone());
    for p in d.places() {
        let mut extra = format!(" frob={}", p.frob);
        if p.inertia.len() > 1 {
            extra.push_str(&format!(" inertia={}", fmt_list(&p.inertia)));
        }
        if p.monodromy_rank() > 0 {
            extra.push_str(&format!(" mono={}", fmt_list(&p.mono)));
        }
        places.push("place", place_line(&p.place, &extra));
    }
    let mut ld = Section::new(SectionKind::LData);
    ld.push("name", name).push("kind", "galois");
    if !d.field().tower().is_empty() {
        ld.push("field", d.field().to_string());
    }
    ld.push("rep", rname).push("places", pname);
    common_tail(&mut ld, d.epsilon(), d.arch());
    vec![group_section(&gname, g), rep, places, ld]
}

/// `[places]` and `[ldata]` sections for a Satake table.
pub fn formal_sections(name: &str, d: &FormalDatum) -> Vec<Section> {
    let pname = format!("{name}-places");
    let mut places = Section::new(SectionKind::Places);
    places.push("name", pname.clone());
    for p in d.places() {
        places.push("place", place_line(&p.place, ""));
    }
    let mut ld = Section::new(SectionKind::LData);
    ld.push("name", name).push("kind", "formal");
    if !d.field().tower().is_empty() {
        ld.push("field", d.field().to_string());
    }
    ld.push("places", pname);
    for p in d.places() {
        ld.push(&p.place.label, p.factor.to_string());
    }
    let unstable: Vec<&str> = d.places().iter().filter(|p| !p.semistable).map(|p| p.place.label.as_str()).collect();
    if !unstable.is_empty() {
        ld.push("unstable", unstable.join(" "));
    }
    common_tail(&mut ld, d.epsilon(), d.arch());
    vec![places, ld]
}

pub fn render(sections: Vec<Section>) -> String {
    FixtureDocument { sections }.to_string()
}

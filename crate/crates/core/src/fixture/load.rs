//! Validation of a parsed document into groups, representations, places and L-data.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_rational::Rational64;

use super::{parse_document, split_top, tokens, Entry, FixtureDocument, FixtureError, Section, SectionKind};
use crate::algebra::cyclo::parse_rational;
use crate::algebra::root::parse_rat64;
use crate::algebra::{prime_power, ArchFactor, CycNum, EpsilonDatum, InverseRoot, LocalFactor, RootOfUnity};
use crate::galois::{FiniteGroup, Matrix, OneDimChar, Representation};
use crate::gw::DirichletCharacter;
use crate::ldata::{CyclicExtension, Field, FormalDatum, FormalPlace, GaloisDatum, GaloisPlace, LData, Place};
use crate::transfer::TransferPair;

/// One `place:` line of a `[places]` section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceSpec {
    pub line: usize,
    pub place: Place,
    pub frob: Option<usize>,
    pub inertia: Vec<usize>,
    pub mono: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct PlaceTable {
    pub group: Option<String>,
    pub places: Vec<PlaceSpec>,
}

/// A validated fixture: every named object, in document order.
#[derive(Clone, Debug, Default)]
pub struct Fixture {
    pub document: FixtureDocument,
    pub groups: Vec<(String, Arc<FiniteGroup>)>,
    pub reps: Vec<(String, String, Representation)>,
    pub chars: Vec<(String, OneDimChar)>,
    pub places: Vec<(String, PlaceTable)>,
    pub ldata: Vec<(String, LData)>,
    pub extensions: Vec<(String, CyclicExtension)>,
    pub pairs: Vec<(String, TransferPair)>,
}

fn lookup<'a, T>(items: &'a [(String, T)], name: &str) -> Option<&'a T> {
    items.iter().find(|(n, _)| n == name).map(|(_, t)| t)
}

const LDATA_KEYS: [&str; 8] = ["name", "kind", "field", "rep", "places", "epsilon", "arch", "unstable"];

struct Reader<'a> {
    section: &'a Section,
}

impl<'a> Reader<'a> {
    fn check_keys(&self, allowed: &[&str], repeatable: &[&str]) -> Result<(), FixtureError> {
        let mut seen = BTreeSet::new();
        for e in &self.section.entries {
            if !allowed.contains(&e.key.as_str()) {
                return Err(FixtureError::syntax(e.line, format!("unknown key `{}` in [{}]", e.key, self.section.kind.name())));
            }
            if !repeatable.contains(&e.key.as_str()) && !seen.insert(e.key.clone()) {
                return Err(FixtureError::syntax(e.line, format!("repeated key `{}`", e.key)));
            }
        }
        Ok(())
    }

    fn required(&self, key: &str) -> Result<&'a Entry, FixtureError> {
        self.section
            .get(key)
            .ok_or_else(|| FixtureError::syntax(self.section.line, format!("[{}] needs `{key}:`", self.section.kind.name())))
    }
}

fn parse_usizes(e: &Entry, s: &str) -> Result<Vec<usize>, FixtureError> {
    tokens(s)
        .iter()
        .map(|t| t.parse::<usize>().map_err(|_| FixtureError::syntax(e.line, format!("expected an integer, got `{t}`"))))
        .collect()
}

fn parse_matrix(e: &Entry, s: &str) -> Result<Matrix, FixtureError> {
    let rows = split_top(s, |c| c == '|')
        .iter()
        .map(|r| {
            split_top(r, char::is_whitespace)
                .iter()
                .map(|t| t.parse::<CycNum>().map_err(|err| FixtureError::syntax(e.line, err.to_string())))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(rows).ok_or_else(|| FixtureError::syntax(e.line, "matrix is not square"))
}

fn parse_factor(e: &Entry, q: u64) -> Result<LocalFactor, FixtureError> {
    if e.value.trim() == "1" {
        return Ok(LocalFactor::trivial(q));
    }
    let roots = tokens(&e.value)
        .iter()
        .map(|t| t.parse::<InverseRoot>().map_err(|err| FixtureError::syntax(e.line, err.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    LocalFactor::new(q, roots).map_err(|err| FixtureError::invalid(e.line, err))
}

fn parse_epsilon(e: &Entry) -> Result<EpsilonDatum, FixtureError> {
    let t = tokens(&e.value);
    if t.len() != 2 {
        return Err(FixtureError::syntax(e.line, "expected `epsilon: W Delta`"));
    }
    let w: CycNum = t[0].parse().map_err(|err: crate::algebra::AlgebraError| FixtureError::syntax(e.line, err.to_string()))?;
    let d = parse_rational(&t[1]).map_err(|err| FixtureError::syntax(e.line, err.to_string()))?;
    EpsilonDatum::new(w, d).map_err(|err| FixtureError::invalid(e.line, err))
}

fn parse_arch(e: &Entry) -> Result<ArchFactor, FixtureError> {
    if e.value.trim() == "-" {
        return Ok(ArchFactor::default());
    }
    let shifts = tokens(&e.value)
        .iter()
        .map(|t| parse_rat64(t).map_err(|err| FixtureError::syntax(e.line, err.to_string())))
        .collect::<Result<Vec<Rational64>, _>>()?;
    ArchFactor::new(shifts).map_err(|err| FixtureError::invalid(e.line, err))
}

fn parse_place(e: &Entry) -> Result<PlaceSpec, FixtureError> {
    let t = split_top(&e.value, char::is_whitespace);
    let label = t.first().ok_or_else(|| FixtureError::syntax(e.line, "place needs a label"))?;
    let mut q = None;
    let mut ee = 1u32;
    let mut frob = None;
    let mut inertia = vec![0];
    let mut mono = Vec::new();
    for kv in &t[1..] {
        let (k, v) = kv.split_once('=').ok_or_else(|| FixtureError::syntax(e.line, format!("expected key=value, got `{kv}`")))?;
        let num = |v: &str| v.parse::<u64>().map_err(|_| FixtureError::syntax(e.line, format!("bad number `{v}`")));
        match k {
            "q" => q = Some(num(v)?),
            "e" => ee = num(v)? as u32,
            "frob" => frob = Some(num(v)? as usize),
            "inertia" => inertia = parse_usizes(e, v)?,
            "mono" => mono = parse_usizes(e, v)?.into_iter().map(|b| b as u32).collect(),
            _ => return Err(FixtureError::syntax(e.line, format!("unknown place attribute `{k}`"))),
        }
    }
    let q = q.ok_or_else(|| FixtureError::syntax(e.line, format!("place {label} needs q=")))?;
    let (ell, f) = prime_power(q).ok_or_else(|| FixtureError::invalid(e.line, format!("{q} is not a prime power")))?;
    let place = Place::new(label.clone(), ell, f, ee).map_err(|err| FixtureError::invalid(e.line, err))?;
    Ok(PlaceSpec { line: e.line, place, frob, inertia, mono })
}

impl Fixture {
    /// Parses and validates; the first error carries its line number.
    pub fn parse(text: &str) -> Result<Fixture, FixtureError> {
        let document = parse_document(text)?;
        let mut fx = Fixture { document: document.clone(), ..Default::default() };
        let mut names = BTreeSet::new();
        for s in &document.sections {
            let name = s.name().ok_or_else(|| FixtureError::syntax(s.line, format!("[{}] needs `name:`", s.kind.name())))?;
            if !names.insert((s.kind, name.to_string())) {
                return Err(FixtureError::syntax(s.line, format!("duplicate [{}] name `{name}`", s.kind.name())));
            }
            let r = Reader { section: s };
            match s.kind {
                SectionKind::Group => fx.load_group(&r, name)?,
                SectionKind::Rep => fx.load_rep(&r, name)?,
                SectionKind::Char => fx.load_char(&r, name)?,
                SectionKind::Places => fx.load_places(&r, name)?,
                SectionKind::LData => fx.load_ldata(&r, name)?,
                SectionKind::Extension => fx.load_extension(&r, name)?,
                SectionKind::Pair => fx.load_pair(&r, name)?,
            }
        }
        Ok(fx)
    }

    fn load_group(&mut self, r: &Reader, name: &str) -> Result<(), FixtureError> {
        r.check_keys(&["name", "order", "row", "perm"], &["row", "perm"])?;
        let s = r.section;
        let rows: Vec<&Entry> = s.all("row").collect();
        let perms: Vec<&Entry> = s.all("perm").collect();
        let g = match (rows.is_empty(), perms.is_empty()) {
            (false, true) => {
                let table = rows.iter().map(|e| parse_usizes(e, &e.value)).collect::<Result<Vec<_>, _>>()?;
                FiniteGroup::from_table(table).map_err(|err| FixtureError::invalid(rows[0].line, err))?
            }
            (true, false) => {
                let gens = perms.iter().map(|e| parse_usizes(e, &e.value)).collect::<Result<Vec<_>, _>>()?;
                FiniteGroup::from_permutations(&gens).map_err(|err| FixtureError::invalid(perms[0].line, err))?
            }
            (true, true) => return Err(FixtureError::syntax(s.line, "[group] needs `row:` or `perm:` lines")),
            (false, false) => return Err(FixtureError::syntax(s.line, "[group] mixes `row:` and `perm:`")),
        };
        if let Some(e) = s.get("order") {
            let n: usize = e.value.parse().map_err(|_| FixtureError::syntax(e.line, "bad order"))?;
            if n != g.order() {
                return Err(FixtureError::invalid(e.line, format!("declared order {n}, table has {}", g.order())));
            }
        }
        self.groups.push((name.to_string(), Arc::new(g)));
        Ok(())
    }

    fn group_ref(&self, e: &Entry) -> Result<Arc<FiniteGroup>, FixtureError> {
        lookup(&self.groups, &e.value)
            .cloned()
            .ok_or_else(|| FixtureError::dangling(e.line, format!("no [group] named `{}`", e.value)))
    }

    fn load_rep(&mut self, r: &Reader, name: &str) -> Result<(), FixtureError> {
        r.check_keys(&["name", "group", "dim", "gen"], &["gen"])?;
        let ge = r.required("group")?;
        let g = self.group_ref(ge)?;
        let mut images = Vec::new();
        for e in r.section.all("gen") {
            let (el, m) = e.value.split_once('=').ok_or_else(|| FixtureError::syntax(e.line, "expected `gen: g = matrix`"))?;
            let el: usize = el.trim().parse().map_err(|_| FixtureError::syntax(e.line, format!("bad element `{}`", el.trim())))?;
            images.push((el, parse_matrix(e, m)?));
        }
        let rep = Representation::from_images(g, &images).map_err(|err| FixtureError::invalid(r.section.line, err))?;
        if let Some(e) = r.section.get("dim") {
            if e.value.parse::<usize>().ok() != Some(rep.dim()) {
                return Err(FixtureError::invalid(e.line, format!("declared dimension {}, matrices have {}", e.value, rep.dim())));
            }
        }
        self.reps.push((name.to_string(), ge.value.clone(), rep));
        Ok(())
    }

    fn load_char(&mut self, r: &Reader, name: &str) -> Result<(), FixtureError> {
        r.check_keys(&["name", "group", "values"], &[])?;
        let g = self.group_ref(r.required("group")?)?;
        let ve = r.required("values")?;
        let values = tokens(&ve.value)
            .iter()
            .map(|t| t.parse::<RootOfUnity>().map_err(|err| FixtureError::syntax(ve.line, err.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let ch = OneDimChar::new(g, values).map_err(|err| FixtureError::invalid(ve.line, err))?;
        self.chars.push((name.to_string(), ch));
        Ok(())
    }

    fn load_places(&mut self, r: &Reader, name: &str) -> Result<(), FixtureError> {
        r.check_keys(&["name", "group", "place"], &["place"])?;
        let group = match r.section.get("group") {
            Some(e) => {
                self.group_ref(e)?;
                Some(e.value.clone())
            }
            None => None,
        };
        let places = r.section.all("place").map(parse_place).collect::<Result<Vec<_>, _>>()?;
        self.places.push((name.to_string(), PlaceTable { group, places }));
        Ok(())
    }

    fn load_ldata(&mut self, r: &Reader, name: &str) -> Result<(), FixtureError> {
        let s = r.section;
        let field = match s.get("field") {
            Some(e) => e.value.parse::<Field>().map_err(|err| FixtureError::invalid(e.line, err))?,
            None => Field::rational(),
        };
        let epsilon = s.get("epsilon").map(parse_epsilon).transpose()?;
        let arch = s.get("arch").map(parse_arch).transpose()?;
        let pe = r.required("places")?;
        let table = lookup(&self.places, &pe.value)
            .ok_or_else(|| FixtureError::dangling(pe.line, format!("no [places] named `{}`", pe.value)))?
            .clone();
        let kind = r.required("kind")?;
        let ld = match kind.value.as_str() {
            "galois" => {
                r.check_keys(&["name", "kind", "field", "rep", "places", "epsilon", "arch"], &[])?;
                let re = r.required("rep")?;
                let (gname, rep) = self
                    .reps
                    .iter()
                    .find(|(n, _, _)| *n == re.value)
                    .map(|(_, g, rep)| (g.clone(), rep.clone()))
                    .ok_or_else(|| FixtureError::dangling(re.line, format!("no [rep] named `{}`", re.value)))?;
                if table.group.as_ref().is_some_and(|g| *g != gname) {
                    return Err(FixtureError::invalid(pe.line, format!("places `{}` are on a different group than `{}`", pe.value, re.value)));
                }
                let g = rep.group().clone();
                let mut gp = Vec::new();
                for spec in &table.places {
                    if let Some(&x) = spec.inertia.iter().find(|&&x| x >= g.order()) {
                        return Err(FixtureError::invalid(spec.line, format!("element {x} out of range")));
                    }
                    let frob = spec.frob.ok_or_else(|| FixtureError::invalid(spec.line, format!("{} needs frob=", spec.place.label)))?;
                    gp.push(GaloisPlace { place: spec.place.clone(), frob, inertia: g.generated(&spec.inertia), mono: spec.mono.clone() });
                }
                LData::Galois(GaloisDatum::new(field, rep, gp, epsilon, arch).map_err(|err| FixtureError::invalid(s.line, err))?)
            }
            "formal" => {
                let mut unstable = BTreeSet::new();
                if let Some(e) = s.get("unstable") {
                    for l in tokens(&e.value) {
                        if !table.places.iter().any(|p| p.place.label == l) {
                            return Err(FixtureError::dangling(e.line, format!("undefined place `{l}`")));
                        }
                        unstable.insert(l);
                    }
                }
                let mut seen = BTreeSet::new();
                let mut satake = BTreeMap::new();
                for e in &s.entries {
                    if LDATA_KEYS.contains(&e.key.as_str()) {
                        continue;
                    }
                    let Some(spec) = table.places.iter().find(|p| p.place.label == e.key) else {
                        return Err(FixtureError::dangling(e.line, format!("undefined place `{}`", e.key)));
                    };
                    if !seen.insert(e.key.clone()) {
                        return Err(FixtureError::syntax(e.line, format!("repeated place `{}`", e.key)));
                    }
                    satake.insert(e.key.clone(), parse_factor(e, spec.place.q())?);
                }
                let mut fp = Vec::new();
                for spec in &table.places {
                    let factor = satake
                        .remove(&spec.place.label)
                        .ok_or_else(|| FixtureError::syntax(s.line, format!("no local factor for {}", spec.place.label)))?;
                    fp.push(FormalPlace { place: spec.place.clone(), factor, semistable: !unstable.contains(&spec.place.label) });
                }
                LData::Formal(FormalDatum::new(field, fp, epsilon, arch).map_err(|err| FixtureError::invalid(s.line, err))?)
            }
            other => return Err(FixtureError::syntax(kind.line, format!("kind must be galois or formal, got `{other}`"))),
        };
        self.ldata.push((name.to_string(), ld));
        Ok(())
    }

    fn load_extension(&mut self, r: &Reader, name: &str) -> Result<(), FixtureError> {
        r.check_keys(&["name", "base", "chi"], &[])?;
        let base = match r.section.get("base") {
            Some(e) => e.value.parse::<Field>().map_err(|err| FixtureError::invalid(e.line, err))?,
            None => Field::rational(),
        };
        let ce = r.required("chi")?;
        let chi: DirichletCharacter = ce.value.parse().map_err(|err: crate::gw::GwError| FixtureError::syntax(ce.line, err.to_string()))?;
        let ext = CyclicExtension::new(base, chi).map_err(|err| FixtureError::invalid(ce.line, err))?;
        self.extensions.push((name.to_string(), ext));
        Ok(())
    }

    fn load_pair(&mut self, r: &Reader, name: &str) -> Result<(), FixtureError> {
        r.check_keys(&["name", "left", "right", "unknown-left", "unknown-right"], &[])?;
        let side = |key: &str| -> Result<LData, FixtureError> {
            let e = r.required(key)?;
            lookup(&self.ldata, &e.value)
                .cloned()
                .ok_or_else(|| FixtureError::dangling(e.line, format!("no [ldata] named `{}`", e.value)))
        };
        let (left, right) = (side("left")?, side("right")?);
        let mask = |key: &str, d: &LData| -> Result<BTreeSet<String>, FixtureError> {
            let Some(e) = r.section.get(key) else { return Ok(BTreeSet::new()) };
            let labels: BTreeSet<String> = tokens(&e.value).into_iter().collect();
            for l in &labels {
                if d.place(l).is_err() {
                    return Err(FixtureError::dangling(e.line, format!("undefined place `{l}`")));
                }
            }
            Ok(labels)
        };
        let (ul, ur) = (mask("unknown-left", &left)?, mask("unknown-right", &right)?);
        let pair = TransferPair::new(&left, &right, ul, ur).map_err(|err| FixtureError::invalid(r.section.line, err))?;
        self.pairs.push((name.to_string(), pair));
        Ok(())
    }

    pub fn ldatum(&self, name: &str) -> Option<&LData> {
        lookup(&self.ldata, name)
    }

    /// The first `[ldata]` section, which single-datum commands act on.
    pub fn first_ldata(&self) -> Option<(&str, &LData)> {
        self.ldata.first().map(|(n, d)| (n.as_str(), d))
    }

    pub fn first_galois(&self) -> Option<(&str, &GaloisDatum)> {
        self.ldata.iter().find_map(|(n, d)| match d {
            LData::Galois(g) => Some((n.as_str(), g)),
            LData::Formal(_) => None,
        })
    }

    pub fn extension(&self, name: &str) -> Option<&CyclicExtension> {
        lookup(&self.extensions, name)
    }

    pub fn pair(&self, name: &str) -> Option<&TransferPair> {
        lookup(&self.pairs, name)
    }

    pub fn group(&self, name: &str) -> Option<&Arc<FiniteGroup>> {
        lookup(&self.groups, name)
    }

    pub fn character(&self, name: &str) -> Option<&OneDimChar> {
        lookup(&self.chars, name)
    }
}

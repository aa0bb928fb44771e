//! Line-oriented text fixtures: `[section]` headers followed by `key: value` entries.
//!
//! ```text
//! # the symmetric group on three letters
//! [group]
//! name: S3
//! perm: 1 2 0
//! perm: 1 0 2
//! ```
//!
//! Blank lines and `#` comments are ignored; printing a parsed document gives the
//! canonical form (one blank line between sections, single space after `:`).

mod emit;
mod load;

use std::fmt;

use thiserror::Error;

pub use emit::{formal_sections, galois_sections, render};
pub use load::{Fixture, PlaceSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SectionKind {
    Group,
    Rep,
    Char,
    Places,
    LData,
    Extension,
    Pair,
}

impl SectionKind {
    pub const ALL: [SectionKind; 7] = [
        SectionKind::Group,
        SectionKind::Rep,
        SectionKind::Char,
        SectionKind::Places,
        SectionKind::LData,
        SectionKind::Extension,
        SectionKind::Pair,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SectionKind::Group => "group",
            SectionKind::Rep => "rep",
            SectionKind::Char => "char",
            SectionKind::Places => "places",
            SectionKind::LData => "ldata",
            SectionKind::Extension => "extension",
            SectionKind::Pair => "pair",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub line: usize,
    pub kind: SectionKind,
    pub entries: Vec<Entry>,
}

impl Section {
    pub fn new(kind: SectionKind) -> Self {
        Section { line: 0, kind, entries: Vec::new() }
    }

    pub fn push(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.entries.push(Entry { line: 0, key: key.to_string(), value: value.into() });
        self
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a Entry> + 'a {
        self.entries.iter().filter(move |e| e.key == key)
    }

    pub fn name(&self) -> Option<&str> {
        self.get("name").map(|e| e.value.as_str())
    }
}

/// Ordered sections; equality ignores line numbers.
#[derive(Clone, Debug, Default)]
pub struct FixtureDocument {
    pub sections: Vec<Section>,
}

impl PartialEq for FixtureDocument {
    fn eq(&self, other: &Self) -> bool {
        self.to_string() == other.to_string()
    }
}

impl Eq for FixtureDocument {}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FixtureErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown section [{0}]")]
    UnknownSection(String),
    #[error("dangling reference: {0}")]
    Dangling(String),
    #[error("invalid data: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct FixtureError {
    pub line: usize,
    pub kind: FixtureErrorKind,
}

impl FixtureError {
    pub fn syntax(line: usize, msg: impl Into<String>) -> Self {
        FixtureError { line, kind: FixtureErrorKind::Syntax(msg.into()) }
    }

    pub fn dangling(line: usize, msg: impl Into<String>) -> Self {
        FixtureError { line, kind: FixtureErrorKind::Dangling(msg.into()) }
    }

    pub fn invalid(line: usize, msg: impl fmt::Display) -> Self {
        FixtureError { line, kind: FixtureErrorKind::Invalid(msg.to_string()) }
    }

    pub fn code(&self) -> &'static str {
        match self.kind {
            FixtureErrorKind::Syntax(_) => "E_SYNTAX",
            FixtureErrorKind::UnknownSection(_) => "E_UNKNOWN_SECTION",
            FixtureErrorKind::Dangling(_) => "E_DANGLING_REF",
            FixtureErrorKind::Invalid(_) => "E_INVARIANT",
        }
    }
}

/// Syntax only: sections, entries and comments.  See [`Fixture::parse`] for validation.
pub fn parse_document(text: &str) -> Result<FixtureDocument, FixtureError> {
    let mut doc = FixtureDocument::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(h) = t.strip_prefix('[') {
            let name = h.strip_suffix(']').ok_or_else(|| FixtureError::syntax(line, format!("unterminated header `{t}`")))?;
            let kind = SectionKind::ALL
                .into_iter()
                .find(|k| k.name() == name.trim())
                .ok_or(FixtureError { line, kind: FixtureErrorKind::UnknownSection(name.trim().to_string()) })?;
            doc.sections.push(Section { line, kind, entries: Vec::new() });
            continue;
        }
        let (key, value) = t.split_once(':').ok_or_else(|| FixtureError::syntax(line, format!("expected `key: value`, got `{t}`")))?;
        let key = key.trim();
        if key.is_empty() || key.contains(char::is_whitespace) {
            return Err(FixtureError::syntax(line, format!("bad key `{key}`")));
        }
        let section = doc
            .sections
            .last_mut()
            .ok_or_else(|| FixtureError::syntax(line, "entry before the first section header"))?;
        section.entries.push(Entry { line, key: key.to_string(), value: value.trim().to_string() });
    }
    Ok(doc)
}

impl fmt::Display for FixtureDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            writeln!(f, "[{}]", s.kind.name())?;
            for e in &s.entries {
                if e.value.is_empty() {
                    writeln!(f, "{}:", e.key)?;
                } else {
                    writeln!(f, "{}: {}", e.key, e.value)?;
                }
            }
        }
        Ok(())
    }
}

/// Splits on whitespace and commas outside parentheses.
pub(crate) fn tokens(s: &str) -> Vec<String> {
    split_top(s, |c| c.is_whitespace() || c == ',')
}

pub(crate) fn split_top(s: &str, sep: impl Fn(char) -> bool) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && sep(c) {
            if !cur.trim().is_empty() {
                out.push(cur.trim().to_string());
            }
            cur.clear();
        } else {
            cur.push(c);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

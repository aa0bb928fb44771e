//! Places, the tower of cyclic extensions of Q they live in, and splitting.

use std::fmt;

use super::LDataError;
use crate::algebra::RootOfUnity;
use crate::gw::arith::is_prime;
use crate::gw::DirichletCharacter;

/// A finite place: residue field of size `ell^f`, ramification index `e` over Q.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Place {
    pub label: String,
    pub ell: u64,
    pub f: u32,
    pub e: u32,
}

impl Place {
    pub fn new(label: impl Into<String>, ell: u64, f: u32, e: u32) -> Result<Self, LDataError> {
        let label = label.into();
        if !is_prime(ell) || f == 0 || e == 0 {
            return Err(LDataError::InvalidPlace(format!("{label}: bad residue data ell={ell} f={f} e={e}")));
        }
        if label.is_empty() || label.contains(char::is_whitespace) {
            return Err(LDataError::InvalidPlace(format!("bad label `{label}`")));
        }
        Ok(Place { label, ell, f, e })
    }

    /// A place of Q.
    pub fn rational(label: impl Into<String>, ell: u64) -> Result<Self, LDataError> {
        Self::new(label, ell, 1, 1)
    }

    pub fn q(&self) -> u64 {
        self.ell.pow(self.f)
    }

    /// Whether this place lies over (or is) the place labelled `base`.
    pub fn lies_over(&self, base: &str) -> bool {
        self.label == base || self.label.strip_prefix(base).is_some_and(|r| r.starts_with('.'))
    }
}

/// A number field given as the compositum of the cyclic fields cut out by a list of
/// Dirichlet characters of prime order; the empty list is Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    tower: Vec<DirichletCharacter>,
}

impl Field {
    pub fn rational() -> Self {
        Field { tower: Vec::new() }
    }

    pub fn tower(&self) -> &[DirichletCharacter] {
        &self.tower
    }

    pub fn degree(&self) -> u64 {
        self.tower.iter().map(|c| u64::from(c.order())).product()
    }

    /// Primitive characters of the subgroup generated by the tower.
    fn character_span(&self) -> Vec<DirichletCharacter> {
        let mut span = vec![DirichletCharacter::trivial(1)];
        for chi in &self.tower {
            let p = chi.order() as i64;
            span = span.iter().flat_map(|s| (0..p).map(move |j| s.mul(&chi.pow(j)).primitive())).collect();
        }
        span
    }

    /// Whether `chi` restricted to this field is trivial.
    pub fn kills(&self, chi: &DirichletCharacter) -> bool {
        let target = chi.primitive();
        self.character_span().contains(&target)
    }

    /// Adjoins the cyclic field of `chi`, which must have prime order and stay of that
    /// order over this field.
    pub fn extend(&self, chi: &DirichletCharacter) -> Result<Field, LDataError> {
        let p = chi.order();
        if !is_prime(u64::from(p)) {
            return Err(LDataError::NotPrimeDegree(p));
        }
        if self.kills(chi) {
            return Err(LDataError::NotDisjoint(chi.to_string()));
        }
        let mut tower = self.tower.clone();
        tower.push(chi.primitive());
        Ok(Field { tower })
    }

    /// `chi(Frob_v)` for a Q-character `chi` at a place `v` of this field, or `None` when
    /// `chi` ramifies at the rational prime below `v`.
    pub fn char_value(chi: &DirichletCharacter, v: &Place) -> Option<RootOfUnity> {
        if chi.ramified_at(v.ell) {
            None
        } else {
            Some(chi.primitive().value(v.ell as i64).expect("unit").pow(i64::from(v.f)))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q")?;
        for c in &self.tower {
            write!(f, "({c})")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Field {
    type Err = LDataError;

    /// `Q` followed by parenthesized characters, as printed.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = |m: &str| LDataError::InvalidPlace(format!("bad field `{s}`: {m}"));
        let mut rest = s.strip_prefix('Q').ok_or_else(|| bad("must start with Q"))?;
        let mut field = Field::rational();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(bad("expected `(`"));
            }
            let mut depth = 0;
            let mut end = None;
            for (i, c) in rest.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => {
                        depth -= 1;
                        if depth == 0 {
                            end = Some(i);
                            break;
                        }
                    }
                    _ => {}
                }
            }
            let end = end.ok_or_else(|| bad("unbalanced parentheses"))?;
            let chi: DirichletCharacter = rest[1..end].parse().map_err(|e: crate::gw::GwError| bad(&e.to_string()))?;
            field = field.extend(&chi)?;
            rest = &rest[end + 1..];
        }
        Ok(field)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Splitting::Split => "split",
            Splitting::Inert => "inert",
            Splitting::Ramified => "ramified",
        })
    }
}

/// `L/K` cyclic of prime degree, cut out by a Q-character of that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicExtension {
    base: Field,
    top: Field,
    chi: DirichletCharacter,
}

impl CyclicExtension {
    pub fn new(base: Field, chi: DirichletCharacter) -> Result<Self, LDataError> {
        let top = base.extend(&chi)?;
        Ok(CyclicExtension { base, top, chi: chi.primitive() })
    }

    pub fn over_q(chi: DirichletCharacter) -> Result<Self, LDataError> {
        Self::new(Field::rational(), chi)
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn top(&self) -> &Field {
        &self.top
    }

    pub fn chi(&self) -> &DirichletCharacter {
        &self.chi
    }

    pub fn degree(&self) -> u32 {
        self.chi.order()
    }

    /// How `v` decomposes, with the residue degree of the places above it.
    pub fn splitting(&self, v: &Place) -> (Splitting, u32) {
        match Field::char_value(&self.chi, v) {
            None => (Splitting::Ramified, 1),
            Some(z) if z.is_one() => (Splitting::Split, 1),
            Some(z) => (Splitting::Inert, z.order()),
        }
    }

    /// Places of the top field above `v`, labelled `v.0, v.1, ...`.
    pub fn places_above(&self, v: &Place) -> Vec<(Place, Splitting)> {
        let p = self.degree();
        let (kind, f) = self.splitting(v);
        let mk = |i: u32, f_mul: u32, e_mul: u32| Place {
            label: format!("{}.{i}", v.label),
            ell: v.ell,
            f: v.f * f_mul,
            e: v.e * e_mul,
        };
        match kind {
            Splitting::Split => (0..p).map(|i| (mk(i, 1, 1), kind)).collect(),
            Splitting::Inert => (0..p / f).map(|i| (mk(i, f, 1), kind)).collect(),
            Splitting::Ramified => vec![(mk(0, 1, p), kind)],
        }
    }
}

//! Formal automorphic data: a Satake table of local factors with semistability flags.

use super::place::{CyclicExtension, Field, Place, Splitting};
use super::LDataError;
use crate::algebra::{poly_eq, poly_in_power, poly_mul, ArchFactor, EpsilonDatum, LocalFactor, WeilCoeff};
use crate::gw::DirichletCharacter;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalPlace {
    pub place: Place,
    pub factor: LocalFactor,
    pub semistable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalDatum {
    field: Field,
    places: Vec<FormalPlace>,
    epsilon: Option<EpsilonDatum>,
    arch: Option<ArchFactor>,
}

impl FormalDatum {
    pub fn new(
        field: Field,
        places: Vec<FormalPlace>,
        epsilon: Option<EpsilonDatum>,
        arch: Option<ArchFactor>,
    ) -> Result<Self, LDataError> {
        let mut seen = std::collections::BTreeSet::new();
        for pl in &places {
            if !seen.insert(pl.place.label.clone()) {
                return Err(LDataError::InvalidPlace(format!("duplicate place {}", pl.place.label)));
            }
            if pl.factor.q() != pl.place.q() {
                return Err(LDataError::InvalidPlace(format!(
                    "{}: factor over q = {} at a place with q = {}",
                    pl.place.label,
                    pl.factor.q(),
                    pl.place.q()
                )));
            }
        }
        Ok(FormalDatum { field, places, epsilon, arch })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn places(&self) -> &[FormalPlace] {
        &self.places
    }

    pub fn place(&self, label: &str) -> Result<&FormalPlace, LDataError> {
        self.places.iter().find(|p| p.place.label == label).ok_or_else(|| LDataError::UnknownPlace(label.to_string()))
    }

    pub fn epsilon(&self) -> Option<&EpsilonDatum> {
        self.epsilon.as_ref()
    }

    pub fn arch(&self) -> Option<&ArchFactor> {
        self.arch.as_ref()
    }

    pub fn local_factor(&self, label: &str) -> Result<LocalFactor, LDataError> {
        Ok(self.place(label)?.factor.clone())
    }

    pub fn semistable_at(&self, label: &str) -> Result<bool, LDataError> {
        Ok(self.place(label)?.semistable)
    }

    pub fn contragredient(&self) -> Self {
        FormalDatum {
            field: self.field.clone(),
            places: self
                .places
                .iter()
                .map(|p| FormalPlace { factor: p.factor.contragredient(), ..p.clone() })
                .collect(),
            epsilon: self.epsilon.as_ref().map(|e| e.contragredient()),
            arch: self.arch.clone(),
        }
    }

    /// Roots times `chi(v)` where `chi` is unramified; factor 1 (and not semistable) where it ramifies.
    pub fn twist(&self, chi: &DirichletCharacter) -> Self {
        if chi.order() == 1 {
            return self.clone();
        }
        let places = self
            .places
            .iter()
            .map(|p| match Field::char_value(chi, &p.place) {
                Some(z) => FormalPlace { factor: p.factor.twist(z), ..p.clone() },
                None => FormalPlace { factor: LocalFactor::trivial(p.place.q()), semistable: false, place: p.place.clone() },
            })
            .collect();
        let arch = self.arch.as_ref().map(|a| if chi.is_odd() { a.twist_odd() } else { a.clone() });
        FormalDatum { field: self.field.clone(), places, epsilon: None, arch }
    }

    /// Cyclic base change by the character-product formula.  Split places copy the
    /// factor, inert places take `prod_j L_v(pi (x) chi^j)` rewritten in `T^p`, ramified
    /// places copy the factor (the twists by nontrivial powers of `chi` contribute 1).
    pub fn base_change(&self, ext: &CyclicExtension) -> Result<Self, LDataError> {
        if ext.base() != &self.field {
            return Err(LDataError::FieldMismatch(self.field.to_string(), ext.base().to_string()));
        }
        let p = ext.degree();
        let mut places = Vec::new();
        for pl in &self.places {
            for (w, kind) in ext.places_above(&pl.place) {
                let factor = match kind {
                    Splitting::Split | Splitting::Ramified => LocalFactor::new(w.q(), pl.factor.roots().to_vec())?,
                    Splitting::Inert => inert_product(&pl.factor, ext.chi(), &pl.place, p)?,
                };
                places.push(FormalPlace { place: w, factor, semistable: pl.semistable });
            }
        }
        FormalDatum::new(ext.top().clone(), places, None, None)
    }

    pub fn with_places(&self, places: Vec<FormalPlace>) -> Result<Self, LDataError> {
        FormalDatum::new(self.field.clone(), places, self.epsilon.clone(), self.arch.clone())
    }

    pub fn with_epsilon(&self, epsilon: Option<EpsilonDatum>) -> Self {
        FormalDatum { epsilon, ..self.clone() }
    }
}

/// `prod_{j<p} L_v(pi (x) chi^j)` as a polynomial in `T^p`, checked against `{alpha^p}`.
fn inert_product(f: &LocalFactor, chi: &DirichletCharacter, v: &Place, p: u32) -> Result<LocalFactor, LDataError> {
    let z = Field::char_value(chi, v).expect("inert places are unramified");
    let mut prod = vec![WeilCoeff::constant(crate::algebra::CycNum::one())];
    for j in 0..p {
        prod = poly_mul(&prod, &f.twist(z.pow(i64::from(j))).expand());
    }
    let in_tp = poly_in_power(&prod, p).ok_or_else(|| {
        LDataError::Internal(format!("{}: base-change product is not a polynomial in T^{p}", v.label))
    })?;
    let lifted = f.extend(p);
    if !poly_eq(&in_tp, &lifted.expand()) {
        return Err(LDataError::Internal(format!("{}: base-change product disagrees with the p-th powers", v.label)));
    }
    Ok(lifted)
}

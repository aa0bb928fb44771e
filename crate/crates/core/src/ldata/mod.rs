//! Arithmetic L-data: Galois-backed and formal instances with twisting,
//! contragredients and cyclic base change.

mod formal;
mod galois;
mod place;
mod series;

use std::collections::BTreeMap;

pub use formal::{FormalDatum, FormalPlace};
pub use galois::{GaloisDatum, GaloisPlace};
pub use place::{CyclicExtension, Field, Place, Splitting};
pub use series::{partial_l_series, DirichletTable};

use thiserror::Error;

use crate::algebra::{AlgebraError, ArchFactor, EpsilonDatum, LocalFactor};
use crate::galois::GaloisError;
use crate::gw::DirichletCharacter;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LDataError {
    #[error("unknown place `{0}`")]
    UnknownPlace(String),
    #[error("invalid place data: {0}")]
    InvalidPlace(String),
    #[error("datum over {0} but extension over {1}")]
    FieldMismatch(String, String),
    #[error("cyclic extensions must have prime degree, got {0}")]
    NotPrimeDegree(u32),
    #[error("character {0} is trivial on the base field")]
    NotDisjoint(String),
    #[error("inverse root {0} has a weight that is not an even integer")]
    NonIntegralWeight(String),
    #[error("twist is not determined by the place data at {0}")]
    AmbiguousTwist(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Galois(#[from] GaloisError),
}

/// Either instance of the arithmetic L-data interface.
#[derive(Clone, Debug)]
pub enum LData {
    Galois(GaloisDatum),
    Formal(FormalDatum),
}

impl From<GaloisDatum> for LData {
    fn from(d: GaloisDatum) -> Self {
        LData::Galois(d)
    }
}

impl From<FormalDatum> for LData {
    fn from(d: FormalDatum) -> Self {
        LData::Formal(d)
    }
}

impl LData {
    pub fn field(&self) -> &Field {
        match self {
            LData::Galois(d) => d.field(),
            LData::Formal(d) => d.field(),
        }
    }

    pub fn places(&self) -> Vec<&Place> {
        match self {
            LData::Galois(d) => d.places().iter().map(|p| &p.place).collect(),
            LData::Formal(d) => d.places().iter().map(|p| &p.place).collect(),
        }
    }

    pub fn place(&self, label: &str) -> Result<&Place, LDataError> {
        match self {
            LData::Galois(d) => Ok(&d.place(label)?.place),
            LData::Formal(d) => Ok(&d.place(label)?.place),
        }
    }

    pub fn local_factor(&self, label: &str) -> Result<LocalFactor, LDataError> {
        match self {
            LData::Galois(d) => d.artin_local_factor(label),
            LData::Formal(d) => d.local_factor(label),
        }
    }

    pub fn semistable_at(&self, label: &str) -> Result<bool, LDataError> {
        match self {
            LData::Galois(d) => d.semistable_at(label),
            LData::Formal(d) => d.semistable_at(label),
        }
    }

    pub fn epsilon(&self) -> Option<&EpsilonDatum> {
        match self {
            LData::Galois(d) => d.epsilon(),
            LData::Formal(d) => d.epsilon(),
        }
    }

    pub fn arch(&self) -> Option<&ArchFactor> {
        match self {
            LData::Galois(d) => d.arch(),
            LData::Formal(d) => d.arch(),
        }
    }

    pub fn twist(&self, chi: &DirichletCharacter) -> Result<LData, LDataError> {
        Ok(match self {
            LData::Galois(d) => LData::Galois(d.twist(chi)?),
            LData::Formal(d) => LData::Formal(d.twist(chi)),
        })
    }

    pub fn contragredient(&self) -> LData {
        match self {
            LData::Galois(d) => LData::Galois(d.contragredient()),
            LData::Formal(d) => LData::Formal(d.contragredient()),
        }
    }

    pub fn base_change(&self, ext: &CyclicExtension) -> Result<LData, LDataError> {
        Ok(match self {
            LData::Galois(d) => LData::Galois(d.base_change(ext, &BTreeMap::new())?),
            LData::Formal(d) => LData::Formal(d.base_change(ext)?),
        })
    }

    /// The formal datum with the same local factors and semistability flags.
    pub fn to_formal(&self) -> Result<FormalDatum, LDataError> {
        match self {
            LData::Formal(d) => Ok(d.clone()),
            LData::Galois(d) => {
                let places = d
                    .places()
                    .iter()
                    .map(|p| {
                        Ok(FormalPlace {
                            place: p.place.clone(),
                            factor: d.artin_local_factor(&p.place.label)?,
                            semistable: d.semistable_at(&p.place.label)?,
                        })
                    })
                    .collect::<Result<Vec<_>, LDataError>>()?;
                FormalDatum::new(d.field().clone(), places, d.epsilon().cloned(), d.arch().cloned())
            }
        }
    }

    /// Sorted `(q_w, L_w)` over the places lying over `base`.
    pub fn fiber_profile(&self, base: &str) -> Result<Vec<(u64, LocalFactor)>, LDataError> {
        let mut out = Vec::new();
        for p in self.places() {
            if p.lies_over(base) {
                out.push((p.q(), self.local_factor(&p.label)?));
            }
        }
        out.sort_by_key(|a| (a.0, a.1.to_string()));
        Ok(out)
    }

    pub fn partial_l_series(&self, x: u64) -> Result<DirichletTable, LDataError> {
        let factors = self.places().iter().map(|p| self.local_factor(&p.label)).collect::<Result<Vec<_>, _>>()?;
        partial_l_series(&factors, x)
    }
}

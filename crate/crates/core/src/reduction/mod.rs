//! Induction on the ramification modulus: pick the worst bad places, kill part of their
//! inertia with a cyclic extension built by the Grunwald–Wang solver, recurse, and glue
//! the lifts back together by cyclic descent.

mod certificate;
mod descent;
mod driver;
mod modulus;
mod step;

use std::fmt;

use thiserror::Error;

pub use certificate::{replay, Certificate, ReplayReport};
pub use descent::{compositum_tables, descend, Descent, DescentObject};
pub use driver::{run_reduction, run_reduction_with, tautological_lifter, Branch, Lifter, NodeKind, ReductionNode, StepRecord};
pub use modulus::{minimal_local_trivializer, ramification_modulus, LocalTrivializer, Surjection};
pub use step::{build_reduction_step, eta_for, restrict_datum, select_places, ReductionStep, StepPlan};

use crate::fixture::FixtureError;
use crate::galois::GaloisError;
use crate::gw::GwError;
use crate::ldata::LDataError;

/// `(|H|, p)`, ordered lexicographically: smaller group first, then smaller prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RamModulus {
    pub order: usize,
    pub p: u32,
}

impl fmt::Display for RamModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.order, self.p)
    }
}

impl std::str::FromStr for RamModulus {
    type Err = ReductionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ReductionError::BadCertificate(format!("bad modulus `{s}`"));
        let inner = s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (o, p) = inner.split_once(',').ok_or_else(bad)?;
        Ok(RamModulus { order: o.trim().parse().map_err(|_| bad())?, p: p.trim().parse().map_err(|_| bad())? })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("datum is already semistable everywhere")]
    Semistable,
    #[error("{0}: image of inertia is not solvable")]
    NotSolvable(String),
    #[error("unsupported ramification: {0}")]
    UnsupportedRamification(String),
    #[error("only {found} admissible probe places, need at least {needed}")]
    ProbesExhausted { found: usize, needed: usize },
    #[error("no auxiliary place separates {0}")]
    W0Unavailable(String),
    #[error("extension is not linearly disjoint: {0}")]
    NotDisjoint(String),
    #[error("no descent: {0}")]
    NoDescent(String),
    #[error("ambiguous descent: twists {0:?} all match")]
    AmbiguousDescent(Vec<u32>),
    #[error("ramification modulus did not decrease: {0}")]
    NoDecrease(String),
    #[error("lifter failed at node {path}: {message}")]
    Lifter { path: String, message: String, partial: String },
    #[error("lift violates its contract: {0}")]
    LiftContract(String),
    #[error("malformed certificate: {0}")]
    BadCertificate(String),
    #[error(transparent)]
    Gw(#[from] GwError),
    #[error(transparent)]
    LData(#[from] LDataError),
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
}

impl ReductionError {
    pub fn code(&self) -> &'static str {
        match self {
            ReductionError::Semistable => "E_SEMISTABLE",
            ReductionError::NotSolvable(_) => "E_NOT_SOLVABLE",
            ReductionError::UnsupportedRamification(_) => "E_UNSUPPORTED_RAMIFICATION",
            ReductionError::ProbesExhausted { .. } => "E_PROBES_EXHAUSTED",
            ReductionError::W0Unavailable(_) => "E_W0_UNAVAILABLE",
            ReductionError::NotDisjoint(_) => "E_NOT_DISJOINT",
            ReductionError::NoDescent(_) => "E_NO_DESCENT",
            ReductionError::AmbiguousDescent(_) => "E_AMBIGUOUS_DESCENT",
            ReductionError::NoDecrease(_) => "E_NO_DECREASE",
            ReductionError::Lifter { .. } => "E_LIFTER",
            ReductionError::LiftContract(_) => "E_LIFT_CONTRACT",
            ReductionError::BadCertificate(_) => "E_BAD_CERTIFICATE",
            ReductionError::Gw(GwError::Infeasible { .. }) => "E_INFEASIBLE",
            ReductionError::Gw(_) => "E_GW",
            ReductionError::LData(_) => "E_LDATA",
            ReductionError::Galois(_) => "E_GALOIS",
            ReductionError::Fixture(e) => e.code(),
        }
    }
}

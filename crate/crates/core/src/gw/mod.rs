//! Dirichlet characters over Q and the Grunwald-Wang construction.

pub mod arith;
mod dirichlet;
mod solve;

pub use dirichlet::{unit_group_generators, DirichletCharacter, LocalKind, LocalPrescription, UnitGen};
pub use solve::{solve, special_case_check, GwSolution, SpecialCase};

use thiserror::Error;

use crate::algebra::RootOfUnity;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GwError {
    #[error("no character of the requested order (special case: {special}, a0 product {a0_product}, order 2m achievable: {order_2m_achievable})")]
    Infeasible { special: bool, a0_product: RootOfUnity, order_2m_achievable: bool },
    #[error("two prescriptions at the prime {0}")]
    ConflictingPrescriptions(u64),
    #[error("invalid prescription: {0}")]
    InvalidPrescription(String),
    #[error("parse error: {0}")]
    Parse(String),
}

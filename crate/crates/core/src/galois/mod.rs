//! Finite groups, exact representations, inertia invariants and self-twists.

mod group;
mod matrix;
mod rep;

pub use group::FiniteGroup;
pub use matrix::Matrix;
pub use rep::{inner_product, linear_characters, OneDimChar, Representation};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("multiplication table is not associative at ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("group of order {0} exceeds the supported bound")]
    TooLarge(usize),
    #[error("{0:?} is not a subgroup")]
    NotSubgroup(Vec<usize>),
    #[error("element {sigma} does not normalize {subgroup:?}")]
    DoesNotNormalize { sigma: usize, subgroup: Vec<usize> },
    #[error("representation is reducible")]
    Reducible,
    #[error("not a homomorphism: fails on ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("objects live on different groups")]
    GroupMismatch,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[cfg(test)]
mod tests;

//! Exact symbolic engine for local L-factors of finite-image Galois data,
//! cyclic base change, Grunwald-Wang characters over Q, semistable reduction
//! certificates and weak-to-strong transfer completion.

pub mod algebra;
pub mod builtin;
pub mod fixture;
pub mod galois;
pub mod gw;
pub mod ldata;
pub mod par;
pub mod reduction;
pub mod report;
pub mod transfer;

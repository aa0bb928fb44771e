//! Local trivializers `H_v` and the ramification modulus `R(rho)`.

use std::sync::Arc;

use super::{RamModulus, ReductionError};
use crate::galois::linear_characters;
use crate::gw::arith::is_prime;
use crate::ldata::GaloisDatum;

/// A quotient map `H_v -> Z/p`, recorded by its kernel inside inertia.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Surjection {
    pub p: u32,
    /// Sorted elements of the group: a normal subgroup of index `p` in `I_v` containing `I_v n ker rho`.
    pub kernel: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalTrivializer {
    pub label: String,
    /// `|H_v| = |rho(I_v)|`.
    pub order: usize,
    /// All surjections, sorted by `(p, kernel)`.
    pub surjections: Vec<Surjection>,
}

impl LocalTrivializer {
    pub fn modulus(&self) -> RamModulus {
        RamModulus { order: self.order, p: self.surjections[0].p }
    }
}

/// `H_v = rho(I_v)`: the smallest group whose fixed field trivializes inertia.
pub fn minimal_local_trivializer(d: &GaloisDatum, label: &str) -> Result<LocalTrivializer, ReductionError> {
    let pl = d.place(label)?;
    let g = d.group();
    let ker = d.rep().kernel();
    let floor: Vec<usize> = pl.inertia.iter().copied().filter(|x| ker.binary_search(x).is_ok()).collect();
    let order = pl.inertia.len() / floor.len();
    if order == 1 {
        return Err(ReductionError::Semistable);
    }
    if !g.solvable_modulo(&pl.inertia, &floor) {
        return Err(ReductionError::NotSolvable(label.to_string()));
    }
    let (h, emb) = g.induced(&pl.inertia)?;
    let h = Arc::new(h);
    let mut surjections: Vec<Surjection> = Vec::new();
    for ch in linear_characters(&h) {
        let p = ch.order();
        if !is_prime(u64::from(p)) || floor.iter().any(|x| !ch.value(emb.iter().position(|e| e == x).unwrap()).is_one()) {
            continue;
        }
        let mut kernel: Vec<usize> = ch.kernel().into_iter().map(|i| emb[i]).collect();
        kernel.sort_unstable();
        let s = Surjection { p, kernel };
        if !surjections.contains(&s) {
            surjections.push(s);
        }
    }
    surjections.sort();
    if surjections.is_empty() {
        return Err(ReductionError::NotSolvable(label.to_string()));
    }
    Ok(LocalTrivializer { label: label.to_string(), order, surjections })
}

/// `R(rho)` (maximal modulus over the non-semistable places) and the places attaining it;
/// `None` when the datum is semistable everywhere.
pub fn ramification_modulus(d: &GaloisDatum) -> Result<(Option<RamModulus>, Vec<String>), ReductionError> {
    let mut best: Option<RamModulus> = None;
    let mut t = Vec::new();
    for pl in d.places() {
        if d.semistable_at(&pl.place.label)? {
            continue;
        }
        let m = minimal_local_trivializer(d, &pl.place.label)?.modulus();
        match best {
            Some(b) if m < b => {}
            Some(b) if m == b => t.push(pl.place.label.clone()),
            _ => {
                best = Some(m);
                t = vec![pl.place.label.clone()];
            }
        }
    }
    Ok((best, t))
}

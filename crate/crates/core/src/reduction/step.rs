//! One reduction step: place selection, local characters `eta_v`, the Grunwald–Wang
//! call and restriction of the datum to the new cyclic field.

use std::collections::{BTreeMap, BTreeSet};

use super::modulus::{minimal_local_trivializer, ramification_modulus};
use super::{RamModulus, ReductionError};
use crate::algebra::RootOfUnity;
use crate::galois::{linear_characters, OneDimChar};
use crate::gw::{solve, DirichletCharacter, LocalPrescription};
use crate::ldata::{CyclicExtension, Field, GaloisDatum, Place};

/// Everything a step needs that does not depend on the probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepPlan {
    pub modulus: RamModulus,
    pub t: Vec<String>,
    pub p: u32,
    /// One ramified prescription per rational prime under `T`, increasing.
    pub eta: Vec<LocalPrescription>,
    /// Surviving index-`p` subgroup of inertia at each place of `T`.
    pub links: BTreeMap<String, Vec<usize>>,
    /// Split places separating the new field from the field of `rho`.
    pub w0: Vec<String>,
    pub probes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub probe: String,
    pub character: DirichletCharacter,
    pub auxiliary: Vec<u64>,
    pub ext: CyclicExtension,
    pub child: GaloisDatum,
}

/// Order-`p` linear characters of the group, one per kernel.
fn order_p_characters(d: &GaloisDatum, p: u32) -> Vec<OneDimChar> {
    let mut out: Vec<OneDimChar> = Vec::new();
    for ch in linear_characters(d.group()) {
        if ch.order() == p && !out.iter().any(|c| c.kernel() == ch.kernel()) {
            out.push(ch);
        }
    }
    out
}

/// A ramified Q-character of order `p` at `pl`, when one exists with the local
/// extension still ramified of degree `p`.
pub fn eta_for(pl: &Place, p: u32) -> Result<LocalPrescription, ReductionError> {
    let unsupported = |why: &str| ReductionError::UnsupportedRamification(format!("{}: order {p} at {}: {why}", pl.label, pl.ell));
    if pl.e.is_multiple_of(p) {
        return Err(unsupported("already ramified of that order"));
    }
    let zeta = RootOfUnity::new(p, 1);
    let pr = if u64::from(p) == pl.ell {
        if p == 2 {
            LocalPrescription::ramified(2, 2, vec![RootOfUnity::new(2, 1)])?
        } else {
            LocalPrescription::ramified(pl.ell, 2, vec![zeta])?
        }
    } else if (pl.ell - 1).is_multiple_of(u64::from(p)) {
        LocalPrescription::ramified(pl.ell, 1, vec![zeta])?
    } else {
        return Err(unsupported("no tame character of that order"));
    };
    Ok(pr)
}

fn artin_moves(d: &GaloisDatum, label: &str, p: u32) -> Result<bool, ReductionError> {
    let pl = d.place(label)?;
    if pl.place.f % p == 0 {
        return Ok(false);
    }
    let f = d.artin_local_factor(label)?;
    Ok(f.twist(RootOfUnity::new(p, i64::from(pl.place.f))) != f)
}

/// Chooses `T`, `p`, the `eta_v`, the links, `W0` and up to `budget` probes.
pub fn select_places(d: &GaloisDatum, budget: usize) -> Result<StepPlan, ReductionError> {
    let (r, t) = ramification_modulus(d)?;
    let modulus = r.ok_or(ReductionError::Semistable)?;
    let p = modulus.p;
    let g = d.group();

    let mut eta: BTreeMap<u64, LocalPrescription> = BTreeMap::new();
    let mut links = BTreeMap::new();
    for label in &t {
        let pl = d.place(label)?;
        let triv = minimal_local_trivializer(d, label)?;
        let s = triv
            .surjections
            .iter()
            .find(|s| s.p == p && g.normalizes(pl.frob, &s.kernel))
            .ok_or_else(|| ReductionError::UnsupportedRamification(format!("{label}: no Frobenius-stable quotient of order {p}")))?;
        links.insert(label.clone(), s.kernel.clone());
        eta.insert(pl.place.ell, eta_for(&pl.place, p)?);
    }
    // Every place over a prime of T ramifies in the new field.
    for pl in d.places() {
        if eta.contains_key(&pl.place.ell) && pl.place.e % p == 0 {
            return Err(ReductionError::UnsupportedRamification(format!("{}: already ramified of order {p}", pl.place.label)));
        }
    }

    let mut used: BTreeSet<u64> = eta.keys().copied().collect();
    let mut eligible = Vec::new();
    for pl in d.places() {
        if !used.contains(&pl.place.ell) && d.unramified_at(&pl.place.label)? {
            eligible.push(pl);
        }
    }

    // Greedy cover: each order-p character of G must be nontrivial on some split Frobenius.
    let mut pending = order_p_characters(d, p);
    let mut w0 = Vec::new();
    while !pending.is_empty() {
        let best = eligible
            .iter()
            .filter(|u| !used.contains(&u.place.ell))
            .map(|u| (u, pending.iter().filter(|c| !c.value(u.frob).is_one()).count()))
            .filter(|(_, n)| *n > 0)
            .fold(None, |acc: Option<(&&crate::ldata::GaloisPlace, usize)>, x| match acc {
                Some(a) if a.1 >= x.1 => Some(a),
                _ => Some(x),
            });
        let (u, _) = best.ok_or_else(|| {
            let names: Vec<String> = pending.iter().map(|c| format!("{:?}", c.kernel())).collect();
            ReductionError::W0Unavailable(format!("characters with kernels {}", names.join(" ")))
        })?;
        pending.retain(|c| c.value(u.frob).is_one());
        used.insert(u.place.ell);
        w0.push(u.place.label.clone());
    }

    let mut probes = Vec::new();
    for u in &eligible {
        if probes.len() == budget {
            break;
        }
        if used.contains(&u.place.ell) || !artin_moves(d, &u.place.label, p)? {
            continue;
        }
        used.insert(u.place.ell);
        probes.push(u.place.label.clone());
    }
    if probes.len() < 2 {
        return Err(ReductionError::ProbesExhausted { found: probes.len(), needed: 2 });
    }
    Ok(StepPlan { modulus, t, p, eta: eta.into_values().collect(), links, w0, probes })
}

/// The step for probe `w`: `chi^w` ramified by `eta` on `T`, split at `W0` and `w`, inert at
/// the other probes, unramified at every other listed prime.
pub fn build_reduction_step(d: &GaloisDatum, plan: &StepPlan, w: &str) -> Result<ReductionStep, ReductionError> {
    if !plan.probes.iter().any(|x| x == w) {
        return Err(ReductionError::UnsupportedRamification(format!("{w} is not a probe of this plan")));
    }
    let p = plan.p;
    let mut prs = plan.eta.clone();
    let ell_of = |label: &str| d.place(label).map(|pl| pl.place.ell);
    for label in plan.w0.iter().chain(std::iter::once(&w.to_string())) {
        prs.push(LocalPrescription::unramified(ell_of(label)?, RootOfUnity::ONE));
    }
    for other in plan.probes.iter().filter(|x| x.as_str() != w) {
        prs.push(LocalPrescription::unramified(ell_of(other)?, RootOfUnity::new(p, 1)));
    }
    let prescribed: BTreeSet<u64> = prs.iter().map(|pr| pr.p).collect();
    let avoid: BTreeSet<u64> = d.places().iter().map(|pl| pl.place.ell).filter(|l| !prescribed.contains(l)).collect();
    let sol = solve(&prs, p, &avoid)?;
    let chi = sol.character.primitive();
    let child = restrict_datum(d, &chi, &plan.links)?;
    let (r2, _) = ramification_modulus(&child)?;
    if let Some(r2) = r2 {
        if r2 >= plan.modulus {
            return Err(ReductionError::NoDecrease(format!("{} -> {r2} along {chi}", plan.modulus)));
        }
    }
    let ext = CyclicExtension::new(d.field().clone(), chi.clone())?;
    Ok(ReductionStep { probe: w.to_string(), character: chi, auxiliary: sol.auxiliary, ext, child })
}

/// `d` restricted to the field cut out by `chi` over `d`'s field.  Linear disjointness
/// from the field of `rho` is checked through witnesses: for every order-`p` character
/// `chi'` of the group some listed place splits in the new field with `chi'(Frob) != 1`.
pub fn restrict_datum(
    d: &GaloisDatum,
    chi: &DirichletCharacter,
    links: &BTreeMap<String, Vec<usize>>,
) -> Result<GaloisDatum, ReductionError> {
    let ext = CyclicExtension::new(d.field().clone(), chi.clone())?;
    let p = ext.degree();
    for ch in order_p_characters(d, p) {
        let witness = d.places().iter().any(|u| {
            d.unramified_at(&u.place.label).unwrap_or(false)
                && Field::char_value(chi, &u.place).is_some_and(|z| z.is_one())
                && !ch.value(u.frob).is_one()
        });
        if !witness {
            return Err(ReductionError::NotDisjoint(format!(
                "{chi} may cut out the subfield fixed by {:?}",
                ch.kernel()
            )));
        }
    }
    Ok(d.base_change(&ext, links)?)
}

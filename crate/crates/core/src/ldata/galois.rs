//! Galois-backed L-data: a finite-image representation with a table of places.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::place::{CyclicExtension, Field, Place, Splitting};
use super::LDataError;
use crate::algebra::{ArchFactor, EpsilonDatum, LocalFactor, RootOfUnity};
use crate::galois::{FiniteGroup, Matrix, Representation};
use crate::gw::DirichletCharacter;

/// Frobenius, inertia and monodromy Jordan type at one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisPlace {
    pub place: Place,
    pub frob: usize,
    /// Sorted subgroup of the group.
    pub inertia: Vec<usize>,
    /// Jordan block sizes of the monodromy operator (empty or all ones: none).
    pub mono: Vec<u32>,
}

impl GaloisPlace {
    /// `r_v = sum (b_i - 1)`.
    pub fn monodromy_rank(&self) -> usize {
        self.mono.iter().map(|&b| b as usize - 1).sum()
    }
}

#[derive(Clone, Debug)]
pub struct GaloisDatum {
    field: Field,
    rep: Representation,
    places: Vec<GaloisPlace>,
    epsilon: Option<EpsilonDatum>,
    arch: Option<ArchFactor>,
}

impl GaloisDatum {
    pub fn new(
        field: Field,
        rep: Representation,
        places: Vec<GaloisPlace>,
        epsilon: Option<EpsilonDatum>,
        arch: Option<ArchFactor>,
    ) -> Result<Self, LDataError> {
        let g = rep.group().clone();
        let mut places = places;
        let mut seen = std::collections::BTreeSet::new();
        for pl in &mut places {
            if !seen.insert(pl.place.label.clone()) {
                return Err(LDataError::InvalidPlace(format!("duplicate place {}", pl.place.label)));
            }
            if pl.frob >= g.order() {
                return Err(LDataError::InvalidPlace(format!("{}: Frobenius {} out of range", pl.place.label, pl.frob)));
            }
            pl.inertia = g.subgroup(&pl.inertia)?;
            if !g.normalizes(pl.frob, &pl.inertia) {
                return Err(LDataError::InvalidPlace(format!("{}: Frobenius does not normalize inertia", pl.place.label)));
            }
            if pl.mono.contains(&0) || pl.mono.iter().map(|&b| b as usize).sum::<usize>() > rep.dim() {
                return Err(LDataError::InvalidPlace(format!("{}: bad monodromy partition {:?}", pl.place.label, pl.mono)));
            }
            pl.mono.sort_unstable_by(|a, b| b.cmp(a));
        }
        let d = GaloisDatum { field, rep, places, epsilon, arch };
        for pl in &d.places {
            let ev = d.rep.invariant_eigenvalues(&pl.inertia, pl.frob)?;
            if pl.monodromy_rank() > ev.len() {
                return Err(LDataError::InvalidPlace(format!(
                    "{}: monodromy rank {} exceeds dim V^I = {}",
                    pl.place.label,
                    pl.monodromy_rank(),
                    ev.len()
                )));
            }
        }
        Ok(d)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.rep.group()
    }

    pub fn places(&self) -> &[GaloisPlace] {
        &self.places
    }

    pub fn place(&self, label: &str) -> Result<&GaloisPlace, LDataError> {
        self.places.iter().find(|p| p.place.label == label).ok_or_else(|| LDataError::UnknownPlace(label.to_string()))
    }

    pub fn epsilon(&self) -> Option<&EpsilonDatum> {
        self.epsilon.as_ref()
    }

    pub fn arch(&self) -> Option<&ArchFactor> {
        self.arch.as_ref()
    }

    /// Eigenvalues of Frobenius on the inertia invariants, minus the top `r_v`
    /// (last in argument order) when a monodromy operator is recorded.
    pub fn artin_local_factor(&self, label: &str) -> Result<LocalFactor, LDataError> {
        let pl = self.place(label)?;
        let mut ev = self.rep.invariant_eigenvalues(&pl.inertia, pl.frob)?;
        let r = pl.monodromy_rank();
        ev.truncate(ev.len() - r);
        Ok(LocalFactor::unitary(pl.place.q(), ev))
    }

    /// `rho(I_v)` trivial; monodromy does not matter.
    pub fn semistable_at(&self, label: &str) -> Result<bool, LDataError> {
        Ok(self.rep.trivial_on(&self.place(label)?.inertia))
    }

    pub fn unramified_at(&self, label: &str) -> Result<bool, LDataError> {
        let pl = self.place(label)?;
        Ok(self.rep.trivial_on(&pl.inertia) && pl.monodromy_rank() == 0)
    }

    pub fn contragredient(&self) -> Self {
        GaloisDatum {
            rep: self.rep.dual(),
            epsilon: self.epsilon.as_ref().map(|e| e.contragredient()),
            ..self.clone()
        }
    }

    /// `rho (x) chi` realised on `G x C_m`, `m` the order of `chi`.  At a place where `chi`
    /// ramifies the inertia group grows by the image of the local component of `chi`;
    /// where `rho` ramifies as well the joint image is only determined in the tame cyclic
    /// case with `gcd(|I|, |chi(I)|) <= 2`, and anything else is `AmbiguousTwist`.
    pub fn twist(&self, chi: &DirichletCharacter) -> Result<Self, LDataError> {
        let m = chi.order();
        if m == 1 {
            return Ok(self.clone());
        }
        let cyc = Representation::generated_by(&[Matrix::scalar(1, RootOfUnity::primitive(m).to_cyc())])?;
        let rep = self.rep.outer_tensor(&cyc);
        let mu = m as usize;
        let mut places = Vec::with_capacity(self.places.len());
        for pl in &self.places {
            let (frob, inertia) = match Field::char_value(chi, &pl.place) {
                Some(z) => {
                    let j = z.exponent_in(m).expect("value of chi lies in mu_m") as usize;
                    (pl.frob * mu + j, pl.inertia.iter().map(|&h| h * mu).collect())
                }
                None => {
                    let ell = pl.place.ell;
                    let o = chi.component(ell).order();
                    let img = (o / num_integer::gcd(o, pl.place.e)) as usize;
                    let step = mu / img;
                    let inertia = if self.rep.trivial_on(&pl.inertia) {
                        pl.inertia.iter().flat_map(|&h| (0..mu).step_by(step).map(move |c| h * mu + c)).collect()
                    } else {
                        // Both sides ramify.  Tame inertia is procyclic, so the image is generated by
                        // one pair (h, c); that subgroup is pinned down only when the pairing of
                        // generators is, i.e. when gcd(|H|, img) <= 2.
                        let n = pl.inertia.len();
                        let h = pl.inertia.iter().copied().find(|&h| self.group().element_order(h) == n);
                        let tame = ell > 2 && chi.conductor_exponent(ell) == 1 && !(n as u64).is_multiple_of(ell);
                        match h {
                            Some(h) if tame && num_integer::gcd(n, img) <= 2 => rep.group().generated(&[h * mu + step]),
                            _ => {
                                return Err(LDataError::AmbiguousTwist(format!(
                                    "{}: inertia of order {n} and a ramified character of order {img}",
                                    pl.place.label
                                )))
                            }
                        }
                    };
                    (pl.frob * mu, inertia)
                }
            };
            places.push(GaloisPlace { place: pl.place.clone(), frob, inertia, mono: pl.mono.clone() });
        }
        let arch = self.arch.as_ref().map(|a| if chi.is_odd() { a.twist_odd() } else { a.clone() });
        GaloisDatum::new(self.field.clone(), rep, places, None, arch)
    }

    /// Restriction to the top of `ext` with the group unchanged (the extension is assumed
    /// linearly disjoint from the field cut out by the representation).  `links` gives,
    /// for ramified places, the index-`p` subgroup of inertia that survives; unlinked
    /// ramified places keep their inertia.
    pub fn base_change(&self, ext: &CyclicExtension, links: &BTreeMap<String, Vec<usize>>) -> Result<Self, LDataError> {
        if ext.base() != &self.field {
            return Err(LDataError::FieldMismatch(self.field.to_string(), ext.base().to_string()));
        }
        let g = self.group();
        let mut places = Vec::new();
        for pl in &self.places {
            for (w, kind) in ext.places_above(&pl.place) {
                let (frob, inertia) = match kind {
                    Splitting::Split => (pl.frob, pl.inertia.clone()),
                    Splitting::Inert => (g.pow(pl.frob, (w.f / pl.place.f) as usize), pl.inertia.clone()),
                    Splitting::Ramified => match links.get(&pl.place.label) {
                        Some(k) => {
                            let k = g.subgroup(k)?;
                            if k.len() * ext.degree() as usize != pl.inertia.len() || !k.iter().all(|x| pl.inertia.contains(x)) {
                                return Err(LDataError::InvalidPlace(format!(
                                    "{}: linked kernel is not of index {} in inertia",
                                    pl.place.label,
                                    ext.degree()
                                )));
                            }
                            (pl.frob, k)
                        }
                        None => (pl.frob, pl.inertia.clone()),
                    },
                };
                places.push(GaloisPlace { place: w, frob, inertia, mono: pl.mono.clone() });
            }
        }
        GaloisDatum::new(ext.top().clone(), self.rep.clone(), places, None, None)
    }

    /// Irreducible constituents are not tracked; this only forwards to the representation.
    pub fn is_irreducible(&self) -> bool {
        self.rep.is_irreducible()
    }

    pub fn with_places(&self, places: Vec<GaloisPlace>) -> Result<Self, LDataError> {
        GaloisDatum::new(self.field.clone(), self.rep.clone(), places, self.epsilon.clone(), self.arch.clone())
    }
}

//! Descent of Satake tables along pairwise disjoint cyclic extensions of prime degree.

use super::ReductionError;
use crate::ldata::{CyclicExtension, FormalDatum, LData};

/// A table over the top of `ext`, with the base-field seed whose twists by powers of
/// `ext`'s character are the candidate descents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentObject {
    pub ext: CyclicExtension,
    pub table: FormalDatum,
    pub seed: Option<FormalDatum>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descent {
    pub datum: FormalDatum,
    /// `j` with `datum = seed (x) chi_1^j`.
    pub twist: u32,
    pub candidates: usize,
    /// Objects the chosen candidate was verified against.
    pub checked: usize,
}

/// `((i, j), BC of object i along chi_j)` for every ordered pair `i != j`.
pub fn compositum_tables(objects: &[DescentObject]) -> Result<Vec<((usize, usize), FormalDatum)>, ReductionError> {
    let mut out = Vec::new();
    for (i, a) in objects.iter().enumerate() {
        for (j, b) in objects.iter().enumerate() {
            if i != j {
                let ext = CyclicExtension::new(a.table.field().clone(), b.ext.chi().clone())?;
                out.push(((i, j), a.table.base_change(&ext)?));
            }
        }
    }
    Ok(out)
}

fn profiles_agree(x: &FormalDatum, y: &FormalDatum, labels: &[String]) -> Result<Option<String>, ReductionError> {
    let (x, y) = (LData::Formal(x.clone()), LData::Formal(y.clone()));
    for l in labels {
        if x.fiber_profile(l)? != y.fiber_profile(l)? {
            return Ok(Some(l.clone()));
        }
    }
    Ok(None)
}

/// The unique twist of object 1's seed whose base changes match every object over the
/// `good` base places.  `compositum` must come from [`compositum_tables`].
pub fn descend(
    objects: &[DescentObject],
    compositum: &[((usize, usize), FormalDatum)],
    good: &[String],
) -> Result<Descent, ReductionError> {
    if objects.len() < 2 {
        return Err(ReductionError::NoDescent(format!("need at least two objects, got {}", objects.len())));
    }
    let base = objects[0].ext.base();
    for (i, o) in objects.iter().enumerate() {
        if o.ext.base() != base || o.table.field() != o.ext.top() {
            return Err(ReductionError::NoDescent(format!("object {i} is not over a cyclic extension of {base}")));
        }
    }
    for i in 0..objects.len() {
        for j in i + 1..objects.len() {
            let get = |a, b| compositum.iter().find(|(k, _)| *k == (a, b)).map(|(_, t)| t);
            let (x, y) = get(i, j)
                .zip(get(j, i))
                .ok_or_else(|| ReductionError::NoDescent(format!("missing compositum table for ({i}, {j})")))?;
            if let Some(l) = profiles_agree(x, y, good)? {
                return Err(ReductionError::NoDescent(format!("objects {i} and {j} disagree over the compositum at {l}")));
            }
        }
    }
    let first = &objects[0];
    let seed = first.seed.as_ref().ok_or_else(|| ReductionError::NoDescent("object 0 carries no seed".into()))?;
    if seed.field() != base {
        return Err(ReductionError::NoDescent(format!("seed is over {}, not {base}", seed.field())));
    }
    let p = first.ext.degree();
    let mut matches = Vec::new();
    for j in 0..p {
        let cand = seed.twist(&first.ext.chi().pow(i64::from(j)));
        let up1 = cand.base_change(&first.ext)?;
        if profiles_agree(&up1, &first.table, good)?.is_some() {
            continue;
        }
        let up2 = cand.base_change(&objects[1].ext)?;
        if profiles_agree(&up2, &objects[1].table, good)?.is_none() {
            matches.push((j, cand));
        }
    }
    if matches.len() > 1 {
        return Err(ReductionError::AmbiguousDescent(matches.into_iter().map(|m| m.0).collect()));
    }
    let (twist, datum) = matches
        .pop()
        .ok_or_else(|| ReductionError::NoDescent("no twist of the seed base-changes to the first two objects".into()))?;
    for (i, o) in objects.iter().enumerate().skip(2) {
        let up = datum.base_change(&o.ext)?;
        if let Some(l) = profiles_agree(&up, &o.table, good)? {
            return Err(ReductionError::NoDescent(format!("descent does not base-change to object {i} at {l}")));
        }
    }
    Ok(Descent { datum, twist, candidates: p as usize, checked: objects.len() })
}

//! The recursive driver: reduce, lift the semistable leaves, descend back up.

use super::certificate::{node_header, plan_block};
use super::descent::{compositum_tables, descend, DescentObject};
use super::step::{build_reduction_step, select_places, StepPlan};
use super::{RamModulus, ReductionError};
use crate::gw::DirichletCharacter;
use crate::ldata::{CyclicExtension, Field, FormalDatum, GaloisDatum, LData};
use crate::par::{self, Mode};

/// Lift of an everywhere-semistable datum to a Satake table over the same field.
pub type Lifter<'a> = &'a (dyn Fn(&GaloisDatum) -> Result<FormalDatum, String> + Sync);

/// Frobenius eigenvalues as Satake parameters.
pub fn tautological_lifter(d: &GaloisDatum) -> Result<FormalDatum, String> {
    LData::Galois(d.clone()).to_formal().map_err(|e| e.to_string())
}

#[derive(Clone, Debug)]
pub struct Branch {
    pub probe: String,
    pub character: DirichletCharacter,
    pub auxiliary: Vec<u64>,
    pub ext: CyclicExtension,
    pub child: ReductionNode,
}

#[derive(Clone, Debug)]
pub struct StepRecord {
    pub plan: StepPlan,
    pub branches: Vec<Branch>,
    pub twist: u32,
    pub candidates: usize,
    /// Base places at which the lift was checked against the Artin factors.
    pub good: Vec<String>,
}

#[derive(Clone, Debug)]
pub enum NodeKind {
    Leaf,
    Step(StepRecord),
}

#[derive(Clone, Debug)]
pub struct ReductionNode {
    pub path: String,
    pub datum: GaloisDatum,
    pub modulus: Option<RamModulus>,
    pub kind: NodeKind,
    pub lift: FormalDatum,
}

impl ReductionNode {
    pub fn depth(&self) -> usize {
        match &self.kind {
            NodeKind::Leaf => 0,
            NodeKind::Step(s) => 1 + s.branches.iter().map(|b| b.child.depth()).max().unwrap_or(0),
        }
    }

    /// Preorder.
    pub fn nodes(&self) -> Vec<&ReductionNode> {
        let mut out = vec![self];
        if let NodeKind::Step(s) = &self.kind {
            for b in &s.branches {
                out.extend(b.child.nodes());
            }
        }
        out
    }

    pub fn leaves(&self) -> usize {
        self.nodes().iter().filter(|n| matches!(n.kind, NodeKind::Leaf)).count()
    }
}

pub fn run_reduction(d: &GaloisDatum, lifter: Lifter<'_>, budget: usize) -> Result<super::Certificate, ReductionError> {
    run_reduction_with(d, lifter, budget, Mode::default())
}

/// Probe branches run through [`par::try_map`] in the given mode; the result does not
/// depend on the mode.
pub fn run_reduction_with(d: &GaloisDatum, lifter: Lifter<'_>, budget: usize, mode: Mode) -> Result<super::Certificate, ReductionError> {
    let root = reduce_node(d, "0", lifter, budget, mode)?;
    Ok(super::Certificate::new(d.clone(), budget, root))
}

fn lift_contract(d: &GaloisDatum, lift: &FormalDatum, labels: &[String], path: &str) -> Result<(), ReductionError> {
    if lift.field() != d.field() {
        return Err(ReductionError::LiftContract(format!("{path}: lift is over {}, datum over {}", lift.field(), d.field())));
    }
    for l in labels {
        let want = d.artin_local_factor(l)?;
        let got = lift.local_factor(l)?;
        if got != want {
            return Err(ReductionError::LiftContract(format!("{path}: at {l} lift has {got}, Artin factor is {want}")));
        }
    }
    Ok(())
}

fn reduce_node(d: &GaloisDatum, path: &str, lifter: Lifter<'_>, budget: usize, mode: Mode) -> Result<ReductionNode, ReductionError> {
    let plan = match select_places(d, budget) {
        Err(ReductionError::Semistable) => {
            let lift = lifter(d).map_err(|message| ReductionError::Lifter {
                path: path.to_string(),
                message,
                partial: String::new(),
            })?;
            let all: Vec<String> = d.places().iter().map(|p| p.place.label.clone()).collect();
            lift_contract(d, &lift, &all, path)?;
            return Ok(ReductionNode { path: path.to_string(), datum: d.clone(), modulus: None, kind: NodeKind::Leaf, lift });
        }
        r => r?,
    };
    let jobs: Vec<(usize, String)> = plan.probes.iter().cloned().enumerate().collect();
    let branches = par::try_map(mode, &jobs, |(i, w)| {
        let step = build_reduction_step(d, &plan, w)?;
        let child = reduce_node(&step.child, &format!("{path}.{i}"), lifter, budget, mode)?;
        Ok::<_, ReductionError>(Branch { probe: step.probe, character: step.character, auxiliary: step.auxiliary, ext: step.ext, child })
    })
    .map_err(|e| match e {
        ReductionError::Lifter { path: p, message, partial } => ReductionError::Lifter {
            path: p,
            message,
            partial: format!("{}{}{partial}", node_header(path, d, Some(plan.modulus)), plan_block(&plan)),
        },
        e => e,
    })?;

    for (i, a) in branches.iter().enumerate() {
        for (j, b) in branches.iter().enumerate() {
            if i != j && CyclicExtension::new(a.ext.top().clone(), b.character.clone()).is_err() {
                return Err(ReductionError::NotDisjoint(format!("probe fields for {} and {}", a.probe, b.probe)));
            }
        }
    }

    let mut good = Vec::new();
    for pl in d.places() {
        let ramified = branches.iter().any(|b| Field::char_value(&b.character, &pl.place).is_none());
        if !ramified && d.unramified_at(&pl.place.label)? {
            good.push(pl.place.label.clone());
        }
    }
    let seed = LData::Galois(d.clone()).to_formal()?;
    let objects: Vec<DescentObject> = branches
        .iter()
        .map(|b| DescentObject { ext: b.ext.clone(), table: b.child.lift.clone(), seed: Some(seed.clone()) })
        .collect();
    let comp = compositum_tables(&objects)?;
    let descent = descend(&objects, &comp, &good)?;
    lift_contract(d, &descent.datum, &good, path)?;
    Ok(ReductionNode {
        path: path.to_string(),
        datum: d.clone(),
        modulus: Some(plan.modulus),
        kind: NodeKind::Step(StepRecord { plan, branches, twist: descent.twist, candidates: descent.candidates, good }),
        lift: descent.datum,
    })
}

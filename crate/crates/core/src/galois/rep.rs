//! Exact matrix representations of finite groups, their characters, and
//! one-dimensional characters.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::group::{FiniteGroup, MAX_ORDER};
use super::matrix::Matrix;
use super::GaloisError;
use crate::algebra::{CycNum, RootOfUnity};

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A homomorphism `G -> mu_infinity`.
#[derive(Clone, Debug)]
pub struct OneDimChar {
    group: Arc<FiniteGroup>,
    values: Vec<RootOfUnity>,
}

impl PartialEq for OneDimChar {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && same_group(&self.group, &other.group)
    }
}

impl Eq for OneDimChar {}

impl OneDimChar {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<RootOfUnity>) -> Result<Self, GaloisError> {
        if values.len() != group.order() {
            return Err(GaloisError::DimensionMismatch(format!("{} values for a group of order {}", values.len(), group.order())));
        }
        let n = group.order();
        for a in 0..n {
            for b in 0..n {
                if values[group.mul(a, b)] != values[a].mul(&values[b]) {
                    return Err(GaloisError::NotHomomorphism(a, b));
                }
            }
        }
        Ok(OneDimChar { group, values })
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let values = vec![RootOfUnity::ONE; group.order()];
        OneDimChar { group, values }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn value(&self, g: usize) -> RootOfUnity {
        self.values[g]
    }

    pub fn values(&self) -> &[RootOfUnity] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_one())
    }

    pub fn order(&self) -> u32 {
        self.values.iter().fold(1u32, |acc, v| num_integer::lcm(acc, v.order()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.mul(b)).collect();
        OneDimChar { group: self.group.clone(), values }
    }

    pub fn inv(&self) -> Self {
        OneDimChar { group: self.group.clone(), values: self.values.iter().map(|v| v.inv()).collect() }
    }

    pub fn pow(&self, e: i64) -> Self {
        OneDimChar { group: self.group.clone(), values: self.values.iter().map(|v| v.pow(e)).collect() }
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&g| self.values[g].is_one()).collect()
    }

    pub fn character(&self) -> Vec<CycNum> {
        self.values.iter().map(|v| v.to_cyc()).collect()
    }
}

/// Every one-dimensional character of `group`, trivial character first.
pub fn linear_characters(group: &Arc<FiniteGroup>) -> Vec<OneDimChar> {
    let gens = group.generators().to_vec();
    let orders: Vec<u32> = gens.iter().map(|&g| group.element_order(g) as u32).collect();
    let total: usize = orders.iter().map(|&o| o as usize).product();
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let assign: Vec<RootOfUnity> = orders
            .iter()
            .map(|&o| {
                let e = c % o as usize;
                c /= o as usize;
                RootOfUnity::new(o, e as i64)
            })
            .collect();
        let values: Vec<RootOfUnity> = (0..group.order())
            .map(|a| group.word(a).iter().fold(RootOfUnity::ONE, |acc, &i| acc.mul(&assign[i])))
            .collect();
        if let Ok(ch) = OneDimChar::new(group.clone(), values) {
            out.push(ch);
        }
    }
    out
}

/// A representation `G -> GL_n` with exact cyclotomic matrices.
#[derive(Clone, Debug)]
pub struct Representation {
    group: Arc<FiniteGroup>,
    dim: usize,
    mats: Vec<Matrix>,
    character: Vec<CycNum>,
}

impl Representation {
    /// From one matrix per element; the homomorphism property is checked exhaustively.
    pub fn from_matrices(group: Arc<FiniteGroup>, mats: Vec<Matrix>) -> Result<Self, GaloisError> {
        if mats.len() != group.order() {
            return Err(GaloisError::DimensionMismatch(format!("{} matrices for a group of order {}", mats.len(), group.order())));
        }
        let dim = mats.first().map_or(0, |m| m.dim());
        if mats.iter().any(|m| m.dim() != dim) {
            return Err(GaloisError::DimensionMismatch("matrices of different sizes".into()));
        }
        let n = group.order();
        for a in 0..n {
            for b in 0..n {
                if mats[group.mul(a, b)] != mats[a].mul(&mats[b]) {
                    return Err(GaloisError::NotHomomorphism(a, b));
                }
            }
        }
        let character = mats.iter().map(|m| m.trace()).collect();
        Ok(Representation { group, dim, mats, character })
    }

    /// Extends images of a generating set of elements to the whole group.
    pub fn from_images(group: Arc<FiniteGroup>, images: &[(usize, Matrix)]) -> Result<Self, GaloisError> {
        let dim = images.first().map_or(1, |(_, m)| m.dim());
        let n = group.order();
        let mut mats: Vec<Option<Matrix>> = vec![None; n];
        mats[group.identity()] = Some(Matrix::identity(dim));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            for (s, m) in images {
                if *s >= n {
                    return Err(GaloisError::DimensionMismatch(format!("element {s} out of range")));
                }
                let y = group.mul(x, *s);
                if mats[y].is_none() {
                    mats[y] = Some(mats[x].as_ref().unwrap().mul(m));
                    queue.push_back(y);
                }
            }
        }
        let mats = mats
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| GaloisError::DimensionMismatch(format!("element {i} not reached by the given images"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_matrices(group, mats)
    }

    /// The matrix group generated by `gens`, as a representation of itself.  Element 0
    /// is the identity, elements are numbered breadth-first and generator `i` is
    /// element `i + 1` when the generators are distinct and nontrivial.
    pub fn generated_by(gens: &[Matrix]) -> Result<Self, GaloisError> {
        let dim = gens.first().map_or(1, |m| m.dim());
        if gens.iter().any(|m| m.dim() != dim) {
            return Err(GaloisError::DimensionMismatch("generators of different sizes".into()));
        }
        let big = gens.iter().flat_map(|m| m.entries().iter().map(|c| c.conductor())).fold(1u32, num_integer::lcm);
        let key = |m: &Matrix| m.entries().iter().map(|c| c.lift(big).to_string()).collect::<Vec<_>>().join(";");
        let mut elems = vec![Matrix::identity(dim)];
        let mut index = HashMap::from([(key(&elems[0]), 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let prod = elems[i].mul(g);
                let k = key(&prod);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(k) {
                    if elems.len() >= MAX_ORDER {
                        return Err(GaloisError::TooLarge(elems.len() + 1));
                    }
                    e.insert(elems.len());
                    queue.push_back(elems.len());
                    elems.push(prod);
                }
            }
        }
        let n = elems.len();
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| index[&key(&elems[a].mul(&elems[b]))]).collect()).collect();
        let mut group = FiniteGroup::from_table(table)?;
        group.set_generators(gens.iter().map(|g| index[&key(g)]).collect());
        Self::from_matrices(Arc::new(group), elems)
    }

    pub fn from_linear(ch: &OneDimChar) -> Self {
        let mats = ch.values.iter().map(|v| Matrix::scalar(1, v.to_cyc())).collect();
        Self::from_matrices(ch.group.clone(), mats).expect("linear character is a homomorphism")
    }

    pub fn trivial(group: Arc<FiniteGroup>, dim: usize) -> Self {
        let mats = vec![Matrix::identity(dim); group.order()];
        Self::from_matrices(group, mats).unwrap()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.mats[g]
    }

    pub fn character(&self) -> &[CycNum] {
        &self.character
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Self, GaloisError> {
        if !same_group(&self.group, &other.group) {
            return Err(GaloisError::GroupMismatch);
        }
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.block_diag(b)).collect();
        Self::from_matrices(self.group.clone(), mats)
    }

    /// Outer tensor product, a representation of `G x H` (indexing as in
    /// [`FiniteGroup::direct_product`]).
    pub fn outer_tensor(&self, other: &Representation) -> Self {
        let group = Arc::new(self.group.direct_product(&other.group));
        let m = other.group.order();
        let mats = (0..group.order()).map(|x| self.mats[x / m].kron(&other.mats[x % m])).collect();
        Self::from_matrices(group, mats).expect("tensor of homomorphisms")
    }

    /// Same matrices viewed on an equal group object (used to align `Arc`s).
    pub fn on_group(&self, group: Arc<FiniteGroup>) -> Result<Self, GaloisError> {
        if *group != *self.group {
            return Err(GaloisError::GroupMismatch);
        }
        Ok(Representation { group, ..self.clone() })
    }

    /// `psi(g) * rho(g)`.
    pub fn twist(&self, psi: &OneDimChar) -> Result<Self, GaloisError> {
        if !same_group(&self.group, &psi.group) {
            return Err(GaloisError::GroupMismatch);
        }
        let mats: Vec<Matrix> = self.mats.iter().zip(&psi.values).map(|(m, v)| m.scale(&v.to_cyc())).collect();
        let character = mats.iter().map(|m| m.trace()).collect();
        Ok(Representation { group: self.group.clone(), dim: self.dim, mats, character })
    }

    /// Contragredient `g -> rho(g^-1)^T`.
    pub fn dual(&self) -> Self {
        let g = &self.group;
        let mats: Vec<Matrix> = (0..g.order()).map(|a| self.mats[g.inv(a)].transpose()).collect();
        let character = mats.iter().map(|m| m.trace()).collect();
        Representation { group: self.group.clone(), dim: self.dim, mats, character }
    }

    /// Restriction to a subgroup, realised over the induced group on `sub`
    /// (sorted); element `i` of the result is `sub[i]`.
    pub fn restrict(&self, sub: &[usize]) -> Result<(Representation, Vec<usize>), GaloisError> {
        let (h, emb) = self.group.induced(sub)?;
        let mats = emb.iter().map(|&x| self.mats[x].clone()).collect();
        Ok((Self::from_matrices(Arc::new(h), mats)?, emb))
    }

    pub fn is_irreducible(&self) -> bool {
        inner_product(&self.character, &self.character).to_rational() == Some(BigRational::from_integer(BigInt::from(1)))
    }

    /// Whether every element of `set` acts as the identity.
    pub fn trivial_on(&self, set: &[usize]) -> bool {
        set.iter().all(|&h| self.mats[h].is_identity())
    }

    /// Elements acting trivially.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| self.mats[g].is_identity()).collect()
    }

    fn check_normalizes(&self, inertia: &[usize], sigma: usize) -> Result<Vec<usize>, GaloisError> {
        let inertia = self.group.subgroup(inertia)?;
        if !self.group.normalizes(sigma, &inertia) {
            return Err(GaloisError::DoesNotNormalize { sigma, subgroup: inertia });
        }
        Ok(inertia)
    }

    /// Trace of `rho(sigma)` on the invariants `V^I`: `(1/|I|) sum_h trace rho(sigma h)`.
    pub fn invariant_trace(&self, inertia: &[usize], sigma: usize) -> Result<CycNum, GaloisError> {
        let inertia = self.check_normalizes(inertia, sigma)?;
        Ok(self.projected_trace(&inertia, sigma))
    }

    fn projected_trace(&self, inertia: &[usize], sigma: usize) -> CycNum {
        let sum = inertia.iter().fold(CycNum::zero(), |acc, &h| &acc + &self.character[self.group.mul(sigma, h)]);
        let inv = BigRational::new(BigInt::from(1), BigInt::from(inertia.len()));
        &sum * &CycNum::from_rational(inv)
    }

    /// Eigenvalues of `rho(sigma)` on `V^I`, as a sorted multiset.  Multiplicities are
    /// read off the traces of the powers of `sigma` on the projected space.
    pub fn invariant_eigenvalues(&self, inertia: &[usize], sigma: usize) -> Result<Vec<RootOfUnity>, GaloisError> {
        let inertia = self.check_normalizes(inertia, sigma)?;
        let g = &self.group;
        let k = g.element_order(sigma) as u32;
        let traces: Vec<CycNum> = (0..k as usize).map(|t| self.projected_trace(&inertia, g.pow(sigma, t))).collect();
        let mut out = Vec::new();
        for j in 0..k {
            let sum = traces.iter().enumerate().fold(CycNum::zero(), |acc, (t, tr)| {
                &acc + &(tr * &CycNum::root_of_unity(k, -(j as i64) * t as i64))
            });
            let mult = (&sum * &CycNum::from_rational(BigRational::new(BigInt::from(1), BigInt::from(k))))
                .to_rational()
                .filter(|r| r.is_integer() && !r.is_negative_int())
                .ok_or(GaloisError::Internal("eigenvalue multiplicity is not a natural number".into()))?;
            let mult: usize = mult.to_integer().try_into().map_err(|_| GaloisError::Internal("multiplicity overflow".into()))?;
            out.extend(std::iter::repeat_n(RootOfUnity::new(k, j as i64), mult));
        }
        out.sort();
        Ok(out)
    }

    /// All `psi` with `rho (x) psi ~ rho`, decided by character equality.
    pub fn self_twist_characters(&self) -> Result<Vec<OneDimChar>, GaloisError> {
        if !self.is_irreducible() {
            return Err(GaloisError::Reducible);
        }
        let n = self.dim as u32;
        let mut out = Vec::new();
        for psi in linear_characters(&self.group) {
            let same = self
                .character
                .iter()
                .zip(psi.values.iter())
                .all(|(c, v)| c.is_zero() || v.is_one());
            if same {
                if !n.is_multiple_of(psi.order()) {
                    return Err(GaloisError::Internal(format!("self-twist of order {} does not divide dimension {n}", psi.order())));
                }
                out.push(psi);
            }
        }
        Ok(out)
    }
}

trait NonNegInt {
    fn is_negative_int(&self) -> bool;
}

impl NonNegInt for BigRational {
    fn is_negative_int(&self) -> bool {
        self < &BigRational::zero()
    }
}

/// `(1/|G|) sum chi1(g) conj(chi2(g))`.
pub fn inner_product(chi1: &[CycNum], chi2: &[CycNum]) -> CycNum {
    assert_eq!(chi1.len(), chi2.len(), "class functions on different groups");
    let sum = chi1.iter().zip(chi2).fold(CycNum::zero(), |acc, (a, b)| &acc + &(a * &b.conj()));
    &sum * &CycNum::from_rational(BigRational::new(BigInt::from(1), BigInt::from(chi1.len())))
}

//! Local factors `prod (1 - alpha_i T)` with `T = q^-s`, epsilon monomials and
//! archimedean Gamma-shift multisets.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

use super::cyclo::{fmt_rational, CycNum};
use super::root::{fmt_rat64, InverseRoot, RootOfUnity};
use super::AlgebraError;

/// A coefficient of an expanded local factor: a Laurent polynomial in the
/// formal symbol `q^(1/4)` with cyclotomic coefficients.
#[derive(Clone, Debug, Default)]
pub struct WeilCoeff(BTreeMap<i64, CycNum>);

impl WeilCoeff {
    pub fn zero() -> Self {
        WeilCoeff(BTreeMap::new())
    }

    pub fn constant(c: CycNum) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(quarter_exp: i64, c: CycNum) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(quarter_exp, c);
        }
        WeilCoeff(m)
    }

    pub fn from_root(a: &InverseRoot) -> Self {
        Self::monomial(a.quarter_exponent(), a.unit.to_cyc())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// The coefficient as a plain cyclotomic number when no power of `q` occurs.
    pub fn as_cyc(&self) -> Option<CycNum> {
        match self.0.len() {
            0 => Some(CycNum::zero()),
            1 => self.0.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &CycNum)> {
        self.0.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (e, c) in &other.0 {
            let s = match out.remove(e) {
                Some(x) => &x + c,
                None => c.clone(),
            };
            if !s.is_zero() {
                out.insert(*e, s);
            }
        }
        WeilCoeff(out)
    }

    pub fn neg(&self) -> Self {
        WeilCoeff(self.0.iter().map(|(e, c)| (*e, -c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc = WeilCoeff::zero();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &other.0 {
                acc = acc.add(&WeilCoeff::monomial(e1 + e2, c1 * c2));
            }
        }
        acc
    }

    /// Rewrites `q^(e/4)` as `(q^p)^(e/4p)`; fails unless every exponent is divisible by `p`.
    fn rescale(&self, p: u32) -> Option<Self> {
        let mut out = BTreeMap::new();
        for (e, c) in &self.0 {
            if e % p as i64 != 0 {
                return None;
            }
            out.insert(e / p as i64, c.clone());
        }
        Some(WeilCoeff(out))
    }
}

impl PartialEq for WeilCoeff {
    fn eq(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|((e1, c1), (e2, c2))| e1 == e2 && c1 == c2)
    }
}

impl fmt::Display for WeilCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(e, c)| {
                let c = match c.to_rational() {
                    Some(r) => fmt_rational(&r),
                    None => c.to_string(),
                };
                if *e == 0 {
                    c
                } else {
                    format!("{c}*q^({})", fmt_rat64(&Rational64::new(*e, 4)))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Polynomial with [`WeilCoeff`] coefficients, constant term first.
pub type WeilPoly = Vec<WeilCoeff>;

pub fn poly_mul(a: &[WeilCoeff], b: &[WeilCoeff]) -> WeilPoly {
    let mut out = vec![WeilCoeff::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

pub fn poly_eq(a: &[WeilCoeff], b: &[WeilCoeff]) -> bool {
    let n = a.len().max(b.len());
    let zero = WeilCoeff::zero();
    (0..n).all(|i| a.get(i).unwrap_or(&zero) == b.get(i).unwrap_or(&zero))
}

/// Re-expresses a polynomial in `T` that only involves powers of `T^p` as a
/// polynomial in `T_w = T^p`, with `q_w = q^p`.
pub fn poly_in_power(a: &[WeilCoeff], p: u32) -> Option<WeilPoly> {
    let p_us = p as usize;
    if a.iter().enumerate().any(|(i, c)| i % p_us != 0 && !c.is_zero()) {
        return None;
    }
    a.iter().step_by(p_us).map(|c| c.rescale(p)).collect()
}

pub fn fmt_poly(a: &[WeilCoeff]) -> String {
    let mut parts = Vec::new();
    for (i, c) in a.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = if c.0.len() > 1 { format!("({c})") } else { c.to_string() };
        parts.push(match i {
            0 => c,
            1 => format!("{c}*T"),
            _ => format!("{c}*T^{i}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Multiset of inverse roots at a finite place with residue field of size `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalFactor {
    q: u64,
    roots: Vec<InverseRoot>,
}

impl LocalFactor {
    pub fn new(q: u64, mut roots: Vec<InverseRoot>) -> Result<Self, AlgebraError> {
        if let Some(r) = roots.iter().find(|r| r.q != q) {
            return Err(AlgebraError::MismatchedBase(q, r.q));
        }
        roots.sort();
        Ok(LocalFactor { q, roots })
    }

    pub fn unitary(q: u64, units: impl IntoIterator<Item = RootOfUnity>) -> Self {
        Self::new(q, units.into_iter().map(|z| InverseRoot::unitary(z, q)).collect()).unwrap()
    }

    /// The factor 1 (empty multiset).
    pub fn trivial(q: u64) -> Self {
        LocalFactor { q, roots: Vec::new() }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[InverseRoot] {
        &self.roots
    }

    /// Coefficients of `prod (1 - alpha_i T)`, length `degree + 1`.
    pub fn expand(&self) -> WeilPoly {
        let mut acc = vec![WeilCoeff::constant(CycNum::one())];
        for a in &self.roots {
            acc = poly_mul(&acc, &[WeilCoeff::constant(CycNum::one()), WeilCoeff::from_root(a).neg()]);
        }
        acc
    }

    /// Multiset union, the factor of a direct sum.
    pub fn union(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.q != other.q {
            return Err(AlgebraError::MismatchedBase(self.q, other.q));
        }
        Self::new(self.q, self.roots.iter().chain(&other.roots).copied().collect())
    }

    pub fn twist(&self, z: RootOfUnity) -> Self {
        Self::new(self.q, self.roots.iter().map(|r| r.twist(z)).collect()).unwrap()
    }

    pub fn contragredient(&self) -> Self {
        Self::new(self.q, self.roots.iter().map(|r| r.inverse()).collect()).unwrap()
    }

    /// `{alpha_i^f}` over the residue field of size `q^f`.
    pub fn extend(&self, f: u32) -> Self {
        Self::new(self.q.pow(f), self.roots.iter().map(|r| r.extend(f)).collect()).unwrap()
    }

    /// Multiset difference `self - other` and `other - self`.
    pub fn cancel(&self, other: &Self) -> (Vec<InverseRoot>, Vec<InverseRoot>) {
        let mut rest = other.roots.clone();
        let mut left = Vec::new();
        for r in &self.roots {
            match rest.iter().position(|x| x == r) {
                Some(i) => {
                    rest.remove(i);
                }
                None => left.push(*r),
            }
        }
        (left, rest)
    }
}

impl fmt::Display for LocalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.roots.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.roots.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Whether `expand(num) / expand(den)` is identically constant, i.e. the multisets agree.
pub fn factor_ratio_is_constant(num: &LocalFactor, den: &LocalFactor) -> Result<bool, AlgebraError> {
    if num.q != den.q {
        return Err(AlgebraError::MismatchedBase(num.q, den.q));
    }
    Ok(num.roots == den.roots)
}

/// `epsilon(s) = W * Delta^(1/2 - s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonDatum {
    pub root_number: CycNum,
    pub conductor: BigRational,
}

impl EpsilonDatum {
    pub fn new(root_number: CycNum, conductor: BigRational) -> Result<Self, AlgebraError> {
        if conductor <= BigRational::zero() {
            return Err(AlgebraError::NonPositiveConductor(fmt_rational(&conductor)));
        }
        if root_number.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(EpsilonDatum { root_number, conductor })
    }

    pub fn trivial() -> Self {
        EpsilonDatum { root_number: CycNum::one(), conductor: BigRational::one() }
    }

    /// From `L(1-s, dual) = eps(s) L(s)`: the dual carries `W^-1` and the same conductor.
    pub fn contragredient(&self) -> Self {
        EpsilonDatum { root_number: self.root_number.inverse().expect("nonzero root number"), conductor: self.conductor.clone() }
    }

    /// `eps_self / eps_other` as a monomial `W' * Delta'^(1/2 - s)`.
    pub fn ratio(&self, other: &Self) -> Self {
        EpsilonDatum {
            root_number: &self.root_number * &other.root_number.inverse().expect("nonzero root number"),
            conductor: &self.conductor / &other.conductor,
        }
    }
}

impl fmt::Display for EpsilonDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.root_number, fmt_rational(&self.conductor))
    }
}

/// `prod Gamma_R(s + mu)` as a multiset of shifts with denominators dividing 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ArchFactor {
    shifts: Vec<Rational64>,
}

impl ArchFactor {
    pub fn new(mut shifts: Vec<Rational64>) -> Result<Self, AlgebraError> {
        if let Some(s) = shifts.iter().find(|s| 2 % *s.denom() != 0) {
            return Err(AlgebraError::InvalidWeight(s.to_string()));
        }
        shifts.sort();
        Ok(ArchFactor { shifts })
    }

    pub fn shifts(&self) -> &[Rational64] {
        &self.shifts
    }

    /// Twist by an odd character swaps the parity of integral shifts.
    pub fn twist_odd(&self) -> Self {
        let shifts = self
            .shifts
            .iter()
            .map(|s| {
                if s.is_integer() {
                    if s.to_integer().rem_euclid(2) == 0 {
                        s + 1
                    } else {
                        s - 1
                    }
                } else {
                    *s
                }
            })
            .collect();
        Self::new(shifts).unwrap()
    }
}

impl fmt::Display for ArchFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shifts.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self.shifts.iter().map(fmt_rat64).collect();
        write!(f, "{}", parts.join(" "))
    }
}

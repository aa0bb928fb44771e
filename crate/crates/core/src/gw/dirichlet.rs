//! Dirichlet characters described by their values on a fixed set of generators
//! of `(Z/N)^*`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use super::arith::{crt, dlog, factorize, pow_mod, primitive_root};
use super::GwError;
use crate::algebra::RootOfUnity;

/// One generator of `(Z/N)^*` coming from the `p^a` part of `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitGen {
    pub p: u64,
    pub a: u32,
    /// Residue modulo `p^a`.
    pub local: u64,
    /// CRT lift modulo `N`, congruent to 1 at the other prime powers.
    pub residue: u64,
    pub order: u64,
}

/// Generators of `(Z/N)^*`: for odd `p^a` the smallest primitive root, for `2^a` the
/// pair `-1, 5` (only `-1` when `a = 2`, nothing when `a <= 1`).
pub fn unit_group_generators(n: u64) -> Vec<UnitGen> {
    let parts = factorize(n);
    let mut out = Vec::new();
    for &(p, a) in &parts {
        let pa = p.pow(a);
        let locals: Vec<(u64, u64)> = if p == 2 {
            match a {
                1 => vec![],
                2 => vec![(3, 2)],
                _ => vec![(pa - 1, 2), (5, pa / 8 * 2)],
            }
        } else {
            vec![(primitive_root(p, a), pa / p * (p - 1))]
        };
        for (local, order) in locals {
            let congr: Vec<(u64, u64)> = parts
                .iter()
                .map(|&(q, b)| if q == p { (local, pa) } else { (1, q.pow(b)) })
                .collect();
            let (residue, _) = crt(&congr);
            out.push(UnitGen { p, a, local, residue, order });
        }
    }
    out
}

/// Exponents of `x` (a unit mod `p^a`) with respect to the local generators of `p^a`.
fn local_exponents(p: u64, a: u32, x: u64) -> Vec<u64> {
    let pa = p.pow(a);
    let x = x % pa;
    if p == 2 {
        match a {
            0 | 1 => vec![],
            2 => vec![u64::from(x % 4 == 3)],
            _ => {
                let s = u64::from(x % 4 == 3);
                let y = if s == 1 { pa - x } else { x };
                vec![s, dlog(5, y, pa, pa / 4).expect("1 mod 4 is a power of 5")]
            }
        }
    } else {
        let g = primitive_root(p, a);
        vec![dlog(g, x, pa, pa / p * (p - 1)).expect("primitive root")]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    gens: Vec<UnitGen>,
    values: Vec<RootOfUnity>,
}

impl DirichletCharacter {
    /// Values listed in the order of [`unit_group_generators`].
    pub fn new(modulus: u64, values: Vec<RootOfUnity>) -> Result<Self, GwError> {
        if modulus == 0 {
            return Err(GwError::InvalidPrescription("modulus must be positive".into()));
        }
        let gens = unit_group_generators(modulus);
        if gens.len() != values.len() {
            return Err(GwError::InvalidPrescription(format!(
                "modulus {modulus} has {} generators, {} values given",
                gens.len(),
                values.len()
            )));
        }
        for (g, v) in gens.iter().zip(&values) {
            if g.order % v.order() as u64 != 0 {
                return Err(GwError::InvalidPrescription(format!(
                    "value {v} on {} has order not dividing {}",
                    g.residue, g.order
                )));
            }
        }
        Ok(DirichletCharacter { modulus, gens, values })
    }

    pub fn trivial(modulus: u64) -> Self {
        let gens = unit_group_generators(modulus.max(1));
        let values = vec![RootOfUnity::ONE; gens.len()];
        DirichletCharacter { modulus: modulus.max(1), gens, values }
    }

    /// Character of `(Z/N)^*` defined by its value on each generator.
    pub fn from_generator_fn(modulus: u64, f: impl Fn(&UnitGen) -> RootOfUnity) -> Result<Self, GwError> {
        let values = unit_group_generators(modulus).iter().map(f).collect();
        Self::new(modulus, values)
    }

    /// The character mod `p` (odd prime) sending the smallest primitive root to `z`.
    pub fn on_prime(p: u64, z: RootOfUnity) -> Result<Self, GwError> {
        Self::new(p, vec![z])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[UnitGen] {
        &self.gens
    }

    pub fn values(&self) -> &[RootOfUnity] {
        &self.values
    }

    pub fn order(&self) -> u32 {
        self.values.iter().fold(1, |acc, v| acc.lcm(&v.order()))
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_one())
    }

    /// Value of the `p`-component at a unit `x` (modulo `p^a` of this modulus).
    fn component_value(&self, p: u64, x: u64) -> RootOfUnity {
        let idx: Vec<usize> = (0..self.gens.len()).filter(|&i| self.gens[i].p == p).collect();
        let Some(&first) = idx.first() else { return RootOfUnity::ONE };
        let exps = local_exponents(p, self.gens[first].a, x);
        idx.iter().zip(exps).fold(RootOfUnity::ONE, |acc, (&i, e)| acc.mul(&self.values[i].pow(e as i64)))
    }

    /// `chi(x)`, or `None` when `gcd(x, N) > 1`.
    pub fn value(&self, x: i64) -> Option<RootOfUnity> {
        let n = self.modulus as i64;
        let x = x.rem_euclid(n) as u64;
        if x.gcd(&self.modulus) != 1 && self.modulus != 1 {
            return None;
        }
        let mut primes: Vec<u64> = self.gens.iter().map(|g| g.p).collect();
        primes.dedup();
        Some(primes.iter().fold(RootOfUnity::ONE, |acc, &p| acc.mul(&self.component_value(p, x))))
    }

    pub fn is_odd(&self) -> bool {
        self.value(-1) == Some(RootOfUnity::MINUS_ONE)
    }

    /// Product character on the lcm of the moduli.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.modulus.lcm(&other.modulus);
        Self::from_generator_fn(n, |g| {
            let r = g.residue as i64;
            self.value(r).unwrap().mul(&other.value(r).unwrap())
        })
        .expect("product of characters")
    }

    pub fn pow(&self, e: i64) -> Self {
        DirichletCharacter { values: self.values.iter().map(|v| v.pow(e)).collect(), ..self.clone() }
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    /// Same character viewed modulo a multiple of the modulus.
    pub fn lift(&self, modulus: u64) -> Self {
        assert_eq!(modulus % self.modulus, 0, "lift to a non-multiple");
        Self::from_generator_fn(modulus, |g| self.value(g.residue as i64).unwrap()).unwrap()
    }

    /// Conductor exponent at `p`: least `c` such that the `p`-component factors through `p^c`.
    pub fn conductor_exponent(&self, p: u64) -> u32 {
        let Some(g) = self.gens.iter().find(|g| g.p == p) else { return 0 };
        let a = g.a;
        let comp_trivial = self.gens.iter().filter(|g| g.p == p).all(|g| {
            self.values[self.gens.iter().position(|h| h == g).unwrap()].is_one()
        });
        if comp_trivial {
            return 0;
        }
        let start = if p == 2 { 2 } else { 1 };
        (start..a)
            .find(|&c| self.component_value(p, 1 + p.pow(c)).is_one())
            .unwrap_or(a)
    }

    pub fn conductor(&self) -> u64 {
        let mut primes: Vec<u64> = self.gens.iter().map(|g| g.p).collect();
        primes.dedup();
        primes.iter().map(|&p| p.pow(self.conductor_exponent(p))).product()
    }

    pub fn primitive(&self) -> Self {
        let f = self.conductor();
        Self::from_generator_fn(f, |g| {
            // any integer congruent to g.local mod p^c, and 1 elsewhere mod N
            let congr: Vec<(u64, u64)> = factorize(self.modulus)
                .iter()
                .map(|&(q, b)| if q == g.p { (g.local % q.pow(b), q.pow(b)) } else { (1, q.pow(b)) })
                .collect();
            let (x, _) = crt(&congr);
            self.component_value(g.p, x)
        })
        .expect("primitive character")
    }

    /// The `p`-component as a character modulo `p^c`, `c` the conductor exponent.
    pub fn component(&self, p: u64) -> Self {
        let prim = self.primitive();
        let c = prim.conductor_exponent(p);
        Self::from_generator_fn(p.pow(c), |g| prim.component_value(p, g.local)).unwrap()
    }

    pub fn ramified_at(&self, p: u64) -> bool {
        self.conductor_exponent(p) > 0
    }

    /// Primes dividing the conductor.
    pub fn support(&self) -> Vec<u64> {
        factorize(self.conductor()).into_iter().map(|(p, _)| p).collect()
    }

    pub fn local_component(&self, p: u64) -> LocalPrescription {
        let prim = self.primitive();
        if !prim.modulus.is_multiple_of(p) {
            let value = prim.value(p as i64).expect("unit");
            LocalPrescription { p, kind: LocalKind::Unramified { value } }
        } else {
            let comp = self.component(p);
            let a = comp.gens.first().map_or(0, |g| g.a);
            LocalPrescription { p, kind: LocalKind::Ramified { a, values: comp.values } }
        }
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "mod {} values {}", self.modulus, vals.join(","))
    }
}

impl FromStr for DirichletCharacter {
    type Err = GwError;

    /// `mod N values v1,v2,...` (the value list may be empty).
    fn from_str(s: &str) -> Result<Self, GwError> {
        let bad = || GwError::Parse(format!("expected `mod N values ...`, got `{s}`"));
        let rest = s.trim().strip_prefix("mod").ok_or_else(bad)?.trim_start();
        let (n, vals) = match rest.split_once("values") {
            Some((n, v)) => (n.trim(), v.trim()),
            None => (rest.trim(), ""),
        };
        let n: u64 = n.parse().map_err(|_| bad())?;
        let values = if vals.is_empty() {
            Vec::new()
        } else {
            vals.split(',')
                .map(|v| v.trim().parse::<RootOfUnity>().map_err(|e| GwError::Parse(e.to_string())))
                .collect::<Result<_, _>>()?
        };
        Self::new(n, values)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalKind {
    Unramified { value: RootOfUnity },
    /// Values on the generators of `(Z/p^a)^*`; the character has conductor exactly `p^a`.
    Ramified { a: u32, values: Vec<RootOfUnity> },
}

/// A prescribed local component at one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalPrescription {
    pub p: u64,
    pub kind: LocalKind,
}

impl LocalPrescription {
    pub fn unramified(p: u64, value: RootOfUnity) -> Self {
        LocalPrescription { p, kind: LocalKind::Unramified { value } }
    }

    /// Checks primality of `p`, generator orders and primitivity of the ramified part.
    pub fn ramified(p: u64, a: u32, values: Vec<RootOfUnity>) -> Result<Self, GwError> {
        let pr = LocalPrescription { p, kind: LocalKind::Ramified { a, values } };
        pr.validate()?;
        Ok(pr)
    }

    pub fn validate(&self) -> Result<(), GwError> {
        if !super::arith::is_prime(self.p) {
            return Err(GwError::InvalidPrescription(format!("{} is not prime", self.p)));
        }
        if let LocalKind::Ramified { a, .. } = &self.kind {
            let chi = self.ramified_character().ok_or_else(|| {
                GwError::InvalidPrescription(format!("bad ramified values at {}", self.p))
            })?;
            if *a == 0 || chi.conductor_exponent(self.p) != *a {
                return Err(GwError::InvalidPrescription(format!(
                    "ramified prescription at {} is not primitive of level {}^{a}",
                    self.p, self.p
                )));
            }
        }
        Ok(())
    }

    pub fn is_ramified(&self) -> bool {
        matches!(self.kind, LocalKind::Ramified { .. })
    }

    /// The ramified part as a character modulo `p^a`.
    pub fn ramified_character(&self) -> Option<DirichletCharacter> {
        match &self.kind {
            LocalKind::Ramified { a, values } => DirichletCharacter::new(self.p.pow(*a), values.clone()).ok(),
            LocalKind::Unramified { .. } => None,
        }
    }

    pub fn order(&self) -> u32 {
        match &self.kind {
            LocalKind::Unramified { value } => value.order(),
            LocalKind::Ramified { values, .. } => values.iter().fold(1, |acc, v| acc.lcm(&v.order())),
        }
    }

    pub fn is_trivial(&self) -> bool {
        match &self.kind {
            LocalKind::Unramified { value } => value.is_one(),
            LocalKind::Ramified { .. } => false,
        }
    }

    /// Value on a local element `2^k * u` with `u` a unit at `p`; the uniformizer of a
    /// ramified component is sent to 1.
    pub fn eval_power_of_two(&self, k: u64) -> RootOfUnity {
        match &self.kind {
            LocalKind::Unramified { value } => {
                if self.p == 2 {
                    value.pow(k as i64)
                } else {
                    RootOfUnity::ONE
                }
            }
            LocalKind::Ramified { a, .. } => {
                if self.p == 2 {
                    RootOfUnity::ONE
                } else {
                    let pa = self.p.pow(*a);
                    let x = pow_mod(2, k, pa);
                    self.ramified_character().unwrap().value(x as i64).unwrap()
                }
            }
        }
    }
}

impl fmt::Display for LocalPrescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            LocalKind::Unramified { value } => write!(f, "at {} unram order {} value {value}", self.p, value.order()),
            LocalKind::Ramified { a, values } => {
                let vals: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                write!(f, "at {} ram mod {} values {}", self.p, self.p.pow(*a), vals.join(","))
            }
        }
    }
}

impl FromStr for LocalPrescription {
    type Err = GwError;

    /// `[at] P unram [order K] value V` or `[at] P ram mod P^A [order K] values V1,V2`.
    fn from_str(s: &str) -> Result<Self, GwError> {
        let perr = |m: &str| GwError::Parse(format!("{m} in prescription `{s}`"));
        let toks: Vec<&str> = s.split_whitespace().collect();
        let toks: &[&str] = if toks.first() == Some(&"at") { &toks[1..] } else { &toks };
        let mut it = toks.iter().copied();
        let p: u64 = it.next().and_then(|t| t.parse().ok()).ok_or_else(|| perr("missing prime"))?;
        let kind = it.next().ok_or_else(|| perr("missing `unram`/`ram`"))?;
        let mut order = None;
        let mut modulus = None;
        let mut vals = None;
        while let Some(t) = it.next() {
            let arg = it.next().ok_or_else(|| perr(&format!("`{t}` needs an argument")))?;
            match t {
                "order" => order = Some(arg.parse::<u32>().map_err(|_| perr("bad order"))?),
                "mod" => modulus = Some(arg.parse::<u64>().map_err(|_| perr("bad modulus"))?),
                "value" | "values" => vals = Some(arg),
                _ => return Err(perr(&format!("unexpected `{t}`"))),
            }
        }
        let parse_vals = |v: &str| -> Result<Vec<RootOfUnity>, GwError> {
            v.split(',').filter(|x| !x.is_empty()).map(|x| x.parse::<RootOfUnity>().map_err(|e| GwError::Parse(e.to_string()))).collect()
        };
        let pr = match kind {
            "unram" => {
                let v = parse_vals(vals.ok_or_else(|| perr("missing value"))?)?;
                if v.len() != 1 {
                    return Err(perr("unramified prescription takes one value"));
                }
                LocalPrescription::unramified(p, v[0])
            }
            "ram" => {
                let n = modulus.ok_or_else(|| perr("missing `mod`"))?;
                let a = super::arith::factorize(n);
                if a.len() != 1 || a[0].0 != p {
                    return Err(perr("modulus is not a power of the prime"));
                }
                LocalPrescription { p, kind: LocalKind::Ramified { a: a[0].1, values: parse_vals(vals.unwrap_or(""))? } }
            }
            other => return Err(perr(&format!("unknown kind `{other}`"))),
        };
        pr.validate()?;
        if let Some(o) = order {
            if o != pr.order() {
                return Err(GwError::InvalidPrescription(format!("declared order {o} but values have order {}", pr.order())));
            }
        }
        Ok(pr)
    }
}

//! Roots of unity and Weil-number shaped inverse roots `zeta * q^(w/2)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};

use super::cyclo::CycNum;
use super::AlgebraError;

/// `exp(2 pi i j / k)` with `0 <= j < k` and `gcd(j, k) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    k: u32,
    j: u32,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { k: 1, j: 0 };
    pub const MINUS_ONE: RootOfUnity = RootOfUnity { k: 2, j: 1 };

    pub fn new(k: u32, j: i64) -> Self {
        assert!(k > 0, "root of unity of order 0");
        let j = j.rem_euclid(k as i64) as u32;
        let g = j.gcd(&k);
        RootOfUnity { k: k / g, j: j / g }
    }

    /// Primitive `k`-th root `zeta_k`.
    pub fn primitive(k: u32) -> Self {
        Self::new(k, 1)
    }

    pub fn order(&self) -> u32 {
        self.k
    }

    pub fn exponent(&self) -> u32 {
        self.j
    }

    pub fn is_one(&self) -> bool {
        self.k == 1
    }

    /// Exponent `e` with `self = zeta_n^e`; requires `order | n`.
    pub fn exponent_in(&self, n: u32) -> Option<u32> {
        n.is_multiple_of(self.k).then(|| self.j * (n / self.k))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let k = self.k.lcm(&other.k);
        let e = self.j as i64 * (k / self.k) as i64 + other.j as i64 * (k / other.k) as i64;
        Self::new(k, e)
    }

    pub fn pow(&self, e: i64) -> Self {
        Self::new(self.k, (self.j as i64 * e.rem_euclid(self.k as i64)) % self.k as i64)
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn to_cyc(&self) -> CycNum {
        CycNum::root_of_unity(self.k, self.j as i64)
    }
}

impl Ord for RootOfUnity {
    /// Ordered by argument in `[0, 2 pi)`.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.j as u64 * other.k as u64).cmp(&(other.j as u64 * self.k as u64))
    }
}

impl PartialOrd for RootOfUnity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.j) {
            (1, _) => write!(f, "1"),
            (2, _) => write!(f, "-1"),
            (k, j) => write!(f, "e({j}/{k})"),
        }
    }
}

impl FromStr for RootOfUnity {
    type Err = AlgebraError;

    /// `1`, `-1` or `e(j/k)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "1" => return Ok(Self::ONE),
            "-1" => return Ok(Self::MINUS_ONE),
            _ => {}
        }
        let bad = || AlgebraError::Parse(format!("bad root of unity `{s}`"));
        let inner = s.strip_prefix("e(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (j, k) = inner.split_once('/').ok_or_else(bad)?;
        let j: i64 = j.trim().parse().map_err(|_| bad())?;
        let k: u32 = k.trim().parse().map_err(|_| bad())?;
        if k == 0 {
            return Err(bad());
        }
        Ok(Self::new(k, j))
    }
}

/// Splits a prime power `q = l^f`; `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut r, mut f) = (q, 0);
    while r % p == 0 {
        r /= p;
        f += 1;
    }
    (r == 1).then_some((p, f))
}

/// An inverse root `alpha = zeta * q^(w/2)` of a local factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InverseRoot {
    pub unit: RootOfUnity,
    /// Weight `w`; its denominator divides 2.
    pub weight: Rational64,
    pub q: u64,
}

impl InverseRoot {
    pub fn new(unit: RootOfUnity, weight: Rational64, q: u64) -> Result<Self, AlgebraError> {
        if !(2 % *weight.denom() == 0) {
            return Err(AlgebraError::InvalidWeight(weight.to_string()));
        }
        if prime_power(q).is_none() {
            return Err(AlgebraError::NotPrimePower(q));
        }
        Ok(InverseRoot { unit, weight, q })
    }

    /// A root of unity of weight 0.
    pub fn unitary(unit: RootOfUnity, q: u64) -> Self {
        Self::new(unit, Rational64::zero(), q).expect("unitary inverse root needs a prime-power base")
    }

    /// `log_q |alpha| = w / 2`.
    pub fn abs_log_q(&self) -> Rational64 {
        self.weight / 2
    }

    pub fn twist(&self, z: RootOfUnity) -> Self {
        InverseRoot { unit: self.unit.mul(&z), ..*self }
    }

    pub fn inverse(&self) -> Self {
        InverseRoot { unit: self.unit.inv(), weight: -self.weight, q: self.q }
    }

    /// `alpha^f` viewed at the residue field of size `q^f`: the weight is unchanged.
    pub fn extend(&self, f: u32) -> Self {
        InverseRoot { unit: self.unit.pow(f as i64), weight: self.weight, q: self.q.pow(f) }
    }

    /// Product of two inverse roots over the same base.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.q != other.q {
            return Err(AlgebraError::MismatchedBase(self.q, other.q));
        }
        Ok(InverseRoot { unit: self.unit.mul(&other.unit), weight: self.weight + other.weight, q: self.q })
    }

    /// Exponent of the formal symbol `q^(1/4)` carried by `alpha`.
    pub fn quarter_exponent(&self) -> i64 {
        let e = self.weight * 2;
        debug_assert!(e.is_integer());
        e.to_integer()
    }
}

impl Ord for InverseRoot {
    fn cmp(&self, other: &Self) -> Ordering {
        self.q
            .cmp(&other.q)
            .then(self.weight.cmp(&other.weight))
            .then(self.unit.cmp(&other.unit))
    }
}

impl PartialOrd for InverseRoot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn fmt_rat64(r: &Rational64) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat64(s: &str) -> Result<Rational64, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(n, d))
        }
        None => Ok(Rational64::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for InverseRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root({},{}; {}; {})", self.unit.order(), self.unit.exponent(), fmt_rat64(&self.weight), self.q)
    }
}

impl FromStr for InverseRoot {
    type Err = AlgebraError;

    /// `root(k,j; w; q)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || AlgebraError::Parse(format!("bad inverse root `{s}`"));
        let inner = s.strip_prefix("root(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let parts: Vec<&str> = inner.split(';').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let (k, j) = parts[0].split_once(',').ok_or_else(bad)?;
        let k: u32 = k.trim().parse().map_err(|_| bad())?;
        let j: i64 = j.trim().parse().map_err(|_| bad())?;
        if k == 0 {
            return Err(bad());
        }
        let w = parse_rat64(parts[1])?;
        let q: u64 = parts[2].trim().parse().map_err(|_| bad())?;
        InverseRoot::new(RootOfUnity::new(k, j), w, q)
    }
}

//! Exact arithmetic in cyclotomic fields `Q(zeta_m)`.
//!
//! Elements are stored in the power basis `1, zeta, .., zeta^(phi(m)-1)`
//! after reduction modulo the m-th cyclotomic polynomial, so two values of
//! the same conductor are equal iff their coefficient vectors are equal.
//! Values of different conductors are compared inside `Q(zeta_lcm)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use super::root::RootOfUnity;
use super::AlgebraError;

static CYCLOTOMIC: Lazy<Mutex<HashMap<u32, Vec<BigInt>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Coefficients (constant term first) of the m-th cyclotomic polynomial.
pub fn cyclotomic_poly(m: u32) -> Vec<BigInt> {
    if let Some(p) = CYCLOTOMIC.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by every Phi_d with d | m, d < m
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = div_monic(&num, &cyclotomic_poly(d));
        }
    }
    CYCLOTOMIC.lock().unwrap().insert(m, num.clone());
    num
}

fn div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for i in (dd..=nd).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (k, dk) in den.iter().enumerate() {
            rem[i - dd + k] -= &c * dk;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

pub fn euler_phi(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// An element of `Q(zeta_m)` in canonical form.
#[derive(Clone, Debug)]
pub struct CycNum {
    m: u32,
    coeffs: Vec<BigRational>,
}

impl CycNum {
    /// Builds the canonical form of `sum coeffs[i] * zeta_m^i`.
    pub fn normalize(m: u32, coeffs: &[BigRational]) -> Result<Self, AlgebraError> {
        if m == 0 {
            return Err(AlgebraError::ZeroConductor);
        }
        if coeffs.len() > m as usize {
            return Err(AlgebraError::TooManyCoefficients { m, len: coeffs.len() });
        }
        Ok(Self::reduce(m, coeffs.to_vec()))
    }

    /// Reduces an arbitrary-length power-basis vector (exponents taken mod m).
    fn reduce(m: u32, power: Vec<BigRational>) -> Self {
        let mu = m as usize;
        let mut v = vec![BigRational::zero(); mu];
        for (i, c) in power.into_iter().enumerate() {
            if !c.is_zero() {
                v[i % mu] += c;
            }
        }
        let phi = cyclotomic_poly(m);
        let deg = phi.len() - 1;
        for i in (deg..mu).rev() {
            let c = std::mem::replace(&mut v[i], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for (k, pk) in phi.iter().enumerate().take(deg) {
                if !pk.is_zero() {
                    v[i - deg + k] -= &c * BigRational::from_integer(pk.clone());
                }
            }
        }
        v.truncate(deg);
        CycNum { m, coeffs: v }
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        CycNum { m: 1, coeffs: vec![r] }
    }

    /// `zeta_k^j`.
    pub fn root_of_unity(k: u32, j: i64) -> Self {
        let k = k.max(1);
        let e = j.rem_euclid(k as i64) as usize;
        let mut power = vec![BigRational::zero(); k as usize];
        power[e] = BigRational::one();
        Self::reduce(k, power)
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    /// Canonical coefficients, length `phi(m)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|r| r.is_one())
    }

    /// The value as a rational number, if it lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    /// Re-expresses the element in `Q(zeta_big)`; `big` must be a multiple of `m`.
    pub fn lift(&self, big: u32) -> Self {
        assert!(big.is_multiple_of(self.m), "lift target {big} not a multiple of {}", self.m);
        if big == self.m {
            return self.clone();
        }
        let step = (big / self.m) as usize;
        let mut power = vec![BigRational::zero(); big as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            power[i * step] = c.clone();
        }
        Self::reduce(big, power)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self, u32) {
        let m = a.m.lcm(&b.m);
        (a.lift(m), b.lift(m), m)
    }

    /// Complex conjugation `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        let mu = self.m as usize;
        let mut power = vec![BigRational::zero(); mu];
        for (i, c) in self.coeffs.iter().enumerate() {
            power[(mu - i) % mu] += c.clone();
        }
        Self::reduce(self.m, power)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, by solving the linear system of multiplication by `self`.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        let d = self.coeffs.len();
        // column j = self * zeta^j in the canonical basis
        let mut mat = vec![vec![BigRational::zero(); d + 1]; d];
        for j in 0..d {
            let mut power = vec![BigRational::zero(); j + 1];
            power[j] = BigRational::one();
            let basis = Self::reduce(self.m, power);
            let col = &basis * self;
            for i in 0..d {
                mat[i][j] = col.coeffs[i].clone();
            }
        }
        mat[0][d] = BigRational::one();
        let sol = solve_square(mat).ok_or(AlgebraError::DivisionByZero)?;
        Ok(CycNum { m: self.m, coeffs: sol })
    }

    /// Identifies the element as a root of unity, if it is one.
    pub fn as_root_of_unity(&self) -> Option<RootOfUnity> {
        let big = self.m.lcm(&2);
        let me = self.lift(big);
        (0..big)
            .find(|&j| CycNum::root_of_unity(big, j as i64).lift(big).coeffs == me.coeffs)
            .map(|j| RootOfUnity::new(big, j as i64))
    }
}

/// Gauss-Jordan elimination on an augmented `d x (d+1)` matrix.
pub(crate) fn solve_square(mut mat: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let d = mat.len();
    for col in 0..d {
        let piv = (col..d).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(col, piv);
        let inv = mat[col][col].recip();
        for x in mat[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..d {
            if r != col && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for c in col..=d {
                    let sub = &f * &mat[col][c];
                    mat[r][c] -= sub;
                }
            }
        }
    }
    Some(mat.into_iter().map(|row| row[d].clone()).collect())
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            return self.coeffs == other.coeffs;
        }
        let (a, b, _) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNum {}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        let (a, b, m) = CycNum::common(self, rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CycNum { m, coeffs }
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if let Some(r) = self.to_rational() {
            return CycNum { m: rhs.m, coeffs: rhs.coeffs.iter().map(|c| c * &r).collect() };
        }
        if let Some(r) = rhs.to_rational() {
            return CycNum { m: self.m, coeffs: self.coeffs.iter().map(|c| c * &r).collect() };
        }
        let (a, b, m) = CycNum::common(self, rhs);
        let mut power = vec![BigRational::zero(); m as usize];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    power[(i + j) % m as usize] += x * y;
                }
            }
        }
        CycNum::reduce(m, power)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { m: self.m, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        &self + &rhs
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        &self - &rhs
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        &self * &rhs
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

pub fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        let body: Vec<String> = self.coeffs[..=last].iter().map(fmt_rational).collect();
        write!(f, "cyc({}; {})", self.m, body.join(","))
    }
}

impl FromStr for CycNum {
    type Err = AlgebraError;

    /// Accepts `cyc(m; c0,c1,...)` or a bare rational.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let Some(inner) = s.strip_prefix("cyc(").and_then(|r| r.strip_suffix(')')) else {
            return parse_rational(s).map(CycNum::from_rational);
        };
        let (m, rest) = inner
            .split_once(';')
            .ok_or_else(|| AlgebraError::Parse(format!("missing `;` in `{s}`")))?;
        let m: u32 = m.trim().parse().map_err(|_| AlgebraError::Parse(format!("bad conductor in `{s}`")))?;
        let coeffs = rest
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        CycNum::normalize(m, &coeffs)
    }
}

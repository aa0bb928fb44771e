//! Truncated Dirichlet series of an Euler product.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::LDataError;
use crate::algebra::{CycNum, LocalFactor};

/// `n -> a(n)` for `n <= x`.
pub type DirichletTable = BTreeMap<u64, CycNum>;

/// `1 / prod(1 - alpha T)` as power-series coefficients `h_k(alpha)` for `q^k <= x`.
/// Needs every weight to be an even integer so that `alpha` is a cyclotomic number.
fn euler_series(f: &LocalFactor, x: u64) -> Result<Vec<CycNum>, LDataError> {
    let q = f.q();
    let mut kmax = 0usize;
    let mut qk = 1u64;
    while let Some(next) = qk.checked_mul(q).filter(|&n| n <= x) {
        qk = next;
        kmax += 1;
    }
    let mut series = vec![CycNum::zero(); kmax + 1];
    series[0] = CycNum::one();
    for r in f.roots() {
        let w = r.weight;
        if !w.is_integer() || w.to_integer() % 2 != 0 {
            return Err(LDataError::NonIntegralWeight(r.to_string()));
        }
        let e = w.to_integer() / 2;
        let mag = BigRational::from_integer(BigInt::from(q)).pow(e as i32);
        let alpha = &r.unit.to_cyc() * &CycNum::from_rational(mag);
        // multiply by 1 / (1 - alpha T): s_k += alpha * s_{k-1}
        for k in 1..=kmax {
            let add = &alpha * &series[k - 1];
            series[k] = &series[k] + &add;
        }
    }
    Ok(series)
}

/// Coefficients of `prod_v L_v(s)` over the given local factors (each indexed by its
/// `q = N v`), truncated at `x`.
pub fn partial_l_series<'a>(factors: impl IntoIterator<Item = &'a LocalFactor>, x: u64) -> Result<DirichletTable, LDataError> {
    if x == 0 {
        return Err(LDataError::InvalidPlace("cutoff must be at least 1".into()));
    }
    let mut table = DirichletTable::new();
    table.insert(1, CycNum::one());
    for f in factors {
        if f.q() > x {
            continue;
        }
        let s = euler_series(f, x)?;
        let mut next = DirichletTable::new();
        for (&n, a) in &table {
            let mut qk = 1u64;
            for c in &s {
                match n.checked_mul(qk) {
                    Some(m) if m <= x => {
                        let v = a * c;
                        let e = next.entry(m).or_insert_with(CycNum::zero);
                        *e = &*e + &v;
                    }
                    _ => break,
                }
                qk = qk.saturating_mul(f.q());
            }
        }
        table = next;
    }
    for n in 1..=x {
        table.entry(n).or_insert_with(CycNum::zero);
    }
    Ok(table)
}

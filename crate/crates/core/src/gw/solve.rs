//! Characters with prescribed local components and exact order.

use std::collections::BTreeSet;

use num_integer::Integer;

use super::arith::{dlog, primes_from, primitive_root};
use super::dirichlet::{DirichletCharacter, LocalKind, LocalPrescription};
use super::GwError;
use crate::algebra::RootOfUnity;

/// Auxiliary primes considered for one- and two-prime searches.
const AUX_POOL: usize = 24;
/// Auxiliary primes considered for three-prime searches.
const AUX_POOL_3: usize = 12;
/// Candidate places tried for the `v0` repair.
const V0_POOL: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialCase {
    pub is_special: bool,
    /// `prod_v eta_v(a0)` with `a0 = (1 + i)^m = 2^(m/2)`; 1 when not special.
    pub a0_product: RootOfUnity,
}

/// The 2-primary obstruction over Q: special iff `8 | m` and 2 carries a prescription.
/// A ramified prescription at 2 does not fix the value at the uniformizer; it is taken to be 1.
pub fn special_case_check(prescriptions: &[LocalPrescription], m: u32) -> SpecialCase {
    let is_special = m.is_multiple_of(8) && prescriptions.iter().any(|p| p.p == 2);
    if !is_special {
        return SpecialCase { is_special, a0_product: RootOfUnity::ONE };
    }
    let k = u64::from(m / 2);
    let a0_product = prescriptions.iter().fold(RootOfUnity::ONE, |acc, p| acc.mul(&p.eval_power_of_two(k)));
    SpecialCase { is_special, a0_product }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwSolution {
    pub character: DirichletCharacter,
    /// Conductor primes outside the prescription support, increasing.
    pub auxiliary: Vec<u64>,
    /// Extra ramified prescription added to clear the special-case obstruction.
    pub v0: Option<LocalPrescription>,
}

fn check_input(prescriptions: &[LocalPrescription], m: u32, avoid: &BTreeSet<u64>) -> Result<(), GwError> {
    if m == 0 {
        return Err(GwError::InvalidPrescription("target order must be positive".into()));
    }
    let mut seen = BTreeSet::new();
    for p in prescriptions {
        p.validate()?;
        if !seen.insert(p.p) {
            return Err(GwError::ConflictingPrescriptions(p.p));
        }
        if !m.is_multiple_of(p.order()) {
            return Err(GwError::InvalidPrescription(format!("order {} at {} does not divide {m}", p.order(), p.p)));
        }
        if avoid.contains(&p.p) {
            return Err(GwError::InvalidPrescription(format!("{} is both prescribed and avoided", p.p)));
        }
    }
    Ok(())
}

/// A character of order exactly `m` with the given local components, unramified at
/// every prime in `avoid`.  Auxiliary conductor primes are odd `q` with `gcd(m, q - 1) > 1`, smallest first;
/// among those the lexicographically least exponent vector wins.
pub fn solve(prescriptions: &[LocalPrescription], m: u32, avoid: &BTreeSet<u64>) -> Result<GwSolution, GwError> {
    check_input(prescriptions, m, avoid)?;
    let sc = special_case_check(prescriptions, m);
    let infeasible = |sc: &SpecialCase| GwError::Infeasible {
        special: sc.is_special,
        a0_product: sc.a0_product,
        order_2m_achievable: search(prescriptions, 2 * m, avoid).is_some(),
    };
    if sc.is_special && !sc.a0_product.is_one() {
        return repair_v0(prescriptions, m, avoid, sc.a0_product).ok_or_else(|| infeasible(&sc));
    }
    search(prescriptions, m, avoid).ok_or_else(|| infeasible(&sc))
}

/// Adds a ramified prescription at a fresh odd prime whose value on `a0` cancels the product.
fn repair_v0(prescriptions: &[LocalPrescription], m: u32, avoid: &BTreeSet<u64>, product: RootOfUnity) -> Option<GwSolution> {
    let a0_exp = u64::from(m / 2);
    let support: BTreeSet<u64> = prescriptions.iter().map(|p| p.p).collect();
    for v0 in primes_from(3).filter(|q| !avoid.contains(q) && !support.contains(q)).take(V0_POOL) {
        let d = (v0 - 1).gcd(&u64::from(m)) as u32;
        for k in 1..d {
            let Ok(eta) = LocalPrescription::ramified(v0, 1, vec![RootOfUnity::new(d, k as i64)]) else { continue };
            if eta.eval_power_of_two(a0_exp).mul(&product).is_one() {
                let mut extended = prescriptions.to_vec();
                extended.push(eta.clone());
                if let Some(mut sol) = search(&extended, m, avoid) {
                    sol.auxiliary.retain(|&q| q != v0);
                    sol.v0 = Some(eta);
                    return Some(sol);
                }
            }
        }
    }
    None
}

fn search(prescriptions: &[LocalPrescription], m: u32, avoid: &BTreeSet<u64>) -> Option<GwSolution> {
    small_search(prescriptions, m, avoid).or_else(|| linear_search(prescriptions, m, avoid))
}

/// Character of the ramified prescriptions and the exponent targets `t_j` with `psi(l_j) = zeta_m^t_j`
/// still required of the auxiliary part at each unramified prime.
fn targets_of(prescriptions: &[LocalPrescription], m: u32) -> Option<(DirichletCharacter, Vec<(u64, u32)>)> {
    let chi_t = prescriptions
        .iter()
        .filter_map(|p| p.ramified_character())
        .fold(DirichletCharacter::trivial(1), |acc, c| acc.mul(&c));
    let mut targets = Vec::new();
    for p in prescriptions {
        if let LocalKind::Unramified { value } = p.kind {
            let have = chi_t.value(p.p as i64)?;
            targets.push((p.p, value.mul(&have.inv()).exponent_in(m)?));
        }
    }
    Some((chi_t, targets))
}

fn finish(prescriptions: &[LocalPrescription], m: u32, chi: DirichletCharacter, aux: Vec<u64>) -> Option<GwSolution> {
    let ok = chi.order() == m && prescriptions.iter().all(|p| chi.local_component(p.p) == *p);
    ok.then_some(GwSolution { character: chi, auxiliary: aux, v0: None })
}

fn small_search(prescriptions: &[LocalPrescription], m: u32, avoid: &BTreeSet<u64>) -> Option<GwSolution> {
    let (chi_t, targets) = targets_of(prescriptions, m)?;
    let o_t = chi_t.order();
    let finish = |chi: DirichletCharacter, aux: Vec<u64>| finish(prescriptions, m, chi, aux);
    if targets.iter().all(|&(_, t)| t == 0) && o_t == m {
        return finish(chi_t, Vec::new());
    }
    let support: BTreeSet<u64> = prescriptions.iter().map(|p| p.p).collect();
    let m64 = u64::from(m);
    // (q, d = gcd(m, q - 1), index of each constrained prime), characters mod q of order dividing d
    let pool: Vec<(u64, u64, Vec<u64>)> = primes_from(3)
        .filter(|q| (q - 1).gcd(&m64) > 1 && !avoid.contains(q) && !support.contains(q))
        .take(AUX_POOL)
        .map(|q| {
            let g = primitive_root(q, 1);
            let inds = targets.iter().map(|&(l, _)| dlog(g, l % q, q, q - 1).unwrap()).collect();
            (q, (q - 1).gcd(&m64), inds)
        })
        .collect();
    let build = |idx: &[usize]| -> Option<GwSolution> {
        let r = idx.len();
        let mut ks = vec![1u64; r];
        loop {
            // psi_q(g_q) = zeta_d^k = zeta_m^(k m / d)
            let sat = targets.iter().enumerate().all(|(j, &(_, t))| {
                idx.iter().zip(&ks).map(|(&i, &k)| k * (m64 / pool[i].1) % m64 * (pool[i].2[j] % m64)).sum::<u64>() % m64
                    == u64::from(t)
            });
            let order = idx.iter().zip(&ks).fold(u64::from(o_t), |acc, (&i, &k)| acc.lcm(&(pool[i].1 / k.gcd(&pool[i].1))));
            if sat && order == m64 {
                let chi = idx.iter().zip(&ks).fold(chi_t.clone(), |acc, (&i, &k)| {
                    let psi = DirichletCharacter::on_prime(pool[i].0, RootOfUnity::new(pool[i].1 as u32, k as i64)).unwrap();
                    acc.mul(&psi)
                });
                let aux = idx.iter().map(|&i| pool[i].0).collect();
                if let Some(sol) = finish(chi, aux) {
                    return Some(sol);
                }
            }
            // next exponent vector in lexicographic order, entry i in 1..d_i
            let mut pos = r;
            loop {
                if pos == 0 {
                    return None;
                }
                pos -= 1;
                if ks[pos] + 1 < pool[idx[pos]].1 {
                    ks[pos] += 1;
                    for k in &mut ks[pos + 1..] {
                        *k = 1;
                    }
                    break;
                }
            }
        }
    };
    let n = pool.len();
    for i in 0..n {
        if let Some(s) = build(&[i]) {
            return Some(s);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if let Some(s) = build(&[i, j]) {
                return Some(s);
            }
        }
    }
    let n3 = n.min(AUX_POOL_3);
    for i in 0..n3 {
        for j in i + 1..n3 {
            for k in j + 1..n3 {
                if let Some(s) = build(&[i, j, k]) {
                    return Some(s);
                }
            }
        }
    }
    None
}

/// Pool size per prime-power part in the linear fallback, beyond the number of constraints.
const LINEAR_SLACK: usize = 8;

/// Fallback: split `Z/m` into prime-power parts `Z/r^a` and solve each as a linear system over
/// characters mod primes `q = 1 mod r^a`, by Gauss-Jordan elimination on unit pivots.
fn linear_search(prescriptions: &[LocalPrescription], m: u32, avoid: &BTreeSet<u64>) -> Option<GwSolution> {
    let (chi_t, targets) = targets_of(prescriptions, m)?;
    let support: BTreeSet<u64> = prescriptions.iter().map(|p| p.p).collect();
    let m64 = u64::from(m);
    let mut chi = chi_t.clone();
    let mut aux = BTreeSet::new();
    for (r, a) in super::arith::factorize(m64) {
        let big_a = r.pow(a);
        let cof = m64 / big_a;
        let cof_inv = super::arith::mod_inverse(cof % big_a, big_a)?;
        let rhs: Vec<u64> = targets.iter().map(|&(_, t)| u64::from(t) % big_a * cof_inv % big_a).collect();
        let t_part_full = (u64::from(chi_t.order()) % big_a) == 0;
        let n = targets.len();
        let pool: Vec<(u64, Vec<u64>)> = primes_from(3)
            .filter(|q| (q - 1) % big_a == 0 && !avoid.contains(q) && !support.contains(q))
            .take(n + LINEAR_SLACK)
            .map(|q| {
                let g = primitive_root(q, 1);
                (q, targets.iter().map(|&(l, _)| dlog(g, l % q, q, q - 1).unwrap() % big_a).collect())
            })
            .collect();
        let ks = solve_mod_prime_power(&pool, &rhs, r, big_a, !t_part_full)?;
        for ((q, _), k) in pool.iter().zip(ks) {
            if k != 0 {
                chi = chi.mul(&DirichletCharacter::on_prime(*q, RootOfUnity::new(big_a as u32, k as i64)).ok()?);
                aux.insert(*q);
            }
        }
    }
    finish(prescriptions, m, chi, aux.into_iter().collect())
}

/// Solves `sum_c k_c col_c = rhs` over `Z/A`, `A = r^a`; with `need_unit`, some `k_c` must be prime to `r`.
fn solve_mod_prime_power(pool: &[(u64, Vec<u64>)], rhs: &[u64], r: u64, big_a: u64, need_unit: bool) -> Option<Vec<u64>> {
    let n = rhs.len();
    let cols = pool.len();
    let reduce = |forced: Option<usize>| -> Option<Vec<u64>> {
        // rows of the augmented matrix
        let mut mat: Vec<Vec<u64>> = (0..n)
            .map(|j| {
                let mut row: Vec<u64> = pool.iter().map(|(_, c)| c[j]).collect();
                let mut b = rhs[j];
                if let Some(f) = forced {
                    b = (b + big_a - row[f]) % big_a;
                    row[f] = 0;
                }
                row.push(b);
                row
            })
            .collect();
        let mut pivots = Vec::new();
        for i in 0..n {
            let c = (0..cols).find(|&c| Some(c) != forced && !pivots.contains(&c) && !mat[i][c].is_multiple_of(r))?;
            let inv = super::arith::mod_inverse(mat[i][c], big_a)?;
            for x in &mut mat[i] {
                *x = *x * inv % big_a;
            }
            for i2 in 0..n {
                if i2 != i && mat[i2][c] != 0 {
                    let f = mat[i2][c];
                    for cc in 0..=cols {
                        mat[i2][cc] = (mat[i2][cc] + big_a * big_a - f * mat[i][cc]) % big_a;
                    }
                }
            }
            pivots.push(c);
        }
        let mut ks = vec![0u64; cols];
        for (i, &c) in pivots.iter().enumerate() {
            ks[c] = mat[i][cols];
        }
        if let Some(f) = forced {
            ks[f] = 1;
        }
        Some(ks)
    };
    let ks = reduce(None)?;
    if !need_unit || ks.iter().any(|k| k % r != 0) {
        return Some(ks);
    }
    // force a unit on the largest pool prime that leaves the system solvable
    (0..cols).rev().find_map(|f| reduce(Some(f)))
}

use std::sync::Arc;

use super::*;
use crate::algebra::{CycNum, RootOfUnity};
use crate::builtin;

fn class_sizes(g: &FiniteGroup) -> Vec<usize> {
    let mut s: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
    s.sort();
    s
}

/// Rank over the cyclotomic field by plain elimination (test oracle).
fn rank(mut rows: Vec<Vec<CycNum>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().unwrap();
        let piv: Vec<CycNum> = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for (x, y) in rows[i].iter_mut().zip(&piv) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        rows[r] = piv;
        r += 1;
    }
    r
}

/// Dimension of `{X : X rho(g) = rho(g) X for all generators g}`.
fn commutant_dim(rho: &Representation) -> usize {
    let n = rho.dim();
    let mut eqs = Vec::new();
    for &g in rho.group().generators() {
        let a = rho.matrix(g);
        for i in 0..n {
            for j in 0..n {
                // (XA - AX)_{ij} = sum_k X_ik A_kj - A_ik X_kj
                let mut row = vec![CycNum::zero(); n * n];
                for k in 0..n {
                    row[i * n + k] = &row[i * n + k] + a.get(k, j);
                    row[k * n + j] = &row[k * n + j] - a.get(i, k);
                }
                eqs.push(row);
            }
        }
    }
    n * n - rank(eqs)
}

#[test]
fn classes() {
    assert_eq!(class_sizes(&FiniteGroup::cyclic(1)), vec![1]);
    assert_eq!(class_sizes(builtin::s3_standard().group()), vec![1, 2, 3]);
    assert_eq!(class_sizes(builtin::q8_standard().group()), vec![1, 1, 2, 2, 2]);
    assert_eq!(class_sizes(builtin::s4_standard().group()), vec![1, 3, 6, 6, 8]);
}

#[test]
fn s3_character_against_table() {
    let rho = builtin::s3_standard();
    let g = rho.group();
    for x in 0..6 {
        let expect = match g.element_order(x) {
            1 => 2,
            3 => -1,
            _ => 0,
        };
        assert_eq!(rho.character()[x], CycNum::from_int(expect));
    }
    let triv = vec![CycNum::one(); 6];
    assert_eq!(inner_product(&triv, &triv), CycNum::one());
    assert_eq!(inner_product(rho.character(), rho.character()), CycNum::one());
    assert_eq!(inner_product(rho.character(), &triv), CycNum::zero());
}

#[test]
fn twists() {
    let rho = builtin::s3_standard();
    let g = rho.group().clone();
    let chars = linear_characters(&g);
    assert_eq!(chars.len(), 2);
    assert!(chars[0].is_trivial());
    let same = rho.twist(&chars[0]).unwrap();
    assert_eq!(same.character(), rho.character());
    let sign = &chars[1];
    assert_eq!(rho.twist(sign).unwrap().character(), rho.character());

    let c3 = builtin::cyclic_char(3, 1);
    let psi = OneDimChar::new(
        c3.group().clone(),
        c3.character().iter().map(|c| c.as_root_of_unity().unwrap()).collect(),
    )
    .unwrap();
    let sq = c3.twist(&psi).unwrap();
    for x in 0..3 {
        assert_eq!(sq.character()[x], c3.character()[x].pow(2));
    }
}

#[test]
fn restriction() {
    let rho = builtin::s3_standard();
    let g = rho.group();
    let (full, _) = rho.restrict(&(0..6).collect::<Vec<_>>()).unwrap();
    assert_eq!(full.character(), rho.character());
    let c3: Vec<usize> = (0..6).filter(|&x| g.element_order(x) != 2).collect();
    let (r, emb) = rho.restrict(&c3).unwrap();
    let vals: Vec<i64> = r.character().iter().map(|c| c.to_rational().unwrap().to_integer().try_into().unwrap()).collect();
    assert_eq!(vals, vec![2, -1, -1]);
    assert_eq!(emb, c3);
    let (t, _) = rho.restrict(&[g.identity()]).unwrap();
    assert!(t.matrix(0).is_identity());
    assert!(matches!(rho.restrict(&[0, 1]), Err(GaloisError::NotSubgroup(_))));
}

#[test]
fn invariant_traces() {
    let rho = builtin::s3_standard();
    let g = rho.group();
    let all: Vec<usize> = (0..6).collect();
    let c3: Vec<usize> = (0..6).filter(|&x| g.element_order(x) != 2).collect();
    let tr = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
    for s in 0..6 {
        assert_eq!(rho.invariant_trace(&[0], s).unwrap(), rho.character()[s]);
        assert_eq!(rho.invariant_trace(&all, s).unwrap(), CycNum::zero());
    }
    assert_eq!(rho.invariant_trace(&c3, tr).unwrap(), CycNum::zero());
    let c2 = g.generated(&[tr]);
    let other = (0..6).find(|&x| !g.normalizes(x, &c2)).unwrap();
    assert!(matches!(rho.invariant_trace(&c2, other), Err(GaloisError::DoesNotNormalize { .. })));
}

#[test]
fn eigenvalues_on_invariants() {
    let rho = builtin::s3_standard();
    let g = rho.group();
    let r = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
    let ev = rho.invariant_eigenvalues(&[0], r).unwrap();
    assert_eq!(ev, vec![RootOfUnity::new(3, 1), RootOfUnity::new(3, 2)]);
    let t = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
    let ev = rho.invariant_eigenvalues(&[0], t).unwrap();
    assert_eq!(ev, vec![RootOfUnity::ONE, RootOfUnity::MINUS_ONE]);
    // the transposition's own subgroup fixes a line on which the transposition acts by 1
    let ev = rho.invariant_eigenvalues(&g.generated(&[t]), t).unwrap();
    assert_eq!(ev, vec![RootOfUnity::ONE]);
}

#[test]
fn self_twist_counts() {
    let c3 = builtin::cyclic_char(3, 1);
    assert_eq!(c3.self_twist_characters().unwrap().len(), 1);
    assert_eq!(builtin::s3_standard().self_twist_characters().unwrap().len(), 2);
    let q8 = builtin::q8_standard().self_twist_characters().unwrap();
    assert_eq!(q8.len(), 4);
    assert_eq!(q8.iter().filter(|c| c.order() == 2).count(), 3);
    let reducible = builtin::s3_standard().direct_sum(&builtin::s3_standard()).unwrap();
    assert_eq!(reducible.self_twist_characters().unwrap_err(), GaloisError::Reducible);
}

#[test]
fn self_twists_form_a_group() {
    for rho in [builtin::s3_standard(), builtin::q8_standard(), builtin::d4_standard(), builtin::a4_standard(), builtin::dic3_standard()] {
        let st = rho.self_twist_characters().unwrap();
        assert!(st[0].is_trivial());
        for a in &st {
            assert!(st.contains(&a.inv()));
            for b in &st {
                assert!(st.contains(&a.mul(b)));
            }
        }
    }
}

#[test]
fn irreducibility_matches_commutant() {
    let reps = vec![
        builtin::s3_standard(),
        builtin::q8_standard(),
        builtin::d4_standard(),
        builtin::a4_standard(),
        builtin::s4_standard(),
        builtin::dic3_standard(),
        builtin::cyclic_char(6, 1),
        builtin::s3_standard().direct_sum(&builtin::s3_standard()).unwrap(),
        builtin::d4_standard().direct_sum(&Representation::trivial(builtin::d4_standard().group().clone(), 1)).unwrap(),
        builtin::s3_standard().outer_tensor(&builtin::cyclic_char(2, 1)),
        Representation::trivial(Arc::new(FiniteGroup::cyclic(4)), 2),
    ];
    for rho in reps {
        assert!(rho.group().order() <= 48);
        assert_eq!(rho.is_irreducible(), commutant_dim(&rho) == 1, "group of order {}", rho.group().order());
    }
}

#[test]
fn dual_is_involution() {
    let rho = builtin::q8_standard();
    let dd = rho.dual().dual();
    for g in 0..8 {
        assert_eq!(dd.matrix(g), rho.matrix(g));
    }
    let c3 = builtin::cyclic_char(3, 1);
    assert_eq!(c3.dual().character()[1], c3.character()[1].conj());
}

#[test]
fn homomorphism_is_checked() {
    let g = Arc::new(FiniteGroup::cyclic(2));
    let bad = vec![Matrix::identity(1), Matrix::scalar(1, CycNum::from_int(2))];
    assert!(matches!(Representation::from_matrices(g, bad), Err(GaloisError::NotHomomorphism(..))));
}

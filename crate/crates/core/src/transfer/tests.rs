use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use proptest::prelude::*;

use super::*;
use crate::algebra::{EpsilonDatum, InverseRoot, RootOfUnity};
use crate::gw::DirichletCharacter;
use crate::ldata::{Field, FormalPlace, Place};

fn root(k: u32, j: i64, w: Rational64, q: u64) -> InverseRoot {
    InverseRoot::new(RootOfUnity::new(k, j), w, q).unwrap()
}

fn eps(w: i64, delta: i64) -> EpsilonDatum {
    EpsilonDatum::new(CycNum::from_rational(BigRational::from_integer(BigInt::from(w))), BigRational::from_integer(BigInt::from(delta)))
        .unwrap()
}

fn formal(rows: &[(u64, Vec<InverseRoot>)], e: EpsilonDatum) -> LData {
    let places = rows
        .iter()
        .map(|(l, roots)| FormalPlace {
            place: Place::rational(format!("v{l}"), *l).unwrap(),
            factor: LocalFactor::new(*l, roots.clone()).unwrap(),
            semistable: true,
        })
        .collect();
    let arch = ArchFactor::new(vec![Rational64::from_integer(0), Rational64::from_integer(1)]).unwrap();
    LData::Formal(FormalDatum::new(Field::rational(), places, Some(e), Some(arch)).unwrap())
}

fn unknown(labels: &[&str]) -> BTreeSet<String> {
    labels.iter().map(|s| s.to_string()).collect()
}

fn zeta3_table() -> Vec<(u64, Vec<InverseRoot>)> {
    let z = Rational64::from_integer(0);
    vec![
        (5, vec![root(3, 1, z, 5), root(3, 2, z, 5)]),
        (7, vec![root(1, 0, z, 7), root(2, 1, z, 7)]),
        (11, vec![root(4, 1, z, 11)]),
    ]
}

#[test]
fn js_check_examples() {
    let q = 7;
    assert!(js_check(&LocalFactor::unitary(q, [RootOfUnity::new(6, 1)])));
    assert!(!js_check(&LocalFactor::new(q, vec![root(1, 0, Rational64::from_integer(1), q)]).unwrap()));
    assert!(js_check(&LocalFactor::new(q, vec![root(1, 0, Rational64::new(1, 2), q)]).unwrap()));
    assert!(js_check(&LocalFactor::trivial(q)));
}

#[test]
fn js_propagation_through_base_change() {
    let chi = DirichletCharacter::on_prime(3, RootOfUnity::MINUS_ONE).unwrap();
    let ext = CyclicExtension::over_q(chi.clone()).unwrap();
    let unitary = formal(&zeta3_table(), eps(1, 1));
    let rep = js_propagate(&unitary, &ext).unwrap();
    assert!(rep.holds());
    assert!(rep.places.iter().all(|p| p.base_changed && p.twisted));

    // 5 is inert in Q(sqrt -3); a weight-one root stays weight one above it
    let one = Rational64::from_integer(1);
    let mixed = formal(&[(5, vec![root(1, 0, one, 5)]), (7, vec![root(2, 1, Rational64::new(1, 2), 7)])], eps(1, 1));
    let bc = mixed.base_change(&ext).unwrap();
    let above5: Vec<_> = bc.places().into_iter().filter(|w| w.lies_over("v5")).cloned().collect();
    assert_eq!(above5.len(), 1);
    assert_eq!(above5[0].q(), 25);
    assert!(bc.local_factor(&above5[0].label).unwrap().roots().iter().all(|r| r.weight == one));
    let rep = js_propagate(&mixed, &ext).unwrap();
    assert!(rep.holds());
    for p in &rep.places {
        // twisting keeps weights, so the report is the direct check on the base
        let direct = js_check(&mixed.local_factor(&p.label).unwrap());
        assert_eq!(p.twisted, direct);
        assert_eq!(p.base_changed, direct);
    }
    assert!(!rep.places[0].base_changed && !rep.places[0].twisted);
}

#[test]
fn completion_examples() {
    let t = zeta3_table();
    let left = formal(&t, eps(1, 3));
    // both known and equal
    let pair = TransferPair::new(&left, &left, BTreeSet::new(), BTreeSet::new()).unwrap();
    let c = complete_missing_factor(&pair, "v5").unwrap();
    assert_eq!(c.filled, None);
    assert_eq!(c.factor, left.local_factor("v5").unwrap());

    // right side unknown at v5: its table entry is junk
    let mut junk = t.clone();
    junk[0].1 = vec![];
    let right = formal(&junk, eps(1, 3));
    let pair = TransferPair::new(&left, &right, BTreeSet::new(), unknown(&["v5"])).unwrap();
    let (done, c) = pair.complete("v5").unwrap();
    assert_eq!(c.filled, Some(Side::Right));
    let z = Rational64::from_integer(0);
    assert_eq!(c.factor, LocalFactor::new(5, vec![root(3, 1, z, 5), root(3, 2, z, 5)]).unwrap());
    let report = verify_strong_transfer(&done).unwrap();
    assert!(report.strong && report.consistent());
    assert_eq!(report.epsilon_equal, Some(true));
    // idempotent
    let (again, c2) = done.complete("v5").unwrap();
    assert_eq!(again, done);
    assert_eq!(c2.factor, c.factor);
}

#[test]
fn completion_errors() {
    let t = zeta3_table();
    let left = formal(&t, eps(1, 3));
    // conductor magnitude perturbed off the powers of 5
    let right = formal(&t, eps(1, 6));
    let pair = TransferPair::new(&left, &right, BTreeSet::new(), unknown(&["v5"])).unwrap();
    assert!(matches!(complete_missing_factor(&pair, "v5"), Err(TransferError::InconsistentFunctionalEquation(_))));
    // perturbed by a power of 5: monomial shape, but the forced ratio is 1
    let right = formal(&t, eps(1, 15));
    let pair = TransferPair::new(&left, &right, BTreeSet::new(), unknown(&["v5"])).unwrap();
    assert!(matches!(complete_missing_factor(&pair, "v5"), Err(TransferError::InconsistentFunctionalEquation(_))));
    // root number flipped
    let right = formal(&t, eps(-1, 3));
    let pair = TransferPair::new(&left, &right, BTreeSet::new(), unknown(&["v5"])).unwrap();
    assert!(matches!(complete_missing_factor(&pair, "v5"), Err(TransferError::InconsistentFunctionalEquation(_))));

    // a boundary pole at a known place
    let mut bad = t.clone();
    bad[1].1 = vec![root(1, 0, Rational64::from_integer(1), 7)];
    let l2 = formal(&bad, eps(1, 3));
    let pair = TransferPair::new(&l2, &l2, BTreeSet::new(), unknown(&["v5"])).unwrap();
    assert_eq!(
        complete_missing_factor(&pair, "v5"),
        Err(TransferError::JsViolation { side: Side::Left, label: "v7".into() })
    );

    // known on both sides at v5 and different
    let mut other = t.clone();
    other[0].1 = vec![root(3, 1, Rational64::from_integer(0), 5)];
    let r = formal(&other, eps(1, 3));
    let l = LData::Formal(left.to_formal().unwrap().with_places(
        left.to_formal().unwrap().places().iter().map(|p| FormalPlace { semistable: p.place.label != "v5", ..p.clone() }).collect(),
    ).unwrap());
    let pair = TransferPair::new(&l, &r, BTreeSet::new(), BTreeSet::new()).unwrap();
    assert!(matches!(complete_missing_factor(&pair, "v5"), Err(TransferError::ContradictoryData(_))));
    // semistable on both sides and different: not even weakly compatible
    assert!(matches!(TransferPair::new(&left, &r, BTreeSet::new(), BTreeSet::new()), Err(TransferError::ContradictoryData(_))));
    // two unknown places
    let pair = TransferPair::new(&left, &left, BTreeSet::new(), unknown(&["v5", "v7"])).unwrap();
    assert!(matches!(complete_missing_factor(&pair, "v5"), Err(TransferError::Precondition(_))));
}

#[test]
fn arch_match_examples() {
    let a = |v: &[i64]| ArchFactor::new(v.iter().map(|&x| Rational64::from_integer(x)).collect()).unwrap();
    assert!(arch_match(&a(&[0, 1]), &a(&[1, 0]), true));
    assert!(!arch_match(&a(&[0]), &a(&[1]), true));
}

#[test]
fn strong_report_pinpoints_mismatch() {
    let t = zeta3_table();
    let left = formal(&t, eps(1, 3));
    let pair = TransferPair::new(&left, &left, BTreeSet::new(), BTreeSet::new()).unwrap();
    let r = verify_strong_transfer(&pair).unwrap();
    assert!(r.strong);
    assert_eq!(r.epsilon_equal, Some(true));
    let mut other = t.clone();
    other[2].1 = vec![root(4, 3, Rational64::from_integer(0), 11)];
    let right = formal(&other, eps(1, 3));
    let lf = left.to_formal().unwrap();
    let l = LData::Formal(lf.with_places(lf.places().iter().map(|p| FormalPlace { semistable: p.place.label != "v11", ..p.clone() }).collect()).unwrap());
    let pair = TransferPair::new(&l, &right, BTreeSet::new(), BTreeSet::new()).unwrap();
    let r = verify_strong_transfer(&pair).unwrap();
    assert!(!r.strong);
    assert_eq!(r.mismatches(), vec!["v11"]);
    assert!(r.to_string().ends_with("verdict: weak-only"));
}

/// All multisets of size <= 3 drawn from units in mu_2 u mu_3 and weights {0, 1/2}.
fn small_factors(q: u64) -> Vec<LocalFactor> {
    let units = [RootOfUnity::ONE, RootOfUnity::MINUS_ONE, RootOfUnity::new(3, 1), RootOfUnity::new(3, 2)];
    let mut atoms = Vec::new();
    for u in units {
        for w in [Rational64::from_integer(0), Rational64::new(1, 2)] {
            atoms.push(InverseRoot::new(u, w, q).unwrap());
        }
    }
    let mut out = vec![vec![]];
    let mut frontier: Vec<(usize, Vec<InverseRoot>)> = vec![(0, vec![])];
    for _ in 0..3 {
        let mut next = Vec::new();
        for (start, roots) in &frontier {
            for (i, a) in atoms.iter().enumerate().skip(*start) {
                let mut r = roots.clone();
                r.push(*a);
                out.push(r.clone());
                next.push((i, r));
            }
        }
        frontier = next;
    }
    out.into_iter().map(|r| LocalFactor::new(q, r).unwrap()).collect()
}

#[test]
fn forcing_predicate_is_sound_on_small_configurations() {
    let fs = small_factors(3);
    assert_eq!(fs.len(), 165);
    for a in &fs {
        for b in &fs {
            // independent oracle: equality of the expanded polynomials
            let oracle = poly_eq(&a.expand(), &b.expand());
            assert_eq!(forcing_predicate(a, b), Some(oracle), "{a} vs {b}");
        }
    }
}

proptest! {
    #[test]
    fn completion_recovers_deleted_factor(idx in 0usize..3, k in 1u32..7, j in 0i64..7) {
        let mut t = zeta3_table();
        let q = t[idx].0;
        t[idx].1.push(root(k, j, Rational64::from_integer(0), q));
        let left = formal(&t, eps(1, 5));
        let mut holed = t.clone();
        holed[idx].1.clear();
        let right = formal(&holed, eps(1, 5));
        let label = format!("v{}", t[idx].0);
        let pair = TransferPair::new(&left, &right, BTreeSet::new(), unknown(&[&label])).unwrap();
        let (done, c) = pair.complete(&label).unwrap();
        prop_assert_eq!(c.factor, left.local_factor(&label).unwrap());
        prop_assert!(verify_strong_transfer(&done).unwrap().strong);
    }
}

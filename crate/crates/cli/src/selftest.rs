//! Invariant suite over the embedded S3, Q8 and C6 fixtures, plus a seeded batch of
//! Grunwald-Wang round trips.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ssred::algebra::RootOfUnity;
use ssred::builtin::{self, BUILTIN_FIXTURES};
use ssred::fixture::Fixture;
use ssred::gw::{solve, DirichletCharacter, LocalPrescription};
use ssred::ldata::{CyclicExtension, Field, LData};
use ssred::par::{self, Mode};
use ssred::reduction::{replay, run_reduction, tautological_lifter};
use ssred::report::{Assertion, RunReport};

const GW_CASES: usize = 25;

fn pass(name: String, ok: bool, detail: impl Into<String>) -> Assertion {
    Assertion { name, pass: ok, detail: detail.into() }
}

fn fixture_checks(name: &str) -> Vec<Assertion> {
    let mut out = Vec::new();
    let text = builtin::builtin_fixture(name).expect("listed builtin");
    let fx = match Fixture::parse(&text) {
        Ok(fx) => fx,
        Err(e) => return vec![pass(format!("{name}: parses"), false, e.to_string())],
    };
    out.push(pass(format!("{name}: print(parse(x)) = x"), fx.document.to_string() == text, ""));
    let (_, ld) = fx.first_ldata().expect("builtin has ldata");
    let labels: Vec<String> = ld.places().iter().map(|p| p.label.clone()).collect();

    let twice = ld.contragredient().contragredient();
    let same = labels.iter().all(|l| twice.local_factor(l).ok() == ld.local_factor(l).ok());
    out.push(pass(format!("{name}: contragredient is an involution"), same, ""));

    let chi = DirichletCharacter::on_prime(5, RootOfUnity::new(2, 1)).expect("mod 5");
    let restored = ld.twist(&chi).and_then(|t| t.twist(&chi.inv()));
    let same = restored.map(|r| labels.iter().all(|l| r.local_factor(l).ok() == ld.local_factor(l).ok()));
    out.push(pass(format!("{name}: twist then untwist"), same == Ok(true), ""));

    let ext = CyclicExtension::over_q(chi).expect("quadratic");
    let agree = (|| -> Result<usize, String> {
        let up = ld.base_change(&ext).map_err(|e| e.to_string())?;
        let product = ld.to_formal().and_then(|f| f.base_change(&ext)).map_err(|e| e.to_string())?;
        let LData::Galois(g) = ld else { return Err("not Galois".into()) };
        let mut n = 0;
        for v in ld.places() {
            if !g.unramified_at(&v.label).unwrap_or(false) || Field::char_value(ext.chi(), v).is_none() {
                continue;
            }
            for (w, _) in ext.places_above(v) {
                if up.local_factor(&w.label).ok() != product.local_factor(&w.label).ok() {
                    return Err(format!("differs at {}", w.label));
                }
                n += 1;
            }
        }
        Ok(n)
    })();
    out.push(match agree {
        Ok(n) => pass(format!("{name}: base change paths agree"), n > 0, format!("{n} places")),
        Err(e) => pass(format!("{name}: base change paths agree"), false, e),
    });

    let LData::Galois(g) = ld else { return out };
    let reduced = run_reduction(g, &tautological_lifter, 3);
    match (name, reduced) {
        // C4 inertia lies outside the supported local characters
        ("q8", Err(e)) => out.push(pass(format!("{name}: reduction refused"), e.code() == "E_UNSUPPORTED_RAMIFICATION", e.code())),
        (_, Ok(cert)) => {
            let report = replay(&cert.to_string());
            let ok = report.as_ref().map(|r| r.all_pass()).unwrap_or(false);
            out.push(pass(format!("{name}: reduction replays"), ok, format!("depth {}", cert.root.depth())));
        }
        (_, Err(e)) => out.push(pass(format!("{name}: reduction"), false, format!("{}: {e}", e.code()))),
    }
    out
}

fn gw_case(seed: u64, case: usize) -> Assertion {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(case as u64));
    let m = [2u32, 3, 5][rng.gen_range(0..3)];
    let pool: Vec<u64> = vec![3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    let mut ells = BTreeSet::new();
    for _ in 0..rng.gen_range(0..=3) {
        ells.insert(pool[rng.gen_range(0..pool.len())]);
    }
    let prescriptions: Vec<LocalPrescription> = ells
        .into_iter()
        .map(|ell| {
            let j = rng.gen_range(1..m) as i64;
            if (ell - 1) % u64::from(m) == 0 && rng.gen_bool(0.5) {
                LocalPrescription::ramified(ell, 1, vec![RootOfUnity::new(m, j)]).expect("tame")
            } else {
                LocalPrescription::unramified(ell, RootOfUnity::new(m, rng.gen_range(0..m) as i64))
            }
        })
        .collect();
    let name = format!("gw case {case} (m = {m}, {} primes)", prescriptions.len());
    match solve(&prescriptions, m, &BTreeSet::new()) {
        Ok(sol) => {
            let ok = sol.character.order() == m && prescriptions.iter().all(|p| &sol.character.local_component(p.p) == p);
            pass(name, ok, sol.character.to_string())
        }
        Err(e) => pass(name, false, e.to_string()),
    }
}

pub fn selftest(seed: u64) -> RunReport {
    let mut report = RunReport::new("selftest");
    report.output("seed", seed);
    for name in BUILTIN_FIXTURES {
        report.input(format!("builtin:{name}"), &builtin::builtin_fixture(name).expect("listed builtin"));
    }
    // fixtures are independent; assembly below keeps their order
    let per_fixture = par::map(Mode::Parallel, &BUILTIN_FIXTURES, |n| fixture_checks(n));
    let cases: Vec<usize> = (0..GW_CASES).collect();
    let per_case = par::map(Mode::Parallel, &cases, |&c| gw_case(seed, c));
    report.assertions.extend(per_fixture.into_iter().flatten());
    report.assertions.extend(per_case);
    report
}

//! Small groups and representations used by `selftest`, the examples and the tests.

use crate::algebra::CycNum;
use crate::galois::{Matrix, Representation};
use crate::gw::DirichletCharacter;
use crate::ldata::{Field, GaloisDatum, GaloisPlace, LDataError, Place};

fn z(k: u32, j: i64) -> CycNum {
    CycNum::root_of_unity(k, j)
}

fn m(rows: Vec<Vec<CycNum>>) -> Matrix {
    Matrix::from_rows(rows).expect("square")
}

/// The faithful 1-dim character `g -> zeta_n^j` of the cyclic group of order `n / gcd(n, j)`.
pub fn cyclic_char(n: u32, j: i64) -> Representation {
    Representation::generated_by(&[Matrix::scalar(1, z(n, j))]).expect("cyclic")
}

/// 2-dim irreducible of S3: element 1 is a 3-cycle, element 2 a transposition.
pub fn s3_standard() -> Representation {
    let a = Matrix::from_ints(&[&[0, -1], &[1, -1]]);
    let b = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
    Representation::generated_by(&[a, b]).expect("S3")
}

/// 2-dim irreducible of Q8 over Q(i).
pub fn q8_standard() -> Representation {
    let i = m(vec![vec![z(4, 1), CycNum::zero()], vec![CycNum::zero(), z(4, 3)]]);
    let j = Matrix::from_ints(&[&[0, -1], &[1, 0]]);
    Representation::generated_by(&[i, j]).expect("Q8")
}

/// 2-dim irreducible of the dihedral group of order 8.
pub fn d4_standard() -> Representation {
    let r = Matrix::from_ints(&[&[0, -1], &[1, 0]]);
    let s = Matrix::from_ints(&[&[1, 0], &[0, -1]]);
    Representation::generated_by(&[r, s]).expect("D4")
}

/// 3-dim irreducible of A4 (rotations of a tetrahedron).
pub fn a4_standard() -> Representation {
    let c = Matrix::from_ints(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
    let d = Matrix::from_ints(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
    Representation::generated_by(&[c, d]).expect("A4")
}

/// 3-dim irreducible of S4 (rotations of a cube).
pub fn s4_standard() -> Representation {
    let c = Matrix::from_ints(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
    let r = Matrix::from_ints(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]]);
    Representation::generated_by(&[c, r]).expect("S4")
}

/// 2-dim irreducible of the dicyclic group of order 12 (`<a, x | a^6, x^2 = a^3, x a x^-1 = a^-1>`).
pub fn dic3_standard() -> Representation {
    let a = m(vec![vec![z(6, 1), CycNum::zero()], vec![CycNum::zero(), z(6, 5)]]);
    let x = Matrix::from_ints(&[&[0, -1], &[1, 0]]);
    Representation::generated_by(&[a, x]).expect("Dic3")
}

/// A Galois datum over Q from `(label, prime, frobenius, inertia generators)` rows.
pub fn datum_over_q(rep: Representation, rows: &[(&str, u64, usize, &[usize])]) -> Result<GaloisDatum, LDataError> {
    let g = rep.group().clone();
    let places = rows
        .iter()
        .map(|&(label, ell, frob, inertia)| {
            Ok(GaloisPlace { place: Place::rational(label, ell)?, frob, inertia: g.generated(inertia), mono: Vec::new() })
        })
        .collect::<Result<Vec<_>, LDataError>>()?;
    GaloisDatum::new(Field::rational(), rep, places, None, None)
}

/// The 1-dim Galois datum of a Dirichlet character on `C_m`, listed at the given primes.
pub fn dirichlet_datum(chi: &DirichletCharacter, primes: &[u64]) -> Result<GaloisDatum, LDataError> {
    let m = chi.order();
    let rep = cyclic_char(m, 1);
    let mu = m as usize;
    let places = primes
        .iter()
        .map(|&ell| {
            let place = Place::rational(format!("v{ell}"), ell)?;
            Ok(match chi.primitive().value(ell as i64).filter(|_| !chi.ramified_at(ell)) {
                Some(z) => GaloisPlace { place, frob: z.exponent_in(m).unwrap() as usize, inertia: vec![0], mono: Vec::new() },
                None => {
                    let img = chi.component(ell).order() as usize;
                    GaloisPlace { place, frob: 0, inertia: (0..mu).step_by(mu / img).collect(), mono: Vec::new() }
                }
            })
        })
        .collect::<Result<Vec<_>, LDataError>>()?;
    GaloisDatum::new(Field::rational(), rep, places, None, None)
}

fn with_fe(d: GaloisDatum, epsilon: Option<(i64, i64)>, arch: &[i64]) -> GaloisDatum {
    use num_bigint::BigInt;
    use num_rational::{BigRational, Rational64};
    let epsilon = epsilon.map(|(w, c)| {
        crate::algebra::EpsilonDatum::new(CycNum::from_int(w), BigRational::from_integer(BigInt::from(c))).expect("epsilon")
    });
    let arch = crate::algebra::ArchFactor::new(arch.iter().map(|&s| Rational64::from_integer(s)).collect()).expect("arch");
    GaloisDatum::new(d.field().clone(), d.rep().clone(), d.places().to_vec(), epsilon, Some(arch)).expect("datum")
}

/// S3 datum with tame C3 inertia at 7 and C2 inertia at 3.
pub fn s3_datum() -> GaloisDatum {
    let rows: &[(&str, u64, usize, &[usize])] =
        &[("v2", 2, 1, &[]), ("v3", 3, 0, &[2]), ("v5", 5, 2, &[]), ("v7", 7, 2, &[1]), ("v11", 11, 2, &[]), ("v13", 13, 1, &[])];
    with_fe(datum_over_q(s3_standard(), rows).expect("S3 datum"), Some((1, 147)), &[0, 1])
}

/// Q8 datum, wildly ramified at 2 with full inertia and with C4 inertia at 17.  Enough
/// unramified places are listed for the reduction to reach the C4 obstruction.
pub fn q8_datum() -> GaloisDatum {
    let rows: &[(&str, u64, usize, &[usize])] = &[
        ("v2", 2, 0, &[1, 2]),
        ("v3", 3, 1, &[]),
        ("v5", 5, 2, &[]),
        ("v7", 7, 0, &[]),
        ("v11", 11, 3, &[]),
        ("v13", 13, 1, &[]),
        ("v17", 17, 2, &[1]),
        ("v19", 19, 1, &[]),
        ("v23", 23, 2, &[]),
        ("v29", 29, 5, &[]),
    ];
    with_fe(datum_over_q(q8_standard(), rows).expect("Q8 datum"), Some((1, 73984)), &[0, 1])
}

/// The sextic character mod 7 sending the primitive root 3 to `zeta_6`, as a C6 datum.
pub fn c6_datum() -> GaloisDatum {
    let chi = DirichletCharacter::on_prime(7, crate::algebra::RootOfUnity::new(6, 1)).expect("mod 7");
    with_fe(dirichlet_datum(&chi, &[2, 3, 5, 7, 11, 13]).expect("C6 datum"), None, &[1])
}

pub const BUILTIN_FIXTURES: [&str; 3] = ["s3", "q8", "c6"];

/// Canonical fixture text of a built-in datum.
pub fn builtin_fixture(name: &str) -> Option<String> {
    let d = match name {
        "s3" => s3_datum(),
        "q8" => q8_datum(),
        "c6" => c6_datum(),
        _ => return None,
    };
    Some(crate::fixture::render(crate::fixture::galois_sections(name, &d)))
}

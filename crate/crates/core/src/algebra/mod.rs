//! Exact algebra: cyclotomic numbers, inverse roots and local factors.

pub mod cyclo;
pub mod factor;
pub mod root;

pub use cyclo::{cyclotomic_poly, euler_phi, CycNum};
pub use factor::{
    factor_ratio_is_constant, fmt_poly, poly_eq, poly_in_power, poly_mul, ArchFactor, EpsilonDatum, LocalFactor,
    WeilCoeff, WeilPoly,
};
pub use root::{prime_power, InverseRoot, RootOfUnity};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("{len} coefficients given for conductor {m}")]
    TooManyCoefficients { m: u32, len: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("local factors over different residue fields ({0} vs {1})")]
    MismatchedBase(u64, u64),
    #[error("weight {0} does not have denominator dividing 2")]
    InvalidWeight(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("conductor magnitude {0} is not positive")]
    NonPositiveConductor(String),
    #[error("{0}")]
    Parse(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn zeta4_squares_to_minus_one() {
        let i = CycNum::normalize(4, &[r(0), r(1)]).unwrap();
        assert_eq!(&i * &i, CycNum::from_int(-1));
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let z = CycNum::normalize(3, &[r(1), r(1), r(1)]).unwrap();
        assert!(z.is_zero());
        assert_eq!(z, CycNum::zero());
    }

    #[test]
    fn sqrt_two_in_q_zeta8() {
        let mut c = vec![r(0); 8];
        c[1] = r(1);
        c[7] = r(1);
        let s = CycNum::normalize(8, &c).unwrap();
        // oracle: square computed by explicit power-basis convolution mod x^8 - 1, then x^4 = -1
        let mut sq = [0i64; 8];
        for i in 0..8 {
            for j in 0..8 {
                let a = if i == 1 || i == 7 { 1 } else { 0 };
                let b = if j == 1 || j == 7 { 1 } else { 0 };
                sq[(i + j) % 8] += a * b;
            }
        }
        let folded: Vec<i64> = (0..4).map(|i| sq[i] - sq[i + 4]).collect();
        assert_eq!(folded, vec![2, 0, 0, 0]);
        assert_eq!(&s * &s, CycNum::from_int(2));
        assert!(s.to_rational().is_none());
    }

    #[test]
    fn normalize_rejects_bad_input() {
        assert_eq!(CycNum::normalize(0, &[]), Err(AlgebraError::ZeroConductor));
        assert!(CycNum::normalize(2, &[r(1), r(1), r(1)]).is_err());
    }

    #[test]
    fn normalize_is_idempotent() {
        let x = CycNum::normalize(12, &[r(1), r(2), r(0), r(-1), r(5), r(0), r(7)]).unwrap();
        let y = CycNum::normalize(12, x.coeffs()).unwrap();
        assert_eq!(x.coeffs(), y.coeffs());
    }

    #[test]
    fn embedding_respects_equality() {
        // zeta_3 seen inside Q(zeta_6) and Q(zeta_12)
        let a = CycNum::root_of_unity(3, 1);
        assert_eq!(a, CycNum::root_of_unity(6, 2));
        assert_eq!(a, CycNum::root_of_unity(12, 4));
        assert_ne!(a, CycNum::root_of_unity(12, 3));
        // -zeta_3^2 = zeta_6
        assert_eq!(-CycNum::root_of_unity(3, 2), CycNum::root_of_unity(6, 1));
    }

    #[test]
    fn inverse_and_root_detection() {
        let x = CycNum::normalize(5, &[r(2), r(1), r(0), r(3)]).unwrap();
        let y = x.inverse().unwrap();
        assert_eq!(&x * &y, CycNum::one());
        assert_eq!(CycNum::zero().inverse(), Err(AlgebraError::DivisionByZero));
        let z = CycNum::root_of_unity(5, 3);
        assert_eq!(z.as_root_of_unity(), Some(RootOfUnity::new(5, 3)));
        assert_eq!((-z).as_root_of_unity(), Some(RootOfUnity::new(10, 1)));
        assert_eq!(x.as_root_of_unity(), None);
    }

    #[test]
    fn expand_examples() {
        let e = LocalFactor::trivial(5).expand();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].as_cyc(), Some(CycNum::one()));

        let f = LocalFactor::unitary(5, [RootOfUnity::ONE]).expand();
        assert_eq!(f.iter().map(|c| c.as_cyc().unwrap()).collect::<Vec<_>>(), vec![CycNum::one(), CycNum::from_int(-1)]);

        // (1 - z T)(1 - z^2 T) = 1 - (z + z^2) T + z^3 T^2 = 1 + T + T^2
        let g = LocalFactor::unitary(7, [RootOfUnity::new(3, 1), RootOfUnity::new(3, 2)]).expand();
        let z = CycNum::root_of_unity(3, 1);
        let z2 = CycNum::root_of_unity(3, 2);
        let oracle = vec![CycNum::one(), -(&z + &z2), &z * &z2];
        assert_eq!(g.iter().map(|c| c.as_cyc().unwrap()).collect::<Vec<_>>(), oracle);
        assert_eq!(oracle, vec![CycNum::one(), CycNum::one(), CycNum::one()]);
    }

    #[test]
    fn ratio_examples() {
        let a = LocalFactor::unitary(5, [RootOfUnity::new(4, 1)]);
        assert!(factor_ratio_is_constant(&a, &a).unwrap());
        assert!(!factor_ratio_is_constant(&a, &LocalFactor::trivial(5)).unwrap());
        let b = LocalFactor::unitary(5, [RootOfUnity::new(3, 1), RootOfUnity::new(3, 2)]);
        let c = LocalFactor::unitary(5, [RootOfUnity::new(3, 2), RootOfUnity::new(3, 1)]);
        assert!(factor_ratio_is_constant(&b, &c).unwrap());
        assert_eq!(
            factor_ratio_is_constant(&a, &LocalFactor::trivial(7)),
            Err(AlgebraError::MismatchedBase(5, 7))
        );
    }

    #[test]
    fn weighted_expansion_in_power() {
        // (1 - a T)(1 + a T) = 1 - a^2 T^2 with a = q^(1/2)
        let a = InverseRoot::new(RootOfUnity::ONE, num_rational::Rational64::from_integer(1), 3).unwrap();
        let f = LocalFactor::new(3, vec![a, a.twist(RootOfUnity::MINUS_ONE)]).unwrap();
        let p = poly_in_power(&f.expand(), 2).unwrap();
        let expected = LocalFactor::new(9, vec![a.extend(2)]).unwrap().expand();
        assert!(poly_eq(&p, &expected));
        assert!(poly_in_power(&LocalFactor::new(3, vec![a]).unwrap().expand(), 2).is_none());
    }

    fn arb_cyc() -> impl Strategy<Value = CycNum> {
        (prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 12]), prop::collection::vec(-5i64..=5, 1..8)).prop_map(
            |(m, cs)| {
                let cs: Vec<BigRational> = cs.into_iter().take(m as usize).map(r).collect();
                CycNum::normalize(m, &cs).unwrap()
            },
        )
    }

    fn arb_factor(q: u64) -> impl Strategy<Value = LocalFactor> {
        prop::collection::vec((1u32..=6, 0i64..6, 0i64..=2), 0..4).prop_map(move |rs| {
            let roots = rs
                .into_iter()
                .map(|(k, j, w)| InverseRoot::new(RootOfUnity::new(k, j), num_rational::Rational64::new(w, 2), q).unwrap())
                .collect();
            LocalFactor::new(q, roots).unwrap()
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(x in arb_cyc()) {
            let y: CycNum = x.to_string().parse().unwrap();
            prop_assert_eq!(x, y);
        }

        #[test]
        fn arithmetic_is_a_field(x in arb_cyc(), y in arb_cyc()) {
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x * &y) * &y.inverse().unwrap(), x);
            }
        }

        #[test]
        fn expansion_is_multiplicative(f in arb_factor(7), g in arb_factor(7)) {
            let lhs = f.union(&g).unwrap().expand();
            let rhs = poly_mul(&f.expand(), &g.expand());
            prop_assert!(poly_eq(&lhs, &rhs));
            prop_assert_eq!(lhs.len(), f.degree() + g.degree() + 1);
        }
    }
}

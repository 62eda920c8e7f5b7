//! Strategies and algebraic laws shared by the property tests and the
//! acceptance harness.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use qosp::graded::{gflip_between, gkron, GradedMatrix, ParityVector};
use qosp::io::{matrix_from_json, matrix_to_json, matrix_to_json_string};
use qosp::scalar::Var;
use qosp::Scalar;

pub const CASES: u32 = 256;

pub fn config() -> ProptestConfig {
    ProptestConfig {
        cases: CASES,
        ..ProptestConfig::default()
    }
}

pub fn rational() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::ratio(n, d))
}

pub fn monomial(max_s: i32, with_theta: bool) -> impl Strategy<Value = Scalar> {
    let theta_max = if with_theta { 2 } else { 0 };
    (rational(), 0..=max_s, 0..=theta_max, 0..=2i32).prop_map(|(c, a, b, e)| {
        &(&(&c * &Scalar::s().powi(a)) * &Scalar::theta().powi(b)) * &Scalar::xi().powi(e)
    })
}

pub fn polynomial(with_theta: bool) -> impl Strategy<Value = Scalar> {
    prop::collection::vec(monomial(3, with_theta), 0..4)
        .prop_map(|ts| ts.iter().fold(Scalar::zero(), |acc, t| &acc + t))
}

/// A nonzero polynomial in `s` alone, shifted away from a root at `s = 1`
/// when `regular_at_one` is set.
pub fn s_denominator(regular_at_one: bool) -> impl Strategy<Value = Scalar> {
    (1i32..=2, -3i64..=3, 1i64..=2).prop_map(move |(k, c, d)| {
        let base = &Scalar::s().powi(k) + &Scalar::ratio(c, d);
        if base.is_zero() || (regular_at_one && c + d == 0) {
            &Scalar::s().powi(k) + &Scalar::from_int(7)
        } else {
            base
        }
    })
}

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (polynomial(true), s_denominator(false)).prop_map(|(n, d)| n.checked_div(&d).unwrap())
}

/// Theta-free scalars regular at `s = 1`; some carry a removable `(s-1)/(s-1)`.
pub fn regular_scalar() -> impl Strategy<Value = Scalar> {
    (polynomial(false), s_denominator(true), any::<bool>()).prop_map(|(n, d, removable)| {
        let v = n.checked_div(&d).unwrap();
        if removable {
            let sm1 = &Scalar::s() - &Scalar::one();
            let sq = &(&Scalar::s() * &Scalar::s()) - &Scalar::one();
            // (s^2 - 1) / ((s - 1)(s + 1)) with the pieces multiplied in separately.
            (&v * &sq)
                .checked_div(&sm1)
                .unwrap()
                .checked_div(&(&Scalar::s() + &Scalar::one()))
                .unwrap()
        } else {
            v
        }
    })
}

pub fn parity(max_dim: usize) -> impl Strategy<Value = ParityVector> {
    prop::collection::vec(0u8..=1, 1..=max_dim).prop_map(ParityVector::new)
}

pub fn entry() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        3 => Just(Scalar::zero()),
        3 => rational(),
        1 => monomial(2, true),
    ]
}

pub fn matrix_on(p: ParityVector) -> impl Strategy<Value = GradedMatrix> {
    let n = p.len();
    prop::collection::vec(entry(), n * n)
        .prop_map(move |v| GradedMatrix::from_fn(&p, |i, j| v[i * n + j].clone()))
}

pub fn matrix(max_dim: usize) -> impl Strategy<Value = GradedMatrix> {
    parity(max_dim).prop_flat_map(matrix_on)
}

/// A matrix of fixed degree `d`: entries only where `p(i) + p(j) = d mod 2`.
pub fn homogeneous_on(p: ParityVector, d: u8) -> impl Strategy<Value = GradedMatrix> {
    matrix_on(p.clone()).prop_map(move |m| {
        GradedMatrix::from_fn(&p, |i, j| {
            if (p.get(i) + p.get(j)) % 2 == d {
                m.get(i, j).clone()
            } else {
                Scalar::zero()
            }
        })
    })
}

pub fn sign(odd: bool) -> Scalar {
    Scalar::from_int(if odd { -1 } else { 1 })
}

pub type Quad = (
    GradedMatrix,
    GradedMatrix,
    GradedMatrix,
    GradedMatrix,
    u8,
    u8,
);

pub fn functorial_quad() -> impl Strategy<Value = Quad> {
    (parity(3), parity(3), 0u8..=1, 0u8..=1).prop_flat_map(|(p, q, db, dc)| {
        (
            matrix_on(p.clone()),
            homogeneous_on(q.clone(), db),
            homogeneous_on(p, dc),
            matrix_on(q),
            Just(db),
            Just(dc),
        )
    })
}

pub type Outcome = Result<(), TestCaseError>;

pub fn law_scalar_addition(a: &Scalar, b: &Scalar, c: &Scalar) -> Outcome {
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(a + &Scalar::zero(), a.clone());
    prop_assert!((a - &a.clone()).is_zero());
    Ok(())
}

pub fn law_scalar_multiplication(a: &Scalar, b: &Scalar, c: &Scalar) -> Outcome {
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(a * &Scalar::one(), a.clone());
    Ok(())
}

pub fn law_scalar_inverse(a: &Scalar) -> Outcome {
    if a.is_invertible() {
        prop_assert!((a * &a.inv().unwrap()).is_one());
    } else {
        prop_assert!(a.inv().is_err());
    }
    Ok(())
}

pub fn law_limit_multiplicative(a: &Scalar, b: &Scalar) -> Outcome {
    let la = a.limit_at_one().unwrap();
    let lb = b.limit_at_one().unwrap();
    prop_assert_eq!((a * b).limit_at_one().unwrap(), &la * &lb);
    prop_assert_eq!((a + b).limit_at_one().unwrap(), &la + &lb);
    prop_assert!(!la.contains(Var::S));
    Ok(())
}

pub fn law_gkron_associative(a: &GradedMatrix, b: &GradedMatrix, c: &GradedMatrix) -> Outcome {
    prop_assert_eq!(gkron(&gkron(a, b), c), gkron(a, &gkron(b, c)));
    Ok(())
}

/// `(A ⊗ B)(C ⊗ D) = (-1)^{|B||C|} AC ⊗ BD` for homogeneous `B`, `C`.
pub fn law_gkron_functorial(quad: &Quad) -> Outcome {
    let (a, b, c, d, db, dc) = quad;
    let lhs = &gkron(a, b) * &gkron(c, d);
    let rhs = gkron(&(a * c), &(b * d)).scale(&sign(db * dc == 1));
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn law_gflip_involution(p: &ParityVector, q: &ParityVector) -> Outcome {
    let there = gflip_between(p, q);
    let back = gflip_between(q, p);
    prop_assert!((&back * &there).is_identity());
    prop_assert!((&there * &back).is_identity());
    Ok(())
}

pub fn law_json_round_trip(m: &GradedMatrix) -> Outcome {
    prop_assert_eq!(
        matrix_from_json(&matrix_to_json_string(m)).unwrap(),
        m.clone()
    );
    prop_assert_eq!(
        matrix_from_json(&matrix_to_json(m).to_string()).unwrap(),
        m.clone()
    );
    Ok(())
}

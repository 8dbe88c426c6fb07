//! Property-based invariants of the exact-arithmetic substrate.

use num_traits::{One, Zero};
use proptest::prelude::*;

use pvi_tau::param::{pp_eval, ParamPoly, ParamScalar};
use pvi_tau::poly::{discriminant, resultant, Poly};
use pvi_tau::rational::{rat, ratio, Rational};
use pvi_tau::scalar::Scalar;
use pvi_tau::seeds::k_coefficient_in;
use pvi_tau::toda::{toda_step, Family};
use pvi_tau::RatFunc;

#[test]
fn values_transfer_between_threads() {
    // every value type is immutable after construction and Send + Sync
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<Poly<Rational>>();
    assert_send_sync::<RatFunc>();
    assert_send_sync::<ParamPoly>();
    assert_send_sync::<pvi_tau::toda::TauSequence>();
    assert_send_sync::<pvi_tau::seeds::SeedParams>();
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(small_rational(), 0..=max_len).prop_map(Poly::new)
}

fn int_poly(max_len: usize) -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(-9i64..=9, 1..=max_len)
        .prop_map(|coeffs| Poly::from_integers(&coeffs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(5), b in poly(5), c in poly(5)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn product_rule(a in poly(5), b in poly(5)) {
        let lhs = a.mul(&b).derivative();
        let rhs = a.derivative().mul(&b).add(&a.mul(&b.derivative()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_division_round_trip(a in poly(6), b in poly(4)) {
        prop_assume!(!b.is_zero());
        let q = a.mul(&b).exact_div(&b).unwrap();
        prop_assert_eq!(q, a);
    }

    #[test]
    fn content_splits_and_reassembles(a in int_poly(6)) {
        let (content, primitive) = a.content_primitive().unwrap();
        if a.is_zero() {
            prop_assert!(content == 0.into() && primitive.is_zero());
        } else {
            let (inner, _) = primitive.content_primitive().unwrap();
            prop_assert_eq!(inner, 1.into());
            let back = primitive.mul_rational(&Rational::from_integer(content));
            prop_assert_eq!(back, a);
        }
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(a in int_poly(4), b in int_poly(4)) {
        prop_assume!(a.degree().unwrap_or(0) >= 1 && b.degree().unwrap_or(0) >= 1);
        let res = resultant(&a, &b);
        let gcd_constant = a.gcd(&b).is_one();
        prop_assert_eq!(res.is_zero(), !gcd_constant);
    }

    #[test]
    fn discriminant_detects_double_roots(a in int_poly(3), root in -4i64..=4) {
        prop_assume!(a.degree().unwrap_or(0) >= 1);
        // (t - root)^2 * a has a double root, so its discriminant vanishes
        let square = Poly::from_integers(&[-root, 1]).pow(2);
        let with_double = square.mul(&a);
        prop_assert!(discriminant(&with_double).unwrap().is_zero());
    }

    #[test]
    fn ratfunc_invariants_after_ops(an in poly(4), ad in poly(3), bn in poly(4), bd in poly(3)) {
        prop_assume!(!ad.is_zero() && !bd.is_zero());
        let a = RatFunc::new(an, ad);
        let b = RatFunc::new(bn, bd);
        for value in [a.add(&b), a.sub(&b), a.mul(&b), a.derivative()] {
            // denominator monic and coprime with the numerator
            prop_assert!(!value.den().is_zero());
            prop_assert_eq!(value.den().leading(), rat(1));
            prop_assert!(value.num().gcd(value.den()).is_one() || value.num().is_zero());
        }
        // field laws on nonzero values
        if !b.is_zero() {
            let q = a.div(&b).unwrap();
            prop_assert_eq!(q.mul(&b), a);
        }
    }

    #[test]
    fn pp_eval_is_a_ring_homomorphism(
        ac in prop::collection::vec((-6i64..=6, -6i64..=6, -6i64..=6), 1..=3),
        bc in prop::collection::vec((-6i64..=6, -6i64..=6, -6i64..=6), 1..=3),
        r0 in -5i64..=5,
        s0 in -5i64..=5,
    ) {
        // coefficients of the form c0 + c1 r + c2 s
        let build = |coeffs: &[(i64, i64, i64)]| -> ParamPoly {
            Poly::new(
                coeffs
                    .iter()
                    .map(|(c0, c1, c2)| {
                        ParamScalar::from_i64(*c0)
                            .ring_add(&ParamScalar::var_r().mul_rational(&rat(*c1)))
                            .ring_add(&ParamScalar::var_s().mul_rational(&rat(*c2)))
                    })
                    .collect(),
            )
        };
        let a = build(&ac);
        let b = build(&bc);
        let (r0, s0) = (rat(r0), rat(s0));
        let eval = |p: &ParamPoly| pp_eval(p, &r0, &s0).unwrap();
        prop_assert_eq!(eval(&a.mul(&b)), eval(&a).mul(&eval(&b)));
        prop_assert_eq!(eval(&a.add(&b)), eval(&a).add(&eval(&b)));
    }

    #[test]
    fn generic_toda_step_commutes_with_specialization(
        seed in prop::collection::vec((-4i64..=4, -4i64..=4), 2..=3),
        r0 in 1i64..=5,
        s0 in -3i64..=3,
    ) {
        // one Toda step on a symbolic-coefficient seed, then specialize,
        // equals specialize-then-step (when the step stays defined)
        let symbolic: ParamPoly = Poly::new(
            seed.iter()
                .map(|(c0, c1)| {
                    ParamScalar::from_i64(*c0)
                        .ring_add(&ParamScalar::var_r().mul_rational(&rat(*c1)))
                })
                .collect(),
        );
        prop_assume!(!symbolic.is_zero());
        let k_sym = k_coefficient_in::<ParamScalar>(Family::T, 2, &ParamScalar::var_r());
        let c_sym = ParamScalar::one();
        let stepped = toda_step(&Poly::one(), &symbolic, &k_sym, &c_sym).unwrap();

        let (r0, s0) = (rat(r0), rat(s0));
        let concrete = pp_eval(&symbolic, &r0, &s0).unwrap();
        let k_val = k_coefficient_in::<Rational>(Family::T, 2, &r0);
        let direct = toda_step(&Poly::one(), &concrete, &k_val, &rat(1)).unwrap();
        prop_assert_eq!(pp_eval(&stepped, &r0, &s0).unwrap(), direct);
    }
}

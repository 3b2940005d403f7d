use micz_core::scalar::expr::{normalize, RawExpr};
use micz_core::scalar::frac::{s_poly, Frac};
use micz_core::scalar::ring::{imag, rat};
use micz_core::scalar::{random_points, Coeff, Ring, ScalarExpr};
use micz_core::{ExactValue, Expr, Gaussian};
use proptest::prelude::*;

const D: usize = 4;

fn leaf() -> impl Strategy<Value = RawExpr> {
    prop_oneof![
        (0..D).prop_map(RawExpr::X),
        Just(RawExpr::R),
        (-3i64..=3).prop_map(RawExpr::int),
        Just(RawExpr::Const(imag())),
        // the two inverses the coefficient ring is closed under
        Just(RawExpr::inv(RawExpr::R)),
        Just(RawExpr::inv(RawExpr::add(RawExpr::R, RawExpr::X(D - 1)))),
    ]
}

fn raw() -> impl Strategy<Value = RawExpr> {
    leaf().prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..=3).prop_map(RawExpr::Add),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(RawExpr::Mul),
            inner.prop_map(|e| RawExpr::Neg(Box::new(e))),
        ]
    })
}

fn expr() -> impl Strategy<Value = Expr> {
    raw().prop_map(|r| normalize(&r, D).expect("closed under the generated inverses"))
}

fn at(e: &Expr, seed: u64) -> Vec<ExactValue> {
    random_points(D, 10, seed).iter().map(|p| e.eval_exact(p).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn evaluation_is_a_ring_morphism(a in expr(), b in expr(), seed in 0u64..1000) {
        let (va, vb) = (at(&a, seed), at(&b, seed));
        let sum = at(&a.add(&b), seed);
        let prod = at(&a.mul(&b), seed);
        for i in 0..va.len() {
            prop_assert_eq!(&sum[i], &va[i].plus(&vb[i]));
            prop_assert_eq!(&prod[i], &va[i].times(&vb[i]));
        }
    }

    #[test]
    fn leibniz_rule(a in expr(), b in expr(), i in 0..D) {
        let lhs = a.mul(&b).differentiate(i);
        let rhs = a.differentiate(i).mul(&b).add(&a.mul(&b.differentiate(i)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_is_idempotent(a in expr()) {
        let renorm = |f: &Frac<Gaussian>| Frac::new(f.num().clone(), f.s_pow(), f.rho_pow());
        // a redundant factor s/s must reduce away
        let padded = |f: &Frac<Gaussian>| Frac::new(f.num().mul(&s_poly(D)), f.s_pow() + 1, f.rho_pow());
        prop_assert_eq!(&ScalarExpr::new(renorm(a.f()), renorm(a.g())), &a);
        prop_assert_eq!(&ScalarExpr::new(padded(a.f()), padded(a.g())), &a);
        prop_assert_eq!(a.add(&Expr::int(0)), a.clone());
        prop_assert_eq!(a.mul(&Expr::int(1)), a);
    }

    #[test]
    fn normal_form_ignores_association(a in raw(), b in raw(), c in raw()) {
        let left = RawExpr::mul(a.clone(), RawExpr::add(b.clone(), c.clone()));
        let right = RawExpr::add(RawExpr::mul(c, a.clone()), RawExpr::mul(b, a));
        prop_assert_eq!(normalize(&left, D).unwrap(), normalize(&right, D).unwrap());
    }

    #[test]
    fn nonzero_forms_are_seen_at_some_point(a in expr(), seed in 0u64..1000) {
        prop_assume!(!a.is_zero());
        let hit = random_points(D, 20, seed).iter().any(|p| !a.eval_exact(p).unwrap().is_zero());
        prop_assert!(hit);
    }

    #[test]
    fn quadratic_extension_division(a in -20i64..20, b in -20i64..20, c in 1i64..20, d in -20i64..20, s in 2i64..30) {
        let x = ExactValue::new(Gaussian::from_int(a), Gaussian::from_int(b), &rat(s));
        let y = ExactValue::new(Gaussian::new(rat(c), rat(d)), Gaussian::from_int(1), &rat(s));
        prop_assume!(!y.is_zero());
        let q = x.times(&y.inv().unwrap());
        prop_assert_eq!(q.times(&y), x);
    }
}

#[test]
fn float_and_exact_evaluation_agree() {
    let e = normalize(
        &RawExpr::mul(
            RawExpr::inv(RawExpr::add(RawExpr::R, RawExpr::X(D - 1))),
            RawExpr::add(RawExpr::X(0), RawExpr::Const(imag())),
        ),
        D,
    )
    .unwrap();
    for p in random_points(D, 20, 3) {
        let exact = e.eval_exact(&p).unwrap().to_complex64();
        let float: micz_core::FloatValue = e.eval(&p).unwrap();
        assert!((exact - float).norm() <= 1e-12 * exact.norm().max(1.0));
    }
}

use micz_core::radial::quadrature::gauss_laguerre;
use micz_core::radial::{
    energy, gamma_bottom_from_h, hamiltonian, laguerre_closed_form, laguerre_poly, radial_eigenfunction,
    radial_operator, twist_map, RadialFunction, RadialOp, RadialOperator, SpectralLabel,
};
use micz_core::scalar::ring::{imag, rat, ratio};
use micz_core::scalar::{Coeff, Ring, Scalar};
use micz_core::{ExactValue, Rational};
use proptest::prelude::*;

fn exact(q: Rational) -> ExactValue {
    ExactValue::from_rational(&q)
}

fn factorial(n: u64) -> Rational {
    (1..=n).map(|k| rat(k as i64)).fold(rat(1), |a, b| a * b)
}

fn label() -> impl Strategy<Value = SpectralLabel> {
    (1u32..=4, 0u32..=4, 2usize..=3, 0u32..=1).prop_map(|(k, l, n, mu)| SpectralLabel::new(k, l, n, mu).unwrap())
}

fn lowering(l: u32, n: usize, two_mu: u32, sign: i64) -> RadialOp {
    let t = radial_operator(RadialOperator::T, l, n, two_mu, true);
    let top = radial_operator(RadialOperator::GammaTop, l, n, two_mu, true);
    t.add(&top.scale(&Coeff::scale(&imag(), &rat(sign))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laguerre_recurrence_and_closed_form_agree(m in 0u32..=8, alpha in 0u32..=12) {
        prop_assert_eq!(laguerre_poly(m, alpha), laguerre_closed_form(m, alpha));
    }

    #[test]
    fn hamiltonian_eigenvalue_is_the_level_energy(s in label()) {
        let r = radial_eigenfunction(&s, false).unwrap();
        let image = hamiltonian(s.l, s.n, s.two_mu).apply(&r);
        prop_assert_eq!(image.ratio_to(&r), Some(exact(s.energy())));
    }

    #[test]
    fn twisted_gamma_eigenvalue_is_nu(s in label()) {
        let psi = radial_eigenfunction(&s, true).unwrap();
        let image = radial_operator(RadialOperator::GammaBottom, s.l, s.n, s.two_mu, true).apply(&psi);
        prop_assert_eq!(image.ratio_to(&psi), Some(exact(s.nu())));
    }

    #[test]
    fn twist_map_is_an_isometry_onto_the_twisted_state(s in label()) {
        let m = 2 * s.n as i64 - 1;
        let r = radial_eigenfunction(&s, false).unwrap();
        let tau = twist_map(&s).unwrap();
        prop_assert_eq!(tau.inner(&tau, m).unwrap(), r.inner(&r, m).unwrap());
        let psi = radial_eigenfunction(&s, true).unwrap();
        let c = tau.ratio_to(&psi).unwrap();
        prop_assert!(c.to_complex64().re > 0.0 && c.to_complex64().im == 0.0);
    }

    #[test]
    fn raising_steps_k_by_one(s in label()) {
        let psi = radial_eigenfunction(&s, true).unwrap();
        let up = lowering(s.l, s.n, s.two_mu, -1).apply(&psi);
        let next = radial_eigenfunction(&SpectralLabel::new(s.k + 1, s.l, s.n, s.two_mu).unwrap(), true).unwrap();
        let c = up.ratio_to(&next);
        prop_assert!(c.is_some_and(|c| !c.is_zero()));
    }

    #[test]
    fn lowering_steps_k_down_and_kills_the_bottom(s in label()) {
        let psi = radial_eigenfunction(&s, true).unwrap();
        let down = lowering(s.l, s.n, s.two_mu, 1).apply(&psi);
        if s.k == 1 {
            prop_assert!(down.is_zero());
        } else {
            let prev = radial_eigenfunction(&SpectralLabel::new(s.k - 1, s.l, s.n, s.two_mu).unwrap(), true).unwrap();
            prop_assert!(down.ratio_to(&prev).is_some_and(|c| !c.is_zero()));
        }
    }

    #[test]
    fn gamma_bottom_is_r_h_plus_one_plus_half_r(s in label()) {
        let r = radial_eigenfunction(&s, false).unwrap();
        let direct = radial_operator(RadialOperator::GammaBottom, s.l, s.n, s.two_mu, false).apply(&r);
        prop_assert_eq!(direct, gamma_bottom_from_h(s.l, s.n, s.two_mu).apply(&r));
    }
}

#[test]
fn laguerre_polynomials_are_orthogonal() {
    for alpha in 0..=6u32 {
        for m in 0..=5u32 {
            for m2 in 0..=5u32 {
                let a = RadialFunction::from_poly(&laguerre_poly(m, alpha), 0, ratio(1, 2));
                let b = RadialFunction::from_poly(&laguerre_poly(m2, alpha), 0, ratio(1, 2));
                let expect = if m == m2 { factorial((m + alpha) as u64) / factorial(m as u64) } else { rat(0) };
                assert_eq!(a.inner(&b, alpha as i64).unwrap(), exact(expect), "α={alpha} m={m} m′={m2}");
            }
        }
    }
}

#[test]
fn gauss_laguerre_integrates_monomials() {
    let (x, w) = gauss_laguerre(64);
    let mut fact = 1.0f64;
    for j in 0..40 {
        if j > 0 {
            fact *= j as f64;
        }
        let q: f64 = x.iter().zip(&w).map(|(xi, wi)| xi.powi(j) * wi).sum();
        assert!((q - fact).abs() <= 1e-10 * fact, "j={j}: {q} vs {fact}");
    }
}

#[test]
fn ground_and_first_excited_energies() {
    assert_eq!(energy(0, 2, 1), ratio(-1, 8));
    assert_eq!(energy(0, 2, 0), ratio(-2, 9));
    assert_eq!(energy(1, 3, 0), ratio(-2, 49));
    let s = SpectralLabel::new(1, 0, 2, 1).unwrap();
    assert_eq!(s.energy(), ratio(-1, 8));
}

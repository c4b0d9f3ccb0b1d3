use proptest::prelude::*;

use bimod_core::connection::{
    is_admissible, sigma_compat_residuals, solve_right_from_left, Christoffel, Side,
};
use bimod_core::metric::{ml_family_laurent, ml_family_zeta3};
use bimod_core::oneforms::{
    differential, differential_form, sigma, Braiding, OneForm, TensorOverA,
};
use bimod_core::qalgebra::AlgElem;
use bimod_core::scalar::{Field, QField, RatFunc, Zeta3};
use bimod_core::textio::{christoffel_from_entries, parse_sections, write_christoffel};

fn coeff<F: QField>(a: i64, b: i64) -> F {
    F::from_int(a) + F::from_int(b) * F::q()
}

fn elem<F: QField>(max_deg: i64) -> impl Strategy<Value = AlgElem<F>> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, -3i64..=3, -3i64..=3), 0..4).prop_map(
        |terms| {
            terms
                .into_iter()
                .fold(AlgElem::zero(), |acc, (p, r, a, b)| {
                    &acc + &AlgElem::monomial(p, r, coeff::<F>(a, b))
                })
        },
    )
}

fn form<F: QField>() -> impl Strategy<Value = OneForm<F>> {
    (elem::<F>(3), elem::<F>(3)).prop_map(|(b1, b2)| OneForm::from_right(b1, b2))
}

fn tensor<F: QField>() -> impl Strategy<Value = TensorOverA<F>> {
    prop::collection::vec(elem::<F>(2), 4).prop_map(|c| {
        let mut t = TensorOverA::zero();
        for (n, e) in c.into_iter().enumerate() {
            t = &t + &TensorOverA::term(n / 2, n % 2, e);
        }
        t
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_is_associative(a in elem::<RatFunc>(3), b in elem::<RatFunc>(3), c in elem::<RatFunc>(3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn product_distributes(a in elem::<Zeta3>(4), b in elem::<Zeta3>(4), c in elem::<Zeta3>(4)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn differential_is_a_derivation(a in elem::<RatFunc>(3), b in elem::<RatFunc>(3)) {
        let lhs = differential(&(&a * &b)).unwrap();
        let rhs = &differential(&a).unwrap().right_mul(&b) + &differential(&b).unwrap().left_mul(&a);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_squared_vanishes(a in elem::<Zeta3>(5)) {
        prop_assert!(differential_form(&differential(&a).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn oneforms_form_a_bimodule(w in form::<RatFunc>(), a in elem::<RatFunc>(2), b in elem::<RatFunc>(2)) {
        prop_assert_eq!(w.left_mul(&a).right_mul(&b), w.right_mul(&b).left_mul(&a));
        prop_assert_eq!(w.left_mul(&b).left_mul(&a), w.left_mul(&(&a * &b)));
    }

    #[test]
    fn left_right_coefficients_round_trip(w in form::<Zeta3>()) {
        let (a1, a2) = w.to_left_form();
        prop_assert_eq!(OneForm::from_left(&a1, &a2), w);
    }

    #[test]
    fn sigma_is_a_bimodule_map(t in tensor::<RatFunc>(), a in elem::<RatFunc>(2), b in elem::<RatFunc>(2)) {
        let moved = t.left_mul(&a).right_mul(&b);
        prop_assert_eq!(sigma(&moved), sigma(&t).left_mul(&a).right_mul(&b));
    }

    #[test]
    fn sigma_inverse(t in tensor::<Zeta3>()) {
        let s = Braiding::<Zeta3>::sigma();
        prop_assert_eq!(s.inverse().unwrap().apply(&s.apply(&t)), t);
    }

    #[test]
    fn laurent_family_is_middle_linear(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3) {
        let (a, b, c) = (RatFunc::from_int(a), RatFunc::from_int(b), RatFunc::from_int(c) * RatFunc::q());
        let g = ml_family_laurent(&a, &b, &c);
        prop_assert!(g.is_middle_linear());
        prop_assert!(g.is_tau_symmetric());
    }

    #[test]
    fn zeta3_family_is_middle_linear(p in prop::collection::vec((0i64..=2, 0i64..=2, -2i64..=2), 4)) {
        let z: Vec<AlgElem<Zeta3>> = p.iter().map(|&(i, j, c)| AlgElem::monomial(3 * i, 3 * j, Zeta3::from_int(c))).collect();
        let g = ml_family_zeta3(&z[0], &z[1], &z[2], &z[3]).unwrap();
        prop_assert!(g.is_middle_linear());
    }

    #[test]
    fn right_from_left_is_sigma_compatible(entries in prop::collection::vec(elem::<Zeta3>(3), 8)) {
        let mut g = Christoffel::zero(Side::Left);
        for (n, e) in entries.into_iter().enumerate() {
            g = g.with(n / 4 + 1, (n / 2) % 2 + 1, n % 2 + 1, e);
        }
        match solve_right_from_left(&g) {
            Ok(gt) => {
                prop_assert!(is_admissible(&g));
                prop_assert!(sigma_compat_residuals(&g, &gt).unwrap().iter().all(TensorOverA::is_zero));
            }
            Err(_) => prop_assert!(!is_admissible(&g)),
        }
    }

    #[test]
    fn christoffel_text_round_trip(entries in prop::collection::vec(elem::<RatFunc>(3), 8)) {
        let mut g = Christoffel::zero(Side::Left);
        for (n, e) in entries.into_iter().enumerate() {
            g = g.with(n / 4 + 1, (n / 2) % 2 + 1, n % 2 + 1, e);
        }
        let text = write_christoffel("gamma", &g);
        let s = parse_sections(&text).unwrap();
        prop_assert_eq!(christoffel_from_entries::<RatFunc>(s.require("gamma").unwrap(), Side::Left).unwrap(), g);
    }
}

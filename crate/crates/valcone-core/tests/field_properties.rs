//! Field, order, and valuation laws of the Puiseux fraction field on
//! randomized inputs.

mod common;

use core::cmp::Ordering;

use common::{arb_elem, arb_nonzero_elem, arb_poly};
use num_traits::{One, Zero};
use proptest::prelude::*;
use valcone_core::puiseux_field::{log_big, parse_textual, rat, FieldElem, Valuation};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_commutes(a in arb_elem(), b in arb_elem()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn addition_associates(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_commutes(a in arb_elem(), b in arb_elem()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multiplication_associates(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes_over_addition(
        a in arb_elem(),
        b in arb_elem(),
        c in arb_elem(),
    ) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn identities_and_negation(a in arb_elem()) {
        prop_assert_eq!(&(&a + &FieldElem::zero()), &a);
        prop_assert_eq!(&(&a * &FieldElem::one()), &a);
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn nonzero_elements_invert(a in arb_nonzero_elem()) {
        prop_assert!((&a * &a.inverse().unwrap()).is_one());
    }

    #[test]
    fn division_undoes_multiplication(a in arb_elem(), b in arb_nonzero_elem()) {
        prop_assert_eq!(&(&(&a / &b) * &b), &a);
    }

    #[test]
    fn order_is_translation_invariant(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
        prop_assert_eq!(a.cmp(&b), (&a + &c).cmp(&(&b + &c)));
    }

    #[test]
    fn positives_close_under_sum_and_product(
        a in arb_nonzero_elem(),
        b in arb_nonzero_elem(),
    ) {
        let (p, q) = (a.abs(), b.abs());
        prop_assert!((&p + &q).sign() > 0);
        prop_assert!((&p * &q).sign() > 0);
    }

    #[test]
    fn sign_matches_the_order(a in arb_elem()) {
        let expected = match a.cmp(&FieldElem::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        };
        prop_assert_eq!(a.sign(), expected);
    }

    #[test]
    fn valuation_is_multiplicative(a in arb_elem(), b in arb_elem()) {
        prop_assert_eq!((&a * &b).val(), a.val().add(&b.val()));
    }

    #[test]
    fn valuation_is_ultrametric(a in arb_elem(), b in arb_elem()) {
        let low = a.val().min(b.val());
        prop_assert!((&a + &b).val() >= low);
        if a.val() != b.val() {
            prop_assert_eq!((&a + &b).val(), a.val().min(b.val()));
        }
    }

    #[test]
    fn absolute_value_is_multiplicative_and_subadditive(a in arb_elem(), b in arb_elem()) {
        prop_assert_eq!((&a * &b).abs(), &a.abs() * &b.abs());
        prop_assert!((&a + &b).abs() <= &a.abs() + &b.abs());
    }

    #[test]
    fn squares_have_exact_roots(a in arb_elem()) {
        prop_assert_eq!((&a * &a).sqrt_exact().unwrap(), a.abs());
    }

    #[test]
    fn powers_agree_with_repeated_multiplication(a in arb_nonzero_elem()) {
        prop_assert!(a.pow(0).unwrap().is_one());
        prop_assert_eq!(a.pow(3).unwrap(), &(&a * &a) * &a);
        prop_assert_eq!(a.pow(-2).unwrap(), (&a * &a).inverse().unwrap());
    }

    #[test]
    fn power_substitution_is_a_scaled_homomorphism(
        a in arb_elem(),
        b in arb_elem(),
        p in 1i64..=4,
        q in 1i64..=3,
    ) {
        let c = rat(p, q);
        prop_assert_eq!(
            (&a * &b).substitute_power(&c),
            &a.substitute_power(&c) * &b.substitute_power(&c)
        );
        let expected = match a.val() {
            Valuation::Finite(v) => Valuation::Finite(v * &c),
            Valuation::Infinite => Valuation::Infinite,
        };
        prop_assert_eq!(a.substitute_power(&c).val(), expected);
    }

    #[test]
    fn polynomial_display_reparses(p in arb_poly()) {
        let x = FieldElem::from_poly(p);
        prop_assert_eq!(parse_textual(&x.to_string()).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn log_brackets_the_negated_valuation(a in arb_nonzero_elem()) {
        let positive = a.abs();
        let v = match positive.val() {
            Valuation::Finite(v) => v,
            Valuation::Infinite => unreachable!("nonzero element"),
        };
        let tol = rat(1, 64);
        let (lo, hi) = log_big(&positive, &FieldElem::t(), &tol).unwrap();
        prop_assert!(&hi - &lo <= tol);
        prop_assert!(lo <= -v.clone() && -v <= hi);
    }
}

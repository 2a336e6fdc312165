use proptest::prelude::*;

use ema_weyl::foundations::FieldElement as F;

const ORDERS: [u32; 5] = [3, 4, 5, 8, 12];

fn element(m: u32) -> impl Strategy<Value = F> {
    prop::collection::vec((-4i64..=4, 1i64..=3), 1..5).prop_map(move |terms| {
        terms
            .into_iter()
            .enumerate()
            .fold(F::zero(), |acc, (k, (n, d))| acc + F::rat(n, d) * F::zeta(m, k as i64))
    })
}

fn triple() -> impl Strategy<Value = (u32, F, F, F)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(|m| (Just(m), element(m), element(m), element(m)))
}

proptest! {
    #[test]
    fn cyclotomic_field_axioms((_, a, b, c) in triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, F::zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
    }

    #[test]
    fn display_round_trips((m, a, _, _) in triple()) {
        let text = a.to_string();
        prop_assert_eq!(F::parse_with_order(&text, m).unwrap(), a, "{}", text);
    }
}

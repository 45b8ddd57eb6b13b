use proptest::prelude::*;

use sylow3::closed_form::{big_m, little_m, omega_known};
use sylow3::lr::{dimension, lr_coefficient_uncached, lr_product};
use sylow3::sylow::{n_total, padic_expansion, BinarySeq, CharLabel};
use sylow3::Partition;

fn partition(max_part: u32, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_len).prop_map(Partition::from_unsorted)
}

/// Lengths follow the base-3 digits of n, so each length appears at most twice.
fn label() -> impl Strategy<Value = CharLabel> {
    prop::collection::vec(0usize..=2, 5)
        .prop_filter("n > 0", |d| d.iter().any(|&x| x > 0))
        .prop_flat_map(|digits| {
            let lens: Vec<usize> = digits
                .iter()
                .enumerate()
                .flat_map(|(k, &d)| std::iter::repeat_n(k, d))
                .collect();
            lens.into_iter()
                .map(|k| prop::collection::vec(0u8..=1, k))
                .collect::<Vec<_>>()
        })
        .prop_map(|bits| {
            CharLabel::new(
                bits.into_iter()
                    .map(|b| BinarySeq::new(b).unwrap())
                    .collect(),
            )
            .unwrap()
        })
}

fn binomial(n: u32, k: u32) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_is_an_involution(lam in partition(9, 7)) {
        let c = lam.conjugate();
        prop_assert_eq!(c.size(), lam.size());
        prop_assert_eq!(c.first(), lam.len());
        prop_assert_eq!(c.conjugate(), lam);
    }

    #[test]
    fn partition_text_round_trips(lam in partition(12, 6)) {
        let back: Partition = lam.to_string().parse().unwrap();
        prop_assert_eq!(back, lam);
    }

    #[test]
    fn label_text_round_trips(l in label()) {
        let back: CharLabel = l.to_string().parse().unwrap();
        prop_assert_eq!(back, l);
    }

    #[test]
    fn lr_is_symmetric_and_conjugation_invariant(
        mu in partition(4, 3),
        nu in partition(4, 3),
        pick in any::<prop::sample::Index>(),
    ) {
        let product = lr_product(&mu, &nu);
        let shapes: Vec<&Partition> = product.keys().collect();
        let lam = shapes[pick.index(shapes.len())];
        let c = lr_coefficient_uncached(lam, &mu, &nu);
        prop_assert_eq!(c, product[lam]);
        prop_assert_eq!(c, lr_coefficient_uncached(lam, &nu, &mu));
        prop_assert_eq!(
            c,
            lr_coefficient_uncached(&lam.conjugate(), &mu.conjugate(), &nu.conjugate())
        );
    }

    #[test]
    fn lr_product_dimension_count(mu in partition(4, 3), nu in partition(4, 3)) {
        let lhs: u128 = lr_product(&mu, &nu)
            .iter()
            .map(|(lam, &c)| u128::from(c) * dimension(lam))
            .sum();
        let rhs = binomial(mu.size() + nu.size(), mu.size()) * dimension(&mu) * dimension(&nu);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn padic_digits_rebuild_n(n in 0u64..1_000_000) {
        let rebuilt = padic_expansion(n)
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * 3 + u64::from(d));
        prop_assert_eq!(rebuilt, n);
    }

    #[test]
    fn bounds_are_ordered(l in label()) {
        let (m, nv, big) = (little_m(&l).unwrap(), n_total(&l).unwrap(), big_m(&l));
        prop_assert!(m <= nv && nv <= big, "{l}: {m} {nv} {big}");
        prop_assert!(big <= l.n());
    }

    #[test]
    fn exact_omega_is_closed_under_conjugation(l in label()) {
        prop_assume!(l.n() < 27);
        let d = omega_known(&l).unwrap();
        prop_assert!(d.is_exact());
        let members = d.known.enumerate().unwrap();
        for lam in &members {
            prop_assert!(d.known.contains(&lam.conjugate()), "{l}: {lam}");
        }
    }
}

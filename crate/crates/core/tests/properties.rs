use proptest::prelude::*;
use sylow_chars::chars::{class_sum, induced_value, oracle_class_sum, BitSeq, CharSpec, Mode, Row};
use sylow_chars::classify::{
    bumped_elements, induced_equal, n_conjugate, part2_equivalent, signed_power_case, FProfile, IntMultiset,
    SignedPowers,
};
use sylow_chars::sylow::{all_cycle_types, CycleType, DEFAULT_BUDGET};
use sylow_chars::verify::{Case, VerificationReport};

fn bit_rows(a: usize, k: usize) -> impl Strategy<Value = Vec<BitSeq>> {
    prop::collection::vec(prop::collection::vec(any::<bool>(), k), a)
        .prop_map(|rows| rows.into_iter().map(BitSeq::new).collect())
}

fn sorted(rows: &[BitSeq]) -> Vec<Vec<bool>> {
    let mut r: Vec<Vec<bool>> = rows.iter().map(|b| b.bits().to_vec()).collect();
    r.sort();
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exponents_do_not_change_class_sums(
        bits in prop::collection::vec(any::<bool>(), 2),
        raw in prop::collection::vec(1u32..3, 2),
        which in 0usize..3,
    ) {
        let u = BitSeq::new(bits.clone());
        let exps: Vec<u32> = bits.iter().zip(&raw).map(|(&b, &e)| if b { 0 } else { e }).collect();
        let row = Row::with_exponents(3, u.clone(), exps).unwrap();
        let moved: &[u64] = [&[3u64][..], &[9], &[3, 3]][which];
        let ct = CycleType::with_fixed_points(9, moved).unwrap();
        let chosen = oracle_class_sum(&CharSpec::from_rows(3, vec![row]).unwrap(), &ct, DEFAULT_BUDGET).unwrap();
        let default = class_sum(&CharSpec::new(3, vec![u]).unwrap(), &ct).unwrap();
        prop_assert_eq!(chosen, default);
    }

    #[test]
    fn induced_values_are_integers(rows in bit_rows(2, 2), idx in 0usize..100) {
        let spec = CharSpec::new(5, rows).unwrap();
        let types = all_cycle_types(50).unwrap();
        let ct = &types[idx * types.len() / 100];
        match induced_value(&spec, ct, Mode::Auto, DEFAULT_BUDGET) {
            Ok(r) => prop_assert!(r.value.is_integer()),
            Err(e) => prop_assert!(e.is_budget(), "{e}"),
        }
    }

    #[test]
    fn profile_decision_is_row_equality(a in 1usize..=4, k in 1usize..=5, seed in any::<u64>()) {
        let rows = |salt: u64| -> Vec<BitSeq> {
            (0..a).map(|i| BitSeq::from_index(seed.rotate_left((i as u32 + 1) * 7 + salt as u32) % (1 << k), k)).collect()
        };
        let (s, t) = (rows(0), if seed % 3 == 0 { rows(0).into_iter().rev().collect() } else { rows(1) });
        let decided = part2_equivalent(&FProfile::from_rows(&s).unwrap(), &FProfile::from_rows(&t).unwrap()).unwrap();
        prop_assert_eq!(decided, sorted(&s) == sorted(&t));
    }

    #[test]
    fn permuted_rows_are_conjugate(rows in bit_rows(3, 3), shift in 0usize..3) {
        let mut other = rows.clone();
        other.rotate_left(shift);
        let s = CharSpec::new(5, rows).unwrap();
        let t = CharSpec::new(5, other).unwrap();
        prop_assert!(n_conjugate(&s, &t).unwrap());
        let c = induced_equal(&s, &t).unwrap();
        prop_assert!(c.induced_equal && c.witness.is_none());
    }

    #[test]
    fn witnesses_separate(s in bit_rows(2, 3), t in bit_rows(2, 3)) {
        let c = induced_equal(&CharSpec::new(3, s.clone()).unwrap(), &CharSpec::new(3, t.clone()).unwrap()).unwrap();
        prop_assert_eq!(c.n_conjugate, c.induced_equal);
        prop_assert_eq!(c.n_conjugate, sorted(&s) == sorted(&t));
        if let Some(w) = c.witness {
            prop_assert_ne!(&w.class_sums[0], &w.class_sums[1]);
        }
    }

    #[test]
    fn bumped_elements_recovers_the_choice(
        items in prop::collection::vec(0i64..6, 1..8),
        mask in any::<u8>(),
    ) {
        let chosen: Vec<i64> = items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
        prop_assume!(!chosen.is_empty());
        let bumped: Vec<i64> = items
            .iter()
            .enumerate()
            .map(|(i, &x)| if mask >> i & 1 == 1 { x + 1 } else { x })
            .collect();
        let got = bumped_elements(&IntMultiset::new(items), &IntMultiset::new(bumped), chosen.len());
        prop_assert_eq!(got, Some(IntMultiset::new(chosen)));
    }

    #[test]
    fn signed_powers_below_q_are_injective(
        q in 2i64..=5,
        sigma in prop::collection::vec(0i64..8, 1..5),
        tau in prop::collection::vec(0i64..8, 1..5),
    ) {
        let a = sigma.len().min(tau.len()).min(q as usize - 1).max(1);
        let (s, t) = (IntMultiset::new(sigma[..a].to_vec()), IntMultiset::new(tau[..a].to_vec()));
        let case = signed_power_case(q, &s, &t).unwrap();
        prop_assert!(!matches!(case, SignedPowers::Exceptional(_)));
        prop_assert_eq!(case == SignedPowers::Equal, s == t);
    }

    #[test]
    fn cycle_types_partition_n(n in 1u64..=14) {
        let all = all_cycle_types(n).unwrap();
        for ct in &all {
            prop_assert_eq!(ct.parts().iter().sum::<u64>(), n);
        }
        let mut seen: Vec<_> = all.iter().map(|c| c.parts().to_vec()).collect();
        seen.sort();
        seen.dedup();
        prop_assert_eq!(seen.len(), all.len());
    }

    #[test]
    fn reports_round_trip(details in prop::collection::vec("[a-z,\" ]{0,12}", 0..6), fail_at in 0usize..8) {
        let cases: Vec<Case> = details
            .iter()
            .enumerate()
            .map(|(i, d)| Case::check(format!("c{i}"), i != fail_at, d.clone(), i as u64))
            .collect();
        let r = VerificationReport::new("prop", Default::default(), Some(3), cases, Default::default());
        let back: VerificationReport = serde_json::from_str(&r.to_json(false)).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(r.passed(), fail_at >= details.len());
        prop_assert_eq!(r.to_csv().lines().count(), details.len() + 1 + details.iter().filter(|d| d.contains('\n')).count());
    }
}

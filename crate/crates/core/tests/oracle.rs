use cpl_core::oracle::{
    brute_tuples, for_each_weighted_vector, minimal_configuration, partition_tuples,
    pentagonal_weights, quad_weights, reduction_mismatch, shift_is_characteristic, tuple_count,
    tuple_counts, uv_counts, BRUTE_MAX,
};
use cpl_core::{builtin_registry, Coefficients, Error, IdentitySpec, RANK};
use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;

fn spec(name: &str) -> IdentitySpec {
    builtin_registry()
        .into_iter()
        .find(|s| s.name() == name)
        .unwrap()
}

/// Partition numbers from Euler's pentagonal recurrence.
fn partition_numbers(n_max: usize) -> Vec<BigUint> {
    let mut p = vec![BigUint::zero(); n_max + 1];
    p[0] = BigUint::from(1u32);
    for n in 1..=n_max {
        let mut acc: num_bigint::BigInt = 0.into();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * num_bigint::BigInt::from(p[n - g1].clone());
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                acc += sign * num_bigint::BigInt::from(p[n - g2].clone());
            }
        }
        p[n] = acc.to_biguint().unwrap();
    }
    p
}

#[test]
fn partition_tuples_are_twelvefold_convolution() {
    let n = 40;
    let p = partition_numbers(n);
    let mut conv = vec![BigUint::zero(); n + 1];
    conv[0] = BigUint::from(1u32);
    for _ in 0..RANK {
        let mut next = vec![BigUint::zero(); n + 1];
        for i in 0..=n {
            for j in 0..=n - i {
                next[i + j] += &conv[i] * &p[j];
            }
        }
        conv = next;
    }
    let t = partition_tuples(n);
    assert_eq!(t.counts, conv);
    for w in 0..=n {
        assert!(t.counts[w] >= p[w]);
    }
}

#[test]
fn squares_form_rows() {
    let t = quad_weights(2, &[1; RANK], 2);
    assert_eq!(t.q_max(), 2);
    assert_eq!(t.even_sum_counts, vec![1, 0, 264]);
    assert_eq!(t.odd_sum_counts, vec![0, 24, 0]);
}

#[test]
fn pentagonal_rows() {
    // f = 0 and f = ±1 give weights 0, 1 and 2.
    let [even, odd] = pentagonal_weights(2);
    assert_eq!(even[0], 1);
    assert_eq!(odd[1], 12);
    assert_eq!(odd[2], 12);
    assert_eq!(even[2], 66);
}

#[test]
fn sides_agree_mod_six() {
    let s = spec("thm_999");
    assert_eq!(
        tuple_count(6, s.a(), 0, 2),
        tuple_count(6, s.b(), s.m(), 2)
    );
}

#[test]
fn below_minimum_is_zero() {
    for s in builtin_registry() {
        let k = minimal_configuration(s.modulus(), s.a()).k as usize;
        for n in 0..k {
            assert!(tuple_count(s.modulus(), s.a(), 0, n).is_zero());
        }
        assert!(tuple_count(s.modulus(), s.b(), s.m() + 5, s.m() as usize + 4).is_zero());
    }
}

#[test]
fn unit_tuples() {
    let t = brute_tuples(2, &[1; RANK], 0, 1).unwrap();
    assert_eq!(t.len(), 24);
    assert!(t.iter().all(|x| x.partitions.iter().all(Vec::is_empty)));
    assert_eq!(tuple_count(2, &[1; RANK], 0, 1), BigUint::from(24u32));
}

#[test]
fn nothing_at_zero_with_positive_coefficients() {
    assert!(brute_tuples(6, &[2; RANK], 0, 0).unwrap().is_empty());
}

#[test]
fn brute_length_matches_count_at_ten() {
    let s = spec("thm_333");
    let t = brute_tuples(6, s.a(), 0, 10).unwrap();
    assert_eq!(BigUint::from(t.len()), tuple_count(6, s.a(), 0, 10));
    for x in &t {
        let q: i64 = x
            .d
            .iter()
            .zip(s.a())
            .map(|(&d, &a)| 6 * d * (d - 1) / 2 + a as i64 * d)
            .sum();
        let parts: u32 = x.partitions.iter().flatten().sum();
        assert_eq!(q + 6 * parts as i64, 10);
        assert_eq!(x.d.iter().sum::<i64>().rem_euclid(2), 1);
    }
}

#[test]
fn brute_bound_refused() {
    assert!(matches!(
        brute_tuples(2, &[1; RANK], 0, BRUTE_MAX + 1),
        Err(Error::BruteBound { .. })
    ));
}

#[test]
fn uv_at_k() {
    // At N = k = 1 the zero f-vector contributes the 24 minimal d-vectors to V only.
    let s = spec("thm_111");
    assert_eq!(uv_counts(&s, 1), (24, 24));
    assert_eq!(uv_counts(&s, 0), (0, 0));
    let min = minimal_configuration(2, s.a());
    assert_eq!((min.k, min.count), (1, 24));
}

#[test]
fn reduction_between_mod_six_entries() {
    assert_eq!(reduction_mismatch(&spec("thm_444"), &spec("thm_333"), 80), None);
    assert_eq!(
        reduction_mismatch(&spec("thm_111"), &spec("thm_333"), 10),
        Some(i64::MIN)
    );
}

#[test]
fn characteristic_shift_flags() {
    let flagged: Vec<String> = builtin_registry()
        .iter()
        .filter(|s| !shift_is_characteristic(s))
        .map(|s| s.name().to_string())
        .collect();
    assert!(shift_is_characteristic(&spec("thm_111")));
    assert!(!flagged.contains(&"thm_333".to_string()));
    // A wrong shift must be flagged.
    assert!(!shift_is_characteristic(&spec("thm_111").with_shift(2)));
}

fn small_form() -> impl Strategy<Value = (u32, Coefficients)> {
    (1u32..=6).prop_flat_map(|half| {
        let c = 2 * half;
        (Just(c), proptest::array::uniform12(0..=half))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn quad_weights_match_enumeration((c, a) in small_form(), q in 0usize..14) {
        let table = quad_weights(c, &a, q);
        let mut even = vec![0u128; q + 1];
        let mut odd = vec![0u128; q + 1];
        for_each_weighted_vector(c, &a, q as u64, |d, w| {
            if d.iter().sum::<i64>().rem_euclid(2) == 0 {
                even[w as usize] += 1;
            } else {
                odd[w as usize] += 1;
            }
        });
        prop_assert_eq!(table.even_sum_counts, even);
        prop_assert_eq!(table.odd_sum_counts, odd);
    }

    #[test]
    fn tuple_counts_are_prefix_stable((c, a) in small_form(), n in 0usize..40, offset in 0u32..5) {
        let long = tuple_counts(c, &a, offset, n + 10);
        let short = tuple_counts(c, &a, offset, n);
        prop_assert_eq!(&long[..=n], &short[..]);
    }

    #[test]
    fn minimal_value_precedes_support((c, a) in small_form()) {
        let min = minimal_configuration(c, &a);
        prop_assert!(min.count > 0);
        prop_assert!(min.k <= c as u64);
        let t = quad_weights(c, &a, min.k as usize);
        prop_assert!(t.odd_sum_counts[..min.k as usize].iter().all(|&x| x == 0));
    }
}

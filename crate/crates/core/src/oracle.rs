//! Counts of the tuple sets `(μ_1..μ_12; d_1..d_12)` weighted by
//! `C·Σ|μ_i| + C·Σ C(d_i, 2) + Σ a_i·d_i + offset`, with odd `Σ d_i`.
//!
//! Equality of the two sides of an identity here is equivalent to the series identity,
//! so these counts serve as an independent check on [`crate::qseries`].

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::identity::{Coefficients, IdentitySpec, RANK};

/// `C·C(d, 2) + a·d`, non-negative for integer `d` whenever `0 ≤ a ≤ C`.
pub fn coordinate_weight(modulus: u32, a: u32, d: i64) -> i64 {
    modulus as i64 * d * (d - 1) / 2 + a as i64 * d
}

/// All `d` whose coordinate weight is at most `q_max`, as `(d, weight)`.
///
/// The weight is non-decreasing in `|d|` on each side of zero, so the range is scanned
/// outward from zero until it exceeds the bound.
pub fn coordinate_range(modulus: u32, a: u32, q_max: u64) -> Vec<(i64, u64)> {
    assert!(a <= modulus, "coefficient {a} exceeds modulus {modulus}");
    let mut out = Vec::new();
    for dir in [1i64, -1] {
        let mut d = if dir == 1 { 0 } else { -1 };
        loop {
            let w = coordinate_weight(modulus, a, d);
            if w as u64 > q_max {
                break;
            }
            out.push((d, w as u64));
            d += dir;
        }
    }
    out
}

fn convolve_parity(per_coordinate: &[Vec<(i64, u64)>], q_max: usize) -> [Vec<u128>; 2] {
    let mut table = [vec![0u128; q_max + 1], vec![0u128; q_max + 1]];
    table[0][0] = 1;
    for choices in per_coordinate {
        let mut next = [vec![0u128; q_max + 1], vec![0u128; q_max + 1]];
        for parity in 0..2 {
            for q in 0..=q_max {
                let c = table[parity][q];
                if c == 0 {
                    continue;
                }
                for &(d, w) in choices {
                    let qq = q + w as usize;
                    if qq > q_max {
                        continue;
                    }
                    let pp = parity ^ (d.rem_euclid(2) as usize);
                    next[pp][qq] = next[pp][qq].checked_add(c).expect("count overflow");
                }
            }
        }
        table = next;
    }
    table
}

/// Counts of integer vectors `d` by weight `C·Σ C(d_i,2) + Σ a_i·d_i`, split by `Σ d_i` parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticWeightTable {
    pub even_sum_counts: Vec<u128>,
    pub odd_sum_counts: Vec<u128>,
}

impl QuadraticWeightTable {
    pub fn q_max(&self) -> usize {
        self.even_sum_counts.len() - 1
    }
}

pub fn quad_weights(modulus: u32, coeffs: &Coefficients, q_max: usize) -> QuadraticWeightTable {
    let per: Vec<_> = coeffs
        .iter()
        .map(|&a| coordinate_range(modulus, a, q_max as u64))
        .collect();
    let [even, odd] = convolve_parity(&per, q_max);
    QuadraticWeightTable {
        even_sum_counts: even,
        odd_sum_counts: odd,
    }
}

/// Vectors `f` counted by `Σ f_i(3f_i − 1)/2`, split by `Σ f_i` parity.
pub fn pentagonal_weights(q_max: usize) -> [Vec<u128>; 2] {
    let mut choices = Vec::new();
    for dir in [1i64, -1] {
        let mut f = if dir == 1 { 0 } else { -1 };
        while (f * (3 * f - 1) / 2) as usize <= q_max {
            choices.push((f, (f * (3 * f - 1) / 2) as u64));
            f += dir;
        }
    }
    convolve_parity(&vec![choices; RANK], q_max)
}

/// Number of 12-tuples of partitions of total size `w`, for `w ≤ w_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTupleTable {
    pub counts: Vec<BigUint>,
}

pub fn partition_tuples(w_max: usize) -> PartitionTupleTable {
    let mut counts = vec![BigUint::zero(); w_max + 1];
    counts[0] = BigUint::from(1u32);
    for k in 1..=w_max {
        for _ in 0..RANK {
            for w in k..=w_max {
                let (lo, hi) = counts.split_at_mut(w);
                hi[0] += &lo[w - k];
            }
        }
    }
    PartitionTupleTable { counts }
}

/// Tuple counts for every `N` in `0..=n_max`.
pub fn tuple_counts(modulus: u32, coeffs: &Coefficients, offset: u32, n_max: usize) -> Vec<BigUint> {
    let offset = offset as usize;
    let mut out = vec![BigUint::zero(); n_max + 1];
    if n_max < offset {
        return out;
    }
    let span = n_max - offset;
    let weights = quad_weights(modulus, coeffs, span);
    let parts = partition_tuples(span / modulus as usize);
    let c = modulus as usize;
    for (q, &count) in weights.odd_sum_counts.iter().enumerate() {
        if count == 0 {
            continue;
        }
        let count = BigUint::from(count);
        for j in 0..=(span - q) / c {
            out[offset + q + j * c] += &count * &parts.counts[j];
        }
    }
    out
}

pub fn tuple_count(modulus: u32, coeffs: &Coefficients, offset: u32, n: usize) -> BigUint {
    tuple_counts(modulus, coeffs, offset, n).swap_remove(n)
}

/// Largest `N` accepted by the explicit enumerators.
pub const BRUTE_MAX: u64 = 15;

/// One explicit element: 12 partitions (parts in non-increasing order) and 12 integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredTuple {
    pub partitions: Vec<Vec<u32>>,
    pub d: [i64; RANK],
}

fn partitions_of(n: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=n.min(max_part)).rev() {
        prefix.push(part);
        partitions_of(n - part, part, prefix, out);
        prefix.pop();
    }
}

fn partition_tuples_of(
    remaining: u32,
    slot: usize,
    by_size: &[Vec<Vec<u32>>],
    current: &mut Vec<Vec<u32>>,
    out: &mut Vec<Vec<Vec<u32>>>,
) {
    if slot == RANK {
        if remaining == 0 {
            out.push(current.clone());
        }
        return;
    }
    for size in 0..=remaining {
        for p in &by_size[size as usize] {
            current.push(p.clone());
            partition_tuples_of(remaining - size, slot + 1, by_size, current, out);
            current.pop();
        }
    }
}

/// Every 12-tuple of partitions with total size exactly `w`, listed explicitly.
pub fn explicit_partition_tuples(w: u32) -> Vec<Vec<Vec<u32>>> {
    let by_size: Vec<Vec<Vec<u32>>> = (0..=w)
        .map(|s| {
            let mut out = Vec::new();
            partitions_of(s, s, &mut Vec::new(), &mut out);
            out
        })
        .collect();
    let mut out = Vec::new();
    partition_tuples_of(w, 0, &by_size, &mut Vec::with_capacity(RANK), &mut out);
    out
}

fn each_vector(
    modulus: u32,
    coeffs: &Coefficients,
    budget: i64,
    slot: usize,
    d: &mut [i64; RANK],
    weight: i64,
    f: &mut dyn FnMut(&[i64; RANK], i64),
) {
    if slot == RANK {
        f(d, weight);
        return;
    }
    // Walk outward from zero on each side; weights only grow past the first overshoot.
    for dir in [1i64, -1] {
        let mut x = if dir == 1 { 0 } else { -1 };
        loop {
            let w = coordinate_weight(modulus, coeffs[slot], x);
            if weight + w > budget {
                break;
            }
            d[slot] = x;
            each_vector(modulus, coeffs, budget, slot + 1, d, weight + w, f);
            x += dir;
        }
    }
}

/// Visits every integer vector of weight at most `q_max`, regardless of sum parity.
pub fn for_each_weighted_vector(
    modulus: u32,
    coeffs: &Coefficients,
    q_max: u64,
    mut f: impl FnMut(&[i64; RANK], u64),
) {
    let mut d = [0i64; RANK];
    each_vector(modulus, coeffs, q_max as i64, 0, &mut d, 0, &mut |v, w| {
        f(v, w as u64)
    });
}

/// Visits every tuple with value at most `n_max` as `(value, tuple)`.
pub fn for_each_brute_tuple(
    modulus: u32,
    coeffs: &Coefficients,
    offset: u32,
    n_max: u64,
    mut f: impl FnMut(u64, &ColoredTuple),
) -> Result<()> {
    if n_max > BRUTE_MAX {
        return Err(Error::BruteBound {
            n: n_max,
            max: BRUTE_MAX,
        });
    }
    if n_max < offset as u64 {
        return Ok(());
    }
    let span = n_max - offset as u64;
    let c = modulus as u64;
    let lists: Vec<Vec<Vec<Vec<u32>>>> = (0..=span / c)
        .map(|w| explicit_partition_tuples(w as u32))
        .collect();
    let mut tuple = ColoredTuple {
        partitions: vec![Vec::new(); RANK],
        d: [0; RANK],
    };
    for_each_weighted_vector(modulus, coeffs, span, |d, q| {
        if d.iter().sum::<i64>().rem_euclid(2) == 0 {
            return;
        }
        tuple.d = *d;
        for (w, list) in lists.iter().enumerate() {
            let value = offset as u64 + q + c * w as u64;
            if value > n_max {
                break;
            }
            for parts in list {
                tuple.partitions.clone_from(parts);
                f(value, &tuple);
            }
        }
    });
    Ok(())
}

/// Explicit list of every tuple with value exactly `n`.
pub fn brute_tuples(modulus: u32, coeffs: &Coefficients, offset: u32, n: u64) -> Result<Vec<ColoredTuple>> {
    let mut out = Vec::new();
    for_each_brute_tuple(modulus, coeffs, offset, n, |v, t| {
        if v == n {
            out.push(t.clone());
        }
    })?;
    Ok(out)
}

/// Number of explicitly enumerated tuples at each value `0..=n_max`.
pub fn brute_tuple_counts(modulus: u32, coeffs: &Coefficients, offset: u32, n_max: u64) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; n_max as usize + 1];
    for_each_brute_tuple(modulus, coeffs, offset, n_max, |v, _| counts[v as usize] += 1)?;
    Ok(counts)
}

/// The least value `k` with a nonempty left tuple set, and the size of that set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalConfiguration {
    pub k: u64,
    pub count: u128,
}

pub fn minimal_configuration(modulus: u32, coeffs: &Coefficients) -> MinimalConfiguration {
    // A single coordinate at 1 has weight a ≤ C, so k ≤ C; partitions only add multiples of C
    // and cannot contribute at the minimum.
    let table = quad_weights(modulus, coeffs, modulus as usize);
    let (k, &count) = table
        .odd_sum_counts
        .iter()
        .enumerate()
        .find(|(_, &c)| c > 0)
        .expect("a unit vector has odd sum");
    MinimalConfiguration { k: k as u64, count }
}

/// `(|U_N|, |V_N|)` for every `N` in `0..=n_max`.
///
/// `U` adds `|S_k|` copies of odd-sum `f`-vectors at `C·Σ f(3f−1)/2 + k` to the odd-sum
/// `d`-vectors of the left form; `V` does the same with even-sum `f` and the shifted right form.
pub fn uv_table(spec: &IdentitySpec, n_max: usize) -> Vec<(u128, u128)> {
    let c = spec.modulus() as usize;
    let m = spec.m() as usize;
    let min = minimal_configuration(spec.modulus(), spec.a());
    let k = min.k as usize;
    let left = quad_weights(spec.modulus(), spec.a(), n_max);
    let right = quad_weights(spec.modulus(), spec.b(), n_max);
    let [pent_even, pent_odd] = pentagonal_weights(n_max / c);
    (0..=n_max)
        .map(|n| {
            let (mut u, mut v) = (left.odd_sum_counts[n], 0u128);
            if n >= m {
                v += right.odd_sum_counts[n - m];
            }
            if n >= k && (n - k) % c == 0 {
                let j = (n - k) / c;
                u += min.count * pent_odd[j];
                v += min.count * pent_even[j];
            }
            (u, v)
        })
        .collect()
}

pub fn uv_counts(spec: &IdentitySpec, n: usize) -> (u128, u128) {
    uv_table(spec, n)[n]
}

/// Checks that the least value with a nonempty right tuple set equals the second least
/// value with a nonempty left tuple set.
pub fn shift_is_characteristic(spec: &IdentitySpec) -> bool {
    let horizon = 4 * spec.modulus() as usize + spec.m() as usize + 4;
    let left = tuple_counts(spec.modulus(), spec.a(), 0, horizon);
    let right = tuple_counts(spec.modulus(), spec.b(), spec.m(), horizon);
    let mut left_support = left.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(n, _)| n);
    let second = left_support.nth(1);
    let first_right = right.iter().position(|c| !c.is_zero());
    second.is_some() && second == first_right
}

/// Checks the cross-multiplied relation between two identities on their
/// partition-free tuple counts:
/// `|S_k|·Q'(N+k') + |S'_k'|·R(N+k) = |S_k|·R'(N+k') + |S'_k'|·Q(N+k)`
/// for all shifts `N ≥ −min(k, k')` whose arguments stay within `n_max`.
/// Returns the first offending `N`, if any.
pub fn reduction_mismatch(first: &IdentitySpec, second: &IdentitySpec, n_max: usize) -> Option<i64> {
    if first.modulus() != second.modulus() {
        return Some(i64::MIN);
    }
    let c = first.modulus();
    let q = quad_weights(c, first.a(), n_max).odd_sum_counts;
    let r_raw = quad_weights(c, first.b(), n_max).odd_sum_counts;
    let q2 = quad_weights(c, second.a(), n_max).odd_sum_counts;
    let r2_raw = quad_weights(c, second.b(), n_max).odd_sum_counts;
    let shifted = |raw: &[u128], m: u32, n: i64| -> u128 {
        let idx = n - m as i64;
        if idx < 0 {
            0
        } else {
            raw[idx as usize]
        }
    };
    let s = minimal_configuration(c, first.a());
    let s2 = minimal_configuration(c, second.a());
    let (k, k2) = (s.k as i64, s2.k as i64);
    let lo = -k.min(k2);
    let hi = n_max as i64 - k.max(k2);
    (lo..=hi).find(|&n| {
        let at = |v: &[u128], i: i64| if i < 0 { 0 } else { v[i as usize] };
        let lhs = s.count * at(&q2, n + k2) + s2.count * shifted(&r_raw, first.m(), n + k);
        let rhs = s.count * shifted(&r2_raw, second.m(), n + k2) + s2.count * at(&q, n + k);
        lhs != rhs
    })
}

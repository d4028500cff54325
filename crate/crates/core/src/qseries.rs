//! Distinct-part partition counts over colored sets, split by the parity of the number
//! of parts, and the identity verifier built on them.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::identity::{
    build_colored_set, ColoredSet, Coefficients, Failure, IdentitySpec, PowerOfTwo, Status,
    VerificationReport,
};

/// Coefficients of `∏ (1 + y·x^s)` truncated at `x^n_max`, grouped by the parity of the
/// `y` exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTable {
    even: Vec<BigUint>,
    odd: Vec<BigUint>,
}

impl SeriesTable {
    pub fn n_max(&self) -> usize {
        self.even.len() - 1
    }
    pub fn even_counts(&self) -> &[BigUint] {
        &self.even
    }
    pub fn odd_counts(&self) -> &[BigUint] {
        &self.odd
    }
    pub fn total(&self, n: usize) -> BigUint {
        &self.even[n] + &self.odd[n]
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn add_scaled(acc: &mut BigUint, x: &BigUint, c: &BigUint, scratch: &mut BigUint) {
    if x.is_zero() {
        return;
    }
    if c.is_one() {
        *acc += x;
    } else {
        scratch.clone_from(x);
        *scratch *= c;
        *acc += &*scratch;
    }
}

pub fn distinct_series(set: &ColoredSet, n_max: usize) -> SeriesTable {
    let mut even = vec![BigUint::zero(); n_max + 1];
    let mut odd = vec![BigUint::zero(); n_max + 1];
    even[0] = BigUint::one();
    let mut scratch = BigUint::zero();
    for s in 1..=n_max {
        let c = set.copies_of(s as u64) as usize;
        if c == 0 {
            continue;
        }
        let jmax = c.min(n_max / s);
        let binom: Vec<BigUint> = (0..=jmax).map(|j| binomial(c as u64, j as u64)).collect();
        // Descending n reads only entries that still hold the product without size s.
        for n in (s..=n_max).rev() {
            let mut e = std::mem::take(&mut even[n]);
            let mut o = std::mem::take(&mut odd[n]);
            for j in 1..=jmax.min(n / s) {
                let k = n - j * s;
                if j % 2 == 1 {
                    add_scaled(&mut e, &odd[k], &binom[j], &mut scratch);
                    add_scaled(&mut o, &even[k], &binom[j], &mut scratch);
                } else {
                    add_scaled(&mut e, &even[k], &binom[j], &mut scratch);
                    add_scaled(&mut o, &odd[k], &binom[j], &mut scratch);
                }
            }
            even[n] = e;
            odd[n] = o;
        }
    }
    SeriesTable { even, odd }
}

/// `D(N)`: odd-part-count partitions when the set demands it, all partitions otherwise.
pub fn restricted_count(set: &ColoredSet, table: &SeriesTable, n: i64) -> Result<BigUint> {
    if n < 0 || n as usize > table.n_max() {
        return Err(Error::Range {
            index: n,
            max: table.n_max(),
        });
    }
    let n = n as usize;
    Ok(if set.parity_required() {
        table.odd[n].clone()
    } else {
        table.total(n)
    })
}

/// Restricted counts `D(0..=n_max)` in one vector.
pub fn restricted_counts(set: &ColoredSet, n_max: usize) -> Vec<BigUint> {
    let table = distinct_series(set, n_max);
    (0..=n_max)
        .map(|n| restricted_count(set, &table, n as i64).expect("in range"))
        .collect()
}

/// Compares `left[N]·den` with `num·right[N − m]` for `N` in `[n0, n_max]`.
pub fn compare_counts(
    name: &str,
    left: &[BigUint],
    right: &[BigUint],
    m: u64,
    n0: u64,
    factor: PowerOfTwo,
    n_max: u64,
) -> VerificationReport {
    let num = factor.numerator();
    let den = factor.denominator();
    let zero = BigUint::zero();
    let at = |n: u64| -> (&BigUint, &BigUint) {
        let r = if n >= m { &right[(n - m) as usize] } else { &zero };
        (&left[n as usize], r)
    };
    let differs = |l: &BigUint, r: &BigUint| l * &den != &num * r;

    let mut sub_n0_observations = Vec::new();
    for n in 1..n0.min(n_max + 1) {
        let (l, r) = at(n);
        if differs(l, r) {
            sub_n0_observations.push(Failure {
                n,
                left: l.clone(),
                right: r.clone(),
            });
        }
    }
    let first_failure = (n0..=n_max).find_map(|n| {
        let (l, r) = at(n);
        differs(l, r).then(|| Failure {
            n,
            left: l.clone(),
            right: r.clone(),
        })
    });
    VerificationReport {
        spec_name: name.to_string(),
        n_from: n0,
        n_to: n_max,
        holds: first_failure.is_none(),
        first_failure,
        sub_n0_observations,
    }
}

/// Verification for explicit sets; `verify_identity` is this applied to a spec's own sets.
#[allow(clippy::too_many_arguments)]
pub fn verify_sets(
    name: &str,
    s: &ColoredSet,
    t: &ColoredSet,
    m: u64,
    n0: u64,
    factor: PowerOfTwo,
    n_max: u64,
) -> Result<VerificationReport> {
    if n_max < n0 {
        return Err(Error::Domain(format!(
            "n_max {n_max} is below N0 = {n0}"
        )));
    }
    let left = restricted_counts(s, n_max as usize);
    let right = restricted_counts(t, n_max as usize);
    Ok(compare_counts(name, &left, &right, m, n0, factor, n_max))
}

pub fn verify_identity(spec: &IdentitySpec, n_max: u64) -> Result<VerificationReport> {
    verify_sets(
        spec.name(),
        &spec.left_set(),
        &spec.right_set(),
        spec.m() as u64,
        spec.n0() as u64,
        spec.factor(),
        n_max,
    )
}

/// Folds every coefficient into `[0, C/2]` and sorts, so equivalent tuples compare equal.
pub fn canonical(modulus: u32, coeffs: &Coefficients) -> Coefficients {
    let mut c = coeffs.map(|a| {
        let r = a % modulus;
        r.min(modulus - r)
    });
    c.sort_unstable();
    c
}

/// Probes coefficient pairs and reports those whose identity holds up to `n_probe`.
///
/// For each pair and each shift in `m_range`, the reported `N0` is the least value in
/// `1..=n0_max` from which the identity holds through `n_probe`. Pairs are canonicalized
/// before deduplication; output keeps the order of first discovery.
pub fn search_candidates<I>(
    modulus: u32,
    m_range: std::ops::RangeInclusive<u32>,
    generator: I,
    n_probe: u64,
    n0_max: u64,
) -> Result<Vec<IdentitySpec>>
where
    I: IntoIterator<Item = (Coefficients, Coefficients)>,
{
    if n_probe == 0 {
        return Err(Error::Domain("n_probe must be at least 1".into()));
    }
    let mut seen = HashSet::new();
    let mut found = Vec::new();
    for (a, b) in generator {
        let a = canonical(modulus, &a);
        let b = canonical(modulus, &b);
        let s = build_colored_set(modulus, &a)?;
        let t = build_colored_set(modulus, &b)?;
        let left = restricted_counts(&s, n_probe as usize);
        let right = restricted_counts(&t, n_probe as usize);
        let factor = PowerOfTwo(crate::identity::derive_p(&a, &b));
        for m in m_range.clone() {
            if !seen.insert((a, b, m)) {
                continue;
            }
            let hit = (1..=n0_max.min(n_probe)).find(|&n0| {
                compare_counts("", &left, &right, m as u64, n0, factor, n_probe).holds
            });
            if let Some(n0) = hit {
                let name = format!("cand_{modulus}_{}", found.len() + 1);
                found.push(IdentitySpec::new(
                    name,
                    Status::Conjectured,
                    "search",
                    modulus,
                    a,
                    b,
                    m,
                    n0 as u32,
                )?);
            }
        }
    }
    Ok(found)
}

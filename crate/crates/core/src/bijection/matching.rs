//! Exhaustive verification of a certificate on every element up to a value bound.

use rayon::prelude::*;
use serde::Serialize;

use super::certificates::{certificate, Certificate, Family};
use super::{Doubled, Element, Side};
use crate::error::{Error, Result};
use crate::identity::RANK;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseTally {
    pub case: String,
    pub family: String,
    pub elements: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueRow {
    pub value: i64,
    pub left: u64,
    pub right: u64,
    pub expected_left: u64,
    pub expected_right: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchReport {
    pub tag: String,
    pub value_max: i64,
    pub elements: u64,
    pub cases: Vec<CaseTally>,
    pub values: Vec<ValueRow>,
}

#[derive(Clone, Debug, Default)]
struct Tally {
    elements: u64,
    cases: Vec<u64>,
    left: Vec<u64>,
    right: Vec<u64>,
}

impl Tally {
    fn new(cases: usize, values: usize) -> Self {
        Tally {
            elements: 0,
            cases: vec![0; cases],
            left: vec![0; values],
            right: vec![0; values],
        }
    }

    fn merge(&mut self, other: &Tally) {
        self.elements += other.elements;
        for (a, b) in self.cases.iter_mut().zip(&other.cases) {
            *a += b;
        }
        for (a, b) in self.left.iter_mut().zip(&other.left) {
            *a += b;
        }
        for (a, b) in self.right.iter_mut().zip(&other.right) {
            *a += b;
        }
    }
}

/// Candidate doubled coordinates, each with its eight-fold weight, sorted by weight.
struct Domain {
    lists: Vec<Vec<(i32, i64)>>,
    suffix_min: Vec<i64>,
    budget: i64,
    odd_sum: bool,
}

impl Domain {
    fn new(family: &Family, parity: i32, budget: i64) -> Option<Domain> {
        let mins: Vec<i64> = (0..RANK)
            .map(|i| min_weight(family, i, parity))
            .collect();
        let total_min: i64 = mins.iter().sum();
        if total_min > budget {
            return None;
        }
        let lists: Vec<Vec<(i32, i64)>> = (0..RANK)
            .map(|i| {
                let limit = budget - (total_min - mins[i]);
                coordinate_list(family, i, parity, limit)
            })
            .collect();
        let mut suffix_min = vec![0; RANK + 1];
        for i in (0..RANK).rev() {
            suffix_min[i] = suffix_min[i + 1] + mins[i];
        }
        Some(Domain {
            lists,
            suffix_min,
            budget,
            odd_sum: family.odd_sum,
        })
    }

    fn walk(
        &self,
        depth: usize,
        acc: i64,
        t: &mut Doubled,
        visit: &mut impl FnMut(&Doubled) -> Result<()>,
    ) -> Result<()> {
        if depth == RANK {
            if !self.odd_sum || t.iter().sum::<i32>().rem_euclid(4) == 2 {
                visit(t)?;
            }
            return Ok(());
        }
        let room = self.budget - acc - self.suffix_min[depth + 1];
        for &(v, w) in &self.lists[depth] {
            if w > room {
                break;
            }
            t[depth] = v;
            self.walk(depth + 1, acc + w, t, visit)?;
        }
        Ok(())
    }
}

/// Vertex of the convex quadratic `α t² + β t` over doubled coordinates of one parity.
fn vertex(family: &Family, i: usize, parity: i32) -> i32 {
    let (a, b) = family.coeff[i];
    let real = -(b as f64) / (2.0 * a as f64);
    let mut t = real.round() as i32;
    if t.rem_euclid(2) != parity {
        t += 1;
    }
    // The nearest parity-matching point may sit on either side of the vertex.
    [t - 2, t, t + 2]
        .into_iter()
        .min_by_key(|&c| family.weight8(i, c))
        .unwrap()
}

fn min_weight(family: &Family, i: usize, parity: i32) -> i64 {
    family.weight8(i, vertex(family, i, parity))
}

fn coordinate_list(family: &Family, i: usize, parity: i32, limit: i64) -> Vec<(i32, i64)> {
    let v = vertex(family, i, parity);
    let mut out = Vec::new();
    let mut t = v;
    while family.weight8(i, t) <= limit {
        out.push((t, family.weight8(i, t)));
        t += 2;
    }
    t = v - 2;
    while family.weight8(i, t) <= limit {
        out.push((t, family.weight8(i, t)));
        t -= 2;
    }
    out.sort_by_key(|&(t, w)| (w, t));
    out
}

fn failure(clause: &str, e: &Element, detail: String) -> Error {
    Error::Certificate {
        clause: clause.to_string(),
        element: e.to_string(),
        detail,
    }
}

/// Checks one element: exactly one case claims it, the image is a domain element of equal
/// value on the other side, and the declared inverse case sends the image back.
fn check(cert: &Certificate, x: &Element, tally: &mut Tally) -> Result<()> {
    let fam = &cert.families[x.family as usize];
    let vx = fam
        .value(&x.t)
        .ok_or_else(|| failure("domain", x, "value is not an integer".into()))?;
    let fx = (cert.features)(x);
    let mut claims = cert.claimants(x, &fx);
    let (ci, case) = claims
        .next()
        .ok_or_else(|| failure("unique-claim", x, "no case claims it".into()))?;
    if let Some((_, other)) = claims.next() {
        return Err(failure(
            "unique-claim",
            x,
            format!("claimed by {} and {}", case.name, other.name),
        ));
    }
    let y = case
        .apply(x, &fx)
        .ok_or_else(|| failure("image", x, format!("{} is undefined here", case.name)))?;
    let fam_y = cert
        .families
        .get(y.family as usize)
        .filter(|f| y.copy < f.copies && f.admissible(&y.t))
        .ok_or_else(|| failure("image", x, format!("{} gives {y} outside the domain", case.name)))?;
    let vy = fam_y.value(&y.t);
    if vy != Some(vx) {
        return Err(failure(
            "image",
            x,
            format!("{} gives {y} with value {vy:?}, expected {vx}", case.name),
        ));
    }
    let side = fam.side(&x.t);
    if fam_y.side(&y.t) != side.opposite() {
        return Err(failure(
            "image",
            x,
            format!("{} gives {y} on the same side", case.name),
        ));
    }
    let fy = (cert.features)(&y);
    let back = cert
        .claimants(&y, &fy)
        .next()
        .map(|(_, c)| c)
        .ok_or_else(|| failure("inverse", x, format!("no case claims the image {y}")))?;
    if back.name != case.inverse {
        return Err(failure(
            "inverse",
            x,
            format!("image {y} is claimed by {}, not {}", back.name, case.inverse),
        ));
    }
    if back.apply(&y, &fy) != Some(*x) {
        return Err(failure(
            "inverse",
            x,
            format!("{} does not send {y} back", back.name),
        ));
    }
    tally.elements += 1;
    tally.cases[ci] += 1;
    let row = vx as usize;
    match side {
        Side::Left => tally.left[row] += 1,
        Side::Right => tally.right[row] += 1,
    }
    Ok(())
}

/// Enumerates every element of normalized value `0..=value_max` in every family and copy,
/// checks each one, and compares per-value side counts with the certificate's oracle.
pub fn exhaustive_match(tag: super::Tag, value_max: i64) -> Result<MatchReport> {
    let cert = certificate(tag);
    let rows = usize::try_from(value_max + 1).unwrap_or(0);
    let mut total = Tally::new(cert.cases.len(), rows);
    for (fi, family) in cert.families.iter().enumerate() {
        let budget = 8 * (value_max + family.shift - family.offset);
        let parities: &[i32] = if family.include_half { &[0, 1] } else { &[0] };
        for &parity in parities {
            let Some(domain) = Domain::new(family, parity, budget) else {
                continue;
            };
            for copy in 0..family.copies {
                let partials: Vec<Result<Tally>> = domain.lists[0]
                    .par_iter()
                    .map(|&(v, w)| {
                        let mut tally = Tally::new(cert.cases.len(), rows);
                        if w + domain.suffix_min[1] > domain.budget {
                            return Ok(tally);
                        }
                        let mut t = [0; RANK];
                        t[0] = v;
                        domain.walk(1, w, &mut t, &mut |t| {
                            let x = Element {
                                family: fi as u8,
                                copy,
                                t: *t,
                            };
                            check(&cert, &x, &mut tally)
                        })?;
                        Ok(tally)
                    })
                    .collect();
                for p in partials {
                    total.merge(&p?);
                }
            }
        }
    }
    let expected = cert.expected_counts(rows.saturating_sub(1));
    let mut values = Vec::with_capacity(rows);
    for v in 0..rows {
        let (el, er) = expected[v];
        let row = ValueRow {
            value: v as i64,
            left: total.left[v],
            right: total.right[v],
            expected_left: el as u64,
            expected_right: er as u64,
        };
        if row.left != row.right || row.left as u128 != el || row.right as u128 != er {
            return Err(Error::Certificate {
                clause: "counts".into(),
                element: format!("value {v}"),
                detail: format!(
                    "left {} right {}, expected {el} and {er}",
                    row.left, row.right
                ),
            });
        }
        values.push(row);
    }
    let names = cert.family_names();
    let cases = cert
        .cases
        .iter()
        .zip(&total.cases)
        .map(|(c, &n)| CaseTally {
            case: c.name.to_string(),
            family: names[c.family as usize].to_string(),
            elements: n,
        })
        .collect();
    Ok(MatchReport {
        tag: tag.as_str().to_string(),
        value_max,
        elements: total.elements,
        cases,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::super::Tag;
    use super::*;

    #[test]
    fn negative_bound_is_vacuous() {
        let r = exhaustive_match(Tag::SumMod6, -1).unwrap();
        assert_eq!(r.elements, 0);
        assert!(r.values.is_empty());
    }

    #[test]
    fn small_bounds_match() {
        for tag in Tag::ALL {
            let r = exhaustive_match(tag, 3).unwrap_or_else(|e| panic!("{tag}: {e}"));
            assert!(r.elements > 0, "{tag}");
            for row in &r.values {
                assert_eq!(row.left, row.right);
            }
        }
    }

    #[test]
    fn coordinate_list_is_complete() {
        let cert = certificate(Tag::Reflections);
        let f = &cert.families[0];
        let list = coordinate_list(f, 0, 0, 8 * 4);
        let mut ts: Vec<i32> = list.iter().map(|p| p.0).collect();
        ts.sort();
        // d² ≤ 4 with weight 8·d² on doubled t = 2d.
        assert_eq!(ts, vec![-4, -2, 0, 2, 4]);
    }
}

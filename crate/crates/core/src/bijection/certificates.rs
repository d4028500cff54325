//! Case maps for the six matching certificates.
//!
//! A certificate is a set of families (copies of a value form on integer or half-integer
//! vectors), each element counted on the left or right, and a list of cases. Each case claims
//! part of one family, maps it to a family on the other side with the same normalized value,
//! and names the case that maps it back.

use super::reflection::{reflect_doubled, residual_doubled, unresidual_doubled, ReflectionBasis};
use super::{Doubled, Element, Side};
use crate::error::{Error, Result};
use crate::identity::{builtin_registry, Coefficients, RANK};
use crate::oracle::{quad_weights, uv_table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    /// Reflections through the orthogonal basis plus the residual decomposition
    /// (squares form against 24 copies of pentagonal vectors).
    Reflections,
    /// Shifts and negations dispatched on `Σ d_i mod 6`.
    SumMod6,
    /// Shifts and half-swaps dispatched on `Σ_{i≤6} d_i − Σ_{i>6} d_i mod 6`.
    SplitSumMod6,
    /// Quadruple shifts dispatched on the parity of the first quadruple sum.
    QuadrupleShift,
    /// 4-coordinate Hadamard transforms through an auxiliary six-coordinate lattice.
    HadamardSplit,
    /// 4-coordinate Hadamard transforms with a coordinate relabelling.
    HadamardShift,
}

impl Tag {
    pub const ALL: [Tag; 6] = [
        Tag::Reflections,
        Tag::SumMod6,
        Tag::SplitSumMod6,
        Tag::QuadrupleShift,
        Tag::HadamardSplit,
        Tag::HadamardShift,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Reflections => "lemma3_1",
            Tag::SumMod6 => "lemma3_3",
            Tag::SplitSumMod6 => "lemma3_4",
            Tag::QuadrupleShift => "lemma3_5",
            Tag::HadamardSplit => "lemma3_6",
            Tag::HadamardShift => "lemma3_7",
        }
    }

    /// The registry identity whose tuple counts the certificate matches.
    pub fn identity(self) -> &'static str {
        match self {
            Tag::Reflections => "thm_111",
            Tag::SumMod6 => "thm_333",
            Tag::SplitSumMod6 => "thm_444",
            Tag::QuadrupleShift => "thm_555",
            Tag::HadamardSplit => "thm_666",
            Tag::HadamardShift => "thm_777",
        }
    }

    fn is_mod_six(self) -> bool {
        matches!(self, Tag::SumMod6 | Tag::SplitSumMod6)
    }

    fn is_hadamard(self) -> bool {
        matches!(
            self,
            Tag::QuadrupleShift | Tag::HadamardSplit | Tag::HadamardShift
        )
    }
}

impl std::str::FromStr for Tag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Tag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown certificate tag {s:?}")))
    }
}

impl std::fmt::Display for Tag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SideRule {
    /// Integer vectors on the primary side, half-integer vectors opposite.
    ByType,
    /// Odd-sum vectors on the primary side, even-sum vectors opposite.
    BySumParity,
}

/// Copies of a diagonal quadratic form `Σ (α_i t_i² + β_i t_i)/8 + offset` on doubled vectors.
#[derive(Clone, Debug)]
pub(crate) struct Family {
    pub name: &'static str,
    pub copies: u8,
    pub coeff: [(i64, i64); RANK],
    pub offset: i64,
    /// Subtracted from the value to line families up at a common base.
    pub shift: i64,
    pub include_half: bool,
    /// Odd coordinate sum required (lattice families) or not (pentagonal families).
    pub odd_sum: bool,
    pub primary: Side,
    pub side_rule: SideRule,
}

impl Family {
    #[allow(clippy::too_many_arguments)]
    fn lattice(
        name: &'static str,
        modulus: u32,
        a: Coefficients,
        offset: i64,
        shift: i64,
        copies: u8,
        include_half: bool,
        integer_side: Side,
    ) -> Self {
        let c = modulus as i64;
        Family {
            name,
            copies,
            coeff: a.map(|a| (c, 4 * a as i64 - 2 * c)),
            offset,
            shift,
            include_half,
            odd_sum: true,
            primary: integer_side,
            side_rule: SideRule::ByType,
        }
    }

    fn pentagonal(name: &'static str, modulus: u32, offset: i64, copies: u8, odd_side: Side) -> Self {
        let c = modulus as i64;
        Family {
            name,
            copies,
            coeff: [(3 * c, -2 * c); RANK],
            offset,
            shift: 0,
            include_half: false,
            odd_sum: false,
            primary: odd_side,
            side_rule: SideRule::BySumParity,
        }
    }

    pub fn weight8(&self, i: usize, t: i32) -> i64 {
        let (a, b) = self.coeff[i];
        let t = t as i64;
        a * t * t + b * t
    }

    pub fn admissible(&self, t: &Doubled) -> bool {
        let p = t[0].rem_euclid(2);
        if t.iter().any(|x| x.rem_euclid(2) != p) || (p == 1 && !self.include_half) {
            return false;
        }
        !self.odd_sum || t.iter().sum::<i32>().rem_euclid(4) == 2
    }

    /// Normalized value, or `None` if it is not an integer.
    pub fn value(&self, t: &Doubled) -> Option<i64> {
        let s: i64 = (0..RANK).map(|i| self.weight8(i, t[i])).sum();
        (s % 8 == 0).then(|| s / 8 + self.offset - self.shift)
    }

    pub fn side(&self, t: &Doubled) -> Side {
        let primary = match self.side_rule {
            SideRule::ByType => t[0].rem_euclid(2) == 0,
            SideRule::BySumParity => (t.iter().sum::<i32>() / 2).rem_euclid(2) == 1,
        };
        if primary {
            self.primary
        } else {
            self.primary.opposite()
        }
    }
}

/// Case-dispatch quantities; slots past `RANK` hold derived indices.
pub(crate) type Features = [i32; RANK + 1];
type Claims = fn(&Element, &Features, i32) -> bool;
type Apply = fn(&Element, &Features, i32) -> Option<Element>;

#[derive(Clone, Debug)]
pub(crate) struct Case {
    pub name: &'static str,
    pub family: u8,
    pub copy: Option<u8>,
    pub param: i32,
    pub claims: Claims,
    pub apply: Apply,
    pub inverse: &'static str,
}

impl Case {
    pub fn claims(&self, e: &Element, f: &Features) -> bool {
        e.family == self.family
            && self.copy.is_none_or(|c| c == e.copy)
            && (self.claims)(e, f, self.param)
    }

    pub fn apply(&self, e: &Element, f: &Features) -> Option<Element> {
        (self.apply)(e, f, self.param)
    }
}

/// An assembled certificate: families, cases and the independent count oracle.
pub struct Certificate {
    pub tag: Tag,
    pub(crate) families: Vec<Family>,
    pub(crate) cases: Vec<Case>,
    pub(crate) features: fn(&Element) -> Features,
    pub(crate) oracle: fn(usize) -> Vec<(u128, u128)>,
}

impl Certificate {
    pub fn family_names(&self) -> Vec<&'static str> {
        self.families.iter().map(|f| f.name).collect()
    }

    pub fn case_names(&self) -> Vec<&'static str> {
        self.cases.iter().map(|c| c.name).collect()
    }

    /// `(copies, half-integer vectors allowed)` for each family.
    pub fn family_shapes(&self) -> Vec<(u8, bool)> {
        self.families
            .iter()
            .map(|f| (f.copies, f.include_half))
            .collect()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.families
            .get(e.family as usize)
            .is_some_and(|f| e.copy < f.copies && f.admissible(&e.t))
    }

    /// Normalized value of a domain element.
    pub fn value(&self, e: &Element) -> Option<i64> {
        if !self.contains(e) {
            return None;
        }
        self.families[e.family as usize].value(&e.t)
    }

    pub fn side(&self, e: &Element) -> Option<Side> {
        self.contains(e)
            .then(|| self.families[e.family as usize].side(&e.t))
    }

    /// Expected left/right counts at normalized values `0..=value_max`.
    pub fn expected_counts(&self, value_max: usize) -> Vec<(u128, u128)> {
        (self.oracle)(value_max)
    }

    pub(crate) fn claimants<'a>(
        &'a self,
        e: &'a Element,
        f: &'a Features,
    ) -> impl Iterator<Item = (usize, &'a Case)> + 'a {
        self.cases
            .iter()
            .enumerate()
            .filter(move |(_, c)| c.claims(e, f))
    }

    /// Applies the unique claiming case; errors if zero or several cases claim `e`.
    pub fn apply(&self, e: &Element) -> Result<(Side, Element)> {
        let family = self
            .families
            .get(e.family as usize)
            .ok_or_else(|| Error::Domain(format!("no family {}", e.family)))?;
        if e.copy >= family.copies || !family.admissible(&e.t) {
            return Err(Error::Domain(format!("{e} is not in the domain of {}", self.tag)));
        }
        let f = (self.features)(e);
        let mut claim = self.claimants(e, &f);
        let (_, case) = claim
            .next()
            .ok_or_else(|| Error::Domain(format!("no case of {} claims {e}", self.tag)))?;
        if let Some((_, other)) = claim.next() {
            return Err(Error::Domain(format!(
                "{e} is claimed by both {} and {}",
                case.name, other.name
            )));
        }
        let image = case
            .apply(e, &f)
            .ok_or_else(|| Error::Domain(format!("case {} is undefined at {e}", case.name)))?;
        let side = self
            .families
            .get(image.family as usize)
            .map(|fam| fam.side(&image.t))
            .ok_or_else(|| Error::Domain(format!("case {} left the domain", case.name)))?;
        Ok((side, image))
    }
}

pub fn certificate(tag: Tag) -> Certificate {
    match tag {
        Tag::Reflections => reflections(),
        Tag::SumMod6 => sum_mod6(),
        Tag::SplitSumMod6 => split_sum_mod6(),
        Tag::QuadrupleShift => quadruple_shift(),
        Tag::HadamardSplit => hadamard_split(),
        Tag::HadamardShift => hadamard_shift(),
    }
}

/// The shift-and-swap maps of the mod-6 certificates, on a vector of either type.
pub fn case_maps_mod(tag: Tag, e: &Element) -> Result<(Side, Element)> {
    if !tag.is_mod_six() {
        return Err(Error::Domain(format!("{tag} has no mod-6 case maps")));
    }
    certificate(tag).apply(e)
}

/// The quadruple and Hadamard-type maps of the mod-4 certificates.
pub fn hadamard_maps(tag: Tag, e: &Element) -> Result<(Side, Element)> {
    if !tag.is_hadamard() {
        return Err(Error::Domain(format!("{tag} has no Hadamard-type maps")));
    }
    certificate(tag).apply(e)
}

fn case(
    name: &'static str,
    family: u8,
    copy: Option<u8>,
    param: i32,
    claims: Claims,
    apply: Apply,
    inverse: &'static str,
) -> Case {
    Case {
        name,
        family,
        copy,
        param,
        claims,
        apply,
        inverse,
    }
}

fn exact(n: i32, k: i32) -> Option<i32> {
    (n % k == 0).then_some(n / k)
}

fn halves(t: &Doubled) -> i32 {
    t.iter().sum::<i32>() / 2
}

fn ints(t: &Doubled) -> [i32; RANK] {
    t.map(|x| x / 2)
}

fn doubled(d: [i32; RANK]) -> Doubled {
    d.map(|x| 2 * x)
}

fn element(family: u8, copy: u8, t: Doubled) -> Option<Element> {
    Some(Element { family, copy, t })
}

/// Odd-sum counts by weight, read with zero outside the table.
struct OddCounts(Vec<u128>);

impl OddCounts {
    fn new(modulus: u32, a: &Coefficients, n_max: usize) -> Self {
        OddCounts(quad_weights(modulus, a, n_max).odd_sum_counts)
    }

    fn at(&self, n: i64) -> u128 {
        if n < 0 {
            0
        } else {
            self.0.get(n as usize).copied().unwrap_or(0)
        }
    }
}

// --- reflections -------------------------------------------------------------------------

const REFLECT_NAMES: [&str; RANK] = [
    "reflect_1", "reflect_2", "reflect_3", "reflect_4", "reflect_5", "reflect_6", "reflect_7",
    "reflect_8", "reflect_9", "reflect_10", "reflect_11", "reflect_12",
];

fn reflections() -> Certificate {
    let families = vec![
        Family::lattice("d", 2, [1; RANK], 0, 0, 1, true, Side::Left),
        Family::pentagonal("f", 2, 1, 24, Side::Left),
    ];
    fn features(e: &Element) -> Features {
        let mut f = [0; RANK + 1];
        if e.family == 0 {
            let dots = ReflectionBasis::get().dots(&e.t);
            f[..RANK].copy_from_slice(&dots);
            f[RANK] = dots.iter().position(|v| v % 3 == 0).map_or(-1, |i| i as i32);
        }
        f
    }
    fn claims_reflect(_: &Element, f: &Features, i: i32) -> bool {
        f[RANK] == i
    }
    fn apply_reflect(e: &Element, _: &Features, i: i32) -> Option<Element> {
        element(0, 0, reflect_doubled(&e.t, i as usize))
    }
    fn claims_residual(_: &Element, f: &Features, _: i32) -> bool {
        f[RANK] < 0
    }
    fn apply_residual(e: &Element, f: &Features, _: i32) -> Option<Element> {
        let dots: [i32; RANK] = f[..RANK].try_into().unwrap();
        let (index, f) = residual_doubled(&e.t, &dots);
        element(1, (index - 1) as u8, doubled(f))
    }
    fn always(_: &Element, _: &Features, _: i32) -> bool {
        true
    }
    fn apply_unresidual(e: &Element, _: &Features, _: i32) -> Option<Element> {
        element(0, 0, unresidual_doubled(e.copy as usize + 1, &ints(&e.t)))
    }
    let mut cases: Vec<Case> = (0..RANK)
        .map(|i| {
            case(
                REFLECT_NAMES[i],
                0,
                None,
                i as i32,
                claims_reflect,
                apply_reflect,
                REFLECT_NAMES[i],
            )
        })
        .collect();
    cases.push(case("residual", 0, None, 0, claims_residual, apply_residual, "unresidual"));
    cases.push(case("unresidual", 1, None, 0, always, apply_unresidual, "residual"));
    fn oracle(value_max: usize) -> Vec<(u128, u128)> {
        let spec = spec("thm_111");
        uv_table(&spec, value_max)
    }
    Certificate {
        tag: Tag::Reflections,
        families,
        cases,
        features,
        oracle,
    }
}

fn spec(name: &str) -> crate::identity::IdentitySpec {
    builtin_registry()
        .into_iter()
        .find(|s| s.name() == name)
        .expect("registry entry present")
}

// --- Σd mod 6 ------------------------------------------------------------------------------

fn residue(f: &Features, r: i32) -> bool {
    f[0].rem_euclid(6) == r
}

fn sum_mod6() -> Certificate {
    // d: 2·(C(d,2)·6) + 2d, two copies; d': 6·C(d,2) + 3d, one copy. Integers of d and
    // half-integers of d' on the left.
    let families = vec![
        Family::lattice("d", 6, [2; RANK], 0, 2, 2, true, Side::Left),
        Family::lattice("d'", 6, [3; RANK], 0, 3, 1, true, Side::Right),
    ];
    fn features(e: &Element) -> Features {
        let mut f = [0; RANK + 1];
        f[0] = halves(&e.t);
        f
    }
    fn claims(_: &Element, f: &Features, r: i32) -> bool {
        residue(f, r)
    }
    fn shift_all(e: &Element, by: i32, family: u8, copy: u8, negate: bool) -> Option<Element> {
        let t = e.t.map(|x| if negate { by - x } else { x - by });
        element(family, copy, t)
    }
    fn shift5(e: &Element, f: &Features, _: i32) -> Option<Element> {
        shift_all(e, exact(f[0] - 2, 3)?, 0, e.copy, false)
    }
    fn negate3(e: &Element, f: &Features, _: i32) -> Option<Element> {
        shift_all(e, exact(f[0], 3)?, 0, e.copy, true)
    }
    fn to_prime_plus(e: &Element, f: &Features, _: i32) -> Option<Element> {
        shift_all(e, exact(f[0] - 1, 3)?, 1, 0, false)
    }
    fn to_prime_minus(e: &Element, f: &Features, _: i32) -> Option<Element> {
        shift_all(e, exact(f[0] - 1, 3)?, 1, 0, true)
    }
    fn from_prime_plus(e: &Element, f: &Features, _: i32) -> Option<Element> {
        shift_all(e, exact(f[0] - 1, 3)?, 0, 0, false)
    }
    fn from_prime_minus(e: &Element, f: &Features, _: i32) -> Option<Element> {
        shift_all(e, exact(f[0] + 1, 3)?, 0, 1, true)
    }
    fn prime_shift3(e: &Element, f: &Features, _: i32) -> Option<Element> {
        shift_all(e, exact(f[0], 3)?, 1, 0, false)
    }
    let cases = vec![
        case("shift_5", 0, None, 5, claims, shift5, "shift_5"),
        case("negate_3", 0, None, 3, claims, negate3, "negate_3"),
        case("to_prime_plus", 0, Some(0), 1, claims, to_prime_plus, "from_prime_plus"),
        case("to_prime_minus", 0, Some(1), 1, claims, to_prime_minus, "from_prime_minus"),
        case("from_prime_plus", 1, None, 1, claims, from_prime_plus, "to_prime_plus"),
        case("from_prime_minus", 1, None, 5, claims, from_prime_minus, "to_prime_minus"),
        case("prime_shift_3", 1, None, 3, claims, prime_shift3, "prime_shift_3"),
    ];
    fn oracle(value_max: usize) -> Vec<(u128, u128)> {
        let n = value_max + 16;
        let q = OddCounts::new(6, &[2; RANK], n);
        let r = OddCounts::new(6, &[1; RANK], n);
        let q2 = OddCounts::new(6, &[3; RANK], n);
        let r2 = OddCounts::new(6, &[0; RANK], n);
        (0..=value_max as i64)
            .map(|v| {
                (
                    2 * q.at(v + 2) + r2.at(v + 3 - 9),
                    2 * r.at(v + 2 - 3) + q2.at(v + 3),
                )
            })
            .collect()
    }
    Certificate {
        tag: Tag::SumMod6,
        families,
        cases,
        features,
        oracle,
    }
}

// --- split sum mod 6 -----------------------------------------------------------------------

const FIRST_SIX_THIRD: Coefficients = [1, 1, 1, 1, 1, 1, 3, 3, 3, 3, 3, 3];
const FIRST_SIX_ZERO: Coefficients = [0, 0, 0, 0, 0, 0, 2, 2, 2, 2, 2, 2];

fn split_sum_mod6() -> Certificate {
    let families = vec![
        Family::lattice("d", 6, FIRST_SIX_THIRD, 0, 1, 2, true, Side::Left),
        Family::lattice("d'", 6, [2; RANK], 0, 2, 1, true, Side::Right),
    ];
    fn features(e: &Element) -> Features {
        let mut f = [0; RANK + 1];
        let first: i32 = e.t[..6].iter().sum();
        let second: i32 = e.t[6..].iter().sum();
        f[0] = (first - second) / 2;
        f
    }
    fn claims(_: &Element, f: &Features, r: i32) -> bool {
        residue(f, r)
    }
    /// First half minus `s`, second half plus `s` (doubled `s`).
    fn shift(e: &Element, s: i32, family: u8, copy: u8) -> Option<Element> {
        let t = std::array::from_fn(|i| if i < 6 { e.t[i] - s } else { e.t[i] + s });
        element(family, copy, t)
    }
    /// Halves exchanged, the new first half raised by `s` and the second lowered.
    fn swap(e: &Element, s: i32, family: u8, copy: u8) -> Option<Element> {
        let t = std::array::from_fn(|i| if i < 6 { e.t[i + 6] + s } else { e.t[i - 6] - s });
        element(family, copy, t)
    }
    fn shift5(e: &Element, f: &Features, _: i32) -> Option<Element> {
        shift(e, exact(f[0] - 2, 3)?, 0, e.copy)
    }
    fn swap3(e: &Element, f: &Features, _: i32) -> Option<Element> {
        swap(e, exact(f[0], 3)?, 0, e.copy)
    }
    fn to_prime_shift(e: &Element, f: &Features, _: i32) -> Option<Element> {
        shift(e, exact(f[0] - 1, 3)?, 1, 0)
    }
    fn to_prime_swap(e: &Element, f: &Features, _: i32) -> Option<Element> {
        swap(e, exact(f[0] - 1, 3)?, 1, 0)
    }
    fn from_prime_shift(e: &Element, f: &Features, _: i32) -> Option<Element> {
        shift(e, exact(f[0] - 1, 3)?, 0, 0)
    }
    fn from_prime_swap(e: &Element, f: &Features, _: i32) -> Option<Element> {
        swap(e, exact(f[0] + 1, 3)?, 0, 1)
    }
    fn prime_shift3(e: &Element, f: &Features, _: i32) -> Option<Element> {
        shift(e, exact(f[0], 3)?, 1, 0)
    }
    let cases = vec![
        case("shift_5", 0, None, 5, claims, shift5, "shift_5"),
        case("swap_3", 0, None, 3, claims, swap3, "swap_3"),
        case("to_prime_shift", 0, Some(0), 1, claims, to_prime_shift, "from_prime_shift"),
        case("to_prime_swap", 0, Some(1), 1, claims, to_prime_swap, "from_prime_swap"),
        case("from_prime_shift", 1, None, 1, claims, from_prime_shift, "to_prime_shift"),
        case("from_prime_swap", 1, None, 5, claims, from_prime_swap, "to_prime_swap"),
        case("prime_shift_3", 1, None, 3, claims, prime_shift3, "prime_shift_3"),
    ];
    fn oracle(value_max: usize) -> Vec<(u128, u128)> {
        let n = value_max + 16;
        let q = OddCounts::new(6, &FIRST_SIX_THIRD, n);
        let r = OddCounts::new(6, &FIRST_SIX_ZERO, n);
        let q2 = OddCounts::new(6, &[2; RANK], n);
        let r2 = OddCounts::new(6, &[1; RANK], n);
        (0..=value_max as i64)
            .map(|v| {
                (
                    2 * q.at(v + 1) + r2.at(v + 2 - 3),
                    2 * r.at(v + 1 - 3) + q2.at(v + 2),
                )
            })
            .collect()
    }
    Certificate {
        tag: Tag::SplitSumMod6,
        families,
        cases,
        features,
        oracle,
    }
}

// --- quadruple shifts ----------------------------------------------------------------------

const QS_D: Coefficients = [2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1];
const QS_E: Coefficients = [0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1];
const QS_DP: Coefficients = [2, 2, 2, 2, 0, 0, 0, 0, 2, 2, 2, 2];
const QS_EP: Coefficients = [0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 2, 2];

fn quadruple_shift() -> Certificate {
    let families = vec![
        Family::lattice("d", 4, QS_D, 0, 1, 1, false, Side::Left),
        Family::lattice("e", 4, QS_E, 2, 1, 1, false, Side::Right),
        Family::lattice("d'", 4, QS_DP, 0, 0, 1, false, Side::Right),
        Family::lattice("e'", 4, QS_EP, 2, 0, 1, false, Side::Left),
    ];
    fn features(e: &Element) -> Features {
        let d = ints(&e.t);
        let mut f = [0; RANK + 1];
        f[0] = d[..4].iter().sum();
        f[1] = d[4..8].iter().sum::<i32>() - d[8..].iter().sum::<i32>();
        f
    }
    fn x_odd(_: &Element, f: &Features, _: i32) -> bool {
        f[0].rem_euclid(2) == 1
    }
    fn y_residue(_: &Element, f: &Features, r: i32) -> bool {
        f[0].rem_euclid(2) == 0 && f[1].rem_euclid(4) == r
    }
    fn x_shift(e: &Element, f: &Features, _: i32) -> Option<Element> {
        let s = f[0] - 1;
        let t = std::array::from_fn(|i| if i < 4 { e.t[i] - s } else { e.t[i] });
        element(e.family ^ 1, 0, t)
    }
    fn y1(e: &Element, f: &Features, _: i32) -> Option<Element> {
        let s = exact(f[1] - 1, 2)?;
        let t = std::array::from_fn(|i| match i {
            0..=3 => e.t[i],
            4..=7 => e.t[i] - s,
            _ => e.t[i] + s,
        });
        element(e.family ^ 2, 0, t)
    }
    fn y3(e: &Element, f: &Features, _: i32) -> Option<Element> {
        let s = exact(f[1] + 1, 2)?;
        let t = std::array::from_fn(|i| match i {
            0..=3 => e.t[i],
            4..=7 => 2 - e.t[i + 4] - s,
            _ => s - e.t[i - 4],
        });
        element(e.family ^ 2, 0, t)
    }
    let cases = vec![
        case("d_x_shift", 0, None, 0, x_odd, x_shift, "e_x_shift"),
        case("e_x_shift", 1, None, 0, x_odd, x_shift, "d_x_shift"),
        case("dp_x_shift", 2, None, 0, x_odd, x_shift, "ep_x_shift"),
        case("ep_x_shift", 3, None, 0, x_odd, x_shift, "dp_x_shift"),
        case("d_y1", 0, None, 1, y_residue, y1, "dp_y1"),
        case("dp_y1", 2, None, 1, y_residue, y1, "d_y1"),
        case("e_y1", 1, None, 1, y_residue, y1, "ep_y1"),
        case("ep_y1", 3, None, 1, y_residue, y1, "e_y1"),
        case("d_y3", 0, None, 3, y_residue, y3, "dp_y3"),
        case("dp_y3", 2, None, 3, y_residue, y3, "d_y3"),
        case("e_y3", 1, None, 3, y_residue, y3, "ep_y3"),
        case("ep_y3", 3, None, 3, y_residue, y3, "e_y3"),
    ];
    fn oracle(value_max: usize) -> Vec<(u128, u128)> {
        let n = value_max + 8;
        let q = OddCounts::new(4, &QS_D, n);
        let r = OddCounts::new(4, &QS_E, n);
        let q2 = OddCounts::new(4, &QS_DP, n);
        let r2 = OddCounts::new(4, &QS_EP, n);
        (0..=value_max as i64)
            .map(|v| (q.at(v + 1) + r2.at(v - 2), r.at(v + 1 - 2) + q2.at(v)))
            .collect()
    }
    Certificate {
        tag: Tag::QuadrupleShift,
        families,
        cases,
        features,
        oracle,
    }
}

// --- Hadamard transforms -------------------------------------------------------------------

/// Solves `u = (h1·q, h2·q, h3·q, h4·q)` for `q`, with `h1 = (1,1,−1,−1)`,
/// `h2 = (1,−1,1,−1)`, `h3 = (1,−1,−1,1)`, `h4 = (1,1,1,1)`.
fn hadamard_solve(u: [i32; 4]) -> Option<[i32; 4]> {
    let [u1, u2, u3, u4] = u;
    Some([
        exact(u1 + u2 + u3 + u4, 4)?,
        exact(u1 - u2 - u3 + u4, 4)?,
        exact(-u1 + u2 - u3 + u4, 4)?,
        exact(-u1 - u2 + u3 + u4, 4)?,
    ])
}

/// `(h1·q, h2·q, h3·q, h4·q)`.
fn hadamard(q: [i32; 4]) -> [i32; 4] {
    let [a, b, c, d] = q;
    [a + b - c - d, a - b + c - d, a - b - c + d, a + b + c + d]
}

fn sign(copy: u8) -> i32 {
    if copy == 0 {
        1
    } else {
        -1
    }
}

fn fix_parity(mut d: [i32; RANK]) -> [i32; RANK] {
    if d.iter().sum::<i32>().rem_euclid(2) == 0 {
        d[0] = 1 - d[0];
    }
    d
}

fn lattice_image(family: u8, copy: u8, d: [i32; RANK]) -> Option<Element> {
    element(family, copy, doubled(fix_parity(d)))
}

const HS_D: Coefficients = [0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2, 2];
const HS_E: Coefficients = [0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2];
const HS_DP: Coefficients = [0, 0, 0, 0, 2, 2, 2, 2, 2, 2, 2, 2];
const HS_EP: Coefficients = [0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 2, 2];

fn hadamard_split() -> Certificate {
    let families = vec![
        Family::lattice("d", 4, HS_D, 0, 0, 2, false, Side::Left),
        Family::lattice("e", 4, HS_E, 1, 0, 2, false, Side::Right),
        Family::lattice("d'", 4, HS_DP, 0, 0, 1, false, Side::Right),
        Family::lattice("e'", 4, HS_EP, 2, 0, 1, false, Side::Left),
    ];
    // f[0]: d_4 + … + d_7; f[1]: e_6 + … + e_9 (1-based coordinates).
    fn features(e: &Element) -> Features {
        let d = ints(&e.t);
        let mut f = [0; RANK + 1];
        f[0] = d[3..7].iter().sum();
        f[1] = d[5..9].iter().sum();
        f
    }
    fn quad_parity(_: &Element, f: &Features, p: i32) -> bool {
        f[(p / 2) as usize].rem_euclid(2) == p % 2
    }
    fn is_odd(v: i32) -> bool {
        v.rem_euclid(2) == 1
    }
    // Two copies of d with odd d_4..d_7 sum, through the auxiliary lattice, onto both copies
    // of e with even e_6..e_9 sum.
    fn d_to_e(e: &Element, _: &Features, _: i32) -> Option<Element> {
        let d = ints(&e.t);
        let u = hadamard([d[3], d[4], d[5], d[6]]);
        let x1 = exact(sign(e.copy) * u[0] + 1, 2)?;
        let x2 = exact(u[1] + 1, 2)?;
        let x3 = exact(u[2] + 1, 2)?;
        let x4 = exact(u[3] - 1, 2)?;
        let (x5, x6) = (d[7], d[8]);
        let (copy, s) = if is_odd(x3 + x4 + x5 + x6) {
            (1, 2 - 2 * x3)
        } else {
            (0, 2 * x3)
        };
        let q = hadamard_solve([2 * x4, 2 * x5, 2 * x6, s])?;
        let mut out = d;
        out[3] = x1;
        out[4] = x2;
        out[5..9].copy_from_slice(&q);
        lattice_image(1, copy, out)
    }
    fn e_to_d(e: &Element, _: &Features, _: i32) -> Option<Element> {
        let d = ints(&e.t);
        let v = hadamard([d[5], d[6], d[7], d[8]]);
        let x1 = d[3];
        let x2 = d[4];
        let x3 = exact(1 + sign(e.copy) * (v[3] - 1), 2)?;
        let x4 = exact(v[0], 2)?;
        let x5 = exact(v[1], 2)?;
        let x6 = exact(v[2], 2)?;
        let copy = if is_odd(x1 + x2 + x3 + x4) { 0 } else { 1 };
        let q = hadamard_solve([sign(copy) * (2 * x1 - 1), 2 * x2 - 1, 2 * x3 - 1, 2 * x4 + 1])?;
        let mut out = d;
        out[3..7].copy_from_slice(&q);
        out[7] = x5;
        out[8] = x6;
        lattice_image(0, copy, out)
    }
    fn d_to_dp(e: &Element, _: &Features, _: i32) -> Option<Element> {
        let d = ints(&e.t);
        let u = hadamard([d[3], d[4], d[5], d[6]]);
        let mut out = d;
        out[3] = exact(1 + sign(e.copy) * (u[3] - 1), 2)?;
        out[4] = exact(u[0], 2)?;
        out[5] = exact(u[1], 2)?;
        out[6] = exact(u[2], 2)?;
        lattice_image(2, 0, out)
    }
    fn dp_to_d(e: &Element, _: &Features, _: i32) -> Option<Element> {
        let d = ints(&e.t);
        let copy = if is_odd(d[3] + d[4] + d[5] + d[6]) { 1 } else { 0 };
        let total = 1 + sign(copy) * (2 * d[3] - 1);
        let q = hadamard_solve([2 * d[4], 2 * d[5], 2 * d[6], total])?;
        let mut out = d;
        out[3..7].copy_from_slice(&q);
        lattice_image(0, copy, out)
    }
    fn e_to_ep(e: &Element, _: &Features, _: i32) -> Option<Element> {
        let d = ints(&e.t);
        let v = hadamard([d[5], d[6], d[7], d[8]]);
        let mut out = d;
        out[5] = exact(1 + sign(e.copy) * v[0], 2)?;
        out[6] = exact(v[1] + 1, 2)?;
        out[7] = exact(v[2] + 1, 2)?;
        out[8] = exact(v[3] - 1, 2)?;
        lattice_image(3, 0, out)
    }
    fn ep_to_e(e: &Element, _: &Features, _: i32) -> Option<Element> {
        let d = ints(&e.t);
        let copy = if is_odd(d[5] + d[6] + d[7] + d[8]) { 0 } else { 1 };
        let q = hadamard_solve([
            sign(copy) * (2 * d[5] - 1),
            2 * d[6] - 1,
            2 * d[7] - 1,
            2 * d[8] + 1,
        ])?;
        let mut out = d;
        out[5..9].copy_from_slice(&q);
        lattice_image(1, copy, out)
    }
    fn always(_: &Element, _: &Features, _: i32) -> bool {
        true
    }
    // The parameter encodes (feature index)·2 + required parity.
    let cases = vec![
        case("d_to_e", 0, None, 1, quad_parity, d_to_e, "e_to_d"),
        case("d_to_dp", 0, None, 0, quad_parity, d_to_dp, "dp_to_d"),
        case("e_to_d", 1, None, 2, quad_parity, e_to_d, "d_to_e"),
        case("e_to_ep", 1, None, 3, quad_parity, e_to_ep, "ep_to_e"),
        case("dp_to_d", 2, None, 0, always, dp_to_d, "d_to_dp"),
        case("ep_to_e", 3, None, 0, always, ep_to_e, "e_to_ep"),
    ];
    fn oracle(value_max: usize) -> Vec<(u128, u128)> {
        let n = value_max + 4;
        let q = OddCounts::new(4, &HS_D, n);
        let r = OddCounts::new(4, &HS_E, n);
        let q2 = OddCounts::new(4, &HS_DP, n);
        let r2 = OddCounts::new(4, &HS_EP, n);
        (0..=value_max as i64)
            .map(|v| (2 * q.at(v) + r2.at(v - 2), 2 * r.at(v - 1) + q2.at(v)))
            .collect()
    }
    Certificate {
        tag: Tag::HadamardSplit,
        families,
        cases,
        features,
        oracle,
    }
}

const HT_D: Coefficients = [0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2];
const HT_E: Coefficients = HS_E;
const HT_DP: Coefficients = HS_D;

/// Coordinates (0-based) of the transformed quadruple: 1-based 3, 4, 5 and 10.
const HT_QUAD: [usize; 4] = [2, 3, 4, 9];

fn hadamard_shift() -> Certificate {
    let families = vec![
        Family::lattice("d", 4, HT_D, 0, 0, 2, false, Side::Left),
        Family::lattice("e", 4, HT_E, 1, 0, 2, false, Side::Right),
        Family::lattice("d'", 4, HT_DP, 0, 0, 1, false, Side::Right),
        Family::lattice("e'", 4, HT_E, 1, 0, 1, false, Side::Left),
    ];
    // f[0]: sum of the quadruple at 1-based 3, 4, 5, 10; f[1]: the same four coordinates
    // read as 3, 8, 9, 10 (the d' layout).
    fn features(e: &Element) -> Features {
        let d = ints(&e.t);
        let mut f = [0; RANK + 1];
        f[0] = HT_QUAD.iter().map(|&i| d[i]).sum();
        f[1] = d[2] + d[7] + d[8] + d[9];
        f
    }
    fn quad(d: &[i32; RANK]) -> [i32; 4] {
        HT_QUAD.map(|i| d[i])
    }
    fn quad_parity(_: &Element, f: &Features, p: i32) -> bool {
        f[0].rem_euclid(2) == p
    }
    fn always(_: &Element, _: &Features, _: i32) -> bool {
        true
    }
    fn d_to_e(e: &Element, _: &Features, _: i32) -> Option<Element> {
        let d = ints(&e.t);
        let u = hadamard(quad(&d));
        let mut out = d;
        out[2] = exact(1 + sign(e.copy) * u[0], 2)?;
        out[3] = exact(u[1] + 1, 2)?;
        out[4] = exact(u[2] + 1, 2)?;
        out[9] = exact(u[3] - 1, 2)?;
        lattice_image(1, 1, out)
    }
    fn e_to_d(e: &Element, f: &Features, _: i32) -> Option<Element> {
        let d = ints(&e.t);
        let copy = if f[0].rem_euclid(2) == 1 { 0 } else { 1 };
        let q = hadamard_solve([
            sign(copy) * (2 * d[2] - 1),
            2 * d[3] - 1,
            2 * d[4] - 1,
            2 * d[9] + 1,
        ])?;
        let mut out = d;
        for (k, &i) in HT_QUAD.iter().enumerate() {
            out[i] = q[k];
        }
        lattice_image(0, copy, out)
    }
    fn d_to_dp(e: &Element, _: &Features, _: i32) -> Option<Element> {
        let d = ints(&e.t);
        let u = hadamard(quad(&d));
        let mut out = d;
        out[2] = exact(1 + sign(e.copy) * (u[3] - 1), 2)?;
        out[3..7].copy_from_slice(&d[5..9]);
        out[7] = exact(u[0], 2)?;
        out[8] = exact(u[1], 2)?;
        out[9] = exact(u[2], 2)?;
        lattice_image(2, 0, out)
    }
    fn dp_to_d(e: &Element, f: &Features, _: i32) -> Option<Element> {
        let d = ints(&e.t);
        let copy = if f[1].rem_euclid(2) == 0 { 0 } else { 1 };
        let total = 1 + sign(copy) * (2 * d[2] - 1);
        let q = hadamard_solve([2 * d[7], 2 * d[8], 2 * d[9], total])?;
        let mut out = d;
        out[5..9].copy_from_slice(&d[3..7]);
        for (k, &i) in HT_QUAD.iter().enumerate() {
            out[i] = q[k];
        }
        lattice_image(0, copy, out)
    }
    fn e_to_ep(e: &Element, _: &Features, _: i32) -> Option<Element> {
        element(3, 0, e.t)
    }
    fn ep_to_e(e: &Element, _: &Features, _: i32) -> Option<Element> {
        element(1, 0, e.t)
    }
    let cases = vec![
        case("d_to_e", 0, None, 1, quad_parity, d_to_e, "e_to_d"),
        case("d_to_dp", 0, None, 0, quad_parity, d_to_dp, "dp_to_d"),
        case("e_to_d", 1, Some(1), 0, always, e_to_d, "d_to_e"),
        case("e_to_ep", 1, Some(0), 0, always, e_to_ep, "ep_to_e"),
        case("dp_to_d", 2, None, 0, always, dp_to_d, "d_to_dp"),
        case("ep_to_e", 3, None, 0, always, ep_to_e, "e_to_ep"),
    ];
    fn oracle(value_max: usize) -> Vec<(u128, u128)> {
        let n = value_max + 4;
        let q = OddCounts::new(4, &HT_D, n);
        let r = OddCounts::new(4, &HT_E, n);
        let q2 = OddCounts::new(4, &HT_DP, n);
        (0..=value_max as i64)
            .map(|v| (2 * q.at(v) + r.at(v - 1), 2 * r.at(v - 1) + q2.at(v)))
            .collect()
    }
    Certificate {
        tag: Tag::HadamardShift,
        families,
        cases,
        features,
        oracle,
    }
}

//! Colored part-sets, the power-of-two multiplier and the identity registry.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::Deserialize;

use crate::error::{Error, Result};

/// Number of coefficients on each side of an identity.
pub const RANK: usize = 12;

pub type Coefficients = [u32; RANK];

/// Multiset of positive integers `n ≡ ±a_i (mod C)`, one copy per sign per coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredSet {
    modulus: u32,
    multiplicity: Vec<u32>,
    parity_required: bool,
}

impl ColoredSet {
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Copies of every positive integer in residue class `r`.
    pub fn multiplicity(&self, r: u32) -> u32 {
        self.multiplicity[(r % self.modulus) as usize]
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicity
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.multiplicity.iter().sum()
    }

    /// Whether partitions must have an odd number of parts.
    pub fn parity_required(&self) -> bool {
        self.parity_required
    }

    /// Copies of the part size `n` (zero is never a part).
    pub fn copies_of(&self, n: u64) -> u32 {
        if n == 0 {
            0
        } else {
            self.multiplicity[(n % self.modulus as u64) as usize]
        }
    }

    pub fn min_element(&self) -> Option<u64> {
        (1..=self.modulus as u64).find(|&n| self.copies_of(n) > 0)
    }
}

/// Builds the colored set for `coeffs`.
///
/// Coefficients may lie anywhere in `[0, C]`; `a` and `C − a` name the same pair
/// of classes, so both produce the same set.
pub fn build_colored_set(modulus: u32, coeffs: &Coefficients) -> Result<ColoredSet> {
    if modulus == 0 {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    let mut multiplicity = vec![0u32; modulus as usize];
    let mut parity_required = true;
    for &a in coeffs {
        if a > modulus {
            return Err(Error::Domain(format!(
                "coefficient {a} outside [0, {modulus}]"
            )));
        }
        let r = a % modulus;
        if r == 0 {
            parity_required = false;
        }
        multiplicity[r as usize] += 1;
        multiplicity[((modulus - r) % modulus) as usize] += 1;
    }
    Ok(ColoredSet {
        modulus,
        multiplicity,
        parity_required,
    })
}

fn zero_count(coeffs: &Coefficients) -> i32 {
    match coeffs.iter().filter(|&&a| a == 0).count() {
        0 => 1,
        n => n as i32,
    }
}

/// Exponent of the multiplier: zeros in `b` minus zeros in `a`, an empty count standing for 1.
pub fn derive_p(a: &Coefficients, b: &Coefficients) -> i32 {
    zero_count(b) - zero_count(a)
}

/// An exact power of two `2^exponent`, possibly fractional.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PowerOfTwo(pub i32);

impl PowerOfTwo {
    pub fn numerator(self) -> BigUint {
        BigUint::one() << self.0.max(0) as usize
    }

    pub fn denominator(self) -> BigUint {
        BigUint::one() << (-self.0).max(0) as usize
    }
}

impl fmt::Display for PowerOfTwo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 >= 0 {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "1/{}", self.denominator())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Proven,
    Conjectured,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Proven => "proven",
            Status::Conjectured => "conjectured",
        }
    }
}

impl std::str::FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proven" => Ok(Status::Proven),
            "conjectured" => Ok(Status::Conjectured),
            other => Err(Error::Domain(format!("unknown status {other:?}"))),
        }
    }
}

/// One identity `D_S(N) = 2^p · D_T(N − m)` claimed for `N ≥ N0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdentitySpec {
    name: String,
    status: Status,
    source: String,
    modulus: u32,
    a: Coefficients,
    b: Coefficients,
    m: u32,
    n0: u32,
    p: i32,
}

impl IdentitySpec {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        status: Status,
        source: impl Into<String>,
        modulus: u32,
        a: Coefficients,
        b: Coefficients,
        m: u32,
        n0: u32,
    ) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Domain("modulus must be positive".into()));
        }
        if n0 == 0 {
            return Err(Error::Domain("N0 must be at least 1".into()));
        }
        for (side, coeffs) in [("A", &a), ("B", &b)] {
            if let Some(bad) = coeffs.iter().find(|&&x| 2 * x > modulus) {
                return Err(Error::Domain(format!(
                    "{side} coefficient {bad} outside [0, {modulus}/2]"
                )));
            }
        }
        Ok(IdentitySpec {
            name: name.into(),
            status,
            source: source.into(),
            modulus,
            a,
            b,
            m,
            n0,
            p: derive_p(&a, &b),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn status(&self) -> Status {
        self.status
    }
    pub fn source(&self) -> &str {
        &self.source
    }
    pub fn modulus(&self) -> u32 {
        self.modulus
    }
    pub fn a(&self) -> &Coefficients {
        &self.a
    }
    pub fn b(&self) -> &Coefficients {
        &self.b
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn n0(&self) -> u32 {
        self.n0
    }
    pub fn p(&self) -> i32 {
        self.p
    }
    pub fn factor(&self) -> PowerOfTwo {
        PowerOfTwo(self.p)
    }

    pub fn left_set(&self) -> ColoredSet {
        build_colored_set(self.modulus, &self.a).expect("validated coefficients")
    }

    pub fn right_set(&self) -> ColoredSet {
        build_colored_set(self.modulus, &self.b).expect("validated coefficients")
    }

    /// Same identity with a different shift.
    pub fn with_shift(&self, m: u32) -> Self {
        IdentitySpec { m, ..self.clone() }
    }

    /// Same identity with new coefficient vectors, re-validated and with `p` re-derived.
    pub fn with_coefficients(&self, a: Coefficients, b: Coefficients) -> Result<Self> {
        IdentitySpec::new(
            self.name.clone(),
            self.status,
            self.source.clone(),
            self.modulus,
            a,
            b,
            self.m,
            self.n0,
        )
    }

    /// The identity obtained by substituting `N → k·N`: modulus, coefficients and shift all scale.
    pub fn scaled(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("scale factor must be positive".into()));
        }
        IdentitySpec::new(
            format!("{}x{k}", self.name),
            self.status,
            self.source.clone(),
            self.modulus * k,
            self.a.map(|x| x * k),
            self.b.map(|x| x * k),
            self.m * k,
            self.n0 * k,
        )
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    name: String,
    status: Status,
    source: String,
    #[serde(rename = "C")]
    modulus: u32,
    #[serde(rename = "A")]
    a: Vec<u32>,
    #[serde(rename = "B")]
    b: Vec<u32>,
    m: u32,
    #[serde(rename = "N0")]
    n0: u32,
}

fn coefficients(name: &str, field: &str, v: Vec<u32>) -> Result<Coefficients> {
    let len = v.len();
    v.try_into().map_err(|_| Error::Parse {
        record: name.to_string(),
        message: format!("field {field} has {len} entries, expected {RANK}"),
    })
}

/// Parses a registry document (a JSON array of records). Blank input yields no records.
pub fn load_registry(source: &str) -> Result<Vec<IdentitySpec>> {
    if source.trim().is_empty() {
        return Ok(Vec::new());
    }
    let raw: Vec<serde_json::Value> = serde_json::from_str(source).map_err(|e| Error::Parse {
        record: "<document>".into(),
        message: e.to_string(),
    })?;
    raw.into_iter()
        .enumerate()
        .map(|(i, value)| {
            let label = value
                .get("name")
                .and_then(|n| n.as_str())
                .map(str::to_string)
                .unwrap_or_else(|| format!("#{i}"));
            let rec: Record = serde_json::from_value(value).map_err(|e| Error::Parse {
                record: label.clone(),
                message: e.to_string(),
            })?;
            let a = coefficients(&label, "A", rec.a)?;
            let b = coefficients(&label, "B", rec.b)?;
            IdentitySpec::new(
                rec.name, rec.status, rec.source, rec.modulus, a, b, rec.m, rec.n0,
            )
            .map_err(|e| match e {
                Error::Domain(msg) => Error::Domain(format!("record {label}: {msg}")),
                other => other,
            })
        })
        .collect()
}

pub const BUILTIN_REGISTRY: &str = include_str!("../data/registry.json");

/// The shipped registry of proven and conjectured identities.
pub fn builtin_registry() -> Vec<IdentitySpec> {
    load_registry(BUILTIN_REGISTRY).expect("bundled registry is well-formed")
}

/// One compared position of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub n: u64,
    pub left: BigUint,
    pub right: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub spec_name: String,
    pub n_from: u64,
    pub n_to: u64,
    pub holds: bool,
    /// `left = D_S(N)`, `right = D_T(N − m)` at the first `N` where they disagree.
    pub first_failure: Option<Failure>,
    /// Disagreements below `N0`, recorded without affecting `holds`.
    pub sub_n0_observations: Vec<Failure>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(v: u32) -> Coefficients {
        [v; RANK]
    }

    #[test]
    fn odd_classes_mod_two() {
        let s = build_colored_set(2, &ones(1)).unwrap();
        assert_eq!(s.multiplicities(), &[0, 24]);
        assert!(s.parity_required());
    }

    #[test]
    fn zero_coefficients_count_twice() {
        let s = build_colored_set(2, &[0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(s.multiplicities(), &[8, 16]);
        assert!(!s.parity_required());
    }

    #[test]
    fn non_multiples_of_three() {
        let s = build_colored_set(6, &ones(2)).unwrap();
        assert_eq!(s.multiplicities(), &[0, 0, 12, 0, 12, 0]);
        assert!(s.parity_required());
        assert_eq!(s.min_element(), Some(2));
    }

    #[test]
    fn coefficient_beyond_modulus_rejected() {
        assert!(matches!(
            build_colored_set(6, &ones(7)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn p_convention() {
        assert_eq!(derive_p(&ones(1), &ones(0)), 11);
        let a = [0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1];
        let b = [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1];
        assert_eq!(derive_p(&a, &b), 4);
        assert_eq!(derive_p(&ones(2), &ones(1)), 0);
        let a = [0, 0, 1, 1, 2, 2, 2, 3, 3, 4, 4, 4];
        let b = [0, 1, 1, 1, 1, 2, 2, 3, 3, 3, 3, 4];
        assert_eq!(derive_p(&a, &b), -1);
    }

    #[test]
    fn factor_rational_form() {
        assert_eq!(PowerOfTwo(11).to_string(), "2048");
        assert_eq!(PowerOfTwo(-1).to_string(), "1/2");
        assert_eq!(PowerOfTwo(0).to_string(), "1");
        assert_eq!(PowerOfTwo(-1).denominator(), BigUint::from(2u32));
    }

    #[test]
    fn spec_rejects_coefficients_above_half_modulus() {
        let err = IdentitySpec::new("x", Status::Proven, "", 6, ones(4), ones(1), 0, 1);
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn empty_registry() {
        assert!(load_registry("").unwrap().is_empty());
        assert!(load_registry("[]").unwrap().is_empty());
    }

    #[test]
    fn malformed_record_is_named() {
        let doc = r#"[{"name":"broken","status":"proven","source":"","C":2,"A":[1],"B":[0,0,0,0,0,0,0,0,0,0,0,0],"m":3,"N0":3}]"#;
        match load_registry(doc) {
            Err(Error::Parse { record, .. }) => assert_eq!(record, "broken"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_field_rejected() {
        let doc = r#"[{"name":"extra","status":"proven","source":"","C":2,"A":[1,1,1,1,1,1,1,1,1,1,1,1],"B":[0,0,0,0,0,0,0,0,0,0,0,0],"m":3,"N0":3,"note":1}]"#;
        assert!(matches!(load_registry(doc), Err(Error::Parse { .. })));
    }

    #[test]
    fn out_of_range_record_is_domain_error() {
        let doc = r#"[{"name":"wide","status":"proven","source":"","C":2,"A":[2,1,1,1,1,1,1,1,1,1,1,1],"B":[0,0,0,0,0,0,0,0,0,0,0,0],"m":3,"N0":3}]"#;
        assert!(matches!(load_registry(doc), Err(Error::Domain(_))));
    }

    #[test]
    fn builtin_records() {
        let reg = builtin_registry();
        let thm = reg.iter().find(|s| s.name() == "thm_333").unwrap();
        assert_eq!(
            (thm.modulus(), thm.a(), thm.b(), thm.m(), thm.n0(), thm.p()),
            (6, &ones(2), &ones(1), 3, 4, 0)
        );
        let c27 = reg.iter().find(|s| s.name() == "c27").unwrap();
        let evens: Vec<u32> = (1..=12).map(|i| 2 * i).collect();
        assert_eq!(c27.modulus(), 50);
        assert_eq!(c27.a().as_slice(), evens.as_slice());
        assert_eq!((c27.m(), c27.n0()), (3, 4));
    }

    #[test]
    fn scaling_multiplies_everything() {
        let reg = builtin_registry();
        let thm = reg.iter().find(|s| s.name() == "thm_111").unwrap();
        let s = thm.scaled(3).unwrap();
        assert_eq!((s.modulus(), s.a()[0], s.b()[0], s.m()), (6, 3, 0, 9));
        assert_eq!(s.p(), thm.p());
    }
}

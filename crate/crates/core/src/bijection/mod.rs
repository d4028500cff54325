//! Value-preserving maps on 12-vectors over `ℤ` or `ℤ + ½`.
//!
//! Every vector is stored doubled (`t_i = 2·d_i`), so half-integers are odd entries and all
//! values are computed exactly in eight-fold scaled integers.

mod certificates;
mod flip;
mod matching;
mod reflection;

pub use certificates::{case_maps_mod, certificate, hadamard_maps, Certificate, Tag};
pub use flip::{half_integer_flip, quadruple_involution, QuadrupleContext};
pub use matching::{exhaustive_match, CaseTally, MatchReport, ValueRow};
pub use reflection::{
    reflect, residual, unit_vector, unresidual, z_index, ReflectionBasis, BASIS_ROWS,
};

use crate::error::{Error, Result};
use crate::identity::RANK;

pub type Doubled = [i32; RANK];

/// A vector with odd coordinate sum whose entries are all integers or all half-integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DElement {
    doubled: Doubled,
}

impl DElement {
    pub fn new(doubled: Doubled) -> Result<Self> {
        let parity = doubled[0].rem_euclid(2);
        if doubled.iter().any(|t| t.rem_euclid(2) != parity) {
            return Err(Error::Inadmissible(format!(
                "{doubled:?} mixes integers and half-integers"
            )));
        }
        if doubled.iter().sum::<i32>().rem_euclid(4) != 2 {
            return Err(Error::Inadmissible(format!(
                "{doubled:?} does not have an odd coordinate sum"
            )));
        }
        Ok(DElement { doubled })
    }

    pub fn from_integers(d: [i32; RANK]) -> Result<Self> {
        DElement::new(d.map(|x| 2 * x))
    }

    pub fn doubled(&self) -> &Doubled {
        &self.doubled
    }

    pub fn is_integer(&self) -> bool {
        self.doubled[0].rem_euclid(2) == 0
    }

    /// `Σ d_i`, always odd.
    pub fn coordinate_sum(&self) -> i32 {
        self.doubled.iter().sum::<i32>() / 2
    }

    /// `4·‖d‖²`.
    pub fn norm4(&self) -> i64 {
        self.doubled.iter().map(|&t| (t as i64) * (t as i64)).sum()
    }
}

/// The value form `C·Σ C(d_i, 2) + Σ a_i·d_i + offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ValueContext {
    pub modulus: i64,
    pub a: [i64; RANK],
    pub offset: i64,
}

impl ValueContext {
    pub fn new(modulus: u32, a: &[u32; RANK], offset: i64) -> Self {
        ValueContext {
            modulus: modulus as i64,
            a: a.map(|x| x as i64),
            offset,
        }
    }

    /// Eight times the contribution of one doubled coordinate.
    #[inline]
    pub fn weight8(&self, i: usize, t: i32) -> i64 {
        let t = t as i64;
        self.modulus * t * (t - 2) + 4 * self.a[i] * t
    }

    /// Value of a doubled vector, failing if the scaled total is not divisible by eight.
    pub fn value_of(&self, t: &Doubled) -> Result<i64> {
        let s: i64 = (0..RANK).map(|i| self.weight8(i, t[i])).sum();
        if s.rem_euclid(8) != 0 {
            return Err(Error::Inadmissible(format!(
                "{t:?} has non-integral value {s}/8 under this context"
            )));
        }
        Ok(s / 8 + self.offset)
    }
}

pub fn value(elem: &DElement, ctx: &ValueContext) -> Result<i64> {
    ctx.value_of(elem.doubled())
}

/// Which side of a matching an element counts toward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A member of one copy of one family in a certificate's domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub family: u8,
    pub copy: u8,
    pub t: Doubled,
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let coords: Vec<String> = self
            .t
            .iter()
            .map(|&t| {
                if t % 2 == 0 {
                    (t / 2).to_string()
                } else {
                    format!("{t}/2")
                }
            })
            .collect();
        write!(
            f,
            "family {} copy {} ({})",
            self.family,
            self.copy,
            coords.join(", ")
        )
    }
}

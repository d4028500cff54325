//! The integer ↔ half-integer correspondence between two value forms, and the
//! quadruple-wise involution on mixed vectors.

use super::{DElement, Doubled, ValueContext};
use crate::error::{Error, Result};
use crate::identity::RANK;

/// Sends an integer vector `e` to `d` with `d_i = ½ − e_{13−i}`.
///
/// Requires `a_i + b_{13−i} = C/2` and `m = Σ a_i / 2 − 3C/2`; under those conditions the
/// value of `d` under `(C, a)` equals the value of `e` under `(C, b)` plus `m`, which is
/// asserted.
pub fn half_integer_flip(
    e: &[i32; RANK],
    modulus: u32,
    a: &[u32; RANK],
    b: &[u32; RANK],
    m: i64,
) -> Result<DElement> {
    for i in 0..RANK {
        if 2 * (a[i] + b[RANK - 1 - i]) != modulus {
            return Err(Error::Domain(format!(
                "a_{} + b_{} = {} differs from C/2",
                i + 1,
                RANK - i,
                a[i] + b[RANK - 1 - i]
            )));
        }
    }
    let sum_a: i64 = a.iter().map(|&x| x as i64).sum();
    if 2 * m != sum_a - 3 * modulus as i64 {
        return Err(Error::Domain(format!(
            "shift {m} differs from Σa/2 − 3C/2"
        )));
    }
    let t: Doubled = std::array::from_fn(|i| 1 - 2 * e[RANK - 1 - i]);
    let lhs = ValueContext::new(modulus, a, 0).value_of(&t)?;
    let rhs = ValueContext::new(modulus, b, m).value_of(&e.map(|x| 2 * x))?;
    assert_eq!(lhs, rhs, "flip changed the value of {e:?}");
    // The sum of d is 6 − Σe, odd exactly when Σe is.
    DElement::new(t)
}

/// Value form on vectors made of three quadruples, the coefficients `a` repeating in each.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadrupleContext {
    ctx: ValueContext,
}

impl QuadrupleContext {
    /// Requires `a_1 + a_4 = a_2 + a_3`, which makes the involution value-preserving.
    pub fn new(modulus: u32, a: [u32; 4]) -> Result<Self> {
        if a[0] + a[3] != a[1] + a[2] {
            return Err(Error::Domain(format!(
                "quadruple coefficients {a:?} need a1 + a4 = a2 + a3"
            )));
        }
        let full: [u32; RANK] = std::array::from_fn(|i| a[i % 4]);
        Ok(QuadrupleContext {
            ctx: ValueContext::new(modulus, &full, 0),
        })
    }

    pub fn value_context(&self) -> &ValueContext {
        &self.ctx
    }
}

/// Checks that each quadruple is uniformly integer or half-integer and the total is odd.
pub fn quadruple_shape(t: &Doubled) -> Result<[bool; 3]> {
    let mut half = [false; 3];
    for (q, h) in half.iter_mut().enumerate() {
        let block = &t[4 * q..4 * q + 4];
        let p = block[0].rem_euclid(2);
        if block.iter().any(|x| x.rem_euclid(2) != p) {
            return Err(Error::Domain(format!("quadruple {} of {t:?} is mixed", q + 1)));
        }
        *h = p == 1;
    }
    if t.iter().sum::<i32>().rem_euclid(4) != 2 {
        return Err(Error::Domain(format!("{t:?} does not have an odd sum")));
    }
    Ok(half)
}

/// Per quadruple, `d*_i = (d_1 + d_2 + d_3 + d_4)/2 − d_{5−i}`.
pub fn quadruple_involution(w: &Doubled) -> Result<Doubled> {
    quadruple_shape(w)?;
    let mut out = [0; RANK];
    for q in 0..3 {
        let block = &w[4 * q..4 * q + 4];
        // Doubled sum of the block is 2x; doubled x/2 is x.
        let x = block.iter().sum::<i32>() / 2;
        for i in 0..4 {
            out[4 * q + i] = x - block[3 - i];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flip_needs_odd_sum() {
        assert!(half_integer_flip(&[0; RANK], 2, &[1; RANK], &[0; RANK], 3).is_err());
    }

    #[test]
    fn flip_of_unit() {
        let mut e = [0; RANK];
        e[0] = 1;
        let d = half_integer_flip(&e, 2, &[1; RANK], &[0; RANK], 3).unwrap();
        let mut expect = [1; RANK];
        expect[RANK - 1] = -1;
        assert_eq!(d.doubled(), &expect);
    }

    #[test]
    fn flip_hypothesis_checked() {
        let mut e = [0; RANK];
        e[0] = 1;
        assert!(half_integer_flip(&e, 2, &[1; RANK], &[1; RANK], 3).is_err());
        assert!(half_integer_flip(&e, 2, &[1; RANK], &[0; RANK], 2).is_err());
    }

    #[test]
    fn involution_on_unit_vector() {
        let mut w = [0; RANK];
        w[0] = 2;
        let img = quadruple_involution(&w).unwrap();
        assert_eq!(img, [1, 1, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(quadruple_involution(&img).unwrap(), w);
    }

    #[test]
    fn involution_rejects_mixed_quadruple() {
        let w = [1, 0, 0, 1, 2, 0, 0, 0, 0, 0, 0, 0];
        assert!(quadruple_involution(&w).is_err());
    }

    #[test]
    fn quadruple_context_condition() {
        assert!(QuadrupleContext::new(10, [2, 2, 4, 4]).is_ok());
        assert!(QuadrupleContext::new(10, [1, 2, 3, 5]).is_err());
    }
}

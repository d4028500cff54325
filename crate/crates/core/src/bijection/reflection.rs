//! Reflections through twelve mutually orthogonal `±1` vectors, and the decomposition of
//! the vectors no reflection applies to.

use std::sync::OnceLock;

use super::{DElement, Doubled};
use crate::error::{Error, Result};
use crate::identity::RANK;

#[rustfmt::skip]
pub const BASIS_ROWS: [[i32; RANK]; RANK] = [
    [-1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1],
    [ 1,  1,  1,  1,  1,  1, -1, -1, -1, -1, -1, -1],
    [ 1,  1,  1, -1, -1, -1,  1,  1,  1, -1, -1, -1],
    [ 1, -1, -1,  1,  1, -1,  1,  1, -1,  1, -1, -1],
    [-1,  1, -1,  1, -1,  1,  1, -1,  1,  1, -1, -1],
    [-1, -1,  1, -1,  1,  1, -1,  1,  1,  1, -1, -1],
    [-1, -1,  1,  1, -1,  1,  1,  1, -1, -1,  1, -1],
    [ 1, -1, -1, -1,  1,  1,  1, -1,  1, -1,  1, -1],
    [-1,  1, -1,  1,  1, -1, -1,  1,  1, -1,  1, -1],
    [-1,  1,  1, -1,  1, -1,  1, -1, -1,  1,  1, -1],
    [ 1,  1, -1, -1, -1,  1, -1,  1, -1,  1,  1, -1],
    [ 1, -1,  1,  1, -1, -1, -1, -1,  1,  1,  1, -1],
];

/// The twelve basis rows, checked for orthogonality on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionBasis {
    rows: [[i32; RANK]; RANK],
    columns: [[i32; RANK]; RANK],
    /// Zero dot products found among distinct rows.
    pub orthogonal_pairs: usize,
    /// Rows whose self dot product is twelve.
    pub unit_rows: usize,
}

impl ReflectionBasis {
    pub fn new(rows: [[i32; RANK]; RANK]) -> Result<Self> {
        if rows.iter().flatten().any(|&v| v != 1 && v != -1) {
            return Err(Error::Domain("basis entries must be ±1".into()));
        }
        let dot = |i: usize, j: usize| -> i32 { (0..RANK).map(|k| rows[i][k] * rows[j][k]).sum() };
        let mut orthogonal_pairs = 0;
        let mut unit_rows = 0;
        for i in 0..RANK {
            if dot(i, i) == RANK as i32 {
                unit_rows += 1;
            }
            for j in i + 1..RANK {
                if dot(i, j) == 0 {
                    orthogonal_pairs += 1;
                }
            }
        }
        if orthogonal_pairs != RANK * (RANK - 1) / 2 || unit_rows != RANK {
            return Err(Error::Domain(format!(
                "basis rows are not orthogonal: {orthogonal_pairs} zero pairs, {unit_rows} unit rows"
            )));
        }
        let columns = std::array::from_fn(|k| std::array::from_fn(|i| rows[i][k]));
        Ok(ReflectionBasis {
            rows,
            columns,
            orthogonal_pairs,
            unit_rows,
        })
    }

    pub fn get() -> &'static ReflectionBasis {
        static BASIS: OnceLock<ReflectionBasis> = OnceLock::new();
        BASIS.get_or_init(|| ReflectionBasis::new(BASIS_ROWS).expect("embedded basis is orthogonal"))
    }

    pub fn row(&self, i: usize) -> &[i32; RANK] {
        &self.rows[i]
    }

    /// `t·V_i` for a doubled vector, i.e. twice `d·V_i`.
    #[inline]
    pub fn dot(&self, i: usize, t: &Doubled) -> i32 {
        let r = &self.rows[i];
        let mut s = 0;
        for k in 0..RANK {
            s += r[k] * t[k];
        }
        s
    }

    /// All twelve `d·V_i`.
    #[inline]
    pub fn dots(&self, t: &Doubled) -> [i32; RANK] {
        let mut acc = [0; RANK];
        for (col, &tk) in self.columns.iter().zip(t) {
            for (a, &v) in acc.iter_mut().zip(col) {
                *a += v * tk;
            }
        }
        acc.map(|a| a / 2)
    }
}

/// Reflection `r_i` (for `i` in `1..=12`) in doubled coordinates: `t − (t·V_i / 6)·V_i`.
pub(crate) fn reflect_doubled(t: &Doubled, i: usize) -> Doubled {
    let basis = ReflectionBasis::get();
    let k = basis.dot(i, t) / 6;
    debug_assert_eq!(basis.dot(i, t) % 6, 0);
    let r = basis.row(i);
    std::array::from_fn(|j| t[j] - k * r[j])
}

/// Applies `r_i`, `i` in `1..=12`; requires `d·V_i ≡ 0 (mod 3)`.
pub fn reflect(d: &DElement, i: usize) -> Result<DElement> {
    if !(1..=RANK).contains(&i) {
        return Err(Error::Domain(format!("reflection index {i} outside 1..=12")));
    }
    let dv = ReflectionBasis::get().dot(i - 1, d.doubled()) / 2;
    if dv % 3 != 0 {
        return Err(Error::Domain(format!("d·V_{i} = {dv} is not divisible by 3")));
    }
    DElement::new(reflect_doubled(d.doubled(), i - 1))
}

fn unit_vectors() -> &'static [Doubled; 2 * RANK] {
    static UNITS: OnceLock<[Doubled; 2 * RANK]> = OnceLock::new();
    UNITS.get_or_init(|| {
        let mut v: Vec<Doubled> = (0..RANK)
            .flat_map(|j| {
                [-2, 2].map(|s| {
                    let mut t = [0; RANK];
                    t[j] = s;
                    t
                })
            })
            .collect();
        v.sort();
        v.try_into().expect("24 unit vectors")
    })
}

/// The signed unit vector (doubled) with the given index in `1..=24`, in lexicographic order.
pub fn unit_vector(index: usize) -> Result<Doubled> {
    if !(1..=2 * RANK).contains(&index) {
        return Err(Error::Domain(format!("unit index {index} outside 1..=24")));
    }
    Ok(unit_vectors()[index - 1])
}

/// Index in `1..=24` of a doubled signed unit vector.
pub fn z_index(z: &Doubled) -> Option<usize> {
    unit_vectors().iter().position(|u| u == z).map(|p| p + 1)
}

/// Splits `d` (with no `d·V_i` divisible by 3) into a signed unit vector and an integer
/// vector `f` with `‖d‖² = Σ f_i(3f_i − 1) + 1`.
pub(crate) fn residual_doubled(t: &Doubled, dots: &[i32; RANK]) -> (usize, [i32; RANK]) {
    let basis = ReflectionBasis::get();
    let mut z = *t;
    let mut f = [0; RANK];
    for i in 0..RANK {
        let y = if dots[i].rem_euclid(6) == 1 { 1 } else { -1 };
        let x = (dots[i] - y) / 6;
        assert_eq!(6 * x + y, dots[i], "d·V_{} is not ±1 mod 6", i + 1);
        f[i] = -x * y;
        let r = basis.row(i);
        for j in 0..RANK {
            z[j] -= x * r[j];
        }
    }
    let index = z_index(&z).unwrap_or_else(|| panic!("residual {z:?} is not a unit vector"));
    let norm4: i64 = t.iter().map(|&x| (x as i64) * (x as i64)).sum();
    let pent: i64 = f.iter().map(|&x| (x as i64) * (3 * x as i64 - 1)).sum();
    assert_eq!(norm4, 4 * (pent + 1), "norm identity fails for {t:?}");
    (index, f)
}

pub fn residual(d: &DElement) -> Result<(usize, [i32; RANK])> {
    let dots = ReflectionBasis::get().dots(d.doubled());
    if let Some(i) = dots.iter().position(|v| v % 3 == 0) {
        return Err(Error::Domain(format!(
            "d·V_{} = {} is divisible by 3",
            i + 1,
            dots[i]
        )));
    }
    Ok(residual_doubled(d.doubled(), &dots))
}

pub(crate) fn unresidual_doubled(index: usize, f: &[i32; RANK]) -> Doubled {
    let basis = ReflectionBasis::get();
    let z = unit_vectors()[index - 1];
    let mut t = z;
    for i in 0..RANK {
        let y = basis.dot(i, &z) / 2;
        let r = basis.row(i);
        for j in 0..RANK {
            t[j] -= y * f[i] * r[j];
        }
    }
    t
}

/// Inverse of [`residual`]: `d = z − Σ (y_i f_i / 2) V_i` with `y_i = z·V_i`.
pub fn unresidual(index: usize, f: &[i32; RANK]) -> Result<DElement> {
    unit_vector(index)?;
    DElement::new(unresidual_doubled(index, f))
}

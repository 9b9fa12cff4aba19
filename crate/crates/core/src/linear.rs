//! Exact elimination of the linear angle relations.

use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::catalog::AngleRelation;

type Q = Ratio<i64>;

/// Solution set of the angle relations together with `A+B+C+D+E = 540°`.
///
/// Angles (degrees) are `base + Σ t_j · directions[j]`, where `t_j` is the
/// value of the free angle `free[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineFamily {
    pub base: [Q; 5],
    pub free: Vec<usize>,
    pub directions: Vec<[Q; 5]>,
}

impl AffineFamily {
    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    /// Angles in degrees for the given free values.
    pub fn angles_deg(&self, t: &[f64]) -> [f64; 5] {
        let mut out = [0.0; 5];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = to_f64(self.base[i])
                + self
                    .directions
                    .iter()
                    .zip(t)
                    .map(|(d, &tj)| to_f64(d[i]) * tj)
                    .sum::<f64>();
        }
        out
    }

    /// Open interval of the single free parameter that keeps every angle in
    /// (0°, 180°); `None` when empty or when the family is not one-dimensional.
    pub fn convex_interval(&self) -> Option<(f64, f64)> {
        if self.dimension() != 1 {
            return None;
        }
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for i in 0..5 {
            let b = to_f64(self.base[i]);
            let q = to_f64(self.directions[0][i]);
            if q == 0.0 {
                if b <= 0.0 || b >= 180.0 {
                    return None;
                }
                continue;
            }
            let (x, y) = ((0.0 - b) / q, (180.0 - b) / q);
            lo = lo.max(x.min(y));
            hi = hi.min(x.max(y));
        }
        (lo < hi).then_some((lo, hi))
    }
}

fn to_f64(q: Q) -> f64 {
    q.numer().to_f64().unwrap() / q.denom().to_f64().unwrap()
}

/// Reduces the relation system to reduced row echelon form over the rationals.
/// Returns `None` when the relations are inconsistent.
pub fn eliminate(relations: &[AngleRelation]) -> Option<AffineFamily> {
    let mut rows: Vec<[Q; 6]> = relations
        .iter()
        .map(|r| {
            let mut row = [Q::zero(); 6];
            for i in 0..5 {
                row[i] = Q::from_integer(r.coefficients.0[i] as i64);
            }
            row[5] = Q::from_integer(AngleRelation::TARGET_DEG as i64);
            row
        })
        .collect();
    rows.push([
        Q::one(),
        Q::one(),
        Q::one(),
        Q::one(),
        Q::one(),
        Q::from_integer(540),
    ]);

    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..5 {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col];
                let pivot_row = rows[r];
                for (v, pv) in rows[i].iter_mut().zip(pivot_row) {
                    *v -= f * pv;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    // a zero row with a nonzero right-hand side is a contradiction
    if rows[r..].iter().any(|row| !row[5].abs().is_zero()) {
        return None;
    }

    let free: Vec<usize> = (0..5).filter(|c| !pivots.contains(c)).collect();
    let mut base = [Q::zero(); 5];
    for (k, &pc) in pivots.iter().enumerate() {
        base[pc] = rows[k][5];
    }
    let directions = free
        .iter()
        .map(|&fc| {
            let mut d = [Q::zero(); 5];
            d[fc] = Q::one();
            for (k, &pc) in pivots.iter().enumerate() {
                d[pc] = -rows[k][fc];
            }
            d
        })
        .collect();
    Some(AffineFamily {
        base,
        free,
        directions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{get_category, get_category_unchecked, Params};

    fn family(id: u32, p: Params) -> AffineFamily {
        let spec = get_category(id, p).unwrap();
        let rels: Vec<_> = spec.all_relations().copied().collect();
        eliminate(&rels).unwrap()
    }

    #[test]
    fn category_nine_leaves_e_free() {
        let f = family(9, Params::NONE);
        assert_eq!(f.free, vec![4]);
        let a = f.angles_deg(&[90.0]);
        assert_eq!(a, [120.0, 120.0, 90.0, 120.0, 90.0]);
        let (lo, hi) = f.convex_interval().unwrap();
        assert_eq!((lo, hi), (0.0, 180.0));
    }

    #[test]
    fn category_sixteen_is_rigid() {
        let f = family(16, Params::n(1));
        assert_eq!(f.dimension(), 0);
        assert_eq!(f.angles_deg(&[]), [112.5, 135.0, 90.0, 112.5, 90.0]);
    }

    #[test]
    fn dimensions_of_catalog() {
        for (id, p) in crate::catalog::instances() {
            let d = family(id, p).dimension();
            let expect = if matches!(id, 15 | 16 | 17) { 0 } else { 1 };
            assert_eq!(d, expect, "category {id} {p}");
        }
    }

    #[test]
    fn inconsistent_system() {
        let rels = ["3A", "2A"].map(|s| AngleRelation {
            coefficients: s.parse().unwrap(),
        });
        assert!(eliminate(&rels).is_none());
    }

    #[test]
    fn category_fifteen_without_pin_is_a_family() {
        let spec = get_category_unchecked(15, Params::NONE).unwrap();
        assert_eq!(eliminate(&spec.relations).unwrap().dimension(), 1);
    }
}

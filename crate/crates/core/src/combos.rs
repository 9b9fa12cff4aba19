//! Which angles can be written as nonnegative integer combinations of the
//! five corner angles.

use crate::catalog::Multiset;

/// All corner combinations with angle sum up to a limit, sorted by sum.
#[derive(Clone, Debug)]
pub struct AngleCombos {
    angles_deg: [f64; 5],
    sums: Vec<(f64, Multiset)>,
    tol: f64,
}

impl AngleCombos {
    /// Default tolerance for "expressible": 1e-6 degrees.
    pub const TOL_DEG: f64 = 1e-6;

    pub fn new(angles_deg: [f64; 5], limit_deg: f64) -> Self {
        Self::with_tolerance(angles_deg, limit_deg, Self::TOL_DEG)
    }

    pub fn with_tolerance(angles_deg: [f64; 5], limit_deg: f64, tol: f64) -> Self {
        let mut sums = Vec::new();
        let mut counts = [0u32; 5];
        collect(&angles_deg, limit_deg + tol, 0, 0.0, &mut counts, &mut sums);
        sums.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        Self {
            angles_deg,
            sums,
            tol,
        }
    }

    pub fn angles_deg(&self) -> &[f64; 5] {
        &self.angles_deg
    }

    /// Number of stored combinations (including the empty one).
    pub fn len(&self) -> usize {
        self.sums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sums.is_empty()
    }

    /// Some combination with sum within tolerance of `x` (degrees); the empty
    /// combination represents 0.
    pub fn witness(&self, x: f64) -> Option<Multiset> {
        let i = self.sums.partition_point(|(s, _)| *s < x - self.tol);
        self.sums
            .get(i)
            .filter(|(s, _)| (s - x).abs() <= self.tol)
            .map(|(_, m)| *m)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.witness(x).is_some()
    }

    /// Every combination whose sum lies within tolerance of `x`.
    pub fn all_near(&self, x: f64) -> impl Iterator<Item = &Multiset> {
        let i = self.sums.partition_point(|(s, _)| *s < x - self.tol);
        self.sums[i..]
            .iter()
            .take_while(move |(s, _)| *s <= x + self.tol)
            .map(|(_, m)| m)
    }
}

/// Exhaustive check, independent of [`AngleCombos`]: tries every count
/// vector with at most `floor(x / min angle)` corners. Returns a witness (if
/// any) and the number of vectors examined.
pub fn brute_force_witness(angles_deg: &[f64; 5], x: f64, tol: f64) -> (Option<Multiset>, u64) {
    let min = angles_deg.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_terms = ((x + tol) / min).floor().max(0.0) as u32;
    let mut checked = 0u64;
    let mut c = [0u32; 5];
    loop {
        if c.iter().sum::<u32>() <= max_terms {
            checked += 1;
            let s: f64 = c.iter().zip(angles_deg).map(|(&k, &a)| k as f64 * a).sum();
            if (s - x).abs() <= tol {
                return (Some(Multiset(c)), checked);
            }
        }
        let mut i = 0;
        loop {
            if i == 5 {
                return (None, checked);
            }
            c[i] += 1;
            if c[i] <= max_terms {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

fn collect(
    angles: &[f64; 5],
    limit: f64,
    k: usize,
    acc: f64,
    counts: &mut [u32; 5],
    out: &mut Vec<(f64, Multiset)>,
) {
    if k == 5 {
        out.push((acc, Multiset(*counts)));
        return;
    }
    let mut s = acc;
    counts[k] = 0;
    while s <= limit {
        collect(angles, limit, k + 1, s, counts, out);
        counts[k] += 1;
        s += angles[k];
    }
    counts[k] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(angles: &[f64; 5], x: f64, tol: f64) -> bool {
        let min = angles.iter().cloned().fold(f64::INFINITY, f64::min);
        let cap = (x / min).floor() as u32 + 1;
        let mut c = [0u32; 5];
        loop {
            let s: f64 = c.iter().zip(angles).map(|(&k, &a)| k as f64 * a).sum();
            if (s - x).abs() <= tol {
                return true;
            }
            let mut i = 0;
            loop {
                if i == 5 {
                    return false;
                }
                c[i] += 1;
                if c[i] <= cap {
                    break;
                }
                c[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn brute_force_agrees_on_dead_gap() {
        let a = [113.64, 132.72, 75.90, 123.18, 94.56];
        let (w, checked) = brute_force_witness(&a, 360.0 - 2.0 * 94.56, 0.02);
        assert!(w.is_none());
        assert!(checked > 1);
        let (w, _) = brute_force_witness(&a, 360.0 - 2.0 * 113.64, 0.02);
        assert_eq!(w.unwrap().to_string(), "B");
    }

    #[test]
    fn category_one_dead_gap() {
        let a = [113.64, 132.72, 75.90, 123.18, 94.56];
        let combos = AngleCombos::with_tolerance(a, 360.0, 0.02);
        assert!(!combos.contains(360.0 - 2.0 * 94.56));
        assert!(combos.contains(360.0 - 2.0 * 113.64));
        assert!(combos.contains(0.0));
    }

    proptest! {
        #[test]
        fn matches_brute_force(
            raw in prop::array::uniform5(20.0..170.0f64),
            picks in prop::array::uniform5(0u32..3),
        ) {
            let combos = AngleCombos::with_tolerance(raw, 360.0, 1e-6);
            let x: f64 = picks.iter().zip(&raw).map(|(&k, &a)| k as f64 * a).sum();
            if x <= 360.0 {
                prop_assert!(combos.contains(x));
            }
            let y = x * 0.731 + 3.3;
            if y <= 360.0 {
                prop_assert_eq!(combos.contains(y), brute(&raw, y, 1e-6));
            }
        }
    }
}

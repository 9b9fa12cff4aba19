//! Corner multisets that fill a full turn, and whether they can be
//! concentrated edge-to-edge.
//!
//! A wedge is one tile's corner at the spot. Walking counterclockwise around
//! the spot, an unreflected corner X is entered along its outgoing edge and
//! left along its incoming edge; a reflected copy swaps the two. Neighbouring
//! wedges must put edges of equal length along their common ray.
//!
//! On top of that pairwise rule, a spot only counts as EEC here when it can
//! sit around a vertex of a surrounded tile: the tile's own wedge (the first
//! in a witness) shares full edges with its two neighbours, and the far ends
//! of those edges are vertices of the same tile that must also close up, so
//! the angle left there has to be a combination of corner angles.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{
    Catalog, CornerLabel, EdgeLabel, Multiset, Params, RemarkSpot, SpotClass,
};
use crate::combos::AngleCombos;
use crate::solver::{solve_category, Pentagon, SolveError};

/// Angle-sum tolerance for spot detection, degrees.
pub const SPOT_TOL_DEG: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Wedge {
    pub corner: CornerLabel,
    pub reflected: bool,
}

impl Wedge {
    pub fn new(corner: CornerLabel, reflected: bool) -> Self {
        Self { corner, reflected }
    }

    /// Edge along the clockwise-most ray of the wedge.
    pub fn start_edge(&self) -> EdgeLabel {
        if self.reflected {
            self.corner.incoming()
        } else {
            self.corner.outgoing()
        }
    }

    /// Edge along the counterclockwise-most ray.
    pub fn end_edge(&self) -> EdgeLabel {
        if self.reflected {
            self.corner.outgoing()
        } else {
            self.corner.incoming()
        }
    }

    pub fn mirrored(&self) -> Self {
        Self::new(self.corner, !self.reflected)
    }
}

impl fmt::Display for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.corner, if self.reflected { "'" } else { "" })
    }
}

/// The corner at the other end of `edge`, seen from `corner`.
pub fn far_corner(corner: CornerLabel, edge: EdgeLabel) -> CornerLabel {
    if edge == corner.outgoing() {
        CornerLabel::from_index(corner.index() + 1)
    } else {
        debug_assert_eq!(edge, corner.incoming());
        CornerLabel::from_index(corner.index() + 4)
    }
}

pub fn format_witness(w: &[Wedge]) -> String {
    w.iter().map(|x| x.to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spot {
    pub multiset: Multiset,
    pub angle_sum_deg: f64,
    pub classification: Option<SpotClass>,
    /// Counterclockwise cycle; the first wedge is the surrounded tile's corner.
    pub witness: Option<Vec<Wedge>>,
    /// Whether flank lengths alone can be matched (ignoring far ends).
    pub locally_matchable: Option<bool>,
}

impl Spot {
    fn unclassified(multiset: Multiset, angle_sum_deg: f64) -> Self {
        Self {
            multiset,
            angle_sum_deg,
            classification: None,
            witness: None,
            locally_matchable: None,
        }
    }
}

/// `ceil(360° / smallest angle)`: enough corners for an exhaustive list.
pub fn default_max_corners(p: &Pentagon) -> usize {
    (360.0 / p.min_angle().to_degrees() - 1e-9).ceil() as usize
}

fn enumerate_target(p: &Pentagon, max_corners: usize, target: f64) -> Vec<Spot> {
    let angles = p.angles_deg();
    let mut out = Vec::new();
    let mut counts = [0u32; 5];
    fn rec(
        angles: &[f64; 5],
        target: f64,
        left: usize,
        k: usize,
        acc: f64,
        counts: &mut [u32; 5],
        out: &mut Vec<Spot>,
    ) {
        if k == 5 {
            if (acc - target).abs() <= SPOT_TOL_DEG {
                out.push(Spot::unclassified(Multiset(*counts), acc));
            }
            return;
        }
        let mut s = acc;
        let mut used = 0;
        loop {
            counts[k] = used as u32;
            rec(angles, target, left - used, k + 1, s, counts, out);
            used += 1;
            s += angles[k];
            if used > left || s > target + SPOT_TOL_DEG {
                break;
            }
        }
        counts[k] = 0;
    }
    rec(&angles, target, max_corners, 0, 0.0, &mut counts, &mut out);
    // descending multiplicity vector
    out.sort_by(|a, b| b.multiset.cmp(&a.multiset));
    out
}

/// All corner multisets of at most `max_corners` corners summing to 360°.
pub fn enumerate_spots(p: &Pentagon, max_corners: usize) -> Vec<Spot> {
    enumerate_target(p, max_corners, 360.0)
}

/// Multisets summing to 180°: the corners that can meet on a straight edge.
pub fn enumerate_straight_spots(p: &Pentagon, max_corners: usize) -> Vec<Spot> {
    enumerate_target(p, max_corners, 180.0)
}

/// Independent check for [`enumerate_spots`]: every count vector with at
/// most `max` corners, tested one by one. Same canonical order.
pub fn brute_force_spots(p: &Pentagon, max: usize, target: f64) -> Vec<Multiset> {
        let a = p.angles_deg();
        let mut out = Vec::new();
        let m = max as u32;
        for i in 0..=m {
            for j in 0..=m - i {
                for k in 0..=m - i - j {
                    for l in 0..=m - i - j - k {
                        for n in 0..=m - i - j - k - l {
                            let ms = Multiset([i, j, k, l, n]);
                            if (ms.angle_sum(&a) - target).abs() <= SPOT_TOL_DEG {
                                out.push(ms);
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out.reverse();
        out
    }

/// How far-end closure is checked for edges shared by neighbouring wedges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FarEndRule {
    /// Pairwise edge lengths only.
    Ignore,
    /// Only the two edges of the first (surrounded) wedge.
    Central,
    /// Every shared edge.
    All,
    /// Only edges shared by two copies of the same corner along the same
    /// edge label (mirror images across the edge, so the far end carries the
    /// same corner twice). This is the default.
    Mirror,
}

#[derive(Clone, Copy)]
enum Side {
    Neither,
    PrevCentral,
    NextCentral,
}

/// Reusable classifier for one pentagon.
pub struct SpotAnalyzer<'a> {
    p: &'a Pentagon,
    class: [u8; 5],
    combos: AngleCombos,
    angles_deg: [f64; 5],
    rule: FarEndRule,
}

impl<'a> SpotAnalyzer<'a> {
    pub fn new(p: &'a Pentagon) -> Self {
        Self::with_rule(p, FarEndRule::Mirror)
    }

    pub fn with_rule(p: &'a Pentagon, rule: FarEndRule) -> Self {
        let tol = 1e-9 * p.longest_edge();
        let mut class = [0u8; 5];
        let mut reps: Vec<f64> = Vec::new();
        for (i, &e) in p.edges.iter().enumerate() {
            class[i] = match reps.iter().position(|&r| (r - e).abs() <= tol) {
                Some(k) => k as u8,
                None => {
                    reps.push(e);
                    (reps.len() - 1) as u8
                }
            };
        }
        let angles_deg = p.angles_deg();
        Self {
            p,
            class,
            combos: AngleCombos::new(angles_deg, 360.0),
            angles_deg,
            rule,
        }
    }

    pub fn pentagon(&self) -> &Pentagon {
        self.p
    }

    pub fn combos(&self) -> &AngleCombos {
        &self.combos
    }

    fn same_length(&self, x: EdgeLabel, y: EdgeLabel) -> bool {
        self.class[x.index()] == self.class[y.index()]
    }

    /// The far end of an edge shared by the central wedge and a neighbour can
    /// still be closed up.
    fn far_end_ok(&self, central: Wedge, ce: EdgeLabel, other: Wedge, oe: EdgeLabel) -> bool {
        let used = self.angles_deg[far_corner(central.corner, ce).index()]
            + self.angles_deg[far_corner(other.corner, oe).index()];
        self.combos.contains(360.0 - used)
    }

    fn contact_ok(&self, prev: Wedge, next: Wedge, side: Side, rule: FarEndRule) -> bool {
        if !self.same_length(prev.end_edge(), next.start_edge()) {
            return false;
        }
        let check = match rule {
            FarEndRule::Ignore => false,
            FarEndRule::Central => !matches!(side, Side::Neither),
            FarEndRule::All => true,
            FarEndRule::Mirror => prev.corner == next.corner && prev.end_edge() == next.start_edge(),
        };
        !check || self.far_end_ok(prev, prev.end_edge(), next, next.start_edge())
    }

    /// Checks a concrete counterclockwise cycle whose first wedge is central.
    pub fn is_witness(&self, cycle: &[Wedge], rule: FarEndRule) -> bool {
        let k = cycle.len();
        if k < 2 {
            return false;
        }
        (0..k).all(|i| {
            let prev = cycle[i];
            let next = cycle[(i + 1) % k];
            let side = if i == 0 {
                Side::PrevCentral
            } else if i + 1 == k {
                Side::NextCentral
            } else {
                Side::Neither
            };
            self.contact_ok(prev, next, side, rule)
        })
    }

    fn search(
        &self,
        rem: [u32; 5],
        last: Wedge,
        central: Wedge,
        rule: FarEndRule,
        path: &mut Vec<Wedge>,
        failed: &mut HashSet<([u32; 5], Wedge)>,
    ) -> bool {
        if rem.iter().all(|&r| r == 0) {
            return self.contact_ok(last, central, Side::NextCentral, rule);
        }
        if failed.contains(&(rem, last)) {
            return false;
        }
        let at_central = path.len() == 1;
        for c in CornerLabel::ALL {
            if rem[c.index()] == 0 {
                continue;
            }
            for refl in [false, true] {
                let w = Wedge::new(c, refl);
                let side = if at_central {
                    Side::PrevCentral
                } else {
                    Side::Neither
                };
                if !self.contact_ok(last, w, side, rule) {
                    continue;
                }
                let mut r = rem;
                r[c.index()] -= 1;
                path.push(w);
                if self.search(r, w, central, rule, path, failed) {
                    return true;
                }
                path.pop();
            }
        }
        // the state after the central wedge also depends on the central contact
        if !at_central {
            failed.insert((rem, last));
        }
        false
    }

    /// Some counterclockwise arrangement of the multiset, central wedge first.
    pub fn find_witness(&self, m: &Multiset, rule: FarEndRule) -> Option<Vec<Wedge>> {
        if m.total() < 2 {
            return None;
        }
        for c in CornerLabel::ALL {
            if m.count(c) == 0 {
                continue;
            }
            // mirroring a whole arrangement flips every chirality, so the
            // central wedge can be taken unreflected
            let central = Wedge::new(c, false);
            let mut rem = m.0;
            rem[c.index()] -= 1;
            let mut path = vec![central];
            let mut failed = HashSet::new();
            if self.search(rem, central, central, rule, &mut path, &mut failed) {
                return Some(path);
            }
        }
        None
    }

    pub fn classify(&self, s: &Spot) -> Spot {
        let witness = self.find_witness(&s.multiset, self.rule);
        let local = witness.is_some() || self.find_witness(&s.multiset, FarEndRule::Ignore).is_some();
        Spot {
            multiset: s.multiset,
            angle_sum_deg: s.angle_sum_deg,
            classification: Some(if witness.is_some() {
                SpotClass::Eec
            } else {
                SpotClass::Neec
            }),
            witness,
            locally_matchable: Some(local),
        }
    }

    /// Chirality assignment realising a printed corner word (first letter is
    /// the surrounded tile's corner), if any.
    ///
    /// Only flank lengths are compared: a printed word describes a vertex of
    /// a finite patch, whose far ends may sit on the open patch boundary.
    pub fn realize_word(&self, word: &str) -> Option<Vec<Wedge>> {
        let corners: Vec<CornerLabel> = word.chars().map(CornerLabel::from_char).collect::<Option<_>>()?;
        let k = corners.len();
        if !(2..=20).contains(&k) {
            return None;
        }
        (0u32..1 << k).find_map(|mask| {
            let cycle: Vec<Wedge> = corners
                .iter()
                .enumerate()
                .map(|(i, &c)| Wedge::new(c, mask >> i & 1 == 1))
                .collect();
            self.is_witness(&cycle, FarEndRule::Ignore).then_some(cycle)
        })
    }
}

pub fn classify_spot(p: &Pentagon, s: &Spot) -> Spot {
    SpotAnalyzer::new(p).classify(s)
}

/// Enumerates and classifies every full-turn spot (classification in parallel,
/// output in canonical order).
pub fn classified_spots(p: &Pentagon) -> Vec<Spot> {
    let an = SpotAnalyzer::new(p);
    enumerate_spots(p, default_max_corners(p))
        .par_iter()
        .map(|s| an.classify(s))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Contradiction {
    pub spot: Multiset,
    pub reference: SpotClass,
    pub engine: Option<SpotClass>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArrangementCheck {
    pub corner: CornerLabel,
    pub word: String,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RemarksReport {
    pub category: u32,
    pub params: Params,
    pub matched: Vec<RemarkSpot>,
    /// Spots found here that the reference remarks do not list.
    pub unlisted: Vec<Spot>,
    pub contradicting: Vec<Contradiction>,
    pub arrangements: Vec<ArrangementCheck>,
    pub spots: Vec<Spot>,
}

impl RemarksReport {
    pub fn ok(&self) -> bool {
        self.contradicting.is_empty() && self.arrangements.iter().all(|a| a.witness.is_some())
    }
}

/// Compares the engine's classification with the reference remarks for one
/// instance, using the standard catalog.
pub fn verify_remarks(id: u32, params: Params) -> Result<RemarksReport, SolveError> {
    verify_remarks_with(&Catalog::standard(), id, params)
}

pub fn verify_remarks_with(
    catalog: &Catalog,
    id: u32,
    params: Params,
) -> Result<RemarksReport, SolveError> {
    let (p, _) = solve_category(id, params)?;
    let spots = classified_spots(&p);
    let an = SpotAnalyzer::new(&p);
    let remarks = catalog.remarks_for(id, params);

    let mut matched = Vec::new();
    let mut contradicting = Vec::new();
    for r in remarks {
        let engine = spots
            .iter()
            .find(|s| s.multiset == r.spot)
            .and_then(|s| s.classification);
        if engine == Some(r.class) {
            matched.push(r.clone());
        } else {
            contradicting.push(Contradiction {
                spot: r.spot,
                reference: r.class,
                engine,
            });
        }
    }
    let unlisted = spots
        .iter()
        .filter(|s| !remarks.iter().any(|r| r.spot == s.multiset))
        .cloned()
        .collect();
    let arrangements = catalog
        .row(id, params)
        .and_then(|r| r.arrangements.clone())
        .map(|words| {
            words
                .iter()
                .enumerate()
                .map(|(i, w)| ArrangementCheck {
                    corner: CornerLabel::from_index(i),
                    word: w.clone(),
                    witness: an.realize_word(w).map(|c| format_witness(&c)),
                })
                .collect()
        })
        .unwrap_or_default();
    Ok(RemarksReport {
        category: id,
        params,
        matched,
        unlisted,
        contradicting,
        arrangements,
        spots,
    })
}

/// CSV with columns multiset, sum, class, witness-cycle.
pub fn spots_csv(spots: &[Spot]) -> String {
    let mut out = String::from("multiset,sum,class,witness\n");
    for s in spots {
        out.push_str(&format!(
            "{},{:.6},{},{}\n",
            s.multiset,
            s.angle_sum_deg,
            s.classification.map_or(String::new(), |c| c.to_string()),
            s.witness.as_deref().map_or(String::new(), format_witness),
        ));
    }
    out
}

//! Exact arithmetic on cofinite "staircase" subsets of ℕ², and the
//! containment computation for a curve with two branches.
//!
//! A [`ConeSet`] is a finite collection of points, horizontal rays and
//! vertical rays together with a corner whose full quadrant is included.
//! This is enough to represent the two-branch value sets that show up here
//! (products `T × T` of cofinite subsets of ℕ and their Minkowski sums) and
//! is closed under sum, union and translation. Equality is set equality,
//! decided by mutual containment, so the same set carried with different
//! corners still compares equal.
//!
//! The distinguished computation is [`two_branch_report`]: for the curve
//! whose two branches both have value semigroup ⟨3,4,5⟩, glued over the
//! ground field, it assembles the value sets of the ring, its maximal ideal,
//! its blow-up ring and the radical of the blow-up, loads the canonical
//! value set `K` from a transcription fixture, and verifies the chain
//! `v(m) + K + v(J) ⊆ [6,∞)² ⊆ v(R)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::Error;

type Point = (u32, u32);

/// A subset of ℕ² of the form
/// `points ∪ rows ∪ cols ∪ {(x, y) : x ≥ c₁, y ≥ c₂}`,
/// where each row entry `(y, x0)` stands for `{(x, y) : x ≥ x0}` and each
/// col entry `(x, y0)` for `{(x, y) : y ≥ y0}`.
///
/// The stored form is canonical relative to the corner: rows exist only
/// below the corner height, cols only left of the corner, ray starts are
/// minimal, and points are exactly the members not covered by any ray or by
/// the corner quadrant.
#[derive(Clone, Debug)]
pub struct ConeSet {
    points: BTreeSet<Point>,
    rows: BTreeMap<u32, u32>,
    cols: BTreeMap<u32, u32>,
    corner: Point,
}

#[derive(Default)]
struct Parts {
    points: Vec<Point>,
    rows: Vec<(u32, u32)>,
    cols: Vec<(u32, u32)>,
}

fn normalize(parts: Parts, corner: Point) -> ConeSet {
    let mut row_start: BTreeMap<u32, u32> = BTreeMap::new();
    for (y, x0) in parts.rows {
        row_start
            .entry(y)
            .and_modify(|v| *v = (*v).min(x0))
            .or_insert(x0);
    }
    let mut col_start: BTreeMap<u32, u32> = BTreeMap::new();
    for (x, y0) in parts.cols {
        col_start
            .entry(x)
            .and_modify(|v| *v = (*v).min(y0))
            .or_insert(y0);
    }
    let point_set: BTreeSet<Point> = parts.points.into_iter().collect();

    // Membership against the raw parts; normalization never changes the set.
    let member = |p: Point| -> bool {
        (p.0 >= corner.0 && p.1 >= corner.1)
            || point_set.contains(&p)
            || row_start.get(&p.1).is_some_and(|&x0| p.0 >= x0)
            || col_start.get(&p.0).is_some_and(|&y0| p.1 >= y0)
    };

    let mut rows = BTreeMap::new();
    for (&y, &x0) in &row_start {
        if y >= corner.1 {
            continue;
        }
        let mut x0 = x0;
        while x0 > 0 && member((x0 - 1, y)) {
            x0 -= 1;
        }
        rows.insert(y, x0);
    }
    let mut cols = BTreeMap::new();
    for (&x, &y0) in &col_start {
        if x >= corner.0 {
            continue;
        }
        let mut y0 = y0;
        while y0 > 0 && member((x, y0 - 1)) {
            y0 -= 1;
        }
        cols.insert(x, y0);
    }

    // Rays running inside the corner quadrant leave only a finite stub.
    let mut candidates = point_set;
    for (&y, &x0) in &row_start {
        if y >= corner.1 {
            for x in x0..corner.0 {
                candidates.insert((x, y));
            }
        }
    }
    for (&x, &y0) in &col_start {
        if x >= corner.0 {
            for y in y0..corner.1 {
                candidates.insert((x, y));
            }
        }
    }
    let points = candidates
        .into_iter()
        .filter(|&(x, y)| {
            !(x >= corner.0 && y >= corner.1)
                && rows.get(&y).is_none_or(|&x0| x < x0)
                && cols.get(&x).is_none_or(|&y0| y < y0)
        })
        .collect();

    ConeSet {
        points,
        rows,
        cols,
        corner,
    }
}

impl ConeSet {
    pub fn from_parts(
        points: impl IntoIterator<Item = Point>,
        rows: impl IntoIterator<Item = (u32, u32)>,
        cols: impl IntoIterator<Item = (u32, u32)>,
        corner: Point,
    ) -> ConeSet {
        normalize(
            Parts {
                points: points.into_iter().collect(),
                rows: rows.into_iter().collect(),
                cols: cols.into_iter().collect(),
            },
            corner,
        )
    }

    /// The quadrant `{(x, y) : x ≥ c₁, y ≥ c₂}`.
    pub fn cone(corner: Point) -> ConeSet {
        ConeSet::from_parts([], [], [], corner)
    }

    pub fn corner(&self) -> Point {
        self.corner
    }

    pub fn contains(&self, p: Point) -> bool {
        (p.0 >= self.corner.0 && p.1 >= self.corner.1)
            || self.points.contains(&p)
            || self.rows.get(&p.1).is_some_and(|&x0| p.0 >= x0)
            || self.cols.get(&p.0).is_some_and(|&y0| p.1 >= y0)
    }

    /// Minkowski sum; the resulting corner is the sum of the corners and
    /// pieces newly dominated by it are absorbed during normalization.
    pub fn minkowski_sum(&self, other: &ConeSet) -> ConeSet {
        let corner = (
            self.corner.0 + other.corner.0,
            self.corner.1 + other.corner.1,
        );
        let mut parts = Parts::default();
        // A quadrant at q decomposes, relative to the final corner, into a
        // band of rows, a band of cols, and the part the corner swallows.
        let add_cone = |parts: &mut Parts, q: Point| {
            for y in q.1..corner.1 {
                parts.rows.push((y, q.0));
            }
            for x in q.0..corner.0 {
                parts.cols.push((x, q.1));
            }
        };

        for &p in &self.points {
            for &q in &other.points {
                parts.points.push((p.0 + q.0, p.1 + q.1));
            }
            for (&y, &x0) in &other.rows {
                parts.rows.push((y + p.1, x0 + p.0));
            }
            for (&x, &y0) in &other.cols {
                parts.cols.push((x + p.0, y0 + p.1));
            }
            add_cone(&mut parts, (p.0 + other.corner.0, p.1 + other.corner.1));
        }
        for (&y, &x0) in &self.rows {
            for &q in &other.points {
                parts.rows.push((y + q.1, x0 + q.0));
            }
            for (&y2, &x02) in &other.rows {
                parts.rows.push((y + y2, x0 + x02));
            }
            for (&x2, &y02) in &other.cols {
                add_cone(&mut parts, (x0 + x2, y + y02));
            }
            add_cone(&mut parts, (x0 + other.corner.0, y + other.corner.1));
        }
        for (&x, &y0) in &self.cols {
            for &q in &other.points {
                parts.cols.push((x + q.0, y0 + q.1));
            }
            for (&y2, &x02) in &other.rows {
                add_cone(&mut parts, (x + x02, y0 + y2));
            }
            for (&x2, &y02) in &other.cols {
                parts.cols.push((x + x2, y0 + y02));
            }
            add_cone(&mut parts, (x + other.corner.0, y0 + other.corner.1));
        }
        for &q in &other.points {
            add_cone(&mut parts, (self.corner.0 + q.0, self.corner.1 + q.1));
        }
        for (&y, &x0) in &other.rows {
            add_cone(&mut parts, (self.corner.0 + x0, self.corner.1 + y));
        }
        for (&x, &y0) in &other.cols {
            add_cone(&mut parts, (self.corner.0 + x, self.corner.1 + y0));
        }
        normalize(parts, corner)
    }

    pub fn union(&self, other: &ConeSet) -> ConeSet {
        let corner = (
            self.corner.0.max(other.corner.0),
            self.corner.1.max(other.corner.1),
        );
        let mut parts = Parts::default();
        let add_cone = |parts: &mut Parts, q: Point| {
            for y in q.1..corner.1 {
                parts.rows.push((y, q.0));
            }
            for x in q.0..corner.0 {
                parts.cols.push((x, q.1));
            }
        };
        for set in [self, other] {
            parts.points.extend(set.points.iter().copied());
            parts.rows.extend(set.rows.iter().map(|(&y, &x0)| (y, x0)));
            parts.cols.extend(set.cols.iter().map(|(&x, &y0)| (x, y0)));
            add_cone(&mut parts, set.corner);
        }
        normalize(parts, corner)
    }

    /// The translate `d + A`; translating by `(0, 0)` is the identity.
    pub fn translate(&self, d: Point) -> ConeSet {
        ConeSet::from_parts(
            self.points.iter().map(|&(x, y)| (x + d.0, y + d.1)),
            self.rows.iter().map(|(&y, &x0)| (y + d.1, x0 + d.0)),
            self.cols.iter().map(|(&x, &y0)| (x + d.0, y0 + d.1)),
            (self.corner.0 + d.0, self.corner.1 + d.1),
        )
    }

    fn row_tail_contained(&self, y: u32, x0: u32) -> bool {
        if y >= self.corner.1 {
            (x0..self.corner.0).all(|x| self.contains((x, y)))
        } else {
            match self.rows.get(&y) {
                None => false,
                Some(&own) => (x0..own).all(|x| self.contains((x, y))),
            }
        }
    }

    fn col_tail_contained(&self, x: u32, y0: u32) -> bool {
        if x >= self.corner.0 {
            (y0..self.corner.1).all(|y| self.contains((x, y)))
        } else {
            match self.cols.get(&x) {
                None => false,
                Some(&own) => (y0..own).all(|y| self.contains((x, y))),
            }
        }
    }

    fn cone_contained(&self, c: Point) -> bool {
        (c.1..self.corner.1).all(|y| self.row_tail_contained(y, c.0))
            && (c.0..self.corner.0)
                .all(|x| self.col_tail_contained(x, c.1.max(self.corner.1)))
    }

    /// Whether every member of `other`, including its rays and quadrant, is a
    /// member of `self`.
    pub fn contains_set(&self, other: &ConeSet) -> bool {
        other.points.iter().all(|&p| self.contains(p))
            && other
                .rows
                .iter()
                .all(|(&y, &x0)| self.row_tail_contained(y, x0))
            && other
                .cols
                .iter()
                .all(|(&x, &y0)| self.col_tail_contained(x, y0))
            && self.cone_contained(other.corner)
    }

    /// Parses the fixture format: `a b` point lines, `row y x0` and
    /// `col x y0` ray lines, one `corner c1 c2` line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<ConeSet, Error> {
        let mut parts = Parts::default();
        let mut corner = None;
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let num = |t: &str| {
                t.parse::<u32>()
                    .map_err(|_| Error::Fixture(format!("line {}: bad number `{}`", idx + 1, t)))
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                ["corner", a, b] => corner = Some((num(a)?, num(b)?)),
                ["row", y, x0] => parts.rows.push((num(y)?, num(x0)?)),
                ["col", x, y0] => parts.cols.push((num(x)?, num(y0)?)),
                [a, b] => parts.points.push((num(a)?, num(b)?)),
                _ => {
                    return Err(Error::Fixture(format!(
                        "line {}: unrecognized `{}`",
                        idx + 1,
                        line
                    )))
                }
            }
        }
        let corner = corner.ok_or_else(|| Error::Fixture("missing corner line".into()))?;
        Ok(normalize(parts, corner))
    }
}

impl PartialEq for ConeSet {
    /// Set equality, independent of the carried corner.
    fn eq(&self, other: &ConeSet) -> bool {
        self.contains_set(other) && other.contains_set(self)
    }
}

impl Eq for ConeSet {}

/// Bundled transcription of the canonical value set beyond `v(R)` for the
/// two-branch curve; see `fixtures/example2.txt`.
pub const CANONICAL_FIXTURE: &str = include_str!("../../../fixtures/example2.txt");

/// `v(R) = {(0,0)} ∪ T × T` with `T = {3} ∪ [6, ∞)`.
pub fn two_branch_ring() -> ConeSet {
    ConeSet::from_parts([(0, 0), (3, 3)], [(3, 6)], [(3, 6)], (6, 6))
}

/// `v(m) = T × T`.
pub fn two_branch_maximal_ideal() -> ConeSet {
    ConeSet::from_parts([(3, 3)], [(3, 6)], [(3, 6)], (6, 6))
}

/// `v(B) = D × D` with `D = {0} ∪ [3, ∞)`, the value set of the blow-up ring.
pub fn two_branch_endomorphism_ring() -> ConeSet {
    ConeSet::from_parts([(0, 0)], [(0, 3)], [(0, 3)], (3, 3))
}

/// `v(J) = [3, ∞)²`, the value set of the radical of the blow-up ring.
pub fn two_branch_radical() -> ConeSet {
    ConeSet::cone((3, 3))
}

/// The verdicts of the two-branch containment computation.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TwoBranchReport {
    pub ring_in_canonical: bool,
    pub ring_in_endomorphism_ring: bool,
    pub product_in_conductor_cone: bool,
    pub conductor_cone_in_ring: bool,
    pub gap_above_origin: bool,
    pub multiplicity_point_in_ring: bool,
    pub verified: bool,
}

impl TwoBranchReport {
    pub fn verdict(&self) -> &'static str {
        if self.verified {
            "gAGL containment verified"
        } else {
            "containment FAILED"
        }
    }
}

/// Loads the canonical value set from a fixture, validates the transcription
/// against `v(R)`, and checks the chain `v(m) + K + v(J) ⊆ [6,∞)² ⊆ v(R)`
/// together with two spot checks.
pub fn two_branch_report(fixture: &str) -> Result<TwoBranchReport, Error> {
    let circles = ConeSet::parse(fixture)?;
    let ring = two_branch_ring();

    // Transcription sanity: below the corner the circled points must be new.
    for x in 0..16 {
        for y in 0..16 {
            if circles.contains((x, y)) && !(x >= 6 && y >= 6) && ring.contains((x, y)) {
                return Err(Error::Fixture(format!(
                    "({}, {}) is circled but already belongs to v(R)",
                    x, y
                )));
            }
        }
    }

    let canonical = ring.union(&circles);
    if !canonical.contains_set(&ring) {
        return Err(Error::Fixture("v(R) is not contained in K".into()));
    }

    let product = two_branch_maximal_ideal()
        .minkowski_sum(&canonical)
        .minkowski_sum(&two_branch_radical());
    let conductor_cone = ConeSet::cone((6, 6));

    let ring_in_canonical = canonical.contains_set(&ring);
    let ring_in_endomorphism_ring = two_branch_endomorphism_ring().contains_set(&ring);
    let product_in_conductor_cone = conductor_cone.contains_set(&product);
    let conductor_cone_in_ring = ring.contains_set(&conductor_cone);
    let gap_above_origin = canonical.contains((0, 1)) && !ring.contains((0, 1));
    let multiplicity_point_in_ring = ring.contains((3, 3));

    Ok(TwoBranchReport {
        ring_in_canonical,
        ring_in_endomorphism_ring,
        product_in_conductor_cone,
        conductor_cone_in_ring,
        gap_above_origin,
        multiplicity_point_in_ring,
        verified: ring_in_canonical
            && ring_in_endomorphism_ring
            && product_in_conductor_cone
            && conductor_cone_in_ring
            && gap_above_origin
            && multiplicity_point_in_ring,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translate_by_zero_is_identity() {
        let a = two_branch_ring();
        assert_eq!(a.translate((0, 0)), a);
        let b = a.translate((2, 5));
        assert!(b.contains((2, 5)));
        assert!(!b.contains((0, 0)));
    }

    #[test]
    fn maximal_ideal_plus_radical_is_conductor_cone() {
        let sum = two_branch_maximal_ideal().minkowski_sum(&two_branch_radical());
        assert_eq!(sum, ConeSet::cone((6, 6)));
    }

    #[test]
    fn idempotent_example() {
        let d = ConeSet::from_parts([(0, 0)], [], [], (3, 3));
        assert_eq!(d.minkowski_sum(&d), d);
    }

    #[test]
    fn containment_examples() {
        let ring = two_branch_ring();
        assert!(ring.contains_set(&ConeSet::cone((6, 6))));
        assert!(ring.contains_set(&ring));

        let endo = two_branch_endomorphism_ring();
        assert!(endo.contains_set(&ring));
        assert!(!ring.contains_set(&endo));
        assert!(endo.contains((3, 0)));
        assert!(!ring.contains((3, 0)));
    }

    #[test]
    fn sum_is_commutative_and_associative_on_fixtures() {
        let m = two_branch_maximal_ideal();
        let k = two_branch_ring().union(&ConeSet::parse(CANONICAL_FIXTURE).unwrap());
        let j = two_branch_radical();
        assert_eq!(m.minkowski_sum(&k), k.minkowski_sum(&m));
        assert_eq!(m.minkowski_sum(&j), j.minkowski_sum(&m));
        assert_eq!(
            m.minkowski_sum(&k).minkowski_sum(&j),
            m.minkowski_sum(&k.minkowski_sum(&j))
        );
    }

    #[test]
    fn canonical_value_set_structure() {
        let k = two_branch_ring().union(&ConeSet::parse(CANONICAL_FIXTURE).unwrap());
        assert!(k.contains((0, 0)));
        assert!(k.contains((0, 1)));
        assert!(k.contains((5, 5)));
        assert!(k.contains((5, 4)));
        assert!(k.contains((13, 0)));
        assert!(k.contains((4, 9)));
        assert!(!k.contains((2, 0)));
        assert!(!k.contains((5, 7)));
        assert!(!k.contains((7, 5)));
        // symmetric under swapping the branches
        for x in 0..20 {
            for y in 0..20 {
                assert_eq!(k.contains((x, y)), k.contains((y, x)));
            }
        }
    }

    #[test]
    fn triple_product_is_exactly_the_conductor_cone() {
        let k = two_branch_ring().union(&ConeSet::parse(CANONICAL_FIXTURE).unwrap());
        let product = two_branch_maximal_ideal()
            .minkowski_sum(&k)
            .minkowski_sum(&two_branch_radical());
        assert_eq!(product, ConeSet::cone((6, 6)));
    }

    #[test]
    fn report_verifies() {
        let report = two_branch_report(CANONICAL_FIXTURE).unwrap();
        assert!(report.verified, "{:?}", report);
        assert!(report.gap_above_origin);
        assert!(report.multiplicity_point_in_ring);
        assert_eq!(report.verdict(), "gAGL containment verified");
    }

    #[test]
    fn parse_rejects_bad_fixtures() {
        assert!(matches!(ConeSet::parse("1 2\n"), Err(Error::Fixture(_))));
        assert!(matches!(
            ConeSet::parse("corner 1 2\nrow x 3\n"),
            Err(Error::Fixture(_))
        ));
        // a circled point that collides with v(R) must be rejected
        let bad = "3 3\ncorner 6 6\n";
        assert!(matches!(two_branch_report(bad), Err(Error::Fixture(_))));
    }
}

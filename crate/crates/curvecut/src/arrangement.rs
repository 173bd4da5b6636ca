//! Arrangement of a translate family: vertices, edges, and k-levels.
//!
//! An edge is a maximal vertex-free open arc of one curve; all points of an
//! edge have the same level (number of family curves strictly below), so the
//! level is stored per edge. Levels are computed by walking each curve left
//! to right: the level of its leftmost edge is known in closed form, and it
//! changes by exactly one at each vertex.
//!
//! Degenerate inputs (triple points) are accepted: coincident vertices on a
//! curve are ordered by the other curve's index, which yields a consistent
//! combinatorial structure with zero-length edges. `general_position_issue`
//! reports whether the input needs that tie-breaking.

use std::collections::BTreeMap;
use std::fmt;

use crate::geometry::{intersect, CurveFamily, Point, Translate};
use crate::num::{rat_int, Ext, Scalar};
use crate::Rat;

/// Intersection point of two family curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub location: Point<Rat>,
    /// Indices of the two curves meeting here, smaller first.
    pub curves: (usize, usize),
}

/// A maximal vertex-free open arc of one curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub curve: usize,
    pub x_lo: Ext,
    pub x_hi: Ext,
    pub level: usize,
}

impl Edge {
    /// Deterministic interior x used for sampling: midpoint for bounded
    /// edges, one unit beyond the nearest vertex for unbounded ones, and
    /// zero for a full-line edge.
    pub fn sample_x(&self) -> Rat {
        match (&self.x_lo, &self.x_hi) {
            (Ext::Fin(a), Ext::Fin(b)) => Rat::midpoint(a, b),
            (Ext::NegInf, Ext::Fin(b)) => b.clone() - rat_int(1),
            (Ext::Fin(a), Ext::PosInf) => a.clone() + rat_int(1),
            (Ext::NegInf, Ext::PosInf) => rat_int(0),
            _ => unreachable!("edge with inverted bounds"),
        }
    }

    pub fn contains_x(&self, x: &Rat) -> bool {
        self.x_lo < Ext::Fin(x.clone()) && Ext::Fin(x.clone()) < self.x_hi
    }
}

/// The level-k chain: all edges of level k in left-to-right order.
#[derive(Clone, Debug)]
pub struct LevelChain {
    pub k: usize,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PositionIssue {
    /// Two translates with equal horizontal shift never intersect.
    VerticalShiftPair(usize, usize),
    /// Three or more curves through one point.
    TriplePoint { location: Point<Rat>, curves: Vec<usize> },
}

impl fmt::Display for PositionIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PositionIssue::VerticalShiftPair(i, j) => {
                write!(f, "curves {i} and {j} are vertical shifts of each other")
            }
            PositionIssue::TriplePoint { location, curves } => {
                write!(f, "curves {curves:?} all pass through {location}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    family: CurveFamily<Rat>,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    /// Edge indices per level, `levels[k]` for `0 <= k <= n-1`.
    levels: Vec<Vec<usize>>,
}

/// First violation of general position, if any.
pub fn general_position_issue(fam: &CurveFamily<Rat>) -> Option<PositionIssue> {
    let n = fam.len();
    let mut by_shift: Vec<usize> = (0..n).collect();
    by_shift.sort_by(|&i, &j| fam.curve(i).cmp(fam.curve(j)));
    for w in by_shift.windows(2) {
        if fam.curve(w[0]).a == fam.curve(w[1]).a {
            let (i, j) = (w[0].min(w[1]), w[0].max(w[1]));
            return Some(PositionIssue::VerticalShiftPair(i, j));
        }
    }
    let mut through: BTreeMap<Point<Rat>, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if let Some(p) = intersect(fam.curve(i), fam.curve(j)).expect("distinct curves") {
                let entry = through.entry(p).or_default();
                for c in [i, j] {
                    if !entry.contains(&c) {
                        entry.push(c);
                    }
                }
            }
        }
    }
    through
        .into_iter()
        .find(|(_, curves)| curves.len() >= 3)
        .map(|(location, curves)| PositionIssue::TriplePoint { location, curves })
}

pub fn is_general_position(fam: &CurveFamily<Rat>) -> bool {
    general_position_issue(fam).is_none()
}

/// Build the full arrangement: all pairwise intersections, every curve
/// partitioned into edges at its vertices, each edge labeled with its level.
pub fn build_arrangement(fam: &CurveFamily<Rat>) -> Arrangement {
    let n = fam.len();
    let mut vertices = Vec::new();
    // crossings[i] lists (x, other curve, vertex id) along curve i.
    let mut crossings: Vec<Vec<(Rat, usize, usize)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            if let Some(p) = intersect(fam.curve(i), fam.curve(j)).expect("distinct curves") {
                let v = vertices.len();
                crossings[i].push((p.x.clone(), j, v));
                crossings[j].push((p.x.clone(), i, v));
                vertices.push(Vertex { location: p, curves: (i, j) });
            }
        }
    }

    let mut edges = Vec::new();
    let mut levels: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let ci = fam.curve(i);
        // Coincident vertices are ordered by the other curve's index.
        crossings[i].sort_by(|p, q| p.0.cmp(&q.0).then(p.1.cmp(&q.1)));

        // Level of the leftmost edge: curves below curve i as x -> -inf.
        let mut level = (0..n)
            .filter(|&j| j != i)
            .filter(|&j| {
                let cj = fam.curve(j);
                cj.a < ci.a || (cj.a == ci.a && cj.b < ci.b)
            })
            .count();

        let mut x_lo: Ext = Ext::NegInf;
        for (x, j, _) in &crossings[i] {
            let id = edges.len();
            edges.push(Edge { curve: i, x_lo, x_hi: Ext::Fin(x.clone()), level });
            levels[level].push(id);
            x_lo = Ext::Fin(x.clone());
            // Crossing curve j: it moves below curve i afterwards iff its
            // horizontal shift is larger (the value gap is linear in x).
            if fam.curve(*j).a > ci.a {
                level += 1;
            } else {
                level -= 1;
            }
        }
        let id = edges.len();
        edges.push(Edge { curve: i, x_lo, x_hi: Ext::PosInf, level });
        levels[level].push(id);
    }

    Arrangement { family: fam.clone(), vertices, edges, levels }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelOutOfRange {
    pub k: usize,
    pub n: usize,
}

impl fmt::Display for LevelOutOfRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "level {} out of range for {} curves", self.k, self.n)
    }
}

impl std::error::Error for LevelOutOfRange {}

impl Arrangement {
    pub fn family(&self) -> &CurveFamily<Rat> {
        &self.family
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    /// All edges of level `k`, left to right.
    pub fn compute_level(&self, k: usize) -> Result<LevelChain, LevelOutOfRange> {
        let n = self.family.len();
        if k >= n {
            return Err(LevelOutOfRange { k, n });
        }
        let mut edges: Vec<Edge> = self.levels[k].iter().map(|&e| self.edges[e].clone()).collect();
        edges.sort_by(|a, b| (&a.x_lo, &a.x_hi).cmp(&(&b.x_lo, &b.x_hi)));
        Ok(LevelChain { k, edges })
    }

    /// A point on the interior of an edge.
    pub fn edge_point(&self, edge: &Edge) -> Point<Rat> {
        let x = edge.sample_x();
        let y = crate::geometry::curve_eval(self.family.curve(edge.curve), &x);
        Point::new(x, y)
    }
}

/// Convenience: the arrangement dump needs curve references alongside edges.
pub fn edge_curve<'a>(fam: &'a CurveFamily<Rat>, e: &Edge) -> &'a Translate<Rat> {
    fam.curve(e.curve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::level_of_point;
    use crate::num::rat;
    use proptest::prelude::*;

    fn t(a: i64, b: i64) -> Translate<Rat> {
        Translate::new(rat(a, 1), rat(b, 1))
    }

    fn fam(ts: Vec<Translate<Rat>>) -> CurveFamily<Rat> {
        CurveFamily::new(ts).unwrap()
    }

    #[test]
    fn two_crossing_curves() {
        let f = fam(vec![t(0, 0), t(2, 0)]);
        let arr = build_arrangement(&f);
        assert_eq!(arr.vertices().len(), 1);
        assert_eq!(arr.vertices()[0].location, Point::new(rat(1, 1), rat(1, 1)));
        assert_eq!(arr.edges().len(), 4);
        // Levels agree with direct counting at sampled interior points.
        for e in arr.edges() {
            let p = arr.edge_point(e);
            assert_eq!(e.level, level_of_point(&p, &f));
        }
        assert_eq!(arr.level_sizes(), vec![2, 2]);
    }

    #[test]
    fn vertical_shifts_never_meet() {
        let f = fam(vec![t(0, 0), t(0, 1)]);
        let arr = build_arrangement(&f);
        assert_eq!(arr.vertices().len(), 0);
        assert_eq!(arr.edges().len(), 2);
        let chain = arr.compute_level(0).unwrap();
        assert_eq!(chain.edges.len(), 1);
        assert_eq!(chain.edges[0].curve, 0);
        assert_eq!((&chain.edges[0].x_lo, &chain.edges[0].x_hi), (&Ext::NegInf, &Ext::PosInf));
    }

    #[test]
    fn five_generic_curves_have_full_counts() {
        let f = fam(vec![t(0, 0), t(3, 1), t(7, -2), t(12, 5), t(20, 3)]);
        assert!(is_general_position(&f));
        let arr = build_arrangement(&f);
        assert_eq!(arr.vertices().len(), 10);
        assert_eq!(arr.edges().len(), 25);
        // Level chains partition the edge set.
        assert_eq!(arr.level_sizes().iter().sum::<usize>(), 25);
    }

    #[test]
    fn lower_envelope_of_two_crossing_curves() {
        let f = fam(vec![t(0, 0), t(2, 0)]);
        let arr = build_arrangement(&f);
        let e0 = arr.compute_level(0).unwrap();
        assert_eq!(e0.edges.len(), 2);
        assert_eq!(e0.edges[0].curve, 0);
        assert_eq!(e0.edges[1].curve, 1);
        assert_eq!(e0.edges[0].x_hi, Ext::Fin(rat(1, 1)));
        let e1 = arr.compute_level(1).unwrap();
        assert_eq!(e1.edges[0].curve, 1);
        assert_eq!(e1.edges[1].curve, 0);
        assert!(arr.compute_level(2).is_err());
    }

    #[test]
    fn general_position_issues() {
        assert_eq!(
            general_position_issue(&fam(vec![t(0, 0), t(0, 1)])),
            Some(PositionIssue::VerticalShiftPair(0, 1))
        );
        // (0,0) and (2,0) meet at (1,1), which also lies on curve (1,1).
        match general_position_issue(&fam(vec![t(0, 0), t(2, 0), t(1, 1)])) {
            Some(PositionIssue::TriplePoint { location, curves }) => {
                assert_eq!(location, Point::new(rat(1, 1), rat(1, 1)));
                assert_eq!(curves, vec![0, 1, 2]);
            }
            other => panic!("expected triple point, got {other:?}"),
        }
        assert!(is_general_position(&fam(vec![t(0, 0), t(2, 0), t(4, 0)])));
    }

    #[test]
    fn triple_point_input_still_builds_consistently() {
        let f = fam(vec![t(0, 0), t(2, 0), t(1, 1)]);
        let arr = build_arrangement(&f);
        assert_eq!(arr.vertices().len(), 3);
        assert_eq!(arr.edges().len(), 9);
        assert_eq!(arr.level_sizes().iter().sum::<usize>(), 9);
        // Edges identity: n + 2 * vertices.
        assert_eq!(arr.edges().len(), f.len() + 2 * arr.vertices().len());
    }

    #[test]
    fn chains_are_contiguous_and_span_all_x() {
        let f = fam(vec![t(0, 0), t(3, 1), t(7, -2), t(12, 5)]);
        let arr = build_arrangement(&f);
        for k in 0..f.len() {
            let chain = arr.compute_level(k).unwrap();
            assert_eq!(chain.edges.first().unwrap().x_lo, Ext::NegInf);
            assert_eq!(chain.edges.last().unwrap().x_hi, Ext::PosInf);
            for w in chain.edges.windows(2) {
                assert_eq!(w[0].x_hi, w[1].x_lo);
            }
        }
    }

    fn generic_family(n: usize, seed: i64) -> CurveFamily<Rat> {
        // Deterministic spread-out shifts; quadratic spacing avoids
        // vertical shifts and triple points for the sizes used here.
        let ts = (0..n as i64)
            .map(|i| t(i * i + i * seed % 7, (i * 13 + seed) % 11 - 5))
            .collect();
        fam(ts)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn edge_levels_constant_along_interior(n in 2usize..7, seed in 0i64..50) {
            let f = generic_family(n, seed);
            let arr = build_arrangement(&f);
            for e in arr.edges() {
                // Sample three interior x values where the edge is wide
                // enough; levels must agree with direct counting.
                let xs = match (&e.x_lo, &e.x_hi) {
                    (Ext::Fin(a), Ext::Fin(b)) => {
                        let third = (b.clone() - a.clone()) / rat(3, 1);
                        vec![
                            a.clone() + third.clone() / rat(2, 1),
                            Rat::midpoint(a, b),
                            b.clone() - third / rat(2, 1),
                        ]
                    }
                    _ => vec![e.sample_x()],
                };
                for x in xs {
                    let p = Point::new(
                        x.clone(),
                        crate::geometry::curve_eval(f.curve(e.curve), &x),
                    );
                    prop_assert_eq!(e.level, level_of_point(&p, &f));
                }
            }
        }

        #[test]
        fn counts_match_general_position_identities(n in 2usize..7, seed in 0i64..50) {
            let f = generic_family(n, seed);
            prop_assume!(is_general_position(&f));
            let arr = build_arrangement(&f);
            prop_assert_eq!(arr.vertices().len(), n * (n - 1) / 2);
            prop_assert_eq!(arr.edges().len(), n * n);
            prop_assert_eq!(arr.level_sizes().iter().sum::<usize>(), n * n);
        }
    }
}

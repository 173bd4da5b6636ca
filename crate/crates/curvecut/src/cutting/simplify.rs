//! Level q-simplifications and verification of their three properties:
//! few curves cross any level portion between consecutive corner samples,
//! few curves cross any replacement arc, and the whole simplification stays
//! within the `ceil(q/2)` level band.

use crate::arrangement::{Arrangement, LevelChain};
use crate::geometry::{curve_eval, curve_through, intersect, level_of_point, Point};
use crate::num::{rat_int, Ext};
use crate::Rat;

use super::{Piece, Simplification};

/// Build the q-simplification of a level chain.
///
/// One sample point is taken on every edge (midpoint in x for bounded
/// edges, one unit beyond the vertex for unbounded ones); arcs join every
/// q-th sample, with a final short arc to the last sample, plus the two
/// unbounded parts of the outer edges. A single-edge chain is kept as is.
pub fn q_simplify(arr: &Arrangement, chain: &LevelChain, q: usize) -> Simplification {
    assert!(q >= 2, "simplification needs q >= 2");
    let samples: Vec<Point<Rat>> = chain.edges.iter().map(|e| arr.edge_point(e)).collect();
    let t = chain.edges.len() - 1;

    if t == 0 {
        let e = &chain.edges[0];
        let piece = Piece {
            translate: arr.family().curve(e.curve).clone(),
            x_lo: e.x_lo.clone(),
            x_hi: e.x_hi.clone(),
        };
        return Simplification {
            k: chain.k,
            sample_points: samples,
            pieces: vec![piece],
            junctions: Vec::new(),
            junction_edges: Vec::new(),
            arc_span: (0, 0),
        };
    }

    let mut junction_edges = vec![0usize];
    let mut j = 1;
    while j * q <= t - 1 {
        junction_edges.push(j * q);
        j += 1;
    }
    junction_edges.push(t);

    let mut pieces = Vec::with_capacity(junction_edges.len() + 1);
    pieces.push(Piece {
        translate: arr.family().curve(chain.edges[0].curve).clone(),
        x_lo: chain.edges[0].x_lo.clone(),
        x_hi: Ext::Fin(samples[0].x.clone()),
    });
    for w in junction_edges.windows(2) {
        let (u, v) = (w[0], w[1]);
        assert!(
            samples[u].x != samples[v].x,
            "sample points vertically aligned; level edges must occupy disjoint x-intervals"
        );
        let translate = curve_through(&samples[u], &samples[v])
            .expect("distinct samples")
            .expect("samples never share an x-coordinate");
        pieces.push(Piece {
            translate,
            x_lo: Ext::Fin(samples[u].x.clone()),
            x_hi: Ext::Fin(samples[v].x.clone()),
        });
    }
    pieces.push(Piece {
        translate: arr.family().curve(chain.edges[t].curve).clone(),
        x_lo: Ext::Fin(samples[t].x.clone()),
        x_hi: chain.edges[t].x_hi.clone(),
    });

    let junctions = junction_edges.iter().map(|&i| samples[i].x.clone()).collect();
    let arc_span = (1, pieces.len() - 1);
    Simplification {
        k: chain.k,
        sample_points: samples,
        pieces,
        junctions,
        junction_edges,
        arc_span,
    }
}

/// Verification report for one level's simplification.
#[derive(Clone, Debug)]
pub struct SimpReport {
    pub k: usize,
    pub q: usize,
    /// Max curves crossing any level portion between consecutive corners.
    pub portion_max: usize,
    /// Max curves crossing any replacement arc.
    pub arc_max: usize,
    /// Observed level range along the simplification.
    pub level_min: usize,
    pub level_max: usize,
    pub band_lo: usize,
    pub band_hi: usize,
    pub pass_portion: bool,
    pub pass_arc: bool,
    pub pass_band: bool,
}

impl SimpReport {
    pub fn pass(&self) -> bool {
        self.pass_portion && self.pass_arc && self.pass_band
    }
}

fn x_in_closed(x: &Rat, lo: &Ext, hi: &Ext) -> bool {
    *lo <= Ext::Fin(x.clone()) && Ext::Fin(x.clone()) <= *hi
}

/// Interior sample of an open sub-interval on the extended line.
fn gap_sample(lo: &Ext, hi: &Ext) -> Rat {
    match (lo, hi) {
        (Ext::Fin(a), Ext::Fin(b)) => Rat::midpoint(a, b),
        (Ext::NegInf, Ext::Fin(b)) => b.clone() - rat_int(1),
        (Ext::Fin(a), Ext::PosInf) => a.clone() + rat_int(1),
        (Ext::NegInf, Ext::PosInf) => rat_int(0),
        _ => unreachable!("inverted gap"),
    }
}

/// Check the three simplification properties by exact intersection tests.
///
/// Crossing counts are exhaustive: every family curve is intersected with
/// every sub-piece. The level band is checked at a point of every
/// crossing-free gap along each piece, which is exhaustive because the
/// level is constant between crossings.
pub fn verify_simpprop(
    arr: &Arrangement,
    chain: &LevelChain,
    simp: &Simplification,
    q: usize,
) -> SimpReport {
    let fam = arr.family();
    let n = fam.len();
    let half = q.div_ceil(2);
    let band_lo = simp.k.saturating_sub(half);
    let band_hi = simp.k + half;

    // (i) level portions between consecutive corner samples.
    let mut portion_max = 0usize;
    for w in simp.junction_edges.windows(2) {
        let (u, v) = (w[0], w[1]);
        let mut sub: Vec<(usize, Ext, Ext)> = Vec::new();
        sub.push((
            chain.edges[u].curve,
            Ext::Fin(simp.sample_points[u].x.clone()),
            chain.edges[u].x_hi.clone(),
        ));
        for e in &chain.edges[u + 1..v] {
            sub.push((e.curve, e.x_lo.clone(), e.x_hi.clone()));
        }
        sub.push((
            chain.edges[v].curve,
            chain.edges[v].x_lo.clone(),
            Ext::Fin(simp.sample_points[v].x.clone()),
        ));
        let count = (0..n)
            .filter(|&c| {
                sub.iter().any(|(kappa, lo, hi)| {
                    c != *kappa
                        && matches!(
                            intersect(fam.curve(c), fam.curve(*kappa)),
                            Ok(Some(p)) if x_in_closed(&p.x, lo, hi)
                        )
                })
            })
            .count();
        portion_max = portion_max.max(count);
    }

    // (ii) replacement arcs.
    let mut arc_max = 0usize;
    for arc in simp.arcs() {
        let count = (0..n)
            .filter(|&c| {
                fam.curve(c) != &arc.translate
                    && matches!(
                        intersect(fam.curve(c), &arc.translate),
                        Ok(Some(p)) if x_in_closed(&p.x, &arc.x_lo, &arc.x_hi)
                    )
            })
            .count();
        arc_max = arc_max.max(count);
    }

    // (iii) level band along every piece.
    let mut level_min = usize::MAX;
    let mut level_max = 0usize;
    for piece in &simp.pieces {
        let mut cuts: Vec<Rat> = (0..n)
            .filter(|&c| fam.curve(c) != &piece.translate)
            .filter_map(|c| intersect(fam.curve(c), &piece.translate).ok().flatten())
            .map(|p| p.x)
            .filter(|x| piece.x_lo < Ext::Fin(x.clone()) && Ext::Fin(x.clone()) < piece.x_hi)
            .collect();
        cuts.sort();
        cuts.dedup();
        let mut bounds = vec![piece.x_lo.clone()];
        bounds.extend(cuts.into_iter().map(Ext::Fin));
        bounds.push(piece.x_hi.clone());
        for w in bounds.windows(2) {
            if w[0] >= w[1] {
                continue;
            }
            let x = gap_sample(&w[0], &w[1]);
            let p = Point::new(x.clone(), curve_eval(&piece.translate, &x));
            let level = level_of_point(&p, fam);
            level_min = level_min.min(level);
            level_max = level_max.max(level);
        }
    }
    if level_min == usize::MAX {
        level_min = simp.k;
        level_max = simp.k;
    }

    SimpReport {
        k: simp.k,
        q,
        portion_max,
        arc_max,
        level_min,
        level_max,
        band_lo,
        band_hi,
        pass_portion: portion_max <= q + 1,
        pass_arc: arc_max <= q + 1,
        pass_band: band_lo <= level_min && level_max <= band_hi,
    }
}

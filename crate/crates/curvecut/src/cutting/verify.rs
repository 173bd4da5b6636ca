//! Exhaustive verification of a built cutting: cell budget, per-cell
//! crossing bounds, chain disjointness, piece budget, simplification
//! properties on sampled levels, and point-location agreement.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::geometry::{intersect, Point};
use crate::num::{rat, Ext};
use crate::Rat;

use super::cells::{curves_crossing_cell, locate, locate_exhaustive};
use super::simplify::{q_simplify, verify_simpprop, SimpReport};
use super::{Branch, Cutting, Piece};

#[derive(Clone, Debug)]
pub struct CutCheck {
    pub n: usize,
    pub r: usize,
    pub q: usize,
    pub offset: usize,
    pub branch: Branch,
    pub cells: usize,
    pub cell_bound: usize,
    pub max_crossing: usize,
    pub cells_ok: bool,
    /// `max_crossing <= n / r`, compared exactly.
    pub crossing_nr_ok: bool,
    /// `max_crossing <= 3q + 2` (strips branch only; vacuous otherwise).
    pub crossing_3q2_ok: bool,
    /// Adjacent simplifications share no point (strips branch; exact level
    /// chains legitimately meet at vertices).
    pub chains_disjoint: bool,
    /// Total chain pieces within `n^2/q^2 + 3n/q` (strips branch).
    pub piece_budget_ok: bool,
    /// `locate` agrees with an exhaustive scan on probe points.
    pub locate_ok: bool,
    pub simp_reports: Vec<SimpReport>,
    pub refinements: usize,
}

impl CutCheck {
    pub fn pass(&self) -> bool {
        self.cells_ok
            && self.crossing_nr_ok
            && self.crossing_3q2_ok
            && self.chains_disjoint
            && self.piece_budget_ok
            && self.locate_ok
            && self.simp_reports.iter().all(|r| r.pass())
    }
}

/// Closed x-intervals overlap.
fn closed_overlap(a: (&Ext, &Ext), b: (&Ext, &Ext)) -> bool {
    a.0.max(b.0) <= a.1.min(b.1)
}

fn pieces_share_point(p: &Piece, q: &Piece) -> bool {
    if p.translate == q.translate {
        return closed_overlap((&p.x_lo, &p.x_hi), (&q.x_lo, &q.x_hi));
    }
    match intersect(&p.translate, &q.translate) {
        Ok(Some(z)) => {
            let x = Ext::Fin(z.x);
            p.x_lo <= x && x <= p.x_hi && q.x_lo <= x && x <= q.x_hi
        }
        _ => false,
    }
}

fn adjacent_chains_disjoint(cut: &Cutting) -> bool {
    cut.chains.windows(2).all(|w| {
        w[0].pieces
            .iter()
            .all(|p| w[1].pieces.iter().all(|q| !pieces_share_point(p, q)))
    })
}

fn piece_budget_ok(cut: &Cutting) -> bool {
    let n = cut.family.len();
    let q = cut.q;
    let total: usize = cut.chains.iter().map(|c| c.pieces.len()).sum();
    // total <= n^2/q^2 + 3n/q, cleared of denominators.
    total * q * q <= n * n + 3 * n * q
}

fn locate_spot_check(cut: &Cutting, probes: usize) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    // Probe window around the family's coefficient range.
    let spread = cut
        .family
        .translates()
        .iter()
        .flat_map(|t| [t.a.clone().abs(), t.b.clone().abs()])
        .max()
        .map(|m| m.ceil().to_integer())
        .unwrap_or_default();
    let bound: i64 = 10 + 2 * TryInto::<i64>::try_into(spread).unwrap_or(1_000);
    for _ in 0..probes {
        let x = rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=7));
        let y = rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=7));
        let p = Point::new(x, y);
        if locate(cut, &p) != locate_exhaustive(cut, &p) {
            return false;
        }
    }
    // Chain points and wall points must be boundary.
    for chain in cut.chains.iter().take(3) {
        if let Some(x) = chain.junctions.first() {
            let p = Point::new(x.clone(), chain.eval(x));
            if locate(cut, &p) != super::cells::Location::Boundary {
                return false;
            }
        }
    }
    true
}

/// Run every check; `simp_levels` selects levels for the simplification
/// property reports (strips branch only, built at the cutting's own q).
pub fn verify_cutting(cut: &Cutting, simp_levels: &[usize]) -> CutCheck {
    let n = cut.family.len();
    let r = cut.r;
    let max_crossing = cut
        .cells
        .par_iter()
        .map(|cell| curves_crossing_cell(cell, &cut.family).len())
        .max()
        .unwrap_or(0);

    let strips = cut.branch == Branch::Strips;
    let simp_reports = if strips {
        let arr = cut.arrangement();
        let mut levels: Vec<usize> = simp_levels.iter().copied().filter(|&k| k < n).collect();
        levels.sort();
        levels.dedup();
        levels
            .into_iter()
            .map(|k| {
                let chain = arr.compute_level(k).expect("level in range");
                let simp = q_simplify(arr, &chain, cut.q);
                verify_simpprop(arr, &chain, &simp, cut.q)
            })
            .collect()
    } else {
        Vec::new()
    };

    CutCheck {
        n,
        r,
        q: cut.q,
        offset: cut.offset,
        branch: cut.branch,
        cells: cut.cells.len(),
        cell_bound: cut.cell_bound(),
        max_crossing,
        cells_ok: cut.cells.len() <= cut.cell_bound(),
        crossing_nr_ok: max_crossing * r <= n,
        crossing_3q2_ok: !strips || max_crossing <= 3 * cut.q + 2,
        chains_disjoint: !strips || adjacent_chains_disjoint(cut),
        piece_budget_ok: !strips || piece_budget_ok(cut),
        locate_ok: locate_spot_check(cut, 100),
        simp_reports,
        refinements: cut.refinements,
    }
}

//! Difference sets and generalized arithmetic progression fitting over
//! rational plane vectors.
//!
//! A progression is `{ base + x1 g1 + ... + xd gd : 0 <= xi < Li }` with
//! dimension `d <= 2` here (translate vectors live in the plane). Fitting
//! tries the most popular difference vectors as generators; for small sets
//! every difference is tried, which makes the search exhaustive.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::geometry::Translate;
use crate::num::rat_int;
use crate::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Progression {
    pub base: Translate<Rat>,
    pub generators: Vec<Translate<Rat>>,
    pub lengths: Vec<u64>,
}

impl Progression {
    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn size(&self) -> u128 {
        self.lengths.iter().map(|&l| l as u128).product()
    }

    /// All elements, row-major. Intended for small progressions.
    pub fn elements(&self) -> Vec<Translate<Rat>> {
        let mut out = vec![self.base.clone()];
        for (g, &len) in self.generators.iter().zip(&self.lengths) {
            let mut next = Vec::with_capacity(out.len() * len as usize);
            for e in &out {
                let mut cur = e.clone();
                for _ in 0..len {
                    next.push(cur.clone());
                    cur = cur.add(g);
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "base {} + ", self.base)?;
        for (g, l) in self.generators.iter().zip(&self.lengths) {
            write!(f, "[0,{l}) * {g} ")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdditiveError {
    EmptyInput,
    DuplicateElement(usize, usize),
    DimensionUnsupported(usize),
}

impl fmt::Display for AdditiveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdditiveError::EmptyInput => write!(f, "input set must be nonempty"),
            AdditiveError::DuplicateElement(i, j) => {
                write!(f, "elements {i} and {j} are equal")
            }
            AdditiveError::DimensionUnsupported(d) => {
                write!(f, "progressions of dimension {d} > 2 are unsupported")
            }
        }
    }
}

impl std::error::Error for AdditiveError {}

fn check_set(a: &[Translate<Rat>]) -> Result<(), AdditiveError> {
    if a.is_empty() {
        return Err(AdditiveError::EmptyInput);
    }
    let mut seen: BTreeMap<&Translate<Rat>, usize> = BTreeMap::new();
    for (i, v) in a.iter().enumerate() {
        if let Some(&j) = seen.get(v) {
            return Err(AdditiveError::DuplicateElement(j, i));
        }
        seen.insert(v, i);
    }
    Ok(())
}

/// Exact difference set `{a - a' : a, a' in A}` (zero included) and the
/// doubling ratio `|A - A| / |A|`.
pub fn difference_set(
    a: &[Translate<Rat>],
) -> Result<(BTreeSet<Translate<Rat>>, Rat), AdditiveError> {
    check_set(a)?;
    let mut diffs = BTreeSet::new();
    for x in a {
        for y in a {
            diffs.insert(x.sub(y));
        }
    }
    let ratio = Rat::from_integer(diffs.len().into()) / Rat::from_integer(a.len().into());
    Ok((diffs, ratio))
}

fn is_nonneg_integer_below(x: &Rat, len: u64) -> Option<u64> {
    if !x.is_integer() || x.is_negative() {
        return None;
    }
    let v = x.to_integer();
    let len_big: num_bigint::BigInt = len.into();
    (v < len_big).then(|| {
        use num_traits::ToPrimitive;
        v.to_u64().expect("bounded by len")
    })
}

/// Exact membership test, dimension at most 2.
pub fn gap_contains(g: &Progression, v: &Translate<Rat>) -> Result<bool, AdditiveError> {
    let d = g.dimension();
    if d > 2 {
        return Err(AdditiveError::DimensionUnsupported(d));
    }
    let delta = v.sub(&g.base);
    match d {
        0 => Ok(delta.a.is_zero() && delta.b.is_zero()),
        1 => {
            let g1 = &g.generators[0];
            Ok(solve_1d(&delta, g1)
                .and_then(|x| is_nonneg_integer_below(&x, g.lengths[0]))
                .is_some())
        }
        _ => {
            let (g1, g2) = (&g.generators[0], &g.generators[1]);
            let det = g1.a.clone() * g2.b.clone() - g1.b.clone() * g2.a.clone();
            if det.is_zero() {
                // Collinear generators: enumerate the first coordinate.
                for x1 in 0..g.lengths[0] {
                    let step = Translate::new(
                        g1.a.clone() * rat_int(x1 as i64),
                        g1.b.clone() * rat_int(x1 as i64),
                    );
                    let rest = delta.sub(&step);
                    if solve_1d(&rest, g2)
                        .and_then(|x| is_nonneg_integer_below(&x, g.lengths[1]))
                        .is_some()
                    {
                        return Ok(true);
                    }
                }
                Ok(false)
            } else {
                let x = (delta.a.clone() * g2.b.clone() - delta.b.clone() * g2.a.clone())
                    / det.clone();
                let y = (g1.a.clone() * delta.b.clone() - g1.b.clone() * delta.a.clone()) / det;
                Ok(is_nonneg_integer_below(&x, g.lengths[0]).is_some()
                    && is_nonneg_integer_below(&y, g.lengths[1]).is_some())
            }
        }
    }
}

/// Solve `delta = x * g` for scalar x, if consistent.
fn solve_1d(delta: &Translate<Rat>, g: &Translate<Rat>) -> Option<Rat> {
    if g.a.is_zero() && g.b.is_zero() {
        return (delta.a.is_zero() && delta.b.is_zero()).then(|| rat_int(0));
    }
    let x = if !g.a.is_zero() {
        delta.a.clone() / g.a.clone()
    } else {
        delta.b.clone() / g.b.clone()
    };
    let consistent = delta.a == x.clone() * g.a.clone() && delta.b == x.clone() * g.b.clone();
    consistent.then_some(x)
}

/// Coverage requirement for fitting.
#[derive(Clone, Debug, PartialEq)]
pub enum Coverage {
    /// Every element must lie in the progression.
    Full,
    /// At least this fraction of elements must lie in it.
    Fraction(Rat),
}

#[derive(Clone, Debug)]
pub struct FitOptions {
    pub d_max: usize,
    pub size_cap: u128,
    pub coverage: Coverage,
    /// Try every difference as a generator instead of the most popular
    /// ones. Defaults to automatic for sets of at most 12 elements.
    pub exact: Option<bool>,
}

impl FitOptions {
    pub fn new(d_max: usize, size_cap: u128) -> Self {
        FitOptions { d_max, size_cap, coverage: Coverage::Full, exact: None }
    }
}

#[derive(Clone, Debug)]
pub struct Fit {
    pub progression: Progression,
    pub covered: usize,
}

/// How many candidate generators the popularity heuristic keeps.
const POPULAR_CANDIDATES: usize = 20;

fn lex_positive(v: &Translate<Rat>) -> Translate<Rat> {
    if v.a.is_negative() || (v.a.is_zero() && v.b.is_negative()) {
        v.neg()
    } else {
        v.clone()
    }
}

/// Candidate generators: nonzero difference vectors, canonicalized up to
/// sign, ranked by popularity (all of them in exact mode).
fn candidate_generators(a: &[Translate<Rat>], exact: bool) -> Vec<Translate<Rat>> {
    let mut counts: BTreeMap<Translate<Rat>, usize> = BTreeMap::new();
    for x in a {
        for y in a {
            if x != y {
                *counts.entry(lex_positive(&x.sub(y))).or_default() += 1;
            }
        }
    }
    let mut ranked: Vec<(usize, Translate<Rat>)> =
        counts.into_iter().map(|(g, c)| (c, g)).collect();
    ranked.sort_by(|(c1, g1), (c2, g2)| c2.cmp(c1).then(g1.cmp(g2)));
    let keep = if exact { ranked.len() } else { POPULAR_CANDIDATES.min(ranked.len()) };
    ranked.into_iter().take(keep).map(|(_, g)| g).collect()
}

/// Lattice coordinates of every element with respect to the generators,
/// relative to `a[0]`. Elements whose coordinates are integral relative to
/// one another form cosets; the best fit uses the largest coset.
fn coset_fit(
    a: &[Translate<Rat>],
    generators: &[Translate<Rat>],
    coords: impl Fn(&Translate<Rat>) -> Option<Vec<Rat>>,
    size_cap: u128,
) -> Option<Fit> {
    let mut cosets: BTreeMap<Vec<Rat>, Vec<(usize, Vec<Rat>)>> = BTreeMap::new();
    for (i, v) in a.iter().enumerate() {
        let c = coords(&v.sub(&a[0]))?;
        let key: Vec<Rat> = c.iter().map(|x| x.clone() - x.floor()).collect();
        cosets.entry(key).or_default().push((i, c));
    }
    let best = cosets.into_values().max_by_key(|members| members.len())?;
    let dim = generators.len();
    let mut lengths = Vec::with_capacity(dim);
    let mut mins = Vec::with_capacity(dim);
    for d in 0..dim {
        let min = best.iter().map(|(_, c)| c[d].clone()).min()?;
        let max = best.iter().map(|(_, c)| c[d].clone()).max()?;
        let span = (max - min.clone()).to_integer();
        use num_traits::ToPrimitive;
        let len = span.to_u64()? + 1;
        lengths.push(len);
        mins.push(min);
    }
    let size: u128 = lengths.iter().map(|&l| l as u128).product();
    if size > size_cap {
        return None;
    }
    let mut base = a[0].clone();
    for (g, m) in generators.iter().zip(&mins) {
        base = base.add(&Translate::new(g.a.clone() * m.clone(), g.b.clone() * m.clone()));
    }
    Some(Fit {
        progression: Progression { base, generators: generators.to_vec(), lengths },
        covered: best.len(),
    })
}

trait MinMax0: Iterator {
    fn min0(self) -> Option<Self::Item>;
    fn max0(self) -> Option<Self::Item>;
}

impl<I: Iterator> MinMax0 for I
where
    I::Item: Ord,
{
    fn min0(self) -> Option<Self::Item> {
        self.min()
    }
    fn max0(self) -> Option<Self::Item> {
        self.max()
    }
}

/// Fit a progression of dimension at most `d_max` around `A`.
///
/// Candidate generators are the most popular difference vectors (every
/// difference for small or `exact` inputs). For each candidate tuple, the
/// minimal covering box in the generator lattice is computed; a fit is
/// accepted when it meets the coverage requirement and the size cap. The
/// smallest accepted progression wins (coverage first in fraction mode).
pub fn gap_fit(a: &[Translate<Rat>], opts: &FitOptions) -> Result<Option<Fit>, AdditiveError> {
    check_set(a)?;
    if opts.d_max > 2 {
        return Err(AdditiveError::DimensionUnsupported(opts.d_max));
    }
    let exact = opts.exact.unwrap_or(a.len() <= 12);
    let required = |covered: usize| match &opts.coverage {
        Coverage::Full => covered == a.len(),
        Coverage::Fraction(f) => {
            Rat::from_integer(covered.into()) >= f.clone() * Rat::from_integer(a.len().into())
        }
    };

    let mut fits: Vec<Fit> = Vec::new();
    if a.len() == 1 && opts.size_cap >= 1 {
        fits.push(Fit {
            progression: Progression {
                base: a[0].clone(),
                generators: vec![],
                lengths: vec![],
            },
            covered: 1,
        });
    }

    let candidates = candidate_generators(a, exact);
    if opts.d_max >= 1 {
        for g in &candidates {
            let g1 = g.clone();
            let fit = coset_fit(
                a,
                std::slice::from_ref(g),
                |delta| solve_1d(delta, &g1).map(|x| vec![x]),
                opts.size_cap,
            );
            fits.extend(fit);
        }
    }
    if opts.d_max >= 2 {
        for (i, g1) in candidates.iter().enumerate() {
            for g2 in candidates.iter().skip(i + 1) {
                let det = g1.a.clone() * g2.b.clone() - g1.b.clone() * g2.a.clone();
                if det.is_zero() {
                    continue;
                }
                let (ga, gb, d) = (g1.clone(), g2.clone(), det);
                let fit = coset_fit(
                    a,
                    &[g1.clone(), g2.clone()],
                    |delta| {
                        let x = (delta.a.clone() * gb.b.clone()
                            - delta.b.clone() * gb.a.clone())
                            / d.clone();
                        let y = (ga.a.clone() * delta.b.clone()
                            - ga.b.clone() * delta.a.clone())
                            / d.clone();
                        Some(vec![x, y])
                    },
                    opts.size_cap,
                );
                fits.extend(fit);
            }
        }
    }

    fits.retain(|f| required(f.covered));
    fits.sort_by(|p, q| {
        q.covered
            .cmp(&p.covered)
            .then(p.progression.size().cmp(&q.progression.size()))
            .then(p.progression.dimension().cmp(&q.progression.dimension()))
            .then(p.progression.generators.cmp(&q.progression.generators))
    });
    Ok(fits.into_iter().next())
}

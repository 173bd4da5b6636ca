//! Exact incidence counting between point sets and translate families,
//! unit-distance counting, and an incidence-bound audit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::geometry::{Point, Translate};
use crate::Rat;

/// A counting instance: a point set `P`, base-curve parameters `S` (the
/// point for `s` is `(s, s^2)`), and a translate set `T`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub points: Vec<Point<Rat>>,
    pub s_coords: Vec<Rat>,
    pub translates: Vec<Translate<Rat>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceError {
    DuplicatePoint(usize, usize),
    DuplicateSCoord(usize, usize),
    DuplicateTranslate(usize, usize),
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceError::DuplicatePoint(i, j) => write!(f, "points {i} and {j} are equal"),
            InstanceError::DuplicateSCoord(i, j) => {
                write!(f, "s-coordinates {i} and {j} are equal")
            }
            InstanceError::DuplicateTranslate(i, j) => {
                write!(f, "translates {i} and {j} are equal")
            }
        }
    }
}

impl std::error::Error for InstanceError {}

impl Instance {
    pub fn new(
        points: Vec<Point<Rat>>,
        s_coords: Vec<Rat>,
        translates: Vec<Translate<Rat>>,
    ) -> Result<Self, InstanceError> {
        fn first_dup<T: Ord>(items: &[T]) -> Option<(usize, usize)> {
            let mut seen: BTreeMap<&T, usize> = BTreeMap::new();
            for (i, v) in items.iter().enumerate() {
                if let Some(&j) = seen.get(&v) {
                    return Some((j, i));
                }
                seen.insert(v, i);
            }
            None
        }
        if let Some((i, j)) = first_dup(&points) {
            return Err(InstanceError::DuplicatePoint(i, j));
        }
        if let Some((i, j)) = first_dup(&s_coords) {
            return Err(InstanceError::DuplicateSCoord(i, j));
        }
        if let Some((i, j)) = first_dup(&translates) {
            return Err(InstanceError::DuplicateTranslate(i, j));
        }
        Ok(Instance { points, s_coords, translates })
    }

    /// The point `s + t` for `s` on the base curve.
    pub fn shifted_point(s: &Rat, t: &Translate<Rat>) -> Point<Rat> {
        Point::new(s.clone() + t.a.clone(), s.clone() * s.clone() + t.b.clone())
    }
}

/// Count pairs `(s, t)` with `s + t` landing in `P`, plus per-translate
/// counts. Pairs are counted with multiplicity; distinct landed points are
/// available from [`count_incident_points`].
pub fn count_incidences(inst: &Instance) -> (usize, Vec<usize>) {
    let point_set: BTreeSet<&Point<Rat>> = inst.points.iter().collect();
    let mut per_translate = vec![0usize; inst.translates.len()];
    let mut total = 0usize;
    for (ti, t) in inst.translates.iter().enumerate() {
        for s in &inst.s_coords {
            if point_set.contains(&Instance::shifted_point(s, t)) {
                per_translate[ti] += 1;
                total += 1;
            }
        }
    }
    (total, per_translate)
}

/// Distinct points of `P` covered by `S + T`.
pub fn count_incident_points(inst: &Instance) -> usize {
    let point_set: BTreeSet<&Point<Rat>> = inst.points.iter().collect();
    let mut hit: BTreeSet<Point<Rat>> = BTreeSet::new();
    for t in &inst.translates {
        for s in &inst.s_coords {
            let p = Instance::shifted_point(s, t);
            if point_set.contains(&p) {
                hit.insert(p);
            }
        }
    }
    hit.len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonUnitVector {
    pub index: usize,
}

impl fmt::Display for NonUnitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vector {} does not have exact unit length", self.index)
    }
}

impl std::error::Error for NonUnitVector {}

/// Ordered pairs `(x, y)` of `P x P` with `x - y` in the unit-vector set.
pub fn unit_distance_count(
    points: &[Point<Rat>],
    vectors: &[Translate<Rat>],
) -> Result<usize, NonUnitVector> {
    for (i, u) in vectors.iter().enumerate() {
        let norm = u.a.clone() * u.a.clone() + u.b.clone() * u.b.clone();
        if !norm.is_one() {
            return Err(NonUnitVector { index: i });
        }
    }
    let set: BTreeSet<&Point<Rat>> = points.iter().collect();
    let mut count = 0usize;
    for x in points {
        for u in vectors {
            let y = Point::new(x.x.clone() - u.a.clone(), x.y.clone() - u.b.clone());
            if set.contains(&y) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Result of the incidence-bound audit against
/// `c * (n^{2/3} m^{2/3} + n + m)`.
#[derive(Clone, Debug)]
pub struct StAudit {
    pub points: usize,
    pub pseudolines: usize,
    pub incidences: usize,
    /// `incidences / (n^{2/3} m^{2/3} + n + m)` as a float report value.
    pub ratio: f64,
    pub pass: bool,
}

/// Audit `incidences <= c * (n^{2/3} m^{2/3} + n + m)` exactly: the only
/// irrational term is `(nm)^{2/3}`, so the comparison is cubed.
pub fn st_audit(points: usize, pseudolines: usize, incidences: usize, c: &Rat) -> StAudit {
    assert!(c.is_positive(), "audit constant must be positive");
    let n = Rat::from_integer(points.into());
    let m = Rat::from_integer(pseudolines.into());
    let i = Rat::from_integer(incidences.into());

    // incidences - c(n + m) <= c * (nm)^{2/3}
    let lhs = i.clone() - c.clone() * (n.clone() + m.clone());
    let pass = if lhs.is_positive() {
        let nm = n.clone() * m.clone();
        let c3 = c.clone() * c.clone() * c.clone();
        lhs.clone() * lhs.clone() * lhs <= c3 * nm.clone() * nm
    } else {
        true
    };

    let nf = points as f64;
    let mf = pseudolines as f64;
    let denom = (nf * mf).powf(2.0 / 3.0) + nf + mf;
    let ratio = if denom == 0.0 {
        if incidences == 0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        i.to_f64().unwrap_or(f64::NAN) / denom
    };

    StAudit { points, pseudolines, incidences, ratio, pass }
}

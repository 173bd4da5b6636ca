//! Exact predicates and constructions for translates of the parabola
//! `y = x^2`.
//!
//! A translate `(a, b)` names the curve `y = (x - a)^2 + b`. Two distinct
//! translates intersect exactly once unless they are vertical shifts of each
//! other (`a` equal), in which case they never meet; and through any two
//! points with distinct x-coordinates passes exactly one translate. Both
//! facts have closed rational forms, so every predicate below is exact.

use std::fmt;

use crate::num::Scalar;
use crate::Rat;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Point<T = Rat> {
    pub x: T,
    pub y: T,
}

impl<T> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }
}

impl<T: fmt::Display> fmt::Display for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A translate vector `(a, b)`, doubling as the curve `y = (x-a)^2 + b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Translate<T = Rat> {
    pub a: T,
    pub b: T,
}

impl<T> Translate<T> {
    pub fn new(a: T, b: T) -> Self {
        Translate { a, b }
    }
}

impl<T: Scalar> Translate<T> {
    /// Vector difference of two translates.
    pub fn sub(&self, other: &Self) -> Self {
        Translate::new(
            self.a.clone() - other.a.clone(),
            self.b.clone() - other.b.clone(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Translate::new(
            self.a.clone() + other.a.clone(),
            self.b.clone() + other.b.clone(),
        )
    }

    pub fn neg(&self) -> Self {
        Translate::new(T::zero() - self.a.clone(), T::zero() - self.b.clone())
    }
}

impl<T: fmt::Display> fmt::Display for Translate<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Position of a point relative to a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Below,
    On,
    Above,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometryError {
    /// `intersect` called on the same translate twice.
    IdenticalTranslates,
    /// `curve_through` called on a repeated point.
    CoincidentPoints,
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::IdenticalTranslates => write!(f, "translates are identical"),
            GeometryError::CoincidentPoints => write!(f, "points coincide"),
        }
    }
}

impl std::error::Error for GeometryError {}

/// Evaluate the curve `(x - a)^2 + b` at `x`.
pub fn curve_eval<T: Scalar>(c: &Translate<T>, x: &T) -> T {
    let d = x.clone() - c.a.clone();
    d.clone() * d + c.b.clone()
}

/// Intersection point of two distinct translates.
///
/// Returns `None` for vertical shifts (equal `a`), which never meet. For
/// `a1 != a2` the unique intersection has
/// `x = (a1 + a2)/2 + (b2 - b1) / (2 (a2 - a1))`.
pub fn intersect<T: Scalar>(
    c1: &Translate<T>,
    c2: &Translate<T>,
) -> Result<Option<Point<T>>, GeometryError> {
    if c1 == c2 {
        return Err(GeometryError::IdenticalTranslates);
    }
    if c1.a == c2.a {
        return Ok(None);
    }
    let da = c2.a.clone() - c1.a.clone();
    let x = T::midpoint(&c1.a, &c2.a) + (c2.b.clone() - c1.b.clone()) / (T::two() * da);
    let y = curve_eval(c1, &x);
    Ok(Some(Point::new(x, y)))
}

/// The unique translate through two points, or `None` when they share an
/// x-coordinate (no translate passes through a vertical pair).
pub fn curve_through<T: Scalar>(
    p: &Point<T>,
    q: &Point<T>,
) -> Result<Option<Translate<T>>, GeometryError> {
    if p == q {
        return Err(GeometryError::CoincidentPoints);
    }
    if p.x == q.x {
        return Ok(None);
    }
    let px2 = p.x.clone() * p.x.clone();
    let qx2 = q.x.clone() * q.x.clone();
    let a = (px2 - qx2 - (p.y.clone() - q.y.clone()))
        / (T::two() * (p.x.clone() - q.x.clone()));
    let d = p.x.clone() - a.clone();
    let b = p.y.clone() - d.clone() * d;
    Ok(Some(Translate::new(a, b)))
}

/// Compare `p.y` against the curve value at `p.x`, exactly.
pub fn point_vs_curve<T: Scalar>(p: &Point<T>, c: &Translate<T>) -> Side {
    let v = curve_eval(c, &p.x);
    match p.y.cmp(&v) {
        std::cmp::Ordering::Less => Side::Below,
        std::cmp::Ordering::Equal => Side::On,
        std::cmp::Ordering::Greater => Side::Above,
    }
}

/// Number of curves of `fam` lying strictly below `p`.
pub fn level_of_point<T: Scalar>(p: &Point<T>, fam: &CurveFamily<T>) -> usize {
    fam.translates()
        .iter()
        .filter(|c| point_vs_curve(p, c) == Side::Above)
        .count()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyError {
    Empty,
    DuplicateTranslate(usize, usize),
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::Empty => write!(f, "family must contain at least one translate"),
            FamilyError::DuplicateTranslate(i, j) => {
                write!(f, "translates {i} and {j} are identical")
            }
        }
    }
}

impl std::error::Error for FamilyError {}

/// An ordered family of pairwise-distinct translates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFamily<T = Rat> {
    translates: Vec<Translate<T>>,
}

impl<T: Scalar> CurveFamily<T> {
    pub fn new(translates: Vec<Translate<T>>) -> Result<Self, FamilyError> {
        if translates.is_empty() {
            return Err(FamilyError::Empty);
        }
        let mut seen: Vec<(&Translate<T>, usize)> = translates.iter().zip(0..).collect();
        seen.sort_by(|(a, _), (b, _)| a.cmp(b));
        for w in seen.windows(2) {
            if w[0].0 == w[1].0 {
                let (i, j) = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
                return Err(FamilyError::DuplicateTranslate(i, j));
            }
        }
        Ok(CurveFamily { translates })
    }

    pub fn translates(&self) -> &[Translate<T>] {
        &self.translates
    }

    pub fn len(&self) -> usize {
        self.translates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.translates.is_empty()
    }

    pub fn curve(&self, i: usize) -> &Translate<T> {
        &self.translates[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;
    use crate::Rat;
    use proptest::prelude::*;

    fn t(a: i64, b: i64) -> Translate<Rat> {
        Translate::new(rat(a, 1), rat(b, 1))
    }

    fn pt(x: i64, y: i64) -> Point<Rat> {
        Point::new(rat(x, 1), rat(y, 1))
    }

    #[test]
    fn eval_examples() {
        assert_eq!(curve_eval(&t(0, 0), &rat(2, 1)), rat(4, 1));
        assert_eq!(curve_eval(&t(1, -1), &rat(1, 1)), rat(-1, 1));
        let c = Translate::new(rat(1, 2), rat(1, 3));
        assert_eq!(curve_eval(&c, &rat(1, 2)), rat(1, 3));
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(intersect(&t(0, 0), &t(2, 0)).unwrap(), Some(pt(1, 1)));
        assert_eq!(intersect(&t(0, 0), &t(0, 1)).unwrap(), None);
        assert_eq!(intersect(&t(0, 0), &t(1, 1)).unwrap(), Some(pt(1, 1)));
        assert!(intersect(&t(3, 4), &t(3, 4)).is_err());
    }

    #[test]
    fn curve_through_examples() {
        assert_eq!(curve_through(&pt(0, 0), &pt(2, 0)).unwrap(), Some(t(1, -1)));
        assert_eq!(curve_through(&pt(0, 0), &pt(0, 1)).unwrap(), None);
        assert_eq!(curve_through(&pt(0, 0), &pt(1, 1)).unwrap(), Some(t(0, 0)));
        assert!(curve_through(&pt(1, 1), &pt(1, 1)).is_err());
    }

    #[test]
    fn side_examples() {
        assert_eq!(
            point_vs_curve(&Point::new(rat(0, 1), rat(1, 2)), &t(0, 0)),
            Side::Above
        );
        assert_eq!(point_vs_curve(&pt(1, 1), &t(0, 0)), Side::On);
        assert_eq!(point_vs_curve(&pt(0, -1), &t(0, 0)), Side::Below);
    }

    #[test]
    fn level_examples() {
        let fam = CurveFamily::new(vec![t(0, 0), t(0, 1)]).unwrap();
        assert_eq!(level_of_point(&Point::new(rat(0, 1), rat(1, 2)), &fam), 1);
        assert_eq!(level_of_point(&pt(0, -5), &fam), 0);
        assert_eq!(level_of_point(&pt(0, 2), &fam), 2);
    }

    #[test]
    fn family_rejects_duplicates() {
        assert_eq!(
            CurveFamily::new(vec![t(1, 2), t(0, 0), t(1, 2)]),
            Err(FamilyError::DuplicateTranslate(0, 2))
        );
        assert_eq!(CurveFamily::<Rat>::new(vec![]), Err(FamilyError::Empty));
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-40i64..=40, 1i64..=6).prop_map(|(n, d)| rat(n, d))
    }

    fn translate_strategy() -> impl Strategy<Value = Translate<Rat>> {
        (small_rat(), small_rat()).prop_map(|(a, b)| Translate::new(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn intersection_lies_on_both(c1 in translate_strategy(), c2 in translate_strategy()) {
            prop_assume!(c1 != c2);
            if let Some(p) = intersect(&c1, &c2).unwrap() {
                prop_assert_eq!(point_vs_curve(&p, &c1), Side::On);
                prop_assert_eq!(point_vs_curve(&p, &c2), Side::On);
            } else {
                prop_assert_eq!(&c1.a, &c2.a);
            }
        }

        #[test]
        fn curve_through_passes_and_is_unique(
            p in (small_rat(), small_rat()).prop_map(|(x, y)| Point::new(x, y)),
            q in (small_rat(), small_rat()).prop_map(|(x, y)| Point::new(x, y)),
            c in translate_strategy(),
        ) {
            prop_assume!(p != q);
            if let Some(found) = curve_through(&p, &q).unwrap() {
                prop_assert_eq!(point_vs_curve(&p, &found), Side::On);
                prop_assert_eq!(point_vs_curve(&q, &found), Side::On);
                // Uniqueness: any translate through both points equals it.
                if point_vs_curve(&p, &c) == Side::On && point_vs_curve(&q, &c) == Side::On {
                    prop_assert_eq!(c, found);
                }
            } else {
                prop_assert_eq!(&p.x, &q.x);
            }
        }

        #[test]
        fn roundtrip_through_sampled_points(c in translate_strategy(), x1 in small_rat(), dx in (1i64..=20, 1i64..=4)) {
            let x2 = x1.clone() + rat(dx.0, dx.1);
            let p = Point::new(x1.clone(), curve_eval(&c, &x1));
            let q = Point::new(x2.clone(), curve_eval(&c, &x2));
            prop_assert_eq!(curve_through(&p, &q).unwrap(), Some(c));
        }

        #[test]
        fn strictly_convex_below_chords(c in translate_strategy(), x1 in small_rat(), d1 in (1i64..=15, 1i64..=4), d2 in (1i64..=15, 1i64..=4)) {
            let x2 = x1.clone() + rat(d1.0, d1.1);
            let x3 = x2.clone() + rat(d2.0, d2.1);
            let y1 = curve_eval(&c, &x1);
            let y2 = curve_eval(&c, &x2);
            let y3 = curve_eval(&c, &x3);
            // Chord of (x1,y1)-(x3,y3) evaluated at x2.
            let chord = y1.clone()
                + (y3 - y1) * (x2.clone() - x1.clone()) / (x3.clone() - x1.clone());
            prop_assert!(y2 < chord);
        }
    }
}

//! Exact-arithmetic toolkit for arrangements of parabola translates.
//!
//! The family under study is `y = (x - a)^2 + b` for translate vectors
//! `(a, b)`. Translates of this curve pairwise intersect at most once and a
//! unique translate passes through any two points not on a vertical line,
//! which makes every construction here expressible in rational arithmetic:
//! intersections, k-levels, level simplifications, plane cuttings, and
//! point-curve incidence counts are all computed exactly, with no floating
//! point in any decision path.
//!
//! Modules:
//! - [`geometry`]: rational predicates and constructions on translates,
//!   generic over the scalar type (instantiated at [`Rat`] everywhere else).
//! - [`arrangement`]: vertices, edges, and k-levels of a translate family.
//! - [`cutting`]: level simplifications and the cell decomposition with
//!   machine-checked cell/crossing bounds.
//! - [`incidence`]: exact incidence and unit-distance counting plus an
//!   incidence-bound audit.
//! - [`pipeline`]: the structure-detection pipeline from incidence-rich
//!   families to a dense translate subset with small difference set.
//! - [`additive`]: difference sets and generalized arithmetic progression
//!   fitting.
//! - [`generators`]: benchmark instance builders (grid construction,
//!   unit-vector progressions, seeded random families).
//! - [`io`]: JSON formats with rational-string coordinates.
//! - [`render`]: SVG output (the only place rationals become floats).

pub mod additive;
pub mod arrangement;
pub mod cutting;
pub mod generators;
pub mod geometry;
pub mod incidence;
pub mod io;
pub mod num;
pub mod pipeline;
pub mod render;

/// The concrete scalar used throughout the library: arbitrary-precision
/// rationals, always reduced, denominator positive.
pub type Rat = num_rational::BigRational;

/// A planar point over [`Rat`].
pub type Point = geometry::Point<Rat>;
/// A translate vector over [`Rat`].
pub type Translate = geometry::Translate<Rat>;
/// A family of distinct translates over [`Rat`].
pub type CurveFamily = geometry::CurveFamily<Rat>;

pub use num::{rat, Ext};

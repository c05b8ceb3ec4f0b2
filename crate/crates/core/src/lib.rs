//! Exact construction, verification and symmetry classification of
//! monocoronal tilings by convex polygons.

pub mod expr;
pub mod field;
pub mod catalog;
pub mod combinatorics;
pub mod geometry;
pub mod highdim;
pub mod layers;
pub mod rational;
pub mod symmetry;
pub mod tiling;

pub use field::{cos_sin_15, q, Coefficient, QuadField, Scalar, Sign};
pub use geometry::{CanonicalSignature, Corona, GeometryError, Incidence, Mode};

pub use rational::Rational;

/// Exact elements of Q(√2, √3) with exact rational coefficients.
pub type QScalar = QuadField<Rational>;
pub type Point = geometry::Point2<QScalar>;
pub type Isometry = geometry::Isometry2<QScalar>;
pub type Polygon = geometry::Polygon<QScalar>;

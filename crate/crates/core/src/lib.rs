//! Exact machinery for k-fold translative packings of the triangle with
//! vertices (0,0), (1,0), (0,1): validation, normalization, stair polygons
//! and their audit, the density bound certificate, optimal lattices, and
//! shadow-cell membership.

#![allow(clippy::result_large_err)] // errors carry exact witness points; they are cold paths

pub mod extremal;
pub mod geom;
pub mod overlap;
pub mod packing;
pub mod rational;
pub mod shadow;
pub mod stair;

pub use geom::{BasePoint, GeomError, Point, Rect, StairPolygon, TriTranslate};
pub use packing::{PackingError, PackingInstance};
pub use rational::Rational;

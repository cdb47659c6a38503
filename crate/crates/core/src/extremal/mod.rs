//! Minimal-area stairs around the open triangle, the optimal k-fold lattice,
//! and the density bound certificate.

mod certify;
mod lattice;

use thiserror::Error;

use crate::geom::StairPolygon;
use crate::packing::PackingError;
use crate::rational::{int, one, rat, Rational};
use crate::stair::StairError;

pub use certify::{certify_bound, BoundCertificate, ChainLink};
pub use lattice::{
    lattice_clip, lattice_points_in, optimal_lattice, verify_lattice_packing, LatticeBasis,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtremalError {
    #[error("argument must be non-negative, got {0}")]
    Negative(Rational),
    #[error("step count must be at least 1")]
    NoSteps,
    #[error("lattice basis is degenerate")]
    Degenerate,
    #[error("basis does not give a {0}-fold packing")]
    NotAPacking(u32),
    #[error("no verified lattice found for k = {0}")]
    NoVerifiedLattice(u32),
    #[error("{0}")]
    Packing(#[from] PackingError),
    #[error("{0}")]
    Stair(#[from] StairError),
}

/// `(r+2) / (2(r+1))`, the least area of an `r`-stair containing the open
/// triangle.
pub fn min_stair_area(r: u32) -> Rational {
    let r = i64::from(r);
    rat(r + 2, 2 * (r + 1))
}

/// `(x+2) / (2(x+1))` on `x >= 0`; agrees with [`min_stair_area`] on the
/// integers.
pub fn stair_area_envelope(x: &Rational) -> Result<Rational, ExtremalError> {
    if x < &int(0) {
        return Err(ExtremalError::Negative(x.clone()));
    }
    Ok((x + int(2)) / (int(2) * (x + one())))
}

/// The `r`-stair with corners evenly spaced on the hypotenuse.
pub fn optimal_stair(r: u32) -> StairPolygon {
    let m = i64::from(r) + 1;
    let xs = (0..=m).map(|j| rat(j, m)).collect();
    let ys = (0..=m).map(|j| rat(m - j, m)).collect();
    StairPolygon::new(xs, ys).expect("evenly spaced breakpoints are monotone")
}

/// Whether the stair contains the open canonical triangle.
pub fn contains_open_triangle(s: &StairPolygon) -> bool {
    let (xs, ys) = (s.xs(), s.ys());
    let last = xs.len() - 1;
    xs[0] <= int(0)
        && ys[last] <= int(0)
        && xs[last] >= one()
        && ys[0] >= one()
        && s.inner_corners().iter().all(|c| c.coord_sum() >= one())
}

/// Midpoint convexity of the least stair area at `r`.
pub fn convexity_check(r: u32) -> Result<bool, ExtremalError> {
    if r == 0 {
        return Err(ExtremalError::NoSteps);
    }
    let mid = (min_stair_area(r - 1) + min_stair_area(r + 1)) / int(2);
    Ok(min_stair_area(r) <= mid)
}

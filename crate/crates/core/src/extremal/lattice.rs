use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::ExtremalError;
use crate::geom::Point;
use crate::overlap::first_deep_overlap;
use crate::packing::{PackingInstance};
use crate::rational::{abs, int, one, rat, Rational};

/// The lattice `{m·u + n·w}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    pub u: Point,
    pub w: Point,
    pub det: Rational,
}

impl LatticeBasis {
    pub fn new(u: Point, w: Point) -> Result<Self, ExtremalError> {
        let det = abs(&(&u.x * &w.y - &u.y * &w.x));
        if det.is_zero() {
            return Err(ExtremalError::Degenerate);
        }
        Ok(LatticeBasis { u, w, det })
    }

    /// `|T| / det`.
    pub fn density(&self) -> Rational {
        rat(1, 2) / &self.det
    }

    pub fn point(&self, m: &BigInt, n: &BigInt) -> Point {
        let m = Rational::from_integer(m.clone());
        let n = Rational::from_integer(n.clone());
        Point::new(&m * &self.u.x + &n * &self.w.x, &m * &self.u.y + &n * &self.w.y)
    }

    /// Lattice coordinates of `p` (not necessarily integral).
    fn coords(&self, p: &Point) -> (Rational, Rational) {
        let signed = &self.u.x * &self.w.y - &self.u.y * &self.w.x;
        let m = (&p.x * &self.w.y - &p.y * &self.w.x) / &signed;
        let n = (&self.u.x * &p.y - &self.u.y * &p.x) / &signed;
        (m, n)
    }
}

impl fmt::Display for LatticeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u={} w={} det={}", self.u, self.w, self.det)
    }
}

/// Lattice points in the closed box `[x0,x1]×[y0,y1]`, ordered by point.
pub fn lattice_points_in(b: &LatticeBasis, x0: &Rational, x1: &Rational, y0: &Rational, y1: &Rational) -> Vec<Point> {
    let corners = [
        Point::new(x0.clone(), y0.clone()),
        Point::new(x1.clone(), y0.clone()),
        Point::new(x0.clone(), y1.clone()),
        Point::new(x1.clone(), y1.clone()),
    ];
    let coords: Vec<(Rational, Rational)> = corners.iter().map(|c| b.coords(c)).collect();
    let m_lo = coords.iter().map(|c| c.0.floor().to_integer()).min().expect("four corners");
    let m_hi = coords.iter().map(|c| c.0.ceil().to_integer()).max().expect("four corners");
    let n_lo = coords.iter().map(|c| c.1.floor().to_integer()).min().expect("four corners");
    let n_hi = coords.iter().map(|c| c.1.ceil().to_integer()).max().expect("four corners");
    let mut out = Vec::new();
    let mut m = m_lo;
    while m <= m_hi {
        let mut n = n_lo.clone();
        while n <= n_hi {
            let p = b.point(&m, &n);
            if &p.x >= x0 && &p.x <= x1 && &p.y >= y0 && &p.y <= y1 {
                out.push(p);
            }
            n += 1;
        }
        m += 1;
    }
    out.sort();
    out
}

/// Exact check that the lattice translates of `T` form a `k`-fold packing.
///
/// Multiplicity is periodic, so it suffices to look at points of one
/// fundamental parallelogram; only translates whose bounding square meets the
/// parallelogram's bounding box can contain such a point.
pub fn verify_lattice_packing(b: &LatticeBasis, k: u32) -> bool {
    let zero = int(0);
    let xs = [&zero, &b.u.x, &b.w.x, &(&b.u.x + &b.w.x)];
    let ys = [&zero, &b.u.y, &b.w.y, &(&b.u.y + &b.w.y)];
    let fx0 = (*xs.iter().min().expect("nonempty")).clone();
    let fx1 = (*xs.iter().max().expect("nonempty")).clone();
    let fy0 = (*ys.iter().min().expect("nonempty")).clone();
    let fy1 = (*ys.iter().max().expect("nonempty")).clone();
    let offsets = lattice_points_in(b, &(fx0 - one()), &fx1, &(fy0 - one()), &fy1);
    first_deep_overlap(&offsets, &one(), k as usize + 1).is_none()
}

fn candidate(k: u32) -> LatticeBasis {
    let k = i64::from(k);
    LatticeBasis::new(Point::frac(1, 2 * k, 1, 2 * k), Point::frac(0, 1, 2 * k + 1, 2 * k))
        .expect("candidate basis is nondegenerate")
}

/// Rationals `p/q` with `0 < p/q <= 2` and `q <= max_den`, ascending.
fn positive_fractions(max_den: i64) -> Vec<Rational> {
    let mut out: Vec<Rational> = (1..=max_den)
        .flat_map(|q| (1..=2 * q).map(move |p| rat(p, q)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// A verified basis of a `k`-fold lattice packing of density `2k²/(2k+1)`.
///
/// The evenly sheared candidate is tried first; failing that, bases
/// `u = (a, b)`, `w = (0, c)` with `a·c = (2k+1)/(4k²)`, `0 <= b < c` and
/// denominators at most `4k²` are verified in ascending order.
pub fn optimal_lattice(k: u32) -> Result<LatticeBasis, ExtremalError> {
    if k == 0 {
        return Err(ExtremalError::NoVerifiedLattice(k));
    }
    let first = candidate(k);
    if verify_lattice_packing(&first, k) {
        return Ok(first);
    }
    let kk = i64::from(k);
    let det = rat(2 * kk + 1, 4 * kk * kk);
    let max_den = 4 * kk * kk;
    let fracs = positive_fractions(max_den);
    let small = |v: &Rational| v.denom() <= &BigInt::from(max_den) && v <= &int(2);
    for a in &fracs {
        let c = &det / a;
        if !small(&c) {
            continue;
        }
        let mut bs: Vec<Rational> = fracs.iter().filter(|b| *b < &c).cloned().collect();
        bs.insert(0, int(0));
        for b in bs {
            let basis = LatticeBasis::new(Point::new(a.clone(), b), Point::new(int(0), c.clone()))?;
            if verify_lattice_packing(&basis, k) {
                return Ok(basis);
            }
        }
    }
    Err(ExtremalError::NoVerifiedLattice(k))
}

/// All lattice translates of `T` inside `[0,l]²`. The lattice passes
/// through the origin, so `T` itself is always included.
pub fn lattice_clip(b: &LatticeBasis, k: u32, l: u32) -> Result<PackingInstance, ExtremalError> {
    if !verify_lattice_packing(b, k) {
        return Err(ExtremalError::NotAPacking(k));
    }
    let hi = int(i64::from(l) - 1);
    if hi.is_negative() {
        return Ok(PackingInstance::new(k, l, Vec::new())?);
    }
    let offsets = lattice_points_in(b, &int(0), &hi, &int(0), &hi);
    Ok(PackingInstance::new(k, l, offsets)?)
}

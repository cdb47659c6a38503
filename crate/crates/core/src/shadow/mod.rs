//! Membership in k-fold shadow cells of convex polygon packings.
//!
//! Shoot a ray from `q` in direction `v`. Member `i` owns `q` when `q` lies
//! in it, or when the ray reaches it and at most `k-1` other members are
//! reached no later. Replacing "no later" by "strictly earlier" gives the
//! strict variant, whose cells can overlap `k+1` times on ties.
//!
//! Distances along one ray are compared through the exact ray parameter `t`.

mod caster;
mod polygon;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geom::Point;
use crate::rational::{int, rat, Rational};

use caster::{Param, RayCaster};

pub use polygon::{intersection_area2, ConvexPolygon};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShadowError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertices are not in strictly convex counterclockwise order at vertex {0}")]
    NotStrictlyConvex(usize),
    #[error("direction must be nonzero")]
    ZeroDirection,
}

/// A nonzero direction vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Direction(Point);

impl Direction {
    pub fn new(v: Point) -> Result<Self, ShadowError> {
        if v == Point::origin() {
            return Err(ShadowError::ZeroDirection);
        }
        Ok(Direction(v))
    }

    pub fn vector(&self) -> &Point {
        &self.0
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// First point `q + t·v` of a polygon on the ray from `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayHit {
    pub t: Rational,
    pub point: Point,
}

/// Least `t >= 0` with `q + t·v` in the closed polygon.
fn first_t(poly: &ConvexPolygon, q: &Point, v: &Point) -> Option<Rational> {
    let mut lo = int(0);
    let mut hi: Option<Rational> = None;
    let zero = int(0);
    for (a, b) in poly.edges() {
        let ex = &b.x - &a.x;
        let ey = &b.y - &a.y;
        // inside test along the ray: c0 + t·c1 >= 0
        let c0 = &ex * (&q.y - &a.y) - &ey * (&q.x - &a.x);
        let c1 = &ex * &v.y - &ey * &v.x;
        if c1 == zero {
            if c0 < zero {
                return None;
            }
        } else {
            let bound = -&c0 / &c1;
            if c1 > zero {
                if bound > lo {
                    lo = bound;
                }
            } else if hi.as_ref().is_none_or(|h| &bound < h) {
                hi = Some(bound);
            }
        }
    }
    match hi {
        Some(h) if h < lo => None,
        _ => Some(lo),
    }
}

pub fn ray_boundary_point(poly: &ConvexPolygon, q: &Point, v: &Direction) -> Option<RayHit> {
    let t = first_t(poly, q, v.vector())?;
    let point = Point::new(&q.x + &t * &v.0.x, &q.y + &t * &v.0.y);
    Some(RayHit { t, point })
}

/// How competitors at equal distance are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    /// Competitors reached no later count against a member.
    Weak,
    /// Only competitors reached strictly earlier count.
    Strict,
}

fn owns(hits: &[Option<Param>], k: usize, i: usize, cmp: Comparison) -> bool {
    let Some(ti) = &hits[i] else { return false };
    if ti.is_zero() {
        return true;
    }
    let ahead = hits
        .iter()
        .enumerate()
        .filter(|&(j, tj)| {
            j != i
                && tj.as_ref().is_some_and(|tj| match cmp {
                    Comparison::Weak => tj.le(ti),
                    Comparison::Strict => tj.lt(ti),
                })
        })
        .count();
    ahead < k
}

fn all_hits(family: &[ConvexPolygon], q: &Point, v: &Direction) -> Vec<Option<Param>> {
    RayCaster::new(family, v).hits(q)
}

pub fn shadow_member_with(
    family: &[ConvexPolygon],
    k: u32,
    i: usize,
    q: &Point,
    v: &Direction,
    cmp: Comparison,
) -> bool {
    owns(&all_hits(family, q, v), k as usize, i, cmp)
}

/// Whether `q` is in the k-fold shadow cell of member `i`.
pub fn shadow_member(family: &[ConvexPolygon], k: u32, i: usize, q: &Point, v: &Direction) -> bool {
    shadow_member_with(family, k, i, q, v, Comparison::Weak)
}

/// The strict-comparison variant of [`shadow_member`].
pub fn shadow_member_strict(
    family: &[ConvexPolygon],
    k: u32,
    i: usize,
    q: &Point,
    v: &Direction,
) -> bool {
    shadow_member_with(family, k, i, q, v, Comparison::Strict)
}

/// Number of shadow cells containing `q`.
pub fn multiplicity_at(family: &[ConvexPolygon], k: u32, q: &Point, v: &Direction, cmp: Comparison) -> usize {
    let hits = all_hits(family, q, v);
    (0..family.len()).filter(|&i| owns(&hits, k as usize, i, cmp)).count()
}

/// Largest multiplicity over the sample and the first point attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledMultiplicity {
    pub max: usize,
    pub at: Option<Point>,
    pub points: usize,
}

impl fmt::Display for SampledMultiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "max multiplicity {} over {} points", self.max, self.points)?;
        if let Some(p) = &self.at {
            write!(f, " (first at {p})")?;
        }
        Ok(())
    }
}

pub fn sample_multiplicity(
    family: &[ConvexPolygon],
    k: u32,
    v: &Direction,
    points: &[Point],
    cmp: Comparison,
) -> SampledMultiplicity {
    let caster = RayCaster::new(family, v);
    let mut best = SampledMultiplicity { max: 0, at: None, points: points.len() };
    for q in points {
        let hits = caster.hits(q);
        let m = (0..family.len()).filter(|&i| owns(&hits, k as usize, i, cmp)).count();
        if m > best.max {
            best.max = m;
            best.at = Some(q.clone());
        }
    }
    best
}

/// `count` seeded sample points: a regular grid over the family's bounding
/// box (grown by one unit) with every point jittered inside its cell.
/// Points on the boundary of a member are redrawn, since closed members
/// legitimately share boundary points beyond multiplicity `k`.
pub fn sample_points(family: &[ConvexPolygon], count: usize, seed: u64) -> Vec<Point> {
    if family.is_empty() || count == 0 {
        return Vec::new();
    }
    let (mut lo, mut hi) = family[0].bounds();
    for p in &family[1..] {
        let (a, b) = p.bounds();
        lo = Point::new(lo.x.min(a.x), lo.y.min(a.y));
        hi = Point::new(hi.x.max(b.x), hi.y.max(b.y));
    }
    let lo = lo.sub(&Point::from_ints(1, 1));
    let hi = hi.add(&Point::from_ints(1, 1));
    let side = (count as f64).sqrt().ceil() as i64;
    let cw = (&hi.x - &lo.x) / int(side);
    let ch = (&hi.y - &lo.y) / int(side);
    const JITTER: i64 = 1 << 12;
    let caster = RayCaster::new(family, &Direction(Point::from_ints(1, 0)));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    'cells: for a in 0..side {
        for b in 0..side {
            if out.len() == count {
                break 'cells;
            }
            for _ in 0..8 {
                let jx = rat(rng.gen_range(1..JITTER), JITTER);
                let jy = rat(rng.gen_range(1..JITTER), JITTER);
                let q = Point::new(&lo.x + &cw * (int(a) + jx), &lo.y + &ch * (int(b) + jy));
                if !caster.on_any_boundary(&q) {
                    out.push(q);
                    break;
                }
            }
        }
    }
    out
}

/// Whether no point lies in the interiors of `k+1` members.
pub fn is_k_fold_packing(family: &[ConvexPolygon], k: u32) -> bool {
    first_polygon_overlap(family, k as usize + 1).is_none()
}

/// Lexicographically first `depth` members with a common interior point.
pub fn first_polygon_overlap(family: &[ConvexPolygon], depth: usize) -> Option<Vec<usize>> {
    if depth == 0 || family.len() < depth {
        return None;
    }
    let n = family.len();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i != j && intersection_area2(&[&family[i], &family[j]]) > int(0))
                .collect()
        })
        .collect();
    let mut chosen = Vec::with_capacity(depth);
    fn walk(
        family: &[ConvexPolygon],
        adj: &[Vec<bool>],
        depth: usize,
        from: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if chosen.len() == depth {
            return true;
        }
        for j in from..family.len() {
            if !chosen.iter().all(|&c| adj[c][j]) {
                continue;
            }
            chosen.push(j);
            let polys: Vec<&ConvexPolygon> = chosen.iter().map(|&c| &family[c]).collect();
            if intersection_area2(&polys) > int(0) && walk(family, adj, depth, j + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    walk(family, &adj, depth, 0, &mut chosen).then_some(chosen)
}

/// A random convex polygon with vertices on the `1/4` grid inside
/// `[0, 2]²`.
pub fn random_convex_polygon(rng: &mut ChaCha8Rng) -> ConvexPolygon {
    loop {
        let n = rng.gen_range(3..=7);
        let pts: Vec<Point> =
            (0..n).map(|_| Point::frac(rng.gen_range(0..=8), 4, rng.gen_range(0..=8), 4)).collect();
        if let Ok(p) = ConvexPolygon::hull(&pts) {
            return p;
        }
    }
}

/// Seeded k-fold packing of translates of one random convex polygon,
/// grown by inserting random translates that keep the family k-fold.
pub fn random_family(k: u32, seed: u64, max_members: usize) -> Vec<ConvexPolygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = random_convex_polygon(&mut rng);
    let mut family: Vec<ConvexPolygon> = Vec::new();
    for _ in 0..max_members * 20 {
        if family.len() == max_members {
            break;
        }
        let shift = Point::frac(rng.gen_range(0..=24), 4, rng.gen_range(0..=24), 4);
        let cand = base.translate(&shift);
        family.push(cand);
        if !is_k_fold_packing(&family, k) {
            family.pop();
        }
    }
    family
}

/// A valid 2-fold packing with a point where strict cells overlap three
/// times while the weak cells stay within the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictCounterexample {
    pub family: Vec<ConvexPolygon>,
    pub witness: Point,
    pub direction: Direction,
    pub strict_multiplicity: usize,
    pub weak_multiplicity: usize,
}

/// Searches small families of three translates placed so that their
/// boundaries line up along an axis direction, for a strict-variant
/// multiplicity of at least `k+1` at a point off every boundary.
pub fn find_strict_counterexample(k: u32, seed: u64) -> Option<StrictCounterexample> {
    const ATTEMPTS: usize = 20_000;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = k as usize + 1;
    let dirs = [Point::from_ints(1, 0), Point::from_ints(0, 1), Point::from_ints(-1, 0), Point::from_ints(0, -1)];
    for attempt in 0..ATTEMPTS {
        let base = if attempt % 2 == 0 {
            ConvexPolygon::unit_triangle()
        } else {
            random_convex_polygon(&mut rng)
        };
        let family: Vec<ConvexPolygon> = (0..size)
            .map(|_| base.translate(&Point::frac(rng.gen_range(0..=6), 2, rng.gen_range(0..=6), 2)))
            .collect();
        let q = Point::frac(rng.gen_range(-2..=8), 2, rng.gen_range(-2..=8), 2);
        let v = Direction::new(dirs[rng.gen_range(0..dirs.len())].clone()).expect("axis direction");
        if family.iter().any(|p| p.on_boundary(&q)) {
            continue;
        }
        let strict = multiplicity_at(&family, k, &q, &v, Comparison::Strict);
        if strict <= k as usize {
            continue;
        }
        let weak = multiplicity_at(&family, k, &q, &v, Comparison::Weak);
        if weak <= k as usize && is_k_fold_packing(&family, k) {
            return Some(StrictCounterexample {
                family,
                witness: q,
                direction: v,
                strict_multiplicity: strict,
                weak_multiplicity: weak,
            });
        }
    }
    None
}

//! Integer ray casting against a fixed family and direction.
//!
//! All vertices are scaled by a common denominator and the direction by a
//! positive factor, so edge data becomes integral. For a query point with
//! denominators `dx, dy`, every edge test is multiplied by `dx·dy > 0`;
//! the resulting ray parameter differs from the true one by a positive
//! factor shared by all members, which preserves every comparison.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ConvexPolygon, Direction};
use crate::geom::Point;

struct Edge {
    ex: BigInt,
    ey: BigInt,
    /// `ex·a.y - ey·a.x` for the edge start `a`.
    ka: BigInt,
    /// `ex·v.y - ey·v.x`.
    kv: BigInt,
}

/// A non-negative fraction `num/den` with `den > 0`, unreduced.
#[derive(Debug, Clone)]
pub(crate) struct Param {
    num: BigInt,
    den: BigInt,
}

impl Param {
    fn zero() -> Self {
        Param { num: BigInt::zero(), den: BigInt::one() }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub(crate) fn le(&self, other: &Param) -> bool {
        &self.num * &other.den <= &other.num * &self.den
    }

    pub(crate) fn lt(&self, other: &Param) -> bool {
        &self.num * &other.den < &other.num * &self.den
    }
}

pub(crate) struct RayCaster {
    scale: BigInt,
    members: Vec<Vec<Edge>>,
}

fn lcm_of_denominators<'a>(values: impl Iterator<Item = &'a crate::rational::Rational>) -> BigInt {
    values.fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

impl RayCaster {
    pub(crate) fn new(family: &[ConvexPolygon], v: &Direction) -> Self {
        let scale = lcm_of_denominators(
            family.iter().flat_map(|p| p.vertices()).flat_map(|q| [&q.x, &q.y]),
        );
        let dv = v.vector();
        let vscale = lcm_of_denominators([&dv.x, &dv.y].into_iter());
        let vx = (&dv.x * &vscale).to_integer();
        let vy = (&dv.y * &vscale).to_integer();
        let members = family
            .iter()
            .map(|p| {
                p.edges()
                    .map(|(a, b)| {
                        let ax = (&a.x * &scale).to_integer();
                        let ay = (&a.y * &scale).to_integer();
                        let ex = (&b.x * &scale).to_integer() - &ax;
                        let ey = (&b.y * &scale).to_integer() - &ay;
                        let ka = &ex * &ay - &ey * &ax;
                        let kv = &ex * &vy - &ey * &vx;
                        Edge { ex, ey, ka, kv }
                    })
                    .collect()
            })
            .collect();
        RayCaster { scale, members }
    }

    /// `(A, B, C)` with every edge value `ex·A - ey·B - ka·C`.
    fn query(&self, q: &Point) -> (BigInt, BigInt, BigInt) {
        let (nx, dx) = (q.x.numer(), q.x.denom());
        let (ny, dy) = (q.y.numer(), q.y.denom());
        let a = &self.scale * ny * dx;
        let b = &self.scale * nx * dy;
        (a, b, dx * dy)
    }

    fn side(e: &Edge, a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
        &e.ex * a - &e.ey * b - &e.ka * c
    }

    /// Scaled first-hit parameter of every member.
    pub(crate) fn hits(&self, q: &Point) -> Vec<Option<Param>> {
        let (a, b, c) = self.query(q);
        self.members.iter().map(|edges| first_hit(edges, &a, &b, &c)).collect()
    }

    /// Whether `q` is on the boundary of some member.
    pub(crate) fn on_any_boundary(&self, q: &Point) -> bool {
        let (a, b, c) = self.query(q);
        self.members.iter().any(|edges| {
            let mut touching = false;
            for e in edges {
                let s = Self::side(e, &a, &b, &c);
                if s.is_negative() {
                    return false;
                }
                touching |= s.is_zero();
            }
            touching
        })
    }
}

fn first_hit(edges: &[Edge], a: &BigInt, b: &BigInt, c: &BigInt) -> Option<Param> {
    let mut lo = Param::zero();
    let mut hi: Option<Param> = None;
    for e in edges {
        let s = RayCaster::side(e, a, b, c);
        if e.kv.is_zero() {
            if s.is_negative() {
                return None;
            }
            continue;
        }
        // s + t·kv >= 0
        let bound = if e.kv.is_positive() {
            Param { num: -s, den: e.kv.clone() }
        } else {
            Param { num: s, den: -e.kv.clone() }
        };
        if e.kv.is_positive() {
            if lo.lt(&bound) {
                lo = bound;
            }
        } else if hi.as_ref().is_none_or(|h| bound.lt(h)) {
            hi = Some(bound);
        }
    }
    match hi {
        Some(h) if h.lt(&lo) => None,
        _ => Some(lo),
    }
}

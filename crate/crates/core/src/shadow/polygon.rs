use std::fmt;

use num_traits::Zero;

use super::ShadowError;
use crate::geom::Point;
use crate::rational::{int, Rational};

pub(crate) fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

/// A closed convex polygon, vertices counterclockwise with no three
/// collinear.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self, ShadowError> {
        let n = vertices.len();
        if n < 3 {
            return Err(ShadowError::TooFewVertices(n));
        }
        for i in 0..n {
            let turn = cross(&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n]);
            if turn <= int(0) {
                return Err(ShadowError::NotStrictlyConvex((i + 1) % n));
            }
        }
        // a positive turn at every vertex can still wind more than once
        let p = ConvexPolygon { vertices };
        if !p.is_simple_winding() {
            return Err(ShadowError::NotStrictlyConvex(0));
        }
        Ok(p)
    }

    /// The canonical triangle `(0,0), (1,0), (0,1)`.
    pub fn unit_triangle() -> Self {
        ConvexPolygon {
            vertices: vec![Point::origin(), Point::from_ints(1, 0), Point::from_ints(0, 1)],
        }
    }

    /// Convex hull of `points`, dropping collinear boundary points.
    pub fn hull(points: &[Point]) -> Result<Self, ShadowError> {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() < 3 {
            return Err(ShadowError::TooFewVertices(pts.len()));
        }
        let mut lower: Vec<Point> = Vec::new();
        for p in &pts {
            while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= int(0) {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<Point> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= int(0) {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        ConvexPolygon::new(lower)
    }

    /// Edge directions switch between upward and downward exactly twice.
    fn is_simple_winding(&self) -> bool {
        let n = self.vertices.len();
        let descents = (0..n)
            .filter(|&i| {
                let a = &self.vertices[i];
                let b = &self.vertices[(i + 1) % n];
                let c = &self.vertices[(i + 2) % n];
                let ab = (b.y > a.y) || (b.y == a.y && b.x > a.x);
                let bc = (c.y > b.y) || (c.y == b.y && c.x > b.x);
                ab != bc
            })
            .count();
        descents == 2
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn translate(&self, by: &Point) -> Self {
        ConvexPolygon { vertices: self.vertices.iter().map(|v| v.add(by)).collect() }
    }

    /// Directed edges `(v_i, v_{i+1})`.
    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.edges().all(|(a, b)| cross(a, b, p) >= int(0))
    }

    pub fn interior_contains(&self, p: &Point) -> bool {
        self.edges().all(|(a, b)| cross(a, b, p) > int(0))
    }

    pub fn on_boundary(&self, p: &Point) -> bool {
        self.contains(p) && !self.interior_contains(p)
    }

    pub fn area(&self) -> Rational {
        let o = &self.vertices[0];
        let twice: Rational = (1..self.vertices.len() - 1)
            .map(|i| cross(o, &self.vertices[i], &self.vertices[i + 1]))
            .sum();
        twice / int(2)
    }

    /// Axis-aligned bounding box as `(min, max)` corners.
    pub fn bounds(&self) -> (Point, Point) {
        let xs = self.vertices.iter().map(|v| &v.x);
        let ys = self.vertices.iter().map(|v| &v.y);
        let lo = Point::new(xs.clone().min().expect("3+ vertices").clone(), ys.clone().min().expect("3+ vertices").clone());
        let hi = Point::new(xs.max().expect("3+ vertices").clone(), ys.max().expect("3+ vertices").clone());
        (lo, hi)
    }
}

impl fmt::Display for ConvexPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", vs.join(" "))
    }
}

/// Closed intersection of a convex vertex chain with the closed left side
/// of the directed line `a -> b`.
fn clip_half_plane(poly: &[Point], a: &Point, b: &Point) -> Vec<Point> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    let n = poly.len();
    for i in 0..n {
        let p = &poly[i];
        let q = &poly[(i + 1) % n];
        let sp = cross(a, b, p);
        let sq = cross(a, b, q);
        if sp >= int(0) {
            out.push(p.clone());
        }
        if (sp > int(0) && sq < int(0)) || (sp < int(0) && sq > int(0)) {
            let t = &sp / (&sp - &sq);
            out.push(Point::new(&p.x + (&q.x - &p.x) * &t, &p.y + (&q.y - &p.y) * &t));
        }
    }
    out
}

/// Twice the area of the closed intersection of the given polygons; zero
/// exactly when their interiors share no point.
pub fn intersection_area2(polys: &[&ConvexPolygon]) -> Rational {
    let Some((first, rest)) = polys.split_first() else { return int(0) };
    let mut chain = first.vertices.clone();
    for p in rest {
        for (a, b) in p.edges() {
            chain = clip_half_plane(&chain, a, b);
            if chain.len() < 3 {
                return int(0);
            }
        }
    }
    let o = &chain[0];
    let twice: Rational = (1..chain.len() - 1).map(|i| cross(o, &chain[i], &chain[i + 1])).sum();
    if twice.is_zero() {
        int(0)
    } else {
        twice
    }
}

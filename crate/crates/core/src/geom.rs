//! Exact planar primitives: points, the precedence order, translates of the
//! canonical triangle, half-open rectangles and half-open stair polygons.
//!
//! The canonical triangle `T` has vertices `(0,0)`, `(1,0)` and `(0,1)`.
//! Triangles are closed sets. Rectangles, squares and stair polygons are
//! half-open: closed on the left and bottom edges, open on the right and top.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::rational::{int, one, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("empty region")]
    EmptyRegion,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degenerate stair: the corners remove the whole square")]
    DegenerateStair,
    #[error("invalid stair polygon: {0}")]
    InvalidStair(String),
    #[error("intersection of an empty family of rectangles")]
    EmptyFamily,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    /// Shorthand for `(xn/xd, yn/yd)`.
    pub fn frac(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Point::new(crate::rational::rat(xn, xd), crate::rational::rat(yn, yd))
    }

    pub fn origin() -> Self {
        Point::from_ints(0, 0)
    }

    pub fn coord_sum(&self) -> Rational {
        &self.x + &self.y
    }

    pub fn add(&self, other: &Point) -> Point {
        Point::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn scale(&self, s: &Rational) -> Point {
        Point::new(&self.x * s, &self.y * s)
    }

    /// Componentwise `self <= other`.
    pub fn weakly_below(&self, other: &Point) -> bool {
        self.x <= other.x && self.y <= other.y
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Total order behind `precedes`: coordinate sum first, then `x`.
pub fn prec_cmp(u: &Point, w: &Point) -> Ordering {
    u.coord_sum()
        .cmp(&w.coord_sum())
        .then_with(|| u.x.cmp(&w.x))
}

/// `u ≺ w`: smaller coordinate sum, or equal sums and smaller `x`.
pub fn precedes(u: &Point, w: &Point) -> bool {
    prec_cmp(u, w) == Ordering::Less
}

/// Regions that carry a base point: the ≺-greatest point lying ≺-below or
/// equal to every point of the region.
pub trait BasePoint {
    fn base_point(&self) -> Result<Point, GeomError>;
}

/// The translate `T + offset` of the canonical triangle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriTranslate {
    pub offset: Point,
}

impl TriTranslate {
    pub fn new(offset: Point) -> Self {
        TriTranslate { offset }
    }

    pub fn vertices(&self) -> [Point; 3] {
        let o = &self.offset;
        [
            o.clone(),
            Point::new(&o.x + one(), o.y.clone()),
            Point::new(o.x.clone(), &o.y + one()),
        ]
    }

    /// The half-open unit square `[x,x+1) × [y,y+1)` anchored at the offset.
    pub fn square(&self) -> Rect {
        let o = &self.offset;
        Rect::new(o.x.clone(), &o.x + one(), o.y.clone(), &o.y + one())
    }

    /// Closed triangle membership.
    pub fn contains(&self, p: &Point) -> bool {
        let o = &self.offset;
        p.x >= o.x && p.y >= o.y && p.coord_sum() <= o.coord_sum() + one()
    }

    pub fn interior_contains(&self, p: &Point) -> bool {
        let o = &self.offset;
        p.x > o.x && p.y > o.y && p.coord_sum() < o.coord_sum() + one()
    }

    /// Whether some point `u'` of the hypotenuse satisfies `u ≺ u'`.
    ///
    /// The hypotenuse runs from `(x+1,y)` to `(x,y+1)`; its ≺-largest point
    /// is `(x+1,y)`, so the answer reduces to `u ≺ (x+1,y)`. `u` must lie in
    /// the square of the translate.
    pub fn hypotenuse_witness(&self, u: &Point) -> Result<bool, GeomError> {
        if !self.square().contains(u) {
            return Err(GeomError::Precondition(format!(
                "{u} is outside the square of the translate at {}",
                self.offset
            )));
        }
        let o = &self.offset;
        let sum = u.coord_sum();
        let hyp = o.coord_sum() + one();
        Ok(sum < hyp || (sum == hyp && u.x < &o.x + one()))
    }
}

impl BasePoint for TriTranslate {
    fn base_point(&self) -> Result<Point, GeomError> {
        Ok(self.offset.clone())
    }
}

pub fn square_of(t: &TriTranslate) -> Rect {
    t.square()
}

/// A one-dimensional interval with independently open or closed ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Interval { lo, hi, lo_closed: true, hi_closed: true }
    }

    pub fn half_open(lo: Rational, hi: Rational) -> Self {
        Interval { lo, hi, lo_closed: true, hi_closed: false }
    }

    pub fn is_empty(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            Ordering::Less => false,
            Ordering::Equal => !(self.lo_closed && self.hi_closed),
            Ordering::Greater => true,
        }
    }

    pub fn contains(&self, v: &Rational) -> bool {
        let above = if self.lo_closed { v >= &self.lo } else { v > &self.lo };
        let below = if self.hi_closed { v <= &self.hi } else { v < &self.hi };
        above && below
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Less => (other.lo.clone(), other.lo_closed),
            Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Greater => (other.hi.clone(), other.hi_closed),
            Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        Interval { lo, hi, lo_closed, hi_closed }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        write!(f, "{open}{},{}{close}", self.lo, self.hi)
    }
}

/// The half-open rectangle `[x0,x1) × [y0,y1)`.
///
/// Empty rectangles are normalized to [`Rect::empty`], so equality works.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rect {
    pub x0: Rational,
    pub x1: Rational,
    pub y0: Rational,
    pub y1: Rational,
}

impl Rect {
    pub fn new(x0: Rational, x1: Rational, y0: Rational, y1: Rational) -> Self {
        if x0 < x1 && y0 < y1 {
            Rect { x0, x1, y0, y1 }
        } else {
            Rect::empty()
        }
    }

    pub fn empty() -> Self {
        Rect { x0: int(0), x1: int(0), y0: int(0), y1: int(0) }
    }

    pub fn is_empty(&self) -> bool {
        !(self.x0 < self.x1 && self.y0 < self.y1)
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.x >= self.x0 && p.x < self.x1 && p.y >= self.y0 && p.y < self.y1
    }

    pub fn x_interval(&self) -> Interval {
        Interval::half_open(self.x0.clone(), self.x1.clone())
    }

    pub fn y_interval(&self) -> Interval {
        Interval::half_open(self.y0.clone(), self.y1.clone())
    }

    pub fn intersect(&self, other: &Rect) -> Rect {
        if self.is_empty() || other.is_empty() {
            return Rect::empty();
        }
        Rect::new(
            self.x0.clone().max(other.x0.clone()),
            self.x1.clone().min(other.x1.clone()),
            self.y0.clone().max(other.y0.clone()),
            self.y1.clone().min(other.y1.clone()),
        )
    }

    pub fn area(&self) -> Rational {
        if self.is_empty() {
            return int(0);
        }
        (&self.x1 - &self.x0) * (&self.y1 - &self.y0)
    }
}

impl BasePoint for Rect {
    fn base_point(&self) -> Result<Point, GeomError> {
        if self.is_empty() {
            return Err(GeomError::EmptyRegion);
        }
        Ok(Point::new(self.x0.clone(), self.y0.clone()))
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "EMPTY");
        }
        write!(f, "[{},{})x[{},{})", self.x0, self.x1, self.y0, self.y1)
    }
}

/// Common intersection of a nonempty family of half-open rectangles.
pub fn rect_intersect(rs: &[Rect]) -> Result<Rect, GeomError> {
    let (first, rest) = rs.split_first().ok_or(GeomError::EmptyFamily)?;
    Ok(rest.iter().fold(first.clone(), |acc, r| acc.intersect(r)))
}

/// The closed quadrant `{(x,y) : x >= corner.x, y >= corner.y}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quadrant {
    pub corner: Point,
}

impl Quadrant {
    pub fn new(corner: Point) -> Self {
        Quadrant { corner }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.corner.weakly_below(p)
    }
}

/// An axis-parallel segment whose endpoints may be open or closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxisSegment {
    Horizontal { y: Rational, x: Interval },
    Vertical { x: Rational, y: Interval },
}

impl AxisSegment {
    pub fn is_empty(&self) -> bool {
        match self {
            AxisSegment::Horizontal { x, .. } => x.is_empty(),
            AxisSegment::Vertical { y, .. } => y.is_empty(),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self {
            AxisSegment::Horizontal { y, x } => &p.y == y && x.contains(&p.x),
            AxisSegment::Vertical { x, y } => &p.x == x && y.contains(&p.y),
        }
    }

    /// The part of the segment inside a half-open rectangle, if any.
    pub fn clip(&self, r: &Rect) -> Option<AxisSegment> {
        if r.is_empty() {
            return None;
        }
        let clipped = match self {
            AxisSegment::Horizontal { y, x } => {
                if !r.y_interval().contains(y) {
                    return None;
                }
                AxisSegment::Horizontal { y: y.clone(), x: x.intersect(&r.x_interval()) }
            }
            AxisSegment::Vertical { x, y } => {
                if !r.x_interval().contains(x) {
                    return None;
                }
                AxisSegment::Vertical { x: x.clone(), y: y.intersect(&r.y_interval()) }
            }
        };
        (!clipped.is_empty()).then_some(clipped)
    }

    pub fn meets_rect(&self, r: &Rect) -> bool {
        self.clip(r).is_some()
    }

    /// Some point of the segment (the midpoint, or the single point).
    pub fn sample_point(&self) -> Option<Point> {
        if self.is_empty() {
            return None;
        }
        let mid = |i: &Interval| (&i.lo + &i.hi) / int(2);
        Some(match self {
            AxisSegment::Horizontal { y, x } => Point::new(mid(x), y.clone()),
            AxisSegment::Vertical { x, y } => Point::new(x.clone(), mid(y)),
        })
    }
}

impl fmt::Display for AxisSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxisSegment::Horizontal { y, x } => write!(f, "{x}x{{{y}}}"),
            AxisSegment::Vertical { x, y } => write!(f, "{{{x}}}x{y}"),
        }
    }
}

/// A half-open r-stair polygon
/// `⋃_{j=0..r} [x_j, x_{j+1}) × [y_{r+1}, y_j)`
/// with strictly increasing `xs` and strictly decreasing `ys`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StairPolygon {
    xs: Vec<Rational>,
    ys: Vec<Rational>,
}

impl StairPolygon {
    pub fn new(xs: Vec<Rational>, ys: Vec<Rational>) -> Result<Self, GeomError> {
        if xs.len() != ys.len() {
            return Err(GeomError::InvalidStair(format!(
                "{} x-breakpoints but {} y-breakpoints",
                xs.len(),
                ys.len()
            )));
        }
        if xs.len() < 2 {
            return Err(GeomError::InvalidStair("fewer than two breakpoints".into()));
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(GeomError::InvalidStair("x-breakpoints not strictly increasing".into()));
        }
        if ys.windows(2).any(|w| w[0] <= w[1]) {
            return Err(GeomError::InvalidStair("y-breakpoints not strictly decreasing".into()));
        }
        Ok(StairPolygon { xs, ys })
    }

    /// The 0-stair equal to a nonempty rectangle.
    pub fn from_rect(r: &Rect) -> Result<Self, GeomError> {
        if r.is_empty() {
            return Err(GeomError::EmptyRegion);
        }
        StairPolygon::new(vec![r.x0.clone(), r.x1.clone()], vec![r.y1.clone(), r.y0.clone()])
    }

    /// Number of steps minus one: the `r` of an r-stair.
    pub fn r(&self) -> usize {
        self.xs.len() - 2
    }

    pub fn xs(&self) -> &[Rational] {
        &self.xs
    }

    pub fn ys(&self) -> &[Rational] {
        &self.ys
    }

    pub fn bottom(&self) -> &Rational {
        self.ys.last().expect("stair has breakpoints")
    }

    fn right(&self) -> &Rational {
        self.xs.last().expect("stair has breakpoints")
    }

    /// Index of the column `[x_j, x_{j+1})` holding `x`.
    fn column_of(&self, x: &Rational) -> Option<usize> {
        if x < &self.xs[0] || x >= self.right() {
            return None;
        }
        // first breakpoint strictly greater than x, minus one
        let idx = self.xs.partition_point(|b| b <= x);
        Some(idx - 1)
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self.column_of(&p.x) {
            Some(j) => &p.y >= self.bottom() && p.y < self.ys[j],
            None => false,
        }
    }

    /// Membership in the topological interior.
    pub fn interior_contains(&self, p: &Point) -> bool {
        if p.x <= self.xs[0] {
            return false;
        }
        match self.column_of(&p.x) {
            Some(j) => &p.y > self.bottom() && p.y < self.ys[j],
            None => false,
        }
    }

    pub fn area(&self) -> Rational {
        let bottom = self.bottom();
        (0..=self.r())
            .map(|j| (&self.xs[j + 1] - &self.xs[j]) * (&self.ys[j] - bottom))
            .sum()
    }

    /// The defining column rectangles, left to right.
    pub fn rects(&self) -> Vec<Rect> {
        (0..=self.r())
            .map(|j| {
                Rect::new(
                    self.xs[j].clone(),
                    self.xs[j + 1].clone(),
                    self.bottom().clone(),
                    self.ys[j].clone(),
                )
            })
            .collect()
    }

    /// The concave corners `(x_j, y_j)` for `j = 1..=r`.
    pub fn inner_corners(&self) -> Vec<Point> {
        (1..=self.r())
            .map(|j| Point::new(self.xs[j].clone(), self.ys[j].clone()))
            .collect()
    }

    /// `closure(S) \ S` as axis-parallel segments: the top of every column
    /// and the risers between columns, including the rightmost edge.
    pub fn boundary_segments(&self) -> Vec<AxisSegment> {
        let r = self.r();
        let mut out = Vec::with_capacity(2 * r + 2);
        for j in 0..=r {
            out.push(AxisSegment::Horizontal {
                y: self.ys[j].clone(),
                x: Interval::closed(self.xs[j].clone(), self.xs[j + 1].clone()),
            });
            let riser_low = if j < r { &self.ys[j + 1] } else { self.bottom() };
            out.push(AxisSegment::Vertical {
                x: self.xs[j + 1].clone(),
                y: Interval::closed(riser_low.clone(), self.ys[j].clone()),
            });
        }
        out
    }

    pub fn bounding_rect(&self) -> Rect {
        Rect::new(self.xs[0].clone(), self.right().clone(), self.bottom().clone(), self.ys[0].clone())
    }
}

impl BasePoint for StairPolygon {
    fn base_point(&self) -> Result<Point, GeomError> {
        Ok(Point::new(self.xs[0].clone(), self.bottom().clone()))
    }
}

impl fmt::Display for StairPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "xs=({}) ys=({})", join(&self.xs), join(&self.ys))
    }
}

/// Keeps the componentwise-minimal points, deduplicated, sorted by ascending
/// `x` (hence strictly descending `y`).
pub fn pareto_minimal(points: &[Point]) -> Vec<Point> {
    let mut sorted: Vec<Point> = points.to_vec();
    sorted.sort_by(|a, b| a.x.cmp(&b.x).then_with(|| a.y.cmp(&b.y)));
    sorted.dedup();
    let mut out: Vec<Point> = Vec::with_capacity(sorted.len());
    for p in sorted {
        // p is dominated iff an earlier kept point has y <= p.y
        if out.last().is_some_and(|q| q.y <= p.y) {
            continue;
        }
        out.push(p);
    }
    out
}

/// The stair polygon `square \ ⋃ R(c)` over the quadrants at `corners`.
pub fn stair_from_corners(square: &Rect, corners: &[Point]) -> Result<StairPolygon, GeomError> {
    if square.is_empty() {
        return Err(GeomError::EmptyRegion);
    }
    let clipped: Vec<Point> = corners
        .iter()
        .filter(|c| c.x < square.x1 && c.y < square.y1)
        .map(|c| Point::new(c.x.clone().max(square.x0.clone()), c.y.clone().max(square.y0.clone())))
        .collect();
    let cuts = pareto_minimal(&clipped);
    if cuts.iter().any(|c| c.x == square.x0 && c.y == square.y0) {
        return Err(GeomError::DegenerateStair);
    }

    // column j spans [left_j, left_{j+1}) with top top_j; a cut on the left
    // edge gives column 0 zero width and a cut on the bottom edge gives the
    // last column zero height, and such columns are dropped
    let mut lefts = vec![square.x0.clone()];
    let mut tops = vec![square.y1.clone()];
    for c in &cuts {
        lefts.push(c.x.clone());
        tops.push(c.y.clone());
    }
    let mut xs = Vec::with_capacity(lefts.len() + 1);
    let mut ys = Vec::with_capacity(tops.len() + 1);
    let mut end = square.x1.clone();
    for j in 0..lefts.len() {
        let right = lefts.get(j + 1).unwrap_or(&square.x1);
        if &lefts[j] < right && tops[j] > square.y0 {
            xs.push(lefts[j].clone());
            ys.push(tops[j].clone());
            end = right.clone();
        }
    }
    xs.push(end);
    ys.push(square.y0.clone());
    StairPolygon::new(xs, ys)
}

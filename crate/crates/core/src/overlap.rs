//! Multiplicity engine for translates of a scaled canonical triangle.
//!
//! The interiors of `s·T + o_1, …, s·T + o_m` share a point iff the open
//! system `x > x_i, y > y_i, x + y < x_i + y_i + s` is feasible, which is
//! `max x_i + max y_i < min (x_i + y_i) + s`.

use crate::geom::Point;
use crate::rational::{int, one, Rational};

/// Running bounds of the open system for a growing set of translates.
#[derive(Debug, Clone)]
pub(crate) struct OpenCell {
    max_x: Rational,
    max_y: Rational,
    min_sum: Rational,
}

impl OpenCell {
    pub(crate) fn of(p: &Point) -> Self {
        OpenCell { max_x: p.x.clone(), max_y: p.y.clone(), min_sum: p.coord_sum() }
    }

    pub(crate) fn with(&self, p: &Point) -> Self {
        let sum = p.coord_sum();
        OpenCell {
            max_x: if p.x > self.max_x { p.x.clone() } else { self.max_x.clone() },
            max_y: if p.y > self.max_y { p.y.clone() } else { self.max_y.clone() },
            min_sum: if sum < self.min_sum { sum } else { self.min_sum.clone() },
        }
    }

    pub(crate) fn feasible(&self, side: &Rational) -> bool {
        &self.max_x + &self.max_y < &self.min_sum + side
    }

    /// `(max x + σ, max y + σ)` with `σ` a quarter of the slack; strictly
    /// inside every interior when the system is feasible.
    pub(crate) fn witness(&self, side: &Rational) -> Point {
        let sigma = (&self.min_sum + side - &self.max_x - &self.max_y) / int(4);
        Point::new(&self.max_x + &sigma, &self.max_y + &sigma)
    }
}

/// Witness point in the common interior of `s·T + o` over all `offsets`.
pub fn common_interior_witness(offsets: &[&Point], side: &Rational) -> Option<Point> {
    let (first, rest) = offsets.split_first()?;
    let cell = rest.iter().fold(OpenCell::of(first), |c, p| c.with(p));
    cell.feasible(side).then(|| cell.witness(side))
}

/// For each index, the other indices whose unit squares meet
/// (`|dx| < 1` and `|dy| < 1`), ascending.
pub fn square_neighbors(offsets: &[Point]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..offsets.len()).collect();
    order.sort_by(|&a, &b| offsets[a].x.cmp(&offsets[b].x));
    let mut adj = vec![Vec::new(); offsets.len()];
    let unit = one();
    for (pos, &i) in order.iter().enumerate() {
        let reach = &offsets[i].x + &unit;
        for &j in &order[pos + 1..] {
            if offsets[j].x >= reach {
                break;
            }
            let dy = &offsets[j].y - &offsets[i].y;
            if dy < unit && -dy < unit {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

/// Pairs whose (scaled) triangle interiors meet, as ascending adjacency.
pub(crate) fn interior_graph(offsets: &[Point], side: &Rational) -> Vec<Vec<usize>> {
    let squares = square_neighbors(offsets);
    squares
        .iter()
        .enumerate()
        .map(|(i, ns)| {
            ns.iter()
                .copied()
                .filter(|&j| OpenCell::of(&offsets[i]).with(&offsets[j]).feasible(side))
                .collect()
        })
        .collect()
}

/// The lexicographically first index set of size `depth` whose translates
/// share an interior point, with a witness.
///
/// Enumeration visits cliques of the interior-overlap graph in ascending
/// index order and abandons a prefix as soon as its open system becomes
/// infeasible, so the first hit is the lexicographically smallest one.
pub fn first_deep_overlap(
    offsets: &[Point],
    side: &Rational,
    depth: usize,
) -> Option<(Vec<usize>, Point)> {
    if depth == 0 || offsets.len() < depth {
        return None;
    }
    if depth == 1 {
        return offsets.first().map(|p| (vec![0], OpenCell::of(p).witness(side)));
    }
    let graph = interior_graph(offsets, side);
    let upper: Vec<Vec<usize>> = graph
        .iter()
        .enumerate()
        .map(|(i, ns)| ns.iter().copied().filter(|&j| j > i).collect())
        .collect();
    let mut clique = Vec::with_capacity(depth);
    for i in 0..offsets.len() {
        clique.clear();
        clique.push(i);
        let cell = OpenCell::of(&offsets[i]);
        if let Some(found) = extend(offsets, side, depth, &graph, &upper[i], &mut clique, &cell) {
            return Some(found);
        }
    }
    None
}

fn extend(
    offsets: &[Point],
    side: &Rational,
    depth: usize,
    graph: &[Vec<usize>],
    candidates: &[usize],
    clique: &mut Vec<usize>,
    cell: &OpenCell,
) -> Option<(Vec<usize>, Point)> {
    if clique.len() == depth {
        return Some((clique.clone(), cell.witness(side)));
    }
    let needed = depth - clique.len();
    for (pos, &j) in candidates.iter().enumerate() {
        if candidates.len() - pos < needed {
            break;
        }
        let next = cell.with(&offsets[j]);
        if !next.feasible(side) {
            continue;
        }
        let rest: Vec<usize> = candidates[pos + 1..]
            .iter()
            .copied()
            .filter(|c| graph[j].binary_search(c).is_ok())
            .collect();
        clique.push(j);
        if let Some(found) = extend(offsets, side, depth, graph, &rest, clique, &next) {
            return Some(found);
        }
        clique.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn witness_is_interior_to_all() {
        let a = Point::origin();
        let b = Point::frac(1, 4, 1, 4);
        let w = common_interior_witness(&[&a, &b], &one()).unwrap();
        assert_eq!(w, Point::frac(3, 8, 3, 8));
        assert!(common_interior_witness(&[&a, &Point::frac(1, 2, 1, 2)], &one()).is_none());
        let c = Point::frac(1, 2, 0, 1);
        // scaled triangles of side 1/2 at a and c only touch
        assert!(common_interior_witness(&[&a, &c], &rat(1, 2)).is_none());
        assert!(common_interior_witness(&[&a, &c], &rat(3, 4)).is_some());
    }

    #[test]
    fn neighbors_use_open_squares() {
        let pts = vec![
            Point::origin(),
            Point::from_ints(1, 0),
            Point::frac(1, 2, -1, 2),
            Point::frac(-9, 10, 9, 10),
        ];
        let adj = square_neighbors(&pts);
        assert_eq!(adj[0], vec![2, 3]);
        assert_eq!(adj[1], vec![2]);
        assert_eq!(adj[2], vec![0, 1]);
        assert_eq!(adj[3], vec![0]);
    }

    #[test]
    fn first_overlap_is_lexicographic() {
        // 0,1,2 and 1,2,3 both triple-overlap; the first is reported
        let pts = vec![
            Point::origin(),
            Point::frac(1, 8, 1, 8),
            Point::frac(1, 8, 0, 1),
            Point::frac(1, 4, 1, 8),
        ];
        let (idx, w) = first_deep_overlap(&pts, &one(), 3).unwrap();
        assert_eq!(idx, vec![0, 1, 2]);
        for &i in &idx {
            let t = crate::geom::TriTranslate::new(pts[i].clone());
            assert!(t.interior_contains(&w));
        }
        assert!(first_deep_overlap(&pts, &one(), 5).is_none());
    }
}

//! Stair polygons of a normal k-fold packing.
//!
//! `T_j` presses `T_i` when their unit squares meet and the base point of
//! `T_i` precedes that of `T_j`. For each translate, every choice of `k`
//! distinct pressers whose squares share a point contributes the quadrant
//! at the lower-left corner of that common intersection; the stair polygon
//! of `T_i` is its square minus all those quadrants.

mod audit;

use thiserror::Error;

use crate::geom::{
    pareto_minimal, precedes, prec_cmp, stair_from_corners, AxisSegment, BasePoint, GeomError,
    Point, StairPolygon, TriTranslate,
};
use crate::overlap::square_neighbors;
use crate::packing::{PackingError, PackingInstance};

pub use audit::{audit, audit_family, AuditReport, CheckResult};

/// Upper bound on the k-subsets visited while collecting press corners for
/// a single translate.
pub const SUBSET_VISIT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StairError {
    #[error("identical translates cannot press each other")]
    IdenticalTranslates,
    #[error("{0}")]
    Packing(#[from] PackingError),
    #[error("translate index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("more than {cap} presser subsets visited for translate {index}")]
    SubsetCapExceeded { index: usize, cap: u64 },
    #[error("geometry: {0}")]
    Geom(#[from] GeomError),
}

/// Whether `a` presses `b`.
pub fn presses(a: &TriTranslate, b: &TriTranslate) -> Result<bool, StairError> {
    if a == b {
        return Err(StairError::IdenticalTranslates);
    }
    let meet = !a.square().intersect(&b.square()).is_empty();
    Ok(meet && precedes(&b.offset, &a.offset))
}

/// The press relation of a normal packing, with the square-overlap graph it
/// is built on.
#[derive(Debug, Clone)]
pub struct PressGraph {
    /// `neighbors[i]`: indices whose squares meet square `i`, ascending.
    pub neighbors: Vec<Vec<usize>>,
    /// `pressers[i]`: indices that press `i`, ascending.
    pub pressers: Vec<Vec<usize>>,
    /// `pressed[i]`: indices pressed by `i`, ascending.
    pub pressed: Vec<Vec<usize>>,
    /// Position of each translate in the ≺ order of offsets.
    pub rank: Vec<usize>,
}

impl PressGraph {
    pub fn build(p: &PackingInstance) -> Result<Self, StairError> {
        let offsets = p.offsets();
        let n = offsets.len();
        let neighbors = square_neighbors(offsets);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| prec_cmp(&offsets[a], &offsets[b]));
        if let Some(w) = order.windows(2).find(|w| offsets[w[0]] == offsets[w[1]]) {
            let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
            return Err(PackingError::NotNormal(a, b).into());
        }
        let mut rank = vec![0; n];
        for (pos, &i) in order.iter().enumerate() {
            rank[i] = pos;
        }
        let pressers = (0..n)
            .map(|i| neighbors[i].iter().copied().filter(|&j| rank[j] > rank[i]).collect())
            .collect();
        let pressed = (0..n)
            .map(|i| neighbors[i].iter().copied().filter(|&j| rank[j] < rank[i]).collect())
            .collect();
        Ok(PressGraph { neighbors, pressers, pressed, rank })
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    /// Whether translate `j` presses translate `i`.
    pub fn presses(&self, j: usize, i: usize) -> bool {
        self.pressers[i].binary_search(&j).is_ok()
    }

    pub fn squares_meet(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }
}

/// Indices of the translates pressing translate `i`.
pub fn pressers_of(p: &PackingInstance, i: usize) -> Result<Vec<usize>, StairError> {
    if i >= p.len() {
        return Err(StairError::IndexOutOfRange(i));
    }
    let graph = PressGraph::build(p)?;
    Ok(graph.pressers[i].clone())
}

/// Pareto-minimal lower-left corners of the common square intersections
/// of all k-subsets of pressers of translate `i`.
pub fn press_corners(p: &PackingInstance, i: usize) -> Result<Vec<Point>, StairError> {
    if i >= p.len() {
        return Err(StairError::IndexOutOfRange(i));
    }
    p.require_normal_valid()?;
    let graph = PressGraph::build(p)?;
    Ok(corners_for(p, &graph, i)?.corners)
}

/// Press corners of one translate, with the presser subsets producing them.
#[derive(Debug, Clone)]
pub(crate) struct CornerSet {
    pub corners: Vec<Point>,
    /// Every k-subset visited whose squares share a point.
    pub subsets: Vec<Vec<usize>>,
}

pub(crate) fn corners_for(
    p: &PackingInstance,
    graph: &PressGraph,
    i: usize,
) -> Result<CornerSet, StairError> {
    let k = p.k() as usize;
    let pool = &graph.pressers[i];
    let mut out = CornerSet { corners: Vec::new(), subsets: Vec::new() };
    if pool.len() < k {
        return Ok(out);
    }
    let mut visited = 0u64;
    let mut chosen = Vec::with_capacity(k);
    collect_subsets(p, graph, i, pool, 0, k, &mut chosen, &mut visited, &mut out)?;
    out.corners = pareto_minimal(&out.corners);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn collect_subsets(
    p: &PackingInstance,
    graph: &PressGraph,
    i: usize,
    pool: &[usize],
    from: usize,
    k: usize,
    chosen: &mut Vec<usize>,
    visited: &mut u64,
    out: &mut CornerSet,
) -> Result<(), StairError> {
    if chosen.len() == k {
        let offsets = p.offsets();
        let x = chosen.iter().map(|&j| &offsets[j].x).max().expect("k >= 1");
        let y = chosen.iter().map(|&j| &offsets[j].y).max().expect("k >= 1");
        out.corners.push(Point::new(x.clone(), y.clone()));
        out.subsets.push(chosen.clone());
        return Ok(());
    }
    for pos in from..pool.len() {
        if pool.len() - pos < k - chosen.len() {
            break;
        }
        let j = pool[pos];
        if !chosen.iter().all(|&c| graph.squares_meet(c, j)) {
            continue;
        }
        *visited += 1;
        if *visited > SUBSET_VISIT_CAP {
            return Err(StairError::SubsetCapExceeded { index: i, cap: SUBSET_VISIT_CAP });
        }
        chosen.push(j);
        collect_subsets(p, graph, i, pool, pos + 1, k, chosen, visited, out)?;
        chosen.pop();
    }
    Ok(())
}

/// The stair polygons of a normal valid packing and the quantities derived
/// from them.
#[derive(Debug, Clone)]
pub struct StairFamily {
    pub k: u32,
    pub stairs: Vec<StairPolygon>,
    /// Step count `r_i` of each stair.
    pub r: Vec<usize>,
    /// Concave corners of each stair.
    pub inner_corners: Vec<Vec<Point>>,
    /// `closure(S_i) \ S_i` clipped to the half-open square of `T_i`.
    pub boundary: Vec<Vec<AxisSegment>>,
    /// `n_i`: stairs whose base point lies in the interior or on a concave
    /// corner of stair `i`.
    pub n: Vec<usize>,
    /// `n_i*`: stairs whose interior or concave corners hold the base point
    /// of stair `i`.
    pub n_star: Vec<usize>,
    /// Pareto-minimal press corners of each translate.
    pub corners: Vec<Vec<Point>>,
    pub(crate) presser_subsets: Vec<Vec<Vec<usize>>>,
    pub graph: PressGraph,
}

impl StairFamily {
    pub fn len(&self) -> usize {
        self.stairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stairs.is_empty()
    }

    pub fn r_sum(&self) -> usize {
        self.r.iter().sum()
    }
}

fn in_interior_or_corner(s: &StairPolygon, corners: &[Point], p: &Point) -> bool {
    s.interior_contains(p) || corners.contains(p)
}

pub fn build_stairs(p: &PackingInstance) -> Result<StairFamily, StairError> {
    p.require_normal_valid()?;
    build_stairs_unchecked(p)
}

/// [`build_stairs`] without re-validating; the caller guarantees the
/// instance is normal and valid.
pub(crate) fn build_stairs_unchecked(p: &PackingInstance) -> Result<StairFamily, StairError> {
    let graph = PressGraph::build(p)?;
    let n = p.len();
    let mut stairs = Vec::with_capacity(n);
    let mut corners = Vec::with_capacity(n);
    let mut presser_subsets = Vec::with_capacity(n);
    for i in 0..n {
        let set = corners_for(p, &graph, i)?;
        let square = p.translate(i).square();
        stairs.push(stair_from_corners(&square, &set.corners)?);
        corners.push(set.corners);
        presser_subsets.push(set.subsets);
    }
    let r: Vec<usize> = stairs.iter().map(StairPolygon::r).collect();
    let inner_corners: Vec<Vec<Point>> = stairs.iter().map(StairPolygon::inner_corners).collect();
    let boundary = stairs
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let square = p.translate(i).square();
            s.boundary_segments().iter().filter_map(|g| g.clip(&square)).collect()
        })
        .collect();
    let bases: Vec<Point> = stairs
        .iter()
        .map(|s| s.base_point())
        .collect::<Result<_, _>>()?;

    let mut counts = vec![0usize; n];
    let mut counts_star = vec![0usize; n];
    for i in 0..n {
        for &j in &graph.neighbors[i] {
            if in_interior_or_corner(&stairs[i], &inner_corners[i], &bases[j]) {
                counts[i] += 1;
                counts_star[j] += 1;
            }
        }
    }
    Ok(StairFamily {
        k: p.k(),
        stairs,
        r,
        inner_corners,
        boundary,
        n: counts,
        n_star: counts_star,
        corners,
        presser_subsets,
        graph,
    })
}

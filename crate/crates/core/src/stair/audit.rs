//! Exact self-checks of the stair construction.
//!
//! Each check is a property that holds for every normal valid packing, so a
//! FAIL line always points at a bug. The report prints as one line per
//! check: name, `PASS` or `FAIL`, and for failures a witness.

use std::fmt;

use super::{build_stairs_unchecked, presses, StairError, StairFamily};
use crate::geom::{rect_intersect, BasePoint, Point, Rect};
use crate::packing::PackingInstance;
use crate::rational::{int, one, rat, Rational};

/// Cap on square cliques visited by the common-sink check.
const CLIQUE_VISIT_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

impl CheckResult {
    fn new(name: &'static str, failure: Option<String>) -> Self {
        CheckResult { name, passed: failure.is_none(), witness: failure }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub checks: Vec<CheckResult>,
}

impl AuditReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "{:<28} PASS", c.name)?,
                Some(w) => writeln!(f, "{:<28} FAIL {}", c.name, w)?,
            }
        }
        Ok(())
    }
}

/// Builds the stairs of a normal valid packing and audits them.
pub fn audit(p: &PackingInstance) -> Result<AuditReport, StairError> {
    p.require_normal_valid()?;
    let fam = build_stairs_unchecked(p)?;
    Ok(audit_family(p, &fam))
}

/// Audits an already built family; `fam` must come from `p`.
pub fn audit_family(p: &PackingInstance, fam: &StairFamily) -> AuditReport {
    let checks = vec![
        CheckResult::new("press-dichotomy", press_dichotomy(p, fam)),
        CheckResult::new("press-transitivity", press_transitivity(fam)),
        CheckResult::new("common-sink", common_sink(p, fam)),
        CheckResult::new("square-cut-inside-triangles", square_cut_inside_triangles(p, fam)),
        CheckResult::new("interior-inside-stair", interior_inside_stair(p, fam)),
        CheckResult::new("inner-corner-owner", inner_corner_owner(fam)),
        CheckResult::new("stair-base-point", stair_base_point(p, fam)),
        CheckResult::new("stairs-k-fold", stairs_k_fold(fam)),
        CheckResult::new("stair-area-budget", stair_area_budget(p, fam)),
        CheckResult::new("boundary-clear-of-pressed", boundary_clear_of_pressed(fam)),
        CheckResult::new("n-lower-bound", n_lower_bound(fam)),
        CheckResult::new("n-sum-bound", n_sum_bound(fam)),
        CheckResult::new("n-star-identity", n_star_identity(fam)),
        CheckResult::new("n-star-bound", n_star_bound(fam)),
        CheckResult::new("r-sum-bound", r_sum_bound(fam)),
    ];
    AuditReport { checks }
}

fn press_dichotomy(p: &PackingInstance, fam: &StairFamily) -> Option<String> {
    for i in 0..p.len() {
        for &j in fam.graph.neighbors[i].iter().filter(|&&j| j > i) {
            let (ti, tj) = (p.translate(i), p.translate(j));
            let forward = presses(&ti, &tj).ok()?;
            let backward = presses(&tj, &ti).ok()?;
            if forward == backward || forward != fam.graph.presses(i, j) {
                return Some(format!("pair {i},{j}"));
            }
        }
    }
    None
}

fn press_transitivity(fam: &StairFamily) -> Option<String> {
    let g = &fam.graph;
    for b in 0..g.len() {
        for &a in &g.pressers[b] {
            for &c in &g.pressed[b] {
                if a != c && g.squares_meet(a, c) && !g.presses(a, c) {
                    return Some(format!("{a} presses {b} presses {c} but not {a} -> {c}"));
                }
            }
        }
    }
    None
}

/// Every square clique of size up to `k+1` has a member pressed by all the
/// others, namely its ≺-least member.
fn common_sink(p: &PackingInstance, fam: &StairFamily) -> Option<String> {
    let g = &fam.graph;
    let max = p.k() as usize + 1;
    let mut visited = 0u64;
    let mut clique = Vec::with_capacity(max);
    for i in 0..g.len() {
        clique.clear();
        clique.push(i);
        let upper: Vec<usize> = g.neighbors[i].iter().copied().filter(|&j| j > i).collect();
        if let Some(w) = sink_walk(fam, &upper, max, &mut clique, &mut visited) {
            return Some(w);
        }
    }
    None
}

fn sink_walk(
    fam: &StairFamily,
    candidates: &[usize],
    max: usize,
    clique: &mut Vec<usize>,
    visited: &mut u64,
) -> Option<String> {
    let g = &fam.graph;
    *visited += 1;
    if *visited > CLIQUE_VISIT_CAP {
        return Some(format!("more than {CLIQUE_VISIT_CAP} cliques"));
    }
    let sink = *clique.iter().min_by_key(|&&m| g.rank[m]).expect("nonempty clique");
    if let Some(&bad) = clique.iter().find(|&&m| m != sink && !g.presses(m, sink)) {
        return Some(format!("clique {clique:?}: {bad} does not press {sink}"));
    }
    if clique.len() == max {
        return None;
    }
    for (pos, &j) in candidates.iter().enumerate() {
        let rest: Vec<usize> =
            candidates[pos + 1..].iter().copied().filter(|&c| g.squares_meet(j, c)).collect();
        clique.push(j);
        let found = sink_walk(fam, &rest, max, clique, visited);
        clique.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// For pressers `T_1..T_n` of `T_i`: the points of `T_i` inside all their
/// squares lie in all their triangles. Exact on every presser subset that
/// produced a corner and on single pressers, plus grid spot checks on the
/// single pressers.
fn square_cut_inside_triangles(p: &PackingInstance, fam: &StairFamily) -> Option<String> {
    let offs = p.offsets();
    for i in 0..p.len() {
        let singles = fam.graph.pressers[i].iter().map(|&j| vec![j]);
        for subset in singles.chain(fam.presser_subsets[i].iter().cloned()) {
            let squares: Vec<Rect> = subset.iter().map(|&j| p.translate(j).square()).collect();
            let Ok(cut) = rect_intersect(&squares) else { continue };
            if cut.is_empty() {
                continue;
            }
            let min_top = subset
                .iter()
                .map(|&j| offs[j].coord_sum() + one())
                .min()
                .expect("nonempty subset");
            if let Some(u) = highest_point_above_limit(&cut, &offs[i], &min_top) {
                return Some(format!("translate {i}, pressers {subset:?}, point {u}"));
            }
            if subset.len() == 1 {
                let ti = p.translate(i);
                let tj = p.translate(subset[0]);
                for a in 0..6 {
                    for b in 0..6 {
                        let u = Point::new(
                            &cut.x0 + (&cut.x1 - &cut.x0) * rat(a, 6),
                            &cut.y0 + (&cut.y1 - &cut.y0) * rat(b, 6),
                        );
                        if ti.contains(&u) && !tj.contains(&u) {
                            return Some(format!("translate {i}, presser {}, point {u}", subset[0]));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Some point of `cut ∩ (T + base)` with coordinate sum above `limit`, if
/// one exists. Sums over the half-open box `[a0,a1)×[b0,b1)` cut by the
/// triangle fill `[a0+b0, min(a1+b1, s+1))`, closed at `s+1` when that is
/// the smaller end.
fn highest_point_above_limit(cut: &Rect, base: &Point, limit: &Rational) -> Option<Point> {
    let a0 = if cut.x0 > base.x { cut.x0.clone() } else { base.x.clone() };
    let b0 = if cut.y0 > base.y { cut.y0.clone() } else { base.y.clone() };
    if a0 >= cut.x1 || b0 >= cut.y1 {
        return None;
    }
    let low = &a0 + &b0;
    let top = base.coord_sum() + one();
    if low > top {
        return None;
    }
    let box_top = &cut.x1 + &cut.y1;
    let target = if top < box_top {
        top
    } else {
        let from = if limit > &low { limit.clone() } else { low.clone() };
        (from + &box_top) / int(2)
    };
    if &target <= limit {
        return None;
    }
    // walk the box diagonal until the sum reaches the target
    let t = (&target - &low) / (&box_top - &low);
    Some(Point::new(&a0 + (&cut.x1 - &a0) * &t, &b0 + (&cut.y1 - &b0) * &t))
}

/// `Int(T_i)` misses every press quadrant of `T_i`, plus grid checks of
/// `Int(T_i) ⊆ S_i`.
fn interior_inside_stair(p: &PackingInstance, fam: &StairFamily) -> Option<String> {
    for (i, o) in p.offsets().iter().enumerate() {
        let top = o.coord_sum() + one();
        for c in &fam.corners[i] {
            let x = if c.x > o.x { &c.x } else { &o.x };
            let y = if c.y > o.y { &c.y } else { &o.y };
            if x + y < top {
                return Some(format!("translate {i}, corner {c}"));
            }
        }
        for a in 1..8 {
            for b in 1..8 - a {
                let u = o.add(&Point::frac(a, 8, b, 8));
                if !fam.stairs[i].contains(&u) {
                    return Some(format!("translate {i}, interior point {u}"));
                }
            }
        }
    }
    None
}

/// Each inner corner of `S_i` lies in some `S_j` whose base point has the
/// same x; the smallest such `j` is taken.
fn inner_corner_owner(fam: &StairFamily) -> Option<String> {
    for i in 0..fam.len() {
        for z in &fam.inner_corners[i] {
            let owner = fam.graph.neighbors[i].iter().copied().find(|&j| {
                fam.stairs[j].contains(z)
                    && fam.stairs[j].base_point().map(|v| v.x == z.x).unwrap_or(false)
            });
            if owner.is_none() {
                return Some(format!("stair {i}, corner {z}"));
            }
        }
    }
    None
}

fn stair_base_point(p: &PackingInstance, fam: &StairFamily) -> Option<String> {
    for (i, s) in fam.stairs.iter().enumerate() {
        match s.base_point() {
            Ok(v) if v == p.offsets()[i] => {}
            _ => return Some(format!("stair {i}")),
        }
    }
    None
}

/// No `k+1` stairs share a point, decided on their rectangle pieces.
fn stairs_k_fold(fam: &StairFamily) -> Option<String> {
    let depth = fam.k as usize + 1;
    let rects: Vec<Vec<Rect>> = fam.stairs.iter().map(|s| s.rects()).collect();
    let g = &fam.graph;
    let mut chosen = Vec::with_capacity(depth);
    for i in 0..fam.len() {
        chosen.clear();
        chosen.push(i);
        let upper: Vec<usize> = g.neighbors[i].iter().copied().filter(|&j| j > i).collect();
        if let Some(w) = stack_walk(fam, &rects, &upper, depth, &mut chosen, &rects[i]) {
            return Some(w);
        }
    }
    None
}

fn stack_walk(
    fam: &StairFamily,
    rects: &[Vec<Rect>],
    candidates: &[usize],
    depth: usize,
    chosen: &mut Vec<usize>,
    common: &[Rect],
) -> Option<String> {
    if chosen.len() == depth {
        let v = common[0].base_point().ok()?;
        return Some(format!("stairs {chosen:?} share {v}"));
    }
    let g = &fam.graph;
    for (pos, &j) in candidates.iter().enumerate() {
        let next: Vec<Rect> = common
            .iter()
            .flat_map(|a| rects[j].iter().map(move |b| a.intersect(b)))
            .filter(|r| !r.is_empty())
            .collect();
        if next.is_empty() {
            continue;
        }
        let rest: Vec<usize> =
            candidates[pos + 1..].iter().copied().filter(|&c| g.squares_meet(j, c)).collect();
        chosen.push(j);
        let found = stack_walk(fam, rects, &rest, depth, chosen, &next);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

fn stair_area_budget(p: &PackingInstance, fam: &StairFamily) -> Option<String> {
    let l = int(i64::from(p.l()));
    for (i, s) in fam.stairs.iter().enumerate() {
        let b = s.bounding_rect();
        if b.x0 < int(0) || b.y0 < int(0) || b.x1 > l || b.y1 > l {
            return Some(format!("stair {i} leaves the window"));
        }
    }
    let total: Rational = fam.stairs.iter().map(|s| s.area()).sum();
    let budget = int(i64::from(p.k())) * &l * &l;
    (total > budget).then(|| format!("total area {total} > {budget}"))
}

/// The exposed edges of a stair miss every stair it presses.
fn boundary_clear_of_pressed(fam: &StairFamily) -> Option<String> {
    for i in 0..fam.len() {
        for &j in &fam.graph.pressed[i] {
            for seg in &fam.boundary[i] {
                for r in fam.stairs[j].rects() {
                    if seg.meets_rect(&r) {
                        let at = seg.clip(&r).and_then(|s| s.sample_point());
                        let at = at.map(|u| u.to_string()).unwrap_or_default();
                        return Some(format!("edge {seg} of stair {i} enters stair {j} at {at}"));
                    }
                }
            }
        }
    }
    None
}

fn n_lower_bound(fam: &StairFamily) -> Option<String> {
    let k = fam.k as i64;
    (0..fam.len()).find(|&i| (fam.n[i] as i64) < fam.r[i] as i64 - k + 1).map(|i| {
        format!("stair {i}: n = {} < r - k + 1 = {}", fam.n[i], fam.r[i] as i64 - k + 1)
    })
}

fn n_sum_bound(fam: &StairFamily) -> Option<String> {
    let total: usize = fam.n.iter().sum();
    let budget = fam.k as usize * fam.len();
    (total > budget).then(|| format!("sum n = {total} > {budget}"))
}

fn n_star_identity(fam: &StairFamily) -> Option<String> {
    let a: usize = fam.n.iter().sum();
    let b: usize = fam.n_star.iter().sum();
    (a != b).then(|| format!("sum n = {a}, sum n* = {b}"))
}

fn n_star_bound(fam: &StairFamily) -> Option<String> {
    let k = fam.k as usize;
    (0..fam.len())
        .find(|&i| fam.n_star[i] > k)
        .map(|i| format!("stair {i}: n* = {} > {k}", fam.n_star[i]))
}

fn r_sum_bound(fam: &StairFamily) -> Option<String> {
    let total = fam.r_sum();
    let budget = (2 * fam.k as usize - 1) * fam.len();
    (total > budget).then(|| format!("sum r = {total} > {budget}"))
}

//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p stairpack --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stairpack::extremal::{
    certify_bound, lattice_clip, min_stair_area, optimal_lattice, verify_lattice_packing,
};
use stairpack::geom::Point;
use stairpack::packing::{
    density_bound, is_normal, normalize, search_with, validate, window_density, SearchConfig,
};
use stairpack::rational::{int, one, rat, to_f64, Rational};
use stairpack::shadow::{
    find_strict_counterexample, random_family, sample_multiplicity, sample_points, Comparison,
    Direction,
};
use stairpack::PackingInstance;

struct Outcome {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn within(elapsed: Duration, limit_secs: u64) -> bool {
    elapsed <= Duration::from_secs(limit_secs)
}

// ---------------------------------------------------------------------------
// 1. minimum stair area table

fn cut_area(corners: &[(f64, f64)]) -> f64 {
    let mut cs = corners.to_vec();
    cs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut removed = 0.0;
    let mut lowest = 1.0f64;
    for w in 0..cs.len() {
        lowest = lowest.min(cs[w].1);
        let next_x = if w + 1 < cs.len() { cs[w + 1].0 } else { 1.0 };
        removed += (next_x - cs[w].0) * (1.0 - lowest);
    }
    1.0 - removed
}

fn project(c: (f64, f64)) -> (f64, f64) {
    let (mut x, mut y) = (c.0.clamp(0.0, 1.0), c.1.clamp(0.0, 1.0));
    if x + y < 1.0 {
        let d = (1.0 - x - y) / 2.0;
        x += d;
        y += d;
    }
    (x.clamp(0.0, 1.0), y.clamp(0.0, 1.0))
}

/// Smallest area of a stair with `r` inner corners containing the open
/// triangle, by multi-start pattern search over corners kept on or above
/// the hypotenuse.
fn numeric_min_area(r: usize, restarts: usize, seed: u64) -> f64 {
    if r == 0 {
        return 1.0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::INFINITY;
    for _ in 0..restarts {
        let mut cs: Vec<(f64, f64)> = (0..r).map(|_| project((rng.gen(), rng.gen()))).collect();
        let mut val = cut_area(&cs);
        let mut step = 0.25;
        while step > 1e-10 {
            let mut improved = false;
            for j in 0..r {
                for (dx, dy) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (1.0, -1.0), (-1.0, 1.0)] {
                    let old = cs[j];
                    cs[j] = project((old.0 + dx * step, old.1 + dy * step));
                    let v = cut_area(&cs);
                    if v < val - 1e-15 {
                        val = v;
                        improved = true;
                    } else {
                        cs[j] = old;
                    }
                }
            }
            if !improved {
                step /= 2.0;
            }
        }
        best = best.min(val);
    }
    best
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let table = [rat(1, 1), rat(3, 4), rat(2, 3), rat(5, 8), rat(3, 5), rat(7, 12)];
    let exact_ok = table.iter().enumerate().all(|(r, v)| &min_stair_area(r as u32) == v);
    let mut worst_gap = 0.0f64;
    for r in 0..=6u32 {
        let exact = to_f64(&min_stair_area(r));
        let found = numeric_min_area(r as usize, 40, u64::from(r));
        worst_gap = worst_gap.max((found - exact).abs());
    }
    let elapsed = start.elapsed();
    verdict(
        exact_ok && worst_gap <= 1e-6 && within(elapsed, 60),
        format!("table r=0..5 exact={exact_ok}, oracle r<=6 max |gap|={worst_gap:.2e} (tol 1e-6)"),
    )
}

// ---------------------------------------------------------------------------
// 2. optimal lattices

fn criterion_2() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for k in 1..=3u32 {
        let start = Instant::now();
        let passed = match optimal_lattice(k) {
            Ok(b) => {
                let verified = verify_lattice_packing(&b, k);
                let exact = b.density() == density_bound(k);
                parts.push(format!("k={k} density {}", b.density()));
                verified && exact
            }
            Err(e) => {
                parts.push(format!("k={k} error {e}"));
                false
            }
        };
        let elapsed = start.elapsed();
        parts.push(format!("({:.2}s)", elapsed.as_secs_f64()));
        ok &= passed && within(elapsed, 10);
    }
    verdict(ok, parts.join(" "))
}

// ---------------------------------------------------------------------------
// corpus shared by criteria 3, 4 and 8

struct Corpus {
    instances: Vec<PackingInstance>,
}

fn build_corpus() -> Corpus {
    let grids = [2u32, 4, 8];
    let mut instances = Vec::new();
    for k in 1..=3u32 {
        for s in 0..200u64 {
            let l = 3 + (s % 6) as u32;
            let cfg = SearchConfig { grid: grids[(s / 6 % 3) as usize], ..SearchConfig::default() };
            let iters = 40 + (s * 37 % 400);
            instances.push(search_with(k, l, 1000 * u64::from(k) + s, iters, &cfg));
        }
        let b = optimal_lattice(k).expect("lattice exists");
        for l in 3..=8u32 {
            instances.push(lattice_clip(&b, k, l).expect("clip verifies"));
        }
    }
    Corpus { instances }
}

struct CertifyRun {
    failures: Vec<String>,
    audit_failures: Vec<String>,
    audited: usize,
    checks: usize,
    elapsed: Duration,
}

fn certify_corpus(corpus: &Corpus) -> CertifyRun {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut audit_failures = Vec::new();
    let mut checks = 0;
    let mut audited = 0;
    for (idx, p) in corpus.instances.iter().enumerate() {
        if p.is_empty() {
            continue;
        }
        let d = window_density(p);
        if d.window_density > density_bound(p.k()) {
            failures.push(format!("#{idx} density {} above bound", d.window_density));
        }
        match certify_bound(p) {
            Ok(cert) => {
                if !cert.verdict {
                    failures.push(format!("#{idx} verdict FAIL"));
                }
                audited += 1;
                checks += cert.audit.checks.len();
                for f in cert.audit.failures() {
                    audit_failures.push(format!("#{idx} {}", f.name));
                }
            }
            Err(e) => failures.push(format!("#{idx} error {e}")),
        }
    }
    CertifyRun { failures, audit_failures, audited, checks, elapsed: start.elapsed() }
}

fn criterion_3(corpus: &Corpus, run: &CertifyRun) -> Outcome {
    let sizes: Vec<usize> = corpus.instances.iter().map(PackingInstance::len).collect();
    let largest = sizes.iter().max().copied().unwrap_or(0);
    let first = run.failures.first().cloned().unwrap_or_default();
    verdict(
        run.failures.is_empty() && within(run.elapsed, 300),
        format!(
            "{} instances (N up to {largest}) certified in {:.1}s, {} failures {first}",
            corpus.instances.len(),
            run.elapsed.as_secs_f64(),
            run.failures.len()
        ),
    )
}

fn criterion_4(run: &CertifyRun) -> Outcome {
    let first = run.audit_failures.first().cloned().unwrap_or_default();
    verdict(
        run.audit_failures.is_empty() && run.audited > 0,
        format!(
            "{} families, {} checks, {} failures {first}",
            run.audited,
            run.checks,
            run.audit_failures.len()
        ),
    )
}

// ---------------------------------------------------------------------------
// 5. lattice clips approach the bound

fn criterion_5() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for k in 1..=2u32 {
        let b = optimal_lattice(k).expect("lattice exists");
        for l in [20u32, 50] {
            let clip = lattice_clip(&b, k, l).expect("clip verifies");
            let d = window_density(&clip);
            let bound = density_bound(k);
            let lf = int(i64::from(l));
            let derived = (one() - int(2) / &lf) * &bound;
            let stated = (one() - int(4) / &lf) * &bound;
            ok &= d.window_density >= derived;
            parts.push(format!(
                "k={k} l={l} N={} {:.4}>={:.4}(2/l),{:.4}(4/l)",
                d.n,
                to_f64(&d.window_density),
                to_f64(&derived),
                to_f64(&stated)
            ));
        }
    }
    verdict(ok, parts.join("; "))
}

// ---------------------------------------------------------------------------
// 6. normalization

fn with_duplicates(seed: u64) -> PackingInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(2..=4u32);
    let l = rng.gen_range(2..=5u32);
    let base = search_with(1, l, seed, 150, &SearchConfig { grid: 4, ..SearchConfig::default() });
    let mut offsets = Vec::new();
    for (i, o) in base.offsets().iter().enumerate() {
        let copies = if i == 0 { k } else { rng.gen_range(1..=k) };
        for _ in 0..copies {
            offsets.push(o.clone());
        }
    }
    PackingInstance::new(k, l, offsets).expect("offsets stay in the window")
}

fn criterion_6() -> Outcome {
    let epsilons = [rat(1, 10), rat(1, 4), rat(1, 2), rat(1, 1000)];
    let mut failures = Vec::new();
    let mut duplicated = 0;
    for seed in 0..50u64 {
        let p = with_duplicates(seed);
        if p.is_empty() || validate(&p).is_err() {
            failures.push(format!("seed {seed}: bad input"));
            continue;
        }
        if !is_normal(&p) {
            duplicated += 1;
        }
        let eps = &epsilons[seed as usize % epsilons.len()];
        let q = match normalize(&p, eps) {
            Ok(q) => q,
            Err(e) => {
                failures.push(format!("seed {seed}: {e}"));
                continue;
            }
        };
        let contained = (0..p.len()).all(|i| q.contained_in(&p, i));
        let unit_ok = q.to_unit_scale().is_ok_and(|u| u.require_normal_valid().is_ok());
        if !(q.is_normal() && q.validate().is_ok() && contained && unit_ok && q.scale == one() - eps) {
            failures.push(format!("seed {seed}"));
        }
    }
    verdict(
        failures.is_empty() && duplicated == 50,
        format!("50 instances, {duplicated} with duplicates, failures {failures:?}"),
    )
}

// ---------------------------------------------------------------------------
// 7. shadow cells

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let dirs = [
        Point::from_ints(1, 0),
        Point::from_ints(0, 1),
        Point::frac(1, 1, 1, 3),
        Point::from_ints(-2, 1),
        Point::from_ints(-1, -1),
    ];
    let mut worst_excess = 0i64;
    let mut members = 0;
    for seed in 0..50u64 {
        let k = 1 + (seed % 2) as u32;
        let family = random_family(k, seed, 8);
        members += family.len();
        let v = Direction::new(dirs[seed as usize % dirs.len()].clone()).expect("non-zero");
        let pts = sample_points(&family, 10_000, seed);
        let m = sample_multiplicity(&family, k, &v, &pts, Comparison::Weak);
        worst_excess = worst_excess.max(m.max as i64 - i64::from(k));
    }
    let cex = (0..20u64).find_map(|s| find_strict_counterexample(2, s));
    let cex_ok = cex.as_ref().is_some_and(|c| c.strict_multiplicity >= 3 && c.weak_multiplicity <= 2);
    let cex_text = match &cex {
        Some(c) => format!("strict {} weak {} at {}", c.strict_multiplicity, c.weak_multiplicity, c.witness),
        None => "no counterexample".to_owned(),
    };
    let elapsed = start.elapsed();
    verdict(
        worst_excess <= 0 && cex_ok && within(elapsed, 120),
        format!(
            "50 families ({members} members), max multiplicity - k = {worst_excess}; {cex_text}; {:.1}s",
            elapsed.as_secs_f64()
        ),
    )
}

// ---------------------------------------------------------------------------
// 8. validate against an arrangement-vertex oracle

/// Maximum number of open triangles containing a common point, found by
/// probing just off every vertex of the line arrangement `x = x_i`,
/// `y = y_i`, `x + y = x_i + y_i + 1`. Every open cell of the arrangement
/// inside a triangle is a bounded polygon, so it touches a vertex, and the
/// six probe directions fall in the six sectors that three line directions
/// cut around a vertex.
fn oracle_is_valid(p: &PackingInstance) -> bool {
    let offs = p.offsets();
    let xs: BTreeSet<Rational> = offs.iter().map(|o| o.x.clone()).collect();
    let ys: BTreeSet<Rational> = offs.iter().map(|o| o.y.clone()).collect();
    let ss: BTreeSet<Rational> = offs.iter().map(|o| o.coord_sum() + one()).collect();
    let denom = offs.iter().fold(BigInt::one(), |acc, o| acc.lcm(o.x.denom()).lcm(o.y.denom()));
    // neighbouring arrangement lines are at least 1/denom apart in x, y or
    // x+y, and a probe moves x+y by at most 4·eps
    let eps = Rational::new(BigInt::one(), denom * 8);
    let mut vertices = BTreeSet::new();
    for x in &xs {
        for y in &ys {
            vertices.insert(Point::new(x.clone(), y.clone()));
        }
        for s in &ss {
            vertices.insert(Point::new(x.clone(), s - x));
        }
    }
    for y in &ys {
        for s in &ss {
            vertices.insert(Point::new(s - y, y.clone()));
        }
    }
    let probes = [(1, 1), (-1, 3), (-3, 1), (-1, -1), (1, -3), (3, -1)];
    for vtx in &vertices {
        for (dx, dy) in probes {
            let q = Point::new(&vtx.x + &eps * int(dx), &vtx.y + &eps * int(dy));
            let depth = p.translates().filter(|t| t.interior_contains(&q)).count();
            if depth > p.k() as usize {
                return false;
            }
        }
    }
    true
}

fn random_instance(k: u32, seed: u64) -> PackingInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = rng.gen_range(1..=3u32);
    let n = rng.gen_range(1..=k as usize + 4);
    let den = [1i64, 2, 3, 4][rng.gen_range(0..4)];
    let top = (i64::from(l) - 1) * den;
    let offsets =
        (0..n).map(|_| Point::new(rat(rng.gen_range(0..=top), den), rat(rng.gen_range(0..=top), den))).collect();
    PackingInstance::new(k, l, offsets).expect("offsets in window")
}

fn criterion_8(corpus: &Corpus) -> Outcome {
    let mut checked = 0;
    let mut invalid = 0;
    let mut disagreements = Vec::new();
    let mut check = |label: String, p: &PackingInstance| {
        let fast = validate(p).is_ok();
        let slow = oracle_is_valid(p);
        checked += 1;
        if !slow {
            invalid += 1;
        }
        if fast != slow {
            disagreements.push(label);
        }
    };
    for (idx, p) in corpus.instances.iter().enumerate().filter(|(_, p)| p.len() <= 12) {
        check(format!("corpus #{idx}"), p);
    }
    for k in 1..=3u32 {
        for seed in 0..200u64 {
            check(format!("random k={k} seed {seed}"), &random_instance(k, 7000 + seed));
        }
    }
    verdict(
        disagreements.is_empty(),
        format!("{checked} instances ({invalid} invalid), disagreements {disagreements:?}"),
    )
}

// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    let mut all = true;
    let mut report = |n: u32, name: &str, run: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let o = run();
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {n} {name:<22} {status} [{:.1}s] {}", start.elapsed().as_secs_f64(), o.detail);
        all &= o.passed;
    };
    report(1, "min-stair-area", &criterion_1);
    report(2, "optimal-lattices", &criterion_2);
    let corpus = build_corpus();
    let run = certify_corpus(&corpus);
    report(3, "upper-bound", &|| criterion_3(&corpus, &run));
    report(4, "stair-audit", &|| criterion_4(&run));
    report(5, "lattice-achievability", &criterion_5);
    report(6, "normalization", &criterion_6);
    report(7, "shadow-cells", &criterion_7);
    report(8, "validate-oracle", &|| criterion_8(&corpus));
    if all {
        println!("acceptance: all criteria PASS");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAIL");
        ExitCode::FAILURE
    }
}

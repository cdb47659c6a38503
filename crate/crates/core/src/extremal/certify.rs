use std::fmt;

use super::{min_stair_area, stair_area_envelope, ExtremalError};
use crate::packing::{PackingError, PackingInstance};
use crate::rational::{int, rat, Rational};
use crate::stair::{audit_family, build_stairs, AuditReport};

/// One inequality `lhs <= rhs` of the chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainLink {
    pub lhs: Rational,
    pub rhs: Rational,
}

impl ChainLink {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

/// Exact inequality chain bounding the window density of a packing by
/// `2k²/(2k+1)`:
///
/// 1. `N|T|/l² <= kN|T| / Σ area(stair)` (stairs form a k-fold packing of the window)
/// 2. `<= kN|T| / Σ min_stair_area(r)` (no stair with `r` steps is smaller)
/// 3. `<= kN|T| / (N·stair_area_envelope(mean r))` (the envelope is convex)
/// 4. `<= k|T| / min_stair_area(2k-1)` (mean step count at most `2k-1`)
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCertificate {
    pub n: usize,
    pub k: u32,
    pub l: u32,
    pub sum_stair_area: Rational,
    pub sum_min_area: Rational,
    pub r_mean: Rational,
    pub links: [ChainLink; 4],
    pub verdict: bool,
    pub audit: AuditReport,
}

impl fmt::Display for BoundCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for link in &self.links {
            writeln!(f, "{} <= {}", link.lhs, link.rhs)?;
        }
        writeln!(f, "VERDICT: {}", if self.verdict { "PASS" } else { "FAIL" })
    }
}

pub fn certify_bound(p: &PackingInstance) -> Result<BoundCertificate, ExtremalError> {
    if p.is_empty() {
        return Err(PackingError::Empty.into());
    }
    let fam = build_stairs(p)?;
    let audit = audit_family(p, &fam);
    let n = p.len() as i64;
    let k = i64::from(p.k());
    let l = i64::from(p.l());

    let covered = rat(n, 2);
    let density = &covered / int(l * l);
    let sum_stair_area: Rational = fam.stairs.iter().map(|s| s.area()).sum();
    let sum_min_area: Rational = fam.r.iter().map(|&r| min_stair_area(r as u32)).sum();
    let r_mean = rat(fam.r_sum() as i64, n);

    let budget = int(k) * &covered;
    let v1 = &budget / &sum_stair_area;
    let v2 = &budget / &sum_min_area;
    let v3 = &budget / (int(n) * stair_area_envelope(&r_mean)?);
    let v4 = rat(k, 2) / min_stair_area((2 * k - 1) as u32);

    let links = [
        ChainLink { lhs: density, rhs: v1.clone() },
        ChainLink { lhs: v1, rhs: v2.clone() },
        ChainLink { lhs: v2, rhs: v3.clone() },
        ChainLink { lhs: v3, rhs: v4 },
    ];
    let verdict = links.iter().all(ChainLink::holds);
    Ok(BoundCertificate {
        n: p.len(),
        k: p.k(),
        l: p.l(),
        sum_stair_area,
        sum_min_area,
        r_mean,
        links,
        verdict,
        audit,
    })
}

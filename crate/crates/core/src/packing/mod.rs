//! Finite k-fold translative packings of the canonical triangle in the
//! window `[0,l]²`.

mod normalize;
mod search;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::geom::{Point, TriTranslate};
use crate::overlap::first_deep_overlap;
use crate::rational::{int, one, rat, Rational};

pub use normalize::{normalize, ScaledPackingInstance};
pub use search::{search, search_with, SearchConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PackingError {
    #[error("multiplicity k must be positive")]
    ZeroMultiplicity,
    #[error("window side l must be positive")]
    ZeroWindow,
    #[error("translate {index} at {offset} does not fit in the window [0,{l}]^2")]
    OutsideWindow { index: usize, offset: Point, l: u32 },
    #[error("epsilon must satisfy 0 < eps < 1, got {0}")]
    EpsilonOutOfRange(Rational),
    #[error("not a valid packing: {0}")]
    Invalid(Violation),
    #[error("packing is not normal: translates {0} and {1} coincide")]
    NotNormal(usize, usize),
    #[error("packing is empty")]
    Empty,
}

/// A candidate k-fold packing: translates `T + offset` inside `[0,l]²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingInstance {
    k: u32,
    l: u32,
    offsets: Vec<Point>,
}

impl PackingInstance {
    /// Checks `k, l >= 1` and that every offset lies in `[0, l-1]²`.
    pub fn new(k: u32, l: u32, offsets: Vec<Point>) -> Result<Self, PackingError> {
        if k == 0 {
            return Err(PackingError::ZeroMultiplicity);
        }
        if l == 0 {
            return Err(PackingError::ZeroWindow);
        }
        let hi = int(i64::from(l) - 1);
        let lo = int(0);
        if let Some((index, offset)) = offsets
            .iter()
            .enumerate()
            .find(|(_, o)| o.x < lo || o.y < lo || o.x > hi || o.y > hi)
        {
            return Err(PackingError::OutsideWindow { index, offset: offset.clone(), l });
        }
        Ok(PackingInstance { k, l, offsets })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn offsets(&self) -> &[Point] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn translate(&self, i: usize) -> TriTranslate {
        TriTranslate::new(self.offsets[i].clone())
    }

    pub fn translates(&self) -> impl Iterator<Item = TriTranslate> + '_ {
        self.offsets.iter().cloned().map(TriTranslate::new)
    }

    pub fn into_offsets(self) -> Vec<Point> {
        self.offsets
    }

    /// Ok when the instance is valid and normal, the precondition of the
    /// stair construction.
    pub fn require_normal_valid(&self) -> Result<(), PackingError> {
        if let Some((a, b)) = first_coincidence(&self.offsets) {
            return Err(PackingError::NotNormal(a, b));
        }
        validate(self).map_err(PackingError::Invalid)
    }
}

/// `k+1` translates whose interiors share `witness`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct Violation {
    pub indices: Vec<usize>,
    pub witness: Point,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "translates {} share interior point {}", idx.join(","), self.witness)
    }
}

/// Ok iff no point lies in the interiors of `k+1` translates.
///
/// Reports the lexicographically first offending index set.
pub fn validate(p: &PackingInstance) -> Result<(), Violation> {
    validate_offsets(&p.offsets, &one(), p.k)
}

pub(crate) fn validate_offsets(offsets: &[Point], side: &Rational, k: u32) -> Result<(), Violation> {
    match first_deep_overlap(offsets, side, k as usize + 1) {
        Some((indices, witness)) => Err(Violation { indices, witness }),
        None => Ok(()),
    }
}

fn first_coincidence(offsets: &[Point]) -> Option<(usize, usize)> {
    let mut seen = std::collections::HashMap::with_capacity(offsets.len());
    for (i, o) in offsets.iter().enumerate() {
        if let Some(&first) = seen.get(o) {
            return Some((first, i));
        }
        seen.insert(o, i);
    }
    None
}

/// True iff all offsets are pairwise distinct.
pub fn is_normal(p: &PackingInstance) -> bool {
    let mut seen = HashSet::with_capacity(p.offsets.len());
    p.offsets.iter().all(|o| seen.insert(o))
}

/// `2k² / (2k+1)`, the optimal k-fold density.
pub fn density_bound(k: u32) -> Rational {
    let k = i64::from(k);
    rat(2 * k * k, 2 * k + 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub n: usize,
    pub window_density: Rational,
    pub bound: Rational,
    pub slack: Rational,
}

impl fmt::Display for DensityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N={} density={} bound={} slack={}",
            self.n, self.window_density, self.bound, self.slack
        )
    }
}

/// Covered fraction `N·|T| / l²` of the window, against the optimal bound.
pub fn window_density(p: &PackingInstance) -> DensityReport {
    let l = i64::from(p.l);
    let n = p.offsets.len();
    let window_density = rat(n as i64, 2 * l * l);
    let bound = density_bound(p.k);
    let slack = &bound - &window_density;
    DensityReport { n, window_density, bound, slack }
}

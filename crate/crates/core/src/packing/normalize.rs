use std::collections::{BTreeMap, HashSet};

use num_traits::ToPrimitive;

use super::{validate, validate_offsets, PackingError, PackingInstance, Violation};
use crate::geom::Point;
use crate::rational::{int, one, Rational};

/// Translates of `scale·T` produced by [`normalize`]; entry `i` comes from
/// translate `i` of the source instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledPackingInstance {
    pub k: u32,
    pub l: u32,
    pub scale: Rational,
    pub offsets: Vec<Point>,
}

impl ScaledPackingInstance {
    pub fn validate(&self) -> Result<(), Violation> {
        validate_offsets(&self.offsets, &self.scale, self.k)
    }

    pub fn is_normal(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.offsets.len());
        self.offsets.iter().all(|o| seen.insert(o))
    }

    /// `scale·T + offsets[i] ⊆ T + source.offsets[i]`, checked on vertices.
    pub fn contained_in(&self, source: &PackingInstance, i: usize) -> bool {
        let p = &self.offsets[i];
        let q = &source.offsets()[i];
        p.x >= q.x && p.y >= q.y && p.coord_sum() + &self.scale <= q.coord_sum() + one()
    }

    /// The same configuration blown up by `1/scale`: translates of `T` in the
    /// window of side `ceil(l / scale)`.
    pub fn to_unit_scale(&self) -> Result<PackingInstance, PackingError> {
        let inv = one() / &self.scale;
        let side = (int(i64::from(self.l)) * &inv).ceil();
        let l = side.to_integer().to_u32().ok_or(PackingError::ZeroWindow)?;
        let offsets = self.offsets.iter().map(|p| p.scale(&inv)).collect();
        PackingInstance::new(self.k, l, offsets)
    }
}

/// Shrinks every translate to `(1-eps)·T` and separates coincident ones.
///
/// Members of a group of `m` equal offsets are shifted along `(1,1)` by
/// `j·eps/(2m)` for `j = 0..m`, which keeps each shrunken triangle inside
/// its source. If a shifted offset lands on another group, all steps are
/// halved until the offsets are distinct; any step below `eps/2` works.
pub fn normalize(p: &PackingInstance, eps: &Rational) -> Result<ScaledPackingInstance, PackingError> {
    if eps <= &int(0) || eps >= &one() {
        return Err(PackingError::EpsilonOutOfRange(eps.clone()));
    }
    validate(p).map_err(PackingError::Invalid)?;

    let mut groups: BTreeMap<&Point, Vec<usize>> = BTreeMap::new();
    for (i, o) in p.offsets().iter().enumerate() {
        groups.entry(o).or_default().push(i);
    }
    let scale = one() - eps;
    let mut divisor = int(2);
    loop {
        let mut offsets = p.offsets().to_vec();
        for (origin, members) in &groups {
            let m = members.len() as i64;
            let step = eps / (&divisor * int(m));
            for (j, &idx) in members.iter().enumerate() {
                let shift = &step * int(j as i64);
                offsets[idx] = Point::new(&origin.x + &shift, &origin.y + &shift);
            }
        }
        let out = ScaledPackingInstance { k: p.k(), l: p.l(), scale: scale.clone(), offsets };
        if out.is_normal() {
            return Ok(out);
        }
        divisor *= int(2);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn inst(k: u32, l: u32, pts: &[(i64, i64, i64, i64)]) -> PackingInstance {
        let offsets = pts.iter().map(|&(a, b, c, d)| Point::frac(a, b, c, d)).collect();
        PackingInstance::new(k, l, offsets).unwrap()
    }

    #[test]
    fn splits_a_pair() {
        let p = inst(2, 2, &[(0, 1, 0, 1), (0, 1, 0, 1)]);
        let n = normalize(&p, &rat(1, 10)).unwrap();
        assert_eq!(n.scale, rat(9, 10));
        assert_eq!(n.offsets, vec![Point::origin(), Point::frac(1, 40, 1, 40)]);
        assert!(n.is_normal());
        assert!(n.validate().is_ok());
        assert!((0..2).all(|i| n.contained_in(&p, i)));
    }

    #[test]
    fn normal_input_keeps_offsets() {
        let p = inst(1, 3, &[(0, 1, 0, 1), (1, 2, 1, 2), (2, 1, 1, 3)]);
        let n = normalize(&p, &rat(1, 3)).unwrap();
        assert_eq!(n.offsets, p.offsets());
        assert_eq!(n.scale, rat(2, 3));
    }

    #[test]
    fn rejects_invalid_input_and_bad_eps() {
        let p = inst(1, 2, &[(0, 1, 0, 1), (0, 1, 0, 1)]);
        assert!(matches!(normalize(&p, &rat(1, 10)), Err(PackingError::Invalid(_))));
        let q = inst(2, 2, &[(0, 1, 0, 1)]);
        for eps in [int(0), int(1), rat(-1, 2), rat(3, 2)] {
            assert!(matches!(normalize(&q, &eps), Err(PackingError::EpsilonOutOfRange(_))));
        }
    }

    #[test]
    fn avoids_cross_group_collisions() {
        // the second copy of (0,0) would land on (1/40,1/40)
        let p = inst(3, 2, &[(0, 1, 0, 1), (0, 1, 0, 1), (1, 40, 1, 40)]);
        let n = normalize(&p, &rat(1, 10)).unwrap();
        assert!(n.is_normal());
        assert!(n.validate().is_ok());
        assert!((0..3).all(|i| n.contained_in(&p, i)));
    }

    #[test]
    fn unit_scale_view_is_a_valid_normal_packing() {
        let p = inst(2, 3, &[(0, 1, 0, 1), (0, 1, 0, 1), (2, 1, 2, 1), (2, 1, 2, 1)]);
        let n = normalize(&p, &rat(1, 10)).unwrap();
        let u = n.to_unit_scale().unwrap();
        assert_eq!(u.l(), 4);
        assert!(super::super::is_normal(&u));
        assert!(validate(&u).is_ok());
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::prime::lcm;
use crate::ff::{Fe, FieldTower, Gf};

/// Point of projective space, scaled so its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjPoint {
    pub coords: Vec<Fe>,
}

impl ProjPoint {
    pub fn new(f: &Gf, v: &[Fe]) -> Result<ProjPoint> {
        normalize(f, v).map(|coords| ProjPoint { coords }).ok_or_else(|| Error::Degenerate("zero vector is not a projective point".into()))
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Least `n` such that the point is fixed by the `n`-th power of Frobenius.
    pub fn degree(&self, t: &FieldTower, lvl: usize) -> u32 {
        self.coords.iter().fold(1, |acc, &c| lcm(acc as u64, t.element_degree(c, lvl) as u64) as u32)
    }

    pub fn frobenius(&self, t: &FieldTower, lvl: usize) -> ProjPoint {
        ProjPoint { coords: self.coords.iter().map(|&c| t.frobenius(c, lvl, 1)).collect() }
    }

    /// Conjugates `x, F(x), F^2(x), ...` up to the first repeat.
    pub fn galois_orbit(&self, t: &FieldTower, lvl: usize) -> Vec<ProjPoint> {
        orbit(self.clone(), |p| p.frobenius(t, lvl))
    }
}

/// Scales `v` so that its first nonzero entry is 1; `None` for the zero vector.
pub fn normalize(f: &Gf, v: &[Fe]) -> Option<Vec<Fe>> {
    let lead = *v.iter().find(|c| !c.is_zero())?;
    let inv = f.inv(lead);
    Some(v.iter().map(|&c| f.mul(c, inv)).collect())
}

pub(crate) fn orbit<T: PartialEq + Clone>(start: T, step: impl Fn(&T) -> T) -> Vec<T> {
    let mut out = vec![start.clone()];
    let mut cur = step(&start);
    while cur != start {
        out.push(cur.clone());
        cur = step(&cur);
    }
    out
}

//! Lines in `P^3` keyed by normalized Plücker coordinates
//! `(p01, p02, p03, p12, p13, p23)` with `p_ij = a_i b_j - a_j b_i`.

use serde::{Deserialize, Serialize};

use super::point::{normalize, orbit, ProjPoint};
use crate::error::{Error, Result};
use crate::ff::prime::lcm;
use crate::ff::{Fe, FieldTower, Gf};

pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjLine {
    pub key: [Fe; 6],
}

impl ProjLine {
    pub fn through(f: &Gf, a: &[Fe], b: &[Fe]) -> Result<ProjLine> {
        let raw: Vec<Fe> = PAIRS.iter().map(|&(i, j)| f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]))).collect();
        let n = normalize(f, &raw).ok_or_else(|| Error::Degenerate("coincident spanning points".into()))?;
        Ok(ProjLine { key: n.try_into().unwrap() })
    }

    pub fn from_key(f: &Gf, key: &[Fe; 6]) -> Result<ProjLine> {
        let n = normalize(f, key).ok_or_else(|| Error::Degenerate("zero Plücker vector".into()))?;
        let l = ProjLine { key: n.try_into().unwrap() };
        if !l.relation(f).is_zero() {
            return Err(Error::Degenerate("vector violates the Plücker relation".into()));
        }
        Ok(l)
    }

    /// `p01 p23 - p02 p13 + p03 p12`.
    pub fn relation(&self, f: &Gf) -> Fe {
        let p = &self.key;
        f.add(f.sub(f.mul(p[0], p[5]), f.mul(p[1], p[4])), f.mul(p[2], p[3]))
    }

    fn p(&self, f: &Gf, i: usize, j: usize) -> Fe {
        if i == j {
            return Fe::ZERO;
        }
        let (a, b, s) = if i < j { (i, j, false) } else { (j, i, true) };
        let k = PAIRS.iter().position(|&x| x == (a, b)).unwrap();
        if s {
            f.neg(self.key[k])
        } else {
            self.key[k]
        }
    }

    /// Two distinct points spanning the line.
    pub fn points(&self, f: &Gf) -> [Vec<Fe>; 2] {
        // Contractions of the bivector with coordinate covectors lie on the line.
        let mut found: Vec<Vec<Fe>> = Vec::new();
        for i in 0..4 {
            let v: Vec<Fe> = (0..4).map(|j| self.p(f, i, j)).collect();
            if v.iter().all(|c| c.is_zero()) {
                continue;
            }
            let v = normalize(f, &v).unwrap();
            if found.iter().all(|w| ProjLine::through(f, w, &v).is_ok()) {
                found.push(v);
            }
            if found.len() == 2 {
                break;
            }
        }
        [found[0].clone(), found[1].clone()]
    }

    /// Point `s a + t b` for the spanning points of [`points`](Self::points).
    pub fn param(&self, f: &Gf, s: Fe, t: Fe) -> Vec<Fe> {
        let [a, b] = self.points(f);
        (0..4).map(|i| f.add(f.mul(s, a[i]), f.mul(t, b[i]))).collect()
    }

    pub fn contains(&self, f: &Gf, x: &[Fe]) -> bool {
        let [a, _] = self.points(f);
        match ProjLine::through(f, &a, x) {
            Ok(l) => l == *self,
            Err(_) => true,
        }
    }

    /// Bilinear Plücker pairing; zero iff the lines meet (or coincide).
    pub fn pairing(&self, f: &Gf, o: &ProjLine) -> Fe {
        let p = &self.key;
        let m = &o.key;
        let terms = [
            f.mul(p[0], m[5]),
            f.neg(f.mul(p[1], m[4])),
            f.mul(p[2], m[3]),
            f.mul(p[3], m[2]),
            f.neg(f.mul(p[4], m[1])),
            f.mul(p[5], m[0]),
        ];
        terms.iter().fold(Fe::ZERO, |acc, &t| f.add(acc, t))
    }

    pub fn meets(&self, f: &Gf, o: &ProjLine) -> bool {
        self != o && self.pairing(f, o).is_zero()
    }

    pub fn frobenius(&self, t: &FieldTower, lvl: usize) -> ProjLine {
        ProjLine { key: self.key.map(|c| t.frobenius(c, lvl, 1)) }
    }

    pub fn degree(&self, t: &FieldTower, lvl: usize) -> u32 {
        self.key.iter().fold(1, |acc, &c| lcm(acc as u64, t.element_degree(c, lvl) as u64) as u32)
    }

    pub fn galois_orbit(&self, t: &FieldTower, lvl: usize) -> Vec<ProjLine> {
        orbit(self.clone(), |l| l.frobenius(t, lvl))
    }

    pub fn embed(&self, t: &FieldTower, from: usize, to: usize) -> ProjLine {
        ProjLine { key: self.key.map(|c| t.embed(c, from, to)) }
    }
}

impl ProjPoint {
    pub fn on_line(&self, f: &Gf, l: &ProjLine) -> bool {
        l.contains(f, &self.coords)
    }
}

//! Nine conjugate lines through three conjugate coplanar-free lines.
//!
//! `L_0` is a line over `GF(q^3)` through a rational point `Q`, and `L_1`,
//! `L_2` are its conjugates. A point `p_0` of `L_0` of degree 9 has
//! conjugates `p_i = F^i p_0` with `p_i` on `L_(i mod 3)`, and the lines
//! `E_i = p_i p_(i+1)` form one Frobenius orbit. The plane `Pi_i` spanned by
//! `L_(i+1)` and `L_(i+2)` contains `E_(i+1)`, `E_(i+4)` and `E_(i+7)`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::ff::{Fe, FieldTower, Gf};
use crate::projgeom::{enumerate_proj, Matrix, ProjLine};

/// Tower levels: `GF(q)`, `GF(q^3)`, `GF(q^9)`.
pub const BASE: usize = 0;
pub const CUBIC: usize = 1;
pub const NONIC: usize = 2;

/// Random draws allowed before giving up on a configuration.
pub const CONFIG_ATTEMPTS: u32 = 256;

#[derive(Clone, Debug)]
pub struct NineLineConfig {
    pub tower: FieldTower,
    /// The common point, over `GF(q)`.
    pub q_point: Vec<Fe>,
    /// Second spanning point of `L_0`, over `GF(q^3)`.
    pub direction: Vec<Fe>,
    /// `p_0 = Q + lambda R` with `lambda` of degree 9.
    pub lambda: Fe,
    /// `L_0, L_1, L_2` over `GF(q^3)`.
    pub lines: [ProjLine; 3],
    /// `p_0, ..., p_8` over `GF(q^9)`.
    pub points: Vec<Vec<Fe>>,
    /// `E_0, ..., E_8` over `GF(q^9)`.
    pub e_lines: Vec<ProjLine>,
    /// Linear forms of `Pi_0, Pi_1, Pi_2` over `GF(q^3)`.
    pub planes: [Vec<Fe>; 3],
}

pub(crate) fn frob_vec(t: &FieldTower, lvl: usize, v: &[Fe], i: u32) -> Vec<Fe> {
    v.iter().map(|&c| t.frobenius(c, lvl, i)).collect()
}

pub(crate) fn embed_vec(t: &FieldTower, v: &[Fe], from: usize, to: usize) -> Vec<Fe> {
    v.iter().map(|&c| t.embed(c, from, to)).collect()
}

fn random_vec(f: &Gf, rng: &mut impl Rng) -> Vec<Fe> {
    (0..4).map(|_| Fe(rng.gen_range(0..f.size()))).collect()
}

/// Linear form vanishing on three independent points.
fn plane_through(f: &Gf, pts: [&[Fe]; 3]) -> Option<Vec<Fe>> {
    let m = Matrix::from_rows(&pts.map(|p| p.to_vec()));
    let k = m.kernel(f);
    (k.len() == 1).then(|| k.into_iter().next().unwrap())
}

fn dot(f: &Gf, a: &[Fe], b: &[Fe]) -> Fe {
    a.iter().zip(b).fold(Fe::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Builds a configuration over `GF(q)` from seeded random choices of `Q`,
/// `R` and `lambda`, redrawing until every invariant holds.
pub fn build_config(q: u64, seed: u64, rng: &mut impl Rng) -> Result<NineLineConfig> {
    let (p, k) = crate::ff::prime::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let tower = FieldTower::new(p, &[k, 3 * k, 9 * k], seed)?;
    let base_points: Vec<Vec<Fe>> = enumerate_proj(3, tower.level(BASE)).collect();
    for _ in 0..CONFIG_ATTEMPTS {
        if let Some(c) = try_config(&tower, &base_points, rng) {
            return Ok(c);
        }
    }
    Err(Error::RetriesExhausted(format!("no valid nine-line configuration over GF({q}) in {CONFIG_ATTEMPTS} draws")))
}

fn try_config(t: &FieldTower, base_points: &[Vec<Fe>], rng: &mut impl Rng) -> Option<NineLineConfig> {
    let f3 = t.level(CUBIC);
    let f9 = t.level(NONIC);
    let qp = base_points[rng.gen_range(0..base_points.len())].clone();
    let q3 = embed_vec(t, &qp, BASE, CUBIC);
    let r = random_vec(f3, rng);
    let r1 = frob_vec(t, CUBIC, &r, 1);
    let r2 = frob_vec(t, CUBIC, &r, 2);
    // non-coplanar lines: Q, R, F R, F^2 R span P^3
    if Matrix::from_rows(&[q3.clone(), r.clone(), r1.clone(), r2.clone()]).rank(f3) < 4 {
        return None;
    }
    let lambda = Fe(rng.gen_range(0..f9.size()));
    if t.element_degree(lambda, NONIC) != 9 {
        return None;
    }
    let l0 = ProjLine::through(f3, &q3, &r).ok()?;
    let lines = [l0.clone(), l0.frobenius(t, CUBIC), l0.frobenius(t, CUBIC).frobenius(t, CUBIC)];
    let q9 = embed_vec(t, &qp, BASE, NONIC);
    let r9 = embed_vec(t, &r, CUBIC, NONIC);
    let p0: Vec<Fe> = q9.iter().zip(&r9).map(|(&a, &b)| f9.add(a, f9.mul(lambda, b))).collect();
    let points: Vec<Vec<Fe>> = (0..9).map(|i| frob_vec(t, NONIC, &p0, i)).collect();
    let e_lines: Vec<ProjLine> = (0..9).map(|i| ProjLine::through(f9, &points[i], &points[(i + 1) % 9])).collect::<Result<_>>().ok()?;
    let mut keys = e_lines.clone();
    keys.sort();
    keys.dedup();
    if keys.len() != 9 || e_lines.iter().any(|e| e.contains(f9, &q9)) {
        return None;
    }
    let l9: Vec<ProjLine> = lines.iter().map(|l| l.embed(t, CUBIC, NONIC)).collect();
    if e_lines.iter().any(|e| l9.contains(e)) {
        return None;
    }
    let pi0 = plane_through(f3, [&q3, &r1, &r2])?;
    let planes = [pi0.clone(), frob_vec(t, CUBIC, &pi0, 1), frob_vec(t, CUBIC, &pi0, 2)];
    Some(NineLineConfig { tower: t.clone(), q_point: qp, direction: r, lambda, lines, points, e_lines, planes })
}

impl NineLineConfig {
    pub fn q(&self) -> u64 {
        self.tower.q()
    }

    /// Rechecks the incidences listed in the module docs.
    pub fn validate(&self) -> Result<()> {
        let t = &self.tower;
        let f3 = t.level(CUBIC);
        let f9 = t.level(NONIC);
        let bad = |m: &str| Err(Error::Inconsistent(format!("nine-line configuration: {m}")));
        let q3 = embed_vec(t, &self.q_point, BASE, CUBIC);
        for (i, l) in self.lines.iter().enumerate() {
            if !l.contains(f3, &q3) {
                return bad("a line misses Q");
            }
            if l.frobenius(t, CUBIC) != self.lines[(i + 1) % 3] {
                return bad("lines are not conjugate");
            }
        }
        for i in 0..9 {
            let l = self.lines[i % 3].embed(t, CUBIC, NONIC);
            if !l.contains(f9, &self.points[i]) {
                return bad("p_i is not on L_(i mod 3)");
            }
            if self.e_lines[i].frobenius(t, NONIC) != self.e_lines[(i + 1) % 9] {
                return bad("E-lines are not conjugate");
            }
        }
        for (i, pi) in self.planes.iter().enumerate() {
            let pi9 = embed_vec(t, pi, CUBIC, NONIC);
            if !dot(f3, pi, &q3).is_zero() {
                return bad("a plane misses Q");
            }
            for j in [i + 1, i + 4, i + 7] {
                let [a, b] = self.e_lines[j % 9].points(f9);
                if !dot(f9, &pi9, &a).is_zero() || !dot(f9, &pi9, &b).is_zero() {
                    return bad("an E-line is not in its plane");
                }
            }
        }
        if Matrix::from_rows(&self.planes.to_vec()).rank(f3) != 3 {
            return bad("the planes meet in more than a point");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn configurations_are_valid() {
        for q in [2u64, 3, 4, 5] {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(q);
            let c = build_config(q, 0, &mut rng).unwrap();
            c.validate().unwrap();
            let f9 = c.tower.level(NONIC);
            let orbit = crate::projgeom::ProjPoint::new(f9, &c.points[0]).unwrap().galois_orbit(&c.tower, NONIC);
            assert_eq!(orbit.len(), 9);
            assert!(c.lines.iter().all(|l| l.degree(&c.tower, CUBIC) == 3));
        }
    }
}

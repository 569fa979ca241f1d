//! Chains of finite fields `GF(p^d_0) ⊂ GF(p^d_1) ⊂ ...` with fixed
//! compatible embeddings.
//!
//! Every level is stored as an absolute extension of `F_p`. The embedding of
//! level `i` into level `i + 1` sends the generator of level `i` to the
//! smallest root (by encoding) of its defining polynomial in level `i + 1`;
//! longer embeddings are composites, so they are path independent by
//! construction. Frobenius is always taken relative to `q = |level 0|`.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::fpoly;
use super::gf::{Fe, FieldDescriptor, Gf};
use super::poly::UniPoly;
use crate::error::{Error, Result};

/// Attempts per level when searching for a random irreducible modulus.
const MODULUS_TRIES: usize = 10_000;

#[derive(Clone, Debug)]
struct Step {
    /// `r^j` for `j < d_lower`, where `r` is the image of the lower generator.
    powers: Vec<Fe>,
    /// Rows of the upper field's digit vector used for descent.
    pivot_rows: Vec<usize>,
    /// Inverse of the square submatrix on `pivot_rows`, over `F_p`.
    pivot_inv: Vec<Vec<u64>>,
}

#[derive(Clone, Debug)]
pub struct FieldTower {
    p: u64,
    degrees: Vec<u32>,
    levels: Vec<Arc<Gf>>,
    steps: Vec<Step>,
    seed: u64,
}

/// Serializable description of a tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerDescriptor {
    pub p: u64,
    pub degrees: Vec<u32>,
    pub levels: Vec<FieldDescriptor>,
    pub seed: u64,
}

impl FieldTower {
    /// Builds the tower with absolute degrees `degrees` (each dividing the
    /// next). Level 0 uses the canonical modulus, higher levels a modulus
    /// drawn from a ChaCha stream seeded with `seed`.
    pub fn new(p: u64, degrees: &[u32], seed: u64) -> Result<FieldTower> {
        if !super::prime::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if degrees.is_empty() || degrees.contains(&0) {
            return Err(Error::InvalidInput("tower degrees must be a nonempty list of positive integers".into()));
        }
        for w in degrees.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::DegreeMismatch { degree: w[0], target: w[1] });
            }
        }
        let mut t = FieldTower { p, degrees: vec![degrees[0]], levels: vec![Arc::new(Gf::canonical(p, degrees[0])?)], steps: Vec::new(), seed };
        for &d in &degrees[1..] {
            t.push_level(d)?;
        }
        Ok(t)
    }

    /// The same tower with one more level of absolute degree `d` on top.
    /// Existing levels and embeddings are unchanged.
    pub fn extend(&self, d: u32) -> Result<FieldTower> {
        let mut t = self.clone();
        t.push_level(d)?;
        Ok(t)
    }

    fn push_level(&mut self, d: u32) -> Result<()> {
        let prev = self.levels.last().unwrap().clone();
        if d == 0 || d % prev.degree() != 0 {
            return Err(Error::DegreeMismatch { degree: prev.degree(), target: d });
        }
        let field = if d == prev.degree() {
            prev.clone()
        } else {
            // the modulus depends only on (p, d, seed)
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ (d as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let m = fpoly::random_irreducible(self.p, d, &mut rng, MODULUS_TRIES).ok_or(Error::NoIrreducible)?;
            Arc::new(Gf::new(self.p, m)?)
        };
        self.steps.push(make_step(&prev, &field, self.seed)?);
        self.levels.push(field);
        self.degrees.push(d);
        Ok(())
    }

    /// Two-level tower `GF(q) ⊂ GF(q^n)` with `q = p^k`.
    pub fn over(q: u64, n: u32, seed: u64) -> Result<FieldTower> {
        let (p, k) = super::prime::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        FieldTower::new(p, &[k, k * n], seed)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Size of the base level.
    pub fn q(&self) -> u64 {
        self.levels[0].size()
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn level(&self, i: usize) -> &Gf {
        &self.levels[i]
    }

    pub fn level_arc(&self, i: usize) -> Arc<Gf> {
        self.levels[i].clone()
    }

    pub fn base(&self) -> &Gf {
        &self.levels[0]
    }

    pub fn top(&self) -> &Gf {
        self.levels.last().unwrap()
    }

    pub fn top_index(&self) -> usize {
        self.levels.len() - 1
    }

    /// Absolute degree of level `i` over `F_p`.
    pub fn abs_degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    /// Degree of level `i` over the base level.
    pub fn rel_degree(&self, i: usize) -> u32 {
        self.degrees[i] / self.degrees[0]
    }

    pub fn descriptor(&self) -> TowerDescriptor {
        TowerDescriptor {
            p: self.p,
            degrees: self.degrees.clone(),
            levels: self.levels.iter().map(|l| l.descriptor()).collect(),
            seed: self.seed,
        }
    }

    /// Image of `x` from level `from` in level `to >= from`.
    pub fn embed(&self, x: Fe, from: usize, to: usize) -> Fe {
        assert!(from <= to, "embedding goes upward");
        let mut v = x;
        for i in from..to {
            v = self.embed_step(v, i);
        }
        v
    }

    fn embed_step(&self, x: Fe, i: usize) -> Fe {
        let lower = &self.levels[i];
        let upper = &self.levels[i + 1];
        if lower.degree() == 1 || Arc::ptr_eq(lower, upper) {
            return x;
        }
        let step = &self.steps[i];
        lower
            .digits(x)
            .iter()
            .zip(&step.powers)
            .fold(Fe::ZERO, |acc, (&c, &r)| if c == 0 { acc } else { upper.add(acc, upper.mul(upper.from_int(c as i64), r)) })
    }

    /// Preimage of `x` (in level `from`) in level `to <= from`, if it lies there.
    pub fn descend(&self, x: Fe, from: usize, to: usize) -> Option<Fe> {
        assert!(to <= from, "descent goes downward");
        let mut v = x;
        for i in (to..from).rev() {
            v = self.descend_step(v, i)?;
        }
        Some(v)
    }

    fn descend_step(&self, y: Fe, i: usize) -> Option<Fe> {
        let lower = &self.levels[i];
        let upper = &self.levels[i + 1];
        if Arc::ptr_eq(lower, upper) {
            return Some(y);
        }
        if lower.degree() == 1 {
            return (y.0 < self.p).then_some(y);
        }
        let step = &self.steps[i];
        let digits = upper.digits(y);
        let rhs: Vec<u64> = step.pivot_rows.iter().map(|&r| digits[r]).collect();
        let c: Vec<u64> = step
            .pivot_inv
            .iter()
            .map(|row| row.iter().zip(&rhs).fold(0u64, |acc, (&a, &b)| (acc + a * b) % self.p))
            .collect();
        let x = lower.from_digits(&c);
        (self.embed_step(x, i) == y).then_some(x)
    }

    /// `x^(q^i)` for `x` in level `lvl`.
    pub fn frobenius(&self, x: Fe, lvl: usize, i: u32) -> Fe {
        let f = &self.levels[lvl];
        let i = i % self.rel_degree(lvl);
        let q = self.q();
        (0..i).fold(x, |acc, _| f.pow(acc, q))
    }

    /// Least `n >= 1` with `x^(q^n) = x`.
    pub fn element_degree(&self, x: Fe, lvl: usize) -> u32 {
        let d = self.rel_degree(lvl);
        super::prime::divisors(d as u64)
            .into_iter()
            .map(|n| n as u32)
            .find(|&n| self.frobenius(x, lvl, n) == x)
            .unwrap_or(d)
    }

    pub fn embed_poly(&self, f: &UniPoly, from: usize, to: usize) -> UniPoly {
        UniPoly::new(f.coeffs().iter().map(|&c| self.embed(c, from, to)).collect())
    }

    /// A root of the irreducible `f` (coefficients in level `from`) in level `to`.
    /// Deterministic: the smallest root by encoding.
    pub fn find_root(&self, f: &UniPoly, from: usize, to: usize) -> Result<Fe> {
        let d = f.degree().ok_or(Error::ZeroPolynomial)? as u32;
        let target = self.degrees[to] / self.degrees[from];
        if d == 0 || target % d != 0 {
            return Err(Error::DegreeMismatch { degree: d, target });
        }
        let g = self.embed_poly(f, from, to);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        g.roots(&self.levels[to], &mut rng)?
            .first()
            .copied()
            .ok_or_else(|| Error::InvalidInput("polynomial has no root in the target level".into()))
    }
}

fn make_step(lower: &Arc<Gf>, upper: &Arc<Gf>, seed: u64) -> Result<Step> {
    if lower.degree() == 1 || Arc::ptr_eq(lower, upper) {
        return Ok(Step { powers: vec![Fe::ONE], pivot_rows: vec![0], pivot_inv: vec![vec![1]] });
    }
    let p = lower.characteristic();
    let m = UniPoly::new(lower.modulus().iter().map(|&c| Fe(c)).collect());
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let r = *m
        .roots(upper, &mut rng)?
        .first()
        .ok_or_else(|| Error::InvalidField("lower modulus has no root in the upper level".into()))?;
    let dl = lower.degree() as usize;
    let mut powers = Vec::with_capacity(dl);
    let mut cur = Fe::ONE;
    for _ in 0..dl {
        powers.push(cur);
        cur = upper.mul(cur, r);
    }
    // Columns of the embedding matrix are the digit vectors of r^j.
    let cols: Vec<Vec<u64>> = powers.iter().map(|&v| upper.digits(v)).collect();
    let du = upper.degree() as usize;
    let a: Vec<Vec<u64>> = (0..du).map(|row| cols.iter().map(|c| c[row]).collect()).collect();
    let pivot_rows = independent_rows(&a, p);
    let sub: Vec<Vec<u64>> = pivot_rows.iter().map(|&r| a[r].clone()).collect();
    let pivot_inv = invert_mod_p(&sub, p).ok_or_else(|| Error::InvalidField("singular embedding matrix".into()))?;
    Ok(Step { powers, pivot_rows, pivot_inv })
}

/// Indices of a maximal set of linearly independent rows, greedily in order.
fn independent_rows(a: &[Vec<u64>], p: u64) -> Vec<usize> {
    let n = a.first().map_or(0, |r| r.len());
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in a.iter().enumerate() {
        let mut v = row.clone();
        for (piv, b) in &basis {
            let c = v[*piv];
            if c != 0 {
                for k in 0..n {
                    v[k] = (v[k] + (p - c) * b[k]) % p;
                }
            }
        }
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            let inv = fpoly::pow_mod(v[piv], p - 2, p);
            for x in v.iter_mut() {
                *x = *x * inv % p;
            }
            basis.push((piv, v));
            chosen.push(idx);
            if chosen.len() == n {
                break;
            }
        }
    }
    chosen
}

fn invert_mod_p(m: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let inv = fpoly::pow_mod(a[col][col], p - 2, p);
        for x in a[col].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let c = a[r][col];
                for k in 0..2 * n {
                    a[r][k] = (a[r][k] + (p - c) * a[col][k]) % p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

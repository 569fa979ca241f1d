//! Discriminant, singular fibers and smoothness of conic bundles.
//!
//! `X` is smooth at `(s, t; x)` when `M(s, t) x != 0`, since the `x`-gradient
//! of `x^T M x` is `2 M x`. So singular points lie over roots of `det M`, at
//! kernel vectors `x`, and there the only remaining conditions are
//! `F_s = F_t = 0`. By Euler's relation `s F_s + t F_t = 2 F = 0` these are a
//! single quadratic condition on the projectivized kernel, which always has a
//! solution once the kernel has dimension 2 or more.

use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use super::surface::{full_form, matrix, matrix_at, BinaryForm, ConicBundleSurface};
use crate::error::{Error, Result};
use crate::ff::{Fe, FieldTower, Gf, UniPoly};
use crate::projgeom::{enumerate_proj, Matrix};

/// A closed point of `P^1` as an irreducible binary form (entry `k`
/// multiplies `s^(d-k) t^k`), with its multiplicity in the discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryFactor {
    pub form: BinaryForm,
    pub multiplicity: u32,
}

impl BinaryFactor {
    pub fn degree(&self) -> u32 {
        (self.form.len() - 1) as u32
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberRecord {
    /// Irreducible binary form of the base point, `s^d` coefficient first.
    pub factor: Vec<u64>,
    pub degree: u32,
    /// Rank of `M` at a root over `GF(q^degree)`.
    pub rank: usize,
    /// Whether the two lines of the fiber are defined over `GF(q^degree)`.
    pub split: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dp2Smoothness {
    pub smooth: bool,
    pub strategy: String,
    /// A singular point `(degree, [s, t, x, y, z])` when one was exhibited.
    pub witness: Option<(u32, Vec<u64>)>,
}

/// Irreducible factors of a nonzero binary form over `f`.
pub fn binary_factors(f: &Gf, d: &[Fe]) -> Result<Vec<BinaryFactor>> {
    let n = d.len() - 1;
    let u = UniPoly::new((0..=n).map(|j| d[n - j]).collect());
    let Some(deg) = u.degree() else {
        return Err(Error::ZeroPolynomial);
    };
    let mut out = Vec::new();
    if deg < n {
        out.push(BinaryFactor { form: vec![Fe::ZERO, Fe::ONE], multiplicity: (n - deg) as u32 });
    }
    if deg == 0 {
        return Ok(out);
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    let mut rest = u.monic(f);
    let mut factors = rest.squarefree_part(f).irreducible_factors(f, &mut rng)?;
    factors.sort_by(|a, b| (a.deg(), a.coeffs()).cmp(&(b.deg(), b.coeffs())));
    for g in factors {
        let mut m = 0;
        loop {
            let (quo, r) = rest.divrem(f, &g);
            if !r.is_zero() {
                break;
            }
            rest = quo;
            m += 1;
        }
        let k = g.deg();
        out.push(BinaryFactor { form: (0..=k).map(|i| g.coeff(k - i)).collect(), multiplicity: m });
    }
    Ok(out)
}

/// A root `(s0 : t0)` of the factor over level 1 of a tower of degree `d`.
fn factor_root(t: &FieldTower, g: &BinaryFactor) -> Result<(Fe, Fe)> {
    if g.form == [Fe::ZERO, Fe::ONE] {
        return Ok((Fe::ONE, Fe::ZERO));
    }
    let k = g.form.len() - 1;
    let u = UniPoly::new((0..=k).map(|j| g.form[k - j]).collect());
    Ok((t.find_root(&u, 0, t.top_index())?, Fe::ONE))
}

/// Two vectors completing a nonzero `v` to a basis.
fn complement(v: &[Fe]) -> [Vec<Fe>; 2] {
    let k = v.iter().position(|c| !c.is_zero()).expect("nonzero vector");
    let mut out = [vec![Fe::ZERO; 3], vec![Fe::ZERO; 3]];
    let mut slot = 0;
    for i in (0..3).filter(|&i| i != k) {
        out[slot][i] = Fe::ONE;
        slot += 1;
    }
    out
}

fn bilinear(f: &Gf, a: &Matrix, u: &[Fe], v: &[Fe]) -> Fe {
    let av = a.mul_vec(f, v);
    u.iter().zip(&av).fold(Fe::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// For a rank-2 symmetric `A`: whether `x^T A x` splits into two lines over `f`.
pub fn rank2_split(f: &Gf, a: &Matrix) -> bool {
    let v = a.kernel(f).into_iter().next().expect("rank 2");
    let [b, c] = complement(&v);
    // restricted to the line spanned by b, c the form has discriminant
    // 4((b^T A c)^2 - (b^T A b)(c^T A c))
    let bc = bilinear(f, a, &b, &c);
    let disc = f.sub(f.sqr(bc), f.mul(bilinear(f, a, &b, &b), bilinear(f, a, &c, &c)));
    debug_assert!(!disc.is_zero());
    f.is_square(disc)
}

/// `#{x in P^2(GF(Q)) : x^T A x = 0}` for symmetric `A`.
pub fn conic_points(f: &Gf, a: &Matrix) -> u64 {
    let q = f.size();
    match a.rank(f) {
        3 => q + 1,
        2 if rank2_split(f, a) => 2 * q + 1,
        2 => 1,
        1 => q + 1,
        _ => q * q + q + 1,
    }
}

/// Irreducible factors of the discriminant; errors when it vanishes.
pub fn discriminant_factors(x: &ConicBundleSurface) -> Result<Vec<BinaryFactor>> {
    let d = x.discriminant();
    if d.iter().all(|c| c.is_zero()) {
        return Err(Error::Degenerate("det M vanishes identically: every fiber is singular".into()));
    }
    binary_factors(x.field(), &d)
}

/// One record per singular fiber. The discriminant must be squarefree and
/// every singular fiber reduced.
pub fn singular_fibers(x: &ConicBundleSurface) -> Result<Vec<FiberRecord>> {
    let factors = discriminant_factors(x)?;
    if factors.iter().any(|g| g.multiplicity > 1) {
        return Err(Error::Degenerate("discriminant is not squarefree".into()));
    }
    let mut out = Vec::new();
    for g in &factors {
        let t = FieldTower::over(x.q(), g.degree(), 0)?;
        let lvl = t.top_index();
        let f = t.top();
        let (s0, t0) = factor_root(&t, g)?;
        let a = matrix_at(f, &matrix(f, &x.parts_in(&t, lvl)), s0, t0);
        let rank = a.rank(f);
        if rank < 2 {
            return Err(Error::Degenerate(format!("fiber over a point of degree {} is a double line", g.degree())));
        }
        out.push(FiberRecord {
            factor: g.form.iter().map(|c| c.0).collect(),
            degree: g.degree(),
            rank,
            split: rank2_split(f, &a),
        });
    }
    Ok(out)
}

/// Exact smoothness test over the algebraic closure.
pub fn dp2_smooth(x: &ConicBundleSurface) -> Result<Dp2Smoothness> {
    let strategy = "discriminant-fibers".to_string();
    for g in discriminant_factors(x)? {
        let t = FieldTower::over(x.q(), g.degree(), 0)?;
        let lvl = t.top_index();
        let f = t.top();
        let parts = x.parts_in(&t, lvl);
        let (s0, t0) = factor_root(&t, &g)?;
        let ker = matrix_at(f, &matrix(f, &parts), s0, t0).kernel(f);
        if ker.len() >= 2 {
            return Ok(Dp2Smoothness { smooth: false, strategy, witness: None });
        }
        let v = &ker[0];
        let p = [s0, t0, v[0], v[1], v[2]];
        let grad = full_form(f, &parts).gradient(f);
        if grad.iter().all(|d| d.eval(f, &p).is_zero()) {
            let witness = Some((g.degree(), p.iter().map(|c| c.0).collect()));
            return Ok(Dp2Smoothness { smooth: false, strategy, witness });
        }
    }
    Ok(Dp2Smoothness { smooth: true, strategy, witness: None })
}

/// Searches `P^1 x P^2` over `GF(q^k)`, `k = 1..=max_degree`, for a singular
/// point, stopping before a level with more than `budget` points.
pub fn dp2_singular_point_brute(x: &ConicBundleSurface, max_degree: u32, budget: u64) -> Result<Option<(u32, Vec<u64>)>> {
    for k in 1..=max_degree {
        let size = x.q().pow(k);
        if (size + 1).saturating_mul(size * size + size + 1) > budget {
            break;
        }
        let t = FieldTower::over(x.q(), k, 0)?;
        let f = t.top();
        let g = full_form(f, &x.parts_in(&t, t.top_index()));
        let grad = g.gradient(f);
        let planes: Vec<Vec<Fe>> = enumerate_proj(2, f).collect();
        for st in enumerate_proj(1, f) {
            for v in &planes {
                let p = [st[0], st[1], v[0], v[1], v[2]];
                if g.eval(f, &p).is_zero() && grad.iter().all(|d| d.eval(f, &p).is_zero()) {
                    return Ok(Some((k, p.iter().map(|c| c.0).collect())));
                }
            }
        }
    }
    Ok(None)
}

//! The 27 lines of a smooth cubic surface.
//!
//! A first line comes from elimination in the chart `x1 = 0, x0 = 1`: the
//! point `P = (1, 0, a, b)` of `X` has a line of `X` through it in a
//! direction `Y` inside `T_P X ∩ {x0 = 0}` iff the polar `P·∇f(Y)` and
//! `f(Y)` vanish together. Taking `Y(c) = (0, γ, γc, -α - βc)` with
//! `(α, β, γ) = (∂1 f, ∂2 f, ∂3 f)(P)` and eliminating `c`, then `b`, gives a
//! polynomial `U(a)` over `GF(q)` of degree at most 81 whose roots include the
//! `a`-coordinate of every line meeting the chart plane at a point with
//! `x0 ≠ 0`. Points with `γ = 0` contribute spurious roots, which are
//! discarded when no line passes through them.
//!
//! The other lines are reached by walking tritangent planes. Every plane
//! through a line `L` cuts `X` in `L` plus a conic; the conic degenerates
//! for exactly five planes, and the ten lines of those five pairs are the
//! lines meeting `L`. The intersection graph is connected, so a
//! breadth-first search from one line finds all 27. The working field grows
//! whenever a root lies outside it.

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::surface::CubicSurface;
use crate::error::{Error, Result};
use crate::ff::form::{monomial_index, monomials};
use crate::ff::prime::lcm;
use crate::ff::resultant::{interpolate, nodes, resultant_formal};
use crate::ff::{Fe, FieldTower, Form, Gf, UniPoly};
use crate::projgeom::{Matrix, ProjLine};

/// Lines on a smooth cubic have degree at most 12 over `GF(q)`.
pub const MAX_LINE_DEGREE: u32 = 12;
/// Coordinate changes tried before giving up on a first line.
pub const MAX_RETRIES: u64 = 8;
/// Bound on the degree of the chart polynomial `U`.
const U_BOUND: usize = 81;
/// Bound on the degree in `b` of the inner resultant.
const R_BOUND: usize = 27;

/// The 27 lines over a splitting field, with the Frobenius action.
#[derive(Clone, Debug)]
pub struct LineSet {
    /// Tower over `GF(q)` whose top level contains every line.
    pub tower: FieldTower,
    /// Lines sorted by Plücker key.
    pub lines: Vec<ProjLine>,
    /// `frobenius[i]` is the index of the image of line `i`.
    pub frobenius: Vec<u8>,
    /// Degree of definition of each line over `GF(q)`.
    pub degrees: Vec<u32>,
    /// Seeds of the coordinate changes tried for the first line (empty when
    /// the original coordinates worked).
    pub retry_seeds: Vec<u64>,
}

/// Serializable line record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineRecord {
    /// Position of the leading 1 in the Plücker key (pairs 01, 02, 03, 12, 13, 23).
    pub chart: usize,
    /// Normalized Plücker key, digit-encoded in the top tower level.
    pub coordinates: Vec<u64>,
    pub degree: u32,
}

impl LineSet {
    pub fn level(&self) -> usize {
        self.tower.top_index()
    }

    pub fn field(&self) -> &Gf {
        self.tower.top()
    }

    /// Degree of the splitting field over `GF(q)`.
    pub fn splitting_degree(&self) -> u32 {
        self.tower.abs_degree(self.level()) / self.tower.abs_degree(0)
    }

    /// Line degrees, descending (the cycle type of Frobenius on the lines).
    pub fn cycle_type(&self) -> Vec<u8> {
        crate::weyl::perm_cycle_type(&self.frobenius)
    }

    /// 27 x 27 incidence matrix (a line does not meet itself).
    pub fn incidence(&self) -> Vec<Vec<bool>> {
        let f = self.field();
        self.lines.iter().map(|a| self.lines.iter().map(|b| a.meets(f, b)).collect()).collect()
    }

    pub fn records(&self) -> Vec<LineRecord> {
        self.lines
            .iter()
            .zip(&self.degrees)
            .map(|(l, &d)| LineRecord {
                chart: l.key.iter().position(|c| !c.is_zero()).unwrap(),
                coordinates: l.key.iter().map(|c| c.0).collect(),
                degree: d,
            })
            .collect()
    }
}

enum Outcome<T> {
    Found(T),
    /// Roots lie in an extension of this relative degree.
    Extend(u32),
}

use Outcome::{Extend, Found};

/// Distinct roots of `p` in `f`, or the degree of the extension holding all of them.
fn roots_in(f: &Gf, p: &UniPoly, rng: &mut ChaCha8Rng) -> Result<Outcome<Vec<Fe>>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(Found(vec![]));
    }
    let sf = p.squarefree_part(f);
    let e = sf.ddf(f)?.iter().fold(1u64, |acc, (d, _)| lcm(acc, *d as u64)) as u32;
    if e > 1 {
        return Ok(Extend(e));
    }
    Ok(Found(sf.roots(f, rng)?))
}

/// Roots in `P^1` of a binary form given as the coefficients of
/// `s^(d-k) t^k`, returned as `(s, t)` pairs.
fn binary_roots(f: &Gf, c: &[Fe], rng: &mut ChaCha8Rng) -> Result<Outcome<Vec<(Fe, Fe)>>> {
    let p = UniPoly::new(c.to_vec());
    let mut out = match roots_in(f, &p, rng)? {
        Extend(e) => return Ok(Extend(e)),
        Found(r) => r.into_iter().map(|t| (Fe::ONE, t)).collect::<Vec<_>>(),
    };
    if c.last().is_some_and(|x| x.is_zero()) {
        out.push((Fe::ZERO, Fe::ONE));
    }
    Ok(Found(out))
}

fn lin_comb(f: &Gf, terms: &[(Fe, &[Fe])]) -> Vec<Fe> {
    let n = terms[0].1.len();
    (0..n).map(|i| terms.iter().fold(Fe::ZERO, |acc, (c, v)| f.add(acc, f.mul(*c, v[i])))).collect()
}

fn on_surface(f: &Gf, g: &Form, l: &ProjLine) -> bool {
    let [a, b] = l.points(f);
    g.restrict_line(f, &a, &b).iter().all(|c| c.is_zero())
}

/// Lines of `X` through the point `p` of `X`.
fn lines_through_point(f: &Gf, g: &Form, grad: &[Form], p: &[Fe], rng: &mut ChaCha8Rng) -> Result<Outcome<Vec<ProjLine>>> {
    let n: Vec<Fe> = grad.iter().map(|d| d.eval(f, p)).collect();
    if n.iter().all(|c| c.is_zero()) {
        return Err(Error::Singular);
    }
    let j = p.iter().position(|c| !c.is_zero()).expect("projective point");
    let mut ej = vec![Fe::ZERO; 4];
    ej[j] = Fe::ONE;
    let k = Matrix::from_rows(&[n, ej]).kernel(f);
    let (w1, w2) = (&k[0], &k[1]);
    let polar = grad.iter().zip(p).fold(Form::zero(4, 2), |acc, (d, &c)| acc.add(f, &d.scale(f, c)));
    let a = polar.restrict_line(f, w1, w2);
    let c = g.restrict_line(f, w1, w2);
    let a_zero = a.iter().all(|x| x.is_zero());
    if a_zero && c.iter().all(|x| x.is_zero()) {
        return Err(Error::Degenerate("a cone of lines through a point".into()));
    }
    let dirs = if a_zero {
        match binary_roots(f, &c, rng)? {
            Extend(e) => return Ok(Extend(e)),
            Found(d) => d,
        }
    } else {
        let h = UniPoly::new(a.clone()).gcd(f, &UniPoly::new(c.clone()));
        let mut d = match roots_in(f, &h, rng)? {
            Extend(e) => return Ok(Extend(e)),
            Found(r) => r.into_iter().map(|t| (Fe::ONE, t)).collect::<Vec<_>>(),
        };
        if a[2].is_zero() && c[3].is_zero() {
            d.push((Fe::ZERO, Fe::ONE));
        }
        d
    };
    let mut out = Vec::new();
    for (s, t) in dirs {
        let w = lin_comb(f, &[(s, w1), (t, w2)]);
        let l = ProjLine::through(f, p, &w)?;
        if on_surface(f, g, &l) {
            out.push(l);
        }
    }
    Ok(Found(out))
}

/// Binary forms in `(λ, μ)` as coefficient lists of `λ^i μ^(d-i)`.
fn bf_mul(f: &Gf, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

fn bf_eval(f: &Gf, a: &[Fe], l: Fe, m: Fe) -> Fe {
    let d = a.len() - 1;
    a.iter().enumerate().fold(Fe::ZERO, |acc, (i, &c)| f.add(acc, f.mul(c, f.mul(f.pow(l, i as u64), f.pow(m, (d - i) as u64)))))
}

fn complete_basis(f: &Gf, p1: &[Fe], p2: &[Fe]) -> (Vec<Fe>, Vec<Fe>) {
    for i in 0..4 {
        for j in i + 1..4 {
            let mut r1 = vec![Fe::ZERO; 4];
            let mut r2 = vec![Fe::ZERO; 4];
            r1[i] = Fe::ONE;
            r2[j] = Fe::ONE;
            let m = Matrix::from_rows(&[p1.to_vec(), p2.to_vec(), r1.clone(), r2.clone()]);
            if !m.det(f).is_zero() {
                return (r1, r2);
            }
        }
    }
    unreachable!("two independent vectors extend to a basis")
}

/// The two lines of a rank-2 conic `a s^2 + b t^2 + c u^2 + d st + e su + f tu`,
/// each as a pair of points in `(s, t, u)`.
fn split_conic(f: &Gf, q: [Fe; 6], rng: &mut ChaCha8Rng) -> Result<Outcome<Vec<[Vec<Fe>; 2]>>> {
    let [a, b, c, d, e, g] = q;
    let two = f.from_int(2);
    let m = Matrix::from_rows(&[vec![f.mul(two, a), d, e], vec![d, f.mul(two, b), g], vec![e, g, f.mul(two, c)]]);
    let ker = m.kernel(f);
    if ker.len() != 1 {
        return Err(Error::Degenerate("a tritangent conic of rank at most 1".into()));
    }
    let v = ker[0].clone();
    let k = v.iter().position(|x| !x.is_zero()).unwrap();
    let (i, j) = match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    // coefficients of the conic restricted to y_k = 0, in coordinates (y_i, y_j)
    let sq = [a, b, c];
    let cross = |x: usize, y: usize| match (x, y) {
        (0, 1) => d,
        (0, 2) => e,
        _ => g,
    };
    let bin = [sq[i], cross(i, j), sq[j]];
    let roots = match binary_roots(f, &bin, rng)? {
        Extend(e) => return Ok(Extend(e)),
        Found(r) => r,
    };
    Ok(Found(
        roots
            .into_iter()
            .map(|(s, t)| {
                let mut w = vec![Fe::ZERO; 3];
                w[i] = s;
                w[j] = t;
                [v.clone(), w]
            })
            .collect(),
    ))
}

/// The lines of `X` meeting the line `l` of `X`.
fn lines_meeting(f: &Gf, g: &Form, l: &ProjLine, rng: &mut ChaCha8Rng) -> Result<Outcome<Vec<ProjLine>>> {
    let [p1, p2] = l.points(f);
    let (r1, r2) = complete_basis(f, &p1, &p2);
    let sub: Vec<Vec<Fe>> = (0..4).map(|i| vec![p1[i], p2[i], r1[i], r2[i]]).collect();
    let h = g.substitute(f, &sub);
    let coef = |e: [u8; 4]| h.coeffs[monomial_index(4, &e)];
    for (m, c) in monomials(4, 3).iter().zip(&h.coeffs) {
        if m[2] == 0 && m[3] == 0 && !c.is_zero() {
            return Err(Error::LineSolver("line does not lie on the surface".into()));
        }
    }
    // coefficient of s^a t^b u^c in h(s, t, uλ, uμ), as a binary form of degree c
    let part = |sa: u8, tb: u8, uc: u8| -> Vec<Fe> { (0..=uc).map(|i| coef([sa, tb, i, uc - i])).collect() };
    // h = u Q with Q = a s^2 + b t^2 + c u^2 + d st + e su + f tu
    let (qa, qb, qc) = (part(2, 0, 1), part(0, 2, 1), part(0, 0, 3));
    let (qd, qe, qf) = (part(1, 1, 1), part(1, 0, 2), part(0, 1, 2));
    let four = f.from_int(4);
    let mut disc = bf_mul(f, &bf_mul(f, &qa, &qb), &qc).iter().map(|&x| f.mul(four, x)).collect::<Vec<_>>();
    let plus = bf_mul(f, &bf_mul(f, &qd, &qe), &qf);
    let minus = [bf_mul(f, &qa, &bf_mul(f, &qf, &qf)), bf_mul(f, &qb, &bf_mul(f, &qe, &qe)), bf_mul(f, &qc, &bf_mul(f, &qd, &qd))];
    for k in 0..6 {
        disc[k] = f.add(disc[k], plus[k]);
        for m in &minus {
            disc[k] = f.sub(disc[k], m[k]);
        }
    }
    if disc.iter().all(|x| x.is_zero()) {
        return Err(Error::LineSolver("every plane through a line is tritangent".into()));
    }
    // disc[k] multiplies λ^k μ^(5-k), so binary_roots sees (s, t) = (μ, λ)
    let planes = match binary_roots(f, &disc, rng)? {
        Extend(e) => return Ok(Extend(e)),
        Found(r) => r.into_iter().map(|(mu, la)| (la, mu)).collect::<Vec<_>>(),
    };
    let mut out = Vec::new();
    let mut need = 1u64;
    for (la, mu) in planes {
        let conic = [&qa, &qb, &qc, &qd, &qe, &qf].map(|c| bf_eval(f, c, la, mu));
        let r = lin_comb(f, &[(la, &r1), (mu, &r2)]);
        match split_conic(f, conic, rng)? {
            Extend(e) => need = lcm(need, e as u64),
            Found(pairs) => {
                for [v, w] in pairs {
                    let a = lin_comb(f, &[(v[0], &p1), (v[1], &p2), (v[2], &r)]);
                    let b = lin_comb(f, &[(w[0], &p1), (w[1], &p2), (w[2], &r)]);
                    out.push(ProjLine::through(f, &a, &b)?);
                }
            }
        }
    }
    if need > 1 {
        return Ok(Extend(need as u32));
    }
    Ok(Found(out))
}

/// Chart polynomial `U(a)` over `GF(q)`.
fn chart_polynomial(x: &CubicSurface) -> Result<UniPoly> {
    let q = x.q();
    let mut e = 1;
    while q.pow(e) <= U_BOUND as u64 {
        e += 1;
    }
    let t = FieldTower::over(q, e, 0)?;
    let f = t.top();
    let g = x.form_in(&t, 1);
    let grad = g.gradient(f);
    let a_nodes = nodes(f, U_BOUND + 1).expect("level holds enough nodes");
    let b_nodes = nodes(f, R_BOUND + 1).expect("level holds enough nodes");
    let mut u_vals = Vec::with_capacity(a_nodes.len());
    for &a in &a_nodes {
        let r_vals: Vec<Fe> = b_nodes
            .iter()
            .map(|&b| {
                let p = [Fe::ONE, Fe::ZERO, a, b];
                let (al, be, ga) = (grad[1].eval(f, &p), grad[2].eval(f, &p), grad[3].eval(f, &p));
                let y0 = [Fe::ZERO, ga, Fe::ZERO, f.neg(al)];
                let y1 = [Fe::ZERO, Fe::ZERO, ga, f.neg(be)];
                let polar = grad[0].add(f, &grad[2].scale(f, a)).add(f, &grad[3].scale(f, b));
                let g1 = polar.restrict_line(f, &y0, &y1);
                let g0 = g.restrict_line(f, &y0, &y1);
                resultant_formal(f, &g1, &g0)
            })
            .collect();
        let r = interpolate(f, &b_nodes, &r_vals);
        let mut r_coeffs = r.coeffs().to_vec();
        r_coeffs.resize(R_BOUND + 1, Fe::ZERO);
        let g3 = g.restrict_line(f, &[Fe::ONE, Fe::ZERO, a, Fe::ZERO], &[Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ONE]);
        u_vals.push(resultant_formal(f, &g3, &r_coeffs));
    }
    let u = interpolate(f, &a_nodes, &u_vals);
    let coeffs = u
        .coeffs()
        .iter()
        .map(|&c| t.descend(c, 1, 0))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::LineSolver("chart polynomial is not defined over the base field".into()))?;
    Ok(UniPoly::new(coeffs))
}

/// Runs `step` over the top of `tower`, extending the tower while `step`
/// asks for a larger field. Gives up (returns `None`) past degree `cap`.
fn extending<T>(tower: &mut FieldTower, cap: u32, mut step: impl FnMut(&FieldTower) -> Result<Outcome<T>>) -> Result<Option<T>> {
    loop {
        match step(tower)? {
            Found(v) => return Ok(Some(v)),
            Extend(e) => {
                let top = tower.abs_degree(tower.top_index());
                if top * e / tower.abs_degree(0) > cap {
                    return Ok(None);
                }
                *tower = tower.extend(top * e)?;
            }
        }
    }
}

/// A first line of `X` together with a tower containing it.
fn first_line(x: &CubicSurface, seed: u64) -> Result<Option<(FieldTower, ProjLine)>> {
    let q = x.q();
    let base = x.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e0 = [Fe::ZERO, Fe::ZERO, Fe::ONE, Fe::ZERO];
    let e3 = [Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ONE];
    // points on x0 = x1 = 0 catch a line lying in the chart plane
    let m = x.form().restrict_line(base, &e0, &e3);
    if m.iter().all(|c| c.is_zero()) {
        return Ok(Some((FieldTower::over(q, 1, seed)?, ProjLine::through(base, &e0, &e3)?)));
    }
    let u = chart_polynomial(x)?;
    // closed points of the chart coordinate a, smallest degree first, then
    // the closed points of X on x0 = x1 = 0
    let mut candidates: Vec<(UniPoly, bool)> = Vec::new();
    if !u.is_zero() {
        let mut fs = u.squarefree_part(base).irreducible_factors(base, &mut rng)?;
        fs.sort_by_key(|p| p.deg());
        candidates.extend(fs.into_iter().filter(|p| p.deg() as u32 <= MAX_LINE_DEGREE).map(|p| (p, true)));
    }
    for p in UniPoly::new(m.clone()).squarefree_part(base).irreducible_factors(base, &mut rng)? {
        candidates.push((p, false));
    }
    let mut points: Vec<(FieldTower, Vec<Fe>)> = Vec::new();
    if m[3].is_zero() {
        points.push((FieldTower::over(q, 1, seed)?, e3.to_vec()));
    }
    for (phi, chart) in &candidates {
        let t = FieldTower::over(q, phi.deg() as u32, seed)?;
        let f = t.top();
        let r = t.find_root(phi, 0, 1)?;
        if !*chart {
            points.push((t, vec![Fe::ZERO, Fe::ZERO, Fe::ONE, r]));
            continue;
        }
        let g = x.form_in(&t, 1);
        let a = [Fe::ONE, Fe::ZERO, r, Fe::ZERO];
        let g3 = g.restrict_line(f, &a, &e3);
        if g3.iter().all(|c| c.is_zero()) {
            let l = ProjLine::through(f, &a, &e3)?;
            return Ok(Some((t, l)));
        }
        let mut psis = UniPoly::new(g3).squarefree_part(f).irreducible_factors(f, &mut rng)?;
        psis.sort_by_key(|p| p.deg());
        for psi in psis {
            let d = psi.deg() as u32;
            if phi.deg() as u32 * d > MAX_LINE_DEGREE {
                continue;
            }
            let t2 = if d == 1 { t.clone() } else { t.extend(t.abs_degree(1) * d)? };
            let top = t2.top_index();
            let b = t2.find_root(&psi, 1, top)?;
            points.push((t2.clone(), vec![Fe::ONE, Fe::ZERO, t2.embed(r, 1, top), b]));
        }
    }
    for (mut t, p) in points {
        let lvl = t.top_index();
        let found = extending(&mut t, MAX_LINE_DEGREE, |t| {
            let top = t.top_index();
            let f = t.top();
            let g = x.form_in(t, top);
            let grad = g.gradient(f);
            let pt: Vec<Fe> = p.iter().map(|&c| t.embed(c, lvl, top)).collect();
            Ok(match lines_through_point(f, &g, &grad, &pt, &mut rng)? {
                Extend(e) => Extend(e),
                Found(ls) => Found(ls.into_iter().next()),
            })
        })?;
        if let Some(Some(l)) = found {
            return Ok(Some((t, l)));
        }
    }
    Ok(None)
}

/// A random invertible 4 x 4 matrix over `f`.
pub fn random_gl4(f: &Gf, rng: &mut impl Rng) -> Matrix {
    loop {
        let rows: Vec<Vec<Fe>> = (0..4).map(|_| (0..4).map(|_| Fe(rng.gen_range(0..f.size()))).collect()).collect();
        let m = Matrix::from_rows(&rows);
        if !m.det(f).is_zero() {
            return m;
        }
    }
}

pub fn find_lines(x: &CubicSurface) -> Result<LineSet> {
    find_lines_seeded(x, 0)
}

/// The 27 lines. `seed` drives factorization and any coordinate changes.
pub fn find_lines_seeded(x: &CubicSurface, seed: u64) -> Result<LineSet> {
    let mut retry_seeds = Vec::new();
    let mut start = None;
    for attempt in 0..=MAX_RETRIES {
        if attempt == 0 {
            start = first_line(x, seed)?;
        } else {
            let s = seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9));
            retry_seeds.push(s);
            let m = random_gl4(x.field(), &mut ChaCha8Rng::seed_from_u64(s));
            let y = x.transform(&m)?;
            // a line of f(M y) maps to a line of f under x = M y
            start = first_line(&y, s)?.map(|(t, l)| {
                let top = t.top_index();
                let f = t.top();
                let mt = Matrix::from_rows(&(0..4).map(|i| m.row(i).iter().map(|&c| t.embed(c, 0, top)).collect()).collect::<Vec<_>>());
                let [a, b] = l.points(f);
                let line = ProjLine::through(f, &mt.mul_vec(f, &a), &mt.mul_vec(f, &b)).expect("invertible map");
                (t, line)
            });
        }
        if start.is_some() {
            break;
        }
    }
    let (mut tower, first) = start.ok_or_else(|| Error::RetriesExhausted(format!("no first line after {MAX_RETRIES} coordinate changes")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x11_4e5);
    let mut known = vec![first];
    loop {
        let top = tower.top_index();
        let f = tower.top();
        let g = x.form_in(&tower, top);
        for l in &known {
            if !on_surface(f, &g, l) {
                return Err(Error::LineSolver("a solver line does not lie on the surface".into()));
            }
        }
        let mut index: HashMap<ProjLine, usize> = known.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let mut queue: VecDeque<usize> = (0..known.len()).collect();
        let mut need = None;
        while let Some(i) = queue.pop_front() {
            match lines_meeting(f, &g, &known[i].clone(), &mut rng)? {
                Extend(e) => {
                    need = Some(e);
                    break;
                }
                Found(ls) => {
                    for l in ls {
                        if !index.contains_key(&l) {
                            if !on_surface(f, &g, &l) {
                                return Err(Error::LineSolver("a tritangent line does not lie on the surface".into()));
                            }
                            index.insert(l.clone(), known.len());
                            queue.push_back(known.len());
                            known.push(l);
                        }
                    }
                }
            }
            if known.len() > 27 {
                return Err(Error::LineSolver("more than 27 lines".into()));
            }
        }
        match need {
            None => break,
            Some(e) => {
                let d = tower.abs_degree(top) * e;
                if d / tower.abs_degree(0) > MAX_LINE_DEGREE {
                    return Err(Error::LineSolver(format!("splitting field of degree {} exceeds {MAX_LINE_DEGREE}", d / tower.abs_degree(0))));
                }
                tower = tower.extend(d)?;
                known = known.iter().map(|l| l.embed(&tower, top, top + 1)).collect();
            }
        }
    }
    if known.len() != 27 {
        return Err(Error::LineSolver(format!("found {} lines instead of 27", known.len())));
    }
    known.sort();
    let top = tower.top_index();
    let index: HashMap<&ProjLine, usize> = known.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let frobenius = known
        .iter()
        .map(|l| index.get(&l.frobenius(&tower, top)).map(|&i| i as u8))
        .collect::<Option<Vec<u8>>>()
        .ok_or_else(|| Error::LineSolver("line set is not Galois stable".into()))?;
    let degrees = (0..27)
        .map(|i| {
            let mut n = 1;
            let mut j = frobenius[i] as usize;
            while j != i {
                j = frobenius[j] as usize;
                n += 1;
            }
            n
        })
        .collect();
    Ok(LineSet { tower, lines: known, frobenius, degrees, retry_seeds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeom::enumerate_proj;

    fn fermat(q: u64) -> CubicSurface {
        let mut c = [0u64; 20];
        for i in [0, 10, 16, 19] {
            c[i] = 1;
        }
        CubicSurface::from_u64(q, &c).unwrap()
    }

    /// Lines of `X` defined over `GF(q^k)`, by testing every line of `P^3(GF(q^k))`.
    fn brute_force_line_count(x: &CubicSurface, k: u32) -> usize {
        let t = FieldTower::over(x.q(), k, 0).unwrap();
        let f = t.top();
        let g = x.form_in(&t, 1);
        let pts: Vec<Vec<Fe>> = enumerate_proj(3, f).filter(|v| g.eval(f, v).is_zero()).collect();
        let mut lines = std::collections::HashSet::new();
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                let l = ProjLine::through(f, a, b).unwrap();
                if !lines.contains(&l) && on_surface(f, &g, &l) {
                    lines.insert(l);
                }
            }
        }
        lines.len()
    }

    fn check_structure(ls: &LineSet) {
        let f = ls.field();
        assert_eq!(ls.lines.len(), 27);
        for l in &ls.lines {
            assert!(l.relation(f).is_zero());
        }
        for row in ls.incidence() {
            assert_eq!(row.iter().filter(|&&m| m).count(), 10);
        }
        let ct = ls.cycle_type();
        assert_eq!(ct.iter().map(|&c| c as usize).sum::<usize>(), 27);
        for &d in &ls.degrees {
            assert_eq!(ls.degrees.iter().filter(|&&e| e == d).count() % d as usize, 0);
        }
    }

    #[test]
    fn fermat_lines_over_small_fields() {
        for q in [2u64, 4, 5, 7] {
            let x = fermat(q);
            let ls = find_lines(&x).unwrap();
            check_structure(&ls);
            for k in 1..=2 {
                if x.q().pow(k) > 16 {
                    break;
                }
                let expect = ls.degrees.iter().filter(|&&d| k % d == 0).count();
                assert_eq!(brute_force_line_count(&x, k), expect, "q = {q}, k = {k}");
            }
        }
    }

    #[test]
    fn random_surfaces_over_f2_match_brute_force_line_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut done = 0;
        while done < 6 {
            let c: Vec<u64> = (0..20).map(|_| rng.gen_range(0..2)).collect();
            let Ok(x) = CubicSurface::from_u64(2, &c) else { continue };
            if !super::super::smooth::is_smooth(&x).unwrap().smooth {
                continue;
            }
            let ls = find_lines(&x).unwrap();
            check_structure(&ls);
            for k in 1..=4 {
                let expect = ls.degrees.iter().filter(|&&d| k % d == 0).count();
                assert_eq!(brute_force_line_count(&x, k), expect, "{c:?}, k = {k}");
            }
            done += 1;
        }
    }

    #[test]
    fn random_surfaces_over_assorted_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for q in [3u64, 8, 9, 11, 13, 25] {
            let mut done = 0;
            while done < 3 {
                let c: Vec<u64> = (0..20).map(|_| rng.gen_range(0..q)).collect();
                let x = CubicSurface::from_u64(q, &c).unwrap();
                if !super::super::smooth::is_smooth(&x).unwrap().smooth {
                    continue;
                }
                let ls = find_lines(&x).unwrap();
                check_structure(&ls);
                let n = ls.splitting_degree();
                assert_eq!(ls.degrees.iter().fold(1, |a, &d| lcm(a, d as u64)), n as u64);
                done += 1;
            }
        }
    }
}

//! Point counts `#X(GF(q^n))` and zeta traces.

use super::surface::CubicSurface;
use crate::error::{Error, Result};
use crate::ff::{Fe, FieldTower, Form, Gf, UniPoly};
use crate::projgeom::enumerate_proj;

/// Largest `|t_n|` for a smooth cubic surface (`7` for the split class).
pub const MAX_TRACE: i64 = 7;

/// `#X(GF(q^n))`, counted over the fibers of the projection from `(1:0:0:0)`.
pub fn count_points(x: &CubicSurface, n: u32) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidInput("extension degree must be at least 1".into()));
    }
    let t = FieldTower::over(x.q(), n, 0)?;
    Ok(count_points_in(&t, t.top_index(), &x.form_in(&t, t.top_index())))
}

/// Fiberwise count of the zeros of a quaternary cubic over level `lvl`.
pub fn count_points_in(t: &FieldTower, lvl: usize, g: &Form) -> u64 {
    let f = t.level(lvl);
    let qn = f.size();
    // f = sum_k x0^k c_k(x1, x2, x3)
    let parts = split_by_x0(f, g);
    let mut total = u64::from(g.eval(f, &[Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ZERO]).is_zero());
    let mut v = [Fe::ZERO; 3];
    for w in enumerate_proj(2, f) {
        v.copy_from_slice(&w);
        let cs: Vec<Fe> = parts.iter().map(|c| c.eval(f, &v)).collect();
        total += count_fiber(f, &cs, qn);
    }
    total
}

/// Values of `x0` in the field that are roots of `sum_k c_k x0^k`.
fn count_fiber(f: &Gf, c: &[Fe], qn: u64) -> u64 {
    let p = UniPoly::new(c.to_vec());
    match p.degree() {
        None => qn,
        Some(0) => 0,
        Some(1) => 1,
        Some(2) => quadratic_roots(f, c) as u64,
        Some(_) => p.count_roots(f).expect("nonzero polynomial") as u64,
    }
}

fn quadratic_roots(f: &Gf, c: &[Fe]) -> usize {
    let (a, b, cc) = (c[2], c[1], c[0]);
    if f.characteristic() == 2 {
        if b.is_zero() {
            return 1;
        }
        // a x^2 + b x + c  ~  y^2 + y + a c / b^2
        let u = f.div(f.mul(a, cc), f.sqr(b));
        return if f.abs_trace(u).is_zero() { 2 } else { 0 };
    }
    let disc = f.sub(f.sqr(b), f.mul(f.from_int(4), f.mul(a, cc)));
    if disc.is_zero() {
        1
    } else if f.is_square(disc) {
        2
    } else {
        0
    }
}

/// The ternary forms `c_k` with `g = sum_k x0^k c_k(x1, x2, x3)`.
fn split_by_x0(f: &Gf, g: &Form) -> Vec<Form> {
    let mut out: Vec<Form> = (0..=3).map(|k| Form::zero(3, 3 - k)).collect();
    for (m, &c) in crate::ff::form::monomials(4, 3).iter().zip(&g.coeffs) {
        if c.is_zero() {
            continue;
        }
        let k = m[0] as usize;
        let i = crate::ff::form::monomial_index(3, &m[1..]);
        out[k].coeffs[i] = f.add(out[k].coeffs[i], c);
    }
    out
}

/// `#X(GF(q^n))` by evaluating at every point of `P^3(GF(q^n))`.
pub fn count_points_brute(x: &CubicSurface, n: u32) -> Result<u64> {
    let t = FieldTower::over(x.q(), n, 0)?;
    let f = t.top();
    let g = x.form_in(&t, 1);
    Ok(enumerate_proj(3, f).filter(|v| g.eval(f, v).is_zero()).count() as u64)
}

/// `t_n = (#X(GF(q^n)) - q^(2n) - 1) / q^n` from a point count.
pub fn trace_from_count(q: u64, n: u32, count: u64) -> Result<i64> {
    let qn = q.checked_pow(n).ok_or_else(|| Error::Budget(format!("q^{n} overflows")))? as i128;
    let num = count as i128 - qn * qn - 1;
    if num % qn != 0 {
        return Err(Error::Inconsistent(format!("#X(F_{{q^{n}}}) = {count} gives a non-integral trace")));
    }
    let t = (num / qn) as i64;
    if t.abs() > MAX_TRACE {
        return Err(Error::Inconsistent(format!("trace t_{n} = {t} is out of range")));
    }
    Ok(t)
}

/// `(t_1, ..., t_len)`.
pub fn trace_vector(x: &CubicSurface, len: u32) -> Result<Vec<i64>> {
    if len > 12 {
        return Err(Error::InvalidInput("trace vectors are stored up to length 12".into()));
    }
    (1..=len).map(|n| trace_from_count(x.q(), n, count_points(x, n)?)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn fiber_counts_match_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for (q, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (4, 2), (5, 1), (7, 1), (9, 1)] {
            for _ in 0..4 {
                let c: Vec<u64> = (0..20).map(|_| rng.gen_range(0..q)).collect();
                let Ok(x) = CubicSurface::from_u64(q, &c) else { continue };
                assert_eq!(count_points(&x, n).unwrap(), count_points_brute(&x, n).unwrap(), "q = {q}, n = {n}, {c:?}");
            }
        }
    }

    #[test]
    fn plane_and_degenerate_fibers() {
        // x0^3 = 0 is the plane x0 = 0 (with multiplicity)
        let mut c = [0u64; 20];
        c[0] = 1;
        for q in [2, 3, 4] {
            let x = CubicSurface::from_u64(q, &c).unwrap();
            assert_eq!(count_points(&x, 1).unwrap(), q * q + q + 1);
        }
        // x1^3 = 0: every fiber over x1 = 0 is identically zero
        let mut c = [0u64; 20];
        c[10] = 1;
        let x = CubicSurface::from_u64(5, &c).unwrap();
        assert_eq!(count_points(&x, 1).unwrap(), 31);
        assert_eq!(count_points(&x, 1).unwrap(), count_points_brute(&x, 1).unwrap());
    }

    #[test]
    fn trace_extraction() {
        assert_eq!(trace_from_count(2, 1, 4 + 2 + 1).unwrap(), 1);
        assert_eq!(trace_from_count(3, 2, 81 - 2 * 9 + 1).unwrap(), -2);
        assert!(trace_from_count(2, 1, 6).is_err());
        assert!(trace_from_count(2, 1, 4 + 16 + 1).is_err());
    }
}

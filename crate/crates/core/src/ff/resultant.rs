//! Sylvester resultants, by evaluation and interpolation over a large enough
//! tower level, with an exact fraction-free fallback over `F[x]`.

use super::gf::{Fe, Gf};
use super::poly::UniPoly;
use super::tower::FieldTower;
use crate::error::{Error, Result};
use crate::projgeom::matrix::Matrix;

/// Polynomial in `y` whose coefficients are polynomials in `x`
/// (`coeffs[j]` multiplies `y^j`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    pub coeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<UniPoly>) -> BiPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    /// Degree in `y` (`None` for zero).
    pub fn deg_y(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn max_deg_x(&self) -> usize {
        self.coeffs.iter().map(|c| c.deg()).max().unwrap_or(0)
    }

    /// Specialization at `x = a`, as a coefficient list in `y` (not trimmed).
    pub fn eval_x(&self, f: &Gf, a: Fe) -> Vec<Fe> {
        self.coeffs.iter().map(|c| c.eval(f, a)).collect()
    }

    pub fn embed(&self, t: &FieldTower, from: usize, to: usize) -> BiPoly {
        BiPoly { coeffs: self.coeffs.iter().map(|c| t.embed_poly(c, from, to)).collect() }
    }
}

/// Sylvester matrix of `f` and `g` (coefficients low degree first) taken with
/// formal degrees `m = f.len() - 1` and `n = g.len() - 1`.
pub fn sylvester(f: &[Fe], g: &[Fe]) -> Matrix {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut s = Matrix::zeros(size, size);
    for r in 0..n {
        for (k, &c) in f.iter().rev().enumerate() {
            s[(r, r + k)] = c;
        }
    }
    for r in 0..m {
        for (k, &c) in g.iter().rev().enumerate() {
            s[(n + r, r + k)] = c;
        }
    }
    s
}

/// Resultant with formal degrees `f.len() - 1` and `g.len() - 1`.
pub fn resultant_formal(fld: &Gf, f: &[Fe], g: &[Fe]) -> Fe {
    assert!(!f.is_empty() && !g.is_empty(), "formal degree of an empty coefficient list");
    if f.len() == 1 && g.len() == 1 {
        return Fe::ONE;
    }
    sylvester(f, g).det(fld)
}

/// Lagrange interpolation through distinct nodes.
pub fn interpolate(f: &Gf, xs: &[Fe], ys: &[Fe]) -> UniPoly {
    assert_eq!(xs.len(), ys.len());
    // Newton divided differences.
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(coef[i], coef[i - 1]);
            let den = f.sub(xs[i], xs[i - j]);
            coef[i] = f.div(num, den);
        }
    }
    let mut out = UniPoly::zero();
    for i in (0..n).rev() {
        out = out.mul(f, &UniPoly::linear_root(f, xs[i])).add(f, &UniPoly::constant(coef[i]));
    }
    out
}

/// Evaluation nodes `0, 1, ..., n-1` in encoding order.
pub fn nodes(f: &Gf, n: usize) -> Option<Vec<Fe>> {
    (n as u64 <= f.size()).then(|| (0..n as u64).map(Fe).collect())
}

/// `Res_y(f, g)` as a polynomial in `x` over level `lvl`.
///
/// Evaluates at enough points of the smallest tower level (at or above
/// `lvl`) that has them, then descends; without such a level, computes the
/// Sylvester determinant exactly over `F[x]`.
pub fn resultant_y(t: &FieldTower, lvl: usize, f: &BiPoly, g: &BiPoly) -> Result<UniPoly> {
    let (Some(m), Some(n)) = (f.deg_y(), g.deg_y()) else {
        return Err(Error::ZeroPolynomial);
    };
    let bound = n * f.max_deg_x() + m * g.max_deg_x();
    let Some(big) = (lvl..t.len()).find(|&j| t.level(j).size() > bound as u64) else {
        return Ok(resultant_exact(t.level(lvl), f, g));
    };
    let fb = f.embed(t, lvl, big);
    let gb = g.embed(t, lvl, big);
    let field = t.level(big);
    let xs = nodes(field, bound + 1).expect("level size checked");
    let ys: Vec<Fe> = xs.iter().map(|&a| resultant_formal(field, &fb.eval_x(field, a), &gb.eval_x(field, a))).collect();
    let r = interpolate(field, &xs, &ys);
    let coeffs = r
        .coeffs()
        .iter()
        .map(|&c| t.descend(c, big, lvl))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidInput("resultant coefficients failed to descend".into()))?;
    Ok(UniPoly::new(coeffs))
}

/// Sylvester determinant over `F[x]` by fraction-free (Bareiss) elimination.
pub fn resultant_exact(fld: &Gf, f: &BiPoly, g: &BiPoly) -> UniPoly {
    let m = f.coeffs.len() - 1;
    let n = g.coeffs.len() - 1;
    let size = m + n;
    if size == 0 {
        return UniPoly::one();
    }
    let mut a = vec![vec![UniPoly::zero(); size]; size];
    for r in 0..n {
        for (k, c) in f.coeffs.iter().rev().enumerate() {
            a[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in g.coeffs.iter().rev().enumerate() {
            a[n + r][r + k] = c.clone();
        }
    }
    let mut sign = false;
    let mut prev = UniPoly::one();
    for k in 0..size - 1 {
        let Some(p) = (k..size).find(|&i| !a[i][k].is_zero()) else {
            return UniPoly::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = a[k][k].mul(fld, &a[i][j]).sub(fld, &a[i][k].mul(fld, &a[k][j]));
                a[i][j] = v.div_exact(fld, &prev);
            }
            a[i][k] = UniPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[size - 1][size - 1].clone();
    if sign {
        d.scale(fld, fld.from_int(-1))
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn up(f: &Gf, c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&v| f.from_int(v)).collect())
    }

    /// Determinant by cofactor expansion along the first row.
    fn laplace(f: &Gf, a: &[Vec<UniPoly>]) -> UniPoly {
        let n = a.len();
        if n == 1 {
            return a[0][0].clone();
        }
        let mut acc = UniPoly::zero();
        for j in 0..n {
            if a[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<UniPoly>> =
                a[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect()).collect();
            let term = a[0][j].mul(f, &laplace(f, &minor));
            acc = if j % 2 == 0 { acc.add(f, &term) } else { acc.sub(f, &term) };
        }
        acc
    }

    fn sylvester_poly(f: &BiPoly, g: &BiPoly) -> Vec<Vec<UniPoly>> {
        let m = f.coeffs.len() - 1;
        let n = g.coeffs.len() - 1;
        let mut a = vec![vec![UniPoly::zero(); m + n]; m + n];
        for r in 0..n {
            for (k, c) in f.coeffs.iter().rev().enumerate() {
                a[r][r + k] = c.clone();
            }
        }
        for r in 0..m {
            for (k, c) in g.coeffs.iter().rev().enumerate() {
                a[n + r][r + k] = c.clone();
            }
        }
        a
    }

    #[test]
    fn textbook_resultants() {
        let t = FieldTower::new(5, &[1, 4], 0).unwrap();
        let f5 = t.base();
        // f = y - x, g = y - 1  ->  x - 1 up to sign
        let f = BiPoly::new(vec![up(f5, &[0, -1]), up(f5, &[1])]);
        let g = BiPoly::new(vec![up(f5, &[-1]), up(f5, &[1])]);
        let r = resultant_y(&t, 0, &f, &g).unwrap();
        assert_eq!(r.monic(f5), up(f5, &[-1, 1]));
        // f = y^2, g = y - x  ->  x^2
        let f = BiPoly::new(vec![UniPoly::zero(), UniPoly::zero(), up(f5, &[1])]);
        let g = BiPoly::new(vec![up(f5, &[0, -1]), up(f5, &[1])]);
        assert_eq!(resultant_y(&t, 0, &f, &g).unwrap().monic(f5), up(f5, &[0, 0, 1]));
    }

    #[test]
    fn random_pairs_match_cofactor_expansion() {
        let t = FieldTower::new(5, &[1, 3], 0).unwrap();
        let f5 = t.base();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut rand_bi = |dy: usize, dx: usize| {
            BiPoly::new(
                (0..=dy)
                    .map(|j| {
                        let c: Vec<i64> = (0..=dx).map(|_| rng.gen_range(0..5)).collect();
                        if j == dy {
                            up(f5, &[1 + c[0] % 4])
                        } else {
                            up(f5, &c)
                        }
                    })
                    .collect(),
            )
        };
        for _ in 0..25 {
            let f = rand_bi(3, 3);
            let g = rand_bi(2, 3);
            let oracle = laplace(f5, &sylvester_poly(&f, &g));
            assert_eq!(resultant_y(&t, 0, &f, &g).unwrap(), oracle);
            assert_eq!(resultant_exact(f5, &f, &g), oracle);
        }
    }

    #[test]
    fn shared_factor_gives_zero_resultant() {
        let t = FieldTower::new(3, &[1, 5], 0).unwrap();
        let f3 = t.base();
        // f = (y - x)(y + 1), g = (y - x)(y + x)
        let f = BiPoly::new(vec![up(f3, &[0, -1]), up(f3, &[1, -1]), up(f3, &[1])]);
        let g = BiPoly::new(vec![up(f3, &[0, 0, -1]), UniPoly::zero(), up(f3, &[1])]);
        assert!(resultant_y(&t, 0, &f, &g).unwrap().is_zero());
    }

    #[test]
    fn interpolation_roundtrip() {
        let f = Gf::canonical(2, 7).unwrap();
        let p = UniPoly::new((0..30).map(|i| Fe((i * 37 + 5) % 128)).collect());
        let xs = nodes(&f, 31).unwrap();
        let ys: Vec<Fe> = xs.iter().map(|&x| p.eval(&f, x)).collect();
        assert_eq!(interpolate(&f, &xs, &ys), p);
    }
}

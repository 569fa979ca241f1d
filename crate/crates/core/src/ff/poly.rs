//! Univariate polynomials over a [`Gf`]: arithmetic, gcd, modular powering,
//! squarefree part, distinct- and equal-degree factorization and root finding.
//!
//! Coefficients are stored low degree first with no trailing zeros, so the
//! zero polynomial is the empty vector.

use rand::Rng;

use super::gf::{Fe, Gf};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    c: Vec<Fe>,
}

impl UniPoly {
    pub fn new(mut c: Vec<Fe>) -> UniPoly {
        while c.last() == Some(&Fe::ZERO) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn zero() -> UniPoly {
        UniPoly { c: Vec::new() }
    }

    pub fn one() -> UniPoly {
        UniPoly { c: vec![Fe::ONE] }
    }

    pub fn x() -> UniPoly {
        UniPoly { c: vec![Fe::ZERO, Fe::ONE] }
    }

    pub fn constant(a: Fe) -> UniPoly {
        UniPoly::new(vec![a])
    }

    /// `x - a`.
    pub fn linear_root(f: &Gf, a: Fe) -> UniPoly {
        UniPoly { c: vec![f.neg(a), Fe::ONE] }
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.c.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Fe {
        self.c.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn eval(&self, f: &Gf, x: Fe) -> Fe {
        self.c.iter().rev().fold(Fe::ZERO, |acc, &a| f.add(f.mul(acc, x), a))
    }

    pub fn monic(&self, f: &Gf) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let inv = f.inv(self.lead());
        self.scale(f, inv)
    }

    pub fn scale(&self, f: &Gf, a: Fe) -> UniPoly {
        UniPoly::new(self.c.iter().map(|&x| f.mul(x, a)).collect())
    }

    pub fn add(&self, f: &Gf, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        UniPoly::new((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, f: &Gf, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        UniPoly::new((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn mul(&self, f: &Gf, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Fe::ZERO; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        UniPoly::new(out)
    }

    pub fn derivative(&self, f: &Gf) -> UniPoly {
        UniPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| f.mul(a, f.from_int((i as u64 % f.characteristic()) as i64)))
                .collect(),
        )
    }

    /// Quotient and remainder. Panics if `d` is zero.
    pub fn divrem(&self, f: &Gf, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let mut q = vec![Fe::ZERO; r.len() - dd];
        let li = f.inv(d.lead());
        for k in (dd..r.len()).rev() {
            let c = f.mul(r[k], li);
            if c.is_zero() {
                continue;
            }
            q[k - dd] = c;
            for (i, &di) in d.c.iter().enumerate() {
                r[k - dd + i] = f.sub(r[k - dd + i], f.mul(c, di));
            }
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn rem(&self, f: &Gf, d: &UniPoly) -> UniPoly {
        self.divrem(f, d).1
    }

    /// Exact quotient; callers guarantee divisibility.
    pub fn div_exact(&self, f: &Gf, d: &UniPoly) -> UniPoly {
        let (q, r) = self.divrem(f, d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, f: &Gf, o: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn mulmod(&self, f: &Gf, o: &UniPoly, m: &UniPoly) -> UniPoly {
        self.mul(f, o).rem(f, m)
    }

    /// `self^e mod m`.
    pub fn powmod(&self, f: &Gf, mut e: u64, m: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::one().rem(f, m);
        let mut b = self.rem(f, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(f, &b, m);
            }
            e >>= 1;
            if e > 0 {
                b = b.mulmod(f, &b, m);
            }
        }
        acc
    }

    /// `self^Q mod m` where `Q` is the field size.
    pub fn frobmod(&self, f: &Gf, m: &UniPoly) -> UniPoly {
        self.powmod(f, f.size(), m)
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self, f: &Gf) -> UniPoly {
        if self.is_constant() {
            return UniPoly::one();
        }
        let m = self.monic(f);
        let d = m.derivative(f);
        if d.is_zero() {
            return pth_root(f, &m).squarefree_part(f);
        }
        let g = m.gcd(f, &d);
        let w = m.div_exact(f, &g);
        let mut u = g;
        loop {
            let c = u.gcd(f, &w);
            if c.is_constant() {
                break;
            }
            u = u.div_exact(f, &c);
        }
        if u.is_constant() {
            w
        } else {
            w.mul(f, &pth_root(f, &u).squarefree_part(f)).monic(f)
        }
    }

    pub fn is_squarefree(&self, f: &Gf) -> bool {
        !self.is_zero() && self.squarefree_part(f).deg() == self.deg()
    }

    /// Number of distinct roots in `f`, as `deg gcd(self, x^Q - x)`.
    pub fn count_roots(&self, f: &Gf) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_constant() {
            return Ok(0);
        }
        let m = self.monic(f);
        let xq = UniPoly::x().frobmod(f, &m);
        Ok(m.gcd(f, &xq.sub(f, &UniPoly::x())).deg())
    }

    /// Distinct-degree factorization of a squarefree polynomial: pairs
    /// `(d, product of the irreducible factors of degree d)`.
    pub fn ddf(&self, f: &Gf) -> Result<Vec<(usize, UniPoly)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut rest = self.monic(f);
        let mut out = Vec::new();
        let x = UniPoly::x();
        let mut h = x.clone();
        let mut d = 0;
        while rest.deg() >= 2 * (d + 1) {
            d += 1;
            h = h.frobmod(f, &rest);
            let g = rest.gcd(f, &h.sub(f, &x));
            if !g.is_constant() {
                rest = rest.div_exact(f, &g);
                h = h.rem(f, &rest);
                out.push((d, g));
            }
        }
        if !rest.is_constant() {
            out.push((rest.deg(), rest));
        }
        Ok(out)
    }

    /// Splits a squarefree product of irreducibles of common degree `d` into
    /// its monic irreducible factors.
    pub fn edf<R: Rng>(&self, f: &Gf, d: usize, rng: &mut R) -> Vec<UniPoly> {
        let m = self.monic(f);
        if m.deg() <= d {
            return if m.is_constant() { vec![] } else { vec![m] };
        }
        let mut stack = vec![m];
        let mut out = Vec::new();
        while let Some(g) = stack.pop() {
            if g.deg() == d {
                out.push(g);
                continue;
            }
            loop {
                let a = UniPoly::new((0..g.deg()).map(|_| Fe(rng.gen_range(0..f.size()))).collect());
                if a.is_constant() {
                    continue;
                }
                let s = split_map(f, &a, d, &g);
                let h = g.gcd(f, &s);
                if !h.is_constant() && h.deg() < g.deg() {
                    let other = g.div_exact(f, &h);
                    stack.push(h);
                    stack.push(other);
                    break;
                }
            }
        }
        out.sort_by(|a, b| a.c.cmp(&b.c));
        out
    }

    /// Full factorization into distinct monic irreducibles of a squarefree polynomial.
    pub fn irreducible_factors<R: Rng>(&self, f: &Gf, rng: &mut R) -> Result<Vec<UniPoly>> {
        let mut out = Vec::new();
        for (d, g) in self.ddf(f)? {
            out.extend(g.edf(f, d, rng));
        }
        Ok(out)
    }

    /// Distinct roots lying in `f`, sorted by encoding.
    pub fn roots<R: Rng>(&self, f: &Gf, rng: &mut R) -> Result<Vec<Fe>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_constant() {
            return Ok(vec![]);
        }
        let m = self.monic(f);
        let xq = UniPoly::x().frobmod(f, &m);
        let lin = m.gcd(f, &xq.sub(f, &UniPoly::x()));
        let mut r: Vec<Fe> = lin.edf(f, 1, rng).iter().map(|g| f.neg(g.coeff(0))).collect();
        r.sort();
        Ok(r)
    }
}

/// Coefficient-wise p-th root of a polynomial of the form `g(x^p)`.
fn pth_root(f: &Gf, a: &UniPoly) -> UniPoly {
    let p = f.characteristic() as usize;
    let e = f.size() / f.characteristic();
    UniPoly::new(a.c.iter().step_by(p).map(|&c| f.pow(c, e)).collect())
}

/// The splitting map for equal-degree factorization: for odd `p`,
/// `N(a)^((Q-1)/2) - 1` with `N(a) = a^(1 + Q + ... + Q^(d-1))`; for `p = 2`,
/// the trace `a + a^2 + ... + a^(2^(kd-1))` with `Q = 2^k`.
fn split_map(f: &Gf, a: &UniPoly, d: usize, g: &UniPoly) -> UniPoly {
    if f.characteristic() == 2 {
        let steps = f.degree() as usize * d;
        let mut acc = a.rem(f, g);
        let mut cur = acc.clone();
        for _ in 1..steps {
            cur = cur.mulmod(f, &cur, g);
            acc = acc.add(f, &cur);
        }
        acc
    } else {
        let mut norm = a.rem(f, g);
        let mut cur = norm.clone();
        for _ in 1..d {
            cur = cur.frobmod(f, g);
            norm = norm.mulmod(f, &cur, g);
        }
        norm.powmod(f, (f.size() - 1) / 2, g).sub(f, &UniPoly::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn poly(f: &Gf, c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&v| f.from_int(v)).collect())
    }

    fn brute_roots(f: &Gf, p: &UniPoly) -> usize {
        f.elements().filter(|&x| p.eval(f, x).is_zero()).count()
    }

    #[test]
    fn count_roots_small_cases() {
        let f3 = Gf::prime(3).unwrap();
        assert_eq!(poly(&f3, &[1, 0, 1]).count_roots(&f3).unwrap(), 0);
        let f2 = Gf::prime(2).unwrap();
        assert_eq!(poly(&f2, &[0, -1, 0, 1]).count_roots(&f2).unwrap(), 2);
        let f5 = Gf::prime(5).unwrap();
        assert_eq!(poly(&f5, &[0, -1, 0, 1]).count_roots(&f5).unwrap(), 3);
    }

    #[test]
    fn count_roots_random_cubics_over_gf512() {
        let f = Gf::canonical(2, 9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..40 {
            let p = UniPoly::new((0..4).map(|i| if i == 3 { Fe::ONE } else { Fe(rng.gen_range(0..512)) }).collect());
            assert_eq!(p.count_roots(&f).unwrap(), brute_roots(&f, &p));
            let r = p.roots(&f, &mut rng).unwrap();
            assert_eq!(r.len(), brute_roots(&f, &p));
            assert!(r.iter().all(|&x| p.eval(&f, x).is_zero()));
        }
    }

    #[test]
    fn count_roots_exhaustive_small_degree() {
        // Every polynomial of degree <= 3 over GF(4) and GF(5).
        for f in [Gf::canonical(2, 2).unwrap(), Gf::prime(5).unwrap()] {
            let q = f.size();
            for code in 1..q.pow(4) {
                let p = UniPoly::new((0..4).map(|i| Fe(code / q.pow(i) % q)).collect());
                if p.is_constant() {
                    continue;
                }
                assert_eq!(p.count_roots(&f).unwrap(), brute_roots(&f, &p), "{p:?}");
            }
        }
    }

    #[test]
    fn ddf_known_factors_over_f2() {
        let f = Gf::prime(2).unwrap();
        let p = poly(&f, &[1, 1, 1]).mul(&f, &poly(&f, &[1, 1]));
        let b = p.ddf(&f).unwrap();
        assert_eq!(b, vec![(1, poly(&f, &[1, 1])), (2, poly(&f, &[1, 1, 1]))]);
        let quintic = poly(&f, &[1, 0, 1, 0, 0, 1]);
        assert_eq!(quintic.ddf(&f).unwrap(), vec![(5, quintic.clone())]);
    }

    /// Trial division by every monic polynomial of increasing degree.
    fn naive_factor_degrees(f: &Gf, p: &UniPoly) -> Vec<usize> {
        let mut rest = p.monic(f);
        let mut degs = Vec::new();
        let q = f.size();
        let mut d = 1;
        while rest.deg() > 0 {
            let mut found = false;
            for code in 0..q.pow(d as u32) {
                let mut c: Vec<Fe> = (0..d).map(|i| Fe(code / q.pow(i as u32) % q)).collect();
                c.push(Fe::ONE);
                let g = UniPoly::new(c);
                if rest.rem(f, &g).is_zero() {
                    rest = rest.div_exact(f, &g);
                    degs.push(d);
                    found = true;
                    break;
                }
            }
            if !found {
                d += 1;
            }
        }
        degs
    }

    #[test]
    fn ddf_matches_trial_division_on_degree_12() {
        let f = Gf::prime(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut tested = 0;
        while tested < 30 {
            let mut c: Vec<Fe> = (0..12).map(|_| Fe(rng.gen_range(0..2))).collect();
            c.push(Fe::ONE);
            let p = UniPoly::new(c);
            if !p.is_squarefree(&f) {
                continue;
            }
            tested += 1;
            let mut from_ddf: Vec<usize> = p
                .ddf(&f)
                .unwrap()
                .into_iter()
                .flat_map(|(d, g)| std::iter::repeat(d).take(g.deg() / d))
                .collect();
            from_ddf.sort();
            assert_eq!(from_ddf, naive_factor_degrees(&f, &p));
            let total: usize = p.ddf(&f).unwrap().iter().map(|(_, g)| g.deg()).sum();
            assert_eq!(total, 12);
        }
    }

    #[test]
    fn edf_splits_into_irreducibles() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for f in [Gf::prime(2).unwrap(), Gf::prime(7).unwrap(), Gf::canonical(3, 2).unwrap()] {
            let mut c: Vec<Fe> = (0..15).map(|_| Fe(rng.gen_range(0..f.size()))).collect();
            c.push(Fe::ONE);
            let p = UniPoly::new(c).squarefree_part(&f);
            let factors = p.irreducible_factors(&f, &mut rng).unwrap();
            let prod = factors.iter().fold(UniPoly::one(), |acc, g| acc.mul(&f, g));
            assert_eq!(prod, p);
            for g in factors.iter().filter(|g| g.deg() <= 6) {
                assert_eq!(naive_factor_degrees(&f, g), vec![g.deg()]);
            }
        }
    }

    #[test]
    fn squarefree_part_handles_pth_powers() {
        let f = Gf::canonical(3, 2).unwrap();
        let a = poly(&f, &[1, 1]);
        let b = poly(&f, &[1, 0, 1]);
        // a^3 * b^2 * x^4: radical is a * b * x.
        let p = a.mul(&f, &a).mul(&f, &a).mul(&f, &b).mul(&f, &b).mul(&f, &poly(&f, &[0, 0, 0, 0, 1]));
        let expect = a.mul(&f, &b).mul(&f, &UniPoly::x());
        assert_eq!(p.squarefree_part(&f), expect);
        // g(x^3) with a non-prime coefficient.
        let g = UniPoly::new(vec![Fe(5), Fe::ZERO, Fe::ZERO, Fe::ONE]);
        let r = g.squarefree_part(&f);
        assert_eq!(r.deg(), 1);
        assert!(g.rem(&f, &r).is_zero());
    }
}

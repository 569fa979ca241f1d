//! Dense homogeneous forms over a [`Gf`].
//!
//! Monomials of degree `d` in `n` variables are ordered lexicographically by
//! their sorted variable-index multiset: for cubics in `x0..x3` this gives
//! `x0^3, x0^2x1, x0^2x2, x0^2x3, x0x1^2, ..., x3^3`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::gf::{Fe, Gf};

/// Exponent vectors of all monomials of degree `deg` in `nvars` variables, in
/// the canonical order.
pub fn monomials(nvars: usize, deg: usize) -> Arc<Vec<Vec<u8>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<Vec<Vec<u8>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry((nvars, deg))
        .or_insert_with(|| {
            let mut out = Vec::new();
            let mut idx = vec![0usize; deg];
            loop {
                let mut e = vec![0u8; nvars];
                for &i in &idx {
                    e[i] += 1;
                }
                out.push(e);
                // next nondecreasing index tuple
                let mut k = deg;
                loop {
                    if k == 0 {
                        return Arc::new(out);
                    }
                    k -= 1;
                    if idx[k] + 1 < nvars {
                        let v = idx[k] + 1;
                        for slot in idx[k..].iter_mut() {
                            *slot = v;
                        }
                        break;
                    }
                }
                if deg == 0 {
                    return Arc::new(out);
                }
            }
        })
        .clone()
}

/// Position of an exponent vector in [`monomials`].
pub fn monomial_index(nvars: usize, exps: &[u8]) -> usize {
    static CACHE: OnceLock<Mutex<HashMap<Vec<u8>, usize>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(&i) = cache.lock().unwrap().get(exps) {
        return i;
    }
    let deg: usize = exps.iter().map(|&e| e as usize).sum();
    let mons = monomials(nvars, deg);
    let i = mons.iter().position(|m| m.as_slice() == exps).expect("exponent vector of the right length");
    cache.lock().unwrap().insert(exps.to_vec(), i);
    i
}

pub fn num_monomials(nvars: usize, deg: usize) -> usize {
    monomials(nvars, deg).len()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    pub nvars: usize,
    pub deg: usize,
    pub coeffs: Vec<Fe>,
}

impl Form {
    pub fn new(nvars: usize, deg: usize, coeffs: Vec<Fe>) -> Form {
        assert_eq!(coeffs.len(), num_monomials(nvars, deg), "coefficient count for degree {deg} in {nvars} variables");
        Form { nvars, deg, coeffs }
    }

    pub fn zero(nvars: usize, deg: usize) -> Form {
        Form { nvars, deg, coeffs: vec![Fe::ZERO; num_monomials(nvars, deg)] }
    }

    /// The monomial with the given exponents.
    pub fn monomial(nvars: usize, exps: &[u8]) -> Form {
        let deg: usize = exps.iter().map(|&e| e as usize).sum();
        let mut f = Form::zero(nvars, deg);
        f.coeffs[monomial_index(nvars, exps)] = Fe::ONE;
        f
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(c: &[Fe]) -> Form {
        Form::new(c.len(), 1, c.to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coeff(&self, exps: &[u8]) -> Fe {
        self.coeffs[monomial_index(self.nvars, exps)]
    }

    pub fn eval(&self, f: &Gf, x: &[Fe]) -> Fe {
        let mons = monomials(self.nvars, self.deg);
        let mut acc = Fe::ZERO;
        for (m, &c) in mons.iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let mut t = c;
            for (v, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = f.mul(t, x[v]);
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    pub fn add(&self, f: &Gf, o: &Form) -> Form {
        assert_eq!((self.nvars, self.deg), (o.nvars, o.deg));
        Form { nvars: self.nvars, deg: self.deg, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(&a, &b)| f.add(a, b)).collect() }
    }

    pub fn sub(&self, f: &Gf, o: &Form) -> Form {
        assert_eq!((self.nvars, self.deg), (o.nvars, o.deg));
        Form { nvars: self.nvars, deg: self.deg, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(&a, &b)| f.sub(a, b)).collect() }
    }

    pub fn scale(&self, f: &Gf, a: Fe) -> Form {
        Form { nvars: self.nvars, deg: self.deg, coeffs: self.coeffs.iter().map(|&c| f.mul(c, a)).collect() }
    }

    pub fn mul(&self, f: &Gf, o: &Form) -> Form {
        assert_eq!(self.nvars, o.nvars);
        let n = self.nvars;
        let ma = monomials(n, self.deg);
        let mb = monomials(n, o.deg);
        let mut out = Form::zero(n, self.deg + o.deg);
        let mut e = vec![0u8; n];
        for (x, &a) in ma.iter().zip(&self.coeffs) {
            if a.is_zero() {
                continue;
            }
            for (y, &b) in mb.iter().zip(&o.coeffs) {
                if b.is_zero() {
                    continue;
                }
                for k in 0..n {
                    e[k] = x[k] + y[k];
                }
                let i = monomial_index(n, &e);
                out.coeffs[i] = f.add(out.coeffs[i], f.mul(a, b));
            }
        }
        out
    }

    /// Formal partial derivative in variable `v`.
    pub fn partial(&self, f: &Gf, v: usize) -> Form {
        let n = self.nvars;
        if self.deg == 0 {
            return Form::zero(n, 0);
        }
        let mut out = Form::zero(n, self.deg - 1);
        for (m, &c) in monomials(n, self.deg).iter().zip(&self.coeffs) {
            if c.is_zero() || m[v] == 0 {
                continue;
            }
            let mut e = m.clone();
            e[v] -= 1;
            let i = monomial_index(n, &e);
            let k = f.from_int((m[v] as u64 % f.characteristic()) as i64);
            out.coeffs[i] = f.add(out.coeffs[i], f.mul(c, k));
        }
        out
    }

    pub fn gradient(&self, f: &Gf) -> Vec<Form> {
        (0..self.nvars).map(|v| self.partial(f, v)).collect()
    }

    /// Substitution `x_i = sum_j sub[i][j] y_j` into a form in `y_0..y_{m-1}`.
    pub fn substitute(&self, f: &Gf, sub: &[Vec<Fe>]) -> Form {
        assert_eq!(sub.len(), self.nvars);
        let m = sub[0].len();
        let lins: Vec<Form> = sub.iter().map(|row| Form::linear(row)).collect();
        // powers of each linear form, computed lazily
        let mut pows: Vec<Vec<Form>> = lins.iter().map(|l| vec![constant_form(m), l.clone()]).collect();
        let mut out = Form::zero(m, self.deg);
        for (mono, &c) in monomials(self.nvars, self.deg).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let mut term = Form::new(m, 0, vec![c]);
            for (v, &e) in mono.iter().enumerate() {
                while pows[v].len() <= e as usize {
                    let next = pows[v].last().unwrap().mul(f, &lins[v]);
                    pows[v].push(next);
                }
                if e > 0 {
                    term = term.mul(f, &pows[v][e as usize]);
                }
            }
            out = out.add(f, &term);
        }
        out
    }

    /// Coefficients of the binary form `F(s a + t b)`, listed as the
    /// coefficient of `s^(d-k) t^k` for `k = 0..=d`.
    pub fn restrict_line(&self, f: &Gf, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        let d = self.deg;
        let mut out = vec![Fe::ZERO; d + 1];
        let mut term = vec![Fe::ZERO; d + 1];
        for (m, &c) in monomials(self.nvars, d).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            term.iter_mut().for_each(|x| *x = Fe::ZERO);
            term[0] = c;
            let mut len = 1;
            for (v, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    // multiply by (a_v + b_v t)
                    term[len] = Fe::ZERO;
                    for k in (0..=len).rev() {
                        let hi = if k > 0 { f.mul(term[k - 1], b[v]) } else { Fe::ZERO };
                        term[k] = f.add(f.mul(term[k], a[v]), hi);
                    }
                    len += 1;
                }
            }
            for k in 0..=d {
                out[k] = f.add(out[k], term[k]);
            }
        }
        out
    }

    /// Embeds the coefficients along a map of fields.
    pub fn map_coeffs(&self, h: impl Fn(Fe) -> Fe) -> Form {
        Form { nvars: self.nvars, deg: self.deg, coeffs: self.coeffs.iter().map(|&c| h(c)).collect() }
    }
}

fn constant_form(nvars: usize) -> Form {
    Form::new(nvars, 0, vec![Fe::ONE])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_orders() {
        let cubic = monomials(4, 3);
        assert_eq!(cubic.len(), 20);
        assert_eq!(cubic[0], vec![3, 0, 0, 0]);
        assert_eq!(cubic[1], vec![2, 1, 0, 0]);
        assert_eq!(cubic[4], vec![1, 2, 0, 0]);
        assert_eq!(cubic[14], vec![0, 1, 1, 1]);
        assert_eq!(cubic[19], vec![0, 0, 0, 3]);
        let quad = monomials(3, 2);
        assert_eq!(*quad, vec![vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 2, 0], vec![0, 1, 1], vec![0, 0, 2]]);
        assert_eq!(num_monomials(4, 6), 84);
        assert_eq!(num_monomials(4, 4), 35);
        assert_eq!(num_monomials(3, 9), 55);
        assert_eq!(monomials(2, 0).len(), 1);
        assert_eq!(monomial_index(4, &[0, 1, 1, 1]), 14);
    }

    #[test]
    fn substitution_agrees_with_evaluation() {
        let f = Gf::prime(7).unwrap();
        let g = Form::new(4, 3, (0..20).map(|i| Fe(i % 7)).collect());
        let sub: Vec<Vec<Fe>> = (0..4).map(|i| (0..3).map(|j| Fe((i * 3 + j * 5 + 1) % 7)).collect()).collect();
        let h = g.substitute(&f, &sub);
        for y in [[Fe(1), Fe(2), Fe(3)], [Fe(0), Fe(5), Fe(6)], [Fe(4), Fe(4), Fe(1)]] {
            let x: Vec<Fe> = (0..4).map(|i| (0..3).fold(Fe::ZERO, |acc, j| f.add(acc, f.mul(sub[i][j], y[j])))).collect();
            assert_eq!(h.eval(&f, &y), g.eval(&f, &x));
        }
        let (a, b) = ([Fe(1), Fe(2), Fe(0), Fe(3)], [Fe(0), Fe(1), Fe(1), Fe(1)]);
        let ab = g.restrict_line(&f, &a, &b);
        let two: Vec<Vec<Fe>> = (0..4).map(|i| vec![a[i], b[i]]).collect();
        assert_eq!(ab, g.substitute(&f, &two).coeffs);
    }

    #[test]
    fn euler_identity_in_characteristic_5() {
        let f = Gf::prime(5).unwrap();
        let g = Form::new(4, 3, (0..20).map(|i| Fe((i * i + 1) % 5)).collect());
        let x = [Fe(1), Fe(3), Fe(4), Fe(2)];
        let grad = g.gradient(&f);
        let s = (0..4).fold(Fe::ZERO, |acc, i| f.add(acc, f.mul(x[i], grad[i].eval(&f, &x))));
        assert_eq!(s, f.mul(Fe(3), g.eval(&f, &x)));
    }
}

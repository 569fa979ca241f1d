//! Weyl groups as permutation groups on exceptional classes.
//!
//! Elements are permutations `p` of the exceptional classes with `p[i]` the
//! image of class `i`. Since `e_1, ..., e_r` come first in the class list and
//! `K` is fixed, the images of those `r` classes determine the element; they
//! are packed six bits apiece into a `u64` key.

use std::collections::{HashMap, HashSet};

use super::lattice::{PicLattice, Vector};
use crate::ff::prime::lcm;

pub type Perm = Vec<u8>;

pub fn identity(n: usize) -> Perm {
    (0..n as u8).collect()
}

/// `a ∘ b`: apply `b`, then `a`.
pub fn compose(a: &[u8], b: &[u8]) -> Perm {
    b.iter().map(|&i| a[i as usize]).collect()
}

pub fn inverse(a: &[u8]) -> Perm {
    let mut out = vec![0u8; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j as usize] = i as u8;
    }
    out
}

/// Cycle lengths, descending.
pub fn cycle_type(p: &[u8]) -> Vec<u8> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0u8;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i] as usize;
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

pub fn perm_order(p: &[u8]) -> u64 {
    cycle_type(p).iter().fold(1, |acc, &c| lcm(acc, c as u64))
}

/// Signature used to bucket elements into conjugacy classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub cycle_type: Vec<u8>,
    /// Characteristic polynomial on the lattice, constant term first.
    pub char_poly: Vec<i64>,
}

/// Integer data attached to a lattice: coefficient tables for the trace formula
/// and the simple reflections as permutations.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub lattice: PicLattice,
    pub gens: Vec<Perm>,
}

impl GroupData {
    pub fn new(r: usize) -> GroupData {
        let lattice = PicLattice::new(r);
        let gens = lattice
            .simple_roots()
            .iter()
            .map(|a| {
                lattice
                    .exceptional()
                    .iter()
                    .map(|c| lattice.index_of(&lattice.reflect(c, a)).expect("reflection permutes exceptional classes") as u8)
                    .collect()
            })
            .collect();
        GroupData { lattice, gens }
    }

    pub fn r(&self) -> usize {
        self.lattice.r()
    }

    pub fn n(&self) -> usize {
        self.lattice.num_exceptional()
    }

    pub fn key(&self, p: &[u8]) -> u64 {
        p[..self.r()].iter().enumerate().fold(0u64, |acc, (i, &v)| acc | (v as u64) << (6 * i))
    }

    /// Lattice traces `t_1, ..., t_len` of the powers of `p`, using
    /// `tr(w) = sum_i <e_i-coefficient of w(e_i)> + (3 + sum_i deg w(e_i)) / 3`,
    /// where `deg` is the `h`-coefficient.
    pub fn traces(&self, p: &[u8], len: usize) -> Vec<i64> {
        let r = self.r();
        let ex = self.lattice.exceptional();
        let mut cur: Vec<usize> = (0..r).collect();
        (0..len)
            .map(|_| {
                for c in cur.iter_mut() {
                    *c = p[*c] as usize;
                }
                let mut diag = 0i64;
                let mut deg = 3i64;
                for (i, &c) in cur.iter().enumerate() {
                    diag += ex[c][i + 1] as i64;
                    deg += ex[c][0] as i64;
                }
                debug_assert_eq!(deg % 3, 0);
                diag + deg / 3
            })
            .collect()
    }

    pub fn signature(&self, p: &[u8]) -> Signature {
        let rank = self.lattice.rank();
        Signature { cycle_type: cycle_type(p), char_poly: char_poly_from_traces(&self.traces(p, rank)) }
    }

    /// Integer matrix (images of `h, e_1, .., e_r`) of the element.
    pub fn matrix(&self, p: &[u8]) -> Vec<Vector> {
        self.lattice.basis_images(p)
    }

    /// Conjugacy class of `p` as a set of keys, by closure under conjugation
    /// with the (involutive) generators.
    pub fn conjugacy_class_keys(&self, p: &[u8]) -> HashSet<u64> {
        let mut seen = HashSet::new();
        seen.insert(self.key(p));
        let mut stack = vec![p.to_vec()];
        while let Some(x) = stack.pop() {
            for g in &self.gens {
                let y = compose(g, &compose(&x, g));
                if seen.insert(self.key(&y)) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Breadth-first closure of the generators. Calls `visit` once per element.
    pub fn for_each_element(&self, mut visit: impl FnMut(&[u8])) -> u64 {
        let id = identity(self.n());
        let mut seen: HashSet<u64> = HashSet::new();
        seen.insert(self.key(&id));
        let mut frontier = vec![id];
        let mut count = 0u64;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                visit(x);
                count += 1;
                for g in &self.gens {
                    let y = compose(g, x);
                    if seen.insert(self.key(&y)) {
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        count
    }

    /// Buckets every group element by signature: `(count, smallest-key representative)`.
    pub fn signature_buckets(&self) -> (u64, HashMap<Signature, (u64, Perm)>) {
        let mut buckets: HashMap<Signature, (u64, Perm)> = HashMap::new();
        let order = self.for_each_element(|x| {
            let e = buckets.entry(self.signature(x)).or_insert_with(|| (0, x.to_vec()));
            e.0 += 1;
            if self.key(x) < self.key(&e.1) {
                e.1 = x.to_vec();
            }
        });
        (order, buckets)
    }
}

/// Characteristic polynomial `det(t I - M)` (constant term first) from the
/// power traces `p_k = tr(M^k)`, `k = 1..n`, by Newton's identities.
pub fn char_poly_from_traces(p: &[i64]) -> Vec<i64> {
    let n = p.len();
    let mut e = vec![0i64; n + 1];
    e[0] = 1;
    for k in 1..=n {
        let mut s = 0i64;
        for i in 1..=k {
            let term = e[k - i] * p[i - 1];
            s += if i % 2 == 1 { term } else { -term };
        }
        assert_eq!(s % k as i64, 0, "Newton identity produced a non-integer");
        e[k] = s / k as i64;
    }
    // det(tI - M) = sum_k (-1)^k e_k t^(n-k)
    let mut out = vec![0i64; n + 1];
    for k in 0..=n {
        out[n - k] = if k % 2 == 0 { e[k] } else { -e[k] };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(l: &PicLattice, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
        // columns are images of basis vectors: (a ∘ b)(v_k) = a(b(v_k))
        b.iter()
            .map(|col| {
                let mut y = [0; 8];
                for (k, img) in a.iter().enumerate() {
                    for i in 0..l.rank() {
                        y[i] += col[k] * img[i];
                    }
                }
                y
            })
            .collect()
    }

    #[test]
    fn generators_are_isometries_fixing_k() {
        for r in [6, 7] {
            let g = GroupData::new(r);
            let l = &g.lattice;
            let k = l.canonical();
            for s in &g.gens {
                let m = g.matrix(s);
                let mut img_k = [0; 8];
                for (j, col) in m.iter().enumerate() {
                    for i in 0..l.rank() {
                        img_k[i] += k[j] * col[i];
                    }
                }
                assert_eq!(img_k, k);
                assert_eq!(compose(s, s), identity(g.n()));
                assert_eq!(l.perm_of(&m).unwrap(), *s);
            }
        }
    }

    #[test]
    fn perm_traces_match_matrix_traces() {
        let g = GroupData::new(6);
        let l = &g.lattice;
        let mut w = identity(27);
        for step in 0..40 {
            w = compose(&g.gens[(step * 5 + 3) % 6], &compose(&w, &g.gens[step % 6]));
            let m = g.matrix(&w);
            let mut pow = m.clone();
            let t = g.traces(&w, 12);
            for n in 0..12 {
                let tr: i64 = (0..l.rank()).map(|i| pow[i][i] as i64).sum();
                assert_eq!(tr, t[n]);
                pow = mat_mul(l, &m, &pow);
            }
        }
    }

    #[test]
    fn newton_identities() {
        // identity on rank 3: (t - 1)^3
        assert_eq!(char_poly_from_traces(&[3, 3, 3]), vec![-1, 3, -3, 1]);
        // diag(1, -1): t^2 - 1
        assert_eq!(char_poly_from_traces(&[0, 2]), vec![-1, 0, 1]);
    }
}

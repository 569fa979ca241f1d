//! The lattices `Z^{1,r}` (`r = 6, 7`) with basis `h, e_1, ..., e_r`, form
//! `diag(1, -1, ..., -1)` and their exceptional classes.

use std::collections::HashMap;

/// Lattice vector `a h + sum b_i e_i` stored as `[a, b_1, ..., b_r]`, padded with zeros.
pub type Vector = [i32; 8];

#[derive(Clone, Debug)]
pub struct PicLattice {
    r: usize,
    exceptional: Vec<Vector>,
    index: HashMap<Vector, usize>,
}

impl PicLattice {
    /// Builds the lattice for `r` blown-up points. Only `r = 6, 7` are supported.
    pub fn new(r: usize) -> PicLattice {
        assert!(r == 6 || r == 7, "only r = 6 and r = 7 are supported");
        let mut ex: Vec<Vector> = Vec::new();
        for i in 1..=r {
            let mut v = [0; 8];
            v[i] = 1;
            ex.push(v);
        }
        for i in 1..=r {
            for j in i + 1..=r {
                let mut v = [0; 8];
                v[0] = 1;
                v[i] = -1;
                v[j] = -1;
                ex.push(v);
            }
        }
        if r == 6 {
            for i in 1..=r {
                let mut v = [0; 8];
                v[0] = 2;
                for (j, c) in v.iter_mut().enumerate().take(r + 1).skip(1) {
                    if j != i {
                        *c = -1;
                    }
                }
                ex.push(v);
            }
        } else {
            for i in 1..=r {
                for j in i + 1..=r {
                    let mut v = [0; 8];
                    v[0] = 2;
                    for (k, c) in v.iter_mut().enumerate().take(r + 1).skip(1) {
                        if k != i && k != j {
                            *c = -1;
                        }
                    }
                    ex.push(v);
                }
            }
            for i in 1..=r {
                let mut v = [-1; 8];
                v[0] = 3;
                v[i] = -2;
                ex.push(v);
            }
        }
        let index = ex.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        PicLattice { r, exceptional: ex, index }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Rank of the lattice, `r + 1`.
    pub fn rank(&self) -> usize {
        self.r + 1
    }

    pub fn dot(&self, a: &Vector, b: &Vector) -> i32 {
        a[0] * b[0] - (1..=self.r).map(|i| a[i] * b[i]).sum::<i32>()
    }

    /// `K = -3h + sum e_i`.
    pub fn canonical(&self) -> Vector {
        let mut k = [0; 8];
        k[0] = -3;
        for c in k.iter_mut().take(self.r + 1).skip(1) {
            *c = 1;
        }
        k
    }

    pub fn exceptional(&self) -> &[Vector] {
        &self.exceptional
    }

    pub fn num_exceptional(&self) -> usize {
        self.exceptional.len()
    }

    pub fn index_of(&self, v: &Vector) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Simple roots `e_i - e_{i+1}` and `h - e_1 - e_2 - e_3`.
    pub fn simple_roots(&self) -> Vec<Vector> {
        let mut out = Vec::new();
        for i in 1..self.r {
            let mut v = [0; 8];
            v[i] = 1;
            v[i + 1] = -1;
            out.push(v);
        }
        out.push([1, -1, -1, -1, 0, 0, 0, 0]);
        out
    }

    /// Reflection `x + (x.a) a` in a root `a` with `a.a = -2`.
    pub fn reflect(&self, x: &Vector, a: &Vector) -> Vector {
        let c = self.dot(x, a);
        let mut y = *x;
        for i in 0..=self.r {
            y[i] += c * a[i];
        }
        y
    }

    /// Exceptional permutation induced by a lattice isometry given on the basis.
    pub fn perm_of(&self, basis_images: &[Vector]) -> Option<Vec<u8>> {
        self.exceptional
            .iter()
            .map(|c| {
                let mut y = [0; 8];
                for (k, img) in basis_images.iter().enumerate() {
                    for i in 0..=self.r {
                        y[i] += c[k] * img[i];
                    }
                }
                self.index_of(&y).map(|j| j as u8)
            })
            .collect()
    }

    /// Images of `h, e_1, ..., e_r` under the isometry with exceptional permutation `p`.
    pub fn basis_images(&self, p: &[u8]) -> Vec<Vector> {
        let mut out = Vec::with_capacity(self.r + 1);
        // h = (h - e1 - e2) + e1 + e2; exceptional index r is h - e1 - e2.
        let (a, b, c) = (&self.exceptional[p[self.r] as usize], &self.exceptional[p[0] as usize], &self.exceptional[p[1] as usize]);
        let mut h = [0; 8];
        for i in 0..=self.r {
            h[i] = a[i] + b[i] + c[i];
        }
        out.push(h);
        for i in 0..self.r {
            out.push(self.exceptional[p[i] as usize]);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exceptional_counts_and_numerics() {
        for (r, n, kk) in [(6, 27, 3), (7, 56, 2)] {
            let l = PicLattice::new(r);
            assert_eq!(l.num_exceptional(), n);
            let k = l.canonical();
            assert_eq!(l.dot(&k, &k), kk);
            for c in l.exceptional() {
                assert_eq!(l.dot(c, c), -1);
                assert_eq!(l.dot(c, &k), -1);
            }
            let allowed: &[i32] = if r == 6 { &[-1, 0, 1] } else { &[-1, 0, 1, 2] };
            for a in l.exceptional() {
                for b in l.exceptional() {
                    assert!(allowed.contains(&l.dot(a, b)));
                }
            }
        }
        let l = PicLattice::new(6);
        let e1 = l.exceptional()[0];
        let h12 = l.exceptional()[6];
        assert_eq!(h12, [1, -1, -1, 0, 0, 0, 0, 0]);
        assert_eq!(l.dot(&e1, &h12), 1);
    }

    #[test]
    fn reflections_preserve_form_and_canonical_class() {
        for r in [6, 7] {
            let l = PicLattice::new(r);
            let k = l.canonical();
            for a in l.simple_roots() {
                assert_eq!(l.dot(&a, &a), -2);
                assert_eq!(l.reflect(&k, &a), k);
                for x in l.exceptional() {
                    for y in l.exceptional() {
                        assert_eq!(l.dot(&l.reflect(x, &a), &l.reflect(y, &a)), l.dot(x, y));
                    }
                }
            }
        }
    }
}

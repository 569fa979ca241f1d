//! Dense matrices over a finite field with exact row reduction.

use crate::ff::{Fe, Gf};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Fe::ONE;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fe>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix { rows: rows.len(), cols, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, r: &[Fe]) {
        if self.rows == 0 && self.cols == 0 {
            self.cols = r.len();
        }
        assert_eq!(r.len(), self.cols);
        self.data.extend_from_slice(r);
        self.rows += 1;
    }

    pub fn mul_vec(&self, f: &Gf, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    pub fn mul(&self, f: &Gf, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    out[(i, j)] = f.add(out[(i, j)], f.mul(a, o[(k, j)]));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, f: &Gf) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = f.inv(self[(r, c)]);
            for j in c..self.cols {
                self[(r, j)] = f.mul(self[(r, j)], inv);
            }
            for i in 0..self.rows {
                let m = self[(i, c)];
                if i != r && !m.is_zero() {
                    for j in c..self.cols {
                        let v = f.mul(m, self[(r, j)]);
                        self[(i, j)] = f.sub(self[(i, j)], v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self, f: &Gf) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of the right null space in echelon form: one vector per free
    /// column, with a 1 in that column and zeros in the other free columns.
    pub fn kernel(&self, f: &Gf) -> Vec<Vec<Fe>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Fe::ZERO; self.cols];
                v[fc] = Fe::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m[(r, fc)]);
                }
                v
            })
            .collect()
    }

    pub fn det(&self, f: &Gf) -> Fe {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Fe::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Fe::ZERO;
            };
            if p != c {
                m.swap_rows(c, p);
                det = f.neg(det);
            }
            let piv = m[(c, c)];
            det = f.mul(det, piv);
            let inv = f.inv(piv);
            for i in c + 1..n {
                let k = f.mul(m[(i, c)], inv);
                if k.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = f.mul(k, m[(c, j)]);
                    m[(i, j)] = f.sub(m[(i, j)], v);
                }
            }
        }
        det
    }

    /// Inverse of a square matrix, if invertible.
    pub fn inverse(&self, f: &Gf) -> Option<Matrix> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = Fe::ONE;
        }
        let piv = aug.rref(f);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = aug[(i, n + j)];
            }
        }
        Some(out)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Fe;
    fn index(&self, (i, j): (usize, usize)) -> &Fe {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fe {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(f: &Gf, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let rows: Vec<Vec<Fe>> = (0..r).map(|_| (0..c).map(|_| Fe(rng.gen_range(0..f.size()))).collect()).collect();
        Matrix::from_rows(&rows)
    }

    #[test]
    fn trivial_kernels() {
        let f = Gf::prime(5).unwrap();
        assert!(Matrix::identity(4).kernel(&f).is_empty());
        assert_eq!(Matrix::zeros(3, 3).kernel(&f).len(), 3);
    }

    /// Rank by counting nonzero rows after plain forward elimination.
    fn rank_oracle(f: &Gf, m: &Matrix) -> usize {
        let mut rows: Vec<Vec<Fe>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            if let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) {
                rows.swap(rank, p);
                for i in rank + 1..rows.len() {
                    let k = f.div(rows[i][c], rows[rank][c]);
                    for j in 0..m.cols() {
                        let v = f.mul(k, rows[rank][j]);
                        rows[i][j] = f.sub(rows[i][j], v);
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn kernel_of_random_36_by_20_over_f2() {
        let f = Gf::prime(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            // low-rank products give nontrivial kernels
            let k = rng.gen_range(5..20);
            let m = random(&f, 36, k, &mut rng).mul(&f, &random(&f, k, 20, &mut rng));
            let ker = m.kernel(&f);
            assert_eq!(ker.len() + rank_oracle(&f, &m), 20);
            for v in &ker {
                assert!(m.mul_vec(&f, v).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn determinant_and_inverse() {
        let f = Gf::canonical(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = random(&f, 5, 5, &mut rng);
            let b = random(&f, 5, 5, &mut rng);
            assert_eq!(a.mul(&f, &b).det(&f), f.mul(a.det(&f), b.det(&f)));
            match a.inverse(&f) {
                Some(inv) => assert_eq!(a.mul(&f, &inv), Matrix::identity(5)),
                None => assert!(a.det(&f).is_zero()),
            }
        }
    }
}

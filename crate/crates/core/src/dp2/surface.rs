//! Surfaces `s^2 Q0 + st Q1 + t^2 Q2 = 0` in `P^1 x P^2`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::form::monomial_index;
use crate::ff::{Fe, FieldTower, Form, Gf};

/// Binary form of degree `len - 1`; entry `k` multiplies `s^(d-k) t^k`.
pub type BinaryForm = Vec<Fe>;

/// Position of `x_i x_j` among the ternary quadratic monomials
/// `x^2, xy, xz, y^2, yz, z^2`.
fn quad_index(i: usize, j: usize) -> usize {
    let mut e = [0u8; 3];
    e[i] += 1;
    e[j] += 1;
    monomial_index(3, &e)
}

/// Conic bundle over `P^1_{s,t}` of bidegree `(2, 2)`, odd characteristic.
/// The 18 coefficients are `Q0` (the `s^2` part), `Q1` (`st`) and `Q2`
/// (`t^2`), each in the order `x^2, xy, xz, y^2, yz, z^2`.
#[derive(Clone, Debug)]
pub struct ConicBundleSurface {
    field: Arc<Gf>,
    parts: [Form; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleData {
    pub q: u64,
    pub coeffs: Vec<u64>,
}

impl ConicBundleSurface {
    pub fn new(field: Arc<Gf>, coeffs: Vec<Fe>) -> Result<ConicBundleSurface> {
        if field.characteristic() == 2 {
            return Err(Error::Characteristic2);
        }
        if coeffs.len() != 18 {
            return Err(Error::InvalidInput(format!("a bidegree (2,2) form has 18 coefficients, got {}", coeffs.len())));
        }
        let canon = Gf::canonical(field.characteristic(), field.degree())?;
        if canon.modulus() != field.modulus() {
            return Err(Error::InvalidField("surfaces must be defined over the canonical model of GF(q)".into()));
        }
        if let Some(c) = coeffs.iter().find(|c| c.0 >= field.size()) {
            return Err(Error::InvalidElement { value: c.0, size: field.size() });
        }
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidInput("the zero form does not define a surface".into()));
        }
        let parts = [0, 1, 2].map(|k| Form::new(3, 2, coeffs[6 * k..6 * k + 6].to_vec()));
        Ok(ConicBundleSurface { field, parts })
    }

    pub fn from_u64(q: u64, coeffs: &[u64]) -> Result<ConicBundleSurface> {
        let (p, k) = crate::ff::prime::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let field = Arc::new(Gf::canonical(p, k)?);
        let c = coeffs.iter().map(|&v| field.from_u64(v)).collect::<Result<Vec<_>>>()?;
        ConicBundleSurface::new(field, c)
    }

    pub fn from_data(d: &BundleData) -> Result<ConicBundleSurface> {
        ConicBundleSurface::from_u64(d.q, &d.coeffs)
    }

    /// `(x^2 + xz - z^2) s^2 + (x^2 + y^2) st + (x^2 - xy - y^2 + xz - z^2) t^2`
    /// over `GF(3)`.
    pub fn reference_f3() -> ConicBundleSurface {
        #[rustfmt::skip]
        let c = [
            1, 0, 1, 0, 0, 2,
            1, 0, 0, 1, 0, 0,
            1, 2, 1, 2, 0, 2,
        ];
        ConicBundleSurface::from_u64(3, &c).expect("valid coefficients")
    }

    pub fn data(&self) -> BundleData {
        BundleData { q: self.q(), coeffs: self.coeffs().iter().map(|c| c.0).collect() }
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.size()
    }

    pub fn coeffs(&self) -> Vec<Fe> {
        self.parts.iter().flat_map(|p| p.coeffs.iter().copied()).collect()
    }

    pub fn parts(&self) -> &[Form; 3] {
        &self.parts
    }

    /// The three ternary parts with coefficients moved into level `lvl`.
    pub fn parts_in(&self, t: &FieldTower, lvl: usize) -> [Form; 3] {
        assert_eq!(t.q(), self.q(), "tower base differs from the surface field");
        self.parts.clone().map(|p| p.map_coeffs(|c| t.embed(c, 0, lvl)))
    }

    /// The form as a quartic in `(s, t, x, y, z)`.
    pub fn full_form(&self) -> Form {
        full_form(&self.field, &self.parts)
    }
}

pub fn full_form(f: &Gf, parts: &[Form; 3]) -> Form {
    let mut out = Form::zero(5, 4);
    for (k, part) in parts.iter().enumerate() {
        for (m, &c) in crate::ff::form::monomials(3, 2).iter().zip(&part.coeffs) {
            let e = [(2 - k) as u8, k as u8, m[0], m[1], m[2]];
            let i = monomial_index(5, &e);
            out.coeffs[i] = f.add(out.coeffs[i], c);
        }
    }
    out
}

/// `M(s, t)` with `F = x^T M x`: entries are binary quadratic forms.
pub fn matrix(f: &Gf, parts: &[Form; 3]) -> [[BinaryForm; 3]; 3] {
    let half = f.inv(f.from_int(2));
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            parts
                .iter()
                .map(|p| {
                    let c = p.coeffs[quad_index(i, j)];
                    if i == j {
                        c
                    } else {
                        f.mul(c, half)
                    }
                })
                .collect()
        })
    })
}

/// `M(s0, t0)` as a 3 x 3 matrix.
pub fn matrix_at(f: &Gf, m: &[[BinaryForm; 3]; 3], s: Fe, t: Fe) -> crate::projgeom::Matrix {
    let rows: Vec<Vec<Fe>> = m.iter().map(|r| r.iter().map(|e| bin_eval(f, e, s, t)).collect()).collect();
    crate::projgeom::Matrix::from_rows(&rows)
}

pub fn bin_eval(f: &Gf, a: &[Fe], s: Fe, t: Fe) -> Fe {
    let d = a.len() - 1;
    let mut acc = Fe::ZERO;
    for (k, &c) in a.iter().enumerate() {
        if !c.is_zero() {
            acc = f.add(acc, f.mul(c, f.mul(f.pow(s, (d - k) as u64), f.pow(t, k as u64))));
        }
    }
    acc
}

pub fn bin_mul(f: &Gf, a: &[Fe], b: &[Fe]) -> BinaryForm {
    let mut out = vec![Fe::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

fn bin_add(f: &Gf, a: &[Fe], b: &[Fe]) -> BinaryForm {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

fn bin_neg(f: &Gf, a: &[Fe]) -> BinaryForm {
    a.iter().map(|&x| f.neg(x)).collect()
}

/// `det M(s, t)`, a binary sextic.
pub fn discriminant_of(f: &Gf, parts: &[Form; 3]) -> BinaryForm {
    let m = matrix(f, parts);
    let minor = |a: usize, b: usize| {
        let (r1, r2) = (1, 2);
        bin_add(f, &bin_mul(f, &m[r1][a], &m[r2][b]), &bin_neg(f, &bin_mul(f, &m[r1][b], &m[r2][a])))
    };
    let t0 = bin_mul(f, &m[0][0], &minor(1, 2));
    let t1 = bin_mul(f, &m[0][1], &minor(0, 2));
    let t2 = bin_mul(f, &m[0][2], &minor(0, 1));
    bin_add(f, &bin_add(f, &t0, &bin_neg(f, &t1)), &t2)
}

impl ConicBundleSurface {
    pub fn matrix(&self) -> [[BinaryForm; 3]; 3] {
        matrix(&self.field, &self.parts)
    }

    /// `det M(s, t)`; entry `k` multiplies `s^(6-k) t^k`.
    pub fn discriminant(&self) -> BinaryForm {
        discriminant_of(&self.field, &self.parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_reproduces_the_form() {
        let x = ConicBundleSurface::reference_f3();
        let f = x.field();
        let m = x.matrix();
        let full = x.full_form();
        for (s, t) in [(0, 1), (1, 0), (1, 1), (1, 2)] {
            let (s, t) = (Fe(s), Fe(t));
            let a = matrix_at(f, &m, s, t);
            for v in crate::projgeom::enumerate_proj(2, f) {
                let av = a.mul_vec(f, &v);
                let q = (0..3).fold(Fe::ZERO, |acc, i| f.add(acc, f.mul(v[i], av[i])));
                assert_eq!(q, full.eval(f, &[s, t, v[0], v[1], v[2]]));
            }
        }
    }

    #[test]
    fn diagonal_discriminant() {
        // M = diag(s^2, t^2, s^2 + t^2)
        #[rustfmt::skip]
        let c = [
            1, 0, 0, 0, 0, 1,
            0, 0, 0, 0, 0, 0,
            0, 0, 0, 1, 0, 1,
        ];
        let x = ConicBundleSurface::from_u64(5, &c).unwrap();
        // s^2 t^2 (s^2 + t^2) = s^4 t^2 + s^2 t^4
        assert_eq!(x.discriminant(), [0, 0, 1, 0, 1, 0, 0].map(Fe).to_vec());
    }

    #[test]
    fn rejects_even_characteristic() {
        assert!(matches!(ConicBundleSurface::from_u64(4, &[1; 18]), Err(Error::Characteristic2)));
        assert!(ConicBundleSurface::from_u64(3, &[0; 18]).is_err());
    }
}

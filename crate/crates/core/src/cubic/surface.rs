//! Cubic forms in `x0..x3` over `GF(q)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{Fe, FieldTower, Form, Gf};
use crate::projgeom::Matrix;

/// Cubic surface `f = 0` in `P^3`, stored by its 20 coefficients in the
/// order `x0^3, x0^2x1, x0^2x2, x0^2x3, x0x1^2, x0x1x2, x0x1x3, x0x2^2,
/// x0x2x3, x0x3^2, x1^3, x1^2x2, x1^2x3, x1x2^2, x1x2x3, x1x3^2, x2^3,
/// x2^2x3, x2x3^2, x3^3`.
#[derive(Clone, Debug)]
pub struct CubicSurface {
    field: Arc<Gf>,
    form: Form,
}

impl PartialEq for CubicSurface {
    fn eq(&self, o: &Self) -> bool {
        self.field.descriptor() == o.field.descriptor() && self.form == o.form
    }
}

impl Eq for CubicSurface {}

/// Plain-data form of a surface, as written into certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceData {
    pub q: u64,
    /// Field elements by their base-`p` digit encoding.
    pub coeffs: Vec<u64>,
}

impl CubicSurface {
    /// `field` must be the canonical `GF(q)` (the base level of every tower
    /// built over `q`).
    pub fn new(field: Arc<Gf>, coeffs: Vec<Fe>) -> Result<CubicSurface> {
        if coeffs.len() != 20 {
            return Err(Error::InvalidInput(format!("a cubic form has 20 coefficients, got {}", coeffs.len())));
        }
        let canon = Gf::canonical(field.characteristic(), field.degree())?;
        if canon.modulus() != field.modulus() {
            return Err(Error::InvalidField("surfaces must be defined over the canonical model of GF(q)".into()));
        }
        for c in &coeffs {
            if c.0 >= field.size() {
                return Err(Error::InvalidElement { value: c.0, size: field.size() });
            }
        }
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidInput("the zero form does not define a surface".into()));
        }
        Ok(CubicSurface { form: Form::new(4, 3, coeffs), field })
    }

    /// Surface over the canonical `GF(q)` from digit-encoded coefficients.
    pub fn from_u64(q: u64, coeffs: &[u64]) -> Result<CubicSurface> {
        let (p, k) = crate::ff::prime::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let field = Arc::new(Gf::canonical(p, k)?);
        let c = coeffs.iter().map(|&v| field.from_u64(v)).collect::<Result<Vec<_>>>()?;
        CubicSurface::new(field, c)
    }

    pub fn from_data(d: &SurfaceData) -> Result<CubicSurface> {
        CubicSurface::from_u64(d.q, &d.coeffs)
    }

    pub fn data(&self) -> SurfaceData {
        SurfaceData { q: self.q(), coeffs: self.form.coeffs.iter().map(|c| c.0).collect() }
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<Gf> {
        self.field.clone()
    }

    pub fn q(&self) -> u64 {
        self.field.size()
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.form.coeffs
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    /// Scales so that the first nonzero coefficient is 1.
    pub fn normalize(&self) -> CubicSurface {
        let f = &self.field;
        let lead = *self.form.coeffs.iter().find(|c| !c.is_zero()).expect("nonzero form");
        CubicSurface { field: self.field.clone(), form: self.form.scale(f, f.inv(lead)) }
    }

    pub fn eval(&self, x: &[Fe]) -> Fe {
        self.form.eval(&self.field, x)
    }

    pub fn contains(&self, x: &[Fe]) -> bool {
        self.eval(x).is_zero()
    }

    pub fn partials(&self) -> Vec<Form> {
        self.form.gradient(&self.field)
    }

    /// The form with coefficients moved into level `lvl` of a tower over `q`.
    pub fn form_in(&self, t: &FieldTower, lvl: usize) -> Form {
        assert_eq!(t.q(), self.q(), "tower base differs from the surface field");
        self.form.map_coeffs(|c| t.embed(c, 0, lvl))
    }

    /// `f(M y)`: the surface in the coordinates `y` with `x = M y`.
    pub fn transform(&self, m: &Matrix) -> Result<CubicSurface> {
        if m.rows() != 4 || m.cols() != 4 || m.det(&self.field).is_zero() {
            return Err(Error::InvalidInput("coordinate change must be an invertible 4x4 matrix".into()));
        }
        let sub: Vec<Vec<Fe>> = (0..4).map(|i| m.row(i).to_vec()).collect();
        CubicSurface::new(self.field.clone(), self.form.substitute(&self.field, &sub).coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_normalization() {
        assert!(CubicSurface::from_u64(2, &[0; 20]).is_err());
        assert!(CubicSurface::from_u64(6, &[1; 20]).is_err());
        assert!(CubicSurface::from_u64(3, &[1; 19]).is_err());
        assert!(CubicSurface::from_u64(3, &[3; 20]).is_err());
        let mut c = [0u64; 20];
        c[5] = 2;
        c[19] = 1;
        let x = CubicSurface::from_u64(3, &c).unwrap().normalize();
        assert_eq!(x.coeffs()[5], Fe(1));
        assert_eq!(x.coeffs()[19], Fe(2));
        // x0 x1 x2 + 2 x3^3
        assert!(x.contains(&[Fe(1), Fe(1), Fe(1), Fe(1)]));
        assert_eq!(x.eval(&[Fe(1), Fe(1), Fe(1), Fe(2)]), Fe(2));
    }

    #[test]
    fn coordinate_change_moves_points() {
        let x = CubicSurface::from_u64(5, &(0..20).map(|i| (i * 7 + 3) % 5).collect::<Vec<_>>()).unwrap();
        let f = x.field();
        let m = Matrix::from_rows(&[
            vec![Fe(1), Fe(2), Fe(0), Fe(0)],
            vec![Fe(0), Fe(1), Fe(3), Fe(0)],
            vec![Fe(0), Fe(0), Fe(1), Fe(4)],
            vec![Fe(1), Fe(0), Fe(0), Fe(1)],
        ]);
        let y = x.transform(&m).unwrap();
        for v in crate::projgeom::enumerate_proj(3, f).take(40) {
            assert_eq!(y.eval(&v), x.eval(&m.mul_vec(f, &v)));
        }
    }
}

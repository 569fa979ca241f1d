//! Split cubic surfaces as blow-ups of `P^2` in six rational points.

use std::sync::Arc;

use super::surface::CubicSurface;
use crate::error::{Error, Result};
use crate::ff::form::monomials;
use crate::ff::{Fe, Form, Gf};
use crate::projgeom::{Matrix, ProjPoint};

/// Why six points fail to be in general position, if they do.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PositionDefect {
    Coincident(usize, usize),
    Collinear(usize, usize, usize),
    OnConic,
}

fn det3(f: &Gf, a: &[Fe], b: &[Fe], c: &[Fe]) -> Fe {
    Matrix::from_rows(&[a.to_vec(), b.to_vec(), c.to_vec()]).det(f)
}

fn conic_row(f: &Gf, p: &[Fe]) -> Vec<Fe> {
    let q = Form::new(3, 2, vec![Fe::ZERO; 6]);
    (0..6)
        .map(|i| {
            let mut m = q.clone();
            m.coeffs[i] = Fe::ONE;
            m.eval(f, p)
        })
        .collect()
}

/// `None` when the points are pairwise distinct, no three are collinear and
/// the six do not lie on a conic.
pub fn position_defect(f: &Gf, pts: &[Vec<Fe>]) -> Option<PositionDefect> {
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            if Matrix::from_rows(&[pts[i].clone(), pts[j].clone()]).rank(f) < 2 {
                return Some(PositionDefect::Coincident(i, j));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if det3(f, &pts[i], &pts[j], &pts[k]).is_zero() {
                    return Some(PositionDefect::Collinear(i, j, k));
                }
            }
        }
    }
    if n == 6 {
        let m = Matrix::from_rows(&pts.iter().map(|p| conic_row(f, p)).collect::<Vec<_>>());
        if m.det(f).is_zero() {
            return Some(PositionDefect::OnConic);
        }
    }
    None
}

pub fn in_general_position(f: &Gf, pts: &[Vec<Fe>]) -> bool {
    position_defect(f, pts).is_none()
}

/// Plane forms of degree `deg` through `pts`, as a kernel basis.
pub fn forms_through(f: &Gf, deg: usize, pts: &[Vec<Fe>]) -> Vec<Form> {
    let mons = monomials(3, deg);
    let rows: Vec<Vec<Fe>> = pts
        .iter()
        .map(|p| {
            mons.iter()
                .map(|m| m.iter().zip(p).fold(Fe::ONE, |acc, (&e, &c)| f.mul(acc, f.pow(c, e as u64))))
                .collect()
        })
        .collect();
    Matrix::from_rows(&rows).kernel(f).into_iter().map(|c| Form::new(3, deg, c)).collect()
}

/// The cubic relations among four plane forms of equal degree: the kernel of
/// `c -> sum_m c_m phi^m` over the 20 cubic monomials `m` in four variables.
pub fn cubic_relations(f: &Gf, phi: &[Form]) -> Vec<Vec<Fe>> {
    assert_eq!(phi.len(), 4);
    let mut rows = Vec::with_capacity(20);
    for m in monomials(4, 3).iter() {
        let mut p = Form::new(3, 0, vec![Fe::ONE]);
        for (i, &e) in m.iter().enumerate() {
            for _ in 0..e {
                p = p.mul(f, &phi[i]);
            }
        }
        rows.push(p.coeffs);
    }
    Matrix::from_rows(&rows).transpose().kernel(f)
}

/// The image of the anticanonical map of `P^2` blown up in six rational
/// points, which is a cubic surface whose 27 lines are all rational.
pub fn split_cubic_from_points(field: Arc<Gf>, pts: &[ProjPoint]) -> Result<CubicSurface> {
    if pts.len() != 6 || pts.iter().any(|p| p.dim() != 2) {
        return Err(Error::InvalidInput("six points of the projective plane are required".into()));
    }
    let f = &*field;
    let v: Vec<Vec<Fe>> = pts.iter().map(|p| p.coords.clone()).collect();
    if let Some(d) = position_defect(f, &v) {
        return Err(Error::Degenerate(format!("points not in general position: {d:?}")));
    }
    let phi = forms_through(f, 3, &v);
    if phi.len() != 4 {
        return Err(Error::Inconsistent(format!("{} cubics through six general points", phi.len())));
    }
    let rel = cubic_relations(f, &phi);
    if rel.len() != 1 {
        return Err(Error::Inconsistent(format!("{} cubic relations among the anticanonical forms", rel.len())));
    }
    Ok(CubicSurface::new(field, rel.into_iter().next().unwrap())?.normalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::{classify, is_smooth};

    fn pt(f: &Gf, v: [u64; 3]) -> ProjPoint {
        ProjPoint::new(f, &v.map(Fe)).unwrap()
    }

    #[test]
    fn general_position_detects_defects() {
        let f = Gf::prime(7).unwrap();
        let v = |a: [u64; 3]| a.map(Fe).to_vec();
        let good = [v([1, 0, 0]), v([0, 1, 0]), v([0, 0, 1]), v([1, 1, 1]), v([1, 2, 3]), v([1, 3, 4])];
        assert_eq!(position_defect(&f, &good), None);
        let mut bad = good.clone();
        bad[5] = v([2, 2, 2]);
        assert_eq!(position_defect(&f, &bad), Some(PositionDefect::Coincident(3, 5)));
        bad[5] = v([1, 1, 0]);
        assert!(matches!(position_defect(&f, &bad), Some(PositionDefect::Collinear(..))));
        // the conic xy + yz + zx = 0 through the three coordinate points
        let on: Vec<_> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 3], [1, 2, 4], [1, 3, 1]].map(v).to_vec();
        for p in &on[3..] {
            let (x, y, z) = (p[0], p[1], p[2]);
            assert!(f.add(f.add(f.mul(x, y), f.mul(y, z)), f.mul(z, x)).is_zero());
        }
        assert_eq!(position_defect(&f, &on), Some(PositionDefect::OnConic));
    }

    #[test]
    fn six_points_over_gf7_give_the_split_class() {
        let f = Arc::new(Gf::prime(7).unwrap());
        let pts = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [1, 3, 4]].map(|v| pt(&f, v));
        let x = split_cubic_from_points(f.clone(), &pts).unwrap();
        assert!(is_smooth(&x).unwrap().smooth);
        let cl = classify(&x).unwrap();
        assert_eq!(cl.class.cycle_type, vec![1; 27]);
        assert_eq!(cl.class.alias.as_deref(), Some("C1"));
        assert!(cl.lines.degrees.iter().all(|&d| d == 1));
        let inc = cl.lines.incidence();
        assert!(inc.iter().all(|r| r.iter().filter(|&&b| b).count() == 10));
        assert_eq!(cl.counts[0].count, 49 + 7 * 7 + 1);
    }

    #[test]
    fn rejects_collinear_points() {
        let f = Arc::new(Gf::prime(5).unwrap());
        let pts = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 2, 3], [1, 3, 2]].map(|v| pt(&f, v));
        assert!(matches!(split_cubic_from_points(f, &pts), Err(Error::Degenerate(_))));
    }
}

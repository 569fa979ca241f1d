//! The pencil of cubics through the nine lines, and the explicit gluing
//! formula for cubics through three plane cubics meeting compatibly.

use super::config::{embed_vec, NineLineConfig, BASE, CUBIC, NONIC};
use crate::error::{Error, Result};
use crate::ff::form::{monomial_index, monomials};
use crate::ff::{Fe, FieldTower, Form, Gf};
use crate::projgeom::Matrix;

#[derive(Clone, Debug)]
pub struct CubicPencil {
    /// Basis over `GF(q)` of the cubics vanishing on every `E_i`.
    pub basis: Vec<Vec<Fe>>,
    /// `Pi_0 Pi_1 Pi_2`, a cubic over `GF(q)`.
    pub plane_union: Vec<Fe>,
}

/// `Tr_{GF(q^9)/GF(q)}`.
fn trace_down(t: &FieldTower, y: Fe) -> Fe {
    let f = t.level(NONIC);
    let s = (0..t.rel_degree(NONIC)).fold(Fe::ZERO, |acc, i| f.add(acc, t.frobenius(y, NONIC, i)));
    t.descend(s, NONIC, BASE).expect("traces are rational")
}

/// The product of the three plane forms, descended to `GF(q)`.
pub fn plane_union_form(c: &NineLineConfig) -> Result<Vec<Fe>> {
    let f3 = c.tower.level(CUBIC);
    let prod = c.planes.iter().skip(1).fold(Form::linear(&c.planes[0]), |acc, p| acc.mul(f3, &Form::linear(p)));
    prod.coeffs
        .iter()
        .map(|&x| c.tower.descend(x, CUBIC, BASE).ok_or_else(|| Error::Inconsistent("plane union is not rational".into())))
        .collect()
}

/// Cubics over `GF(q)` through all nine lines. A rational cubic contains
/// every `E_i` once it contains `E_0`; the four coefficients of its
/// restriction to `E_0` lie in `GF(q^9)`, and pairing them with a basis
/// `w^k` under the trace form gives 36 linear conditions over `GF(q)`.
pub fn cubics_through(c: &NineLineConfig) -> Result<CubicPencil> {
    let t = &c.tower;
    let f9 = t.level(NONIC);
    let w = f9.gen();
    let wk: Vec<Fe> = (0..9).map(|k| f9.pow(w, k)).collect();
    let (a, b) = (&c.points[0], &c.points[1]);
    let mons = monomials(4, 3);
    let restr: Vec<Vec<Fe>> = mons.iter().map(|m| Form::monomial(4, m).restrict_line(f9, a, b)).collect();
    let mut rows = Vec::with_capacity(36);
    for s in 0..4 {
        for &u in &wk {
            rows.push(restr.iter().map(|r| trace_down(t, f9.mul(u, r[s]))).collect::<Vec<_>>());
        }
    }
    let f = t.level(BASE);
    let basis = Matrix::from_rows(&rows).kernel(f);
    if basis.len() < 2 {
        return Err(Error::Degenerate(format!("only {} cubics through the nine lines", basis.len())));
    }
    let plane_union = plane_union_form(c)?;
    let mut span = basis.clone();
    span.push(plane_union.clone());
    if Matrix::from_rows(&span).rank(f) != basis.len() {
        return Err(Error::Inconsistent("the plane union is not in the computed system".into()));
    }
    Ok(CubicPencil { basis, plane_union })
}

/// Whether the cubic `g` (over `GF(q)`) vanishes identically on every `E_i`.
pub fn contains_nine_lines(c: &NineLineConfig, g: &[Fe]) -> bool {
    let t = &c.tower;
    let f9 = t.level(NONIC);
    let g9 = Form::new(4, 3, embed_vec(t, g, BASE, NONIC));
    c.e_lines.iter().all(|e| {
        let [a, b] = e.points(f9);
        g9.restrict_line(f9, &a, &b).iter().all(|x| x.is_zero())
    })
}

/// Substitution sending variable `k` of a form in `vars.len()` variables
/// to `x_(vars[k])` among `x_0..x_3`.
fn lift_sub(vars: [usize; 3]) -> Vec<Vec<Fe>> {
    vars.iter()
        .map(|&v| {
            let mut r = vec![Fe::ZERO; 4];
            r[v] = Fe::ONE;
            r
        })
        .collect()
}

/// `g` with `x_i = 0`.
fn zero_var(f: &Gf, g: &Form, i: usize) -> Form {
    let sub: Vec<Vec<Fe>> = (0..4)
        .map(|k| {
            let mut r = vec![Fe::ZERO; 4];
            if k != i {
                r[k] = Fe::ONE;
            }
            r
        })
        .collect();
    g.substitute(f, &sub)
}

/// The restriction of a quaternary form to `x_i = 0`, in the remaining
/// variables in order.
pub fn restrict_to_plane(f: &Gf, g: &Form, i: usize) -> Form {
    let sub: Vec<Vec<Fe>> = (0..4)
        .map(|k| {
            let mut r = vec![Fe::ZERO; 3];
            if k != i {
                r[if k < i { k } else { k - 1 }] = Fe::ONE;
            }
            r
        })
        .collect();
    g.substitute(f, &sub)
}

/// `P = P1 + P2 + P3 - P1(x0, 0, x3) - P2(x0, x1, 0) - P3(x0, 0, x2) + x0^3`
/// for plane cubics `P1(x0, x2, x3)`, `P2(x0, x1, x3)`, `P3(x0, x1, x2)`
/// with unit `x0^3` coefficient that agree on the coordinate lines. The
/// result restricts to `P_i` on `x_i = 0`.
pub fn combine_cubics(f: &Gf, p: [&Form; 3]) -> Result<Form> {
    for (i, pi) in p.iter().enumerate() {
        if (pi.nvars, pi.deg) != (3, 3) || pi.coeffs[0] != Fe::ONE {
            return Err(Error::InvalidInput(format!("P{} must be a plane cubic with unit x0^3 coefficient", i + 1)));
        }
    }
    let lifted = [
        p[0].substitute(f, &lift_sub([0, 2, 3])),
        p[1].substitute(f, &lift_sub([0, 1, 3])),
        p[2].substitute(f, &lift_sub([0, 1, 2])),
    ];
    // P_i and P_j agree on x_i = x_j = 0
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if zero_var(f, &lifted[i], j + 1) != zero_var(f, &lifted[j], i + 1) {
            return Err(Error::Degenerate(format!("P{} and P{} differ on their common line", i + 1, j + 1)));
        }
    }
    let mut out = lifted[0].add(f, &lifted[1]).add(f, &lifted[2]);
    out = out.sub(f, &zero_var(f, &lifted[0], 2));
    out = out.sub(f, &zero_var(f, &lifted[1], 3));
    out = out.sub(f, &zero_var(f, &lifted[2], 1));
    out = out.add(f, &Form::monomial(4, &[3, 0, 0, 0]));
    for (i, pi) in p.iter().enumerate() {
        if restrict_to_plane(f, &out, i + 1) != **pi {
            return Err(Error::Inconsistent(format!("P does not restrict to P{}", i + 1)));
        }
    }
    Ok(out)
}

/// Checks a pencil member `g` against the gluing formula. Over `GF(q^3)`,
/// take coordinates `y = A x` in which `Pi_i` is `y_(i+1) = 0` and `Q` is
/// `(1:0:0:0)`; then `g / g(Q)` and the glued cubic of its three plane
/// sections differ by a multiple of `y1 y2 y3`, which is returned.
pub fn gluing_cross_check(c: &NineLineConfig, g: &[Fe]) -> Result<Fe> {
    let t = &c.tower;
    let f3 = t.level(CUBIC);
    let q3 = embed_vec(t, &c.q_point, BASE, CUBIC);
    let k = q3.iter().position(|x| !x.is_zero()).unwrap();
    let mut l0 = vec![Fe::ZERO; 4];
    l0[k] = Fe::ONE;
    let a = Matrix::from_rows(&[l0, c.planes[0].clone(), c.planes[1].clone(), c.planes[2].clone()]);
    let ainv = a.inverse(f3).ok_or_else(|| Error::Inconsistent("adapted coordinates are singular".into()))?;
    let sub: Vec<Vec<Fe>> = (0..4).map(|i| ainv.row(i).to_vec()).collect();
    let g3 = Form::new(4, 3, embed_vec(t, g, BASE, CUBIC)).substitute(f3, &sub);
    let g0 = g3.coeffs[0];
    if g0.is_zero() {
        return Err(Error::Degenerate("the member passes through Q".into()));
    }
    let gn = g3.scale(f3, f3.inv(g0));
    let parts: Vec<Form> = (1..4).map(|i| restrict_to_plane(f3, &gn, i)).collect();
    let p = combine_cubics(f3, [&parts[0], &parts[1], &parts[2]])?;
    let diff = gn.sub(f3, &p);
    let xyz = monomial_index(4, &[0, 1, 1, 1]);
    if diff.coeffs.iter().enumerate().any(|(i, x)| i != xyz && !x.is_zero()) {
        return Err(Error::Inconsistent("member is not in the span of P and y1 y2 y3".into()));
    }
    Ok(diff.coeffs[xyz])
}

#[cfg(test)]
mod tests {
    use super::super::config::build_config;
    use super::*;
    use crate::cubic::{is_smooth, CubicSurface};
    use rand::{Rng, SeedableRng};

    #[test]
    fn pure_cube_is_fixed() {
        let f = Gf::prime(5).unwrap();
        let c = Form::monomial(3, &[3, 0, 0]);
        assert_eq!(combine_cubics(&f, [&c, &c, &c]).unwrap(), Form::monomial(4, &[3, 0, 0, 0]));
    }

    #[test]
    fn random_compatible_triples_glue() {
        let f = Gf::prime(5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            // restrictions of a random quaternary cubic with unit x0^3 term
            let mut g = Form::new(4, 3, (0..20).map(|_| Fe(rng.gen_range(0..5))).collect());
            g.coeffs[0] = Fe::ONE;
            let parts: Vec<Form> = (1..4).map(|i| restrict_to_plane(&f, &g, i)).collect();
            let p = combine_cubics(&f, [&parts[0], &parts[1], &parts[2]]).unwrap();
            for i in 1..4 {
                assert_eq!(restrict_to_plane(&f, &p, i), parts[i - 1]);
            }
        }
        let mut bad = Form::monomial(3, &[3, 0, 0]);
        bad.coeffs[3] = Fe(1);
        let c = Form::monomial(3, &[3, 0, 0]);
        assert!(matches!(combine_cubics(&f, [&bad, &c, &c]), Err(Error::Degenerate(_))));
    }

    #[test]
    fn pencils_over_small_fields() {
        for q in [2u64, 3, 4] {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
            let c = build_config(q, 0, &mut rng).unwrap();
            let pencil = cubics_through(&c).unwrap();
            assert_eq!(pencil.basis.len(), 2);
            assert!(contains_nine_lines(&c, &pencil.plane_union));
            let f = c.tower.level(BASE);
            for b in &pencil.basis {
                assert!(contains_nine_lines(&c, b));
                if Matrix::from_rows(&[b.clone(), pencil.plane_union.clone()]).rank(f) == 2 {
                    gluing_cross_check(&c, b).unwrap();
                } else {
                    assert!(gluing_cross_check(&c, b).is_err());
                }
            }
            // the plane union is the only singular member
            let mut singular = Vec::new();
            for m in crate::projgeom::enumerate_proj(1, f) {
                let g: Vec<Fe> = (0..20).map(|i| f.add(f.mul(m[0], pencil.basis[0][i]), f.mul(m[1], pencil.basis[1][i]))).collect();
                let x = CubicSurface::from_u64(q, &g.iter().map(|c| c.0).collect::<Vec<_>>()).unwrap();
                if !is_smooth(&x).unwrap().smooth {
                    singular.push(g);
                }
            }
            assert_eq!(singular.len(), 1);
            let rank = Matrix::from_rows(&[singular[0].clone(), pencil.plane_union.clone()]).rank(f);
            assert_eq!(rank, 1);
        }
    }
}

//! Six points of `P^2(GF(q))` with no three collinear and not on a conic.
//!
//! Any four points with no three collinear are projectively equivalent to
//! the standard frame, so the search fixes the frame and backtracks over the
//! last two points. Exhausting that space proves no such six-arc exists.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cubic::classify::{certify, default_weil_range};
use crate::cubic::split::split_cubic_from_points;
use crate::cubic::SurfaceCertificate;
use crate::error::Result;
use crate::ff::{Fe, Gf};
use crate::projgeom::{enumerate_proj, Matrix, ProjPoint};

pub const ARC_SCHEMA: &str = "dpff.arc-search/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcSearch {
    pub schema: String,
    pub q: u64,
    /// Six points, the frame first, or `None` after exhausting the search.
    pub witness: Option<Vec<Vec<u64>>>,
    /// Partial arcs extended during the search.
    pub nodes: u64,
    /// Candidate six-point sets reaching the conic test.
    pub conic_tests: u64,
}

fn collinear(f: &Gf, a: &[Fe], b: &[Fe], c: &[Fe]) -> bool {
    Matrix::from_rows(&[a.to_vec(), b.to_vec(), c.to_vec()]).rank(f) < 3
}

fn on_conic(f: &Gf, pts: &[Vec<Fe>]) -> bool {
    let rows: Vec<Vec<Fe>> = pts
        .iter()
        .map(|p| {
            let [x, y, z] = [p[0], p[1], p[2]];
            vec![f.sqr(x), f.mul(x, y), f.mul(x, z), f.sqr(y), f.mul(y, z), f.sqr(z)]
        })
        .collect();
    Matrix::from_rows(&rows).rank(f) < 6
}

fn frame() -> Vec<Vec<Fe>> {
    let (o, i) = (Fe::ZERO, Fe::ONE);
    vec![vec![i, o, o], vec![o, i, o], vec![o, o, i], vec![i, i, i]]
}

struct Search<'a> {
    f: &'a Gf,
    cands: Vec<Vec<Fe>>,
    nodes: u64,
    conic_tests: u64,
}

impl Search<'_> {
    fn extend(&mut self, arc: &mut Vec<Vec<Fe>>, from: usize) -> bool {
        self.nodes += 1;
        if arc.len() == 6 {
            self.conic_tests += 1;
            return !on_conic(self.f, arc);
        }
        for k in from..self.cands.len() {
            let p = &self.cands[k];
            let ok = (0..arc.len()).all(|i| (i + 1..arc.len()).all(|j| !collinear(self.f, &arc[i], &arc[j], p)));
            if !ok {
                continue;
            }
            arc.push(p.clone());
            if self.extend(arc, k + 1) {
                return true;
            }
            arc.pop();
        }
        false
    }
}

pub fn arc_search(f: &Gf) -> ArcSearch {
    let fr = frame();
    let cands: Vec<Vec<Fe>> = enumerate_proj(2, f).filter(|p| !fr.contains(p)).collect();
    let mut s = Search { f, cands, nodes: 0, conic_tests: 0 };
    let mut arc = fr;
    let found = s.extend(&mut arc, 0);
    ArcSearch {
        schema: ARC_SCHEMA.into(),
        q: f.size(),
        witness: found.then(|| arc.iter().map(|p| p.iter().map(|c| c.0).collect()).collect()),
        nodes: s.nodes,
        conic_tests: s.conic_tests,
    }
}

/// The cubic surface obtained by blowing up a six-arc witness, certified.
pub fn surface_from_arc(f: Arc<Gf>, witness: &[Vec<u64>]) -> Result<SurfaceCertificate> {
    let pts: Vec<ProjPoint> = witness
        .iter()
        .map(|p| ProjPoint::new(&f, &p.iter().map(|&c| Fe(c)).collect::<Vec<_>>()))
        .collect::<Result<_>>()?;
    let x = split_cubic_from_points(f.clone(), &pts)?;
    Ok(certify(&x, default_weil_range(f.size()))?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::in_general_position;

    #[test]
    fn six_arcs_exist_exactly_from_q_4() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let (p, k) = crate::ff::prime::prime_power(q).unwrap();
            let f = Arc::new(Gf::canonical(p, k).unwrap());
            let r = arc_search(&f);
            assert_eq!(r.witness.is_some(), ![2, 3, 5].contains(&q), "q = {q}");
            if let Some(w) = &r.witness {
                let pts: Vec<Vec<Fe>> = w.iter().map(|p| p.iter().map(|&c| Fe(c)).collect()).collect();
                assert!(in_general_position(&f, &pts));
                let cert = surface_from_arc(f.clone(), w).unwrap();
                assert_eq!(cert.alias.as_deref(), Some("C1"));
            }
        }
    }
}

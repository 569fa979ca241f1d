//! Frobenius conjugacy class of a smooth cubic surface.
//!
//! Six pairwise skew lines `E_1..E_6` blow down to `P^2`; every line then has
//! a class `a h - sum b_i e_i` with `b_i = L·E_i` and `a = (1 + sum b_i) / 3`.
//! The action of Frobenius on lines becomes an element of `W(E6)` acting on
//! the exceptional classes of the lattice, whose class is looked up in the
//! table. Point counts give an independent check through
//! `#X(GF(q^n)) = q^(2n) + q^n t_n + 1`.

use serde::{Deserialize, Serialize};

use super::count::{count_points, trace_from_count};
use super::lines::{find_lines_seeded, LineSet};
use super::surface::CubicSurface;
use crate::error::{Error, Result};
use super::lines::LineRecord;
use super::smooth::{is_smooth, SmoothnessEvidence};
use super::surface::SurfaceData;
use crate::ff::{Fe, TowerDescriptor};
use crate::projgeom::{enumerate_proj, ProjPoint};
use crate::weyl::{e6, ClassRecord};

#[derive(Clone, Debug)]
pub struct Classification {
    pub class: &'static ClassRecord,
    pub lines: LineSet,
    /// Lattice index (exceptional-class order) of each line.
    pub labels: Vec<usize>,
    /// Frobenius as a permutation of the exceptional classes.
    pub element: Vec<u8>,
    /// Weil check: `(n, #X(GF(q^n)), t_n)`.
    pub counts: Vec<PointCount>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCount {
    pub n: u32,
    pub count: u64,
    pub trace: i64,
}

pub const CERTIFICATE_SCHEMA: &str = "dpff.cubic-certificate/1";

/// Everything needed to re-check a classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceCertificate {
    pub schema: String,
    pub surface: SurfaceData,
    pub smoothness: SmoothnessEvidence,
    pub counts: Vec<PointCount>,
    pub lines: Vec<LineRecord>,
    pub cycle_type: Vec<u8>,
    pub class_id: String,
    pub alias: Option<String>,
    pub class_order: u64,
    pub tower: TowerDescriptor,
    pub retry_seeds: Vec<u64>,
}

impl Classification {
    pub fn certificate(&self, x: &CubicSurface, smoothness: SmoothnessEvidence) -> SurfaceCertificate {
        SurfaceCertificate {
            schema: CERTIFICATE_SCHEMA.into(),
            surface: x.data(),
            smoothness,
            counts: self.counts.clone(),
            lines: self.lines.records(),
            cycle_type: self.class.cycle_type.clone(),
            class_id: self.class.id.clone(),
            alias: self.class.alias.clone(),
            class_order: self.class.order,
            tower: self.lines.tower.descriptor(),
            retry_seeds: self.lines.retry_seeds.clone(),
        }
    }
}

/// Smoothness check, classification and certificate in one step.
pub fn certify(x: &CubicSurface, weil: u32) -> Result<(Classification, SurfaceCertificate)> {
    let ev = is_smooth(x)?;
    if !ev.smooth {
        return Err(Error::Singular);
    }
    let cl = classify_with(x, 0, weil)?;
    let cert = cl.certificate(x, ev);
    Ok((cl, cert))
}

/// Largest `n` (at least 1, at most 12) with `q^(2n) <= 400000`.
pub fn default_weil_range(q: u64) -> u32 {
    let mut n = 1;
    while n < 12 && q.checked_pow(2 * (n + 1)).is_some_and(|v| v <= 400_000) {
        n += 1;
    }
    n
}

/// Six pairwise skew lines, by index.
pub fn find_sixer(meets: &[Vec<bool>]) -> Option<[usize; 6]> {
    fn go(meets: &[Vec<bool>], chosen: &mut Vec<usize>, from: usize) -> bool {
        if chosen.len() == 6 {
            return true;
        }
        for i in from..meets.len() {
            if chosen.iter().all(|&j| !meets[i][j]) {
                chosen.push(i);
                if go(meets, chosen, i + 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    go(meets, &mut chosen, 0).then(|| chosen.try_into().unwrap())
}

/// Lattice labels of the lines relative to the first sixer found.
pub fn label_lines(ls: &LineSet) -> Result<Vec<usize>> {
    let meets = ls.incidence();
    let six = find_sixer(&meets).ok_or_else(|| Error::Inconsistent("no six pairwise skew lines".into()))?;
    let lat = &e6().data.lattice;
    let mut labels = Vec::with_capacity(27);
    for i in 0..27 {
        let mut v = [0i32; 8];
        let mut sum = 1;
        for (k, &e) in six.iter().enumerate() {
            let b = if e == i { -1 } else { meets[i][e] as i32 };
            v[k + 1] = -b;
            sum += b;
        }
        if sum % 3 != 0 {
            return Err(Error::Inconsistent("line incidences do not fit the lattice".into()));
        }
        v[0] = sum / 3;
        labels.push(lat.index_of(&v).ok_or_else(|| Error::Inconsistent(format!("{v:?} is not an exceptional class")))?);
    }
    let mut seen = labels.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != 27 {
        return Err(Error::Inconsistent("line labels are not a bijection".into()));
    }
    let ex = lat.exceptional();
    for i in 0..27 {
        for j in 0..27 {
            if i != j && (lat.dot(&ex[labels[i]], &ex[labels[j]]) == 1) != meets[i][j] {
                return Err(Error::Inconsistent("labels do not reproduce the incidences".into()));
            }
        }
    }
    Ok(labels)
}

/// Frobenius as a permutation of exceptional classes, given the labels.
pub fn frobenius_element(ls: &LineSet, labels: &[usize]) -> Vec<u8> {
    let mut w = vec![0u8; 27];
    for i in 0..27 {
        w[labels[i]] = labels[ls.frobenius[i] as usize] as u8;
    }
    w
}

pub fn classify(x: &CubicSurface) -> Result<Classification> {
    classify_with(x, 0, default_weil_range(x.q()))
}

/// Classifies `X` from its lines and checks `t_1..t_weil` against point counts.
/// Singular surfaces are rejected before any line is sought.
pub fn classify_with(x: &CubicSurface, seed: u64, weil: u32) -> Result<Classification> {
    if crate::cubic::smooth::macaulay_rank(x.field(), x.form()) != crate::cubic::smooth::SEXTIC_MONOMIALS {
        return Err(Error::Singular);
    }
    let lines = find_lines_seeded(x, seed)?;
    let labels = label_lines(&lines)?;
    let element = frobenius_element(&lines, &labels);
    let class = e6().classify_perm(&element)?;
    if class.cycle_type != lines.cycle_type() {
        return Err(Error::Inconsistent("cycle type of the lines differs from the class".into()));
    }
    let mut counts = Vec::new();
    for n in 1..=weil.max(1) {
        let count = count_points(x, n)?;
        let trace = trace_from_count(x.q(), n, count)?;
        let expect = class.trace(n as u64).expect("traces are stored up to the element order");
        if trace != expect {
            return Err(Error::Inconsistent(format!("t_{n} = {trace} from counts, {expect} from class {}", class.id)));
        }
        counts.push(PointCount { n, count, trace });
    }
    Ok(Classification { class, lines, labels, element, counts })
}

/// A rational point of `X` on none of the 27 lines.
pub fn point_off_lines(x: &CubicSurface, ls: &LineSet) -> Result<ProjPoint> {
    let t = &ls.tower;
    let top = ls.level();
    let f = ls.field();
    for v in enumerate_proj(3, x.field()) {
        if !x.contains(&v) {
            continue;
        }
        let w: Vec<Fe> = v.iter().map(|&c| t.embed(c, 0, top)).collect();
        if ls.lines.iter().all(|l| !l.contains(f, &w)) {
            return ProjPoint::new(x.field(), &v);
        }
    }
    Err(Error::Degenerate("every rational point lies on a line".into()))
}

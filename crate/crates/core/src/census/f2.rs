//! Every cubic form over `GF(2)`, classified by its zeta traces.
//!
//! Forms are visited in Gray-code order, so consecutive forms differ in one
//! coefficient. Two pieces of state are updated by XOR at each step:
//!
//! * the values of the form at one representative of every closed point of
//!   `P^3` of degree 1, 2, 4 (over `GF(16)`) and 3 (over `GF(8)`), packed as
//!   nibbles, from which `#X(GF(2^n))` for `n <= 4` is read off;
//! * the rows of the degree-6 Macaulay matrix of `(f, ∂f)` as 84-bit masks.
//!
//! A form whose counts give non-integral or out-of-range traces is singular.
//! Otherwise its Macaulay rank decides smoothness, and `(t_1, .., t_4)`,
//! which separates the classes of `W(E6)`, gives the class.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::form::{monomial_index, monomials};
use crate::ff::{Fe, Gf};
use crate::projgeom::enumerate_proj;
use crate::weyl::e6;

pub const CENSUS_SCHEMA: &str = "dpff.census/1";
/// Forms stored per class for later re-verification.
pub const SAMPLES_PER_CLASS: usize = 6;
const N_FORMS: u32 = 1 << 20;
const ROWS: usize = 160;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTally {
    pub class_id: String,
    pub alias: Option<String>,
    pub order: u64,
    pub traces: Vec<i64>,
    /// Number of coefficient vectors in the class.
    pub count: u64,
    /// Coefficients of the smallest form in the class.
    pub representative: Option<Vec<u64>>,
    /// The smallest coefficient vectors found, bit `j` being the coefficient
    /// of cubic monomial `j`.
    pub samples: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub schema: String,
    pub q: u64,
    pub forms: u64,
    pub smooth: u64,
    pub singular: u64,
    pub strategy: String,
    /// Number of traces `t_1, t_2, ..` used to tell classes apart.
    pub separating_prefix: usize,
    /// One entry per class of `W(E6)`, in table order.
    pub classes: Vec<ClassTally>,
    /// Excluded from comparisons between runs.
    pub wall_ms: u64,
}

impl CensusReport {
    pub fn present(&self) -> impl Iterator<Item = &ClassTally> {
        self.classes.iter().filter(|c| c.count > 0)
    }

    pub fn absent(&self) -> impl Iterator<Item = &ClassTally> {
        self.classes.iter().filter(|c| c.count == 0)
    }
}

/// Coefficients of the form with code `code`.
pub fn decode(code: u32) -> Vec<u64> {
    (0..20).map(|j| ((code >> j) & 1) as u64).collect()
}

/// Precomputed per-monomial updates.
struct Tables {
    /// `lanes[j]`: packed values of monomial `j` on all representatives.
    lanes: Vec<Vec<u64>>,
    /// Word ranges and padding of the degree-1, 2, 4 and 3 segments.
    segments: [(usize, usize, usize); 4],
    /// `toggles[j]`: `(row, bit)` pairs flipped with coefficient `j`.
    toggles: Vec<Vec<(u8, u8)>>,
    by_prefix: HashMap<[i64; 4], usize>,
}

fn frob_orbit_len(f: &Gf, p: &[Fe]) -> usize {
    let norm = |v: &[Fe]| crate::projgeom::normalize(f, v).unwrap();
    let start = norm(p);
    let mut cur = start.clone();
    let mut n = 0;
    loop {
        cur = norm(&cur.iter().map(|&c| f.sqr(c)).collect::<Vec<_>>());
        n += 1;
        if cur == start {
            return n;
        }
    }
}

/// One representative per Frobenius orbit of `P^3(f)`, grouped by orbit size.
fn representatives(f: &Gf) -> HashMap<usize, Vec<Vec<Fe>>> {
    let mut seen = std::collections::HashSet::new();
    let mut out: HashMap<usize, Vec<Vec<Fe>>> = HashMap::new();
    for p in enumerate_proj(3, f) {
        if seen.contains(&p) {
            continue;
        }
        let d = frob_orbit_len(f, &p);
        let mut cur = p.clone();
        for _ in 0..d {
            seen.insert(cur.clone());
            cur = crate::projgeom::normalize(f, &cur.iter().map(|&c| f.sqr(c)).collect::<Vec<_>>()).unwrap();
        }
        out.entry(d).or_default().push(p);
    }
    out
}

fn pack(f: &Gf, pts: &[Vec<Fe>], exps: &[u8]) -> Vec<u64> {
    let mut words = vec![0u64; pts.len().div_ceil(16)];
    for (i, p) in pts.iter().enumerate() {
        let v = exps.iter().zip(p).fold(Fe::ONE, |acc, (&e, &c)| f.mul(acc, f.pow(c, e as u64)));
        words[i / 16] |= v.0 << (4 * (i % 16));
    }
    words
}

fn build_tables() -> Result<Tables> {
    let f16 = Gf::canonical(2, 4)?;
    let f8 = Gf::canonical(2, 3)?;
    let r16 = representatives(&f16);
    let r8 = representatives(&f8);
    let segs: [(&Gf, &Vec<Vec<Fe>>); 4] = [(&f16, &r16[&1]), (&f16, &r16[&2]), (&f16, &r16[&4]), (&f8, &r8[&3])];
    let cubics = monomials(4, 3);
    let mut lanes = vec![Vec::new(); 20];
    let mut segments = [(0, 0, 0); 4];
    for (s, (f, pts)) in segs.iter().enumerate() {
        let start = lanes[0].len();
        for (j, m) in cubics.iter().enumerate() {
            lanes[j].extend(pack(f, pts, m));
        }
        let end = lanes[0].len();
        segments[s] = (start, end, 16 * (end - start) - pts.len());
    }
    let quartics = monomials(4, 4);
    let mut toggles = vec![Vec::new(); 20];
    for (j, m) in cubics.iter().enumerate() {
        for (a, mult) in cubics.iter().enumerate() {
            let e: Vec<u8> = (0..4).map(|k| m[k] + mult[k]).collect();
            toggles[j].push((a as u8, monomial_index(4, &e) as u8));
        }
        for i in 0..4 {
            if m[i] % 2 == 1 {
                for (b, mult) in quartics.iter().enumerate() {
                    let mut e: Vec<u8> = (0..4).map(|k| m[k] + mult[k]).collect();
                    e[i] -= 1;
                    toggles[j].push(((20 + 35 * i + b) as u8, monomial_index(4, &e) as u8));
                }
            }
        }
    }
    let table = e6();
    if table.separating_prefix > 4 {
        return Err(Error::Inconsistent("t_1..t_4 do not separate the classes".into()));
    }
    let by_prefix = table.classes.iter().enumerate().map(|(i, c)| ([c.traces[0], c.traces[1], c.traces[2], c.traces[3]], i)).collect();
    Ok(Tables { lanes, segments, toggles, by_prefix })
}

fn zero_nibbles(words: &[u64]) -> u64 {
    const LOW: u64 = 0x1111_1111_1111_1111;
    words
        .iter()
        .map(|&x| {
            let y = x | (x >> 1);
            let y = y | (y >> 2);
            16 - (y & LOW).count_ones() as u64
        })
        .sum()
}

/// Rank over `GF(2)` of rows given as bit masks.
fn rank_gf2(rows: &mut [u128]) -> usize {
    let mut rank = 0;
    for bit in 0..128 {
        let mask = 1u128 << bit;
        let Some(p) = (rank..rows.len()).find(|&r| rows[r] & mask != 0) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for r in rows.iter_mut().skip(rank + 1) {
            if *r & mask != 0 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

struct Partial {
    smooth: u64,
    singular: u64,
    counts: Vec<u64>,
    samples: Vec<Vec<u32>>,
}

impl Partial {
    fn new(n: usize) -> Partial {
        Partial { smooth: 0, singular: 0, counts: vec![0; n], samples: vec![Vec::new(); n] }
    }

    fn merge(mut self, o: Partial) -> Partial {
        self.smooth += o.smooth;
        self.singular += o.singular;
        for i in 0..self.counts.len() {
            self.counts[i] += o.counts[i];
            self.samples[i].extend(&o.samples[i]);
            self.samples[i].sort_unstable();
            self.samples[i].truncate(SAMPLES_PER_CLASS);
        }
        self
    }
}

/// `t_n` from the point count, if integral and at most 7 in absolute value.
fn trace(qn: i64, count: i64) -> Option<i64> {
    let num = count - qn * qn - 1;
    (num % qn == 0 && (num / qn).abs() <= 7).then(|| num / qn)
}

fn scan(tab: &Tables, lo: u32, hi: u32) -> Partial {
    let n = e6().classes.len();
    let mut part = Partial::new(n);
    let gray = |g: u32| g ^ (g >> 1);
    let width = tab.lanes[0].len();
    let mut vals = vec![0u64; width];
    let mut rows = [0u128; ROWS];
    let code0 = gray(lo);
    for j in 0..20 {
        if code0 >> j & 1 == 1 {
            for (v, l) in vals.iter_mut().zip(&tab.lanes[j]) {
                *v ^= l;
            }
            for &(r, b) in &tab.toggles[j] {
                rows[r as usize] ^= 1u128 << b;
            }
        }
    }
    for g in lo..hi {
        if g > lo {
            let j = (g.trailing_zeros()) as usize;
            for (v, l) in vals.iter_mut().zip(&tab.lanes[j]) {
                *v ^= l;
            }
            for &(r, b) in &tab.toggles[j] {
                rows[r as usize] ^= 1u128 << b;
            }
        }
        let code = gray(g);
        if code == 0 {
            continue;
        }
        let z: Vec<i64> = tab.segments.iter().map(|&(a, b, pad)| (zero_nibbles(&vals[a..b]) - pad as u64) as i64).collect();
        let counts = [z[0], z[0] + 2 * z[1], z[0] + 3 * z[3], z[0] + 2 * z[1] + 4 * z[2]];
        let t: Option<Vec<i64>> = counts.iter().enumerate().map(|(k, &c)| trace(1 << (k + 1), c)).collect();
        let class = t.and_then(|t| tab.by_prefix.get(&[t[0], t[1], t[2], t[3]]).copied());
        let Some(class) = class else {
            part.singular += 1;
            continue;
        };
        let mut m = rows;
        if rank_gf2(&mut m) != 84 {
            part.singular += 1;
            continue;
        }
        part.smooth += 1;
        part.counts[class] += 1;
        let s = &mut part.samples[class];
        if s.len() < SAMPLES_PER_CLASS {
            s.push(code);
        } else if let Some(max) = s.iter_mut().max() {
            if code < *max {
                *max = code;
            }
        }
    }
    for s in &mut part.samples {
        s.sort_unstable();
    }
    part
}

/// Classifies all `2^20 - 1` nonzero cubic forms over `GF(2)`, split into
/// `chunks` ranges processed in parallel on the current rayon pool. The
/// report does not depend on `chunks`.
pub fn census_f2(chunks: u32) -> Result<CensusReport> {
    let start = std::time::Instant::now();
    let tab = build_tables()?;
    let chunks = chunks.clamp(1, 1024);
    let step = N_FORMS.div_ceil(chunks);
    let ranges: Vec<(u32, u32)> = (0..chunks).map(|i| (i * step, ((i + 1) * step).min(N_FORMS))).filter(|r| r.0 < r.1).collect();
    let n = e6().classes.len();
    let total = ranges.par_iter().map(|&(lo, hi)| scan(&tab, lo, hi)).reduce(|| Partial::new(n), Partial::merge);
    let classes = e6()
        .classes
        .iter()
        .zip(total.counts.iter().zip(total.samples))
        .map(|(c, (&count, samples))| ClassTally {
            class_id: c.id.clone(),
            alias: c.alias.clone(),
            order: c.order,
            traces: c.traces[..4].to_vec(),
            count,
            representative: samples.first().map(|&c| decode(c)),
            samples,
        })
        .collect();
    Ok(CensusReport {
        schema: CENSUS_SCHEMA.into(),
        q: 2,
        forms: (N_FORMS - 1) as u64,
        smooth: total.smooth,
        singular: total.singular,
        strategy: "gray-code point lanes over GF(16) and GF(8), degree-6 Macaulay rank".into(),
        separating_prefix: 4,
        classes,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// Full census over `GF(q)`; only `q = 2` is in reach.
pub fn census_cubic(q: u64, chunks: u32) -> Result<CensusReport> {
    if q != 2 {
        return Err(Error::InvalidInput(format!("a full census over GF({q}) is out of reach; use sampling")));
    }
    census_f2(chunks)
}

/// Reclassifies up to `limit` stored samples from their 27 lines and
/// returns how many agreed with the census; a disagreement is an error.
pub fn recheck_samples(report: &CensusReport, limit: usize) -> Result<usize> {
    let mut done = 0;
    let per_class = report.classes.iter().map(|c| c.samples.len()).max().unwrap_or(0);
    for k in 0..per_class {
        for c in &report.classes {
            let Some(&code) = c.samples.get(k) else { continue };
            if done == limit {
                return Ok(done);
            }
            let x = crate::cubic::CubicSurface::from_u64(2, &decode(code))?;
            let got = crate::cubic::classify_with(&x, 0, 4)?;
            if got.class.id != c.class_id {
                return Err(Error::Inconsistent(format!("form {code:#07x}: census says {}, lines say {}", c.class_id, got.class.id)));
            }
            done += 1;
        }
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::{count_points, is_smooth, CubicSurface};

    #[test]
    fn lanes_reproduce_point_counts() {
        let tab = build_tables().unwrap();
        for code in [1u32, 0b1001_0000_0100_0000_0001, 0x5a5a5, 0xfffff, 0x12345] {
            let mut vals = vec![0u64; tab.lanes[0].len()];
            let mut rows = [0u128; ROWS];
            for j in 0..20 {
                if code >> j & 1 == 1 {
                    for (v, l) in vals.iter_mut().zip(&tab.lanes[j]) {
                        *v ^= l;
                    }
                    for &(r, b) in &tab.toggles[j] {
                        rows[r as usize] ^= 1u128 << b;
                    }
                }
            }
            let z: Vec<u64> = tab.segments.iter().map(|&(a, b, pad)| zero_nibbles(&vals[a..b]) - pad as u64).collect();
            let x = CubicSurface::from_u64(2, &decode(code)).unwrap();
            assert_eq!(z[0], count_points(&x, 1).unwrap());
            assert_eq!(z[0] + 2 * z[1], count_points(&x, 2).unwrap());
            assert_eq!(z[0] + 3 * z[3], count_points(&x, 3).unwrap());
            assert_eq!(z[0] + 2 * z[1] + 4 * z[2], count_points(&x, 4).unwrap());
            assert_eq!(rank_gf2(&mut rows) == 84, is_smooth(&x).unwrap().smooth);
        }
    }

    #[test]
    fn chunked_scans_agree() {
        let tab = build_tables().unwrap();
        let whole = scan(&tab, 0, 4096);
        let split = scan(&tab, 0, 1000).merge(scan(&tab, 1000, 4096));
        assert_eq!(whole.counts, split.counts);
        assert_eq!(whole.samples, split.samples);
        assert_eq!(whole.smooth + whole.singular, 4095);
    }
}

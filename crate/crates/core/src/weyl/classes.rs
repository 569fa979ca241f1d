//! Conjugacy-class tables for `W(E6)` and `W(E7)`.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::group::{compose, cycle_type, perm_order, GroupData, Perm, Signature};
use super::lattice::Vector;
use crate::error::{Error, Result};

pub const TRACE_LEN: usize = 12;

pub const E6_ORDER: u64 = 51_840;
pub const E7_ORDER: u64 = 2_903_040;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootSystem {
    E6,
    E7,
}

impl RootSystem {
    pub fn r(self) -> usize {
        match self {
            RootSystem::E6 => 6,
            RootSystem::E7 => 7,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RootSystem::E6 => "E6",
            RootSystem::E7 => "E7",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub id: String,
    pub alias: Option<String>,
    pub order: u64,
    /// Cycle lengths on the exceptional classes, descending.
    pub cycle_type: Vec<u8>,
    pub size: u64,
    /// `det(t I - w)` on the lattice, constant term first.
    pub char_poly: Vec<i64>,
    /// `t_n = tr(w^n)` for `n = 1..=12`.
    pub traces: Vec<i64>,
    /// Permutation of the exceptional classes for one class member.
    pub representative: Perm,
}

impl ClassRecord {
    pub fn label(&self) -> String {
        match &self.alias {
            Some(a) => format!("{} ({a})", self.id),
            None => self.id.clone(),
        }
    }

    /// `t_n` for `n >= 1`, using periodicity in the element order; `None`
    /// when `(n - 1) mod order` falls beyond the stored vector.
    pub fn trace(&self, n: u64) -> Option<i64> {
        self.traces.get(((n - 1) % self.order) as usize).copied()
    }
}

#[derive(Debug)]
pub struct WeylTable {
    pub system: RootSystem,
    pub data: GroupData,
    pub order: u64,
    pub classes: Vec<ClassRecord>,
    by_signature: HashMap<Signature, usize>,
    /// Shortest `m` such that `(t_1, .., t_m)` separates all classes.
    pub separating_prefix: usize,
}

impl WeylTable {
    /// Enumerates the group, buckets elements by signature and proves each
    /// bucket is one conjugacy class by comparing it with the conjugation
    /// orbit of its representative. Fails with a collision report otherwise.
    pub fn build(system: RootSystem) -> Result<WeylTable> {
        let data = GroupData::new(system.r());
        let (order, buckets) = data.signature_buckets();
        let mut classes = Vec::with_capacity(buckets.len());
        let mut collisions = Vec::new();
        for (sig, (count, rep)) in buckets {
            let orbit = data.conjugacy_class_keys(&rep).len() as u64;
            if orbit != count {
                collisions.push(format!("{:?}: {count} elements but class of size {orbit}", sig));
            }
            let traces = data.traces(&rep, TRACE_LEN);
            classes.push(ClassRecord {
                id: String::new(),
                alias: None,
                order: perm_order(&rep),
                cycle_type: sig.cycle_type.clone(),
                size: orbit,
                char_poly: sig.char_poly.clone(),
                traces,
                representative: rep,
            });
        }
        if !collisions.is_empty() {
            return Err(Error::AmbiguousClass(format!("signature collisions in {}: {}", system.name(), collisions.join("; "))));
        }
        classes.sort_by(|a, b| (a.order, &b.cycle_type, &a.char_poly).cmp(&(b.order, &a.cycle_type, &b.char_poly)).then(b.size.cmp(&a.size)));
        let mut per_order: HashMap<u64, usize> = HashMap::new();
        for c in classes.iter_mut() {
            let k = per_order.entry(c.order).or_insert(0);
            c.id = format!("{}-o{}-{}", system.name(), c.order, letter(*k));
            *k += 1;
        }
        let by_signature = classes
            .iter()
            .enumerate()
            .map(|(i, c)| (Signature { cycle_type: c.cycle_type.clone(), char_poly: c.char_poly.clone() }, i))
            .collect();
        let separating_prefix = (1..=TRACE_LEN)
            .find(|&m| {
                let mut seen = std::collections::HashSet::new();
                classes.iter().all(|c| seen.insert(c.traces[..m].to_vec()))
            })
            .unwrap_or(0);
        let mut table = WeylTable { system, data, order, classes, by_signature, separating_prefix };
        table.assign_aliases()?;
        Ok(table)
    }

    fn assign_aliases(&mut self) -> Result<()> {
        let identity = self.unique(|c| c.order == 1, "identity")?;
        match self.system {
            RootSystem::E6 => {
                self.classes[identity].alias = Some("C1".into());
                let nine = self.unique(|c| c.order % 9 == 0, "order divisible by 9")?;
                self.classes[nine].alias = Some("C14".into());
            }
            RootSystem::E7 => {
                let nine = self.unique(|c| c.order == 9, "order 9")?;
                self.classes[nine].alias = Some("47".into());
                let twisted = self.twist_index(nine)?;
                self.classes[twisted].alias = Some("56".into());
                let target = eigen_char_poly(&[(1, 2), (2, 2), (4, 2)]);
                let c35 = self.unique(|c| c.char_poly == target, "eigenvalues 1,1,-1,-1,i,-i,i,-i")?;
                self.classes[c35].alias = Some("35".into());
                let c28 = self.twist_index(c35)?;
                self.classes[c28].alias = Some("28".into());
            }
        }
        Ok(())
    }

    fn unique(&self, pred: impl Fn(&ClassRecord) -> bool, what: &str) -> Result<usize> {
        let hits: Vec<usize> = (0..self.classes.len()).filter(|&i| pred(&self.classes[i])).collect();
        match hits.as_slice() {
            [i] => Ok(*i),
            [] => Err(Error::NoClass(what.into())),
            _ => Err(Error::AmbiguousClass(what.into())),
        }
    }

    pub fn n_exceptional(&self) -> usize {
        self.data.n()
    }

    pub fn class(&self, id: &str) -> Option<&ClassRecord> {
        self.classes.iter().find(|c| c.id == id || c.alias.as_deref() == Some(id))
    }

    pub fn by_alias(&self, alias: &str) -> Option<&ClassRecord> {
        self.classes.iter().find(|c| c.alias.as_deref() == Some(alias))
    }

    pub fn index_of(&self, c: &ClassRecord) -> usize {
        self.classes.iter().position(|x| x.id == c.id).expect("record from this table")
    }

    /// Class of a group element given as a permutation of exceptional classes.
    pub fn classify_perm(&self, p: &[u8]) -> Result<&ClassRecord> {
        let sig = self.data.signature(p);
        self.by_signature
            .get(&sig)
            .map(|&i| &self.classes[i])
            .ok_or_else(|| Error::NoClass(format!("{:?}", sig)))
    }

    pub fn lookup_cycle_type(&self, ct: &[u8]) -> Result<&ClassRecord> {
        let mut want = ct.to_vec();
        want.sort_unstable_by(|a, b| b.cmp(a));
        self.lookup_by(|c| c.cycle_type == want, &format!("cycle type {want:?}"))
    }

    pub fn lookup_trace_prefix(&self, t: &[i64]) -> Result<&ClassRecord> {
        self.lookup_by(|c| c.traces.starts_with(t), &format!("trace prefix {t:?}"))
    }

    pub fn lookup_char_poly(&self, cp: &[i64]) -> Result<&ClassRecord> {
        self.lookup_by(|c| c.char_poly == cp, &format!("characteristic polynomial {cp:?}"))
    }

    pub fn lookup_signature(&self, ct: &[u8], cp: &[i64]) -> Result<&ClassRecord> {
        self.lookup_by(|c| c.cycle_type == ct && c.char_poly == cp, &format!("cycle type {ct:?}, char poly {cp:?}"))
    }

    fn lookup_by(&self, pred: impl Fn(&ClassRecord) -> bool, what: &str) -> Result<&ClassRecord> {
        let hits: Vec<&ClassRecord> = self.classes.iter().filter(|c| pred(c)).collect();
        match hits.as_slice() {
            [c] => Ok(c),
            [] => Err(Error::NoClass(what.into())),
            _ => Err(Error::AmbiguousClass(format!(
                "{what}: {}",
                hits.iter().map(|c| c.id.as_str()).collect::<Vec<_>>().join(", ")
            ))),
        }
    }

    /// The Geiser involution `x -> -x + (x.K) K` as a permutation (E7 only).
    pub fn geiser(&self) -> Result<Perm> {
        if self.system != RootSystem::E7 {
            return Err(Error::InvalidInput("the Geiser involution is defined on the E7 lattice".into()));
        }
        let l = &self.data.lattice;
        let k = l.canonical();
        l.exceptional()
            .iter()
            .map(|e| {
                let mut v = [0; 8];
                for i in 0..8 {
                    v[i] = -k[i] - e[i];
                }
                l.index_of(&v).map(|j| j as u8).ok_or_else(|| Error::Inconsistent("-K - e is not exceptional".into()))
            })
            .collect()
    }

    fn twist_index(&self, i: usize) -> Result<usize> {
        let g = self.geiser()?;
        let w = compose(&g, &self.classes[i].representative);
        let c = self.classify_perm(&w)?;
        Ok(self.index_of(c))
    }

    /// Class of `gamma w` for `w` in the class `c`.
    pub fn geiser_twist(&self, c: &ClassRecord) -> Result<&ClassRecord> {
        let i = self.twist_index(self.index_of(c))?;
        Ok(&self.classes[i])
    }
}

fn letter(k: usize) -> String {
    let a = (b'a' + (k % 26) as u8) as char;
    if k < 26 {
        a.to_string()
    } else {
        format!("{a}{}", k / 26)
    }
}

/// `prod (Phi_n)^{m}` over pairs `(n, m)`, constant term first.
pub fn eigen_char_poly(factors: &[(u32, u32)]) -> Vec<i64> {
    let mut acc = vec![1i64];
    for &(n, m) in factors {
        let phi = cyclotomic(n);
        for _ in 0..m {
            acc = poly_mul(&acc, &phi);
        }
    }
    acc
}

pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials, `None` if not divisible.
pub fn poly_div(a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return None;
    }
    let lead = *b.last()?;
    let mut q = vec![0i64; r.len() - db];
    for k in (db..r.len()).rev() {
        if r[k] % lead != 0 {
            return None;
        }
        let c = r[k] / lead;
        q[k - db] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[k - db + i] -= c * bi;
        }
    }
    r.iter().all(|&x| x == 0).then_some(q)
}

/// The `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for proper divisors d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_div(&num, &cyclotomic(d)).expect("cyclotomic division");
        }
    }
    num
}

/// Factors a characteristic polynomial into cyclotomic polynomials,
/// returning `(n, multiplicity)` pairs, or `None` if it is not such a product.
pub fn cyclotomic_factors(cp: &[i64]) -> Option<Vec<(u32, u32)>> {
    let mut rest = cp.to_vec();
    let mut out = Vec::new();
    for n in 1..=60u32 {
        let phi = cyclotomic(n);
        let mut m = 0;
        while rest.len() >= phi.len() {
            match poly_div(&rest, &phi) {
                Some(q) => {
                    rest = q;
                    m += 1;
                }
                None => break,
            }
        }
        if m > 0 {
            out.push((n, m));
        }
        if rest.len() == 1 {
            break;
        }
    }
    (rest == [1]).then_some(out)
}

static E6_TABLE: OnceLock<WeylTable> = OnceLock::new();
static E7_TABLE: OnceLock<WeylTable> = OnceLock::new();

/// Cached `W(E6)` table. Panics with the collision report if signatures fail
/// to separate classes.
pub fn e6() -> &'static WeylTable {
    E6_TABLE.get_or_init(|| WeylTable::build(RootSystem::E6).unwrap_or_else(|e| panic!("W(E6) table: {e}")))
}

/// Cached `W(E7)` table.
pub fn e7() -> &'static WeylTable {
    E7_TABLE.get_or_init(|| WeylTable::build(RootSystem::E7).unwrap_or_else(|e| panic!("W(E7) table: {e}")))
}

pub fn table(system: RootSystem) -> &'static WeylTable {
    match system {
        RootSystem::E6 => e6(),
        RootSystem::E7 => e7(),
    }
}

/// Extends an E6 element to E7 fixing `e_7`, and returns its E7 class.
pub fn blowup_embed(c: &ClassRecord) -> Result<&'static ClassRecord> {
    let six = &e6().data;
    let seven = &e7().data;
    let imgs6 = six.matrix(&c.representative);
    let mut imgs7: Vec<Vector> = imgs6.clone();
    let mut e7v = [0; 8];
    e7v[7] = 1;
    imgs7.push(e7v);
    let p = seven.lattice.perm_of(&imgs7).ok_or_else(|| Error::Inconsistent("blow-up image is not an isometry".into()))?;
    e7().classify_perm(&p)
}

/// Cycle type of a permutation, exposed for callers holding raw Frobenius data.
pub fn perm_cycle_type(p: &[u8]) -> Vec<u8> {
    cycle_type(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e6_table_shape() {
        let t = e6();
        assert_eq!(t.order, E6_ORDER);
        assert_eq!(t.classes.len(), 25);
        assert_eq!(t.classes.iter().map(|c| c.size).sum::<u64>(), E6_ORDER);
        let id = t.by_alias("C1").unwrap();
        assert_eq!(id.cycle_type, vec![1; 27]);
        assert_eq!(id.traces, vec![7; 12]);
        let c14 = t.by_alias("C14").unwrap();
        assert_eq!(c14.order, 9);
        assert_eq!(c14.cycle_type, vec![9, 9, 9]);
        assert_eq!(t.lookup_cycle_type(&[9, 9, 9]).unwrap().id, c14.id);
        assert_eq!(t.lookup_cycle_type(&[1; 27]).unwrap().alias.as_deref(), Some("C1"));
        assert_eq!(t.separating_prefix, 4);
        for c in &t.classes {
            assert_eq!(E6_ORDER % c.size, 0);
            assert_eq!(E6_ORDER % c.order, 0);
            assert!(cyclotomic_factors(&c.char_poly).is_some(), "{}", c.id);
            assert!(c.traces.iter().all(|t| t.abs() <= 7));
            for n in 1..=12u64 {
                assert_eq!(c.traces[((n - 1) % c.order) as usize], c.traces[(n - 1) as usize]);
            }
        }
    }

    #[test]
    fn cycle_type_alone_is_ambiguous_for_some_e6_classes() {
        let t = e6();
        let mut cts: Vec<&Vec<u8>> = t.classes.iter().map(|c| &c.cycle_type).collect();
        cts.sort();
        cts.dedup();
        assert_eq!(cts.len(), 20);
        assert!(matches!(t.lookup_cycle_type(&[6, 6, 6, 6, 3]), Err(Error::AmbiguousClass(_))));
    }

    #[test]
    fn order_via_ordered_sixers() {
        // W(E6) acts simply transitively on ordered 6-tuples of pairwise
        // disjoint exceptional classes; count them by backtracking.
        fn count(l: &super::super::lattice::PicLattice, chosen: &mut Vec<usize>, depth: usize) -> u64 {
            if chosen.len() == depth {
                return 1;
            }
            let ex = l.exceptional();
            let mut total = 0;
            for c in 0..ex.len() {
                if chosen.iter().all(|&d| d != c && l.dot(&ex[c], &ex[d]) == 0) {
                    chosen.push(c);
                    total += count(l, chosen, depth);
                    chosen.pop();
                }
            }
            total
        }
        let l6 = super::super::lattice::PicLattice::new(6);
        assert_eq!(count(&l6, &mut vec![], 6), E6_ORDER);
        assert_eq!(e6().order, E6_ORDER);
    }

    #[test]
    fn e7_table_and_anchors() {
        let start = std::time::Instant::now();
        let t = e7();
        eprintln!("E7 table built in {:?}", start.elapsed());
        assert_eq!(t.order, E7_ORDER);
        assert_eq!(t.classes.len(), 60);
        assert_eq!(t.classes.iter().map(|c| c.size).sum::<u64>(), E7_ORDER);
        let c47 = t.by_alias("47").unwrap();
        assert_eq!(c47.order, 9);
        let c56 = t.by_alias("56").unwrap();
        assert_eq!(c56.order, 18);
        assert_eq!(t.geiser_twist(c47).unwrap().id, c56.id);
        let c35 = t.by_alias("35").unwrap();
        let c28 = t.by_alias("28").unwrap();
        assert_ne!(c35.id, c28.id);
        assert_eq!(t.geiser_twist(c28).unwrap().id, c35.id);
        for c in &t.classes {
            assert_eq!(t.geiser_twist(t.geiser_twist(c).unwrap()).unwrap().id, c.id);
            assert!(cyclotomic_factors(&c.char_poly).is_some(), "{}", c.id);
        }
        let id = t.classes.iter().find(|c| c.order == 1).unwrap();
        let gamma = t.classify_perm(&t.geiser().unwrap()).unwrap();
        assert_eq!(t.geiser_twist(id).unwrap().id, gamma.id);
        assert_eq!(gamma.size, 1);
    }

    #[test]
    fn blowup_embedding() {
        let six = e6();
        let seven = e7();
        assert_eq!(blowup_embed(six.by_alias("C1").unwrap()).unwrap().order, 1);
        assert_eq!(blowup_embed(six.by_alias("C14").unwrap()).unwrap().alias.as_deref(), Some("47"));
        for c in &six.classes {
            assert_eq!(blowup_embed(c).unwrap().order, c.order);
        }
        // conjugate inputs give the same class
        let c = &six.classes[7];
        let g = &six.data.gens[2];
        let conj = compose(g, &compose(&c.representative, g));
        let l6 = &six.data.lattice;
        let mut imgs = l6.basis_images(&conj);
        let mut e7v = [0; 8];
        e7v[7] = 1;
        imgs.push(e7v);
        let p = seven.data.lattice.perm_of(&imgs).unwrap();
        assert_eq!(seven.classify_perm(&p).unwrap().id, blowup_embed(c).unwrap().id);
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(eigen_char_poly(&[(1, 1), (2, 1)]), vec![-1, 0, 1]);
    }
}

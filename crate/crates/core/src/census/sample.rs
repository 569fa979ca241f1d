//! Random cubic forms over `GF(q)`, classified from their lines.

use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::cubic::{classify_with, CubicSurface};
use crate::error::{Error, Result};
use crate::weyl::e6;

pub const SAMPLE_SCHEMA: &str = "dpff.census-sample/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleTally {
    pub class_id: String,
    pub alias: Option<String>,
    pub count: u64,
    pub representative: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleReport {
    pub schema: String,
    pub q: u64,
    pub seed: u64,
    pub drawn: u64,
    pub smooth: u64,
    pub singular: u64,
    /// Smooth forms the line solver gave up on.
    pub failures: u64,
    pub classes: Vec<SampleTally>,
}

/// Classifies `n` uniformly random forms. Finds classes; proves no absence.
pub fn census_sample(q: u64, n: u64, seed: u64) -> Result<SampleReport> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let table = e6();
    let mut classes: Vec<SampleTally> = table
        .classes
        .iter()
        .map(|c| SampleTally { class_id: c.id.clone(), alias: c.alias.clone(), count: 0, representative: None })
        .collect();
    let (mut smooth, mut singular, mut failures) = (0, 0, 0);
    for _ in 0..n {
        let c: Vec<u64> = (0..20).map(|_| rng.gen_range(0..q)).collect();
        let x = CubicSurface::from_u64(q, &c)?;
        match classify_with(&x, seed, 2) {
            Ok(cl) => {
                smooth += 1;
                let t = &mut classes[table.index_of(cl.class)];
                t.count += 1;
                t.representative.get_or_insert(c);
            }
            Err(Error::Singular) => singular += 1,
            Err(Error::Inconsistent(m)) => return Err(Error::Inconsistent(m)),
            Err(_) => failures += 1,
        }
    }
    Ok(SampleReport { schema: SAMPLE_SCHEMA.into(), q, seed, drawn: n, smooth, singular, failures, classes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_consistent() {
        let a = census_sample(3, 40, 5).unwrap();
        assert_eq!(a, census_sample(3, 40, 5).unwrap());
        assert_eq!(a.smooth + a.singular + a.failures, 40);
        assert_eq!(a.classes.iter().map(|c| c.count).sum::<u64>(), a.smooth);
        assert!(a.smooth > 0);
    }
}

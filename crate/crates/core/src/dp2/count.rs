//! Point counts on conic bundles.

use super::fibers::conic_points;
use super::surface::{full_form, matrix, matrix_at, ConicBundleSurface};
use crate::error::{Error, Result};
use crate::ff::{Fe, FieldTower};
use crate::projgeom::enumerate_proj;

/// `#X(GF(q^n))`, summing conic point counts over the fibers.
pub fn count_points_dp2(x: &ConicBundleSurface, n: u32) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidInput("extension degree must be at least 1".into()));
    }
    let t = FieldTower::over(x.q(), n, 0)?;
    let f = t.top();
    let m = matrix(f, &x.parts_in(&t, t.top_index()));
    Ok(enumerate_proj(1, f).map(|st| conic_points(f, &matrix_at(f, &m, st[0], st[1]))).sum())
}

/// `#X(GF(q^n))` by evaluating the form on all of `P^1 x P^2`, refusing
/// when that exceeds `budget` evaluations.
pub fn count_points_dp2_brute(x: &ConicBundleSurface, n: u32, budget: u64) -> Result<u64> {
    let qn = x.q().checked_pow(n).ok_or_else(|| Error::Budget(format!("q^{n} overflows")))?;
    let work = (qn + 1).saturating_mul(qn * qn + qn + 1);
    if work > budget {
        return Err(Error::Budget(format!("{work} evaluations exceed the budget of {budget}")));
    }
    let t = FieldTower::over(x.q(), n, 0)?;
    let f = t.top();
    let g = full_form(f, &x.parts_in(&t, t.top_index()));
    let planes: Vec<Vec<Fe>> = enumerate_proj(2, f).collect();
    let mut total = 0;
    for st in enumerate_proj(1, f) {
        for v in &planes {
            total += g.eval(f, &[st[0], st[1], v[0], v[1], v[2]]).is_zero() as u64;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn fiber_sums_match_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for (q, n) in [(3u64, 1), (3, 2), (5, 1), (7, 1), (9, 1)] {
            for _ in 0..4 {
                let c: Vec<u64> = (0..18).map(|_| rng.gen_range(0..q)).collect();
                let Ok(x) = ConicBundleSurface::from_u64(q, &c) else { continue };
                assert_eq!(count_points_dp2(&x, n).unwrap(), count_points_dp2_brute(&x, n, u64::MAX).unwrap());
            }
        }
        let x = ConicBundleSurface::reference_f3();
        for n in 1..=3 {
            assert_eq!(count_points_dp2(&x, n).unwrap(), count_points_dp2_brute(&x, n, u64::MAX).unwrap());
        }
    }

    #[test]
    fn reference_surface_over_f3() {
        // two non-split fibers with one point each, two smooth conics
        assert_eq!(count_points_dp2(&ConicBundleSurface::reference_f3(), 1).unwrap(), 1 + 1 + 4 + 4);
    }
}

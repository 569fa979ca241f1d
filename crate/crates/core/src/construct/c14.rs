//! Smooth cubic surfaces of the order-9 class over every `GF(q)`.

use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use super::config::{build_config, NineLineConfig, CONFIG_ATTEMPTS};
use super::pencil::{contains_nine_lines, cubics_through, gluing_cross_check, CubicPencil};
use crate::cubic::classify::{certify, default_weil_range, point_off_lines, Classification, SurfaceCertificate};
use crate::cubic::CubicSurface;
use crate::error::{Error, Result};
use crate::ff::Fe;
use crate::projgeom::Matrix;
use crate::weyl::{blowup_embed, e7};

pub const C14_SCHEMA: &str = "dpff.c14-certificate/1";
pub const C14_ALIAS: &str = "C14";

#[derive(Clone, Debug)]
pub struct C14Construction {
    pub config: NineLineConfig,
    pub pencil: CubicPencil,
    pub surface: CubicSurface,
    pub classification: Classification,
    pub certificate: C14Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupRecord {
    pub class_id: String,
    pub alias: Option<String>,
    pub twist_id: String,
    pub twist_alias: Option<String>,
    pub twist_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C14Certificate {
    pub schema: String,
    pub q: u64,
    pub seed: u64,
    /// `Q` over `GF(q)`.
    pub q_point: Vec<u64>,
    /// `R` over `GF(q^3)` and `lambda` over `GF(q^9)`, in the tower of `surface.tower`'s seed.
    pub direction: Vec<u64>,
    pub lambda: u64,
    pub pencil_basis: Vec<Vec<u64>>,
    pub plane_union: Vec<u64>,
    /// Coefficient of `y1 y2 y3` left after gluing the member's plane sections.
    pub gluing_residue: u64,
    pub surface: SurfaceCertificate,
    /// A rational point on none of the 27 lines.
    pub point_off_lines: Vec<u64>,
    /// Class of the blow-up in that point, and of its Geiser twist.
    pub blowup: BlowupRecord,
}

fn proportional(a: &[Fe], b: &[Fe], f: &crate::ff::Gf) -> bool {
    Matrix::from_rows(&[a.to_vec(), b.to_vec()]).rank(f) < 2
}

/// Runs the whole construction over `GF(q)`: configuration, pencil, a member
/// other than the plane union (smallest normalized basis vector), smoothness,
/// classification with point counts for `n = 1, 2` at least, and a point off
/// the lines.
pub fn make_c14_surface(q: u64, seed: u64) -> Result<C14Construction> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut last = None;
    for _ in 0..CONFIG_ATTEMPTS {
        let config = build_config(q, seed, &mut rng)?;
        match cubics_through(&config) {
            Ok(pencil) if pencil.basis.len() == 2 => return finish(config, pencil, seed),
            Ok(p) => last = Some(Error::Degenerate(format!("system of dimension {}", p.basis.len()))),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::RetriesExhausted("no pencil".into())))
}

fn finish(config: NineLineConfig, pencil: CubicPencil, seed: u64) -> Result<C14Construction> {
    let q = config.q();
    let f = config.tower.level(0).clone();
    let mut members: Vec<CubicSurface> = pencil
        .basis
        .iter()
        .filter(|b| !proportional(b, &pencil.plane_union, &f))
        .map(|b| CubicSurface::from_u64(q, &b.iter().map(|c| c.0).collect::<Vec<_>>()).map(|x| x.normalize()))
        .collect::<Result<_>>()?;
    members.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    let surface = members.into_iter().next().ok_or_else(|| Error::Inconsistent("pencil is spanned by the plane union".into()))?;
    if !contains_nine_lines(&config, surface.coeffs()) {
        return Err(Error::Inconsistent("member misses one of the nine lines".into()));
    }
    let residue = gluing_cross_check(&config, surface.coeffs())?;
    let (classification, cert) = certify(&surface, default_weil_range(q).max(2))?;
    if classification.class.alias.as_deref() != Some(C14_ALIAS) || classification.class.cycle_type != vec![9; 3] {
        return Err(Error::Inconsistent(format!("construction gave class {}", classification.class.label())));
    }
    let pt = point_off_lines(&surface, &classification.lines)?;
    let c47 = blowup_embed(classification.class)?;
    let c56 = e7().geiser_twist(c47)?;
    let certificate = C14Certificate {
        schema: C14_SCHEMA.into(),
        q,
        seed,
        q_point: config.q_point.iter().map(|c| c.0).collect(),
        direction: config.direction.iter().map(|c| c.0).collect(),
        lambda: config.lambda.0,
        pencil_basis: pencil.basis.iter().map(|b| b.iter().map(|c| c.0).collect()).collect(),
        plane_union: pencil.plane_union.iter().map(|c| c.0).collect(),
        gluing_residue: residue.0,
        surface: cert,
        point_off_lines: pt.coords.iter().map(|c| c.0).collect(),
        blowup: BlowupRecord {
            class_id: c47.id.clone(),
            alias: c47.alias.clone(),
            twist_id: c56.id.clone(),
            twist_alias: c56.alias.clone(),
            twist_order: c56.order,
        },
    };
    Ok(C14Construction { config, pencil, surface, classification, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        for q in [2u64, 3, 4, 5] {
            let c = make_c14_surface(q, 0).unwrap();
            let cert = &c.certificate;
            assert_eq!(cert.surface.cycle_type, vec![9, 9, 9]);
            assert_eq!(cert.surface.alias.as_deref(), Some("C14"));
            assert!(cert.surface.counts.len() >= 2);
            assert_eq!(cert.blowup.alias.as_deref(), Some("47"));
            assert_eq!(cert.blowup.twist_alias.as_deref(), Some("56"));
            assert_eq!(cert.blowup.twist_order, 18);
            assert!(c.classification.lines.degrees.iter().all(|&d| d == 9));
        }
    }

    #[test]
    fn reproducible() {
        let a = serde_json::to_string(&make_c14_surface(3, 11).unwrap().certificate).unwrap();
        let b = serde_json::to_string(&make_c14_surface(3, 11).unwrap().certificate).unwrap();
        assert_eq!(a, b);
    }
}

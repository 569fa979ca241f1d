//! The classes built constructively: the order-9 cubic class over every
//! field, its blow-up in a point and that blow-up's Geiser twist, and the
//! degree-2 class over `GF(3)` together with its twist.

use serde::{Deserialize, Serialize};

use crate::construct::{dp2_class35_surface, make_c14_surface, C14Certificate};
use crate::dp2::{certify_dp2, Dp2Certificate};
use crate::error::{Error, Result};
use crate::weyl::e7;

pub const REALIZE_SCHEMA: &str = "dpff.realize-row/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationRow {
    pub schema: String,
    pub q: u64,
    pub family: String,
    pub class_id: String,
    pub alias: Option<String>,
    pub order: u64,
    /// File name the certificate is written under.
    pub certificate: String,
}

#[derive(Clone, Debug)]
pub struct Realization {
    pub rows: Vec<RealizationRow>,
    pub c14: Vec<C14Certificate>,
    pub dp2: Option<Dp2Certificate>,
}

pub fn c14_certificate_name(q: u64) -> String {
    format!("c14_q{q}.json")
}

pub const DP2_CERTIFICATE_NAME: &str = "dp2_class35_q3.json";

fn row(q: u64, family: &str, id: &str, certificate: &str) -> Result<RealizationRow> {
    let table = if family == "cubic" { crate::weyl::e6() } else { e7() };
    let c = table.class(id).ok_or_else(|| Error::NoClass(id.into()))?;
    Ok(RealizationRow {
        schema: REALIZE_SCHEMA.into(),
        q,
        family: family.into(),
        class_id: id.into(),
        alias: c.alias.clone(),
        order: c.order,
        certificate: certificate.into(),
    })
}

/// Runs every construction for each `q` (seed 0) and the degree-2 one when
/// `3` is listed. Each twisted class is checked to twist back.
pub fn realize_all(qs: &[u64]) -> Result<Realization> {
    let mut rows = Vec::new();
    let mut c14 = Vec::new();
    let mut dp2 = None;
    for &q in qs {
        let c = make_c14_surface(q, 0)?;
        let cert = c.certificate;
        let name = c14_certificate_name(q);
        let twist = e7().class(&cert.blowup.twist_id).ok_or_else(|| Error::NoClass(cert.blowup.twist_id.clone()))?;
        if e7().geiser_twist(twist)?.id != cert.blowup.class_id {
            return Err(Error::Inconsistent(format!("twist of {} is not an involution", cert.blowup.class_id)));
        }
        rows.push(row(q, "cubic", &cert.surface.class_id, &name)?);
        rows.push(row(q, "dp2-blowup", &cert.blowup.class_id, &name)?);
        rows.push(row(q, "dp2-twist", &cert.blowup.twist_id, &name)?);
        c14.push(cert);
        if q == 3 {
            let (cl, cert) = certify_dp2(&dp2_class35_surface(), 4, 2)?;
            if e7().geiser_twist(cl.twist)?.id != cl.class.id {
                return Err(Error::Inconsistent(format!("twist of {} is not an involution", cl.class.id)));
            }
            rows.push(row(q, "dp2", &cl.class.id, DP2_CERTIFICATE_NAME)?);
            rows.push(row(q, "dp2-twist", &cl.twist.id, DP2_CERTIFICATE_NAME)?);
            dp2 = Some(cert);
        }
    }
    Ok(Realization { rows, c14, dp2 })
}

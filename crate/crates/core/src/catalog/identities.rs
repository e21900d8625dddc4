use serde::Serialize;

use super::certificate_realization;
use super::families as fam;
use crate::cutcone::{pin_size, CutSystem};
use crate::doubling::{
    detect_antipodal, diametral_doubling, doubling_preconditions, doubling_realization,
    DoublingPreconditions,
};
use crate::error::Result;
use crate::graph::Graph;
use crate::iso::are_isomorphic;
use crate::lp::{rational::serde_string, Rational};
use crate::metric::diameter;
use crate::Limits;

/// A claimed isomorphism `□base ≅ target`.
#[derive(Clone, Debug)]
pub struct DoublingIdentity {
    pub label: String,
    pub base: Graph,
    pub target: Graph,
}

fn id(label: impl Into<String>, base: Graph, target: Graph) -> DoublingIdentity {
    DoublingIdentity {
        label: label.into(),
        base,
        target,
    }
}

/// The doubling identities among the named families.
pub fn doubling_identities() -> Result<Vec<DoublingIdentity>> {
    let mut out = Vec::new();
    for s in 2..=6 {
        out.push(id(
            format!("□P{s} = C{}", 2 * s),
            fam::path(s)?,
            fam::cycle(2 * s)?,
        ));
    }
    for s in 2..=5 {
        out.push(id(
            format!("□K{s} = K{s}x2"),
            fam::complete(s)?,
            fam::cocktail_party(s)?,
        ));
    }
    for s in 2..=4 {
        out.push(id(
            format!("□C{} = Prism{}", 2 * s, 2 * s),
            fam::cycle(2 * s)?,
            fam::prism(2 * s)?,
        ));
        out.push(id(
            format!("□L{} = Prism{}", 2 * s, 2 * s),
            fam::ladder(s)?,
            fam::prism(2 * s)?,
        ));
    }
    for s in 1..=3 {
        let n = 2 * s + 1;
        out.push(id(
            format!("□C{n} = APrism{n}"),
            fam::cycle(n)?,
            fam::antiprism(n)?,
        ));
    }
    out.push(id(
        "□Petersen = J(6,3)",
        fam::petersen(),
        fam::johnson(6, 3)?,
    ));
    out.push(id(
        "□Shrikhande = ½H(6,2)",
        fam::shrikhande(),
        fam::halfcube(6)?,
    ));
    out.push(id(
        "□(5-wheel) = Icosahedron",
        fam::wheel(5)?,
        fam::icosahedron(),
    ));
    out.push(id(
        "□(hexagon + triangle) = Icosahedron",
        fam::hexagon_triangle(),
        fam::icosahedron(),
    ));
    for s in 2..=5 {
        out.push(id(
            format!("□H({},2) = H({s},2)", s - 1),
            fam::hamming(s - 1, 2)?,
            fam::hamming(s, 2)?,
        ));
    }
    out.push(id(
        "□(9-cycle + hub) = Dodecahedron",
        fam::nine_cycle_hub(),
        fam::dodecahedron(),
    ));
    for s in 2..=3 {
        out.push(id(
            format!("□J({},{s}) = J({},{s})", 2 * s - 1, 2 * s),
            fam::johnson(2 * s - 1, s)?,
            fam::johnson(2 * s, s)?,
        ));
        out.push(id(
            format!("□½H({},2) = ½H({},2)", 2 * s - 1, 2 * s),
            fam::halfcube(2 * s - 1)?,
            fam::halfcube(2 * s)?,
        ));
    }
    Ok(out)
}

/// How the size of the doubled graph was established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum SizeEvidence {
    Lp {
        #[serde(with = "serde_string")]
        size: Rational,
        equicut: bool,
    },
    Pinned {
        #[serde(with = "serde_string")]
        upper: Rational,
        #[serde(with = "serde_string")]
        lower: Rational,
        pinned: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub label: String,
    pub isomorphic: bool,
    pub preconditions: DoublingPreconditions,
    /// Block realization built and verified; absent when the preconditions fail.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block_realization: Option<std::result::Result<(), String>>,
    /// `D(base) + 1`.
    pub expected_size: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<SizeEvidence>,
    /// Antipodal with each vertex opposite its own copy.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub copy_antipodal: Option<bool>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        if !self.isomorphic {
            return false;
        }
        if !self.preconditions.all_hold() {
            return true;
        }
        let target = Rational::from_integer(self.expected_size.into());
        let size_ok = match &self.size {
            Some(SizeEvidence::Lp { size, equicut }) => *size == target && *equicut,
            Some(SizeEvidence::Pinned {
                upper,
                lower,
                pinned,
            }) => *pinned && *upper == target && *lower == target,
            None => false,
        };
        matches!(self.block_realization, Some(Ok(())))
            && size_ok
            && self.copy_antipodal == Some(true)
    }
}

/// Checks the isomorphism and, when the base meets the doubling
/// preconditions, the block realization, the size `D + 1`, equicut status
/// and the copy involution.
pub fn verify_identity(identity: &DoublingIdentity, limits: &Limits) -> Result<IdentityReport> {
    let base = &identity.base;
    let v = base.vertex_count();
    let doubled = diametral_doubling(base)?;
    let isomorphic = are_isomorphic(&doubled, &identity.target)?.is_some();
    let preconditions = doubling_preconditions(base, limits)?;
    let expected_size = diameter(base)? + 1;
    let mut report = IdentityReport {
        label: identity.label.clone(),
        isomorphic,
        preconditions,
        block_realization: None,
        expected_size,
        size: None,
        copy_antipodal: None,
    };
    if !preconditions.all_hold() {
        return Ok(report);
    }
    let r = certificate_realization(base, limits)?;
    let dd = match doubling_realization(base, &r) {
        Ok(dd) => dd,
        Err(e) => {
            report.block_realization = Some(Err(e.to_string()));
            return Ok(report);
        }
    };
    report.block_realization = Some(Ok(()));
    report.size = Some(if 2 * v <= limits.cut_limit {
        let system = CutSystem::new(&doubled, limits)?;
        SizeEvidence::Lp {
            size: system.size()?,
            equicut: system.is_equicut()?,
        }
    } else {
        let p = pin_size(&doubled, dd.assembled())?;
        SizeEvidence::Pinned {
            upper: p.upper,
            lower: p.lower,
            pinned: p.pinned,
        }
    });
    let antipodes = detect_antipodal(&doubled)?.antipode_map;
    report.copy_antipodal =
        Some(antipodes.is_some_and(|m| (0..v).all(|x| m[x] == x + v && m[x + v] == x)));
    Ok(report)
}

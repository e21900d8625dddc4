//! Named graphs, their expected properties, and the regression checks run
//! against them.

mod census;
mod enumerate;
mod expected;
pub mod families;
mod fixture;
mod identities;

pub use census::{equicut_census, CensusEntry, CENSUS_LABELS};
pub use enumerate::{
    enumerate_connected_graphs, enumerate_trees, MAX_ENUMERATION_VERTICES, MAX_TREE_VERTICES,
};
pub use expected::{catalog, expected_properties, CatalogEntry, Erratum, Expected};
pub use families::{graph_by_name, make_graph};
pub use fixture::{
    load_snub24cell, parse_snub_block, snub24cell_graph, FIXTURE_DIR_ENV, SNUB24CELL_FILE,
};
pub use identities::{
    doubling_identities, verify_identity, DoublingIdentity, IdentityReport, SizeEvidence,
};

use serde::Serialize;

use crate::cutcone::{pin_size, realization_from_certificate, CutSystem, Realization};
use crate::doubling::{detect_antipodal, doubling_realization};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso::are_isomorphic;
use crate::lp::{format_rational, Rational};
use crate::Limits;

/// Builds the graph an entry describes.
pub fn entry_graph(entry: &CatalogEntry) -> Result<Graph> {
    match entry.family.as_deref() {
        None => Err(Error::UnknownFamily(format!(
            "{} has no constructor",
            entry.name
        ))),
        Some("snub24cell") => snub24cell_graph(),
        Some(family) => make_graph(family, &entry.params),
    }
}

fn bits_of(mask: u32, n: usize) -> Vec<u8> {
    (0..n).map(|i| (mask >> i & 1) as u8).collect()
}

/// Realization from the LP certificate of a graph within the cut limit.
pub fn certificate_realization(g: &Graph, limits: &Limits) -> Result<Realization> {
    let system = CutSystem::new(g, limits)?;
    let cert = system.certificate()?.ok_or(Error::NotL1Graph)?;
    realization_from_certificate(g, &cert)
}

/// Moves rows so that row `x` of `r` (a realization of `from`) becomes row
/// `f(x)` for an isomorphism `f` onto `to`.
fn transport(r: &Realization, from: &Graph, to: &Graph) -> Result<Realization> {
    let f = are_isomorphic(from, to)?
        .ok_or_else(|| Error::InternalInconsistency("expected isomorphic graphs".into()))?;
    let mut rows = vec![Vec::new(); r.rows()];
    for (x, &y) in f.iter().enumerate() {
        rows[y] = r.row(x).to_vec();
    }
    Realization::new(rows, r.scale())
}

/// A realization that does not need the LP on the graph itself, for
/// entries too large for it.
pub fn known_realization(
    entry: &CatalogEntry,
    g: &Graph,
    limits: &Limits,
) -> Result<Option<Realization>> {
    let p = &entry.params;
    let r = match entry.family.as_deref() {
        Some("hamming") if p[1] == 2 => {
            let rows = (0..1u32 << p[0]).map(|w| bits_of(w, p[0])).collect();
            Realization::new(rows, 1)?
        }
        Some("cube") => Realization::new((0..8).map(|w| bits_of(w, 3)).collect(), 1)?,
        Some("halfcube") => Realization::new(
            families::halfcube_vertices(p[0])
                .into_iter()
                .map(|w| bits_of(w, p[0]))
                .collect(),
            2,
        )?,
        Some("johnson") => Realization::new(
            families::johnson_vertices(p[0], p[1])
                .into_iter()
                .map(|w| bits_of(w, p[0]))
                .collect(),
            2,
        )?,
        Some("double_odd") => Realization::new(
            families::double_odd_vertices(p[0])
                .into_iter()
                .map(|w| bits_of(w, p[0]))
                .collect(),
            1,
        )?,
        Some("snub24cell") => load_snub24cell()?,
        Some("doob") => {
            let shrikhande = certificate_realization(&families::shrikhande(), limits)?;
            let k4 = certificate_realization(&families::complete(4)?, limits)?;
            let mut r = shrikhande.clone();
            for _ in 1..p[0] {
                r = r.product(&shrikhande)?;
            }
            for _ in 0..p[1] {
                r = r.product(&k4)?;
            }
            r
        }
        Some("dodecahedron") => {
            let base = families::nine_cycle_hub();
            let dd = doubling_realization(&base, &certificate_realization(&base, limits)?)?;
            transport(
                dd.assembled(),
                &crate::doubling::diametral_doubling(&base)?,
                g,
            )?
        }
        _ => return Ok(None),
    };
    Ok(Some(r))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Stated value is wrong; the computed value matches the recorded correction.
    Erratum,
    /// Not computable within the configured limits.
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldCheck {
    pub field: &'static str,
    pub expected: String,
    pub computed: Option<String>,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Full cut LP.
    Lp,
    /// Known realization meeting the Wiener lower bound.
    Pinned,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub method: Method,
    pub checks: Vec<FieldCheck>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }
}

#[derive(Default)]
struct Computed {
    size: Option<Rational>,
    scale: Option<u64>,
    rigid: Option<bool>,
    equicut: Option<bool>,
    doubling: Option<bool>,
}

fn compute_lp(g: &Graph, want: &Expected, limits: &Limits) -> Result<Computed> {
    let system = CutSystem::new(g, limits)?;
    if !system.is_l1()? {
        return Ok(Computed {
            equicut: Some(false),
            doubling: Some(false),
            ..Computed::default()
        });
    }
    let equicut = system.is_equicut()?;
    let doubling = if want.doubling.is_some() {
        Some(equicut && detect_antipodal(g)?.is_antipodal)
    } else {
        None
    };
    Ok(Computed {
        size: Some(system.size()?),
        scale: want.scale.map(|_| system.scale()).transpose()?,
        rigid: want.rigid.map(|_| system.is_rigid()).transpose()?,
        equicut: Some(equicut),
        doubling,
    })
}

fn compute_pinned(entry: &CatalogEntry, g: &Graph, limits: &Limits) -> Result<Computed> {
    let Some(r) = known_realization(entry, g, limits)? else {
        return Ok(Computed::default());
    };
    let pinned = pin_size(g, &r)?;
    let scale = match r.scale() {
        1 => Some(1),
        2 if !g.is_bipartite() => Some(2),
        _ => None,
    };
    let equicut = pinned.pinned.then_some(true);
    let doubling = match equicut {
        Some(true) if entry.expected.doubling.is_some() => Some(detect_antipodal(g)?.is_antipodal),
        _ => None,
    };
    Ok(Computed {
        size: pinned.pinned.then_some(pinned.upper),
        scale,
        rigid: None,
        equicut,
        doubling,
    })
}

fn check<T: PartialEq + ToString>(
    field: &'static str,
    expected: &Option<T>,
    computed: Option<T>,
    corrected: Option<&T>,
    render: impl Fn(&T) -> String,
) -> Option<FieldCheck> {
    let exp = expected.as_ref()?;
    let status = match &computed {
        None => CheckStatus::Unverified,
        Some(c) if c == exp => CheckStatus::Pass,
        Some(c) if corrected == Some(c) => CheckStatus::Erratum,
        Some(_) => CheckStatus::Fail,
    };
    Some(FieldCheck {
        field,
        expected: render(exp),
        computed: computed.as_ref().map(render),
        status,
    })
}

/// Computes every expected property of a constructible entry, by LP within
/// the cut limit and by bound pinning beyond it.
pub fn verify_entry(entry: &CatalogEntry, limits: &Limits) -> Result<EntryReport> {
    let g = entry_graph(entry)?;
    let v = g.vertex_count();
    let (method, computed) = if v <= limits.cut_limit {
        (Method::Lp, compute_lp(&g, &entry.expected, limits)?)
    } else {
        (Method::Pinned, compute_pinned(entry, &g, limits)?)
    };
    let e = &entry.expected;
    let corrected_size = entry.erratum.as_ref().and_then(|x| x.size.as_ref());
    let checks = [
        check("vertices", &e.vertices, Some(v), None, ToString::to_string),
        check(
            "size",
            &e.size,
            computed.size,
            corrected_size,
            format_rational,
        ),
        check("scale", &e.scale, computed.scale, None, ToString::to_string),
        check("rigid", &e.rigid, computed.rigid, None, ToString::to_string),
        check(
            "equicut",
            &e.equicut,
            computed.equicut,
            None,
            ToString::to_string,
        ),
        check(
            "doubling",
            &e.doubling,
            computed.doubling,
            None,
            ToString::to_string,
        ),
    ]
    .into_iter()
    .flatten()
    .collect();
    Ok(EntryReport {
        name: entry.name.clone(),
        method,
        checks,
    })
}

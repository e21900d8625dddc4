use serde::Serialize;

use super::enumerate::enumerate_connected_graphs;
use super::families as fam;
use crate::cutcone::CutSystem;
use crate::doubling::detect_antipodal;
use crate::error::Result;
use crate::graph::Graph;
use crate::iso::are_isomorphic;
use crate::Limits;

/// Names used to label census hits.
pub const CENSUS_LABELS: &[&str] = &[
    "C2",
    "C3",
    "C4",
    "C5",
    "C6",
    "K4",
    "K5",
    "K6",
    "P3",
    "4-wheel",
    "octahedron",
];

fn labelled() -> Result<Vec<(&'static str, Graph)>> {
    Ok(vec![
        ("C2", fam::cycle(2)?),
        ("C3", fam::cycle(3)?),
        ("C4", fam::cycle(4)?),
        ("C5", fam::cycle(5)?),
        ("C6", fam::cycle(6)?),
        ("K4", fam::complete(4)?),
        ("K5", fam::complete(5)?),
        ("K6", fam::complete(6)?),
        ("P3", fam::path(3)?),
        ("4-wheel", fam::wheel(4)?),
        ("octahedron", fam::octahedron()),
    ])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    #[serde(skip)]
    pub graph: Graph,
    pub vertices: usize,
    pub edges: usize,
    /// Matching name from [`CENSUS_LABELS`], if any.
    pub label: Option<&'static str>,
    pub rigid: bool,
    /// Equicut and antipodal. Requires `v >= 4`: the single edge has an
    /// antipodal involution but is not counted as a doubling.
    pub doubling: bool,
}

/// Every equicut graph among the connected graphs on `2..=max_v` vertices.
pub fn equicut_census(max_v: usize, limits: &Limits) -> Result<Vec<CensusEntry>> {
    let labels = labelled()?;
    let mut out = Vec::new();
    for v in 2..=max_v {
        for g in enumerate_connected_graphs(v)? {
            let system = CutSystem::new(&g, limits)?;
            if !system.is_l1()? || !system.is_equicut()? {
                continue;
            }
            let mut label = None;
            for (name, h) in &labels {
                if are_isomorphic(&g, h)?.is_some() {
                    label = Some(*name);
                    break;
                }
            }
            out.push(CensusEntry {
                vertices: v,
                edges: g.edge_count(),
                label,
                rigid: system.is_rigid()?,
                doubling: v >= 4 && detect_antipodal(&g)?.is_antipodal,
                graph: g,
            });
        }
    }
    Ok(out)
}

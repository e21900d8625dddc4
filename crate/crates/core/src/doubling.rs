//! Diametral doubling, its preconditions and block-form realization,
//! diametral switching and antipodality.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cutcone::{validate_realization, CutSystem, Realization};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso::are_isomorphic;
use crate::lp::Rational;
use crate::metric::{distance_matrix, geodesic_convexity, geodesic_extension};
use crate::Limits;

/// Two copies `V+ = 0..v` and `V- = v..2v`; same-copy adjacency as in `g`,
/// cross-copy adjacency between vertices at distance `D(g)`.
pub fn diametral_doubling(g: &Graph) -> Result<Graph> {
    let d = distance_matrix(g)?;
    let v = g.vertex_count();
    let diam = d.diameter();
    let mut edges = Vec::new();
    for (a, b) in g.edges() {
        edges.push((a, b));
        edges.push((a + v, b + v));
    }
    for x in 0..v {
        for y in 0..v {
            if d.get(x, y) == diam {
                edges.push((x, y + v));
            }
        }
    }
    Graph::new(2 * v, edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DoublingPreconditions {
    /// Geodesic convexity condition.
    pub cond_i: bool,
    /// Geodesic extension condition.
    pub cond_ii: bool,
    /// `size <= D + 1`; absent when the graph is not l1 or too large for the LP.
    pub size_ok: Option<bool>,
}

impl DoublingPreconditions {
    pub fn all_hold(&self) -> bool {
        self.cond_i && self.cond_ii && self.size_ok == Some(true)
    }
}

pub fn doubling_preconditions(g: &Graph, limits: &Limits) -> Result<DoublingPreconditions> {
    let d = distance_matrix(g)?;
    let size_ok = if g.vertex_count() < 2 {
        None
    } else {
        match CutSystem::new(g, limits) {
            Ok(system) => match system.size() {
                Ok(sz) => Some(sz <= Rational::from_integer((d.diameter() + 1).into())),
                Err(Error::NotL1Graph) => None,
                Err(e) => return Err(e),
            },
            Err(Error::SizeLimitExceeded { .. }) => None,
            Err(e) => return Err(e),
        }
    };
    Ok(DoublingPreconditions {
        cond_i: geodesic_convexity(&d),
        cond_ii: geodesic_extension(&d),
        size_ok,
    })
}

/// The block matrix `(A O; J-A J')` realizing the doubling of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublingDecomposition {
    base: Realization,
    pad_columns: usize,
    assembled: Realization,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DoublingHeader {
    pub base_columns: usize,
    pub pad_columns: usize,
    pub scale: u64,
}

impl DoublingDecomposition {
    /// The base realization `A`.
    pub fn base(&self) -> &Realization {
        &self.base
    }

    pub fn base_columns(&self) -> usize {
        self.base.cols()
    }

    /// Width of the all-ones block `J'` in the lower half.
    pub fn pad_columns(&self) -> usize {
        self.pad_columns
    }

    pub fn scale(&self) -> u64 {
        self.base.scale()
    }

    pub fn assembled(&self) -> &Realization {
        &self.assembled
    }

    pub fn header(&self) -> DoublingHeader {
        DoublingHeader {
            base_columns: self.base_columns(),
            pad_columns: self.pad_columns,
            scale: self.scale(),
        }
    }

    /// JSON header line followed by the assembled realization.
    pub fn to_text(&self) -> String {
        format!(
            "{}\n{}",
            serde_json::to_string(&self.header()).expect("header serializes"),
            self.assembled.to_text()
        )
    }
}

/// Assembles and verifies the block realization of `□g` from a realization
/// of `g` with at most `t(D+1)` columns.
pub fn doubling_realization(g: &Graph, r: &Realization) -> Result<DoublingDecomposition> {
    let report = validate_realization(g, r)?;
    if !report.isometric {
        return Err(Error::VerificationFailed(format!(
            "input realization is not isometric for the graph, e.g. at pairs {:?}",
            report.mismatched_pairs
        )));
    }
    let v = g.vertex_count();
    let t = r.scale();
    let diam = distance_matrix(g)?.diameter() as u64;
    let allowed = t * (diam + 1);
    let n = r.cols() as u64;
    if n > allowed {
        return Err(Error::SizeConditionViolated {
            columns: r.cols(),
            scale: t,
            allowed,
        });
    }
    let pad = (allowed - n) as usize;
    let mut rows = Vec::with_capacity(2 * v);
    for x in 0..v {
        let mut row = r.row(x).to_vec();
        row.resize(row.len() + pad, 0);
        rows.push(row);
    }
    for x in 0..v {
        let mut row: Vec<u8> = r.row(x).iter().map(|b| 1 - b).collect();
        row.resize(row.len() + pad, 1);
        rows.push(row);
    }
    let assembled = Realization::new(rows, t)?;

    let doubled = diametral_doubling(g)?;
    let check = validate_realization(&doubled, &assembled)?;
    if !check.isometric {
        return Err(Error::VerificationFailed(format!(
            "block matrix is not isometric for the doubling, e.g. at pairs {:?}",
            check.mismatched_pairs
        )));
    }
    if let Some(c) = (0..assembled.cols()).find(|&c| assembled.column_sum(c) != v) {
        return Err(Error::VerificationFailed(format!(
            "column {c} of the block matrix has sum {}, expected {v}",
            assembled.column_sum(c)
        )));
    }
    Ok(DoublingDecomposition {
        base: r.clone(),
        pad_columns: pad,
        assembled,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AntipodalityReport {
    pub is_antipodal: bool,
    pub antipode_map: Option<Vec<usize>>,
}

/// Checks that every vertex has exactly one vertex at distance `D` and that
/// the resulting involution is an automorphism.
pub fn detect_antipodal(g: &Graph) -> Result<AntipodalityReport> {
    let d = distance_matrix(g)?;
    let v = g.vertex_count();
    let not = AntipodalityReport {
        is_antipodal: false,
        antipode_map: None,
    };
    if v < 2 {
        return Ok(not);
    }
    let diam = d.diameter();
    let mut map = Vec::with_capacity(v);
    for x in 0..v {
        let mut far = (0..v).filter(|&y| d.get(x, y) == diam);
        match (far.next(), far.next()) {
            (Some(y), None) => map.push(y),
            _ => return Ok(not),
        }
    }
    if !g.edges().all(|(a, b)| g.has_edge(map[a], map[b])) {
        return Ok(not);
    }
    Ok(AntipodalityReport {
        is_antipodal: true,
        antipode_map: Some(map),
    })
}

/// Keeps edges inside `subset` and inside its complement; crossing pairs
/// become adjacent exactly when they are at distance `D(g)`.
pub fn diametral_switching(g: &Graph, subset: &[usize]) -> Result<Graph> {
    let d = distance_matrix(g)?;
    let v = g.vertex_count();
    let mut inside = vec![false; v];
    for &x in subset {
        if x >= v {
            return Err(Error::InvalidGraph(format!("vertex {x} outside 0..{v}")));
        }
        inside[x] = true;
    }
    let diam = d.diameter();
    Graph::from_fn(v, |a, b| {
        if inside[a] == inside[b] {
            g.has_edge(a, b)
        } else {
            d.get(a, b) == diam
        }
    })
}

/// Largest antipodal graph [`halvings`] will search.
pub const MAX_HALVING_VERTICES: usize = 24;

/// Pairwise non-isomorphic graphs `h` with `□h ≅ g`, found among the
/// subgraphs induced on transversals of the antipode involution.
pub fn halvings(g: &Graph) -> Result<Vec<Graph>> {
    let v = g.vertex_count();
    if v > MAX_HALVING_VERTICES {
        return Err(Error::SizeLimitExceeded {
            what: "halving search vertices",
            found: v,
            limit: MAX_HALVING_VERTICES,
        });
    }
    let report = detect_antipodal(g)?;
    let Some(map) = report.antipode_map else {
        return Ok(Vec::new());
    };
    let pairs: Vec<(usize, usize)> = (0..v)
        .filter(|&x| x < map[x])
        .map(|x| (x, map[x]))
        .collect();
    let mut found: Vec<Graph> = Vec::new();
    let mut seen = BTreeSet::new();
    // Swapping every pair maps a transversal to its antipodal image, which
    // induces an isomorphic graph, so the first pair stays fixed.
    let choices = 1u64 << pairs.len().saturating_sub(1);
    for bits in 0..choices {
        let transversal: Vec<usize> = pairs
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| {
                if i > 0 && bits >> (i - 1) & 1 == 1 {
                    b
                } else {
                    a
                }
            })
            .collect();
        let h = g.induced_subgraph(&transversal)?;
        if !h.is_connected() {
            continue;
        }
        let mut degrees: Vec<usize> = (0..h.vertex_count()).map(|x| h.degree(x)).collect();
        degrees.sort_unstable();
        let key = (h.edge_count(), degrees);
        if seen.contains(&key)
            && found
                .iter()
                .any(|f| are_isomorphic(f, &h).ok().flatten().is_some())
        {
            continue;
        }
        if are_isomorphic(&diametral_doubling(&h)?, g)?.is_some() {
            seen.insert(key);
            found.push(h);
        }
    }
    Ok(found)
}

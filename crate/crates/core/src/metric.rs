//! Shortest-path metric of a connected graph and the structural predicates
//! built on it.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Marker for unreachable pairs in [`bfs_rows`].
pub(crate) const UNREACHABLE: u32 = u32::MAX;

/// All-pairs BFS distances, with [`UNREACHABLE`] for pairs in different components.
pub(crate) fn bfs_rows(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    let mut dist = vec![UNREACHABLE; n * n];
    let mut queue = VecDeque::with_capacity(n);
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            let dx = row[x];
            for &y in g.neighbors(x) {
                if row[y] == UNREACHABLE {
                    row[y] = dx + 1;
                    queue.push_back(y);
                }
            }
        }
    }
    dist
}

/// Graph distance between every pair of vertices of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.data[a * self.n + b]
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.data[a * self.n..(a + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.data.iter().copied().max().unwrap_or(0)
    }

    /// Sum of distances over unordered pairs.
    pub fn wiener(&self) -> u64 {
        self.data.iter().map(|&d| d as u64).sum::<u64>() / 2
    }

    /// Unordered pairs `(a, b)` with `a < b`, in the row order used by the
    /// cut-cone systems.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
    }

    pub fn summary(&self) -> MetricSummary {
        MetricSummary {
            diameter: self.diameter(),
            wiener: self.wiener(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MetricSummary {
    pub diameter: u32,
    pub wiener: u64,
}

pub fn distance_matrix(g: &Graph) -> Result<DistanceMatrix> {
    let data = bfs_rows(g);
    if data.contains(&UNREACHABLE) {
        return Err(Error::DisconnectedGraph);
    }
    Ok(DistanceMatrix {
        n: g.vertex_count(),
        data,
    })
}

pub fn wiener(g: &Graph) -> Result<u64> {
    Ok(distance_matrix(g)?.wiener())
}

pub fn diameter(g: &Graph) -> Result<u32> {
    Ok(distance_matrix(g)?.diameter())
}

/// Whether the graph stays connected after deleting any single vertex.
pub fn is_2_connected(g: &Graph) -> Result<bool> {
    let n = g.vertex_count();
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    if n < 3 {
        return Err(Error::TooSmall {
            needed: 3,
            found: n,
        });
    }
    Ok((0..n).all(|cut| {
        let start = if cut == 0 { 1 } else { 0 };
        g.reachable_from(start, Some(cut)).iter().all(|&r| r)
    }))
}

fn antipodes(d: &DistanceMatrix) -> Vec<Vec<usize>> {
    let diam = d.diameter();
    (0..d.vertex_count())
        .map(|x| {
            (0..d.vertex_count())
                .filter(|&z| d.get(x, z) == diam)
                .collect()
        })
        .collect()
}

/// `d(x, y) <= 2 + d(z1, z2)` whenever `d(x, z1) = d(y, z2) = D`.
///
/// This is exactly the condition under which each copy of the graph sits
/// isometrically inside its diametral doubling.
pub fn cond_geodesic_convexity(g: &Graph) -> Result<bool> {
    let d = distance_matrix(g)?;
    Ok(geodesic_convexity(&d))
}

pub(crate) fn geodesic_convexity(d: &DistanceMatrix) -> bool {
    let far = antipodes(d);
    let n = d.vertex_count();
    for x in 0..n {
        for y in x..n {
            let dxy = d.get(x, y);
            if dxy <= 2 {
                continue;
            }
            for &z1 in &far[x] {
                if far[y].iter().any(|&z2| dxy > 2 + d.get(z1, z2)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every geodesic extends to a geodesic of length `D`.
///
/// Tested pairwise: for each `(x, y)`, including `x = y`, there must be
/// `z1, z2` at distance `D` with `d(z1, x) + d(x, y) + d(y, z2) = D`.
/// Concatenating geodesics shows this is equivalent to the geodesic form.
pub fn cond_geodesic_extension(g: &Graph) -> Result<bool> {
    let d = distance_matrix(g)?;
    Ok(geodesic_extension(&d))
}

pub(crate) fn geodesic_extension(d: &DistanceMatrix) -> bool {
    let diam = d.diameter();
    let n = d.vertex_count();
    let diametral: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| d.get(a, b) == diam)
        .collect();
    (0..n).all(|x| {
        (x..n).all(|y| {
            let dxy = d.get(x, y);
            diametral
                .iter()
                .any(|&(z1, z2)| d.get(z1, x) + dxy + d.get(y, z2) == diam)
        })
    })
}

/// Cartesian product; vertex `(a, b)` becomes `a * v2 + b`.
pub fn cartesian_product(g1: &Graph, g2: &Graph) -> Result<Graph> {
    if !g1.is_connected() || !g2.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let n2 = g2.vertex_count();
    Graph::from_fn(g1.vertex_count() * n2, |x, y| {
        let (a, b) = (x / n2, x % n2);
        let (a2, b2) = (y / n2, y % n2);
        (a == a2 && g2.has_edge(b, b2)) || (b == b2 && g1.has_edge(a, a2))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::families as fam;

    #[test]
    fn path_metric() {
        let p3 = fam::path(3).unwrap();
        let d = distance_matrix(&p3).unwrap();
        let rows: Vec<Vec<u32>> = (0..3).map(|a| d.row(a).to_vec()).collect();
        assert_eq!(rows, vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]]);
    }

    #[test]
    fn pentagon_distances() {
        let d = distance_matrix(&fam::cycle(5).unwrap()).unwrap();
        let ones = (0..5)
            .flat_map(|a| (0..5).map(move |b| (a, b)))
            .filter(|&(a, b)| d.get(a, b) == 1)
            .count();
        let twos = (0..5)
            .flat_map(|a| (0..5).map(move |b| (a, b)))
            .filter(|&(a, b)| d.get(a, b) == 2)
            .count();
        assert_eq!((ones, twos), (10, 10));
        assert_eq!(d.wiener(), 15);
    }

    #[test]
    fn petersen_profile() {
        let d = distance_matrix(&fam::petersen()).unwrap();
        assert_eq!(d.diameter(), 2);
        for x in 0..10 {
            let at = |k| d.row(x).iter().filter(|&&e| e == k).count();
            assert_eq!((at(1), at(2)), (3, 6));
        }
    }

    #[test]
    fn wiener_and_diameter_examples() {
        assert_eq!(wiener(&fam::star(5).unwrap()).unwrap(), 16);
        assert_eq!(wiener(&fam::path(4).unwrap()).unwrap(), 10);
        assert_eq!(diameter(&fam::complete(5).unwrap()).unwrap(), 1);
        assert_eq!(diameter(&fam::cycle(7).unwrap()).unwrap(), 3);
        assert_eq!(diameter(&fam::dodecahedron()).unwrap(), 5);
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(distance_matrix(&g), Err(Error::DisconnectedGraph));
        assert_eq!(wiener(&g), Err(Error::DisconnectedGraph));
        assert_eq!(is_2_connected(&g), Err(Error::DisconnectedGraph));
        assert_eq!(cond_geodesic_convexity(&g), Err(Error::DisconnectedGraph));
        assert!(cartesian_product(&g, &g).is_err());
    }

    #[test]
    fn two_connectivity() {
        assert!(is_2_connected(&fam::cycle(6).unwrap()).unwrap());
        assert!(!is_2_connected(&fam::star(5).unwrap()).unwrap());
        assert!(!is_2_connected(&fam::p123452_pendant()).unwrap());
        assert!(matches!(
            is_2_connected(&fam::path(2).unwrap()),
            Err(Error::TooSmall { .. })
        ));
    }

    #[test]
    fn two_connectivity_matches_deletion_oracle() {
        // Independent route: rebuild the graph without each vertex and test
        // connectivity of the rebuilt graph.
        for g in [
            fam::p123452_pendant(),
            fam::p123452_cycle(),
            fam::wheel(4).unwrap(),
        ] {
            let n = g.vertex_count();
            let oracle = (0..n).all(|cut| {
                let keep: Vec<usize> = (0..n).filter(|&v| v != cut).collect();
                g.induced_subgraph(&keep).unwrap().is_connected()
            });
            assert_eq!(is_2_connected(&g).unwrap(), oracle);
        }
    }

    #[test]
    fn geodesic_conditions() {
        assert!(cond_geodesic_convexity(&fam::petersen()).unwrap());
        assert!(cond_geodesic_convexity(&fam::k4_minus_p3()).unwrap());
        assert!(!cond_geodesic_extension(&fam::k4_minus_p3()).unwrap());
        assert!(cond_geodesic_extension(&fam::cocktail_party(3).unwrap()).unwrap());
        assert!(cond_geodesic_extension(&fam::cycle(5).unwrap()).unwrap());
    }

    #[test]
    fn products() {
        let k2 = fam::complete(2).unwrap();
        let sq = cartesian_product(&k2, &k2).unwrap();
        assert_eq!(sq.vertex_count(), 4);
        assert_eq!(sq.regular_degree(), Some(2));
        assert!(crate::iso::are_isomorphic(&sq, &fam::cycle(4).unwrap())
            .unwrap()
            .is_some());
        let k4 = fam::complete(4).unwrap();
        let h24 = cartesian_product(&k4, &k4).unwrap();
        assert_eq!((h24.vertex_count(), h24.regular_degree()), (16, Some(6)));
        let doob = cartesian_product(&fam::shrikhande(), &k4).unwrap();
        assert_eq!(doob.vertex_count(), 64);
    }
}

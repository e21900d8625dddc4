//! Exhaustive enumeration of small connected graphs and trees up to isomorphism.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso::are_isomorphic;

pub const MAX_ENUMERATION_VERTICES: usize = 7;
pub const MAX_TREE_VERTICES: usize = 10;

/// Isomorphism invariant used to bucket candidates before exact checks:
/// per-vertex (degree, sorted neighbour degrees, triangles), sorted.
type Invariant = Vec<(usize, Vec<usize>, usize)>;

fn invariant(g: &Graph) -> Invariant {
    let n = g.vertex_count();
    let mut key: Vec<_> = (0..n)
        .map(|x| {
            let mut nd: Vec<usize> = g.neighbors(x).iter().map(|&y| g.degree(y)).collect();
            nd.sort_unstable();
            let nb = g.neighbors(x);
            let triangles = nb
                .iter()
                .enumerate()
                .map(|(i, &a)| nb[i + 1..].iter().filter(|&&b| g.has_edge(a, b)).count())
                .sum();
            (g.degree(x), nd, triangles)
        })
        .collect();
    key.sort();
    key
}

struct Classes {
    buckets: HashMap<Invariant, Vec<usize>>,
    graphs: Vec<Graph>,
}

impl Classes {
    fn new() -> Self {
        Classes {
            buckets: HashMap::new(),
            graphs: Vec::new(),
        }
    }

    fn insert(&mut self, g: Graph) -> Result<()> {
        let bucket = self.buckets.entry(invariant(&g)).or_default();
        for &i in bucket.iter() {
            if are_isomorphic(&self.graphs[i], &g)?.is_some() {
                return Ok(());
            }
        }
        bucket.push(self.graphs.len());
        self.graphs.push(g);
        Ok(())
    }
}

/// One connected graph per isomorphism class on `v` vertices.
///
/// Every connected graph has a vertex whose removal leaves it connected, so
/// extending each class on `v - 1` vertices by a new vertex with every
/// nonempty neighbourhood reaches all classes on `v`.
pub fn enumerate_connected_graphs(v: usize) -> Result<Vec<Graph>> {
    if v > MAX_ENUMERATION_VERTICES {
        return Err(Error::SizeLimitExceeded {
            what: "enumeration vertices",
            found: v,
            limit: MAX_ENUMERATION_VERTICES,
        });
    }
    if v == 0 {
        return Ok(Vec::new());
    }
    let mut level = vec![Graph::new(1, [])?];
    for n in 2..=v {
        let mut classes = Classes::new();
        for g in &level {
            let base: Vec<(usize, usize)> = g.edges().collect();
            for mask in 1u32..1 << (n - 1) {
                let mut edges = base.clone();
                edges.extend(
                    (0..n - 1)
                        .filter(|&x| mask >> x & 1 == 1)
                        .map(|x| (x, n - 1)),
                );
                classes.insert(Graph::new(n, edges)?)?;
            }
        }
        level = classes.graphs;
    }
    Ok(level)
}

/// One tree per isomorphism class on `v` vertices, grown leaf by leaf.
pub fn enumerate_trees(v: usize) -> Result<Vec<Graph>> {
    if v > MAX_TREE_VERTICES {
        return Err(Error::SizeLimitExceeded {
            what: "tree enumeration vertices",
            found: v,
            limit: MAX_TREE_VERTICES,
        });
    }
    if v == 0 {
        return Ok(Vec::new());
    }
    let mut level = vec![Graph::new(1, [])?];
    for n in 2..=v {
        let mut classes = Classes::new();
        for t in &level {
            for x in 0..n - 1 {
                let mut edges: Vec<_> = t.edges().collect();
                edges.push((x, n - 1));
                classes.insert(Graph::new(n, edges)?)?;
            }
        }
        level = classes.graphs;
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|v| enumerate_connected_graphs(v).unwrap().len())
            .collect();
        assert_eq!(counts, [1, 1, 2, 6, 21, 112]);
        assert!(enumerate_connected_graphs(8).is_err());
    }

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=8).map(|v| enumerate_trees(v).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 3, 6, 11, 23]);
    }

    #[test]
    fn brute_force_v4() {
        // Independent count: all 64 labelled graphs on 4 vertices, deduplicated
        // by trying every permutation.
        let pairs: Vec<(usize, usize)> = (0..4)
            .flat_map(|a| (a + 1..4).map(move |b| (a, b)))
            .collect();
        let perms: Vec<[usize; 4]> = {
            let mut out = Vec::new();
            for a in 0..4 {
                for b in 0..4 {
                    for c in 0..4 {
                        for d in 0..4 {
                            let p = [a, b, c, d];
                            let mut seen = [false; 4];
                            p.iter().for_each(|&x| seen[x] = true);
                            if seen.iter().all(|&s| s) {
                                out.push(p);
                            }
                        }
                    }
                }
            }
            out
        };
        let canon = |mask: u32| -> u32 {
            perms
                .iter()
                .map(|p| {
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .fold(0u32, |m, (_, &(a, b))| {
                            let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
                            m | 1 << pairs.iter().position(|&q| q == (x, y)).unwrap()
                        })
                })
                .min()
                .unwrap()
        };
        let mut classes = std::collections::BTreeSet::new();
        for mask in 0u32..64 {
            let g = Graph::new(
                4,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e),
            )
            .unwrap();
            if g.is_connected() {
                classes.insert(canon(mask));
            }
        }
        assert_eq!(classes.len(), enumerate_connected_graphs(4).unwrap().len());
    }
}

//! Exact isomorphism test for small graphs.
//!
//! Plain backtracking over a BFS vertex order. Candidates are filtered by a
//! distance-profile invariant and, at each step, by agreement of distances to
//! every vertex already mapped, so any complete mapping is distance preserving.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::{bfs_rows, UNREACHABLE};

pub const DEFAULT_ISO_LIMIT: usize = 40;

/// A bijection `f` with `g1 ~ g2` under `f`, if one exists (`f[u]` is the image of `u`).
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Result<Option<Vec<usize>>> {
    are_isomorphic_with_limit(g1, g2, DEFAULT_ISO_LIMIT)
}

pub fn are_isomorphic_with_limit(
    g1: &Graph,
    g2: &Graph,
    limit: usize,
) -> Result<Option<Vec<usize>>> {
    let n = g1.vertex_count();
    for g in [g1, g2] {
        if g.vertex_count() > limit {
            return Err(Error::SizeLimitExceeded {
                what: "isomorphism search vertices",
                found: g.vertex_count(),
                limit,
            });
        }
    }
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let mut deg1: Vec<usize> = (0..n).map(|v| g1.degree(v)).collect();
    let mut deg2: Vec<usize> = (0..n).map(|v| g2.degree(v)).collect();
    deg1.sort_unstable();
    deg2.sort_unstable();
    if deg1 != deg2 {
        return Ok(None);
    }

    let d1 = bfs_rows(g1);
    let d2 = bfs_rows(g2);
    let p1 = profiles(&d1, n);
    let p2 = profiles(&d2, n);
    let mut s1 = p1.clone();
    let mut s2 = p2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Ok(None);
    }

    let order = search_order(g1, &p1);
    let mut search = Search {
        n,
        d1: &d1,
        d2: &d2,
        p1: &p1,
        p2: &p2,
        g2,
        order: &order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    Ok(search.extend(0).then_some(search.map))
}

/// Per-vertex histogram of distances; the unreachable count goes last.
fn profiles(dist: &[u32], n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|v| {
            let row = &dist[v * n..(v + 1) * n];
            let mut hist = vec![0usize; n + 1];
            for &d in row {
                if d == UNREACHABLE {
                    hist[n] += 1;
                } else {
                    hist[d as usize] += 1;
                }
            }
            hist
        })
        .collect()
}

/// BFS order rooted at a vertex of the rarest profile class; each component
/// is entered through its rarest vertex.
fn search_order(g: &Graph, prof: &[Vec<usize>]) -> Vec<usize> {
    let n = g.vertex_count();
    let class_size = |v: usize| prof.iter().filter(|p| **p == prof[v]).count();
    let mut by_rarity: Vec<usize> = (0..n).collect();
    by_rarity.sort_by_key(|&v| (class_size(v), v));

    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for &root in &by_rarity {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    n: usize,
    d1: &'a [u32],
    d2: &'a [u32],
    p1: &'a [Vec<usize>],
    p2: &'a [Vec<usize>],
    g2: &'a Graph,
    order: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.n {
            return true;
        }
        let u = self.order[depth];
        // Restrict to neighbours of an already-mapped neighbour when possible.
        let anchor = self.order[..depth]
            .iter()
            .copied()
            .find(|&p| self.d1[u * self.n + p] == 1);
        let candidates: Vec<usize> = match anchor {
            Some(p) => self.g2.neighbors(self.map[p]).to_vec(),
            None => (0..self.n).collect(),
        };
        for w in candidates {
            if self.used[w] || self.p1[u] != self.p2[w] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&prev| self.d1[u * self.n + prev] == self.d2[w * self.n + self.map[prev]]);
            if !consistent {
                continue;
            }
            self.map[u] = w;
            self.used[w] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[w] = false;
            self.map[u] = usize::MAX;
        }
        false
    }
}

/// Checks that `f` is a bijection carrying edges to edges and non-edges to non-edges.
pub fn is_isomorphism(g1: &Graph, g2: &Graph, f: &[usize]) -> bool {
    let n = g1.vertex_count();
    if g2.vertex_count() != n || f.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &x in f {
        if x >= n || hit[x] {
            return false;
        }
        hit[x] = true;
    }
    (0..n).all(|a| (a + 1..n).all(|b| g1.has_edge(a, b) == g2.has_edge(f[a], f[b])))
}

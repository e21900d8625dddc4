//! Simple undirected graphs on dense vertex ids `0..v`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite simple undirected graph.
///
/// Vertices are `0..vertex_count()`. Both a sorted neighbour list and a dense
/// adjacency matrix are kept, since the metric code wants cheap `has_edge`
/// and the search code wants cheap neighbour iteration.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicate edges and out-of-range ids.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph(
                "graph needs at least one vertex".into(),
            ));
        }
        let mut g = Graph {
            n,
            adj: vec![Vec::new(); n],
            matrix: vec![false; n * n],
        };
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) has an endpoint outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            if g.matrix[a * n + b] {
                return Err(Error::InvalidGraph(format!("duplicate edge ({a}, {b})")));
            }
            g.matrix[a * n + b] = true;
            g.matrix[b * n + a] = true;
            g.adj[a].push(b);
            g.adj[b].push(a);
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric adjacency predicate.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if adjacent(a, b) {
                    edges.push((a, b));
                }
            }
        }
        Graph::new(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.matrix[a * self.n + b]
    }

    /// The common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * (self.n - 1) / 2
    }

    pub fn is_connected(&self) -> bool {
        self.reachable_from(0, None).iter().all(|&r| r)
    }

    /// Vertices reachable from `start`, optionally with one vertex deleted.
    pub(crate) fn reachable_from(&self, start: usize, removed: Option<usize>) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        if let Some(r) = removed {
            seen[r] = true;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Two-colouring if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut colour: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                let cx = colour[x].unwrap();
                for &y in &self.adj[x] {
                    match colour[y] {
                        None => {
                            colour[y] = Some(!cx);
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Subgraph induced on `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        Graph::from_fn(vertices.len(), |a, b| {
            self.has_edge(vertices[a], vertices[b])
        })
    }

    /// Image of the graph under the vertex permutation `perm` (old id -> new id).
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "permutation has {} entries for {} vertices",
                perm.len(),
                self.n
            )));
        }
        Graph::new(self.n, self.edges().map(|(a, b)| (perm[a], perm[b])))
    }

    /// Contains a complete subgraph on four vertices.
    pub fn contains_k4(&self) -> bool {
        for a in 0..self.n {
            for &b in self.adj[a].iter().filter(|&&b| b > a) {
                for &c in self.adj[b].iter().filter(|&&c| c > b) {
                    if !self.has_edge(a, c) {
                        continue;
                    }
                    if self.adj[c]
                        .iter()
                        .any(|&d| d > c && self.has_edge(a, d) && self.has_edge(b, d))
                    {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Serializes in the text exchange format: `v m` then one `i j` line per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for (a, b) in self.edges() {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }

    /// Parses the text exchange format.
    ///
    /// Blank lines and `#` comments are skipped. The header is `v m`; each of
    /// the following `m` lines is `i j` with `0 <= i < j < v`.
    pub fn parse_text(text: &str) -> Result<Graph> {
        let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("").trim();
            (!content.is_empty()).then_some((i + 1, content))
        });
        let parse_pair = |line: usize, content: &str| -> Result<(usize, usize)> {
            let mut it = content.split_whitespace();
            let mut next = || -> Result<usize> {
                it.next()
                    .ok_or_else(|| Error::Parse {
                        line,
                        message: "expected two integers".into(),
                    })?
                    .parse::<usize>()
                    .map_err(|e| Error::Parse {
                        line,
                        message: e.to_string(),
                    })
            };
            let pair = (next()?, next()?);
            if it.next().is_some() {
                return Err(Error::Parse {
                    line,
                    message: "trailing tokens".into(),
                });
            }
            Ok(pair)
        };

        let (line, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "missing header".into(),
        })?;
        let (n, m) = parse_pair(line, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, content) in lines.by_ref() {
            let (a, b) = parse_pair(line, content)?;
            if !(a < b && b < n) {
                return Err(Error::Parse {
                    line,
                    message: format!("edge ({a}, {b}) violates 0 <= i < j < {n}"),
                });
            }
            edges.push((a, b));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: 1,
                message: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, edges).map_err(|e| Error::Parse {
            line: 1,
            message: e.to_string(),
        })
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::parse_text(s)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("v", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert!(matches!(
            Graph::new(3, [(1, 1)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(Graph::new(0, []).is_err());
    }

    #[test]
    fn text_format_round_trip() {
        let text = "# a square\n4 4\n0 1\n\n1 2 # rung\n2 3\n0 3\n";
        let g: Graph = text.parse().unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(Graph::parse_text(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn text_format_errors() {
        assert!(matches!(
            Graph::parse_text("3 1\n1 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse_text("3 2\n0 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Graph::parse_text("3 x\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(Graph::parse_text(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn bipartite_and_k4() {
        let c6 = Graph::from_fn(6, |a, b| (a + 1) % 6 == b || (b + 1) % 6 == a).unwrap();
        assert!(c6.is_bipartite());
        assert!(!c6.contains_k4());
        let k4 = Graph::from_fn(4, |_, _| true).unwrap();
        assert!(!k4.is_bipartite());
        assert!(k4.contains_k4());
        assert!(k4.is_complete());
    }
}

//! Constructors for the named graphs and graph families.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::cartesian_product;

fn need(family: &str, ok: bool, message: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::bad_params(family, message))
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .collect()
}

pub fn path(v: usize) -> Result<Graph> {
    need("path", v >= 1, "needs at least one vertex")?;
    Graph::new(v, (1..v).map(|i| (i - 1, i)))
}

/// `C_v`; `C_2` is read as the single edge `K_2`.
pub fn cycle(v: usize) -> Result<Graph> {
    need("cycle", v >= 2, "needs at least two vertices")?;
    if v == 2 {
        return path(2);
    }
    Graph::new(v, (0..v).map(|i| (i, (i + 1) % v)))
}

pub fn complete(v: usize) -> Result<Graph> {
    need("complete", v >= 1, "needs at least one vertex")?;
    Graph::from_fn(v, |_, _| true)
}

/// `K_{1,v-1}` with centre 0.
pub fn star(v: usize) -> Result<Graph> {
    need("star", v >= 2, "needs at least two vertices")?;
    Graph::new(v, (1..v).map(|i| (0, i)))
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    need(
        "complete_bipartite",
        a >= 1 && b >= 1,
        "both parts must be nonempty",
    )?;
    Graph::from_fn(a + b, |x, y| (x < a) != (y < a))
}

/// `K_{s×2}`: vertices `2i` and `2i+1` form the non-adjacent pairs.
pub fn cocktail_party(s: usize) -> Result<Graph> {
    need("cocktail_party", s >= 2, "needs at least two parts")?;
    Graph::from_fn(2 * s, |x, y| x / 2 != y / 2)
}

/// Hub 0 joined to the cycle `1..=s`.
pub fn wheel(s: usize) -> Result<Graph> {
    need("wheel", s >= 3, "rim needs at least three vertices")?;
    let rim = (0..s).map(|i| (1 + i, 1 + (i + 1) % s));
    Graph::new(s + 1, (1..=s).map(|i| (0, i)).chain(rim))
}

/// `L_{2s} = P_s × K_2`.
pub fn ladder(s: usize) -> Result<Graph> {
    need("ladder", s >= 1, "needs at least one rung")?;
    cartesian_product(&path(s)?, &path(2)?)
}

/// `C_s × K_2`.
pub fn prism(s: usize) -> Result<Graph> {
    need(
        "prism",
        s >= 3,
        "base polygon needs at least three vertices",
    )?;
    cartesian_product(&cycle(s)?, &path(2)?)
}

/// Outer cycle `0..s`, inner cycle `s..2s`, each `i` joined to inner `i` and `i+1`.
pub fn antiprism(s: usize) -> Result<Graph> {
    need(
        "antiprism",
        s >= 3,
        "base polygon needs at least three vertices",
    )?;
    let mut edges = Vec::new();
    for i in 0..s {
        let j = (i + 1) % s;
        edges.extend([(i, j), (s + i, s + j), (i, s + i), (i, s + j)]);
    }
    Graph::new(2 * s, edges)
}

/// Polygon `0..s` with two apexes `s` and `s+1` joined to all of it.
pub fn bipyramid(s: usize) -> Result<Graph> {
    need(
        "bipyramid",
        s >= 3,
        "base polygon needs at least three vertices",
    )?;
    let mut edges: Vec<_> = (0..s).map(|i| (i, (i + 1) % s)).collect();
    for i in 0..s {
        edges.extend([(i, s), (i, s + 1)]);
    }
    Graph::new(s + 2, edges)
}

fn word_digits(mut w: usize, s: usize, q: usize) -> Vec<usize> {
    let mut digits = Vec::with_capacity(s);
    for _ in 0..s {
        digits.push(w % q);
        w /= q;
    }
    digits
}

/// `H(s,q)` on words `0..q^s`, digit `k` of a word being `(w / q^k) mod q`.
pub fn hamming(s: usize, q: usize) -> Result<Graph> {
    need("hamming", s >= 1 && q >= 2, "needs s >= 1 and q >= 2")?;
    let n = q
        .checked_pow(s as u32)
        .filter(|&n| n <= 1 << 16)
        .ok_or_else(|| Error::bad_params("hamming", "too many vertices"))?;
    let words: Vec<Vec<usize>> = (0..n).map(|w| word_digits(w, s, q)).collect();
    Graph::from_fn(n, |a, b| {
        words[a]
            .iter()
            .zip(&words[b])
            .filter(|(x, y)| x != y)
            .count()
            == 1
    })
}

/// Vertex masks of `J(s,t)` in increasing order.
pub fn johnson_vertices(s: usize, t: usize) -> Vec<u32> {
    subsets_of_size(s, t)
}

/// `J(s,t)`: `t`-subsets of an `s`-set in increasing mask order, adjacent
/// when they share `t-1` elements.
pub fn johnson(s: usize, t: usize) -> Result<Graph> {
    need(
        "johnson",
        t >= 1 && t < s && s <= 20,
        "needs 1 <= t < s <= 20",
    )?;
    let sets = johnson_vertices(s, t);
    Graph::from_fn(sets.len(), |a, b| {
        (sets[a] & sets[b]).count_ones() as usize == t - 1
    })
}

/// Vertex words of `½H(s,2)` in increasing order.
pub fn halfcube_vertices(s: usize) -> Vec<u32> {
    (0u32..1 << s).filter(|w| w.count_ones() % 2 == 0).collect()
}

/// `½H(s,2)`: even-weight words of length `s`, adjacent at Hamming distance 2.
pub fn halfcube(s: usize) -> Result<Graph> {
    need("halfcube", (2..=16).contains(&s), "needs 2 <= s <= 16")?;
    let words = halfcube_vertices(s);
    Graph::from_fn(words.len(), |a, b| (words[a] ^ words[b]).count_ones() == 2)
}

/// Vertex masks of `DO_n`: the `(n-1)/2`-subsets, then the `(n+1)/2`-subsets.
pub fn double_odd_vertices(n: usize) -> Vec<u32> {
    let s = n / 2;
    let mut sets = subsets_of_size(n, s);
    sets.extend(subsets_of_size(n, s + 1));
    sets
}

/// `DO_n` for odd `n`, with containment adjacency.
pub fn double_odd(n: usize) -> Result<Graph> {
    need(
        "double_odd",
        n % 2 == 1 && (3..=15).contains(&n),
        "needs odd 3 <= n <= 15",
    )?;
    let sets = double_odd_vertices(n);
    Graph::from_fn(sets.len(), |a, b| {
        let (x, y) = (sets[a], sets[b]);
        (x ^ y).count_ones() == 1
    })
}

/// Kneser graph on the 2-subsets of a 5-set.
pub fn petersen() -> Graph {
    let sets = subsets_of_size(5, 2);
    Graph::from_fn(10, |a, b| sets[a] & sets[b] == 0).expect("valid construction")
}

/// Cayley graph on `Z4 × Z4` with connection set `±(1,0), ±(0,1), ±(1,1)`;
/// `(a,b)` is vertex `4a + b`.
pub fn shrikhande() -> Graph {
    let diff = |x: usize, y: usize| ((4 + x / 4 - y / 4) % 4, (4 + x % 4 - y % 4) % 4);
    let conn = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)];
    Graph::from_fn(16, |x, y| conn.contains(&diff(x, y))).expect("valid construction")
}

/// Product of `a` Shrikhande graphs and `b` copies of `K_4`.
pub fn doob(a: usize, b: usize) -> Result<Graph> {
    need(
        "doob",
        a >= 1 && 2 * a + b <= 4,
        "needs a >= 1 and at most 256 vertices",
    )?;
    let mut g = shrikhande();
    for _ in 1..a {
        g = cartesian_product(&g, &shrikhande())?;
    }
    for _ in 0..b {
        g = cartesian_product(&g, &complete(4)?)?;
    }
    Ok(g)
}

pub fn tetrahedron() -> Graph {
    complete(4).expect("valid construction")
}

pub fn octahedron() -> Graph {
    antiprism(3).expect("valid construction")
}

pub fn cube() -> Graph {
    hamming(3, 2).expect("valid construction")
}

/// Pentagonal antiprism capped by apex 10 over `0..5` and apex 11 over `5..10`.
pub fn icosahedron() -> Graph {
    let mut edges: Vec<_> = antiprism(5).expect("valid construction").edges().collect();
    edges.extend((0..5).map(|i| (i, 10)));
    edges.extend((5..10).map(|i| (i, 11)));
    Graph::new(12, edges).expect("valid construction")
}

/// Generalized Petersen graph `GP(10,2)`.
pub fn dodecahedron() -> Graph {
    let mut edges = Vec::new();
    for i in 0..10 {
        edges.extend([(i, (i + 1) % 10), (i, 10 + i), (10 + i, 10 + (i + 2) % 10)]);
    }
    Graph::new(20, edges).expect("valid construction")
}

/// Diamond.
pub fn k4_minus_p2() -> Graph {
    Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).expect("valid construction")
}

/// Paw: triangle `0,2,3` with pendant 1 at 3.
pub fn k4_minus_p3() -> Graph {
    Graph::new(4, [(0, 2), (0, 3), (1, 3), (2, 3)]).expect("valid construction")
}

/// Path `0..5` with vertex 5 attached to the middle vertex 2.
pub fn e6_diagram() -> Graph {
    Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]).expect("valid construction")
}

/// Centre 0 with three arms of length two.
pub fn e6_affine_diagram() -> Graph {
    Graph::new(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).expect("valid construction")
}

/// The closed walk `1-2-3-4-5-2`: a 4-cycle on `1..=4` with pendant 0 at 1.
pub fn p123452_pendant() -> Graph {
    Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 1)]).expect("valid construction")
}

/// A 5-cycle on `0..5` with pendant 5 at 0.
pub fn p123452_cycle() -> Graph {
    Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)]).expect("valid construction")
}

/// 9-cycle `0..9` with hub 9 joined to 2, 5 and 8.
pub fn nine_cycle_hub() -> Graph {
    let mut edges: Vec<_> = (0..9).map(|i| (i, (i + 1) % 9)).collect();
    edges.extend([(2, 9), (5, 9), (8, 9)]);
    Graph::new(10, edges).expect("valid construction")
}

/// Hexagon `0..6` plus the triangle on `1, 3, 5`.
pub fn hexagon_triangle() -> Graph {
    let mut edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    edges.extend([(1, 3), (1, 5), (3, 5)]);
    Graph::new(6, edges).expect("valid construction")
}

/// `K_4` with a vertex over each face.
pub fn triakis_tetrahedron() -> Graph {
    let mut edges: Vec<_> = complete(4).expect("valid construction").edges().collect();
    for (k, face) in [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]]
        .iter()
        .enumerate()
    {
        edges.extend(face.iter().map(|&x| (x, 4 + k)));
    }
    Graph::new(8, edges).expect("valid construction")
}

fn hexagonal_prism_with_pyramids(faces: &[usize]) -> Graph {
    let mut edges: Vec<_> = prism(6).expect("valid construction").edges().collect();
    for (k, &f) in faces.iter().enumerate() {
        let apex = 12 + k;
        // Prism vertex (i, side) is 2i + side.
        let g = (f + 1) % 6;
        edges.extend([2 * f, 2 * f + 1, 2 * g, 2 * g + 1].map(|x| (x, apex)));
    }
    Graph::new(12 + faces.len(), edges).expect("valid construction")
}

/// Hexagonal prism with a square pyramid on one lateral face.
pub fn augmented_hexagonal_prism() -> Graph {
    hexagonal_prism_with_pyramids(&[0])
}

/// Hexagonal prism with square pyramids on two opposite lateral faces.
pub fn parabiaugmented_hexagonal_prism() -> Graph {
    hexagonal_prism_with_pyramids(&[0, 3])
}

/// Family identifiers accepted by [`make_graph`], with their parameter counts.
pub const FAMILIES: &[(&str, usize)] = &[
    ("path", 1),
    ("cycle", 1),
    ("complete", 1),
    ("star", 1),
    ("complete_bipartite", 2),
    ("cocktail_party", 1),
    ("wheel", 1),
    ("ladder", 1),
    ("prism", 1),
    ("antiprism", 1),
    ("bipyramid", 1),
    ("hamming", 2),
    ("johnson", 2),
    ("halfcube", 1),
    ("double_odd", 1),
    ("doob", 2),
    ("petersen", 0),
    ("shrikhande", 0),
    ("tetrahedron", 0),
    ("octahedron", 0),
    ("cube", 0),
    ("icosahedron", 0),
    ("dodecahedron", 0),
    ("k4_minus_p2", 0),
    ("k4_minus_p3", 0),
    ("e6_diagram", 0),
    ("e6_affine_diagram", 0),
    ("p123452_pendant", 0),
    ("p123452_cycle", 0),
    ("wheel4", 0),
    ("nine_cycle_hub", 0),
    ("hexagon_triangle", 0),
    ("triakis_tetrahedron", 0),
    ("augmented_hexagonal_prism", 0),
    ("parabiaugmented_hexagonal_prism", 0),
];

pub fn make_graph(family: &str, params: &[usize]) -> Result<Graph> {
    let arity = FAMILIES
        .iter()
        .find(|(name, _)| *name == family)
        .map(|&(_, k)| k)
        .ok_or_else(|| Error::UnknownFamily(family.to_string()))?;
    if params.len() != arity {
        return Err(Error::bad_params(
            family,
            format!("expected {arity} parameter(s), found {}", params.len()),
        ));
    }
    let p = |i: usize| params[i];
    match family {
        "path" => path(p(0)),
        "cycle" => cycle(p(0)),
        "complete" => complete(p(0)),
        "star" => star(p(0)),
        "complete_bipartite" => complete_bipartite(p(0), p(1)),
        "cocktail_party" => cocktail_party(p(0)),
        "wheel" => wheel(p(0)),
        "ladder" => ladder(p(0)),
        "prism" => prism(p(0)),
        "antiprism" => antiprism(p(0)),
        "bipyramid" => bipyramid(p(0)),
        "hamming" => hamming(p(0), p(1)),
        "johnson" => johnson(p(0), p(1)),
        "halfcube" => halfcube(p(0)),
        "double_odd" => double_odd(p(0)),
        "doob" => doob(p(0), p(1)),
        "petersen" => Ok(petersen()),
        "shrikhande" => Ok(shrikhande()),
        "tetrahedron" => Ok(tetrahedron()),
        "octahedron" => Ok(octahedron()),
        "cube" => Ok(cube()),
        "icosahedron" => Ok(icosahedron()),
        "dodecahedron" => Ok(dodecahedron()),
        "k4_minus_p2" => Ok(k4_minus_p2()),
        "k4_minus_p3" => Ok(k4_minus_p3()),
        "e6_diagram" => Ok(e6_diagram()),
        "e6_affine_diagram" => Ok(e6_affine_diagram()),
        "p123452_pendant" => Ok(p123452_pendant()),
        "p123452_cycle" => Ok(p123452_cycle()),
        "wheel4" => wheel(4),
        "nine_cycle_hub" => Ok(nine_cycle_hub()),
        "hexagon_triangle" => Ok(hexagon_triangle()),
        "triakis_tetrahedron" => Ok(triakis_tetrahedron()),
        "augmented_hexagonal_prism" => Ok(augmented_hexagonal_prism()),
        "parabiaugmented_hexagonal_prism" => Ok(parabiaugmented_hexagonal_prism()),
        _ => unreachable!("family table and dispatch agree"),
    }
}

const ALIASES: &[(&str, &str)] = &[
    ("k4_p2", "k4_minus_p2"),
    ("k4_p3", "k4_minus_p3"),
    ("diamond", "k4_minus_p2"),
    ("paw", "k4_minus_p3"),
    ("e6", "e6_diagram"),
    ("e6_affine", "e6_affine_diagram"),
    ("p123452", "p123452_pendant"),
];

/// Resolves a short graph name.
///
/// Accepted forms, tried in order: a family id with no parameters
/// (`petersen`); `family:p1,p2` (`johnson:6,3`); `k` followed by exactly two
/// digits for `K_{a,b}` (`k13`, `k23`); `c<n>`, `p<n>`, `k<n>`, `w<n>` and
/// `star<n>` for cycles, paths, complete graphs, wheels and stars.
pub fn graph_by_name(name: &str) -> Result<Graph> {
    let mut name = name.trim().to_ascii_lowercase().replace('-', "_");
    if let Some(&(_, full)) = ALIASES.iter().find(|(a, _)| *a == name) {
        name = full.to_string();
    }
    if FAMILIES.iter().any(|&(f, k)| f == name && k == 0) {
        return make_graph(&name, &[]);
    }
    if let Some((family, params)) = name.split_once(':') {
        let params = params
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::bad_params(family, e.to_string()))?;
        return make_graph(family, &params);
    }
    let split = name
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| Error::UnknownFamily(name.clone()))?;
    let (prefix, digits) = name.split_at(split);
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::UnknownFamily(name.clone()));
    }
    let n: usize = digits
        .parse()
        .map_err(|_| Error::UnknownFamily(name.clone()))?;
    match prefix {
        "k" if digits.len() == 2 => {
            let b = digits.as_bytes();
            complete_bipartite((b[0] - b'0') as usize, (b[1] - b'0') as usize)
        }
        "k" => complete(n),
        "c" => cycle(n),
        "p" => path(n),
        "w" => wheel(n),
        "star" => star(n),
        _ => Err(Error::UnknownFamily(name.clone())),
    }
}

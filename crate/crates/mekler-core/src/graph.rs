//! Finite simple graphs: niceness verification, cover checking, isomorphism
//! testing, fixture generators and text-format parsing.
//!
//! A graph is *nice* when it has at least two vertices, contains no triangle
//! and no square (4-cycle on distinct vertices), and for every ordered pair
//! of distinct vertices `(v1, v2)` some third vertex is adjacent to `v1` but
//! not to `v2`. Nice graphs are exactly the admissible inputs to the Mekler
//! construction.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// An undirected simple graph on vertices `0..vertex_count`.
///
/// Edges are stored once as ordered pairs `(i, j)` with `i < j`; self-loops
/// are rejected at construction. Values are immutable after construction and
/// safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut set = BTreeSet::new();
        let mut adjacency = vec![BTreeSet::new(); vertex_count];
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {vertex_count} vertices"
                )));
            }
            set.insert((u.min(v), u.max(v)));
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
        Ok(Graph {
            vertex_count,
            edges: set,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Non-edges `{i, j}` with `i < j`, in lexicographic order. These index
    /// the commutator basis of `M(C)`.
    pub fn nonedges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.vertex_count {
            for j in (i + 1)..self.vertex_count {
                if !self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Serializes to the edge-list text format (`n`, then one `u v` per line).
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.vertex_count);
        for (u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

// ---------------------------------------------------------------------------
// Niceness
// ---------------------------------------------------------------------------

/// Witness for a failed niceness check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NicenessViolation {
    /// Fewer than two vertices.
    TooSmall,
    /// No vertex is adjacent to the first but not the second.
    NoSeparator(usize, usize),
    /// Three mutually adjacent vertices.
    Triangle(usize, usize, usize),
    /// A 4-cycle `u-v-w-x-u` on distinct vertices.
    Square(usize, usize, usize, usize),
}

impl fmt::Display for NicenessViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NicenessViolation::TooSmall => write!(f, "fewer than two vertices"),
            NicenessViolation::NoSeparator(a, b) => {
                write!(f, "no vertex is adjacent to {a} but not to {b}")
            }
            NicenessViolation::Triangle(a, b, c) => write!(f, "triangle on {a}, {b}, {c}"),
            NicenessViolation::Square(a, b, c, d) => {
                write!(f, "square {a}-{b}-{c}-{d}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NicenessReport {
    pub verdict: bool,
    pub violation: Option<NicenessViolation>,
}

/// Checks whether `g` is a nice graph.
///
/// The scan order is deterministic so reports are reproducible: the size
/// clause first, then triangles and squares in lexicographic vertex order,
/// then the separator clause over ordered pairs `(v1, v2)` in lexicographic
/// order. The separator clause is checked exactly as stated, for every
/// ordered pair.
pub fn is_nice(g: &Graph) -> NicenessReport {
    let n = g.vertex_count();
    if n < 2 {
        return violation(NicenessViolation::TooSmall);
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if !g.has_edge(u, v) {
                continue;
            }
            for w in (v + 1)..n {
                if g.has_edge(u, w) && g.has_edge(v, w) {
                    return violation(NicenessViolation::Triangle(u, v, w));
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if a == b || a == c || a == d || b == c || b == d || c == d {
                        continue;
                    }
                    if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d) && g.has_edge(d, a)
                    {
                        return violation(NicenessViolation::Square(a, b, c, d));
                    }
                }
            }
        }
    }
    for v1 in 0..n {
        for v2 in 0..n {
            if v1 == v2 {
                continue;
            }
            let separated =
                (0..n).any(|u| u != v1 && u != v2 && g.has_edge(v1, u) && !g.has_edge(v2, u));
            if !separated {
                return violation(NicenessViolation::NoSeparator(v1, v2));
            }
        }
    }
    NicenessReport {
        verdict: true,
        violation: None,
    }
}

fn violation(v: NicenessViolation) -> NicenessReport {
    NicenessReport {
        verdict: false,
        violation: Some(v),
    }
}

// ---------------------------------------------------------------------------
// Covers
// ---------------------------------------------------------------------------

/// Why a vertex breaks the cover condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoverViolation {
    /// An external vertex with neither zero nor exactly one neighbor.
    NotPendantOrIsolated { vertex: usize, degree: usize },
    /// The unique neighbor of an external vertex lies outside the subgraph.
    AttachedOutside { vertex: usize, neighbor: usize },
    /// The attachment point has too few neighbors inside the subgraph.
    LowDegreeAttachment {
        vertex: usize,
        neighbor: usize,
        inner_degree: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub is_cover: bool,
    pub violations: Vec<CoverViolation>,
}

/// Checks that `gamma` is a cover of the subgraph induced on `c_vertices`:
/// every vertex outside `c_vertices` is isolated, or has exactly one
/// neighbor, which lies in `c_vertices` and has at least `neighbor_threshold`
/// neighbors inside `c_vertices`.
///
/// The threshold is the finite surrogate for the "connected to infinitely
/// many elements" clause, which no finite graph can satisfy literally.
pub fn is_cover(
    gamma: &Graph,
    c_vertices: &[usize],
    neighbor_threshold: usize,
) -> Result<CoverReport> {
    if neighbor_threshold == 0 {
        return Err(Error::Input("neighbor_threshold must be positive".into()));
    }
    let mut in_c = vec![false; gamma.vertex_count()];
    for &v in c_vertices {
        if v >= gamma.vertex_count() {
            return Err(Error::InvalidSubset(format!(
                "vertex {v} out of range for {} vertices",
                gamma.vertex_count()
            )));
        }
        if in_c[v] {
            return Err(Error::InvalidSubset(format!("vertex {v} listed twice")));
        }
        in_c[v] = true;
    }

    let inner_degree = |a: usize| gamma.neighbors(a).filter(|&u| in_c[u]).count();

    let mut violations = Vec::new();
    for b in 0..gamma.vertex_count() {
        if in_c[b] {
            continue;
        }
        let nbrs: Vec<usize> = gamma.neighbors(b).collect();
        match nbrs.as_slice() {
            [] => {}
            [a] => {
                if !in_c[*a] {
                    violations.push(CoverViolation::AttachedOutside {
                        vertex: b,
                        neighbor: *a,
                    });
                } else if inner_degree(*a) < neighbor_threshold {
                    violations.push(CoverViolation::LowDegreeAttachment {
                        vertex: b,
                        neighbor: *a,
                        inner_degree: inner_degree(*a),
                    });
                }
            }
            more => violations.push(CoverViolation::NotPendantOrIsolated {
                vertex: b,
                degree: more.len(),
            }),
        }
    }
    Ok(CoverReport {
        is_cover: violations.is_empty(),
        violations,
    })
}

// ---------------------------------------------------------------------------
// Isomorphism
// ---------------------------------------------------------------------------

/// Searches for a vertex bijection `g1 -> g2` preserving edges both ways.
///
/// Plain backtracking with degree pruning; deterministic for fixed inputs.
/// Intended for the small graphs this crate works with.
pub fn graph_isomorphic(g1: &Graph, g2: &Graph) -> Option<Vec<usize>> {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let n = g1.vertex_count();
    let mut deg1: Vec<usize> = (0..n).map(|v| g1.degree(v)).collect();
    let mut deg2: Vec<usize> = (0..n).map(|v| g2.degree(v)).collect();
    deg1.sort_unstable();
    deg2.sort_unstable();
    if deg1 != deg2 {
        return None;
    }

    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if assign(g1, g2, 0, &mut mapping, &mut used) {
        Some(mapping)
    } else {
        None
    }
}

fn assign(
    g1: &Graph,
    g2: &Graph,
    v: usize,
    mapping: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let n = g1.vertex_count();
    if v == n {
        return true;
    }
    for target in 0..n {
        if used[target] || g1.degree(v) != g2.degree(target) {
            continue;
        }
        let consistent = (0..v).all(|w| g1.has_edge(v, w) == g2.has_edge(target, mapping[w]));
        if !consistent {
            continue;
        }
        mapping[v] = target;
        used[target] = true;
        if assign(g1, g2, v + 1, mapping, used) {
            return true;
        }
        mapping[v] = usize::MAX;
        used[target] = false;
    }
    false
}

/// Validates that `mapping` is an isomorphism from `g1` to `g2`.
pub fn is_isomorphism(g1: &Graph, g2: &Graph, mapping: &[usize]) -> bool {
    if mapping.len() != g1.vertex_count() || g1.vertex_count() != g2.vertex_count() {
        return false;
    }
    let mut seen = vec![false; mapping.len()];
    for &m in mapping {
        if m >= mapping.len() || seen[m] {
            return false;
        }
        seen[m] = true;
    }
    for u in 0..g1.vertex_count() {
        for v in (u + 1)..g1.vertex_count() {
            if g1.has_edge(u, v) != g2.has_edge(mapping[u], mapping[v]) {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Fixture generators
// ---------------------------------------------------------------------------

/// The cycle `C_n`. Cycles with `n >= 5` are nice.
pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Input(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// The path `P_n` on `n` vertices.
pub fn make_path(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::Input("path needs at least 1 vertex".into()));
    }
    Graph::new(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1)))
}

/// The complete graph `K_n`.
pub fn make_complete(n: usize) -> Result<Graph> {
    Graph::new(
        n,
        (0..n).flat_map(move |i| ((i + 1)..n).map(move |j| (i, j))),
    )
}

/// The Petersen graph: outer `C5` (0..5), inner pentagram (5..10), spokes.
/// Girth 5 and vertex-transitive; it is nice.
pub fn make_petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + ((i + 2) % 5)));
        edges.push((i, 5 + i));
    }
    Graph::new(10, edges).expect("petersen edges are valid")
}

/// A random graph with no 3- or 4-cycles: candidate edges are shuffled with
/// the seeded generator and added greedily whenever they keep the girth above
/// 4 and respect `degree_bound`. Niceness is *not* guaranteed; run [`is_nice`]
/// on the result.
pub fn random_girth5(n: usize, degree_bound: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Input("graph needs at least 1 vertex".into()));
    }
    if degree_bound == 0 {
        return Err(Error::Input("degree_bound must be positive".into()));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut candidates: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    candidates.shuffle(&mut rng);

    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut edges = Vec::new();
    for (u, v) in candidates {
        if adj[u].len() >= degree_bound || adj[v].len() >= degree_bound {
            continue;
        }
        // adding u-v closes a cycle of length dist(u, v) + 1, so any pair at
        // distance <= 3 would create a 3- or 4-cycle
        if within_distance(&adj, u, v, 3) {
            continue;
        }
        adj[u].insert(v);
        adj[v].insert(u);
        edges.push((u, v));
    }
    Graph::new(n, edges)
}

fn within_distance(adj: &[BTreeSet<usize>], from: usize, to: usize, max: usize) -> bool {
    let mut frontier = vec![from];
    let mut seen = vec![false; adj.len()];
    seen[from] = true;
    for _ in 0..max {
        let mut next = Vec::new();
        for &w in &frontier {
            for &x in &adj[w] {
                if x == to {
                    return true;
                }
                if !seen[x] {
                    seen[x] = true;
                    next.push(x);
                }
            }
        }
        frontier = next;
    }
    false
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Parses the edge-list format: first significant line is the vertex count,
/// then one `u v` pair per line. Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut vertex_count: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if vertex_count.is_none() {
            let n = content.parse::<usize>().map_err(|_| Error::GraphParse {
                line,
                message: format!("expected vertex count, found {content:?}"),
            })?;
            vertex_count = Some(n);
            continue;
        }
        let mut parts = content.split_whitespace();
        let (u, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => {
                let u = a.parse::<usize>().map_err(|_| Error::GraphParse {
                    line,
                    message: format!("bad vertex {a:?}"),
                })?;
                let v = b.parse::<usize>().map_err(|_| Error::GraphParse {
                    line,
                    message: format!("bad vertex {b:?}"),
                })?;
                (u, v)
            }
            _ => {
                return Err(Error::GraphParse {
                    line,
                    message: format!("expected `u v`, found {content:?}"),
                })
            }
        };
        edges.push((u, v, line));
    }
    let n = vertex_count.ok_or(Error::GraphParse {
        line: 0,
        message: "empty input: missing vertex count".into(),
    })?;
    for &(u, v, line) in &edges {
        if u == v {
            return Err(Error::GraphParse {
                line,
                message: format!("self-loop at vertex {u}"),
            });
        }
        if u >= n || v >= n {
            return Err(Error::GraphParse {
                line,
                message: format!("edge ({u}, {v}) out of range for {n} vertices"),
            });
        }
    }
    Graph::new(n, edges.into_iter().map(|(u, v, _)| (u, v)))
}

/// Parses a restricted DOT subset: `graph <name>? { a -- b; c; }` with
/// undirected edges, optional node statements and no attributes. Node names
/// are assigned indices in order of first appearance.
pub fn parse_dot(text: &str) -> Result<Graph> {
    let mut names: Vec<String> = Vec::new();
    let mut index_of = std::collections::HashMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen_open = false;
    let mut seen_close = false;

    let intern = |names: &mut Vec<String>,
                  index_of: &mut std::collections::HashMap<String, usize>,
                  name: &str| {
        *index_of.entry(name.to_string()).or_insert_with(|| {
            names.push(name.to_string());
            names.len() - 1
        })
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut content = raw.split("//").next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if !seen_open {
            let brace = content.find('{').ok_or(Error::GraphParse {
                line,
                message: "expected `graph ... {`".into(),
            })?;
            let header = content[..brace].trim();
            let header = header.strip_prefix("strict").unwrap_or(header).trim_start();
            let header = header.strip_prefix("graph").ok_or(Error::GraphParse {
                line,
                message: "expected `graph ... {`".into(),
            })?;
            if header.split_whitespace().count() > 1 {
                return Err(Error::GraphParse {
                    line,
                    message: "expected at most a graph name before `{`".into(),
                });
            }
            seen_open = true;
            content = content[brace + 1..].trim();
            if content.is_empty() {
                continue;
            }
        }
        if seen_close {
            return Err(Error::GraphParse {
                line,
                message: "content after closing `}`".into(),
            });
        }
        let body = match content.find('}') {
            Some(pos) => {
                if !content[pos + 1..].trim().is_empty() {
                    return Err(Error::GraphParse {
                        line,
                        message: "content after closing `}`".into(),
                    });
                }
                seen_close = true;
                content[..pos].trim()
            }
            None => content,
        };
        for stmt in body.split(';') {
            let stmt = stmt.trim();
            if stmt.is_empty() {
                continue;
            }
            if stmt.contains("->") {
                return Err(Error::GraphParse {
                    line,
                    message: "directed edges are not accepted".into(),
                });
            }
            if stmt.contains('[') || stmt.contains('=') {
                return Err(Error::GraphParse {
                    line,
                    message: "attributes are not accepted".into(),
                });
            }
            let chain: Vec<&str> = stmt.split("--").map(str::trim).collect();
            if chain
                .iter()
                .any(|s| s.is_empty() || s.split_whitespace().count() > 1)
            {
                return Err(Error::GraphParse {
                    line,
                    message: format!("malformed statement {stmt:?}"),
                });
            }
            let ids: Vec<usize> = chain
                .iter()
                .map(|name| intern(&mut names, &mut index_of, name))
                .collect();
            for w in ids.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::GraphParse {
                        line,
                        message: format!("self-loop at {:?}", chain[0]),
                    });
                }
                edges.push((w[0], w[1]));
            }
        }
    }
    if !seen_open || !seen_close {
        return Err(Error::GraphParse {
            line: 0,
            message: "missing `graph { ... }` block".into(),
        });
    }
    Graph::new(names.len(), edges)
}

/// Parses either supported text format, deciding by the leading keyword.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with("graph") || first.starts_with("strict") {
        parse_dot(text)
    } else {
        parse_edge_list(text)
    }
}

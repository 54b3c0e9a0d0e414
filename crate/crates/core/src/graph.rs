// SPDX-License-Identifier: Apache-2.0

//! Simple connected undirected graphs, their Cartesian products and
//! hop-count distances.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Errors raised while building, parsing or querying a [`Graph`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("{family} graph needs at least {min} vertices, got {got}")]
    TooSmall {
        family: &'static str,
        min: usize,
        got: usize,
    },
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("malformed edge line {line}: {text:?}")]
    MalformedEdge { line: usize, text: String },
    #[error("header declares {declared} edges but {found} edge lines were given")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("vertex id {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("vertex subset is empty")]
    EmptySubset,
}

/// A simple, connected, undirected graph on vertices `0..n`.
///
/// Adjacency lists are sorted and symmetric. Every constructor validates
/// connectivity, so a `Graph` value is always connected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, duplicates,
    /// out-of-range ids and disconnected results.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::TooSmall {
                family: "simple",
                min: 1,
                got: 0,
            });
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adj[u].contains(&v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let graph = Graph { adj };
        let components = graph.component_count();
        if components != 1 {
            return Err(GraphError::Disconnected { components });
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    fn component_count(&self) -> usize {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut components = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        components
    }

    /// Breadth-first hop distances from `source`.
    pub fn bfs_distances(&self, source: usize) -> Vec<u32> {
        bfs_within(&self.adj, source, None)
            .into_iter()
            .map(|d| d.expect("graph is connected"))
            .collect()
    }

    /// Renders the graph in the plain-text graph file format.
    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.vertex_count(), edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// BFS over `adj`, optionally restricted to vertices where `allowed` is true.
/// Unreached vertices map to `None`.
fn bfs_within(adj: &[Vec<usize>], source: usize, allowed: Option<&[bool]>) -> Vec<Option<u32>> {
    let mut dist = vec![None; adj.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in &adj[u] {
            if dist[v].is_none() && allowed.is_none_or(|a| a[v]) {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// The path `0 - 1 - ... - (n-1)`.
pub fn build_path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::TooSmall {
            family: "path",
            min: 1,
            got: n,
        });
    }
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges)
}

pub fn build_cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::TooSmall {
            family: "cycle",
            min: 3,
            got: n,
        });
    }
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn build_complete(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::TooSmall {
            family: "complete",
            min: 1,
            got: n,
        });
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Star with centre 0 and leaves `1..n`.
pub fn build_star(n: usize) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(GraphError::TooSmall {
            family: "star",
            min: 2,
            got: n,
        });
    }
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    Graph::from_edges(n, &edges)
}

/// Cartesian product `G □ H`; vertex `(g, h)` gets id `g * |H| + h`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.vertex_count();
    let n = g.vertex_count() * nh;
    let mut adj = vec![Vec::new(); n];
    for gv in 0..g.vertex_count() {
        for hv in 0..nh {
            let id = gv * nh + hv;
            let list = &mut adj[id];
            for &gw in g.neighbors(gv) {
                list.push(gw * nh + hv);
            }
            for &hw in h.neighbors(hv) {
                list.push(gv * nh + hw);
            }
            list.sort_unstable();
        }
    }
    // A product of connected graphs is connected.
    Graph { adj }
}

/// Copies of `G` inside `G □ H`: entry `h` lists the vertices `(g, h)` for
/// every `g`, where `|G| = left_order` and `|H| = right_order`.
pub fn product_layers(left_order: usize, right_order: usize) -> Vec<Vec<usize>> {
    (0..right_order)
        .map(|h| (0..left_order).map(|g| g * right_order + h).collect())
        .collect()
}

/// Row-major addressing of the grid `P_m □ P_n` with 1-based `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridCoordinates {
    pub rows: usize,
    pub cols: usize,
}

impl GridCoordinates {
    pub fn new(rows: usize, cols: usize) -> Self {
        GridCoordinates { rows, cols }
    }

    pub fn vertex_count(&self) -> usize {
        self.rows * self.cols
    }

    /// Vertex id of `v_{i,j}`. Panics when `(i, j)` lies outside the grid.
    pub fn vertex(&self, i: usize, j: usize) -> usize {
        assert!(
            (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j),
            "grid coordinate ({i},{j}) outside {}x{}",
            self.rows,
            self.cols
        );
        (i - 1) * self.cols + (j - 1)
    }

    /// 1-based `(i, j)` of vertex `v`.
    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v / self.cols + 1, v % self.cols + 1)
    }

    /// Vertices of row `i`, left to right.
    pub fn row(&self, i: usize) -> Vec<usize> {
        (1..=self.cols).map(|j| self.vertex(i, j)).collect()
    }

    /// Vertices of column `j`, top to bottom.
    pub fn column(&self, j: usize) -> Vec<usize> {
        (1..=self.rows).map(|i| self.vertex(i, j)).collect()
    }

    /// Manhattan distance between two grid vertices.
    pub fn distance(&self, u: usize, v: usize) -> u32 {
        let (i, j) = self.coords(u);
        let (l, k) = self.coords(v);
        (i.abs_diff(l) + j.abs_diff(k)) as u32
    }
}

/// `P_m □ P_n` together with its coordinate map.
pub fn build_grid(rows: usize, cols: usize) -> Result<(Graph, GridCoordinates), GraphError> {
    let g = cartesian_product(&build_path(rows)?, &build_path(cols)?);
    Ok((g, GridCoordinates::new(rows, cols)))
}

/// All-pairs hop distances of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }
}

/// Repeated BFS, one source at a time.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.vertex_count();
    let mut dist = Vec::with_capacity(n * n);
    for s in 0..n {
        dist.extend(g.bfs_distances(s));
    }
    DistanceMatrix { n, dist }
}

/// Induced subgraph on `vertices` (deduplicated, in ascending order).
///
/// Returns the subgraph relabelled to `0..len` and the map from new ids back
/// to ids of `g`; fails when the induced subgraph is disconnected.
pub fn induced_subgraph(g: &Graph, vertices: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
    let map = normalize_subset(g, vertices)?;
    let mut index = vec![usize::MAX; g.vertex_count()];
    for (new, &old) in map.iter().enumerate() {
        index[old] = new;
    }
    let mut edges = Vec::new();
    for (new_u, &u) in map.iter().enumerate() {
        for &v in g.neighbors(u) {
            let new_v = index[v];
            if new_v != usize::MAX && new_v > new_u {
                edges.push((new_u, new_v));
            }
        }
    }
    Ok((Graph::from_edges(map.len(), &edges)?, map))
}

fn normalize_subset(g: &Graph, vertices: &[usize]) -> Result<Vec<usize>, GraphError> {
    if vertices.is_empty() {
        return Err(GraphError::EmptySubset);
    }
    let n = g.vertex_count();
    if let Some(&bad) = vertices.iter().find(|&&v| v >= n) {
        return Err(GraphError::VertexOutOfRange { vertex: bad, n });
    }
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(sorted)
}

/// True iff the subgraph induced by `vertices` is connected and preserves
/// every pairwise distance of `g`.
pub fn is_isometric_subgraph(
    g: &Graph,
    dist: &DistanceMatrix,
    vertices: &[usize],
) -> Result<bool, GraphError> {
    let subset = normalize_subset(g, vertices)?;
    let mut allowed = vec![false; g.vertex_count()];
    for &v in &subset {
        allowed[v] = true;
    }
    for &s in &subset {
        let inner = bfs_within(&g.adj, s, Some(&allowed));
        for &t in &subset {
            if inner[t] != Some(dist.get(s, t)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All automorphisms of `g` as vertex permutations (`p[v]` is the image of
/// `v`), or `None` once more than `limit` have been found.
pub fn automorphisms(g: &Graph, limit: usize) -> Option<Vec<Vec<usize>>> {
    fn extend(
        g: &Graph,
        image: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> bool {
        let v = image.len();
        if v == g.vertex_count() {
            out.push(image.clone());
            return out.len() <= limit;
        }
        for w in 0..g.vertex_count() {
            if used[w] || g.neighbors(w).len() != g.neighbors(v).len() {
                continue;
            }
            if (0..v).any(|u| g.has_edge(u, v) != g.has_edge(image[u], w)) {
                continue;
            }
            used[w] = true;
            image.push(w);
            let more = extend(g, image, used, out, limit);
            image.pop();
            used[w] = false;
            if !more {
                return false;
            }
        }
        true
    }
    let mut out = Vec::new();
    let mut used = vec![false; g.vertex_count()];
    extend(g, &mut Vec::new(), &mut used, &mut out, limit).then_some(out)
}

/// Parses the graph file format: a `"<n> <m>"` header followed by exactly
/// `m` lines `"<u> <v>"`. Blank lines and lines starting with `#` are skipped.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (_, header) = lines
        .next()
        .ok_or_else(|| GraphError::MalformedHeader("missing header line".into()))?;
    let fields: Vec<_> = header.split_whitespace().collect();
    let parsed: Option<Vec<usize>> = fields.iter().map(|f| f.parse().ok()).collect();
    let (n, m) = match parsed.as_deref() {
        Some(&[n, m]) => (n, m),
        _ => return Err(GraphError::MalformedHeader(header.to_string())),
    };
    if n == 0 {
        return Err(GraphError::MalformedHeader(format!(
            "{header} (vertex count must be positive)"
        )));
    }

    let mut edges = Vec::with_capacity(m);
    let mut found = 0;
    for (line, text) in lines {
        found += 1;
        let parsed: Option<Vec<usize>> = text.split_whitespace().map(|f| f.parse().ok()).collect();
        match parsed.as_deref() {
            Some(&[u, v]) => edges.push((u, v)),
            _ => {
                return Err(GraphError::MalformedEdge {
                    line,
                    text: text.to_string(),
                })
            }
        }
    }
    if found != m {
        return Err(GraphError::EdgeCountMismatch { declared: m, found });
    }
    Graph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn automorphism_group_orders() {
        let order = |g: &Graph| automorphisms(g, 1000).unwrap().len();
        assert_eq!(order(&build_path(5).unwrap()), 2);
        assert_eq!(order(&build_cycle(5).unwrap()), 10);
        assert_eq!(order(&build_star(4).unwrap()), 6);
        assert_eq!(order(&build_grid(2, 3).unwrap().0), 4);
        assert_eq!(order(&build_grid(3, 3).unwrap().0), 8);
        assert_eq!(order(&build_complete(5).unwrap()), 120);
        assert!(automorphisms(&build_complete(6).unwrap(), 100).is_none());
    }

    #[test]
    fn path_examples() {
        assert!(build_path(0).is_err());
        let p1 = build_path(1).unwrap();
        assert_eq!((p1.vertex_count(), p1.edge_count()), (1, 0));

        let p4 = build_path(4).unwrap();
        assert_eq!(p4.edges(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(all_pairs_distances(&p4).get(0, 3), 3);
        assert_eq!(all_pairs_distances(&build_path(5).unwrap()).diameter(), 4);
    }

    #[test]
    fn family_examples() {
        let c3 = all_pairs_distances(&build_cycle(3).unwrap());
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(c3.get(u, v), u32::from(u != v));
            }
        }
        assert_eq!(all_pairs_distances(&build_star(4).unwrap()).get(1, 3), 2);
        assert_eq!(build_complete(5).unwrap().edge_count(), 10);
        assert_eq!(all_pairs_distances(&build_cycle(6).unwrap()).get(0, 3), 3);

        assert!(build_cycle(2).is_err());
        assert!(build_star(1).is_err());
        assert!(build_complete(0).is_err());
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_graph("2 1\n0 1").unwrap(), build_path(2).unwrap());
        assert_eq!(
            parse_graph("3 2\n0 1\n1 2").unwrap(),
            build_path(3).unwrap()
        );
        assert_eq!(
            parse_graph("3 1\n0 1"),
            Err(GraphError::Disconnected { components: 2 })
        );
        assert_eq!(
            parse_graph("# comment\n1 0\n").unwrap(),
            build_path(1).unwrap()
        );
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert!(matches!(
            parse_graph(""),
            Err(GraphError::MalformedHeader(_))
        ));
        assert!(matches!(
            parse_graph("3"),
            Err(GraphError::MalformedHeader(_))
        ));
        assert!(matches!(
            parse_graph("x 1"),
            Err(GraphError::MalformedHeader(_))
        ));
        assert!(matches!(
            parse_graph("0 0"),
            Err(GraphError::MalformedHeader(_))
        ));
        assert!(matches!(
            parse_graph("2 1\n0 one"),
            Err(GraphError::MalformedEdge { line: 2, .. })
        ));
        assert_eq!(
            parse_graph("2 1\n0 2"),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(
            parse_graph("2 2\n0 1\n1 0"),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(parse_graph("2 2\n0 1\n1 1"), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            parse_graph("3 2\n0 1"),
            Err(GraphError::EdgeCountMismatch {
                declared: 2,
                found: 1
            })
        );
    }

    #[test]
    fn text_round_trip() {
        let g = cartesian_product(&build_star(4).unwrap(), &build_cycle(3).unwrap());
        assert_eq!(parse_graph(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn product_examples() {
        let p2 = build_path(2).unwrap();
        let sq = cartesian_product(&p2, &p2);
        assert_eq!((sq.vertex_count(), sq.edge_count()), (4, 4));
        // 4-cycle: connected and 2-regular
        assert!((0..4).all(|v| sq.neighbors(v).len() == 2));

        let (g23, _) = build_grid(2, 3).unwrap();
        assert_eq!((g23.vertex_count(), g23.edge_count()), (6, 7));
    }

    #[test]
    fn grid_distance_formula() {
        let (g, coords) = build_grid(3, 3).unwrap();
        let d = all_pairs_distances(&g);
        assert_eq!(d.get(coords.vertex(1, 1), coords.vertex(3, 3)), 4);
    }

    #[test]
    fn isometric_examples() {
        let (g, coords) = build_grid(2, 5).unwrap();
        let d = all_pairs_distances(&g);
        let first_three: Vec<_> = (1..=3).flat_map(|j| coords.column(j)).collect();
        assert!(is_isometric_subgraph(&g, &d, &first_three).unwrap());
        assert!(is_isometric_subgraph(&g, &d, &coords.row(2)).unwrap());

        let p3 = build_path(3).unwrap();
        let d3 = all_pairs_distances(&p3);
        assert!(!is_isometric_subgraph(&p3, &d3, &[0, 2]).unwrap());
        assert_eq!(
            is_isometric_subgraph(&p3, &d3, &[]),
            Err(GraphError::EmptySubset)
        );

        // connected but not distance preserving: a 5-cycle minus one vertex
        let c5 = build_cycle(5).unwrap();
        let d5 = all_pairs_distances(&c5);
        assert!(!is_isometric_subgraph(&c5, &d5, &[0, 1, 2, 3]).unwrap());
    }

    #[test]
    fn induced_subgraph_relabels() {
        let (g, coords) = build_grid(3, 3).unwrap();
        let (row, map) = induced_subgraph(&g, &coords.row(2)).unwrap();
        assert_eq!(map, vec![3, 4, 5]);
        assert_eq!(row, build_path(3).unwrap());
        assert!(induced_subgraph(&g, &[0, 8]).is_err());
    }
}

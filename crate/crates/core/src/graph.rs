//! Simple undirected graphs with contiguous vertex ids.
//!
//! Vertices are `0..n`. External labels only matter at the parse/print
//! boundary; every algorithm in the crate works on ids. Each vertex keeps a
//! sorted neighbor list and a bitset row so adjacency tests are O(1).

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::fmt;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GraphError;

#[derive(Clone)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    rows: Vec<FixedBitSet>,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edge_count: usize,
    key: u64,
}

/// An induced claw: `center` is adjacent to all three leaves, the leaves are
/// pairwise non-adjacent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClawWitness {
    pub center: usize,
    pub leaves: [usize; 3],
}

impl Graph {
    /// Builds a graph on `0..n` with decimal labels.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let labels = (0..n).map(|v| v.to_string()).collect();
        Self::with_labels(labels, edges)
    }

    /// Builds a graph whose vertex `v` carries `labels[v]`.
    pub fn with_labels(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (v, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), v).is_some() {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        let mut adj = vec![Vec::new(); n];
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { line: None, label: labels[u].clone() });
            }
            if rows[u].contains(v) {
                return Err(GraphError::DuplicateEdge {
                    line: None,
                    u: labels[u].clone(),
                    v: labels[v].clone(),
                });
            }
            rows[u].insert(v);
            rows[v].insert(u);
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let mut hasher = DefaultHasher::new();
        adj.hash(&mut hasher);
        let key = hasher.finish();
        Ok(Graph { adj, rows, labels, index, edge_count: edges.len(), key })
    }

    /// Structural fingerprint; independent sets remember the key of the
    /// graph they were validated against.
    pub fn key(&self) -> u64 {
        self.key
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Bitset of the open neighborhood of `v`.
    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    /// All edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Resolves a list of labels to ids.
    pub fn vertices_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>, GraphError> {
        labels
            .iter()
            .map(|l| self.vertex(l.as_ref()).ok_or_else(|| GraphError::UnknownLabel(l.as_ref().to_string())))
            .collect()
    }

    /// Returns the first edge (in sorted order) inside `vs`, if any.
    pub fn edge_within(&self, vs: &[usize]) -> Option<(usize, usize)> {
        let mut sorted = vs.to_vec();
        sorted.sort_unstable();
        for (k, &u) in sorted.iter().enumerate() {
            for &v in &sorted[k + 1..] {
                if self.adjacent(u, v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// The subgraph induced by `vs`, plus the map from local ids to ids of
    /// `self`. Local ids follow the ascending order of `vs`; labels are kept.
    pub fn induced_subgraph(&self, vs: &[usize]) -> (Graph, Vec<usize>) {
        let mut map = vs.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in map.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX && j > i {
                    edges.push((i, j));
                }
            }
        }
        let labels = map.iter().map(|&v| self.labels[v].clone()).collect();
        let g = Graph::with_labels(labels, &edges).expect("induced subgraph of a simple graph is simple");
        (g, map)
    }

    /// BFS distances from `src`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// A shortest path from `src` to `dst` following BFS parent order
    /// (neighbors scanned in ascending id order).
    pub fn shortest_path(&self, src: usize, dst: usize) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.n()];
        parent[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            if u == dst {
                break;
            }
            for &w in &self.adj[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if parent[dst] == usize::MAX {
            return None;
        }
        let mut path = vec![dst];
        let mut cur = dst;
        while cur != src {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// Serializes to the edge-list text format, edges sorted by id.
    ///
    /// Isolated vertices are written as single-label lines after a
    /// `vertices: N` header so that parsing the output recovers every label.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let isolated: Vec<usize> = (0..self.n()).filter(|&v| self.adj[v].is_empty()).collect();
        if !isolated.is_empty() {
            out.push_str(&format!("vertices: {}\n", self.n()));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", self.labels[u], self.labels[v]));
        }
        for v in isolated {
            out.push_str(&format!("{}\n", self.labels[v]));
        }
        out
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj && self.labels == other.labels
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Parses the edge-list format.
///
/// One edge `u v` per line; `#` starts a comment line. An optional header
/// `vertices: N` declares the total vertex count: vertices missing from the
/// edge list are appended with their decimal id as label. A line holding a
/// single label declares that vertex (used for isolated vertices). Ids are
/// assigned in order of first appearance.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut declared: Option<usize> = None;

    fn intern(l: &str, labels: &mut Vec<String>, index: &mut HashMap<String, usize>) -> usize {
        if let Some(&v) = index.get(l) {
            return v;
        }
        let v = labels.len();
        labels.push(l.to_string());
        index.insert(l.to_string(), v);
        v
    }

    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vertices:") {
            let count = rest
                .trim()
                .parse::<usize>()
                .map_err(|_| GraphError::Malformed { line: line_no, content: raw.to_string() })?;
            if declared.replace(count).is_some() {
                return Err(GraphError::Malformed { line: line_no, content: raw.to_string() });
            }
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [single] => {
                intern(single, &mut labels, &mut index);
            }
            [a, b] => {
                if a == b {
                    return Err(GraphError::SelfLoop { line: Some(line_no), label: a.to_string() });
                }
                let u = intern(a, &mut labels, &mut index);
                let v = intern(b, &mut labels, &mut index);
                let key = (u.min(v), u.max(v));
                if !seen.insert(key) {
                    return Err(GraphError::DuplicateEdge {
                        line: Some(line_no),
                        u: a.to_string(),
                        v: b.to_string(),
                    });
                }
                edges.push((u, v));
            }
            _ => return Err(GraphError::Malformed { line: line_no, content: raw.to_string() }),
        }
    }

    if let Some(count) = declared {
        if labels.len() > count {
            return Err(GraphError::HeaderTooSmall { declared: count, found: labels.len() });
        }
        for id in labels.len()..count {
            let l = id.to_string();
            if index.contains_key(&l) {
                return Err(GraphError::DuplicateLabel(l));
            }
            intern(&l, &mut labels, &mut index);
        }
    }
    Graph::with_labels(labels, &edges)
}

/// Finds an induced claw, scanning centers by ascending id and leaf triples
/// lexicographically.
pub fn find_claw(g: &Graph) -> Option<ClawWitness> {
    for center in 0..g.n() {
        let nb = g.neighbors(center);
        for (i, &a) in nb.iter().enumerate() {
            for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                if g.adjacent(a, b) {
                    continue;
                }
                for &c in &nb[j + 1..] {
                    if !g.adjacent(a, c) && !g.adjacent(b, c) {
                        return Some(ClawWitness { center, leaves: [a, b, c] });
                    }
                }
            }
        }
    }
    None
}

pub fn is_claw_free(g: &Graph) -> bool {
    find_claw(g).is_none()
}

/// Shortest-path distance; `None` when `u` and `v` lie in different
/// components.
pub fn distance(g: &Graph, u: usize, v: usize) -> Option<usize> {
    g.bfs_distances(u)[v]
}

pub fn diameter(g: &Graph) -> Result<usize, GraphError> {
    let mut best = 0;
    for v in 0..g.n() {
        for d in g.bfs_distances(v) {
            match d {
                Some(d) => best = best.max(d),
                None => return Err(GraphError::Disconnected),
            }
        }
    }
    Ok(best)
}

/// `result[i]` holds the vertices outside `s` with exactly `i` neighbors in
/// `s`. The vector always has at least one entry (`N_0`).
pub fn neighborhood_count_sets(g: &Graph, s: &[usize]) -> Vec<Vec<usize>> {
    let mut in_s = vec![false; g.n()];
    for &v in s {
        in_s[v] = true;
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new()];
    for v in 0..g.n() {
        if in_s[v] {
            continue;
        }
        let count = g.neighbors(v).iter().filter(|&&w| in_s[w]).count();
        if classes.len() <= count {
            classes.resize(count + 1, Vec::new());
        }
        classes[count].push(v);
    }
    classes
}

/// The line graph. Vertex `k` stands for the `k`-th edge of `g` in sorted
/// order and is labelled `"u-v"` with the source labels.
pub fn line_graph(g: &Graph) -> Graph {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let labels = edges
        .iter()
        .map(|&(u, v)| format!("{}-{}", g.label(u), g.label(v)))
        .collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (k, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(k);
        incident[v].push(k);
    }
    let mut line_edges = HashSet::new();
    for list in &incident {
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                line_edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    let mut line_edges: Vec<_> = line_edges.into_iter().collect();
    line_edges.sort_unstable();
    Graph::with_labels(labels, &line_edges).expect("line graph is simple")
}

/// Random claw-free graph: `G(n, density)` from a seeded ChaCha stream,
/// then repeatedly delete the edge from the center of the first claw found
/// to its first leaf until no claw is left.
pub fn gen_claw_free(n: usize, density: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = density.clamp(0.0, 1.0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    repair_claws(n, edges, |_, _| true)
}

/// Deletes edges until the graph is claw-free. Only edges accepted by
/// `removable` are ever deleted; for every claw the first removable
/// center-leaf edge goes. Panics if some claw has no removable edge.
pub(crate) fn repair_claws(
    n: usize,
    mut edges: Vec<(usize, usize)>,
    removable: impl Fn(usize, usize) -> bool,
) -> Graph {
    loop {
        let g = Graph::from_edges(n, &edges).expect("generator edges are simple");
        let Some(claw) = find_claw(&g) else {
            return g;
        };
        let leaf = claw
            .leaves
            .iter()
            .copied()
            .find(|&l| removable(claw.center, l))
            .expect("every claw has a removable edge");
        let (a, b) = (claw.center.min(leaf), claw.center.max(leaf));
        edges.retain(|&(u, v)| (u.min(v), u.max(v)) != (a, b));
    }
}

/// Vertex sets of the connected components, each sorted, ordered by their
/// smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parse_path_assigns_ids_by_first_appearance() {
        let g = parse_graph("a b\nb c").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.vertex("a"), Some(0));
        assert_eq!(g.vertex("b"), Some(1));
        assert_eq!(g.vertex("c"), Some(2));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn parse_header_only() {
        let g = parse_graph("vertices: 1\n").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.label(0), "0");
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(parse_graph("a b\nb a"), Err(GraphError::DuplicateEdge { line: Some(2), .. })));
        assert!(matches!(parse_graph("a a"), Err(GraphError::SelfLoop { line: Some(1), .. })));
        assert!(matches!(
            parse_graph("# ok\na b\na b c"),
            Err(GraphError::Malformed { line: 3, .. })
        ));
        assert!(matches!(parse_graph("vertices: 1\na b"), Err(GraphError::HeaderTooSmall { .. })));
    }

    #[test]
    fn fig1_shape() {
        let g = fixtures::fig1();
        assert_eq!(g.n(), 13);
        assert_eq!(g.edge_count(), 27);
        assert!(find_claw(&g).is_none());
        assert_eq!(connected_components(&g).len(), 1);
    }

    #[test]
    fn claw_detection() {
        let claw = fixtures::claw();
        let w = find_claw(&claw).unwrap();
        assert_eq!(claw.label(w.center), "x");
        let leaves: Vec<&str> = w.leaves.iter().map(|&l| claw.label(l)).collect();
        assert_eq!(leaves, ["a", "b", "c"]);
        assert!(find_claw(&fixtures::cycle(6)).is_none());
    }

    #[test]
    fn distances_and_diameter() {
        let p4 = fixtures::path(4);
        let c6 = fixtures::cycle(6);
        assert_eq!(distance(&p4, 0, 3), Some(3));
        assert_eq!(distance(&c6, 0, 3), Some(3));
        assert_eq!(diameter(&p4).unwrap(), 3);
        assert_eq!(diameter(&c6).unwrap(), 3);
        let two = Graph::from_edges(2, &[]).unwrap();
        assert_eq!(distance(&two, 0, 1), None);
        assert!(matches!(diameter(&two), Err(GraphError::Disconnected)));
    }

    #[test]
    fn fig1_distances_match_floyd_warshall() {
        let g = fixtures::fig1();
        let n = g.n();
        let inf = usize::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for (v, row) in d.iter_mut().enumerate() {
            row[v] = 0;
        }
        for (u, v) in g.edges() {
            d[u][v] = 1;
            d[v][u] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        let b = g.vertex("b").unwrap();
        let c5 = g.vertex("c5").unwrap();
        assert_eq!(distance(&g, b, c5), Some(d[b][c5]));
        let diam = d.iter().flatten().copied().max().unwrap();
        assert_eq!(diameter(&g).unwrap(), diam);
    }

    #[test]
    fn neighborhood_classes() {
        let g = fixtures::fig1();
        let s = g.vertices_of(&["c1", "c3", "c5", "c7"]).unwrap();
        let classes = neighborhood_count_sets(&g, &s);
        let names = |vs: &[usize]| {
            let mut v: Vec<String> = vs.iter().map(|&x| g.label(x).to_string()).collect();
            v.sort();
            v
        };
        assert!(classes[0].is_empty());
        assert_eq!(names(&classes[1]), ["b"]);
        assert_eq!(names(&classes[2]), ["c0", "c2", "c4", "c6", "u1", "u2", "u3", "u4"]);

        let p3 = fixtures::p3();
        let classes = neighborhood_count_sets(&p3, &[1]);
        assert!(classes[0].is_empty());
        assert_eq!(classes[1], vec![0, 2]);

        let empty = neighborhood_count_sets(&g, &[]);
        assert_eq!(empty.len(), 1);
        assert_eq!(empty[0], (0..g.n()).collect::<Vec<_>>());
    }

    #[test]
    fn line_graphs() {
        let lp3 = line_graph(&fixtures::p3());
        assert_eq!(lp3.n(), 2);
        assert_eq!(lp3.edge_count(), 1);
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let lt = line_graph(&tri);
        assert_eq!((lt.n(), lt.edge_count()), (3, 3));
        let lc = line_graph(&fixtures::claw());
        assert_eq!((lc.n(), lc.edge_count()), (3, 3));
        assert_eq!(lc.label(0), "x-a");
    }

    #[test]
    fn generator_basics() {
        let g = gen_claw_free(1, 0.5, 3);
        assert_eq!((g.n(), g.edge_count()), (1, 0));
        let a = gen_claw_free(20, 0.3, 11);
        let b = gen_claw_free(20, 0.3, 11);
        assert_eq!(a, b);
        assert_eq!(a.to_edge_list(), b.to_edge_list());
        assert!(find_claw(&a).is_none());
    }

    #[test]
    fn components() {
        let g = Graph::from_edges(9, &[(0, 1), (1, 2), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 3)]).unwrap();
        let sizes: Vec<usize> = connected_components(&g).iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![3, 6]);
        let edgeless = Graph::from_edges(3, &[]).unwrap();
        assert_eq!(connected_components(&edgeless), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn printer_round_trip_keeps_isolated_labels() {
        let g = parse_graph("p q\nq r\nlonely").unwrap();
        let h = parse_graph(&g.to_edge_list()).unwrap();
        assert_eq!(h.n(), 4);
        assert!(h.vertex("lonely").is_some());
        assert!(h.adjacent(h.vertex("p").unwrap(), h.vertex("q").unwrap()));
    }
}

//! Simple undirected graphs and the generic operations the constructions
//! rely on: squares, subdivisions, total graphs, induced subgraphs and a few
//! structural predicates.
//!
//! Vertices are dense indices `0..vertex_count`. Neighbor lists are kept
//! sorted, so two graphs compare equal exactly when they have the same
//! labeled edge set.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An immutable simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

/// On-disk form: `{"n": <int>, "edges": [[u, v], ...]}` with `u < v`,
/// sorted lexicographically.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(value: GraphJson) -> Result<Self> {
        Graph::new(value.n, value.edges.iter().map(|&[u, v]| (u, v)))
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            n: g.vertex_count(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicates and reversed pairs
    /// collapse to a single edge.
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: x,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Self::from_unsorted(adjacency))
    }

    fn from_unsorted(mut adjacency: Vec<Vec<usize>>) -> Self {
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Graph { adjacency }
    }

    pub fn empty(vertex_count: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); vertex_count],
        }
    }

    pub fn complete(m: usize) -> Self {
        let edges = (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v)));
        Graph::new(m, edges).expect("valid complete graph")
    }

    pub fn path(m: usize) -> Self {
        Graph::new(m, (1..m).map(|v| (v - 1, v))).expect("valid path")
    }

    /// Cycle `0-1-...-(m-1)-0`. Requires `m >= 3`.
    pub fn cycle(m: usize) -> Self {
        assert!(m >= 3, "a cycle needs at least 3 vertices");
        Graph::new(m, (0..m).map(|v| (v, (v + 1) % m))).expect("valid cycle")
    }

    /// Star with center `0` and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Graph::complete_multipartite(&[a, b])
    }

    /// Complete multipartite graph with the given part sizes; parts occupy
    /// consecutive index ranges.
    pub fn complete_multipartite(part_sizes: &[usize]) -> Self {
        let mut part_of = Vec::new();
        for (p, &size) in part_sizes.iter().enumerate() {
            part_of.extend(std::iter::repeat(p).take(size));
        }
        let n = part_of.len();
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| part_of[u] != part_of[v]);
        Graph::new(n, edges).expect("valid multipartite graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// Degree multiset as `degree -> number of vertices`.
    pub fn degree_profile(&self) -> BTreeMap<usize, usize> {
        let mut profile = BTreeMap::new();
        for list in &self.adjacency {
            *profile.entry(list.len()).or_insert(0) += 1;
        }
        profile
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Common neighbors of `u` and `v`, ascending.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Vec<usize> {
        sorted_intersection(&self.adjacency[u], &self.adjacency[v])
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Vertices at distance at most 2 become adjacent.
    pub fn square(&self) -> Graph {
        let n = self.vertex_count();
        let mut stamp = vec![usize::MAX; n];
        let mut adjacency = Vec::with_capacity(n);
        for u in 0..n {
            stamp[u] = u;
            let mut row = Vec::new();
            for &w in &self.adjacency[u] {
                if stamp[w] != u {
                    stamp[w] = u;
                    row.push(w);
                }
                for &x in &self.adjacency[w] {
                    if stamp[x] != u {
                        stamp[x] = u;
                        row.push(x);
                    }
                }
            }
            row.sort_unstable();
            adjacency.push(row);
        }
        Graph { adjacency }
    }

    /// Replaces every edge by a path of length two through a new vertex.
    /// Original vertices keep their indices; the vertex for the `e`-th edge
    /// of [`Graph::edges`] gets index `vertex_count + e`.
    pub fn subdivide(&self) -> Graph {
        let n = self.vertex_count();
        let edges = self
            .edges()
            .enumerate()
            .flat_map(|(e, (u, v))| [(u, n + e), (v, n + e)]);
        Graph::new(n + self.edge_count(), edges).expect("subdivision is simple")
    }

    /// Total graph on `V ⊎ E`, indexed like [`Graph::subdivide`].
    pub fn total_graph(&self) -> Graph {
        let n = self.vertex_count();
        let edge_list: Vec<(usize, usize)> = self.edges().collect();
        let mut edge_id: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (e, &uv) in edge_list.iter().enumerate() {
            edge_id.insert(uv, n + e);
        }
        let key = |a: usize, b: usize| edge_id[&(a.min(b), a.max(b))];

        let mut edges = Vec::new();
        for (e, &(u, v)) in edge_list.iter().enumerate() {
            // vertex-vertex and vertex-edge incidences
            edges.push((u, v));
            edges.push((u, n + e));
            edges.push((v, n + e));
        }
        // edge-edge: two edges sharing an endpoint
        for x in 0..n {
            let around = &self.adjacency[x];
            for (i, &a) in around.iter().enumerate() {
                for &b in &around[i + 1..] {
                    edges.push((key(x, a), key(x, b)));
                }
            }
        }
        Graph::new(n + edge_list.len(), edges).expect("total graph is simple")
    }

    /// Subgraph induced by `s`, reindexed densely in ascending order, with
    /// the old-to-new index map.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<Option<usize>>) {
        let mut map = vec![None; self.vertex_count()];
        for (new, &old) in s.iter().enumerate() {
            map[old] = Some(new);
        }
        let adjacency = s
            .iter()
            .map(|&old| {
                self.adjacency[old]
                    .iter()
                    .filter_map(|&w| map[w])
                    .collect::<Vec<_>>()
            })
            .collect();
        (Graph { adjacency }, map)
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        self.adjacent_pair_in(s).is_none()
    }

    /// First adjacent pair inside `s`, if any.
    pub fn adjacent_pair_in(&self, s: &VertexSet) -> Option<(usize, usize)> {
        s.iter().find_map(|&u| {
            self.adjacency[u]
                .iter()
                .find(|&&v| v > u && s.contains(v))
                .map(|&v| (u, v))
        })
    }

    /// Proper two-coloring as a pair of sides, or `None` for a
    /// non-bipartite graph. In each component the lowest vertex is on side 0.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let sides = self.two_color().ok()?;
        let (a, b): (Vec<usize>, Vec<usize>) = (0..self.vertex_count()).partition(|&v| !sides[v]);
        Some((VertexSet::from_sorted(a), VertexSet::from_sorted(b)))
    }

    /// An odd cycle `c_0, c_1, ..., c_{m-1}` (closing back to `c_0`) when the
    /// graph is not bipartite.
    pub fn odd_cycle(&self) -> Option<Vec<usize>> {
        self.two_color().err()
    }

    fn two_color(&self) -> std::result::Result<Vec<bool>, Vec<usize>> {
        let n = self.vertex_count();
        let mut side: Vec<Option<bool>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        for root in 0..n {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &v in &self.adjacency[u] {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            parent[v] = u;
                            depth[v] = depth[u] + 1;
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => {
                            return Err(tree_cycle(u, v, &parent, &depth));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(side.into_iter().map(Option::unwrap).collect())
    }

    /// True iff `cert` is a partition of the vertex set into independent
    /// parts with every cross-part pair adjacent.
    pub fn is_complete_multipartite(&self, cert: &PartitionCertificate) -> Result<bool> {
        let part_of = cert.part_index(self.vertex_count())?;
        let mut cross = 0usize;
        for (u, v) in self.edges() {
            if part_of[u] == part_of[v] {
                return Ok(false);
            }
            cross += 1;
        }
        Ok(cross == cert.cross_pair_count())
    }

    /// Appends `copies` twins of each listed vertex. A twin has the same
    /// neighborhood as its original and is adjacent to neither the original
    /// nor the other twins. Returns the new graph and, per request, the
    /// indices of the twins in creation order.
    pub fn duplicate_vertices(&self, requests: &[(usize, usize)]) -> (Graph, Vec<Vec<usize>>) {
        let mut adjacency = self.adjacency.clone();
        let mut created = Vec::with_capacity(requests.len());
        for &(v, copies) in requests {
            let mut ids = Vec::with_capacity(copies);
            for _ in 0..copies {
                let id = adjacency.len();
                let around = self.adjacency[v].clone();
                for &w in &around {
                    adjacency[w].push(id);
                }
                adjacency.push(around);
                ids.push(id);
            }
            created.push(ids);
        }
        (Graph::from_unsorted(adjacency), created)
    }

    pub fn duplicate_vertex(&self, v: usize, copies: usize) -> Graph {
        self.duplicate_vertices(&[(v, copies)]).0
    }

    /// Relabels vertex `old` as `perm[old]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        let n = self.vertex_count();
        assert_eq!(perm.len(), n, "permutation length mismatch");
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        for (old, &new) in perm.iter().enumerate() {
            assert!(new < n && !seen[new], "not a permutation");
            seen[new] = true;
            adjacency[new] = self.adjacency[old].iter().map(|&w| perm[w]).collect();
        }
        Graph::from_unsorted(adjacency)
    }

    /// Same graph without edge `uv`.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if u >= self.vertex_count() || v >= self.vertex_count() || !self.has_edge(u, v) {
            return Err(Error::contract(format!("no edge {u}-{v} to remove")));
        }
        let mut adjacency = self.adjacency.clone();
        adjacency[u].retain(|&x| x != v);
        adjacency[v].retain(|&x| x != u);
        Ok(Graph { adjacency })
    }

    /// Graphviz rendering; `labels[v]` replaces the vertex number when given.
    pub fn to_dot(&self, labels: Option<&[String]>) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.vertex_count() {
            match labels.and_then(|l| l.get(v)) {
                Some(label) => writeln!(out, "  {v} [label=\"{}\"];", label.replace('"', "\\\"")),
                None => writeln!(out, "  {v};"),
            }
            .unwrap();
        }
        for (u, v) in self.edges() {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn tree_cycle(u: usize, v: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

pub(crate) fn sorted_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// A set of vertex indices, stored sorted without repeats.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    fn from_sorted(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        VertexSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).copied().collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(sorted_intersection(&self.0, &other.0))
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(s: VertexSet) -> Self {
        s.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from(iter.into_iter().collect::<Vec<_>>())
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// An ordered family of vertex sets meant to partition a graph's vertices.
///
/// Used both as a coloring certificate (each part a color class) and as the
/// claimed part structure of a complete multipartite graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCertificate {
    pub parts: Vec<VertexSet>,
}

impl PartitionCertificate {
    pub fn new(parts: Vec<VertexSet>) -> Self {
        PartitionCertificate { parts }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Checks the partition invariants against `vertex_count` and returns
    /// the part index of every vertex.
    pub fn part_index(&self, vertex_count: usize) -> Result<Vec<usize>> {
        let mut part_of = vec![usize::MAX; vertex_count];
        for (p, part) in self.parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::contract(format!("part {p} is empty")));
            }
            for &v in part {
                if v >= vertex_count {
                    return Err(Error::contract(format!(
                        "part {p} contains vertex {v}, outside 0..{vertex_count}"
                    )));
                }
                if part_of[v] != usize::MAX {
                    return Err(Error::contract(format!(
                        "vertex {v} lies in parts {} and {p}",
                        part_of[v]
                    )));
                }
                part_of[v] = p;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(Error::contract(format!("vertex {v} is not covered")));
        }
        Ok(part_of)
    }

    /// `Σ_{a<b} |A|·|B|`, the edge count of the complete multipartite graph
    /// on these parts.
    pub fn cross_pair_count(&self) -> usize {
        let total: usize = self.parts.iter().map(VertexSet::len).sum();
        let within: usize = self.parts.iter().map(|p| p.len() * p.len()).sum();
        (total * total - within) / 2
    }

    /// Same parts with each vertex mapped through `map` (entries that map to
    /// `None` are dropped).
    pub fn remap(&self, map: &[Option<usize>]) -> PartitionCertificate {
        PartitionCertificate {
            parts: self
                .parts
                .iter()
                .map(|p| p.iter().filter_map(|&v| map[v]).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    /// All-pairs distances by BFS, independent of `square`.
    fn distances(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.vertex_count();
        (0..n)
            .map(|s| {
                let mut d = vec![usize::MAX; n];
                d[s] = 0;
                let mut q = VecDeque::from([s]);
                while let Some(u) = q.pop_front() {
                    for &w in g.neighbors(u) {
                        if d[w] == usize::MAX {
                            d[w] = d[u] + 1;
                            q.push_back(w);
                        }
                    }
                }
                d
            })
            .collect()
    }

    #[test]
    fn make_graph_examples() {
        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.degrees(), vec![1, 2, 1]);

        let single = Graph::new(1, []).unwrap();
        assert_eq!((single.vertex_count(), single.edge_count()), (1, 0));

        let collapsed = Graph::new(4, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(collapsed.edge_count(), 1);
        assert!(collapsed.has_edge(1, 0));
    }

    #[test]
    fn make_graph_errors() {
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, vertex_count: 3 })
        ));
        assert!(matches!(Graph::new(3, [(1, 1)]), Err(Error::SelfLoop(1))));
    }

    #[test]
    fn square_examples() {
        assert_eq!(Graph::path(3).square(), Graph::complete(3));
        for m in 1..7 {
            assert_eq!(Graph::complete(m).square(), Graph::complete(m));
        }
        // every pair of C5 is within distance 2
        let c5 = Graph::cycle(5);
        let d = distances(&c5);
        assert!(d.iter().flatten().all(|&x| x <= 2));
        assert_eq!(c5.square(), Graph::complete(5));
    }

    #[test]
    fn square_matches_bfs_distances() {
        for g in [Graph::cycle(9), Graph::path(6), Graph::star(4).subdivide()] {
            let d = distances(&g);
            let sq = g.square();
            for (u, row) in d.iter().enumerate() {
                for (v, &dist) in row.iter().enumerate() {
                    assert_eq!(sq.has_edge(u, v), u != v && dist <= 2);
                }
            }
        }
    }

    #[test]
    fn subdivide_examples() {
        assert_eq!(Graph::complete(2).subdivide(), Graph::new(3, [(0, 2), (1, 2)]).unwrap());
        let c6 = Graph::complete(3).subdivide();
        assert_eq!(c6.vertex_count(), 6);
        assert!(c6.degrees().iter().all(|&d| d == 2));
        assert!(c6.odd_cycle().is_none());
        assert_eq!(c6.edge_count(), 6);

        // spider: center 0, leaves 1..=3, midpoints 4,5,6 for edges 01,02,03
        let spider = Graph::star(3).subdivide();
        let expected = Graph::new(7, [(0, 4), (1, 4), (0, 5), (2, 5), (0, 6), (3, 6)]).unwrap();
        assert_eq!(spider, expected);
    }

    #[test]
    fn total_graph_examples() {
        assert_eq!(Graph::complete(2).total_graph(), Graph::complete(3));

        // T(P3): edges e0=01 -> 3, e1=12 -> 4
        let expected = Graph::new(5, [(0, 1), (1, 2), (0, 3), (1, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
        let p3 = Graph::path(3);
        assert_eq!(p3.total_graph(), expected);
        assert_eq!(p3.subdivide().square(), expected);

        assert_eq!(Graph::empty(4).total_graph(), Graph::empty(4));
    }

    #[test]
    fn induced_subgraph_examples() {
        let (k3, map) = Graph::complete(4).induced_subgraph(&vs(&[0, 2, 3]));
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(map, vec![Some(0), None, Some(1), Some(2)]);

        let (k2, _) = Graph::cycle(5).induced_subgraph(&vs(&[1, 2]));
        assert_eq!(k2, Graph::complete(2));

        let (t, _) = Graph::cycle(5).square().induced_subgraph(&vs(&[0, 2, 4]));
        assert_eq!(t, Graph::complete(3));
    }

    #[test]
    fn independence_examples() {
        let k3 = Graph::complete(3);
        assert!(!k3.is_independent(&vs(&[0, 1])));
        assert!(k3.is_independent(&vs(&[0])));
        assert!(Graph::cycle(4).is_independent(&vs(&[0, 2])));
    }

    #[test]
    fn bipartition_examples() {
        let (a, b) = Graph::cycle(4).bipartition().unwrap();
        assert_eq!((a, b), (vs(&[0, 2]), vs(&[1, 3])));
        assert!(Graph::complete(3).bipartition().is_none());
    }

    #[test]
    fn odd_cycle_is_a_closed_odd_walk() {
        for g in [Graph::complete(3), Graph::cycle(7), Graph::cycle(5).square()] {
            let c = g.odd_cycle().unwrap();
            assert_eq!(c.len() % 2, 1);
            for i in 0..c.len() {
                assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
            }
        }
    }

    #[test]
    fn multipartite_examples() {
        let c4 = Graph::cycle(4);
        let cert = PartitionCertificate::new(vec![vs(&[0, 2]), vs(&[1, 3])]);
        assert!(c4.is_complete_multipartite(&cert).unwrap());

        // P3 is K_{1,2}
        let p3_cert = PartitionCertificate::new(vec![vs(&[0, 2]), vs(&[1])]);
        assert!(Graph::path(3).is_complete_multipartite(&p3_cert).unwrap());

        // P4 misses the cross pair 0-3
        assert!(!Graph::path(4).is_complete_multipartite(&cert).unwrap());

        let bad = PartitionCertificate::new(vec![vs(&[0, 1]), vs(&[1, 2, 3])]);
        assert!(matches!(c4.is_complete_multipartite(&bad), Err(Error::Contract(_))));
        let short = PartitionCertificate::new(vec![vs(&[0, 1])]);
        assert!(c4.is_complete_multipartite(&short).is_err());
    }

    #[test]
    fn degree_profile_of_multipartite() {
        let g = Graph::complete_multipartite(&[3, 3, 3, 3]);
        assert_eq!(g.degree_profile(), BTreeMap::from([(9, 12)]));
    }

    #[test]
    fn duplicate_star_center() {
        let g = Graph::star(3).duplicate_vertex(0, 1);
        assert_eq!(g, Graph::complete_bipartite(3, 2).permute(&[1, 2, 3, 0, 4]));
        assert_eq!(g.neighbors(4), &[1, 2, 3]);
        assert!(!g.has_edge(0, 4));

        let isolated = Graph::empty(2).duplicate_vertex(1, 1);
        assert_eq!(isolated, Graph::empty(3));
    }

    #[test]
    fn json_round_trip_and_format() {
        let g = Graph::new(3, [(2, 1), (0, 1)]).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        let back: Graph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,2]]}"#).is_err());
    }

    #[test]
    fn dot_export() {
        let dot = Graph::path(2).to_dot(Some(&["a".into(), "b".into()]));
        assert_eq!(dot, "graph G {\n  0 [label=\"a\"];\n  1 [label=\"b\"];\n  0 -- 1;\n}\n");
    }
}

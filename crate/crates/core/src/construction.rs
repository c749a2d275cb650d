//! Labeled bipartite graphs built from the linear MOLS family.
//!
//! Every builder produces the same canonical vertex order for a given prime
//! `n` and number of duplication rounds `t`:
//!
//! 1. P vertices `v_{k,j}^{path}`, lexicographic by `(path, k, j)` with
//!    `path ∈ [n]^t`,
//! 2. Q hubs `w_{i,j}` by `(i, j)`,
//! 3. round hubs `u^{(r)}_{i,j}` by `(r, i, j)`,
//! 4. S hubs `s_m` by `m`.
//!
//! All combinatorial indices (`i`, `j`, `k`, `m`, copy numbers, rounds) are
//! 1-based; vertex indices are 0-based.
//!
//! Adjacency, for a P vertex with coordinates `(c_1..c_t, k, col)`:
//!
//! * `w_{i,j}` iff `col = L_i(j, k)`,
//! * `u^{(r)}_{i,j}` iff `col = L_i(j, c_r)`,
//! * `s_m` iff `col = m`.
//!
//! `t = 0` is the base graph `H_n`, `t = 1` the graph `G` (its round hubs are
//! the `R_i`), and `t = 2` the twice-duplicated graph whose round-2 hubs form
//! the families `B_i`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, PartitionCertificate, VertexSet};
use crate::latin::{check_order, linear_entry};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "role")]
pub enum VertexLabel {
    P { copy_path: Vec<usize>, k: usize, j: usize },
    Q { i: usize, j: usize },
    U { round: usize, i: usize, j: usize },
    S { m: usize },
}

impl VertexLabel {
    pub fn is_p(&self) -> bool {
        matches!(self, VertexLabel::P { .. })
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::P { copy_path, k, j } => {
                write!(f, "v_{{{k},{j}}}")?;
                if !copy_path.is_empty() {
                    let path: Vec<String> = copy_path.iter().map(usize::to_string).collect();
                    write!(f, "^{}", path.join("."))?;
                }
                Ok(())
            }
            VertexLabel::Q { i, j } => write!(f, "w_{{{i},{j}}}"),
            VertexLabel::U { round: 1, i, j } => write!(f, "u_{{{i},{j}}}"),
            VertexLabel::U { round: 2, i, j } => write!(f, "b_{{{i},{j}}}"),
            VertexLabel::U { round, i, j } => write!(f, "u^({round})_{{{i},{j}}}"),
            VertexLabel::S { m } => write!(f, "s_{m}"),
        }
    }
}

/// Index arithmetic for the canonical vertex order of a given `(n, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layout {
    pub n: usize,
    pub rounds: usize,
}

impl Layout {
    pub fn new(n: usize, rounds: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Layout { n, rounds })
    }

    /// Number of copy paths, `n^t`.
    pub fn layer_count(&self) -> usize {
        self.n.pow(self.rounds as u32)
    }

    /// `|P| = n^{t+2}`.
    pub fn p_count(&self) -> usize {
        self.layer_count() * self.n * self.n
    }

    pub fn hub_family_size(&self) -> usize {
        self.n * (self.n - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.p_count() + (self.rounds + 1) * self.hub_family_size() + self.n
    }

    /// `n^{t+1} + (t+1)(n-1) + 1`.
    pub fn part_count(&self) -> usize {
        self.layer_count() * self.n + (self.rounds + 1) * (self.n - 1) + 1
    }

    fn check(&self, what: &str, value: usize, max: usize) {
        assert!((1..=max).contains(&value), "{what} = {value} outside 1..={max}");
    }

    /// 0-based position of a copy path among all layers.
    pub fn layer_index(&self, path: &[usize]) -> usize {
        assert_eq!(path.len(), self.rounds, "copy path length must equal the round count");
        path.iter().fold(0, |acc, &c| {
            self.check("copy", c, self.n);
            acc * self.n + (c - 1)
        })
    }

    /// Inverse of [`Layout::layer_index`].
    pub fn layer_path(&self, mut index: usize) -> Vec<usize> {
        let mut path = vec![0; self.rounds];
        for slot in path.iter_mut().rev() {
            *slot = index % self.n + 1;
            index /= self.n;
        }
        path
    }

    pub fn layers(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.layer_count()).map(|idx| self.layer_path(idx))
    }

    pub fn p(&self, path: &[usize], k: usize, j: usize) -> usize {
        self.check("k", k, self.n);
        self.check("j", j, self.n);
        (self.layer_index(path) * self.n + (k - 1)) * self.n + (j - 1)
    }

    pub fn q(&self, i: usize, j: usize) -> usize {
        self.check("i", i, self.n - 1);
        self.check("j", j, self.n);
        self.p_count() + (i - 1) * self.n + (j - 1)
    }

    pub fn u(&self, round: usize, i: usize, j: usize) -> usize {
        self.check("round", round, self.rounds);
        self.check("i", i, self.n - 1);
        self.check("j", j, self.n);
        self.p_count() + round * self.hub_family_size() + (i - 1) * self.n + (j - 1)
    }

    pub fn s(&self, m: usize) -> usize {
        self.check("m", m, self.n);
        self.p_count() + (self.rounds + 1) * self.hub_family_size() + (m - 1)
    }

    pub fn index_of(&self, label: &VertexLabel) -> usize {
        match label {
            VertexLabel::P { copy_path, k, j } => self.p(copy_path, *k, *j),
            VertexLabel::Q { i, j } => self.q(*i, *j),
            VertexLabel::U { round, i, j } => self.u(*round, *i, *j),
            VertexLabel::S { m } => self.s(*m),
        }
    }

    pub fn label(&self, v: usize) -> VertexLabel {
        let n = self.n;
        let p = self.p_count();
        let fam = self.hub_family_size();
        if v < p {
            return VertexLabel::P {
                copy_path: self.layer_path(v / (n * n)),
                k: (v / n) % n + 1,
                j: v % n + 1,
            };
        }
        let h = v - p;
        if h < fam {
            return VertexLabel::Q { i: h / n + 1, j: h % n + 1 };
        }
        if h < (self.rounds + 1) * fam {
            let r = h / fam;
            let rest = h % fam;
            return VertexLabel::U { round: r, i: rest / n + 1, j: rest % n + 1 };
        }
        let m = h - (self.rounds + 1) * fam;
        assert!(m < n, "vertex {v} out of range");
        VertexLabel::S { m: m + 1 }
    }

    pub fn labels(&self) -> Vec<VertexLabel> {
        (0..self.vertex_count()).map(|v| self.label(v)).collect()
    }
}

/// A constructed graph together with the role of every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LabeledGraphJson", into = "LabeledGraphJson")]
pub struct LabeledGraph {
    graph: Graph,
    labels: Vec<VertexLabel>,
    layout: Layout,
}

/// Graph JSON plus a `labels` array in canonical vertex order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LabeledGraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub labels: Vec<VertexLabel>,
}

impl TryFrom<LabeledGraphJson> for LabeledGraph {
    type Error = Error;

    fn try_from(value: LabeledGraphJson) -> Result<Self> {
        let graph = Graph::new(value.n, value.edges.iter().map(|&[u, v]| (u, v)))?;
        LabeledGraph::from_parts(graph, value.labels)
    }
}

impl From<LabeledGraph> for LabeledGraphJson {
    fn from(g: LabeledGraph) -> Self {
        LabeledGraphJson {
            n: g.graph.vertex_count(),
            edges: g.graph.edges().map(|(u, v)| [u, v]).collect(),
            labels: g.labels,
        }
    }
}

impl LabeledGraph {
    /// Pairs an arbitrary edge set with labels, which must be the canonical
    /// sequence for some prime `n` and round count. The edges are not
    /// checked against the construction; that is what the verifiers do.
    pub fn from_parts(graph: Graph, labels: Vec<VertexLabel>) -> Result<Self> {
        if labels.len() != graph.vertex_count() {
            return Err(Error::contract(format!(
                "{} labels for {} vertices",
                labels.len(),
                graph.vertex_count()
            )));
        }
        let n = labels.iter().filter(|l| matches!(l, VertexLabel::S { .. })).count();
        let rounds = match labels.first() {
            Some(VertexLabel::P { copy_path, .. }) => copy_path.len(),
            _ => return Err(Error::contract("labels must start with P vertices")),
        };
        let layout = Layout::new(n, rounds)?;
        if layout.vertex_count() != labels.len() || (0..labels.len()).any(|v| layout.label(v) != labels[v]) {
            return Err(Error::contract(format!(
                "labels are not in canonical order for n = {n}, rounds = {rounds}"
            )));
        }
        Ok(LabeledGraph { graph, labels, layout })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &VertexLabel {
        &self.labels[v]
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    /// The prime parameter.
    pub fn n(&self) -> usize {
        self.layout.n
    }

    pub fn rounds(&self) -> usize {
        self.layout.rounds
    }

    /// Same labels, different edges. Used to build mutants.
    pub fn with_graph(&self, graph: Graph) -> Result<Self> {
        LabeledGraph::from_parts(graph, self.labels.clone())
    }

    pub fn p_set(&self) -> VertexSet {
        (0..self.layout.p_count()).collect()
    }

    pub fn hub_set(&self) -> VertexSet {
        (self.layout.p_count()..self.layout.vertex_count()).collect()
    }

    /// `P^{path}`: all P vertices of one layer.
    pub fn layer(&self, path: &[usize]) -> VertexSet {
        let start = self.layout.layer_index(path) * self.n() * self.n();
        (start..start + self.n() * self.n()).collect()
    }

    /// `P_k^{path}`.
    pub fn p_part(&self, path: &[usize], k: usize) -> VertexSet {
        (1..=self.n()).map(|j| self.layout.p(path, k, j)).collect()
    }

    /// `T_{path,m}`: the column-`m` vertices of one layer.
    pub fn column(&self, path: &[usize], m: usize) -> VertexSet {
        (1..=self.n()).map(|k| self.layout.p(path, k, m)).collect()
    }

    /// P vertices whose copy number at `round` is `copy` and whose column is
    /// `m`. For one round this is `T_{copy,m}`; at round 2 of two it is the
    /// union of the `copy`-th duplicates of the sets `T_{l,m}`.
    pub fn column_block(&self, round: usize, copy: usize, m: usize) -> VertexSet {
        let layout = self.layout;
        layout
            .layers()
            .filter(|path| path[round - 1] == copy)
            .flat_map(|path| (1..=layout.n).map(move |k| layout.p(&path, k, m)))
            .collect()
    }

    pub fn q_family(&self, i: usize) -> VertexSet {
        (1..=self.n()).map(|j| self.layout.q(i, j)).collect()
    }

    pub fn u_family(&self, round: usize, i: usize) -> VertexSet {
        (1..=self.n()).map(|j| self.layout.u(round, i, j)).collect()
    }

    pub fn q_set(&self) -> VertexSet {
        (1..self.n()).flat_map(|i| (1..=self.n()).map(move |j| (i, j))).map(|(i, j)| self.layout.q(i, j)).collect()
    }

    pub fn s_set(&self) -> VertexSet {
        (1..=self.n()).map(|m| self.layout.s(m)).collect()
    }

    /// The canonical color classes: every `P_k^{path}`, every `Q_i`, every
    /// round family `(r, i)`, and `S`.
    pub fn part_sets(&self) -> PartitionCertificate {
        let n = self.n();
        let mut parts = Vec::with_capacity(self.layout.part_count());
        for path in self.layout.layers() {
            for k in 1..=n {
                parts.push(self.p_part(&path, k));
            }
        }
        for i in 1..n {
            parts.push(self.q_family(i));
        }
        for r in 1..=self.rounds() {
            for i in 1..n {
                parts.push(self.u_family(r, i));
            }
        }
        parts.push(self.s_set());
        PartitionCertificate::new(parts)
    }

    /// The P parts `P_k^{path}` alone, in canonical order.
    pub fn p_parts(&self) -> PartitionCertificate {
        let parts = self
            .layout
            .layers()
            .flat_map(|path| (1..=self.n()).map(move |k| (path.clone(), k)))
            .map(|(path, k)| self.p_part(&path, k))
            .collect();
        PartitionCertificate::new(parts)
    }

    pub fn display_labels(&self) -> Vec<String> {
        self.labels.iter().map(ToString::to_string).collect()
    }
}

/// `H_n`: `n²` P vertices, the Q hubs and the S hubs, straight from the
/// defining edge families.
pub fn build_h(n: usize) -> Result<LabeledGraph> {
    let layout = Layout::new(n, 0)?;
    let mut edges = Vec::new();
    for i in 1..n {
        for j in 1..=n {
            for k in 1..=n {
                edges.push((layout.q(i, j), layout.p(&[], k, linear_entry(n, i, j, k))));
            }
        }
    }
    for j in 1..=n {
        for k in 1..=n {
            edges.push((layout.s(j), layout.p(&[], k, j)));
        }
    }
    finish(layout, edges)
}

/// The graph `G` on `n(n² + 2n - 1)` vertices, assembled directly from the
/// edge families `E_1, ..., E_{n+2}`.
pub fn build_g(n: usize) -> Result<LabeledGraph> {
    let layout = Layout::new(n, 1)?;
    let mut edges = Vec::new();
    // E_l for each layer l
    for l in 1..=n {
        for i in 1..n {
            for j in 1..=n {
                for k in 1..=n {
                    edges.push((layout.q(i, j), layout.p(&[l], k, linear_entry(n, i, j, k))));
                }
            }
        }
    }
    // E_{n+1}: u_{i,j} sees T_{l, L_i(j,l)}
    for i in 1..n {
        for j in 1..=n {
            for l in 1..=n {
                let m = linear_entry(n, i, j, l);
                for k in 1..=n {
                    edges.push((layout.u(1, i, j), layout.p(&[l], k, m)));
                }
            }
        }
    }
    // E_{n+2}: s_m sees T_{l,m}
    for m in 1..=n {
        for l in 1..=n {
            for k in 1..=n {
                edges.push((layout.s(m), layout.p(&[l], k, m)));
            }
        }
    }
    finish(layout, edges)
}

/// `H_n` after `rounds` duplication rounds. Each round duplicates every P
/// vertex `n - 1` times (the original becomes copy 1) and attaches a new hub
/// family keyed on the new copy coordinate.
pub fn build_iterated(n: usize, rounds: usize) -> Result<LabeledGraph> {
    let mut current = build_h(n)?;
    for round in 1..=rounds {
        current = duplication_round(&current, round)?;
    }
    Ok(current)
}

/// Twins of a single P vertex, appended after the existing vertices.
/// Returns the new graph and the twin indices. Hubs are never duplicated.
pub fn duplicate_vertex(g: &LabeledGraph, v: usize, copies: usize) -> Result<(Graph, Vec<usize>)> {
    if v >= g.graph.vertex_count() {
        return Err(Error::contract(format!("vertex {v} out of range")));
    }
    if !g.label(v).is_p() {
        return Err(Error::contract(format!("cannot duplicate hub vertex {} ({})", v, g.label(v))));
    }
    if copies == 0 {
        return Err(Error::ParameterTooSmall { name: "copies", min: 1, value: 0 });
    }
    let (graph, mut created) = g.graph.duplicate_vertices(&[(v, copies)]);
    Ok((graph, created.pop().unwrap()))
}

fn duplication_round(current: &LabeledGraph, round: usize) -> Result<LabeledGraph> {
    let n = current.n();
    let p_count = current.layout.p_count();
    let requests: Vec<(usize, usize)> = (0..p_count).map(|v| (v, n - 1)).collect();
    let (dup, created) = current.graph.duplicate_vertices(&requests);

    let mut labels: Vec<VertexLabel> = current.labels.clone();
    for label in labels.iter_mut().take(p_count) {
        if let VertexLabel::P { copy_path, .. } = label {
            copy_path.push(1);
        }
    }
    for (v, twins) in created.iter().enumerate() {
        for (offset, _) in twins.iter().enumerate() {
            let mut label = current.labels[v].clone();
            if let VertexLabel::P { copy_path, .. } = &mut label {
                copy_path.push(offset + 2);
            }
            labels.push(label);
        }
    }

    let mut edges: Vec<(usize, usize)> = dup.edges().collect();
    let p_vertices: Vec<(usize, usize, usize)> = labels
        .iter()
        .enumerate()
        .filter_map(|(v, l)| match l {
            VertexLabel::P { copy_path, j, .. } => Some((v, copy_path[round - 1], *j)),
            _ => None,
        })
        .collect();
    for i in 1..n {
        for j in 1..=n {
            let hub = labels.len();
            labels.push(VertexLabel::U { round, i, j });
            for &(v, copy, col) in &p_vertices {
                if col == linear_entry(n, i, j, copy) {
                    edges.push((hub, v));
                }
            }
        }
    }

    let layout = Layout::new(n, round)?;
    let graph = Graph::new(labels.len(), edges)?;
    let perm: Vec<usize> = labels.iter().map(|l| layout.index_of(l)).collect();
    LabeledGraph::from_parts(graph.permute(&perm), layout.labels())
}

fn finish(layout: Layout, edges: Vec<(usize, usize)>) -> Result<LabeledGraph> {
    let graph = Graph::new(layout.vertex_count(), edges)?;
    Ok(LabeledGraph {
        graph,
        labels: layout.labels(),
        layout,
    })
}

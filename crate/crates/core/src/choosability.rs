//! Exact list coloring at desk scale.
//!
//! [`is_l_colorable`] is a backtracking search with forward checking.
//! [`find_bad_assignment`] enumerates uniform list assignments up to color
//! renaming and asks the solver about each one, and
//! [`list_chromatic_oracle`] runs that search for increasing list sizes.
//!
//! The enumeration only visits assignments in which every color occurs in
//! at least two lists. This loses nothing: take a bad assignment and a
//! vertex-minimal induced subgraph `H` on which it is still bad. A color
//! that appears in only one list of `H`, at `v`, could always be given to
//! `v`, so `H - v` would already be bad. Hence every color of `H` is shared,
//! and copying lists of `H` onto the remaining vertices yields a bad
//! assignment with the same palette and no private colors.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, PartitionCertificate};

pub type Color = u32;

/// One finite color list per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ListAssignmentJson", into = "ListAssignmentJson")]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
}

/// `{"lists": {"<vertex>": [colors...]}}`; vertex keys must be `0..len`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ListAssignmentJson {
    pub lists: BTreeMap<usize, Vec<Color>>,
}

impl TryFrom<ListAssignmentJson> for ListAssignment {
    type Error = Error;

    fn try_from(value: ListAssignmentJson) -> Result<Self> {
        for (expected, &key) in value.lists.keys().enumerate() {
            if key != expected {
                return Err(Error::contract(format!("no list for vertex {expected}")));
            }
        }
        Ok(ListAssignment::new(value.lists.into_values().collect()))
    }
}

impl From<ListAssignment> for ListAssignmentJson {
    fn from(l: ListAssignment) -> Self {
        ListAssignmentJson {
            lists: l.lists.into_iter().enumerate().collect(),
        }
    }
}

impl ListAssignment {
    pub fn new(mut lists: Vec<Vec<Color>>) -> Self {
        for list in &mut lists {
            list.sort_unstable();
            list.dedup();
        }
        ListAssignment { lists }
    }

    /// The same list on every vertex.
    pub fn uniform(vertex_count: usize, colors: &[Color]) -> Self {
        ListAssignment::new(vec![colors.to_vec(); vertex_count])
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: usize) -> &[Color] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }

    /// Distinct colors across all lists.
    pub fn palette(&self) -> Vec<Color> {
        let mut all: Vec<Color> = self.lists.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// True when every list has exactly `k` colors.
    pub fn is_uniform(&self, k: usize) -> bool {
        self.lists.iter().all(|l| l.len() == k)
    }
}

/// A color per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: Vec<Color>,
}

impl Coloring {
    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.vertex_count() && g.edges().all(|(u, v)| self.colors[u] != self.colors[v])
    }

    pub fn respects(&self, lists: &ListAssignment) -> bool {
        self.colors.len() == lists.len()
            && self
                .colors
                .iter()
                .zip(lists.lists())
                .all(|(c, l)| l.binary_search(c).is_ok())
    }

    pub fn color_count(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Outcome {
    Colorable { coloring: Coloring },
    Uncolorable,
    /// The node budget ran out first.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    #[serde(flatten)]
    pub outcome: Outcome,
    pub nodes: u64,
}

impl SolveReport {
    pub fn is_colorable(&self) -> bool {
        matches!(self.outcome, Outcome::Colorable { .. })
    }

    pub fn is_uncolorable(&self) -> bool {
        matches!(self.outcome, Outcome::Uncolorable)
    }
}

enum Flow {
    Found,
    Exhausted,
    OutOfBudget,
}

/// Backtracking state. Only vertices `< active` take part; the rest are
/// ignored together with their edges.
struct Search<'a> {
    graph: &'a Graph,
    active: usize,
    order: Vec<usize>,
    domains: Vec<Vec<Color>>,
    assigned: Vec<Option<Color>>,
    trail: Vec<(usize, Color)>,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(graph: &'a Graph, lists: &[Vec<Color>], active: usize, budget: u64) -> Self {
        let mut order: Vec<usize> = (0..active).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
        Search {
            graph,
            active,
            order,
            domains: lists[..active].to_vec(),
            assigned: vec![None; active],
            trail: Vec::new(),
            nodes: 0,
            budget,
        }
    }

    fn run(&mut self, depth: usize) -> Flow {
        if depth == self.order.len() {
            return Flow::Found;
        }
        let v = self.order[depth];
        let candidates = self.domains[v].clone();
        for c in candidates {
            self.nodes += 1;
            if self.budget > 0 && self.nodes > self.budget {
                return Flow::OutOfBudget;
            }
            self.assigned[v] = Some(c);
            let mark = self.trail.len();
            let mut wiped = false;
            for &u in self.graph.neighbors(v) {
                if u >= self.active || self.assigned[u].is_some() {
                    continue;
                }
                if let Ok(pos) = self.domains[u].binary_search(&c) {
                    self.domains[u].remove(pos);
                    self.trail.push((u, c));
                    if self.domains[u].is_empty() {
                        wiped = true;
                        break;
                    }
                }
            }
            if !wiped {
                match self.run(depth + 1) {
                    Flow::Exhausted => {}
                    other => return other,
                }
            }
            while self.trail.len() > mark {
                let (u, c) = self.trail.pop().unwrap();
                let pos = self.domains[u].binary_search(&c).unwrap_err();
                self.domains[u].insert(pos, c);
            }
            self.assigned[v] = None;
        }
        Flow::Exhausted
    }
}

fn solve_prefix(g: &Graph, lists: &[Vec<Color>], active: usize, budget: u64) -> SolveReport {
    let mut search = Search::new(g, lists, active, budget);
    let outcome = match search.run(0) {
        Flow::Found => Outcome::Colorable {
            coloring: Coloring {
                colors: search.assigned.iter().map(|c| c.unwrap()).collect(),
            },
        },
        Flow::Exhausted => Outcome::Uncolorable,
        Flow::OutOfBudget => Outcome::Unknown,
    };
    SolveReport {
        outcome,
        nodes: search.nodes,
    }
}

/// Decides whether `g` has a proper coloring choosing each vertex's color
/// from its list. `budget` caps the number of search nodes (`0` means no
/// cap); `Unknown` is only returned when the cap is hit.
///
/// Vertices are tried in descending degree order (ties by index), colors in
/// ascending order, so node counts are reproducible.
pub fn is_l_colorable(g: &Graph, lists: &ListAssignment, budget: u64) -> Result<SolveReport> {
    if lists.len() != g.vertex_count() {
        return Err(Error::contract(format!(
            "{} lists for {} vertices",
            lists.len(),
            g.vertex_count()
        )));
    }
    let report = solve_prefix(g, lists.lists(), g.vertex_count(), budget);
    if let Outcome::Colorable { coloring } = &report.outcome {
        debug_assert!(coloring.is_proper(g) && coloring.respects(lists));
    }
    Ok(report)
}

/// Colors each vertex with the index of its part. The parts must be
/// independent in `g`.
pub fn color_from_partition(g: &Graph, cert: &PartitionCertificate) -> Result<Coloring> {
    let part_of = cert.part_index(g.vertex_count())?;
    if let Some((u, v)) = g.edges().find(|&(u, v)| part_of[u] == part_of[v]) {
        return Err(Error::contract(format!(
            "part {} is not independent: edge {u}-{v}",
            part_of[u]
        )));
    }
    Ok(Coloring {
        colors: part_of.into_iter().map(|p| p as Color).collect(),
    })
}

/// Chromatic number, by exact search with identical lists `{0..k-1}`.
pub fn chromatic_number(g: &Graph) -> usize {
    let n = g.vertex_count();
    (0..=n)
        .find(|&k| {
            let colors: Vec<Color> = (0..k as Color).collect();
            let lists = ListAssignment::uniform(n, &colors);
            solve_prefix(g, lists.lists(), n, 0).is_colorable()
        })
        .expect("n colors always suffice")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum BadSearchOutcome {
    /// An assignment with no proper coloring, re-verified exactly.
    Found {
        #[serde(rename = "assignment")]
        lists: ListAssignment,
    },
    /// The whole canonical space was searched without success.
    Exhausted,
    /// The budget ran out; nothing follows from that.
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadSearch {
    #[serde(flatten)]
    pub outcome: BadSearchOutcome,
    pub assignments_checked: u64,
}

struct Enumerator<'a> {
    graph: &'a Graph,
    k: usize,
    palette_cap: usize,
    budget: u64,
    lists: Vec<Vec<Color>>,
    counts: Vec<u32>,
    checked: u64,
}

enum Step {
    Continue,
    Found,
    OutOfBudget,
}

impl Enumerator<'_> {
    fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Assigns lists to vertex `v` onward. Lists are in first-use normal
    /// form: the colors new to vertex `v` are the next unused integers.
    fn run(&mut self, v: usize) -> Step {
        let used = self.counts.len();
        if v >= 1 && !solve_prefix(self.graph, &self.lists, v, 0).is_colorable() {
            // a bad prefix stays bad whatever the remaining lists are
            for _ in v..self.vertex_count() {
                self.lists.push(self.lists[0].clone());
            }
            return Step::Found;
        }
        if v == self.vertex_count() {
            if self.counts.iter().any(|&c| c < 2) {
                return Step::Continue;
            }
            self.checked += 1;
            if self.budget > 0 && self.checked > self.budget {
                return Step::OutOfBudget;
            }
            // prefix check above already solved the full assignment
            return Step::Continue;
        }
        let private = self.counts.iter().filter(|&&c| c == 1).count();
        if private > (self.vertex_count() - v) * self.k {
            return Step::Continue;
        }
        for fresh in 0..=self.k {
            if used + fresh > self.palette_cap || self.k - fresh > used {
                continue;
            }
            let mut pick = Vec::with_capacity(self.k - fresh);
            match self.choose_old(v, fresh, 0, &mut pick) {
                Step::Continue => {}
                other => return other,
            }
        }
        Step::Continue
    }

    fn choose_old(&mut self, v: usize, fresh: usize, from: usize, pick: &mut Vec<Color>) -> Step {
        let used = self.counts.len();
        if pick.len() == self.k - fresh {
            let mut list = pick.clone();
            list.extend((used..used + fresh).map(|c| c as Color));
            for &c in pick.iter() {
                self.counts[c as usize] += 1;
            }
            self.counts.extend(std::iter::repeat(1).take(fresh));
            self.lists.push(list);
            let step = self.run(v + 1);
            if let Step::Found = step {
                return step;
            }
            self.lists.pop();
            self.counts.truncate(used);
            for &c in pick.iter() {
                self.counts[c as usize] -= 1;
            }
            return step;
        }
        let remaining = self.k - fresh - pick.len();
        for c in from..=used.saturating_sub(remaining) {
            if c >= used {
                break;
            }
            pick.push(c as Color);
            let step = self.choose_old(v, fresh, c + 1, pick);
            pick.pop();
            match step {
                Step::Continue => {}
                other => return other,
            }
        }
        Step::Continue
    }
}

/// Looks for a `k`-list assignment from colors `0..palette_cap` under which
/// `g` cannot be colored. `budget` caps the number of complete assignments
/// examined (`0` means no cap).
pub fn find_bad_assignment(g: &Graph, k: usize, palette_cap: usize, budget: u64) -> Result<BadSearch> {
    if k < 1 {
        return Err(Error::ParameterTooSmall { name: "k", min: 1, value: k });
    }
    if palette_cap < k {
        return Err(Error::ParameterTooSmall {
            name: "palette_cap",
            min: k,
            value: palette_cap,
        });
    }
    let mut e = Enumerator {
        graph: g,
        k,
        palette_cap,
        budget,
        lists: Vec::with_capacity(g.vertex_count()),
        counts: Vec::new(),
        checked: 0,
    };
    let outcome = match e.run(0) {
        Step::Found => {
            let lists = ListAssignment::new(e.lists);
            let check = is_l_colorable(g, &lists, 0)?;
            assert!(check.is_uncolorable(), "bad assignment failed re-verification");
            BadSearchOutcome::Found { lists }
        }
        Step::Continue => BadSearchOutcome::Exhausted,
        Step::OutOfBudget => BadSearchOutcome::BudgetExceeded,
    };
    Ok(BadSearch {
        outcome,
        assignments_checked: e.checked,
    })
}

/// Palette size used by the oracle for list size `k` on `v` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PaletteCap {
    /// `k · |V|` colors, enough for any assignment.
    PerVertex,
    Fixed(usize),
}

impl PaletteCap {
    pub fn cap(self, k: usize, vertices: usize) -> usize {
        match self {
            PaletteCap::PerVertex => (k * vertices).max(k),
            PaletteCap::Fixed(c) => c.max(k),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_k: usize,
    pub size_guard: usize,
    pub palette: PaletteCap,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_k: 4,
            size_guard: 8,
            palette: PaletteCap::PerVertex,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleStep {
    pub k: usize,
    pub palette_cap: usize,
    pub bad_found: bool,
    pub assignments_checked: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    /// Least `k ≤ max_k` with no bad `k`-assignment, or `None` if every
    /// `k ≤ max_k` has one.
    pub list_chromatic: Option<usize>,
    pub chromatic: usize,
    /// A bad assignment for the largest non-choosable `k` tried.
    pub lower_certificate: Option<ListAssignment>,
    pub steps: Vec<OracleStep>,
}

/// Brute-force list chromatic number of a small graph.
///
/// Exact when the palette rule admits every relevant assignment, which
/// [`PaletteCap::PerVertex`] does.
pub fn list_chromatic_oracle(g: &Graph, config: OracleConfig) -> Result<OracleResult> {
    let n = g.vertex_count();
    if n > config.size_guard {
        return Err(Error::TooLarge {
            vertices: n,
            guard: config.size_guard,
        });
    }
    if config.max_k < 1 {
        return Err(Error::ParameterTooSmall { name: "max_k", min: 1, value: 0 });
    }
    let chromatic = chromatic_number(g);
    let mut result = OracleResult {
        list_chromatic: if n == 0 { Some(0) } else { None },
        chromatic,
        lower_certificate: None,
        steps: Vec::new(),
    };
    if n == 0 {
        return Ok(result);
    }
    for k in 1..=config.max_k {
        let palette_cap = config.palette.cap(k, n);
        let search = find_bad_assignment(g, k, palette_cap, 0)?;
        let bad = match search.outcome {
            BadSearchOutcome::Found { lists } => Some(lists),
            _ => None,
        };
        result.steps.push(OracleStep {
            k,
            palette_cap,
            bad_found: bad.is_some(),
            assignments_checked: search.assignments_checked,
        });
        match bad {
            Some(lists) => result.lower_certificate = Some(lists),
            None => {
                result.list_chromatic = Some(k);
                break;
            }
        }
    }
    if let Some(l) = result.list_chromatic {
        assert!(l >= chromatic, "list chromatic number below chromatic number");
    }
    Ok(result)
}

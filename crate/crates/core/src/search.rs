//! Edit-cost evaluation of node matchings, an admissible label-set lower
//! bound, and best-first A* search (exact, beam-limited, or restricted to
//! learned candidate nodes).
//!
//! Source nodes are matched in fixed index order: the state at level `i` has
//! assigned source nodes `0..i`. A complete matching charges the `|V2| - |V1|`
//! leftover target nodes as node insertions and their incident uncovered
//! edges as edge insertions.

use crate::graph::{normalized_similarity, GraphPair};
use serde::{Deserialize, Serialize};
use std::collections::{BinaryHeap, BTreeMap};
use std::time::{Duration, Instant};
use thiserror::Error;

/// Largest supported target-graph size (used-target sets are u128 bitmasks).
pub const MAX_TARGET_NODES: usize = 128;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("matching is incomplete: source node {0} is unassigned")]
    IncompleteMatching(usize),
    #[error("matching is not injective: target {0} is used twice")]
    NotInjective(usize),
    #[error("target index {0} out of range (|V2| = {1})")]
    TargetOutOfRange(usize, usize),
    #[error("target graph has {0} nodes; at most {1} supported")]
    TooManyTargets(usize, usize),
    #[error("search timed out after {0:?} with no complete matching")]
    Timeout(Duration),
}

/// A partial or complete injective map from source to target nodes.
///
/// `assigned[i]` is the target of source node `i`; entries beyond the level
/// are `None`. Source nodes are assigned in index order, so the level equals
/// the number of leading `Some` entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeMatching {
    pub assigned: Vec<Option<usize>>,
    pub g_cost: u32,
}

impl NodeMatching {
    pub fn empty(n1: usize) -> Self {
        NodeMatching {
            assigned: vec![None; n1],
            g_cost: 0,
        }
    }

    pub fn complete(targets: Vec<usize>, g_cost: u32) -> Self {
        NodeMatching {
            assigned: targets.into_iter().map(Some).collect(),
            g_cost,
        }
    }

    pub fn level(&self) -> usize {
        self.assigned.iter().take_while(|t| t.is_some()).count()
    }

    pub fn is_complete(&self) -> bool {
        self.assigned.iter().all(|t| t.is_some())
    }

    /// Targets of the assigned prefix, in source-node order.
    pub fn prefix(&self) -> Vec<usize> {
        self.assigned.iter().map_while(|t| *t).collect()
    }
}

/// Result of a GED computation: the distance, its witness matching, and
/// search statistics.
#[derive(Debug, Clone)]
pub struct GedResult {
    pub distance: u32,
    pub normalized_similarity: f64,
    pub matching: NodeMatching,
    pub expanded_states: u64,
    pub elapsed: Duration,
    /// True when the time budget expired and the result is the best complete
    /// matching found rather than the search-space optimum.
    pub timed_out: bool,
}

/// Which children an expansion may generate.
pub enum CandidateProvider<'a> {
    /// Every unused target node: exact A* (or plain beam A*).
    Full,
    /// Per-source-node candidate rows. At level `i` the children are the
    /// unused targets among `rows[i][..k]`; if all of them are used the
    /// prefix is extended one candidate at a time, and once the row is
    /// exhausted every unused target is offered. The extension rule keeps
    /// search spaces nested across increasing `k`.
    TopK { rows: &'a [Vec<usize>], k: usize },
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Retain only this many lowest-bound children per expansion.
    pub beam_width: Option<usize>,
    /// Per-pair time budget.
    pub timeout: Duration,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            beam_width: None,
            timeout: Duration::from_secs(60),
        }
    }
}

impl SearchConfig {
    pub fn with_beam(width: usize) -> Self {
        SearchConfig {
            beam_width: Some(width),
            ..Default::default()
        }
    }

    pub fn with_timeout(timeout: Duration) -> Self {
        SearchConfig {
            beam_width: None,
            timeout,
        }
    }
}

/// Interned per-pair view used by the cost evaluation and the search.
///
/// Node and edge labels are mapped to small ids over the union alphabet of
/// the two graphs; edge presence is stored as dense matrices.
pub(crate) struct PairIndex {
    pub n1: usize,
    pub n2: usize,
    labels1: Vec<u16>,
    labels2: Vec<u16>,
    num_labels: usize,
    /// Edge label id + 1 at (i, j), 0 when no edge. Row-major n*n.
    e1: Vec<u32>,
    e2: Vec<u32>,
    e2_total: u32,
    /// Adjacency bitmask per target node.
    adj2: Vec<u128>,
    /// For each level, label counts of source nodes with index >= level.
    suffix_labels1: Vec<Vec<u16>>,
    /// For each level, number of source edges with an endpoint >= level.
    suffix_edges1: Vec<u32>,
    total_labels2: Vec<u16>,
}

impl PairIndex {
    pub fn new(pair: &GraphPair) -> Result<Self, SearchError> {
        let (g1, g2) = (&pair.g1, &pair.g2);
        let (n1, n2) = (g1.node_count(), g2.node_count());
        if n2 > MAX_TARGET_NODES {
            return Err(SearchError::TooManyTargets(n2, MAX_TARGET_NODES));
        }

        let mut node_ids: BTreeMap<&str, u16> = BTreeMap::new();
        for l in g1.labels().iter().chain(g2.labels()) {
            let next = node_ids.len() as u16;
            node_ids.entry(l.as_str()).or_insert(next);
        }
        let labels1: Vec<u16> = g1.labels().iter().map(|l| node_ids[l.as_str()]).collect();
        let labels2: Vec<u16> = g2.labels().iter().map(|l| node_ids[l.as_str()]).collect();
        let num_labels = node_ids.len();

        let mut edge_ids: BTreeMap<&str, u32> = BTreeMap::new();
        for e in g1.edges().iter().chain(g2.edges()) {
            let next = edge_ids.len() as u32 + 1;
            edge_ids.entry(e.label.as_str()).or_insert(next);
        }
        let mut e1 = vec![0u32; n1 * n1];
        for e in g1.edges() {
            let id = edge_ids[e.label.as_str()];
            e1[e.a * n1 + e.b] = id;
            e1[e.b * n1 + e.a] = id;
        }
        let mut e2 = vec![0u32; n2 * n2];
        let mut adj2 = vec![0u128; n2];
        for e in g2.edges() {
            let id = edge_ids[e.label.as_str()];
            e2[e.a * n2 + e.b] = id;
            e2[e.b * n2 + e.a] = id;
            adj2[e.a] |= 1 << e.b;
            adj2[e.b] |= 1 << e.a;
        }

        let mut suffix_labels1 = vec![vec![0u16; num_labels]; n1 + 1];
        for level in (0..n1).rev() {
            suffix_labels1[level] = suffix_labels1[level + 1].clone();
            suffix_labels1[level][labels1[level] as usize] += 1;
        }
        let mut suffix_edges1 = vec![0u32; n1 + 1];
        for level in (0..n1).rev() {
            // edge (a, b) with a < b leaves the remainder once b < level
            let incident = g1
                .edges()
                .iter()
                .filter(|e| e.a.max(e.b) == level)
                .count() as u32;
            suffix_edges1[level] = suffix_edges1[level + 1] + incident;
        }
        let mut total_labels2 = vec![0u16; num_labels];
        for &l in &labels2 {
            total_labels2[l as usize] += 1;
        }

        Ok(PairIndex {
            n1,
            n2,
            labels1,
            labels2,
            num_labels,
            e1,
            e2,
            e2_total: g2.edge_count() as u32,
            adj2,
            suffix_labels1,
            suffix_edges1,
            total_labels2,
        })
    }

    fn edge1(&self, i: usize, j: usize) -> u32 {
        self.e1[i * self.n1 + j]
    }

    fn edge2(&self, i: usize, j: usize) -> u32 {
        self.e2[i * self.n2 + j]
    }

    /// Edit cost charged to the decided prefix: node relabels, source-edge
    /// deletions/relabels inside the prefix, and target edges lying fully
    /// inside the image that no source edge covers.
    fn prefix_cost(&self, assigned: &[usize]) -> u32 {
        let mut cost = 0;
        let mut covered = 0;
        for (i, &t) in assigned.iter().enumerate() {
            if self.labels1[i] != self.labels2[t] {
                cost += 1;
            }
            for (j, &u) in assigned.iter().enumerate().take(i) {
                let a = self.edge1(i, j);
                let b = self.edge2(t, u);
                if b != 0 {
                    covered += 1;
                }
                if (a != 0 && b == 0) || (a == 0 && b != 0) || (a != 0 && b != 0 && a != b) {
                    cost += 1;
                }
            }
        }
        // image-internal target edges not covered by a mapped source edge
        let mut internal = 0;
        let mut mask = 0u128;
        for &t in assigned {
            internal += (self.adj2[t] & mask).count_ones();
            mask |= 1 << t;
        }
        cost + internal - covered
    }

    /// Cost of finishing a complete assignment: leftover node insertions and
    /// target edges with an endpoint outside the image.
    fn completion_cost(&self, covered_internal: u32) -> u32 {
        (self.n2 - self.n1) as u32 + (self.e2_total - covered_internal)
    }

    /// Admissible heuristic for the remainder below `level` given the used
    /// target set: unavoidable node insertions, label-multiset mismatches,
    /// and the remaining edge-count imbalance.
    fn heuristic(&self, level: usize, assigned: &[usize], internal_edges: u32) -> u32 {
        if level == self.n1 {
            return 0;
        }
        let mut used2 = vec![0u16; self.num_labels];
        for &t in assigned {
            used2[self.labels2[t] as usize] += 1;
        }
        let remain1 = &self.suffix_labels1[level];
        let mut intersection = 0u32;
        for l in 0..self.num_labels {
            let tgt = self.total_labels2[l] - used2[l];
            intersection += remain1[l].min(tgt) as u32;
        }
        let unmatched1 = (self.n1 - level) as u32;
        let node_term = (self.n2 - self.n1) as u32 + (unmatched1 - intersection);
        let e1r = self.suffix_edges1[level];
        let e2r = self.e2_total - internal_edges;
        node_term + e1r.abs_diff(e2r)
    }

    fn internal_edges(&self, assigned: &[usize]) -> u32 {
        let mut internal = 0;
        let mut mask = 0u128;
        for &t in assigned {
            internal += (self.adj2[t] & mask).count_ones();
            mask |= 1 << t;
        }
        internal
    }
}

/// Exact edit cost induced by a complete node matching: node relabels, the
/// `|V2| - |V1|` node insertions, source-edge deletions/relabels, and
/// target-edge insertions, all at uniform cost 1.
pub fn mapping_edit_cost(pair: &GraphPair, m: &NodeMatching) -> Result<u32, SearchError> {
    let idx = PairIndex::new(pair)?;
    let targets = validate_complete(&idx, m)?;
    Ok(idx.prefix_cost(&targets) + idx.completion_cost(idx.internal_edges(&targets)))
}

fn validate_complete(idx: &PairIndex, m: &NodeMatching) -> Result<Vec<usize>, SearchError> {
    if m.assigned.len() != idx.n1 {
        return Err(SearchError::IncompleteMatching(m.assigned.len().min(idx.n1)));
    }
    let mut targets = Vec::with_capacity(idx.n1);
    let mut used = 0u128;
    for (i, t) in m.assigned.iter().enumerate() {
        let t = t.ok_or(SearchError::IncompleteMatching(i))?;
        if t >= idx.n2 {
            return Err(SearchError::TargetOutOfRange(t, idx.n2));
        }
        if used & (1 << t) != 0 {
            return Err(SearchError::NotInjective(t));
        }
        used |= 1 << t;
        targets.push(t);
    }
    Ok(targets)
}

/// Lower bound `g + h` for a (possibly partial) matching; equals the exact
/// edit cost once the matching is complete.
pub fn lower_bound(pair: &GraphPair, m: &NodeMatching) -> Result<u32, SearchError> {
    let idx = PairIndex::new(pair)?;
    let level = m.level();
    let prefix = m.prefix();
    let mut used = 0u128;
    for &t in &prefix {
        if t >= idx.n2 {
            return Err(SearchError::TargetOutOfRange(t, idx.n2));
        }
        if used & (1 << t) != 0 {
            return Err(SearchError::NotInjective(t));
        }
        used |= 1 << t;
    }
    let g = idx.prefix_cost(&prefix);
    let internal = idx.internal_edges(&prefix);
    if level == idx.n1 {
        return Ok(g + idx.completion_cost(internal));
    }
    Ok(g + idx.heuristic(level, &prefix, internal))
}

struct State {
    assigned: Vec<u8>,
    used: u128,
    g: u32,
    lb: u32,
    internal_edges: u32,
    seq: u64,
}

impl State {
    fn level(&self) -> usize {
        self.assigned.len()
    }
}

struct QueueEntry(State);

impl PartialEq for QueueEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}
impl Eq for QueueEntry {}
impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for QueueEntry {
    // BinaryHeap is a max-heap: best = lowest lb, then deepest level, then
    // earliest insertion.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .0
            .lb
            .cmp(&self.0.lb)
            .then(self.0.level().cmp(&other.0.level()))
            .then(other.0.seq.cmp(&self.0.seq))
    }
}

struct Incumbent {
    cost: u32,
    targets: Vec<u8>,
}

/// Best-first GED search.
///
/// With [`CandidateProvider::Full`] and no beam the result is the exact GED.
/// A beam width retains only the lowest-bound children per expansion; a
/// candidate provider restricts children to the learned top-k rows. Both
/// yield upper bounds on the exact distance. On timeout the best complete
/// matching found so far is returned (flagged), or an error when none exists.
pub fn astar_ged(
    pair: &GraphPair,
    provider: &CandidateProvider,
    config: &SearchConfig,
) -> Result<GedResult, SearchError> {
    let idx = PairIndex::new(pair)?;
    let start = Instant::now();
    let n1 = idx.n1;
    let n2 = idx.n2;

    let mut heap: BinaryHeap<QueueEntry> = BinaryHeap::new();
    let mut seq = 0u64;
    let root_lb = idx.heuristic(0, &[], 0);
    heap.push(QueueEntry(State {
        assigned: Vec::new(),
        used: 0,
        g: 0,
        lb: root_lb,
        internal_edges: 0,
        seq,
    }));

    let mut incumbent: Option<Incumbent> = None;
    let mut expanded = 0u64;
    let mut timed_out = false;
    let mut child_targets: Vec<usize> = Vec::with_capacity(n2);
    let mut children: Vec<State> = Vec::new();

    while let Some(QueueEntry(state)) = heap.pop() {
        if let Some(ref inc) = incumbent {
            // nothing on the frontier can beat the incumbent anymore
            if state.lb >= inc.cost {
                return Ok(finish(pair, &idx, inc, expanded, start, false));
            }
        }
        if state.level() == n1 {
            let inc = Incumbent {
                cost: state.lb,
                targets: state.assigned,
            };
            return Ok(finish(pair, &idx, &inc, expanded, start, false));
        }
        expanded += 1;
        if expanded % 256 == 0 || expanded == 1 {
            if start.elapsed() >= config.timeout {
                timed_out = true;
                break;
            }
        }

        let level = state.level();
        child_targets.clear();
        match provider {
            CandidateProvider::Full => {
                child_targets.extend((0..n2).filter(|&t| state.used & (1 << t) == 0));
            }
            CandidateProvider::TopK { rows, k } => {
                let row = &rows[level];
                let k = (*k).min(row.len());
                child_targets
                    .extend(row[..k].iter().copied().filter(|&t| state.used & (1 << t) == 0));
                if child_targets.is_empty() {
                    // extend the prefix one candidate at a time, then give up
                    // and offer every unused target
                    for &t in &row[k..] {
                        if state.used & (1 << t) == 0 {
                            child_targets.push(t);
                            break;
                        }
                    }
                    if child_targets.is_empty() {
                        child_targets.extend((0..n2).filter(|t| state.used & (1 << t) == 0));
                    }
                }
            }
        }

        children.clear();
        for &t in &child_targets {
            let mut dg = 0u32;
            if idx.labels1[level] != idx.labels2[t as usize] {
                dg += 1;
            }
            for (j, &u) in state.assigned.iter().enumerate() {
                let a = idx.edge1(level, j);
                let b = idx.edge2(t, u as usize);
                if (a != 0 && b == 0) || (a == 0 && b != 0) || (a != 0 && b != 0 && a != b) {
                    dg += 1;
                }
            }
            let internal = state.internal_edges + (idx.adj2[t] & state.used).count_ones();
            let g = state.g + dg;
            let mut assigned = state.assigned.clone();
            assigned.push(t as u8);
            let lb = if level + 1 == n1 {
                g + idx.completion_cost(internal)
            } else {
                g + idx.heuristic(level + 1, &as_usize(&assigned), internal)
            };
            children.push(State {
                assigned,
                used: state.used | (1 << t),
                g,
                lb,
                internal_edges: internal,
                seq: 0,
            });
        }

        if let Some(w) = config.beam_width {
            children.sort_by_key(|c| c.lb);
            children.truncate(w);
        }

        for child in children.drain(..) {
            if let Some(ref inc) = incumbent {
                if child.lb >= inc.cost {
                    continue;
                }
            }
            if child.level() == n1 {
                debug_assert_eq!(
                    child.lb,
                    idx.prefix_cost(&as_usize(&child.assigned))
                        + idx.completion_cost(child.internal_edges)
                );
                let better = incumbent.as_ref().map_or(true, |inc| child.lb < inc.cost);
                if better {
                    incumbent = Some(Incumbent {
                        cost: child.lb,
                        targets: child.assigned,
                    });
                }
            } else {
                seq += 1;
                heap.push(QueueEntry(State { seq, ..child }));
            }
        }
    }

    match incumbent {
        Some(inc) => Ok(finish(pair, &idx, &inc, expanded, start, timed_out)),
        None => Err(SearchError::Timeout(start.elapsed())),
    }
}

fn as_usize(assigned: &[u8]) -> Vec<usize> {
    assigned.iter().map(|&t| t as usize).collect()
}

fn finish(
    pair: &GraphPair,
    idx: &PairIndex,
    inc: &Incumbent,
    expanded: u64,
    start: Instant,
    timed_out: bool,
) -> GedResult {
    let targets = as_usize(&inc.targets);
    let matching = NodeMatching::complete(targets, inc.cost);
    debug_assert_eq!(mapping_edit_cost(pair, &matching).unwrap(), inc.cost);
    GedResult {
        distance: inc.cost,
        normalized_similarity: normalized_similarity(inc.cost, idx.n1, idx.n2),
        matching,
        expanded_states: expanded,
        elapsed: start.elapsed(),
        timed_out,
    }
}

/// One uniform-cost edit operation recovered from a complete matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum EditOp {
    RelabelNode { source: usize, target: usize, from: String, to: String },
    InsertNode { target: usize, label: String },
    DeleteEdge { a: usize, b: usize },
    RelabelEdge { a: usize, b: usize, from: String, to: String },
    InsertEdge { a: usize, b: usize, label: String },
}

/// Expands a complete matching into its edit path; the number of operations
/// equals the matching's edit cost.
pub fn edit_script(pair: &GraphPair, m: &NodeMatching) -> Result<Vec<EditOp>, SearchError> {
    let idx = PairIndex::new(pair)?;
    let targets = validate_complete(&idx, m)?;
    let (g1, g2) = (&pair.g1, &pair.g2);
    let mut ops = Vec::new();
    for (i, &t) in targets.iter().enumerate() {
        if g1.label(i) != g2.label(t) {
            ops.push(EditOp::RelabelNode {
                source: i,
                target: t,
                from: g1.label(i).to_string(),
                to: g2.label(t).to_string(),
            });
        }
    }
    let mut used = 0u128;
    for &t in &targets {
        used |= 1 << t;
    }
    for t in 0..idx.n2 {
        if used & (1 << t) == 0 {
            ops.push(EditOp::InsertNode {
                target: t,
                label: g2.label(t).to_string(),
            });
        }
    }
    let mut covered = vec![false; g2.edge_count()];
    for e in g1.edges() {
        let (ta, tb) = (targets[e.a], targets[e.b]);
        match g2.edge_label(ta, tb) {
            None => ops.push(EditOp::DeleteEdge { a: e.a, b: e.b }),
            Some(l2) => {
                let (a, b) = if ta < tb { (ta, tb) } else { (tb, ta) };
                let pos = g2
                    .edges()
                    .iter()
                    .position(|f| (f.a, f.b) == (a, b))
                    .expect("edge exists");
                covered[pos] = true;
                if l2 != e.label {
                    ops.push(EditOp::RelabelEdge {
                        a: e.a,
                        b: e.b,
                        from: e.label.clone(),
                        to: l2.to_string(),
                    });
                }
            }
        }
    }
    for (pos, e) in g2.edges().iter().enumerate() {
        if !covered[pos] {
            ops.push(EditOp::InsertEdge {
                a: e.a,
                b: e.b,
                label: e.label.clone(),
            });
        }
    }
    Ok(ops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_pair, Graph};
    use crate::oracle;

    fn path3() -> Graph {
        Graph::unlabeled("p3", 3, vec![(0, 1), (1, 2)]).unwrap()
    }

    fn triangle() -> Graph {
        Graph::unlabeled("t3", 3, vec![(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn labeled(id: &str, labels: &[&str], edges: Vec<(usize, usize)>) -> Graph {
        Graph::new(
            id,
            labels.iter().map(|s| s.to_string()).collect(),
            edges.into_iter().map(|(a, b)| (a, b, String::new())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_matching_costs_zero() {
        let pair = make_pair(triangle(), triangle());
        let m = NodeMatching::complete(vec![0, 1, 2], 0);
        assert_eq!(mapping_edit_cost(&pair, &m).unwrap(), 0);
    }

    #[test]
    fn path_vs_triangle_identity_costs_one() {
        let pair = make_pair(path3(), triangle());
        let m = NodeMatching::complete(vec![0, 1, 2], 0);
        assert_eq!(mapping_edit_cost(&pair, &m).unwrap(), 1);
        // brute force confirms 1 is also the minimum over all injections
        let (best, _) = oracle::exact_ged(&pair);
        assert_eq!(best, 1);
    }

    #[test]
    fn size_difference_forces_insertion() {
        let a = labeled("a", &["A"], vec![]);
        let b = labeled("b", &["A", "B"], vec![]);
        let pair = make_pair(a, b);
        let m = NodeMatching::complete(vec![0], 0);
        assert_eq!(mapping_edit_cost(&pair, &m).unwrap(), 1);
    }

    #[test]
    fn rejects_partial_and_non_injective() {
        let pair = make_pair(path3(), triangle());
        let partial = NodeMatching {
            assigned: vec![Some(0), None, None],
            g_cost: 0,
        };
        assert!(matches!(
            mapping_edit_cost(&pair, &partial),
            Err(SearchError::IncompleteMatching(1))
        ));
        let dup = NodeMatching::complete(vec![0, 0, 1], 0);
        assert!(matches!(
            mapping_edit_cost(&pair, &dup),
            Err(SearchError::NotInjective(0))
        ));
    }

    #[test]
    fn lower_bound_examples() {
        let pair = make_pair(path3(), triangle());
        // empty matching: no label mismatches, edge term |2 - 3| = 1
        assert_eq!(lower_bound(&pair, &NodeMatching::empty(3)).unwrap(), 1);
        // complete matching: bound equals the exact edit cost
        let m = NodeMatching::complete(vec![0, 1, 2], 0);
        assert_eq!(
            lower_bound(&pair, &m).unwrap(),
            mapping_edit_cost(&pair, &m).unwrap()
        );

        let a = labeled("a", &["A"], vec![]);
        let b = labeled("b", &["B"], vec![]);
        let pair = make_pair(a, b);
        assert_eq!(lower_bound(&pair, &NodeMatching::empty(1)).unwrap(), 1);
    }

    #[test]
    fn astar_identical_graphs() {
        let g = Graph::unlabeled("g", 4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let pair = make_pair(g.clone(), g);
        let r = astar_ged(&pair, &CandidateProvider::Full, &SearchConfig::default()).unwrap();
        assert_eq!(r.distance, 0);
        assert_eq!(r.normalized_similarity, 1.0);
        assert!(edit_script(&pair, &r.matching).unwrap().is_empty());
    }

    #[test]
    fn astar_path_vs_triangle() {
        let pair = make_pair(path3(), triangle());
        let r = astar_ged(&pair, &CandidateProvider::Full, &SearchConfig::default()).unwrap();
        assert_eq!(r.distance, 1);
    }

    #[test]
    fn astar_matches_oracle_on_random_pairs() {
        let mut seed = 11u64;
        for _ in 0..40 {
            let (a, b) = oracle::random_test_pair(&mut seed, 6, 3);
            let pair = make_pair(a, b);
            let r =
                astar_ged(&pair, &CandidateProvider::Full, &SearchConfig::default()).unwrap();
            let (exact, _) = oracle::exact_ged(&pair);
            assert_eq!(r.distance, exact, "pair seed {seed}");
            assert_eq!(
                mapping_edit_cost(&pair, &r.matching).unwrap(),
                r.distance
            );
        }
    }

    #[test]
    fn full_candidate_rows_match_exact() {
        let mut seed = 31u64;
        for _ in 0..20 {
            let (a, b) = oracle::random_test_pair(&mut seed, 6, 2);
            let pair = make_pair(a, b);
            let n2 = pair.g2.node_count();
            let rows: Vec<Vec<usize>> = (0..pair.g1.node_count())
                .map(|_| (0..n2).collect())
                .collect();
            let exact =
                astar_ged(&pair, &CandidateProvider::Full, &SearchConfig::default()).unwrap();
            let topk = astar_ged(
                &pair,
                &CandidateProvider::TopK { rows: &rows, k: n2 },
                &SearchConfig::default(),
            )
            .unwrap();
            assert_eq!(topk.distance, exact.distance);
        }
    }

    #[test]
    fn beam_is_upper_bound_and_monotone() {
        let mut seed = 77u64;
        for _ in 0..25 {
            let (a, b) = oracle::random_test_pair(&mut seed, 6, 2);
            let pair = make_pair(a, b);
            let (exact, _) = oracle::exact_ged(&pair);
            let mut prev = u32::MAX;
            for w in [1usize, 2, 4, 8] {
                let r =
                    astar_ged(&pair, &CandidateProvider::Full, &SearchConfig::with_beam(w))
                        .unwrap();
                assert!(r.distance >= exact);
                assert!(r.distance <= prev, "beam widening must not hurt");
                prev = r.distance;
            }
        }
    }

    #[test]
    fn ancestor_bounds_never_exceed_final_distance() {
        // admissibility probe: replay the returned matching prefix by prefix
        let mut seed = 5u64;
        for _ in 0..20 {
            let (a, b) = oracle::random_test_pair(&mut seed, 6, 3);
            let pair = make_pair(a, b);
            let r =
                astar_ged(&pair, &CandidateProvider::Full, &SearchConfig::default()).unwrap();
            let targets = r.matching.prefix();
            for level in 0..=targets.len() {
                let mut m = NodeMatching::empty(targets.len());
                for i in 0..level {
                    m.assigned[i] = Some(targets[i]);
                }
                assert!(lower_bound(&pair, &m).unwrap() <= r.distance);
            }
        }
    }

    #[test]
    fn zero_timeout_reports_no_result() {
        let pair = make_pair(path3(), triangle());
        let cfg = SearchConfig::with_timeout(Duration::from_secs(0));
        assert!(matches!(
            astar_ged(&pair, &CandidateProvider::Full, &cfg),
            Err(SearchError::Timeout(_))
        ));
    }

    #[test]
    fn edit_script_length_equals_distance() {
        let mut seed = 3u64;
        for _ in 0..25 {
            let (a, b) = oracle::random_test_pair(&mut seed, 6, 3);
            let pair = make_pair(a, b);
            let r =
                astar_ged(&pair, &CandidateProvider::Full, &SearchConfig::default()).unwrap();
            let script = edit_script(&pair, &r.matching).unwrap();
            assert_eq!(script.len() as u32, r.distance);
        }
    }

    #[test]
    fn incremental_cost_matches_recomputation() {
        let mut seed = 9u64;
        for _ in 0..15 {
            let (a, b) = oracle::random_test_pair(&mut seed, 5, 2);
            let pair = make_pair(a, b);
            let idx = PairIndex::new(&pair).unwrap();
            let r =
                astar_ged(&pair, &CandidateProvider::Full, &SearchConfig::default()).unwrap();
            let targets = r.matching.prefix();
            let full = idx.prefix_cost(&targets)
                + idx.completion_cost(idx.internal_edges(&targets));
            assert_eq!(full, r.distance);
        }
    }
}

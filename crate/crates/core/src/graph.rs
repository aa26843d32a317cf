//! Labeled undirected simple graphs and seeded edge perturbation.
//!
//! Node identity is positional: indices are 0-based and stable, labels may
//! repeat. Isolated nodes are legal. Graphs are immutable after construction
//! and safe to share across threads.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Label used for nodes or edges that carry no symbol.
pub const UNLABELED: &str = "";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one node")]
    Empty,
    #[error("edge ({0}, {1}) is a self-loop")]
    SelfLoop(usize, usize),
    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) references a node index out of range (n = {2})")]
    BadEndpoint(usize, usize, usize),
}

/// An undirected labeled edge, stored with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub label: String,
}

/// A labeled undirected simple graph.
///
/// Edges are kept sorted by `(a, b)` so that serialization and seeded
/// sampling are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    id: String,
    labels: Vec<String>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(
        id: impl Into<String>,
        labels: Vec<String>,
        edges: Vec<(usize, usize, String)>,
    ) -> Result<Self, GraphError> {
        let n = labels.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut normalized: Vec<Edge> = Vec::with_capacity(edges.len());
        for (u, v, label) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u, v));
            }
            if u >= n || v >= n {
                return Err(GraphError::BadEndpoint(u, v, n));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            normalized.push(Edge { a, b, label });
        }
        normalized.sort_by(|x, y| (x.a, x.b).cmp(&(y.a, y.b)));
        for w in normalized.windows(2) {
            if (w[0].a, w[0].b) == (w[1].a, w[1].b) {
                return Err(GraphError::DuplicateEdge(w[0].a, w[0].b));
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for e in &normalized {
            adjacency[e.a].push(e.b);
            adjacency[e.b].push(e.a);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Graph {
            id: id.into(),
            labels,
            edges: normalized,
            adjacency,
        })
    }

    /// Graph with every node carrying [`UNLABELED`].
    pub fn unlabeled(
        id: impl Into<String>,
        n: usize,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, GraphError> {
        Graph::new(
            id,
            vec![UNLABELED.to_string(); n],
            edges
                .into_iter()
                .map(|(u, v)| (u, v, UNLABELED.to_string()))
                .collect(),
        )
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Label of edge `(u, v)`, or `None` when the edge is absent.
    pub fn edge_label(&self, u: usize, v: usize) -> Option<&str> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges
            .binary_search_by(|e| (e.a, e.b).cmp(&(a, b)))
            .ok()
            .map(|idx| self.edges[idx].label.as_str())
    }

    /// Non-edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn complement_edges(&self) -> Vec<(usize, usize)> {
        let n = self.node_count();
        let mut out = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if !self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Direction of a seeded edge perturbation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbMode {
    Insert,
    Remove,
}

/// Returns a copy of `g` with `ceil(fraction * |E|)` edges inserted or
/// removed, chosen uniformly and deterministically for a fixed seed.
///
/// Inserted edges are unlabeled. Insertion is capped at the size of the
/// complement edge set; degenerate cases return an unchanged copy.
pub fn perturb_edges(g: &Graph, fraction: f64, mode: PerturbMode, seed: u64) -> Graph {
    let count = (fraction * g.edge_count() as f64).ceil() as usize;
    if count == 0 {
        return g.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize, String)> = match mode {
        PerturbMode::Remove => {
            let count = count.min(g.edge_count());
            let mut drop: Vec<usize> = sample(&mut rng, g.edge_count(), count).into_vec();
            drop.sort_unstable();
            g.edges()
                .iter()
                .enumerate()
                .filter(|(i, _)| drop.binary_search(i).is_err())
                .map(|(_, e)| (e.a, e.b, e.label.clone()))
                .collect()
        }
        PerturbMode::Insert => {
            let complement = g.complement_edges();
            let count = count.min(complement.len());
            if count == 0 {
                return g.clone();
            }
            let picked = sample(&mut rng, complement.len(), count);
            let mut edges: Vec<(usize, usize, String)> = g
                .edges()
                .iter()
                .map(|e| (e.a, e.b, e.label.clone()))
                .collect();
            for i in picked {
                let (a, b) = complement[i];
                edges.push((a, b, UNLABELED.to_string()));
            }
            edges
        }
    };
    Graph::new(g.id(), g.labels().to_vec(), edges).expect("perturbation preserves validity")
}

/// An ordered graph pair with `|V(g1)| <= |V(g2)|`.
///
/// GED is symmetric under uniform costs, so swapping to canonical order is
/// distance-preserving; `swapped` records whether the inputs were reordered.
#[derive(Debug, Clone)]
pub struct GraphPair {
    pub g1: Graph,
    pub g2: Graph,
    pub swapped: bool,
}

/// Orders two graphs so the source has no more nodes than the target.
/// Ties keep the input order.
pub fn make_pair(a: Graph, b: Graph) -> GraphPair {
    if a.node_count() <= b.node_count() {
        GraphPair {
            g1: a,
            g2: b,
            swapped: false,
        }
    } else {
        GraphPair {
            g1: b,
            g2: a,
            swapped: true,
        }
    }
}

impl GraphPair {
    pub fn size_sum(&self) -> usize {
        self.g1.node_count() + self.g2.node_count()
    }
}

/// Normalized similarity `exp(-2 * ged / (|V1| + |V2|))`, in (0, 1].
pub fn normalized_similarity(ged: u32, n1: usize, n2: usize) -> f64 {
    (-2.0 * ged as f64 / (n1 + n2) as f64).exp()
}

//! Graph data model and the mask/subgraph mechanics shared by every module.
//!
//! Graphs are undirected, loop-free, with 0/1 adjacency; masks are symmetric
//! per-edge weights in [0, 1] supported on the adjacency. All types are
//! immutable after construction.

use crate::error::{Error, Result};
use crate::numeric::DenseMatrix;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

/// Undirected edge in canonical (min, max) order.
pub type Edge = (usize, usize);

fn canonical(i: usize, j: usize) -> Edge {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

/// Task label carried by a graph: per-node classes or one class for the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Labels {
    Node(Vec<usize>),
    Graph(usize),
}

/// Undirected graph with node features and either node or graph labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    node_count: usize,
    adjacency: DenseMatrix,
    features: DenseMatrix,
    node_labels: Option<Vec<usize>>,
    graph_label: Option<usize>,
    target_node: Option<usize>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Build a graph from an edge list. Edges are canonicalized, deduplicated
    /// and sorted; self-loops are rejected.
    pub fn new(
        node_count: usize,
        edges: &[Edge],
        features: DenseMatrix,
        labels: Labels,
    ) -> Result<Self> {
        if features.rows() != node_count {
            return Err(Error::Usage(format!(
                "feature matrix has {} rows for {} nodes",
                features.rows(),
                node_count
            )));
        }
        let mut canon = BTreeSet::new();
        for &(i, j) in edges {
            if i == j {
                return Err(Error::Usage(format!("self-loop on node {i}")));
            }
            if i >= node_count || j >= node_count {
                return Err(Error::Usage(format!(
                    "edge ({i}, {j}) out of range for {node_count} nodes"
                )));
            }
            canon.insert(canonical(i, j));
        }
        let edges: Vec<Edge> = canon.into_iter().collect();
        let mut adjacency = DenseMatrix::zeros(node_count, node_count);
        for &(i, j) in &edges {
            adjacency.set(i, j, 1.0);
            adjacency.set(j, i, 1.0);
        }
        let (node_labels, graph_label) = match labels {
            Labels::Node(l) => {
                if l.len() != node_count {
                    return Err(Error::Usage(format!(
                        "{} node labels for {} nodes",
                        l.len(),
                        node_count
                    )));
                }
                (Some(l), None)
            }
            Labels::Graph(l) => (None, Some(l)),
        };
        Ok(Graph {
            node_count,
            adjacency,
            features,
            node_labels,
            graph_label,
            target_node: None,
            edges,
        })
    }

    /// Same graph with a node-classification target attached.
    pub fn with_target(mut self, node: usize) -> Result<Self> {
        if node >= self.node_count {
            return Err(Error::Usage(format!(
                "target node {node} out of range for {} nodes",
                self.node_count
            )));
        }
        self.target_node = Some(node);
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (a, b) = canonical(i, j);
        self.adjacency.get(a, b) != 0.0
    }

    pub fn adjacency(&self) -> &DenseMatrix {
        &self.adjacency
    }

    pub fn features(&self) -> &DenseMatrix {
        &self.features
    }

    pub fn node_labels(&self) -> Option<&[usize]> {
        self.node_labels.as_deref()
    }

    pub fn graph_label(&self) -> Option<usize> {
        self.graph_label
    }

    pub fn target_node(&self) -> Option<usize> {
        self.target_node
    }

    pub fn neighbors(&self, node: usize) -> Vec<usize> {
        (0..self.node_count)
            .filter(|&j| self.adjacency.get(node, j) != 0.0)
            .collect()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.neighbors(node).len()
    }

    /// True when every node can reach node 0.
    pub fn is_connected(&self) -> bool {
        if self.node_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.node_count];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.node_count
    }

    /// Rebuild with the same nodes/features/labels but a different edge set.
    fn with_edges(&self, edges: Vec<Edge>) -> Graph {
        let mut adjacency = DenseMatrix::zeros(self.node_count, self.node_count);
        for &(i, j) in &edges {
            adjacency.set(i, j, 1.0);
            adjacency.set(j, i, 1.0);
        }
        Graph {
            node_count: self.node_count,
            adjacency,
            features: self.features.clone(),
            node_labels: self.node_labels.clone(),
            graph_label: self.graph_label,
            target_node: self.target_node,
            edges,
        }
    }
}

/// Graph whose adjacency carries real-valued edge weights (a masked graph).
#[derive(Debug, Clone)]
pub struct MaskedGraph {
    adjacency: DenseMatrix,
    features: DenseMatrix,
    target_node: Option<usize>,
}

impl MaskedGraph {
    pub fn adjacency(&self) -> &DenseMatrix {
        &self.adjacency
    }
}

/// Anything a model forward pass can consume: adjacency, features, target.
pub trait GraphLike {
    fn adjacency(&self) -> &DenseMatrix;
    fn features(&self) -> &DenseMatrix;
    fn target_node(&self) -> Option<usize>;
    fn node_count(&self) -> usize {
        self.adjacency().rows()
    }
}

impl GraphLike for Graph {
    fn adjacency(&self) -> &DenseMatrix {
        &self.adjacency
    }
    fn features(&self) -> &DenseMatrix {
        &self.features
    }
    fn target_node(&self) -> Option<usize> {
        self.target_node
    }
}

impl GraphLike for MaskedGraph {
    fn adjacency(&self) -> &DenseMatrix {
        &self.adjacency
    }
    fn features(&self) -> &DenseMatrix {
        &self.features
    }
    fn target_node(&self) -> Option<usize> {
        self.target_node
    }
}

/// Symmetric per-edge importance weights in [0, 1] on the adjacency support.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedMask {
    weights: DenseMatrix,
    support: Vec<Edge>,
}

impl WeightedMask {
    /// Mask from per-edge weights over the graph's full edge set. Missing
    /// edges default to weight 0 but stay in the support.
    pub fn from_edge_weights(graph: &Graph, weights: &[(Edge, f64)]) -> Result<Self> {
        let mut m = DenseMatrix::zeros(graph.node_count(), graph.node_count());
        for &((i, j), w) in weights {
            if !graph.has_edge(i, j) {
                return Err(Error::MaskSupport(i, j));
            }
            if !(0.0..=1.0).contains(&w) {
                return Err(Error::Usage(format!(
                    "mask weight {w} on edge ({i}, {j}) outside [0, 1]"
                )));
            }
            let (a, b) = canonical(i, j);
            m.set(a, b, w);
            m.set(b, a, w);
        }
        Ok(WeightedMask {
            weights: m,
            support: graph.edges().to_vec(),
        })
    }

    /// Mask from a full weight matrix; symmetry, range and support are checked.
    pub fn from_matrix(graph: &Graph, weights: DenseMatrix) -> Result<Self> {
        let n = graph.node_count();
        if weights.shape() != (n, n) {
            return Err(Error::Usage(format!(
                "mask matrix is {}x{} for a {n}-node graph",
                weights.rows(),
                weights.cols()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let w = weights.get(i, j);
                if w != 0.0 && !graph.has_edge(i, j) {
                    return Err(Error::MaskSupport(i, j));
                }
                if !(0.0..=1.0).contains(&w) {
                    return Err(Error::Usage(format!(
                        "mask weight {w} at ({i}, {j}) outside [0, 1]"
                    )));
                }
                if (w - weights.get(j, i)).abs() > 1e-12 {
                    return Err(Error::Usage(format!("mask not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(WeightedMask {
            weights,
            support: graph.edges().to_vec(),
        })
    }

    pub fn all_ones(graph: &Graph) -> Self {
        let pairs: Vec<(Edge, f64)> = graph.edges().iter().map(|&e| (e, 1.0)).collect();
        Self::from_edge_weights(graph, &pairs).expect("own edges are valid support")
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights.get(i, j)
    }

    pub fn weights(&self) -> &DenseMatrix {
        &self.weights
    }

    pub fn support(&self) -> &[Edge] {
        &self.support
    }
}

/// Edge-count selector: the K highest-weight edges or the top R fraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SubgraphSpec {
    TopK(usize),
    TopR(f64),
}

impl SubgraphSpec {
    pub fn top_k(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Usage("top-K selector requires K >= 1".into()));
        }
        Ok(SubgraphSpec::TopK(k))
    }

    pub fn top_r(r: f64) -> Result<Self> {
        if !(r > 0.0 && r <= 1.0) {
            return Err(Error::Usage(format!("top-R ratio {r} outside (0, 1]")));
        }
        Ok(SubgraphSpec::TopR(r))
    }

    /// Number of edges demanded on a graph with `edge_count` edges, before capping.
    pub fn demand(&self, edge_count: usize) -> usize {
        match *self {
            SubgraphSpec::TopK(k) => k,
            SubgraphSpec::TopR(r) => (r * edge_count as f64).ceil() as usize,
        }
    }
}

impl std::fmt::Display for SubgraphSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            SubgraphSpec::TopK(k) => write!(f, "K={k}"),
            SubgraphSpec::TopR(r) => write!(f, "R={r}"),
        }
    }
}

/// Result of edge selection; `truncated` flags a demand larger than |E|.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectedEdges {
    pub edges: Vec<Edge>,
    pub truncated: bool,
}

/// Edges sorted by weight descending, ties broken by ascending (min, max)
/// endpoint order; the top K or ceil(R * |E|) are returned.
pub fn select_edges(mask: &WeightedMask, spec: &SubgraphSpec) -> Result<SelectedEdges> {
    if mask.support.is_empty() {
        return Err(Error::Usage("select_edges on an empty mask".into()));
    }
    let mut ranked: Vec<(Edge, f64)> = mask
        .support
        .iter()
        .map(|&e| (e, mask.weight(e.0, e.1)))
        .collect();
    ranked.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    let demand = spec.demand(ranked.len());
    let take = demand.min(ranked.len());
    Ok(SelectedEdges {
        edges: ranked[..take].iter().map(|&(e, _)| e).collect(),
        truncated: demand > ranked.len(),
    })
}

/// Replace the adjacency with adjacency (elementwise *) mask weights.
pub fn apply_mask(graph: &Graph, mask: &WeightedMask) -> Result<MaskedGraph> {
    for &(i, j) in mask.support() {
        if !graph.has_edge(i, j) {
            return Err(Error::MaskSupport(i, j));
        }
    }
    if mask.weights.shape() != graph.adjacency.shape() {
        return Err(Error::Usage(format!(
            "mask is {}x{} for a {}-node graph",
            mask.weights.rows(),
            mask.weights.cols(),
            graph.node_count
        )));
    }
    Ok(MaskedGraph {
        adjacency: graph.adjacency.zip(&mask.weights, |a, w| a * w),
        features: graph.features.clone(),
        target_node: graph.target_node,
    })
}

fn check_edges_in_graph(graph: &Graph, edges: &[Edge]) -> Result<HashSet<Edge>> {
    let own: HashSet<Edge> = graph.edges().iter().copied().collect();
    let mut listed = HashSet::with_capacity(edges.len());
    for &(i, j) in edges {
        let e = canonical(i, j);
        if !own.contains(&e) {
            return Err(Error::ForeignEdge(i, j));
        }
        listed.insert(e);
    }
    Ok(listed)
}

/// Subgraph keeping exactly the listed edges; nodes, features and labels copied.
pub fn binarize(graph: &Graph, edges: &[Edge]) -> Result<Graph> {
    let listed = check_edges_in_graph(graph, edges)?;
    let mut kept: Vec<Edge> = listed.into_iter().collect();
    kept.sort_unstable();
    Ok(graph.with_edges(kept))
}

/// Complement of `binarize`: the graph with the listed edges removed.
pub fn occlude(graph: &Graph, edges: &[Edge]) -> Result<Graph> {
    let listed = check_edges_in_graph(graph, edges)?;
    let kept: Vec<Edge> = graph
        .edges()
        .iter()
        .copied()
        .filter(|e| !listed.contains(e))
        .collect();
    Ok(graph.with_edges(kept))
}

/// Induced subgraph plus the node-id remapping it was built with.
#[derive(Debug, Clone)]
pub struct KhopSubgraph {
    pub graph: Graph,
    /// Old node id for each new node id.
    pub node_map: Vec<usize>,
}

/// Induced subgraph on all nodes within `k` hops of `node`; the target node
/// is set to the image of `node`. New ids preserve old-id order.
pub fn khop_subgraph(graph: &Graph, node: usize, k: usize) -> Result<KhopSubgraph> {
    if node >= graph.node_count() {
        return Err(Error::Usage(format!(
            "node {node} out of range for {} nodes",
            graph.node_count()
        )));
    }
    let mut depth = vec![usize::MAX; graph.node_count()];
    depth[node] = 0;
    let mut queue = VecDeque::from([node]);
    while let Some(u) = queue.pop_front() {
        if depth[u] == k {
            continue;
        }
        for v in graph.neighbors(u) {
            if depth[v] == usize::MAX {
                depth[v] = depth[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let node_map: Vec<usize> = (0..graph.node_count())
        .filter(|&v| depth[v] != usize::MAX)
        .collect();
    let mut new_id = vec![usize::MAX; graph.node_count()];
    for (idx, &old) in node_map.iter().enumerate() {
        new_id[old] = idx;
    }
    let edges: Vec<Edge> = graph
        .edges()
        .iter()
        .filter(|&&(i, j)| new_id[i] != usize::MAX && new_id[j] != usize::MAX)
        .map(|&(i, j)| canonical(new_id[i], new_id[j]))
        .collect();
    let rows: Vec<Vec<f64>> = node_map
        .iter()
        .map(|&old| graph.features.row(old).to_vec())
        .collect();
    let features = DenseMatrix::from_rows(&rows)?;
    let labels = match (&graph.node_labels, graph.graph_label) {
        (Some(l), _) => Labels::Node(node_map.iter().map(|&old| l[old]).collect()),
        (None, Some(l)) => Labels::Graph(l),
        (None, None) => Labels::Graph(0),
    };
    let sub = Graph::new(node_map.len(), &edges, features, labels)?.with_target(new_id[node])?;
    Ok(KhopSubgraph {
        graph: sub,
        node_map,
    })
}

/// A selected subgraph with its provenance.
#[derive(Debug, Clone)]
pub struct Explanation {
    pub source: Arc<Graph>,
    pub mask: WeightedMask,
    pub selected_edges: Vec<Edge>,
    pub selector: SubgraphSpec,
    pub label_under_f: usize,
    pub truncated: bool,
    pub explainer: String,
}

impl Explanation {
    /// Validates the subgraph contract: selected edges within the source, count
    /// matching the selector's demand capped at |E|.
    pub fn new(
        source: Arc<Graph>,
        mask: WeightedMask,
        selected: SelectedEdges,
        selector: SubgraphSpec,
        label_under_f: usize,
        explainer: impl Into<String>,
    ) -> Result<Self> {
        check_edges_in_graph(&source, &selected.edges)?;
        let expected = selector.demand(source.edge_count()).min(source.edge_count());
        if selected.edges.len() != expected {
            return Err(Error::Usage(format!(
                "selector {selector} demands {expected} edges, got {}",
                selected.edges.len()
            )));
        }
        Ok(Explanation {
            source,
            mask,
            selected_edges: selected.edges,
            selector,
            label_under_f,
            truncated: selected.truncated,
            explainer: explainer.into(),
        })
    }

    /// The hardened explanation subgraph G^s.
    pub fn subgraph(&self) -> Result<Graph> {
        binarize(&self.source, &self.selected_edges)
    }

    /// The occluded complement graph.
    pub fn occluded(&self) -> Result<Graph> {
        occlude(&self.source, &self.selected_edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(
            3,
            &[(0, 1), (1, 2), (0, 2)],
            DenseMatrix::filled(3, 2, 1.0),
            Labels::Graph(0),
        )
        .unwrap()
    }

    #[test]
    fn all_ones_mask_leaves_graph_unchanged() {
        let g = triangle();
        let m = WeightedMask::all_ones(&g);
        let masked = apply_mask(&g, &m).unwrap();
        assert_eq!(masked.adjacency(), g.adjacency());
    }

    #[test]
    fn all_zero_mask_gives_edgeless_graph() {
        let g = triangle();
        let pairs: Vec<(Edge, f64)> = g.edges().iter().map(|&e| (e, 0.0)).collect();
        let m = WeightedMask::from_edge_weights(&g, &pairs).unwrap();
        let masked = apply_mask(&g, &m).unwrap();
        assert!(masked.adjacency().values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn partial_mask_scales_one_edge() {
        let g = triangle();
        let m = WeightedMask::from_edge_weights(
            &g,
            &[(((0, 1)), 0.5), (((1, 2)), 1.0), (((0, 2)), 1.0)],
        )
        .unwrap();
        let masked = apply_mask(&g, &m).unwrap();
        assert_eq!(masked.adjacency().get(0, 1), 0.5);
        assert_eq!(masked.adjacency().get(1, 0), 0.5);
        assert_eq!(masked.adjacency().get(1, 2), 1.0);
    }

    #[test]
    fn mask_off_support_is_rejected() {
        let g = Graph::new(
            3,
            &[(0, 1)],
            DenseMatrix::filled(3, 1, 1.0),
            Labels::Graph(0),
        )
        .unwrap();
        let err = WeightedMask::from_edge_weights(&g, &[(((1, 2)), 0.3)]).unwrap_err();
        assert!(matches!(err, Error::MaskSupport(1, 2)));
    }

    #[test]
    fn select_top_1_picks_heaviest() {
        let g = triangle();
        let m = WeightedMask::from_edge_weights(
            &g,
            &[(((0, 1)), 0.9), (((1, 2)), 0.1), (((0, 2)), 0.5)],
        )
        .unwrap();
        let sel = select_edges(&m, &SubgraphSpec::top_k(1).unwrap()).unwrap();
        assert_eq!(sel.edges, vec![(0, 1)]);
        assert!(!sel.truncated);
    }

    #[test]
    fn equal_weights_break_ties_lexicographically() {
        let g = triangle();
        let m = WeightedMask::all_ones(&g);
        let sel = select_edges(&m, &SubgraphSpec::top_k(1).unwrap()).unwrap();
        assert_eq!(sel.edges, vec![(0, 1)]);
    }

    #[test]
    fn oversized_k_returns_all_and_flags_truncation() {
        let g = triangle();
        let m = WeightedMask::all_ones(&g);
        let sel = select_edges(&m, &SubgraphSpec::top_k(10).unwrap()).unwrap();
        assert_eq!(sel.edges.len(), 3);
        assert!(sel.truncated);
    }

    #[test]
    fn top_r_uses_ceiling() {
        // 3 edges at R = 0.5 -> ceil(1.5) = 2 edges.
        let g = triangle();
        let m = WeightedMask::all_ones(&g);
        let sel = select_edges(&m, &SubgraphSpec::top_r(0.5).unwrap()).unwrap();
        assert_eq!(sel.edges.len(), 2);
    }

    #[test]
    fn binarize_keeps_exactly_listed_edges() {
        let g = triangle();
        let sub = binarize(&g, &[(0, 1)]).unwrap();
        assert_eq!(sub.edges(), &[(0, 1)]);
        assert_eq!(sub.node_count(), 3);
        let full = binarize(&g, &g.edges().to_vec()).unwrap();
        assert_eq!(full.edges(), g.edges());
        let empty = binarize(&g, &[]).unwrap();
        assert!(empty.edges().is_empty());
    }

    #[test]
    fn occlude_is_the_complement_of_binarize() {
        let g = triangle();
        let kept = binarize(&g, &[(0, 1)]).unwrap();
        let cut = occlude(&g, &[(0, 1)]).unwrap();
        let mut union: Vec<Edge> = kept.edges().iter().chain(cut.edges()).copied().collect();
        union.sort_unstable();
        assert_eq!(union, g.edges());
        let unchanged = occlude(&g, &[]).unwrap();
        assert_eq!(unchanged.edges(), g.edges());
    }

    #[test]
    fn foreign_edge_is_a_validity_error() {
        let g = Graph::new(
            4,
            &[(0, 1), (1, 2)],
            DenseMatrix::filled(4, 1, 1.0),
            Labels::Graph(0),
        )
        .unwrap();
        assert!(matches!(
            binarize(&g, &[(2, 3)]).unwrap_err(),
            Error::ForeignEdge(2, 3)
        ));
        assert!(matches!(
            occlude(&g, &[(0, 3)]).unwrap_err(),
            Error::ForeignEdge(0, 3)
        ));
    }

    #[test]
    fn khop_zero_is_single_node() {
        let g = triangle();
        let sub = khop_subgraph(&g, 1, 0).unwrap();
        assert_eq!(sub.graph.node_count(), 1);
        assert!(sub.graph.edges().is_empty());
        assert_eq!(sub.node_map, vec![1]);
        assert_eq!(sub.graph.target_node(), Some(0));
    }

    #[test]
    fn khop_one_from_star_center_is_whole_star() {
        let g = Graph::new(
            5,
            &[(0, 1), (0, 2), (0, 3), (0, 4)],
            DenseMatrix::filled(5, 1, 1.0),
            Labels::Node(vec![0; 5]),
        )
        .unwrap();
        let sub = khop_subgraph(&g, 0, 1).unwrap();
        assert_eq!(sub.graph.node_count(), 5);
        assert_eq!(sub.graph.edge_count(), 4);
    }

    #[test]
    fn khop_matches_bfs_depth_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = 20;
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen_bool(0.12) {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::new(n, &edges, DenseMatrix::filled(n, 1, 1.0), Labels::Graph(0)).unwrap();
            let start = rng.gen_range(0..n);
            let sub = khop_subgraph(&g, start, 2).unwrap();

            // Independent BFS to depth 2.
            let mut dist = vec![usize::MAX; n];
            dist[start] = 0;
            let mut frontier = vec![start];
            for d in 1..=2 {
                let mut next = Vec::new();
                for &u in &frontier {
                    for v in g.neighbors(u) {
                        if dist[v] == usize::MAX {
                            dist[v] = d;
                            next.push(v);
                        }
                    }
                }
                frontier = next;
            }
            let expected: Vec<usize> = (0..n).filter(|&v| dist[v] != usize::MAX).collect();
            assert_eq!(sub.node_map, expected);
        }
    }

    #[test]
    fn explanation_enforces_edge_count() {
        let g = Arc::new(triangle());
        let m = WeightedMask::all_ones(&g);
        let sel = select_edges(&m, &SubgraphSpec::top_k(2).unwrap()).unwrap();
        let short = SelectedEdges {
            edges: sel.edges[..1].to_vec(),
            truncated: false,
        };
        assert!(Explanation::new(
            g.clone(),
            m.clone(),
            short,
            SubgraphSpec::TopK(2),
            0,
            "test"
        )
        .is_err());
        assert!(Explanation::new(g, m, sel, SubgraphSpec::TopK(2), 0, "test").is_ok());
    }
}

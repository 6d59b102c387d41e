//! Synthetic node-classification benchmarks: a scale-free base graph with
//! planted house motifs, and a balanced binary tree with planted 6-cycles.

use crate::datasets::SYNTHETIC_FEATURE_DIM;
use crate::error::Result;
use crate::graph::{Edge, Graph, Labels};
use crate::numeric::DenseMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Preferential-attachment parameter of the base graph.
const BA_ATTACHMENT: usize = 5;

/// Nodes per house motif. The house is drawn as a pentagon profile:
/// one top node, two middle nodes, two bottom nodes, five edges.
pub const HOUSE_NODES: usize = 5;
pub const HOUSE_EDGES: usize = 5;

/// Nodes per cycle motif.
pub const CYCLE_NODES: usize = 6;

/// Node labels: 0 base, 1 house top, 2 house middle, 3 house bottom.
const HOUSE_ROLES: [usize; HOUSE_NODES] = [1, 2, 2, 3, 3];

/// Local edges of one house: top-middle x2, middle-bottom x2, bottom-bottom.
const HOUSE_LOCAL_EDGES: [(usize, usize); HOUSE_EDGES] = [(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)];

/// In-motif edges of the house containing `node`, if the node is in a house.
/// `base_nodes` is the id of the first motif node.
pub fn house_edges_of(node: usize, base_nodes: usize) -> Option<Vec<Edge>> {
    if node < base_nodes {
        return None;
    }
    let start = base_nodes + (node - base_nodes) / HOUSE_NODES * HOUSE_NODES;
    Some(
        HOUSE_LOCAL_EDGES
            .iter()
            .map(|&(a, b)| (start + a, start + b))
            .collect(),
    )
}

fn barabasi_albert(base_nodes: usize, rng: &mut ChaCha8Rng) -> Vec<Edge> {
    let m = BA_ATTACHMENT.min(base_nodes.saturating_sub(1)).max(1);
    let seed_clique = (m).min(base_nodes);
    let mut edges = Vec::new();
    // Endpoint multiset; each edge contributes both endpoints, so sampling
    // uniformly from it is degree-proportional.
    let mut endpoints = Vec::new();
    for i in 0..seed_clique {
        for j in (i + 1)..seed_clique {
            edges.push((i, j));
            endpoints.push(i);
            endpoints.push(j);
        }
    }
    for v in seed_clique..base_nodes {
        let mut targets = std::collections::BTreeSet::new();
        while targets.len() < m {
            let t = if endpoints.is_empty() {
                rng.gen_range(0..v)
            } else {
                endpoints[rng.gen_range(0..endpoints.len())]
            };
            if t != v {
                targets.insert(t);
            }
        }
        for t in targets {
            edges.push((t, v));
            endpoints.push(t);
            endpoints.push(v);
        }
    }
    edges
}

/// Scale-free base graph with house motifs, each attached by one edge to a
/// uniformly chosen base node, plus `floor(ratio * nodes)` random extra edges.
pub fn generate_ba_shapes(
    base_nodes: usize,
    motif_count: usize,
    random_edge_ratio: f64,
    seed: u64,
) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = base_nodes + motif_count * HOUSE_NODES;
    let mut edges = barabasi_albert(base_nodes, &mut rng);
    let mut labels = vec![0usize; total];

    for h in 0..motif_count {
        let start = base_nodes + h * HOUSE_NODES;
        for (local, role) in HOUSE_ROLES.iter().enumerate() {
            labels[start + local] = *role;
        }
        for &(a, b) in &HOUSE_LOCAL_EDGES {
            edges.push((start + a, start + b));
        }
        // Attach one bottom node to the base graph.
        let anchor = rng.gen_range(0..base_nodes);
        edges.push((anchor, start + 3));
    }

    let mut present: std::collections::HashSet<Edge> = edges
        .iter()
        .map(|&(i, j)| if i < j { (i, j) } else { (j, i) })
        .collect();
    let extra = (random_edge_ratio * total as f64).floor() as usize;
    let mut added = 0;
    while added < extra {
        let i = rng.gen_range(0..total);
        let j = rng.gen_range(0..total);
        if i == j {
            continue;
        }
        let e = if i < j { (i, j) } else { (j, i) };
        if present.insert(e) {
            edges.push(e);
            added += 1;
        }
    }

    let features = DenseMatrix::filled(total, SYNTHETIC_FEATURE_DIM, 1.0);
    Graph::new(total, &edges, features, Labels::Node(labels))
}

/// Balanced binary tree with 6-cycle motifs, each attached by one edge to a
/// uniformly chosen tree node. Labels: 0 tree, 1 cycle.
pub fn generate_tree_cycles(tree_depth: usize, motif_count: usize, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tree_nodes = (1usize << tree_depth) - 1;
    let total = tree_nodes + motif_count * CYCLE_NODES;
    let mut edges = Vec::new();
    for v in 1..tree_nodes {
        edges.push(((v - 1) / 2, v));
    }
    let mut labels = vec![0usize; total];
    for c in 0..motif_count {
        let start = tree_nodes + c * CYCLE_NODES;
        for local in 0..CYCLE_NODES {
            labels[start + local] = 1;
            edges.push((start + local, start + (local + 1) % CYCLE_NODES));
        }
        let anchor = rng.gen_range(0..tree_nodes);
        edges.push((anchor, start));
    }
    let features = DenseMatrix::filled(total, SYNTHETIC_FEATURE_DIM, 1.0);
    Graph::new(total, &edges, features, Labels::Node(labels))
}

/// Deterministic shuffle used by training loops; exposed here so dataset
/// consumers share one shuffling convention.
pub fn shuffled_indices(count: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut ids: Vec<usize> = (0..count).collect();
    ids.shuffle(rng);
    ids
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_scale_ba_shapes_matches_published_counts() {
        let g = generate_ba_shapes(300, 80, 0.1, 0).unwrap();
        assert_eq!(g.node_count(), 700);
        let classes = g.node_labels().unwrap().iter().max().unwrap() + 1;
        assert_eq!(classes, 4);
    }

    #[test]
    fn no_motifs_means_all_base_labels() {
        let g = generate_ba_shapes(50, 0, 0.0, 1).unwrap();
        assert!(g.node_labels().unwrap().iter().all(|&l| l == 0));
    }

    #[test]
    fn house_nodes_are_adjacent_to_their_own_motif() {
        let base = 60;
        let g = generate_ba_shapes(base, 12, 0.1, 2).unwrap();
        for h in 0..12 {
            let start = base + h * HOUSE_NODES;
            for local in 0..HOUSE_NODES {
                let node = start + local;
                let has_motif_neighbor = g
                    .neighbors(node)
                    .iter()
                    .any(|&v| v >= start && v < start + HOUSE_NODES);
                assert!(
                    has_motif_neighbor,
                    "house node {node} has no same-motif neighbor"
                );
            }
        }
    }

    #[test]
    fn paper_scale_tree_cycles_matches_published_counts() {
        let g = generate_tree_cycles(9, 60, 0).unwrap();
        assert_eq!(g.node_count(), 871);
        let classes = g.node_labels().unwrap().iter().max().unwrap() + 1;
        assert_eq!(classes, 2);
    }

    #[test]
    fn no_motifs_means_pure_tree() {
        let g = generate_tree_cycles(6, 0, 3).unwrap();
        assert_eq!(g.edge_count(), g.node_count() - 1);
        assert!(g.is_connected());
    }

    #[test]
    fn every_cycle_node_lies_on_exactly_one_six_cycle() {
        let g = generate_tree_cycles(7, 10, 4).unwrap();
        let labels = g.node_labels().unwrap();
        let tree_nodes = (1usize << 7) - 1;
        for (node, &label) in labels.iter().enumerate() {
            if label != 1 {
                continue;
            }
            // Walk the unique ring this node was planted in.
            let start = tree_nodes + (node - tree_nodes) / CYCLE_NODES * CYCLE_NODES;
            for local in 0..CYCLE_NODES {
                let a = start + local;
                let b = start + (local + 1) % CYCLE_NODES;
                assert!(g.has_edge(a, b));
            }
            // No chords: inside the motif each node has exactly 2 motif neighbors.
            let motif_neighbors = g
                .neighbors(node)
                .iter()
                .filter(|&&v| v >= start && v < start + CYCLE_NODES)
                .count();
            assert_eq!(motif_neighbors, 2);
        }
    }

    #[test]
    fn generated_graphs_are_connected() {
        assert!(generate_ba_shapes(80, 10, 0.1, 5).unwrap().is_connected());
        assert!(generate_tree_cycles(6, 8, 5).unwrap().is_connected());
    }

    #[test]
    fn generation_is_deterministic_in_the_seed() {
        let a = generate_ba_shapes(60, 8, 0.1, 9).unwrap();
        let b = generate_ba_shapes(60, 8, 0.1, 9).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.node_labels(), b.node_labels());
        let c = generate_ba_shapes(60, 8, 0.1, 10).unwrap();
        assert_ne!(a.edges(), c.edges());
    }
}

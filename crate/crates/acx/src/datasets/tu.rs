//! Loader and writer for the four-file TU edge-list dataset layout:
//! `<name>_A.txt` (1-based global node-id pairs, comma separated),
//! `<name>_graph_indicator.txt` (graph id per node),
//! `<name>_graph_labels.txt`, and optional `<name>_node_labels.txt`.

use crate::datasets::SYNTHETIC_FEATURE_DIM;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Labels};
use crate::numeric::DenseMatrix;
use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// How node-label lines are interpreted on load.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TuTask {
    /// Node labels become one-hot node features; graph labels are targets.
    GraphClassification,
    /// Node labels are the targets; features are all-ones.
    NodeClassification,
}

/// Loaded graphs plus any non-fatal parse warnings.
#[derive(Debug)]
pub struct TuLoadResult {
    pub graphs: Vec<Arc<Graph>>,
    pub warnings: Vec<String>,
}

fn read_lines(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Format {
        path: path.to_path_buf(),
        msg: e.to_string(),
    })?;
    Ok(text.lines().map(|l| l.to_string()).collect())
}

fn parse_usize(path: &Path, line_no: usize, token: &str) -> Result<usize> {
    token.trim().parse::<usize>().map_err(|_| Error::Parse {
        path: path.to_path_buf(),
        line: line_no,
        msg: format!("expected an unsigned integer, got {token:?}"),
    })
}

fn parse_i64(path: &Path, line_no: usize, token: &str) -> Result<i64> {
    token.trim().parse::<i64>().map_err(|_| Error::Parse {
        path: path.to_path_buf(),
        line: line_no,
        msg: format!("expected an integer, got {token:?}"),
    })
}

/// Find the single `<name>_A.txt` under `dir` and return `name`.
fn detect_name(dir: &Path) -> Result<String> {
    let mut names = Vec::new();
    for entry in fs::read_dir(dir)? {
        let entry = entry?;
        let file = entry.file_name().to_string_lossy().to_string();
        if let Some(stem) = file.strip_suffix("_A.txt") {
            names.push(stem.to_string());
        }
    }
    match names.len() {
        0 => Err(Error::Format {
            path: dir.to_path_buf(),
            msg: "no <name>_A.txt file found".into(),
        }),
        1 => Ok(names.pop().unwrap()),
        _ => Err(Error::Format {
            path: dir.to_path_buf(),
            msg: format!("multiple datasets found: {names:?}"),
        }),
    }
}

/// Load a TU-layout dataset for graph classification, detecting the name.
pub fn load_tu_dataset(dir: &Path) -> Result<TuLoadResult> {
    let name = detect_name(dir)?;
    load_tu_named(dir, &name, TuTask::GraphClassification)
}

/// Load `<dir>/<name>_*.txt` with an explicit task interpretation.
pub fn load_tu_named(dir: &Path, name: &str, task: TuTask) -> Result<TuLoadResult> {
    let file = |suffix: &str| -> PathBuf { dir.join(format!("{name}_{suffix}.txt")) };
    let mut warnings = Vec::new();

    let indicator_path = file("graph_indicator");
    let indicator_lines = read_lines(&indicator_path)?;
    let mut graph_of_node = Vec::with_capacity(indicator_lines.len());
    for (idx, line) in indicator_lines.iter().enumerate() {
        let gid = parse_usize(&indicator_path, idx + 1, line)?;
        if gid == 0 {
            return Err(Error::Parse {
                path: indicator_path.clone(),
                line: idx + 1,
                msg: "graph ids are 1-based".into(),
            });
        }
        graph_of_node.push(gid - 1);
    }
    let node_count = graph_of_node.len();
    let graph_count = graph_of_node.iter().max().map_or(0, |m| m + 1);

    let labels_path = file("graph_labels");
    let label_lines = read_lines(&labels_path)?;
    if label_lines.len() != graph_count {
        return Err(Error::Parse {
            path: labels_path.clone(),
            line: label_lines.len(),
            msg: format!(
                "{} graph labels for {} graphs in the indicator",
                label_lines.len(),
                graph_count
            ),
        });
    }
    let raw_graph_labels: Vec<i64> = label_lines
        .iter()
        .enumerate()
        .map(|(idx, line)| parse_i64(&labels_path, idx + 1, line))
        .collect::<Result<_>>()?;
    let label_vocab: BTreeSet<i64> = raw_graph_labels.iter().copied().collect();
    let label_index: BTreeMap<i64, usize> = label_vocab
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, i))
        .collect();
    let graph_labels: Vec<usize> = raw_graph_labels.iter().map(|l| label_index[l]).collect();

    let node_labels_path = file("node_labels");
    let node_labels: Option<Vec<i64>> = if node_labels_path.exists() {
        let lines = read_lines(&node_labels_path)?;
        if lines.len() != node_count {
            return Err(Error::Parse {
                path: node_labels_path.clone(),
                line: lines.len(),
                msg: format!("{} node labels for {node_count} nodes", lines.len()),
            });
        }
        Some(
            lines
                .iter()
                .enumerate()
                .map(|(idx, line)| parse_i64(&node_labels_path, idx + 1, line))
                .collect::<Result<_>>()?,
        )
    } else {
        None
    };

    let edges_path = file("A");
    let edge_lines = read_lines(&edges_path)?;
    let mut directed: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut per_graph_edges: Vec<Vec<Edge>> = vec![Vec::new(); graph_count];
    for (idx, line) in edge_lines.iter().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let (a, b) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Parse {
                    path: edges_path.clone(),
                    line: idx + 1,
                    msg: format!("expected \"i, j\", got {line:?}"),
                })
            }
        };
        let i = parse_usize(&edges_path, idx + 1, a)?;
        let j = parse_usize(&edges_path, idx + 1, b)?;
        if i == 0 || j == 0 || i > node_count || j > node_count {
            return Err(Error::Parse {
                path: edges_path.clone(),
                line: idx + 1,
                msg: format!("node id out of range in ({i}, {j}); ids are 1-based"),
            });
        }
        let (i, j) = (i - 1, j - 1);
        if graph_of_node[i] != graph_of_node[j] {
            return Err(Error::Parse {
                path: edges_path.clone(),
                line: idx + 1,
                msg: format!(
                    "edge ({}, {}) crosses graphs {} and {}",
                    i + 1,
                    j + 1,
                    graph_of_node[i] + 1,
                    graph_of_node[j] + 1
                ),
            });
        }
        directed.insert((i, j));
    }
    let mut asymmetric = 0usize;
    let mut undirected: BTreeSet<Edge> = BTreeSet::new();
    for &(i, j) in &directed {
        if !directed.contains(&(j, i)) {
            asymmetric += 1;
        }
        undirected.insert(if i < j { (i, j) } else { (j, i) });
    }
    if asymmetric > 0 {
        warnings.push(format!(
            "{edges_path:?}: {asymmetric} edge records had no reverse record; symmetrized",
        ));
    }

    // Per-graph local node numbering in global-id order.
    let mut nodes_of_graph: Vec<Vec<usize>> = vec![Vec::new(); graph_count];
    for (node, &g) in graph_of_node.iter().enumerate() {
        nodes_of_graph[g].push(node);
    }
    let mut local_id = vec![0usize; node_count];
    for nodes in &nodes_of_graph {
        for (local, &global) in nodes.iter().enumerate() {
            local_id[global] = local;
        }
    }
    for &(i, j) in &undirected {
        per_graph_edges[graph_of_node[i]].push((local_id[i], local_id[j]));
    }

    let node_vocab: Vec<i64> = node_labels
        .as_ref()
        .map(|l| {
            let set: BTreeSet<i64> = l.iter().copied().collect();
            set.into_iter().collect()
        })
        .unwrap_or_default();
    let node_vocab_index: BTreeMap<i64, usize> = node_vocab
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, i))
        .collect();

    let mut graphs = Vec::with_capacity(graph_count);
    for g in 0..graph_count {
        let nodes = &nodes_of_graph[g];
        let n = nodes.len();
        let (features, labels) = match (task, &node_labels) {
            (TuTask::GraphClassification, Some(nl)) => {
                let mut f = DenseMatrix::zeros(n, node_vocab.len().max(1));
                for (local, &global) in nodes.iter().enumerate() {
                    f.set(local, node_vocab_index[&nl[global]], 1.0);
                }
                (f, Labels::Graph(graph_labels[g]))
            }
            (TuTask::GraphClassification, None) => {
                (DenseMatrix::filled(n, 1, 1.0), Labels::Graph(graph_labels[g]))
            }
            (TuTask::NodeClassification, Some(nl)) => {
                let targets: Vec<usize> = nodes
                    .iter()
                    .map(|&global| usize::try_from(nl[global]).unwrap_or(0))
                    .collect();
                (
                    DenseMatrix::filled(n, SYNTHETIC_FEATURE_DIM, 1.0),
                    Labels::Node(targets),
                )
            }
            (TuTask::NodeClassification, None) => {
                return Err(Error::Format {
                    path: node_labels_path,
                    msg: "node-classification load requires a node-labels file".into(),
                })
            }
        };
        graphs.push(Arc::new(Graph::new(n, &per_graph_edges[g], features, labels)?));
    }
    Ok(TuLoadResult { graphs, warnings })
}

/// Write graphs in the TU layout. Node labels are taken from node-label
/// targets when present, otherwise recovered from one-hot feature rows.
pub fn write_tu_dataset(dir: &Path, name: &str, graphs: &[Arc<Graph>]) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut a = String::new();
    let mut indicator = String::new();
    let mut graph_labels = String::new();
    let mut node_labels = String::new();
    let mut have_node_labels = false;
    let mut offset = 1usize; // global ids are 1-based

    for (gid, graph) in graphs.iter().enumerate() {
        for node in 0..graph.node_count() {
            indicator.push_str(&format!("{}\n", gid + 1));
            let label = match graph.node_labels() {
                Some(l) => Some(l[node]),
                None => one_hot_index(graph.features().row(node)),
            };
            if let Some(l) = label {
                have_node_labels = true;
                node_labels.push_str(&format!("{l}\n"));
            } else {
                node_labels.push_str("0\n");
            }
        }
        for &(i, j) in graph.edges() {
            a.push_str(&format!("{}, {}\n", offset + i, offset + j));
            a.push_str(&format!("{}, {}\n", offset + j, offset + i));
        }
        graph_labels.push_str(&format!("{}\n", graph.graph_label().unwrap_or(0)));
        offset += graph.node_count();
    }

    fs::write(dir.join(format!("{name}_A.txt")), a)?;
    fs::write(dir.join(format!("{name}_graph_indicator.txt")), indicator)?;
    fs::write(dir.join(format!("{name}_graph_labels.txt")), graph_labels)?;
    if have_node_labels {
        fs::write(dir.join(format!("{name}_node_labels.txt")), node_labels)?;
    }
    Ok(())
}

/// Index of the single 1.0 in a one-hot row, if the row is exactly one-hot.
fn one_hot_index(row: &[f64]) -> Option<usize> {
    let mut hot = None;
    for (i, &v) in row.iter().enumerate() {
        if v == 1.0 {
            if hot.is_some() {
                return None;
            }
            hot = Some(i);
        } else if v != 0.0 {
            return None;
        }
    }
    hot
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::TempDir;

    fn write_fixture(dir: &Path) {
        // Graph 1: triangle on nodes 1..3; graph 2: path on nodes 4..6.
        fs::write(
            dir.join("fix_A.txt"),
            "1, 2\n2, 1\n2, 3\n3, 2\n1, 3\n3, 1\n4, 5\n5, 4\n5, 6\n6, 5\n",
        )
        .unwrap();
        fs::write(dir.join("fix_graph_indicator.txt"), "1\n1\n1\n2\n2\n2\n").unwrap();
        fs::write(dir.join("fix_graph_labels.txt"), "1\n-1\n").unwrap();
        fs::write(dir.join("fix_node_labels.txt"), "0\n1\n0\n2\n1\n1\n").unwrap();
    }

    #[test]
    fn fixture_loads_with_exact_adjacency() {
        let tmp = TempDir::new().unwrap();
        write_fixture(tmp.path());
        let loaded = load_tu_dataset(tmp.path()).unwrap();
        assert!(loaded.warnings.is_empty());
        assert_eq!(loaded.graphs.len(), 2);
        let triangle = &loaded.graphs[0];
        assert_eq!(triangle.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(triangle.graph_label(), Some(1)); // labels {-1, 1} -> {0, 1}
        let path = &loaded.graphs[1];
        assert_eq!(path.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(path.graph_label(), Some(0));
        // One-hot features over vocabulary {0, 1, 2}.
        assert_eq!(triangle.features().cols(), 3);
        assert_eq!(triangle.features().row(1), &[0.0, 1.0, 0.0]);
    }

    #[test]
    fn asymmetric_edges_are_symmetrized_with_warning() {
        let tmp = TempDir::new().unwrap();
        write_fixture(tmp.path());
        fs::write(tmp.path().join("fix_A.txt"), "1, 2\n2, 3\n3, 2\n4, 5\n5, 6\n").unwrap();
        let loaded = load_tu_dataset(tmp.path()).unwrap();
        assert_eq!(loaded.warnings.len(), 1);
        assert_eq!(loaded.graphs[0].edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn cross_graph_edge_reports_line_number() {
        let tmp = TempDir::new().unwrap();
        write_fixture(tmp.path());
        fs::write(
            tmp.path().join("fix_A.txt"),
            "1, 2\n2, 1\n3, 4\n4, 3\n5, 6\n6, 5\n",
        )
        .unwrap();
        let err = load_tu_dataset(tmp.path()).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn round_trip_is_identity_on_the_graph_list() {
        let tmp = TempDir::new().unwrap();
        write_fixture(tmp.path());
        let loaded = load_tu_dataset(tmp.path()).unwrap();
        let out = TempDir::new().unwrap();
        write_tu_dataset(out.path(), "fix", &loaded.graphs).unwrap();
        let reloaded = load_tu_dataset(out.path()).unwrap();
        assert_eq!(loaded.graphs.len(), reloaded.graphs.len());
        for (a, b) in loaded.graphs.iter().zip(&reloaded.graphs) {
            assert_eq!(a.as_ref(), b.as_ref());
        }
    }
}

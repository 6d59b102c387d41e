//! The target classifier: a message-passing network over symmetric-normalized
//! adjacency with self-loops, ReLU between layers and a softmax head. Graph
//! tasks mean-pool node embeddings before the head. The forward pass accepts
//! fractional edge weights, so masked graphs are differentiable inputs.

use crate::datasets::TaskData;
use crate::datasets::{split::SplitIndex, synthetic::shuffled_indices};
use crate::error::{Error, Result};
use crate::graph::GraphLike;
use crate::model_io::{ModelReader, ModelWriter};
use crate::numeric::{adam_step, AdamConfig, AdamState, DenseMatrix, Tape, Var};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::path::Path;

/// Classification granularity of a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaskKind {
    Node,
    Graph,
}

impl TaskKind {
    fn tag(&self) -> &'static str {
        match self {
            TaskKind::Node => "node",
            TaskKind::Graph => "graph",
        }
    }
}

/// Default hidden width per task kind.
fn default_hidden(task: TaskKind) -> Vec<usize> {
    match task {
        TaskKind::Node => vec![32, 32, 32],
        TaskKind::Graph => vec![64, 64, 64],
    }
}

/// Symmetric-normalized adjacency with self-loops, recorded on the tape:
/// D^(-1/2) (A + I) D^(-1/2) with D the row sums of A + I.
pub fn normalized_adjacency(tape: &mut Tape, adjacency: Var) -> Result<Var> {
    let n = tape.value(adjacency).rows();
    let eye = tape.leaf(DenseMatrix::identity(n));
    let with_loops = tape.add(adjacency, eye)?;
    let degrees = tape.row_sums(with_loops);
    let inv_sqrt = tape.rsqrt(degrees);
    let scaled = tape.scale_rows(with_loops, inv_sqrt)?;
    tape.scale_cols(scaled, inv_sqrt)
}

/// Message-passing classifier with persistable parameters.
///
/// Parameter layout: for each layer a weight then a bias, followed by the
/// head weight and head bias.
#[derive(Debug, Clone)]
pub struct GnnModel {
    task: TaskKind,
    input_dim: usize,
    hidden: Vec<usize>,
    classes: usize,
    params: Vec<DenseMatrix>,
}

/// Tape handles for one registration of the model's parameters.
pub struct TapedGnn {
    pub params: Vec<Var>,
}

impl GnnModel {
    pub fn new(
        task: TaskKind,
        input_dim: usize,
        hidden: Vec<usize>,
        classes: usize,
        rng: &mut ChaCha8Rng,
    ) -> Self {
        let mut params = Vec::new();
        let mut prev = input_dim;
        for &width in &hidden {
            params.push(DenseMatrix::glorot(prev, width, rng));
            params.push(DenseMatrix::zeros(1, width));
            prev = width;
        }
        params.push(DenseMatrix::glorot(prev, classes, rng));
        params.push(DenseMatrix::zeros(1, classes));
        GnnModel {
            task,
            input_dim,
            hidden,
            classes,
            params,
        }
    }

    pub fn with_defaults(task: TaskKind, input_dim: usize, classes: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::new(task, input_dim, default_hidden(task), classes, &mut rng)
    }

    pub fn task(&self) -> TaskKind {
        self.task
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn params(&self) -> &[DenseMatrix] {
        &self.params
    }

    pub fn params_mut(&mut self) -> &mut [DenseMatrix] {
        &mut self.params
    }

    /// Bit-exact fingerprint of all weights.
    pub fn checksum(&self) -> u64 {
        crate::numeric::fingerprint_params(&self.params)
    }

    /// Register every parameter as a tape leaf.
    pub fn register(&self, tape: &mut Tape) -> TapedGnn {
        TapedGnn {
            params: self.params.iter().map(|p| tape.leaf(p.clone())).collect(),
        }
    }

    /// Forward pass from already-registered adjacency/feature variables.
    /// Returns per-node class probabilities (node task) or a single
    /// probability row (graph task).
    pub fn forward_vars(
        &self,
        tape: &mut Tape,
        taped: &TapedGnn,
        adjacency: Var,
        features: Var,
    ) -> Result<Var> {
        let feat_cols = tape.value(features).cols();
        if feat_cols != self.input_dim {
            return Err(Error::Dimension {
                op: "gnn_forward",
                lhs_rows: tape.value(features).rows(),
                lhs_cols: feat_cols,
                rhs_rows: self.input_dim,
                rhs_cols: self.hidden.first().copied().unwrap_or(self.classes),
            });
        }
        let norm = normalized_adjacency(tape, adjacency)?;
        let mut h = features;
        for layer in 0..self.hidden.len() {
            let w = taped.params[2 * layer];
            let b = taped.params[2 * layer + 1];
            let mixed = tape.matmul(norm, h)?;
            let lin = tape.matmul(mixed, w)?;
            let biased = tape.add_row_vec(lin, b)?;
            h = tape.relu(biased);
        }
        if self.task == TaskKind::Graph {
            h = tape.mean_rows(h);
        }
        let head_w = taped.params[self.params.len() - 2];
        let head_b = taped.params[self.params.len() - 1];
        let logits = tape.matmul(h, head_w)?;
        let logits = tape.add_row_vec(logits, head_b)?;
        Ok(tape.softmax_rows(logits))
    }

    /// Forward pass recording parameters as constants on the given tape.
    pub fn forward_on_tape(&self, tape: &mut Tape, adjacency: Var, features: Var) -> Result<Var> {
        let taped = self.register(tape);
        self.forward_vars(tape, &taped, adjacency, features)
    }

    /// Plain forward pass; no gradients.
    pub fn forward(&self, g: &impl GraphLike) -> Result<DenseMatrix> {
        let mut tape = Tape::inference();
        let adj = tape.leaf(g.adjacency().clone());
        let feats = tape.leaf(g.features().clone());
        let out = self.forward_on_tape(&mut tape, adj, feats)?;
        Ok(tape.value(out).clone())
    }

    /// The probability row the prediction is read from: the target node's row
    /// for node tasks (usage error without a target), row 0 for graph tasks.
    pub fn probability_row(&self, g: &impl GraphLike) -> Result<Vec<f64>> {
        let probs = self.forward(g)?;
        let row = match self.task {
            TaskKind::Graph => 0,
            TaskKind::Node => g.target_node().ok_or_else(|| {
                Error::Usage("node-task prediction requires a target node".into())
            })?,
        };
        Ok(probs.row(row).to_vec())
    }

    /// Predicted class and its probability vector; ties go to the lowest id.
    pub fn predict_label(&self, g: &impl GraphLike) -> Result<(usize, Vec<f64>)> {
        let row = self.probability_row(g)?;
        let label = argmax(&row);
        Ok((label, row))
    }

    pub fn save(&self, path: &Path, snapshot: Option<&str>) -> Result<()> {
        let widths: Vec<String> = std::iter::once(self.input_dim)
            .chain(self.hidden.iter().copied())
            .map(|w| w.to_string())
            .collect();
        let header = format!(
            "{} {} {} {}",
            self.task.tag(),
            self.hidden.len(),
            widths.join(","),
            self.classes
        );
        let mut writer = ModelWriter::new(&header, snapshot);
        for p in &self.params {
            writer.push_matrix(p);
        }
        std::fs::write(path, writer.into_string())?;
        Ok(())
    }

    /// Load a model; round-trips bit-exactly with `save`.
    pub fn load(path: &Path) -> Result<(Self, Option<String>)> {
        let mut reader = ModelReader::read(path)?;
        let header = reader.header.clone();
        if header.len() != 4 {
            return Err(Error::Format {
                path: path.to_path_buf(),
                msg: format!("expected 4 header fields, got {}", header.len()),
            });
        }
        let task = match header[0].as_str() {
            "node" => TaskKind::Node,
            "graph" => TaskKind::Graph,
            other => {
                return Err(Error::Format {
                    path: path.to_path_buf(),
                    msg: format!("unknown task tag {other:?}"),
                })
            }
        };
        let layer_count: usize = header[1].parse().map_err(|_| Error::Format {
            path: path.to_path_buf(),
            msg: format!("bad layer count {:?}", header[1]),
        })?;
        let widths: Vec<usize> = header[2]
            .split(',')
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Format {
                path: path.to_path_buf(),
                msg: format!("bad width list {:?}", header[2]),
            })?;
        let classes: usize = header[3].parse().map_err(|_| Error::Format {
            path: path.to_path_buf(),
            msg: format!("bad class count {:?}", header[3]),
        })?;
        if widths.len() != layer_count + 1 {
            return Err(Error::Format {
                path: path.to_path_buf(),
                msg: format!(
                    "width list has {} entries for {layer_count} layers",
                    widths.len()
                ),
            });
        }
        let mut params = Vec::new();
        for pair in widths.windows(2) {
            params.push(reader.next_matrix(pair[0], pair[1])?);
            params.push(reader.next_matrix(1, pair[1])?);
        }
        let last = *widths.last().unwrap();
        params.push(reader.next_matrix(last, classes)?);
        params.push(reader.next_matrix(1, classes)?);
        let snapshot = reader.snapshot.clone();
        reader.finish()?;
        Ok((
            GnnModel {
                task,
                input_dim: widths[0],
                hidden: widths[1..].to_vec(),
                classes,
                params,
            },
            snapshot,
        ))
    }
}

fn argmax(row: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in row.iter().enumerate() {
        if v > row[best] {
            best = i;
        }
    }
    best
}

/// Target-model training settings.
#[derive(Debug, Clone)]
pub struct TrainConfig {
    pub epochs: usize,
    pub lr: f64,
    pub weight_decay: f64,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            epochs: 200,
            lr: 0.01,
            weight_decay: 5e-4,
            seed: 0,
        }
    }
}

/// One training-log line.
#[derive(Debug, Clone, Copy)]
pub struct TrainLogRow {
    pub epoch: usize,
    pub loss: f64,
    pub val_accuracy: f64,
}

fn one_hot(labels: &[usize], classes: usize) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(labels.len(), classes);
    for (i, &l) in labels.iter().enumerate() {
        m.set(i, l, 1.0);
    }
    m
}

fn apply_weight_decay(grads: &mut [DenseMatrix], params: &[DenseMatrix], wd: f64) {
    if wd == 0.0 {
        return;
    }
    for (g, p) in grads.iter_mut().zip(params) {
        for (gv, pv) in g.values_mut().iter_mut().zip(p.values()) {
            *gv += wd * pv;
        }
    }
}

/// Train a classifier on the split's train instances with cross-entropy;
/// returns the best-validation-accuracy snapshot and the per-epoch log.
pub fn train(
    data: &TaskData,
    split: &SplitIndex,
    config: &TrainConfig,
) -> Result<(GnnModel, Vec<TrainLogRow>)> {
    if config.epochs == 0 {
        return Err(Error::Usage("training requires epochs >= 1".into()));
    }
    if config.lr <= 0.0 {
        return Err(Error::Usage("training requires lr > 0".into()));
    }
    let classes = data.class_count();
    if classes < 2 {
        return Err(Error::Usage("training requires at least 2 classes".into()));
    }
    let task = if data.is_node_task() {
        TaskKind::Node
    } else {
        TaskKind::Graph
    };
    let mut model = GnnModel::with_defaults(task, data.feature_dim(), classes, config.seed);
    let mut state = AdamState::for_params(&model.params);
    let adam = AdamConfig::with_lr(config.lr);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x747261696e);
    let mut log = Vec::with_capacity(config.epochs);
    let mut best: Option<(f64, Vec<DenseMatrix>)> = None;

    for epoch in 1..=config.epochs {
        let (loss, val_acc) = match data {
            TaskData::NodeGraph(graph) => {
                let labels = graph.node_labels().expect("node task carries node labels");
                let mut tape = Tape::new();
                let taped = model.register(&mut tape);
                let adj = tape.leaf(graph.adjacency().clone());
                let feats = tape.leaf(graph.features().clone());
                let probs = model.forward_vars(&mut tape, &taped, adj, feats)?;
                let train_rows = tape.select_rows(probs, split.train.clone())?;
                let targets: Vec<usize> = split.train.iter().map(|&i| labels[i]).collect();
                let target = tape.leaf(one_hot(&targets, classes));
                let loss_var = tape.cross_entropy(train_rows, target)?;
                let loss = tape.value(loss_var).scalar();
                if !loss.is_finite() {
                    return Err(Error::Numerical(format!(
                        "training loss is not finite at epoch {epoch}"
                    )));
                }
                let grads = tape.backward(loss_var)?;
                let mut grad_mats: Vec<DenseMatrix> = taped
                    .params
                    .iter()
                    .zip(&model.params)
                    .map(|(&v, p)| grads.get_or_zeros(v, p.rows(), p.cols()))
                    .collect();
                apply_weight_decay(&mut grad_mats, &model.params, config.weight_decay);
                // Validation accuracy straight off the same forward pass.
                let prob_values = tape.value(probs).clone();
                adam_step(&mut model.params, &grad_mats, &mut state, &adam)?;
                let correct = split
                    .validation
                    .iter()
                    .filter(|&&i| argmax(prob_values.row(i)) == labels[i])
                    .count();
                (loss, correct as f64 / split.validation.len().max(1) as f64)
            }
            TaskData::GraphSet(graphs) => {
                let order = shuffled_indices(split.train.len(), &mut rng);
                let mut total = 0.0;
                for &pos in &order {
                    let graph = &graphs[split.train[pos]];
                    let label = graph.graph_label().expect("graph task carries graph labels");
                    let mut tape = Tape::new();
                    let taped = model.register(&mut tape);
                    let adj = tape.leaf(graph.adjacency().clone());
                    let feats = tape.leaf(graph.features().clone());
                    let probs = model.forward_vars(&mut tape, &taped, adj, feats)?;
                    let target = tape.leaf(one_hot(&[label], classes));
                    let loss_var = tape.cross_entropy(probs, target)?;
                    let loss = tape.value(loss_var).scalar();
                    if !loss.is_finite() {
                        return Err(Error::Numerical(format!(
                            "training loss is not finite at epoch {epoch}"
                        )));
                    }
                    total += loss;
                    let grads = tape.backward(loss_var)?;
                    let mut grad_mats: Vec<DenseMatrix> = taped
                        .params
                        .iter()
                        .zip(&model.params)
                        .map(|(&v, p)| grads.get_or_zeros(v, p.rows(), p.cols()))
                        .collect();
                    apply_weight_decay(&mut grad_mats, &model.params, config.weight_decay);
                    adam_step(&mut model.params, &grad_mats, &mut state, &adam)?;
                }
                let correct = split
                    .validation
                    .iter()
                    .filter(|&&i| {
                        model
                            .predict_label(graphs[i].as_ref())
                            .map(|(l, _)| Some(l) == graphs[i].graph_label())
                            .unwrap_or(false)
                    })
                    .count();
                (
                    total / split.train.len().max(1) as f64,
                    correct as f64 / split.validation.len().max(1) as f64,
                )
            }
        };
        log.push(TrainLogRow {
            epoch,
            loss,
            val_accuracy: val_acc,
        });
        if best.as_ref().map_or(true, |(acc, _)| val_acc >= *acc) {
            best = Some((val_acc, model.params.clone()));
        }
    }
    if let Some((_, params)) = best {
        model.params = params;
    }
    Ok((model, log))
}

/// Accuracy of the model over the given instances.
pub fn accuracy(model: &GnnModel, data: &TaskData, instances: &[usize]) -> Result<f64> {
    if instances.is_empty() {
        return Err(Error::Usage("accuracy over an empty instance set".into()));
    }
    let mut correct = 0usize;
    match data {
        TaskData::NodeGraph(graph) => {
            let labels = graph.node_labels().expect("node task carries node labels");
            let probs = model.forward(graph.as_ref())?;
            for &i in instances {
                if argmax(probs.row(i)) == labels[i] {
                    correct += 1;
                }
            }
        }
        TaskData::GraphSet(graphs) => {
            for &i in instances {
                let (label, _) = model.predict_label(graphs[i].as_ref())?;
                if Some(label) == graphs[i].graph_label() {
                    correct += 1;
                }
            }
        }
    }
    Ok(correct as f64 / instances.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, Labels};

    fn small_graph() -> Graph {
        Graph::new(
            4,
            &[(0, 1), (1, 2), (2, 3)],
            DenseMatrix::from_rows(&[
                vec![1.0, 0.0],
                vec![0.0, 1.0],
                vec![1.0, 1.0],
                vec![0.5, 0.25],
            ])
            .unwrap(),
            Labels::Node(vec![0, 1, 0, 1]),
        )
        .unwrap()
    }

    #[test]
    fn output_rows_sum_to_one() {
        let g = small_graph();
        let model = GnnModel::with_defaults(TaskKind::Node, 2, 2, 3);
        let probs = model.forward(&g).unwrap();
        for r in 0..probs.rows() {
            let s: f64 = probs.row(r).iter().sum();
            assert!((s - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn edgeless_graph_depends_only_on_features() {
        // Without edges, two nodes with identical features get identical rows.
        let g = Graph::new(
            3,
            &[],
            DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap(),
            Labels::Node(vec![0, 0, 1]),
        )
        .unwrap();
        let model = GnnModel::with_defaults(TaskKind::Node, 2, 2, 1);
        let probs = model.forward(&g).unwrap();
        assert_eq!(probs.row(0), probs.row(1));
        assert_ne!(probs.row(0), probs.row(2));
    }

    #[test]
    fn predict_requires_target_for_node_task() {
        let g = small_graph();
        let model = GnnModel::with_defaults(TaskKind::Node, 2, 2, 3);
        assert!(model.predict_label(&g).is_err());
        let with_target = g.with_target(2).unwrap();
        assert!(model.predict_label(&with_target).is_ok());
    }

    #[test]
    fn argmax_ties_go_to_lowest_class() {
        assert_eq!(argmax(&[0.25, 0.25, 0.25, 0.25]), 0);
        assert_eq!(argmax(&[0.1, 0.45, 0.45]), 1);
    }

    #[test]
    fn save_load_round_trip_is_bit_exact() {
        let g = small_graph().with_target(1).unwrap();
        let model = GnnModel::with_defaults(TaskKind::Node, 2, 2, 9);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.gnn");
        model.save(&path, Some("deadbeef")).unwrap();
        let (loaded, snapshot) = GnnModel::load(&path).unwrap();
        assert_eq!(snapshot.as_deref(), Some("deadbeef"));
        assert_eq!(loaded.checksum(), model.checksum());
        let a = model.forward(&g).unwrap();
        let b = loaded.forward(&g).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn truncated_file_is_a_format_error() {
        let model = GnnModel::with_defaults(TaskKind::Node, 2, 2, 9);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.gnn");
        model.save(&path, None).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        std::fs::write(&path, lines[..lines.len() - 3].join("\n")).unwrap();
        match GnnModel::load(&path) {
            Err(Error::Format { .. }) | Err(Error::Parse { .. }) => {}
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn foreign_version_tag_is_a_version_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.gnn");
        std::fs::write(&path, "acx-gnn v9 node 1 2,2 2\n0 0\n").unwrap();
        assert!(matches!(
            GnnModel::load(&path),
            Err(Error::Version { .. })
        ));
    }

    #[test]
    fn permuting_nodes_permutes_outputs() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for trial in 0..10 {
            let n = 8;
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if (i + j + trial) % 3 == 0 {
                        edges.push((i, j));
                    }
                }
            }
            let feats = DenseMatrix::random_uniform(n, 3, 1.0, &mut rng);
            let g = Graph::new(n, &edges, feats.clone(), Labels::Graph(0)).unwrap();
            let model = GnnModel::with_defaults(TaskKind::Node, 3, 2, trial as u64);

            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let p_edges: Vec<(usize, usize)> =
                edges.iter().map(|&(i, j)| (perm[i], perm[j])).collect();
            let mut p_feat_rows = vec![vec![]; n];
            for i in 0..n {
                p_feat_rows[perm[i]] = feats.row(i).to_vec();
            }
            let pg = Graph::new(
                n,
                &p_edges,
                DenseMatrix::from_rows(&p_feat_rows).unwrap(),
                Labels::Graph(0),
            )
            .unwrap();

            let out = model.forward(&g).unwrap();
            let pout = model.forward(&pg).unwrap();
            for i in 0..n {
                for c in 0..2 {
                    assert!((out.get(i, c) - pout.get(perm[i], c)).abs() < 1e-9);
                }
            }
        }
    }
}

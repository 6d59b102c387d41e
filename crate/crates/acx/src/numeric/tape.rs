//! Reverse-mode gradient tape over dense matrices.
//!
//! Every operation records its inputs and primal value; `backward` replays the
//! record in exact reverse order and accumulates adjoints. One tape per
//! forward pass; tapes are independent, so separate models can run on
//! separate threads.

use crate::error::{Error, Result};
use crate::numeric::matrix::{self, DenseMatrix};

/// Log arguments are clamped to this floor so losses stay differentiable at 0/1.
pub const LOG_CLAMP: f64 = 1e-7;

/// Floor for inverse-square-root arguments (degree vectors are >= 1 in practice).
const RSQRT_FLOOR: f64 = 1e-12;

/// Handle to a value recorded on a tape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Var(usize);

/// Elementwise operation selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementwiseOp {
    Relu,
    Sigmoid,
    Multiply,
    Add,
}

/// Loss selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LossKind {
    SoftmaxCrossEntropy,
    BinaryCrossEntropy,
    Mse,
}

#[derive(Debug, Clone)]
enum Op {
    Leaf,
    MatMul(Var, Var),
    Transpose(Var),
    Add(Var, Var),
    Sub(Var, Var),
    Mul(Var, Var),
    Scale(Var, f64),
    AddRowVec(Var, Var),
    Relu(Var),
    Sigmoid(Var),
    RowSums(Var),
    Rsqrt(Var),
    ScaleRows(Var, Var),
    ScaleCols(Var, Var),
    MeanRows(Var),
    SoftmaxRows(Var),
    SelectRows(Var, Vec<usize>),
    Sum(Var),
    CrossEntropy(Var, Var),
    BinaryCrossEntropy(Var, Var),
    Mse(Var, Var),
}

struct Node {
    op: Op,
    value: DenseMatrix,
}

/// Ordered record of operations with per-node primal storage.
pub struct Tape {
    nodes: Vec<Node>,
    grad_enabled: bool,
}

/// Adjoints produced by one backward pass, indexed by `Var`.
pub struct Gradients {
    adjoints: Vec<Option<DenseMatrix>>,
}

impl Gradients {
    /// Adjoint of `v`, or `None` if no gradient flowed to it.
    pub fn get(&self, v: Var) -> Option<&DenseMatrix> {
        self.adjoints[v.0].as_ref()
    }

    /// Adjoint of `v`, zeros of the given shape if none flowed.
    pub fn get_or_zeros(&self, v: Var, rows: usize, cols: usize) -> DenseMatrix {
        match self.adjoints[v.0].as_ref() {
            Some(m) => m.clone(),
            None => DenseMatrix::zeros(rows, cols),
        }
    }
}

impl Default for Tape {
    fn default() -> Self {
        Self::new()
    }
}

impl Tape {
    pub fn new() -> Self {
        Tape {
            nodes: Vec::new(),
            grad_enabled: true,
        }
    }

    /// Tape that refuses to run a backward pass; used on pure inference paths.
    pub fn inference() -> Self {
        Tape {
            nodes: Vec::new(),
            grad_enabled: false,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Register a leaf value (input data or a parameter snapshot).
    pub fn leaf(&mut self, value: DenseMatrix) -> Var {
        self.push(Op::Leaf, value)
    }

    /// Primal value of a recorded variable.
    pub fn value(&self, v: Var) -> &DenseMatrix {
        &self.nodes[v.0].value
    }

    fn push(&mut self, op: Op, value: DenseMatrix) -> Var {
        debug_assert!(value.is_finite(), "tape op produced non-finite values");
        self.nodes.push(Node { op, value });
        Var(self.nodes.len() - 1)
    }

    fn shape(&self, v: Var) -> (usize, usize) {
        self.nodes[v.0].value.shape()
    }

    fn same_shape(&self, op: &'static str, a: Var, b: Var) -> Result<()> {
        matrix::check_same_shape(op, self.value(a), self.value(b))
    }

    pub fn matmul(&mut self, a: Var, b: Var) -> Result<Var> {
        let value = matrix::matmul(self.value(a), self.value(b))?;
        Ok(self.push(Op::MatMul(a, b), value))
    }

    pub fn transpose(&mut self, a: Var) -> Var {
        let value = self.value(a).transpose();
        self.push(Op::Transpose(a), value)
    }

    pub fn add(&mut self, a: Var, b: Var) -> Result<Var> {
        self.same_shape("add", a, b)?;
        let value = self.value(a).zip(self.value(b), |x, y| x + y);
        Ok(self.push(Op::Add(a, b), value))
    }

    pub fn sub(&mut self, a: Var, b: Var) -> Result<Var> {
        self.same_shape("sub", a, b)?;
        let value = self.value(a).zip(self.value(b), |x, y| x - y);
        Ok(self.push(Op::Sub(a, b), value))
    }

    pub fn mul(&mut self, a: Var, b: Var) -> Result<Var> {
        self.same_shape("multiply", a, b)?;
        let value = self.value(a).zip(self.value(b), |x, y| x * y);
        Ok(self.push(Op::Mul(a, b), value))
    }

    pub fn scale(&mut self, a: Var, s: f64) -> Var {
        let value = self.value(a).map(|x| x * s);
        self.push(Op::Scale(a, s), value)
    }

    /// Broadcast-add a 1 x cols row vector to every row of `m`.
    pub fn add_row_vec(&mut self, m: Var, v: Var) -> Result<Var> {
        let (rows, cols) = self.shape(m);
        let (vr, vc) = self.shape(v);
        if vr != 1 || vc != cols {
            return Err(Error::Dimension {
                op: "add_row_vec",
                lhs_rows: rows,
                lhs_cols: cols,
                rhs_rows: vr,
                rhs_cols: vc,
            });
        }
        let mut value = self.value(m).clone();
        for r in 0..rows {
            for c in 0..cols {
                let add = self.nodes[v.0].value.get(0, c);
                value.set(r, c, value.get(r, c) + add);
            }
        }
        Ok(self.push(Op::AddRowVec(m, v), value))
    }

    pub fn relu(&mut self, a: Var) -> Var {
        let value = self.value(a).map(|x| x.max(0.0));
        self.push(Op::Relu(a), value)
    }

    pub fn sigmoid(&mut self, a: Var) -> Var {
        let value = self.value(a).map(matrix::sigmoid);
        self.push(Op::Sigmoid(a), value)
    }

    /// Spec-shaped elementwise dispatch; `b` is required for Multiply/Add.
    pub fn elementwise(&mut self, op: ElementwiseOp, a: Var, b: Option<Var>) -> Result<Var> {
        match (op, b) {
            (ElementwiseOp::Relu, None) => Ok(self.relu(a)),
            (ElementwiseOp::Sigmoid, None) => Ok(self.sigmoid(a)),
            (ElementwiseOp::Multiply, Some(b)) => self.mul(a, b),
            (ElementwiseOp::Add, Some(b)) => self.add(a, b),
            (op, _) => Err(Error::Usage(format!("wrong operand count for {op:?}"))),
        }
    }

    /// Column vector of row sums.
    pub fn row_sums(&mut self, a: Var) -> Var {
        let value = matrix::row_sums(self.value(a));
        self.push(Op::RowSums(a), value)
    }

    /// Elementwise x^(-1/2) with a small positive floor on x.
    pub fn rsqrt(&mut self, a: Var) -> Var {
        let value = self.value(a).map(|x| x.max(RSQRT_FLOOR).powf(-0.5));
        self.push(Op::Rsqrt(a), value)
    }

    /// Multiply row i of `m` by `v[i]` (v is rows x 1).
    pub fn scale_rows(&mut self, m: Var, v: Var) -> Result<Var> {
        let (rows, cols) = self.shape(m);
        let (vr, vc) = self.shape(v);
        if vr != rows || vc != 1 {
            return Err(Error::Dimension {
                op: "scale_rows",
                lhs_rows: rows,
                lhs_cols: cols,
                rhs_rows: vr,
                rhs_cols: vc,
            });
        }
        let mut value = self.value(m).clone();
        for r in 0..rows {
            let s = self.nodes[v.0].value.get(r, 0);
            for c in 0..cols {
                value.set(r, c, value.get(r, c) * s);
            }
        }
        Ok(self.push(Op::ScaleRows(m, v), value))
    }

    /// Multiply column j of `m` by `v[j]` (v is cols x 1).
    pub fn scale_cols(&mut self, m: Var, v: Var) -> Result<Var> {
        let (rows, cols) = self.shape(m);
        let (vr, vc) = self.shape(v);
        if vr != cols || vc != 1 {
            return Err(Error::Dimension {
                op: "scale_cols",
                lhs_rows: rows,
                lhs_cols: cols,
                rhs_rows: vr,
                rhs_cols: vc,
            });
        }
        let mut value = self.value(m).clone();
        for r in 0..rows {
            for c in 0..cols {
                let s = self.nodes[v.0].value.get(c, 0);
                value.set(r, c, value.get(r, c) * s);
            }
        }
        Ok(self.push(Op::ScaleCols(m, v), value))
    }

    /// Row vector of column means (mean pooling over nodes).
    pub fn mean_rows(&mut self, a: Var) -> Var {
        let value = matrix::mean_rows(self.value(a));
        self.push(Op::MeanRows(a), value)
    }

    pub fn softmax_rows(&mut self, a: Var) -> Var {
        let value = matrix::softmax_rows(self.value(a));
        self.push(Op::SoftmaxRows(a), value)
    }

    /// Gather the listed rows into a new matrix (duplicates allowed).
    pub fn select_rows(&mut self, a: Var, rows: Vec<usize>) -> Result<Var> {
        let (n, cols) = self.shape(a);
        let mut value = DenseMatrix::zeros(rows.len(), cols);
        for (t, &r) in rows.iter().enumerate() {
            if r >= n {
                return Err(Error::Usage(format!(
                    "select_rows: row {r} out of range for {n} rows"
                )));
            }
            for c in 0..cols {
                value.set(t, c, self.nodes[a.0].value.get(r, c));
            }
        }
        Ok(self.push(Op::SelectRows(a, rows), value))
    }

    /// Total sum of all entries, as a 1x1 matrix.
    pub fn sum(&mut self, a: Var) -> Var {
        let total: f64 = self.value(a).values().iter().sum();
        self.push(Op::Sum(a), DenseMatrix::from_vec(1, 1, vec![total]).unwrap())
    }

    /// Mean over rows of -sum_j target * ln(clamp(pred)).
    pub fn cross_entropy(&mut self, pred: Var, target: Var) -> Result<Var> {
        self.same_shape("cross_entropy", pred, target)?;
        let p = self.value(pred);
        let t = self.value(target);
        let rows = p.rows();
        let mut total = 0.0;
        for i in 0..p.len() {
            total -= t.values()[i] * p.values()[i].max(LOG_CLAMP).ln();
        }
        let value = DenseMatrix::from_vec(1, 1, vec![total / rows as f64]).unwrap();
        Ok(self.push(Op::CrossEntropy(pred, target), value))
    }

    /// Mean over entries of -[t ln(clamp(p)) + (1-t) ln(clamp(1-p))].
    pub fn binary_cross_entropy(&mut self, pred: Var, target: Var) -> Result<Var> {
        self.same_shape("binary_cross_entropy", pred, target)?;
        let p = self.value(pred);
        let t = self.value(target);
        let n = p.len();
        let mut total = 0.0;
        for i in 0..n {
            let (pv, tv) = (p.values()[i], t.values()[i]);
            total -= tv * pv.max(LOG_CLAMP).ln() + (1.0 - tv) * (1.0 - pv).max(LOG_CLAMP).ln();
        }
        let value = DenseMatrix::from_vec(1, 1, vec![total / n as f64]).unwrap();
        Ok(self.push(Op::BinaryCrossEntropy(pred, target), value))
    }

    /// Mean over entries of (p - t)^2.
    pub fn mse(&mut self, pred: Var, target: Var) -> Result<Var> {
        self.same_shape("mse", pred, target)?;
        let p = self.value(pred);
        let t = self.value(target);
        let n = p.len();
        let total: f64 = p
            .values()
            .iter()
            .zip(t.values())
            .map(|(&a, &b)| (a - b) * (a - b))
            .sum();
        let value = DenseMatrix::from_vec(1, 1, vec![total / n as f64]).unwrap();
        Ok(self.push(Op::Mse(pred, target), value))
    }

    /// Spec-shaped loss dispatch.
    pub fn loss(&mut self, kind: LossKind, pred: Var, target: Var) -> Result<Var> {
        match kind {
            LossKind::SoftmaxCrossEntropy => self.cross_entropy(pred, target),
            LossKind::BinaryCrossEntropy => self.binary_cross_entropy(pred, target),
            LossKind::Mse => self.mse(pred, target),
        }
    }

    /// Reverse replay from a scalar loss; returns adjoints for every variable.
    pub fn backward(&self, loss: Var) -> Result<Gradients> {
        if !self.grad_enabled {
            return Err(Error::Usage(
                "backward called on an inference-mode tape".into(),
            ));
        }
        if self.shape(loss) != (1, 1) {
            return Err(Error::Usage(format!(
                "backward requires a scalar loss, got {:?}",
                self.shape(loss)
            )));
        }
        let mut adj: Vec<Option<DenseMatrix>> = vec![None; self.nodes.len()];
        adj[loss.0] = Some(DenseMatrix::filled(1, 1, 1.0));

        for i in (0..=loss.0).rev() {
            let g = match adj[i].clone() {
                Some(g) => g,
                None => continue,
            };
            self.propagate(i, &g, &mut adj);
        }
        Ok(Gradients { adjoints: adj })
    }

    fn propagate(&self, i: usize, g: &DenseMatrix, adj: &mut Vec<Option<DenseMatrix>>) {
        let acc = |adj: &mut Vec<Option<DenseMatrix>>, v: Var, m: DenseMatrix| {
            debug_assert_eq!(self.shape(v), m.shape(), "adjoint shape mismatch");
            match &mut adj[v.0] {
                Some(existing) => existing.add_assign(&m),
                slot @ None => *slot = Some(m),
            }
        };
        match &self.nodes[i].op {
            Op::Leaf => {}
            Op::MatMul(a, b) => {
                let bt = self.value(*b).transpose();
                let at = self.value(*a).transpose();
                acc(adj, *a, matrix::matmul(g, &bt).unwrap());
                acc(adj, *b, matrix::matmul(&at, g).unwrap());
            }
            Op::Transpose(a) => acc(adj, *a, g.transpose()),
            Op::Add(a, b) => {
                acc(adj, *a, g.clone());
                acc(adj, *b, g.clone());
            }
            Op::Sub(a, b) => {
                acc(adj, *a, g.clone());
                acc(adj, *b, g.map(|x| -x));
            }
            Op::Mul(a, b) => {
                acc(adj, *a, g.zip(self.value(*b), |x, y| x * y));
                acc(adj, *b, g.zip(self.value(*a), |x, y| x * y));
            }
            Op::Scale(a, s) => acc(adj, *a, g.map(|x| x * s)),
            Op::AddRowVec(m, v) => {
                acc(adj, *m, g.clone());
                let mut dv = DenseMatrix::zeros(1, g.cols());
                for r in 0..g.rows() {
                    for c in 0..g.cols() {
                        dv.set(0, c, dv.get(0, c) + g.get(r, c));
                    }
                }
                acc(adj, *v, dv);
            }
            Op::Relu(a) => {
                let da = g.zip(self.value(*a), |gv, x| if x > 0.0 { gv } else { 0.0 });
                acc(adj, *a, da);
            }
            Op::Sigmoid(a) => {
                let da = g.zip(&self.nodes[i].value, |gv, y| gv * y * (1.0 - y));
                acc(adj, *a, da);
            }
            Op::RowSums(a) => {
                let (rows, cols) = self.shape(*a);
                let mut da = DenseMatrix::zeros(rows, cols);
                for r in 0..rows {
                    let gr = g.get(r, 0);
                    for c in 0..cols {
                        da.set(r, c, gr);
                    }
                }
                acc(adj, *a, da);
            }
            Op::Rsqrt(a) => {
                let da = g.zip(self.value(*a), |gv, x| {
                    if x > RSQRT_FLOOR {
                        gv * (-0.5) * x.powf(-1.5)
                    } else {
                        0.0
                    }
                });
                acc(adj, *a, da);
            }
            Op::ScaleRows(m, v) => {
                let mv = self.value(*m);
                let vv = self.value(*v);
                let dm = {
                    let mut dm = g.clone();
                    for r in 0..dm.rows() {
                        let s = vv.get(r, 0);
                        for c in 0..dm.cols() {
                            dm.set(r, c, dm.get(r, c) * s);
                        }
                    }
                    dm
                };
                let mut dv = DenseMatrix::zeros(mv.rows(), 1);
                for r in 0..mv.rows() {
                    let mut s = 0.0;
                    for c in 0..mv.cols() {
                        s += g.get(r, c) * mv.get(r, c);
                    }
                    dv.set(r, 0, s);
                }
                acc(adj, *m, dm);
                acc(adj, *v, dv);
            }
            Op::ScaleCols(m, v) => {
                let mv = self.value(*m);
                let vv = self.value(*v);
                let dm = {
                    let mut dm = g.clone();
                    for r in 0..dm.rows() {
                        for c in 0..dm.cols() {
                            dm.set(r, c, dm.get(r, c) * vv.get(c, 0));
                        }
                    }
                    dm
                };
                let mut dv = DenseMatrix::zeros(mv.cols(), 1);
                for c in 0..mv.cols() {
                    let mut s = 0.0;
                    for r in 0..mv.rows() {
                        s += g.get(r, c) * mv.get(r, c);
                    }
                    dv.set(c, 0, s);
                }
                acc(adj, *m, dm);
                acc(adj, *v, dv);
            }
            Op::MeanRows(a) => {
                let (rows, cols) = self.shape(*a);
                let inv = 1.0 / rows as f64;
                let mut da = DenseMatrix::zeros(rows, cols);
                for r in 0..rows {
                    for c in 0..cols {
                        da.set(r, c, g.get(0, c) * inv);
                    }
                }
                acc(adj, *a, da);
            }
            Op::SoftmaxRows(a) => {
                let y = &self.nodes[i].value;
                let mut da = DenseMatrix::zeros(y.rows(), y.cols());
                for r in 0..y.rows() {
                    let dot: f64 = (0..y.cols()).map(|c| g.get(r, c) * y.get(r, c)).sum();
                    for c in 0..y.cols() {
                        da.set(r, c, y.get(r, c) * (g.get(r, c) - dot));
                    }
                }
                acc(adj, *a, da);
            }
            Op::SelectRows(a, rows) => {
                let (n, cols) = self.shape(*a);
                let mut da = DenseMatrix::zeros(n, cols);
                for (t, &r) in rows.iter().enumerate() {
                    for c in 0..cols {
                        da.set(r, c, da.get(r, c) + g.get(t, c));
                    }
                }
                acc(adj, *a, da);
            }
            Op::Sum(a) => {
                let (rows, cols) = self.shape(*a);
                acc(adj, *a, DenseMatrix::filled(rows, cols, g.scalar()));
            }
            Op::CrossEntropy(pred, target) => {
                let p = self.value(*pred);
                let t = self.value(*target);
                let scale = g.scalar() / p.rows() as f64;
                let dp = p.zip(t, |pv, tv| {
                    if pv > LOG_CLAMP {
                        -tv / pv * scale
                    } else {
                        0.0
                    }
                });
                let dt = p.map(|pv| -pv.max(LOG_CLAMP).ln() * scale);
                acc(adj, *pred, dp);
                acc(adj, *target, dt);
            }
            Op::BinaryCrossEntropy(pred, target) => {
                let p = self.value(*pred);
                let t = self.value(*target);
                let scale = g.scalar() / p.len() as f64;
                let dp = p.zip(t, |pv, tv| {
                    let pos = if pv > LOG_CLAMP { tv / pv } else { 0.0 };
                    let neg = if 1.0 - pv > LOG_CLAMP {
                        (1.0 - tv) / (1.0 - pv)
                    } else {
                        0.0
                    };
                    -(pos - neg) * scale
                });
                let dt = p.map(|pv| {
                    -(pv.max(LOG_CLAMP).ln() - (1.0 - pv).max(LOG_CLAMP).ln()) * scale
                });
                acc(adj, *pred, dp);
                acc(adj, *target, dt);
            }
            Op::Mse(pred, target) => {
                let p = self.value(*pred);
                let t = self.value(*target);
                let scale = 2.0 * g.scalar() / p.len() as f64;
                let dp = p.zip(t, |pv, tv| (pv - tv) * scale);
                let dt = p.zip(t, |pv, tv| -(pv - tv) * scale);
                acc(adj, *pred, dp);
                acc(adj, *target, dt);
            }
        }
    }
}

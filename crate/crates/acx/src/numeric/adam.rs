//! Adam optimizer over lists of parameter matrices.

use crate::error::{Error, Result};
use crate::numeric::matrix::DenseMatrix;

/// Optimizer hyperparameters. Defaults: lr 1e-3, beta1 0.9, beta2 0.999, eps 1e-8.
#[derive(Debug, Clone, Copy)]
pub struct AdamConfig {
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl Default for AdamConfig {
    fn default() -> Self {
        AdamConfig {
            lr: 1e-3,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
        }
    }
}

impl AdamConfig {
    pub fn with_lr(lr: f64) -> Self {
        AdamConfig {
            lr,
            ..Default::default()
        }
    }
}

/// First/second moment estimates plus the shared timestep.
#[derive(Debug, Clone)]
pub struct AdamState {
    pub timestep: u64,
    first: Vec<DenseMatrix>,
    second: Vec<DenseMatrix>,
}

impl AdamState {
    /// Zero-initialized state matching the given parameter shapes.
    pub fn for_params(params: &[DenseMatrix]) -> Self {
        AdamState {
            timestep: 0,
            first: params
                .iter()
                .map(|p| DenseMatrix::zeros(p.rows(), p.cols()))
                .collect(),
            second: params
                .iter()
                .map(|p| DenseMatrix::zeros(p.rows(), p.cols()))
                .collect(),
        }
    }
}

/// One Adam update over all parameters; increments the state timestep.
pub fn adam_step(
    params: &mut [DenseMatrix],
    grads: &[DenseMatrix],
    state: &mut AdamState,
    config: &AdamConfig,
) -> Result<()> {
    if params.len() != grads.len() || params.len() != state.first.len() {
        return Err(Error::Usage(format!(
            "adam_step: {} params, {} grads, {} state slots",
            params.len(),
            grads.len(),
            state.first.len()
        )));
    }
    state.timestep += 1;
    let t = state.timestep as f64;
    let bias1 = 1.0 - config.beta1.powf(t);
    let bias2 = 1.0 - config.beta2.powf(t);
    for ((p, g), (m, v)) in params
        .iter_mut()
        .zip(grads)
        .zip(state.first.iter_mut().zip(state.second.iter_mut()))
    {
        if p.shape() != g.shape() {
            return Err(Error::Dimension {
                op: "adam_step",
                lhs_rows: p.rows(),
                lhs_cols: p.cols(),
                rhs_rows: g.rows(),
                rhs_cols: g.cols(),
            });
        }
        for i in 0..p.len() {
            let gi = g.values()[i];
            let mi = config.beta1 * m.values()[i] + (1.0 - config.beta1) * gi;
            let vi = config.beta2 * v.values()[i] + (1.0 - config.beta2) * gi * gi;
            m.values_mut()[i] = mi;
            v.values_mut()[i] = vi;
            let m_hat = mi / bias1;
            let v_hat = vi / bias2;
            p.values_mut()[i] -= config.lr * m_hat / (v_hat.sqrt() + config.eps);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gradient_leaves_params_unchanged() {
        let mut params = vec![DenseMatrix::filled(2, 2, 1.5)];
        let grads = vec![DenseMatrix::zeros(2, 2)];
        let mut state = AdamState::for_params(&params);
        adam_step(&mut params, &grads, &mut state, &AdamConfig::default()).unwrap();
        assert_eq!(params[0], DenseMatrix::filled(2, 2, 1.5));
        assert_eq!(state.timestep, 1);
    }

    #[test]
    fn first_step_moves_against_gradient_sign() {
        let config = AdamConfig::default();
        let mut params = vec![DenseMatrix::from_vec(1, 2, vec![0.0, 0.0]).unwrap()];
        let grads = vec![DenseMatrix::from_vec(1, 2, vec![3.0, -0.2]).unwrap()];
        let mut state = AdamState::for_params(&params);
        adam_step(&mut params, &grads, &mut state, &config).unwrap();
        // After bias correction the first step is -lr * g / (|g| + eps), i.e. -lr * sign(g).
        let expect = |g: f64| -config.lr * g / (g.abs() + config.eps);
        assert!((params[0].values()[0] - expect(3.0)).abs() < 1e-12);
        assert!((params[0].values()[1] - expect(-0.2)).abs() < 1e-12);
    }

    #[test]
    fn quadratic_descent_shrinks_weight() {
        // f(w) = w^2, grad = 2w, starting at w = 1.
        let mut params = vec![DenseMatrix::filled(1, 1, 1.0)];
        let mut state = AdamState::for_params(&params);
        let config = AdamConfig::with_lr(0.05);
        let mut prev = 1.0_f64;
        for _ in 0..10 {
            let w = params[0].scalar();
            let grads = vec![DenseMatrix::filled(1, 1, 2.0 * w)];
            adam_step(&mut params, &grads, &mut state, &config).unwrap();
            let now = params[0].scalar().abs();
            assert!(now < prev, "|w| should decrease monotonically");
            prev = now;
        }
    }
}

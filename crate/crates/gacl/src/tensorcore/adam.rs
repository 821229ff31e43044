use super::TensorError;

/// Whether an update was applied or rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdamOutcome {
    Applied,
    /// Gradients contained NaN/Inf; parameters were left untouched.
    SkippedNonFinite,
}

/// Adam with bias correction over a fixed list of parameter tensors.
#[derive(Debug, Clone)]
pub struct AdamState {
    lr: f64,
    beta1: f64,
    beta2: f64,
    eps: f64,
    step: u64,
    m: Vec<Vec<f64>>,
    v: Vec<Vec<f64>>,
}

impl AdamState {
    /// `shapes` is the flattened length of each parameter tensor, in the same
    /// order that `step` will receive them.
    pub fn new(lr: f64, shapes: &[usize]) -> Self {
        AdamState {
            lr,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
            step: 0,
            m: shapes.iter().map(|&n| vec![0.0; n]).collect(),
            v: shapes.iter().map(|&n| vec![0.0; n]).collect(),
        }
    }

    pub fn learning_rate(&self) -> f64 {
        self.lr
    }

    pub fn steps_taken(&self) -> u64 {
        self.step
    }

    pub fn step(
        &mut self,
        params: &mut [&mut [f64]],
        grads: &[&[f64]],
    ) -> Result<AdamOutcome, TensorError> {
        if params.len() != self.m.len() || grads.len() != self.m.len() {
            return Err(TensorError::DimMismatch(format!(
                "adam tracks {} tensors, got {} params / {} grads",
                self.m.len(),
                params.len(),
                grads.len()
            )));
        }
        for (i, (p, g)) in params.iter().zip(grads).enumerate() {
            if p.len() != self.m[i].len() || g.len() != self.m[i].len() {
                return Err(TensorError::DimMismatch(format!(
                    "adam tensor {i}: expected len {}, got param {} / grad {}",
                    self.m[i].len(),
                    p.len(),
                    g.len()
                )));
            }
        }
        if grads.iter().any(|g| g.iter().any(|v| !v.is_finite())) {
            log::warn!("adam: non-finite gradient, update skipped");
            return Ok(AdamOutcome::SkippedNonFinite);
        }

        self.step += 1;
        let bc1 = 1.0 - self.beta1.powi(self.step as i32);
        let bc2 = 1.0 - self.beta2.powi(self.step as i32);
        for ((p, g), (m, v)) in params
            .iter_mut()
            .zip(grads)
            .zip(self.m.iter_mut().zip(self.v.iter_mut()))
        {
            for k in 0..p.len() {
                m[k] = self.beta1 * m[k] + (1.0 - self.beta1) * g[k];
                v[k] = self.beta2 * v[k] + (1.0 - self.beta2) * g[k] * g[k];
                let m_hat = m[k] / bc1;
                let v_hat = v[k] / bc2;
                p[k] -= self.lr * m_hat / (v_hat.sqrt() + self.eps);
            }
        }
        Ok(AdamOutcome::Applied)
    }
}

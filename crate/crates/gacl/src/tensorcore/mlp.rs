use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::{axpy, dot};
use super::{Matrix, TensorError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Activation {
    Tanh,
    Sigmoid,
    Identity,
}

impl Activation {
    fn apply(self, x: f64) -> f64 {
        match self {
            Activation::Tanh => x.tanh(),
            Activation::Sigmoid => 1.0 / (1.0 + (-x).exp()),
            Activation::Identity => x,
        }
    }

    /// Derivative expressed through the activation output.
    fn derivative_from_output(self, y: f64) -> f64 {
        match self {
            Activation::Tanh => 1.0 - y * y,
            Activation::Sigmoid => y * (1.0 - y),
            Activation::Identity => 1.0,
        }
    }
}

/// One affine layer: `y = act(x Wᵀ + b)` with `W` stored out×in.
#[derive(Debug, Clone)]
pub struct Layer {
    pub weight: Matrix,
    pub bias: Vec<f64>,
    pub activation: Activation,
}

/// Dense feed-forward network. Inputs are batches: one sample per row.
#[derive(Debug, Clone)]
pub struct Mlp {
    layers: Vec<Layer>,
}

/// Activations recorded by a forward pass; `acts[0]` is the input batch.
pub struct ForwardCache {
    acts: Vec<Matrix>,
}

impl ForwardCache {
    pub fn output(&self) -> &Matrix {
        self.acts.last().expect("cache holds at least the input")
    }
}

#[derive(Debug, Clone)]
pub struct MlpGrads {
    pub layers: Vec<(Matrix, Vec<f64>)>,
}

impl MlpGrads {
    pub fn zeros_like(mlp: &Mlp) -> Self {
        MlpGrads {
            layers: mlp
                .layers
                .iter()
                .map(|l| {
                    (
                        Matrix::zeros(l.weight.rows(), l.weight.cols()),
                        vec![0.0; l.bias.len()],
                    )
                })
                .collect(),
        }
    }

    pub fn scale(&mut self, s: f64) {
        for (w, b) in &mut self.layers {
            for v in w.data_mut() {
                *v *= s;
            }
            for v in b {
                *v *= s;
            }
        }
    }

    pub fn slices(&self) -> Vec<&[f64]> {
        let mut out = Vec::with_capacity(self.layers.len() * 2);
        for (w, b) in &self.layers {
            out.push(w.data());
            out.push(b.as_slice());
        }
        out
    }
}

impl Mlp {
    pub fn new(layers: Vec<Layer>) -> Result<Self, TensorError> {
        for pair in layers.windows(2) {
            if pair[0].weight.rows() != pair[1].weight.cols() {
                return Err(TensorError::DimMismatch(format!(
                    "layer output {} does not chain into next input {}",
                    pair[0].weight.rows(),
                    pair[1].weight.cols()
                )));
            }
        }
        for l in &layers {
            if l.bias.len() != l.weight.rows() {
                return Err(TensorError::DimMismatch(format!(
                    "bias length {} != weight rows {}",
                    l.bias.len(),
                    l.weight.rows()
                )));
            }
        }
        Ok(Mlp { layers })
    }

    /// Random init: `N(0, 1/sqrt(fan_in))` weights, zero biases. The last
    /// layer's weights are additionally scaled by `last_layer_scale` (small
    /// values keep freshly built policy heads near zero output).
    pub fn init(
        dims: &[usize],
        hidden: Activation,
        output: Activation,
        last_layer_scale: f64,
        rng: &mut impl Rng,
    ) -> Self {
        assert!(dims.len() >= 2, "need at least input and output dims");
        let mut layers = Vec::with_capacity(dims.len() - 1);
        for (i, io) in dims.windows(2).enumerate() {
            let (fan_in, fan_out) = (io[0], io[1]);
            let last = i + 2 == dims.len();
            let scale = (1.0 / fan_in as f64).sqrt() * if last { last_layer_scale } else { 1.0 };
            let weight = Matrix::from_fn(fan_out, fan_in, |_, _| {
                let z: f64 = rng.sample(StandardNormal);
                z * scale
            });
            layers.push(Layer {
                weight,
                bias: vec![0.0; fan_out],
                activation: if last { output } else { hidden },
            });
        }
        Mlp { layers }
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].weight.cols()
    }

    pub fn output_dim(&self) -> usize {
        self.layers.last().unwrap().weight.rows()
    }

    pub fn param_count(&self) -> usize {
        self.layers
            .iter()
            .map(|l| l.weight.data().len() + l.bias.len())
            .sum()
    }

    /// Batched forward pass; one sample per input row.
    pub fn forward(&self, input: &Matrix) -> Result<(Matrix, ForwardCache), TensorError> {
        if input.cols() != self.input_dim() {
            return Err(TensorError::DimMismatch(format!(
                "mlp input dim {} != expected {}",
                input.cols(),
                self.input_dim()
            )));
        }
        let mut acts = Vec::with_capacity(self.layers.len() + 1);
        acts.push(input.clone());
        for layer in &self.layers {
            let x = acts.last().unwrap();
            let out_dim = layer.weight.rows();
            let mut y = Matrix::zeros(x.rows(), out_dim);
            for r in 0..x.rows() {
                let xr = x.row(r);
                let yr = y.row_mut(r);
                for (o, yo) in yr.iter_mut().enumerate() {
                    *yo = layer
                        .activation
                        .apply(dot(xr, layer.weight.row(o)) + layer.bias[o]);
                }
            }
            acts.push(y);
        }
        let output = acts.last().unwrap().clone();
        Ok((output, ForwardCache { acts }))
    }

    /// Forward for a single sample, discarding the cache.
    pub fn forward_vec(&self, input: &[f64]) -> Result<Vec<f64>, TensorError> {
        let (out, _) = self.forward(&Matrix::from_row(input))?;
        Ok(out.row(0).to_vec())
    }

    /// Exact reverse-mode gradients of the forward map.
    ///
    /// `output_grad` is dL/d(output), one row per sample. Returns parameter
    /// gradients and dL/d(input). The cache must come from a forward pass of
    /// this network on the same batch.
    pub fn backward(
        &self,
        cache: &ForwardCache,
        output_grad: &Matrix,
    ) -> Result<(MlpGrads, Matrix), TensorError> {
        if cache.acts.len() != self.layers.len() + 1 {
            return Err(TensorError::StaleCache(format!(
                "cache holds {} activations, network has {} layers",
                cache.acts.len(),
                self.layers.len()
            )));
        }
        let out = cache.acts.last().unwrap();
        if output_grad.rows() != out.rows() || output_grad.cols() != out.cols() {
            return Err(TensorError::StaleCache(format!(
                "output grad {}x{} does not match cached output {}x{}",
                output_grad.rows(),
                output_grad.cols(),
                out.rows(),
                out.cols()
            )));
        }
        for (i, layer) in self.layers.iter().enumerate() {
            if cache.acts[i].cols() != layer.weight.cols() {
                return Err(TensorError::StaleCache(format!(
                    "cached activation {} has dim {}, layer expects {}",
                    i,
                    cache.acts[i].cols(),
                    layer.weight.cols()
                )));
            }
        }

        let batch = output_grad.rows();
        let mut grads = MlpGrads::zeros_like(self);
        let mut upstream = output_grad.clone();
        for (li, layer) in self.layers.iter().enumerate().rev() {
            let x = &cache.acts[li];
            let y = &cache.acts[li + 1];
            // dz = upstream ⊙ act'(y)
            let mut dz = upstream;
            for r in 0..batch {
                let yr = y.row(r);
                for (c, g) in dz.row_mut(r).iter_mut().enumerate() {
                    *g *= layer.activation.derivative_from_output(yr[c]);
                }
            }
            let (dw, db) = &mut grads.layers[li];
            let mut dx = Matrix::zeros(batch, layer.weight.cols());
            for r in 0..batch {
                let dzr = dz.row(r);
                let xr = x.row(r);
                for (o, &g) in dzr.iter().enumerate() {
                    if g != 0.0 {
                        axpy(g, xr, dw.row_mut(o));
                        axpy(g, layer.weight.row(o), dx.row_mut(r));
                    }
                    db[o] += g;
                }
            }
            upstream = dx;
        }
        Ok((grads, upstream))
    }

    /// Mutable slices over every parameter tensor, in checkpoint order
    /// (weight then bias per layer).
    pub fn param_slices_mut(&mut self) -> Vec<&mut [f64]> {
        let mut out = Vec::with_capacity(self.layers.len() * 2);
        for l in &mut self.layers {
            out.push(l.weight.data_mut());
            out.push(l.bias.as_mut_slice());
        }
        out
    }

    pub fn param_slices(&self) -> Vec<&[f64]> {
        let mut out = Vec::with_capacity(self.layers.len() * 2);
        for l in &self.layers {
            out.push(l.weight.data());
            out.push(l.bias.as_slice());
        }
        out
    }
}

//! Feed-forward / attention network representation.
//!
//! A [`NetworkSpec`] is an ordered list of layers over a flat feature axis.
//! `NeuronSlot` layers mark the points where spiking neurons are inserted;
//! in a plain ANN pass they act as identity. All execution goes through
//! [`run_network`], which hands each slot's input to a caller-supplied hook,
//! so the same walker serves ANN inference, IF/MTN simulation and converted
//! SFN inference.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SpikeError};
use crate::io::atomic_write;
use crate::tensor::Tensor;

pub const NETWORK_SCHEMA: &str = "spikeforge-network-v1";

/// GELU tanh approximation: `0.5*x*(1 + tanh(sqrt(2/pi)*(x + 0.044715*x^3)))`.
/// The constants are fixed here so recorded activation dumps are reproducible.
pub const GELU_SQRT_2_OVER_PI: f64 = 0.797_884_560_802_865_4;
pub const GELU_CUBIC_COEFF: f64 = 0.044_715;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LayerKind {
    /// Affine map `y = W x + b`, weights `[out, in]` row-major.
    Linear { weights: Tensor, bias: Tensor },
    Relu,
    Gelu,
    SoftMax { axis: usize },
    /// Single-head self-attention over `[n, d]` token matrices.
    AttentionHead {
        wq: Tensor,
        wk: Tensor,
        wv: Tensor,
        wo: Tensor,
        scale: f64,
    },
    /// Insertion point for a spiking neuron; identity in a pure ANN pass.
    NeuronSlot { id: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerSpec {
    pub name: String,
    #[serde(flatten)]
    pub kind: LayerKind,
}

impl LayerSpec {
    pub fn new(name: impl Into<String>, kind: LayerKind) -> Self {
        LayerSpec {
            name: name.into(),
            kind,
        }
    }

    pub fn is_slot(&self) -> bool {
        matches!(self.kind, LayerKind::NeuronSlot { .. })
    }

    pub fn slot_id(&self) -> Option<&str> {
        match &self.kind {
            LayerKind::NeuronSlot { id } => Some(id),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkSpec {
    pub input_dim: usize,
    pub layers: Vec<LayerSpec>,
}

/// Execution counters reported by [`run_network`]. `layer_passes` counts
/// traversals of non-neuronal layers, `neuron_evals` counts per-element
/// slot evaluations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ForwardCounters {
    pub layer_passes: u64,
    pub neuron_evals: u64,
}

impl ForwardCounters {
    pub fn merge(&mut self, other: ForwardCounters) {
        self.layer_passes += other.layer_passes;
        self.neuron_evals += other.neuron_evals;
    }
}

pub struct RunOutput {
    pub output: Tensor,
    /// Inputs of the requested layers (pre-neuron activations for slots).
    pub recorded: BTreeMap<String, Tensor>,
    pub counters: ForwardCounters,
}

impl NetworkSpec {
    pub fn new(input_dim: usize, layers: Vec<LayerSpec>) -> Result<Self> {
        let net = NetworkSpec { input_dim, layers };
        net.validate()?;
        Ok(net)
    }

    /// Checks the dimension chain, slot id uniqueness and slot placement.
    pub fn validate(&self) -> Result<()> {
        if self.input_dim == 0 {
            return Err(SpikeError::InvalidNetwork("input_dim must be positive".into()));
        }
        let mut dim = self.input_dim;
        let mut seen = BTreeSet::new();
        for (i, layer) in self.layers.iter().enumerate() {
            if let Some(id) = layer.slot_id() {
                if !seen.insert(id.to_string()) {
                    return Err(SpikeError::InvalidNetwork(format!(
                        "duplicate NeuronSlot id '{id}'"
                    )));
                }
                if i > 0 && self.layers[i - 1].is_slot() {
                    return Err(SpikeError::InvalidNetwork(format!(
                        "NeuronSlot '{id}' must follow a non-neuron layer"
                    )));
                }
            }
            dim = layer_out_dim(&layer.kind, dim).map_err(|e| {
                SpikeError::InvalidNetwork(format!("layer '{}': {e}", layer.name))
            })?;
        }
        Ok(())
    }

    pub fn output_dim(&self) -> usize {
        let mut dim = self.input_dim;
        for layer in &self.layers {
            dim = layer_out_dim(&layer.kind, dim).unwrap_or(dim);
        }
        dim
    }

    pub fn slot_ids(&self) -> Vec<String> {
        self.layers
            .iter()
            .filter_map(|l| l.slot_id().map(str::to_string))
            .collect()
    }

    /// Name of the layer feeding each slot, keyed by slot id.
    /// A slot that is the first layer is fed by the raw input (`None`).
    pub fn slot_feeders(&self) -> BTreeMap<String, Option<String>> {
        let mut out = BTreeMap::new();
        for (i, layer) in self.layers.iter().enumerate() {
            if let Some(id) = layer.slot_id() {
                let feeder = if i == 0 {
                    None
                } else {
                    Some(self.layers[i - 1].name.clone())
                };
                out.insert(id.to_string(), feeder);
            }
        }
        out
    }
}

/// Output feature count of a layer given its input feature count.
pub fn layer_out_dim(kind: &LayerKind, in_dim: usize) -> Result<usize> {
    match kind {
        LayerKind::Linear { weights, bias } => {
            let (out, inp) = (weights.shape()[0], weights.shape()[1]);
            if weights.shape().len() != 2 {
                return Err(SpikeError::InvalidParam {
                    name: "weights",
                    reason: "must be 2-D".into(),
                });
            }
            if inp != in_dim {
                return Err(SpikeError::DimensionMismatch {
                    context: "linear input".into(),
                    expected: in_dim,
                    got: inp,
                });
            }
            if bias.shape() != [out] {
                return Err(SpikeError::DimensionMismatch {
                    context: "linear bias".into(),
                    expected: out,
                    got: bias.len(),
                });
            }
            Ok(out)
        }
        LayerKind::AttentionHead { wq, wk, wv, wo, scale } => {
            for (name, w) in [("wq", wq), ("wk", wk), ("wv", wv), ("wo", wo)] {
                if w.shape().len() != 2 {
                    return Err(SpikeError::InvalidParam {
                        name: "attention weight",
                        reason: format!("{name} must be 2-D"),
                    });
                }
            }
            if *scale <= 0.0 {
                return Err(SpikeError::InvalidParam {
                    name: "scale",
                    reason: "must be positive".into(),
                });
            }
            if wq.shape()[1] != in_dim || wk.shape()[1] != in_dim || wv.shape()[1] != in_dim {
                return Err(SpikeError::DimensionMismatch {
                    context: "attention input".into(),
                    expected: in_dim,
                    got: wq.shape()[1],
                });
            }
            if wq.shape()[0] != wk.shape()[0] {
                return Err(SpikeError::DimensionMismatch {
                    context: "attention q/k".into(),
                    expected: wq.shape()[0],
                    got: wk.shape()[0],
                });
            }
            if wo.shape()[1] != wv.shape()[0] {
                return Err(SpikeError::DimensionMismatch {
                    context: "attention o/v".into(),
                    expected: wv.shape()[0],
                    got: wo.shape()[1],
                });
            }
            if wo.shape()[0] != in_dim {
                return Err(SpikeError::DimensionMismatch {
                    context: "attention output".into(),
                    expected: in_dim,
                    got: wo.shape()[0],
                });
            }
            Ok(in_dim)
        }
        _ => Ok(in_dim),
    }
}

fn gelu(x: f64) -> f64 {
    0.5 * x * (1.0 + (GELU_SQRT_2_OVER_PI * (x + GELU_CUBIC_COEFF * x * x * x)).tanh())
}

/// Applies a single non-neuronal layer. `NeuronSlot` is identity here.
pub fn apply_layer(kind: &LayerKind, input: &Tensor) -> Result<Tensor> {
    match kind {
        LayerKind::Linear { weights, bias } => apply_linear(weights, bias, input),
        LayerKind::Relu => Ok(input.map(|v| v.max(0.0))),
        LayerKind::Gelu => Ok(input.map(gelu)),
        LayerKind::SoftMax { axis } => input.softmax(*axis),
        LayerKind::AttentionHead { wq, wk, wv, wo, scale } => {
            attention_forward(wq, wk, wv, wo, *scale, input)
        }
        LayerKind::NeuronSlot { .. } => Ok(input.clone()),
    }
}

fn apply_linear(weights: &Tensor, bias: &Tensor, input: &Tensor) -> Result<Tensor> {
    let in_dim = weights.shape()[1];
    let out_dim = weights.shape()[0];
    if input.last_dim() != in_dim {
        return Err(SpikeError::DimensionMismatch {
            context: "linear input".into(),
            expected: in_dim,
            got: input.last_dim(),
        });
    }
    let rows = input.leading_rows();
    let mut out = vec![0.0; rows * out_dim];
    for r in 0..rows {
        let x = &input.data()[r * in_dim..(r + 1) * in_dim];
        for o in 0..out_dim {
            let w = &weights.data()[o * in_dim..(o + 1) * in_dim];
            let mut acc = bias.data()[o];
            for (wi, xi) in w.iter().zip(x) {
                acc += wi * xi;
            }
            out[r * out_dim + o] = acc;
        }
    }
    let mut shape = input.shape().to_vec();
    *shape.last_mut().unwrap() = out_dim;
    Tensor::new(shape, out)
}

/// Single-head attention: `Wo · (SoftMax(scale · QKᵀ) · V)` applied per token.
/// Tokens are rows of a `[n, d]` matrix.
pub fn attention_forward(
    wq: &Tensor,
    wk: &Tensor,
    wv: &Tensor,
    wo: &Tensor,
    scale: f64,
    tokens: &Tensor,
) -> Result<Tensor> {
    if tokens.shape().len() != 2 {
        return Err(SpikeError::InvalidParam {
            name: "tokens",
            reason: format!("attention expects [n, d], got {:?}", tokens.shape()),
        });
    }
    let q = tokens.matmul(&wq.transposed()?)?;
    let k = tokens.matmul(&wk.transposed()?)?;
    let v = tokens.matmul(&wv.transposed()?)?;
    let scores = q.matmul(&k.transposed()?)?.scale(scale);
    let attn = scores.softmax(1)?;
    let ctx = attn.matmul(&v)?;
    ctx.matmul(&wo.transposed()?)
}

/// Walks the network. Slot inputs are passed to `hook`, whose return value
/// continues the pass; every other layer is applied directly. Layers whose
/// names appear in `record` have their *input* tensor captured.
pub fn run_network(
    net: &NetworkSpec,
    input: &Tensor,
    record: &BTreeSet<String>,
    hook: &mut dyn FnMut(&str, &Tensor) -> Result<Tensor>,
) -> Result<RunOutput> {
    if input.last_dim() != net.input_dim {
        return Err(SpikeError::DimensionMismatch {
            context: "network input".into(),
            expected: net.input_dim,
            got: input.last_dim(),
        });
    }
    let mut current = input.clone();
    let mut recorded = BTreeMap::new();
    let mut counters = ForwardCounters::default();
    for layer in &net.layers {
        if record.contains(&layer.name) {
            recorded.insert(layer.name.clone(), current.clone());
        }
        current = match &layer.kind {
            LayerKind::NeuronSlot { id } => {
                counters.neuron_evals += current.len() as u64;
                hook(id, &current)?
            }
            kind => {
                counters.layer_passes += 1;
                apply_layer(kind, &current)?
            }
        };
        if !current.is_finite() {
            return Err(SpikeError::NonFinite {
                layer: layer.name.clone(),
            });
        }
    }
    Ok(RunOutput {
        output: current,
        recorded,
        counters,
    })
}

/// Pure ANN forward pass: slots are identity.
pub fn forward(
    net: &NetworkSpec,
    input: &Tensor,
    record: &BTreeSet<String>,
) -> Result<(Tensor, BTreeMap<String, Tensor>)> {
    let run = run_network(net, input, record, &mut |_, t| Ok(t.clone()))?;
    Ok((run.output, run.recorded))
}

/// Numerically verifies that a layer commutes with linear combination,
/// bias excluded: with `g(x) = f(x) - f(0)`, checks
/// `g(a·x + b·y) == a·g(x) + b·g(y)` on seeded probe vectors. Affine layers
/// (Linear with bias) pass; ReLU, GELU, SoftMax and attention fail. This is
/// exactly the property that lets averages move through a layer.
pub fn linearity_probe(layer: &LayerSpec, in_dim: usize, seed: u64) -> Result<()> {
    let probe_dim = match layer.kind {
        LayerKind::AttentionHead { .. } => in_dim * 2, // two tokens
        _ => in_dim,
    };
    let as_tensor = |data: Vec<f64>| -> Result<Tensor> {
        match layer.kind {
            LayerKind::AttentionHead { .. } => Tensor::new(vec![2, in_dim], data),
            _ => Ok(Tensor::vector(data)),
        }
    };
    let zero = apply_layer(&layer.kind, &as_tensor(vec![0.0; probe_dim])?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_dev: f64 = 0.0;
    for _ in 0..4 {
        let x: Vec<f64> = (0..probe_dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        let y: Vec<f64> = (0..probe_dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        let (a, b) = (2.0, -3.0);
        let combo: Vec<f64> = x.iter().zip(&y).map(|(xi, yi)| a * xi + b * yi).collect();
        let gx = apply_layer(&layer.kind, &as_tensor(x)?)?.sub(&zero)?;
        let gy = apply_layer(&layer.kind, &as_tensor(y)?)?.sub(&zero)?;
        let gc = apply_layer(&layer.kind, &as_tensor(combo)?)?.sub(&zero)?;
        let expect = gx.scale(a).add(&gy.scale(b))?;
        max_dev = max_dev.max(gc.sub(&expect)?.max_abs());
    }
    if max_dev > 1e-9 {
        return Err(SpikeError::NonlinearLayer {
            layer: layer.name.clone(),
            max_dev,
        });
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct NetworkFile {
    schema: String,
    #[serde(flatten)]
    net: NetworkSpec,
}

pub fn save_network(net: &NetworkSpec, path: &std::path::Path) -> Result<()> {
    let file = NetworkFile {
        schema: NETWORK_SCHEMA.to_string(),
        net: net.clone(),
    };
    let text = serde_json::to_string_pretty(&file).expect("network serialization");
    atomic_write(path, text.as_bytes())
}

pub fn load_network(path: &std::path::Path) -> Result<NetworkSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| SpikeError::io(path.display().to_string(), e))?;
    let file: NetworkFile = serde_json::from_str(&text).map_err(|e| SpikeError::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    if file.schema != NETWORK_SCHEMA {
        return Err(SpikeError::Parse {
            path: path.display().to_string(),
            message: format!("unsupported schema '{}'", file.schema),
        });
    }
    file.net.validate()?;
    Ok(file.net)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear(name: &str, w: &[Vec<f64>], b: Vec<f64>) -> LayerSpec {
        LayerSpec::new(
            name,
            LayerKind::Linear {
                weights: Tensor::matrix(w).unwrap(),
                bias: Tensor::vector(b),
            },
        )
    }

    #[test]
    fn identity_linear_forward() {
        let net = NetworkSpec::new(
            2,
            vec![linear("l", &[vec![1.0, 0.0], vec![0.0, 1.0]], vec![0.0, 0.0])],
        )
        .unwrap();
        let (out, _) = forward(&net, &Tensor::vector(vec![3.0, 4.0]), &BTreeSet::new()).unwrap();
        assert_eq!(out.data(), &[3.0, 4.0]);
    }

    #[test]
    fn affine_forward() {
        let net = NetworkSpec::new(
            2,
            vec![linear("l", &[vec![2.0, 0.0], vec![0.0, 2.0]], vec![1.0, 1.0])],
        )
        .unwrap();
        let (out, _) = forward(&net, &Tensor::vector(vec![1.0, 1.0]), &BTreeSet::new()).unwrap();
        assert_eq!(out.data(), &[3.0, 3.0]);
    }

    #[test]
    fn two_layer_against_hand_rolled_matmul() {
        // Independent oracle: explicit loops, no Tensor machinery.
        let w1 = [vec![0.5, -0.25], vec![1.0, 0.75], vec![-0.5, 0.125]];
        let b1 = [0.25, -0.5, 0.0];
        let w2 = [vec![1.0, -1.0, 0.5], vec![0.25, 0.5, -0.75]];
        let b2 = [0.0, 1.0];
        let net = NetworkSpec::new(
            2,
            vec![
                linear("l1", &w1, b1.to_vec()),
                LayerSpec::new("r", LayerKind::Relu),
                linear("l2", &w2, b2.to_vec()),
            ],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let x = [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)];
            let mut h = [0.0; 3];
            for (o, hv) in h.iter_mut().enumerate() {
                let mut acc = b1[o];
                for (i, xv) in x.iter().enumerate() {
                    acc += w1[o][i] * xv;
                }
                *hv = acc.max(0.0);
            }
            let mut expect = [0.0; 2];
            for (o, ev) in expect.iter_mut().enumerate() {
                let mut acc = b2[o];
                for (i, hv) in h.iter().enumerate() {
                    acc += w2[o][i] * hv;
                }
                *ev = acc;
            }
            let (out, _) = forward(&net, &Tensor::vector(x.to_vec()), &BTreeSet::new()).unwrap();
            for (got, want) in out.data().iter().zip(&expect) {
                assert!((got - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn forward_records_pre_slot_activation() {
        let net = NetworkSpec::new(
            2,
            vec![
                linear("l", &[vec![2.0, 0.0], vec![0.0, 2.0]], vec![0.0, 0.0]),
                LayerSpec::new("s1", LayerKind::NeuronSlot { id: "s1".into() }),
            ],
        )
        .unwrap();
        let mut record = BTreeSet::new();
        record.insert("s1".to_string());
        let (_, recorded) = forward(&net, &Tensor::vector(vec![1.0, 2.0]), &record).unwrap();
        assert_eq!(recorded["s1"].data(), &[2.0, 4.0]);
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let net = NetworkSpec::new(
            2,
            vec![linear("l", &[vec![1.0, 0.0], vec![0.0, 1.0]], vec![0.0, 0.0])],
        )
        .unwrap();
        assert!(forward(&net, &Tensor::vector(vec![1.0]), &BTreeSet::new()).is_err());
    }

    #[test]
    fn single_token_attention_is_projection_chain() {
        let wq = Tensor::matrix(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let wv = Tensor::matrix(&[vec![0.5, 0.0], vec![0.0, 0.25]]).unwrap();
        let wo = Tensor::matrix(&[vec![2.0, 0.0], vec![0.0, 4.0]]).unwrap();
        let tokens = Tensor::new(vec![1, 2], vec![3.0, 8.0]).unwrap();
        let out = attention_forward(&wq, &wq, &wv, &wo, 1.0, &tokens).unwrap();
        // softmax over one token is [[1.0]], so out = Wo·Wv·token
        assert_eq!(out.data(), &[3.0, 8.0]);
    }

    #[test]
    fn identical_tokens_give_identical_rows() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut rand_mat = |r: usize, c: usize| {
            Tensor::new(
                vec![r, c],
                (0..r * c).map(|_| rng.random_range(-1.0..1.0)).collect(),
            )
            .unwrap()
        };
        let (wq, wk, wv, wo) = (rand_mat(2, 2), rand_mat(2, 2), rand_mat(2, 2), rand_mat(2, 2));
        let tokens = Tensor::new(vec![3, 2], vec![0.7, -0.2, 0.7, -0.2, 0.7, -0.2]).unwrap();
        let out = attention_forward(&wq, &wk, &wv, &wo, 0.5, &tokens).unwrap();
        let first = &out.data()[0..2];
        for r in 1..3 {
            assert_eq!(&out.data()[r * 2..(r + 1) * 2], first);
        }
    }

    #[test]
    fn attention_against_step_by_step_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut mat = |r: usize, c: usize| -> Vec<Vec<f64>> {
            (0..r)
                .map(|_| (0..c).map(|_| rng.random_range(-1.0..1.0)).collect())
                .collect()
        };
        let (wq, wk, wv, wo) = (mat(2, 2), mat(2, 2), mat(2, 2), mat(2, 2));
        let toks = mat(3, 2);
        let scale = 0.7071067811865476;

        // oracle: naive projections, scores, softmax, mix, out-projection
        let proj = |w: &[Vec<f64>], x: &[f64]| -> Vec<f64> {
            w.iter()
                .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
                .collect()
        };
        let q: Vec<Vec<f64>> = toks.iter().map(|t| proj(&wq, t)).collect();
        let k: Vec<Vec<f64>> = toks.iter().map(|t| proj(&wk, t)).collect();
        let v: Vec<Vec<f64>> = toks.iter().map(|t| proj(&wv, t)).collect();
        let mut expect = Vec::new();
        for qi in &q {
            let scores: Vec<f64> = k
                .iter()
                .map(|kj| scale * qi.iter().zip(kj).map(|(a, b)| a * b).sum::<f64>())
                .collect();
            let m = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let exps: Vec<f64> = scores.iter().map(|s| (s - m).exp()).collect();
            let z: f64 = exps.iter().sum();
            let mut ctx = vec![0.0; 2];
            for (a, vj) in exps.iter().zip(&v) {
                for (c, vv) in ctx.iter_mut().zip(vj) {
                    *c += a / z * vv;
                }
            }
            expect.push(proj(&wo, &ctx));
        }

        let out = attention_forward(
            &Tensor::matrix(&wq).unwrap(),
            &Tensor::matrix(&wk).unwrap(),
            &Tensor::matrix(&wv).unwrap(),
            &Tensor::matrix(&wo).unwrap(),
            scale,
            &Tensor::matrix(&toks).unwrap(),
        )
        .unwrap();
        for (r, row) in expect.iter().enumerate() {
            for (c, want) in row.iter().enumerate() {
                assert!((out.data()[r * 2 + c] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn linear_passes_probe_nonlinear_fail() {
        let lin = linear("l", &[vec![0.5, 1.5], vec![-2.0, 0.25]], vec![0.7, -0.3]);
        assert!(linearity_probe(&lin, 2, 5).is_ok());
        assert!(linearity_probe(&LayerSpec::new("r", LayerKind::Relu), 2, 5).is_err());
        assert!(linearity_probe(&LayerSpec::new("g", LayerKind::Gelu), 2, 5).is_err());
        assert!(linearity_probe(&LayerSpec::new("sm", LayerKind::SoftMax { axis: 0 }), 2, 5).is_err());
    }

    #[test]
    fn duplicate_slot_ids_rejected() {
        let net = NetworkSpec::new(
            2,
            vec![
                linear("l1", &[vec![1.0, 0.0], vec![0.0, 1.0]], vec![0.0, 0.0]),
                LayerSpec::new("a", LayerKind::NeuronSlot { id: "s".into() }),
                linear("l2", &[vec![1.0, 0.0], vec![0.0, 1.0]], vec![0.0, 0.0]),
                LayerSpec::new("b", LayerKind::NeuronSlot { id: "s".into() }),
            ],
        );
        assert!(net.is_err());
    }

    #[test]
    fn consecutive_slots_rejected() {
        let net = NetworkSpec::new(
            2,
            vec![
                linear("l1", &[vec![1.0, 0.0], vec![0.0, 1.0]], vec![0.0, 0.0]),
                LayerSpec::new("a", LayerKind::NeuronSlot { id: "s1".into() }),
                LayerSpec::new("b", LayerKind::NeuronSlot { id: "s2".into() }),
            ],
        );
        assert!(net.is_err());
    }

    #[test]
    fn save_load_roundtrip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("net.json");
        let net = NetworkSpec::new(
            2,
            vec![
                linear(
                    "l1",
                    &[vec![0.1, -0.7777777777777], vec![3.5e-17, 1.0]],
                    vec![f64::MIN_POSITIVE, 0.3],
                ),
                LayerSpec::new("s1", LayerKind::NeuronSlot { id: "s1".into() }),
            ],
        )
        .unwrap();
        save_network(&net, &path).unwrap();
        let loaded = load_network(&path).unwrap();
        assert_eq!(loaded, net);
    }
}

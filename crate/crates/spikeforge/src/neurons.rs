//! Spiking neuron dynamics.
//!
//! Four neuron families live here:
//!
//! * soft-reset integrate-and-fire ([`if_step`], [`if_run`]), the
//!   multi-timestep reference model;
//! * the multi-threshold neuron ([`mtn_fire`]), which emits up to `n_max`
//!   spikes in one step via floor-and-clip of the latent potential;
//! * dual (signed) variants of both, with separate positive and negative
//!   branches ([`dual_if_run`], [`dual_mtn_fire`]);
//! * the scale-and-fire neuron ([`sfn_fire`]), a stateless single-step
//!   quantizer built from a [`FireFunction`] level table.
//!
//! Boundary convention throughout: the Heaviside step fires on zero,
//! `H(0) = 1`, so a latent potential exactly at threshold produces a spike.
//! Floors are mathematical floors with no epsilon guard; exactness tests use
//! dyadic-rational inputs so the floats are exact.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpikeError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IFParams {
    /// Firing threshold θ, must be positive.
    pub theta: f64,
    /// Initial membrane potential v(0).
    pub v0: f64,
}

impl IFParams {
    pub fn new(theta: f64, v0: f64) -> Result<Self> {
        if !(theta > 0.0) || !theta.is_finite() {
            return Err(SpikeError::InvalidParam {
                name: "theta",
                reason: format!("must be positive and finite, got {theta}"),
            });
        }
        if !v0.is_finite() {
            return Err(SpikeError::InvalidParam {
                name: "v0",
                reason: "must be finite".into(),
            });
        }
        Ok(IFParams { theta, v0 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IFState {
    pub v: f64,
}

/// One soft-reset IF step: `h = v + x`, spike of size θ iff `h >= θ`,
/// residual `v' = h - o`. Total on finite inputs.
pub fn if_step(params: &IFParams, state: IFState, x: f64) -> (f64, IFState) {
    let h = state.v + x;
    let o = if h >= params.theta { params.theta } else { 0.0 };
    (o, IFState { v: h - o })
}

#[derive(Debug, Clone, PartialEq)]
pub struct IfRun {
    /// Average firing rate over the run.
    pub o_bar: f64,
    /// Membrane potential after the last step.
    pub v_final: f64,
    /// Per-step outputs, each 0 or θ.
    pub spikes: Vec<f64>,
}

/// Runs an IF neuron over `t_steps` inputs starting from `params.v0`.
pub fn if_run(params: &IFParams, xs: &[f64], t_steps: usize) -> Result<IfRun> {
    if xs.len() != t_steps || t_steps == 0 {
        return Err(SpikeError::LengthMismatch {
            expected: t_steps,
            got: xs.len(),
        });
    }
    let mut state = IFState { v: params.v0 };
    let mut spikes = Vec::with_capacity(t_steps);
    let mut spike_count = 0u64;
    for &x in xs {
        let (o, next) = if_step(params, state, x);
        if o != 0.0 {
            spike_count += 1;
        }
        spikes.push(o);
        state = next;
    }
    // o_bar = (count·θ)/T keeps the division exact when count·θ is; summing
    // the spike vector would give the same value here but this form mirrors
    // how the single-step constructions are evaluated.
    let o_bar = (spike_count as f64 * params.theta) / t_steps as f64;
    Ok(IfRun {
        o_bar,
        v_final: state.v,
        spikes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MTNParams {
    /// Base threshold θ_M (also the output quantum).
    pub theta_m: f64,
    /// Maximum number of spikes emitted in a single step.
    pub n_max: u32,
    /// Initial potential folded into the latent potential, in `[0, θ_M)`.
    pub v0: f64,
}

impl MTNParams {
    pub fn new(theta_m: f64, n_max: u32, v0: f64) -> Result<Self> {
        if !(theta_m > 0.0) || !theta_m.is_finite() {
            return Err(SpikeError::InvalidParam {
                name: "theta_m",
                reason: format!("must be positive and finite, got {theta_m}"),
            });
        }
        if n_max == 0 {
            return Err(SpikeError::InvalidParam {
                name: "n_max",
                reason: "must be at least 1".into(),
            });
        }
        if !(0.0..theta_m).contains(&v0) {
            return Err(SpikeError::InvalidParam {
                name: "v0",
                reason: format!("must lie in [0, theta_m), got {v0}"),
            });
        }
        Ok(MTNParams { theta_m, n_max, v0 })
    }
}

/// Single-step multi-threshold response:
/// `o = θ_M · clip(⌊(x + v0)/θ_M⌋, 0, N)`.
pub fn mtn_fire(params: &MTNParams, x: f64) -> f64 {
    let q = ((x + params.v0) / params.theta_m).floor();
    let k = q.clamp(0.0, params.n_max as f64);
    params.theta_m * k
}

/// Splits a signed value into non-negative parts with
/// `x_pos - x_neg == x` and `x_pos · x_neg == 0`.
pub fn dual_decompose(x: f64) -> (f64, f64) {
    (x.max(0.0), -x.min(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualParams {
    pub pos: IFParams,
    pub neg: IFParams,
    pub n_max: u32,
}

impl DualParams {
    pub fn new(pos: IFParams, neg: IFParams, n_max: u32) -> Result<Self> {
        for (branch, p) in [("pos", &pos), ("neg", &neg)] {
            if !(0.0..p.theta).contains(&p.v0) {
                return Err(SpikeError::InvalidParam {
                    name: "v0",
                    reason: format!("{branch} branch: must lie in [0, theta), got {}", p.v0),
                });
            }
        }
        if n_max == 0 {
            return Err(SpikeError::InvalidParam {
                name: "n_max",
                reason: "must be at least 1".into(),
            });
        }
        Ok(DualParams { pos, neg, n_max })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualIfRun {
    /// Signed average rate `ō⁺ − ō⁻`.
    pub o_bar: f64,
    pub o_bar_pos: f64,
    pub o_bar_neg: f64,
    /// Residual potentials `(v⁺(T), v⁻(T))`.
    pub v_pos_final: f64,
    pub v_neg_final: f64,
}

/// Runs both branches of a dual IF neuron on the decomposed input sequence.
pub fn dual_if_run(params: &DualParams, xs: &[f64], t_steps: usize) -> Result<DualIfRun> {
    if xs.len() != t_steps || t_steps == 0 {
        return Err(SpikeError::LengthMismatch {
            expected: t_steps,
            got: xs.len(),
        });
    }
    let pos_in: Vec<f64> = xs.iter().map(|&x| dual_decompose(x).0).collect();
    let neg_in: Vec<f64> = xs.iter().map(|&x| dual_decompose(x).1).collect();
    let pos = if_run(&params.pos, &pos_in, t_steps)?;
    let neg = if_run(&params.neg, &neg_in, t_steps)?;
    Ok(DualIfRun {
        o_bar: pos.o_bar - neg.o_bar,
        o_bar_pos: pos.o_bar,
        o_bar_neg: neg.o_bar,
        v_pos_final: pos.v_final,
        v_neg_final: neg.v_final,
    })
}

/// Single-step dual multi-threshold response. Non-negative inputs (including
/// zero) route to the positive branch, negative inputs to the mirrored
/// negative branch.
pub fn dual_mtn_fire(params: &DualParams, x: f64) -> f64 {
    if x >= 0.0 {
        let branch = MTNParams {
            theta_m: params.pos.theta,
            n_max: params.n_max,
            v0: params.pos.v0,
        };
        mtn_fire(&branch, x)
    } else {
        let branch = MTNParams {
            theta_m: params.neg.theta,
            n_max: params.n_max,
            v0: params.neg.v0,
        };
        -mtn_fire(&branch, -x)
    }
}

/// Ordered threshold/level table of a piecewise-constant fire function.
///
/// `thresholds[i]` is the smallest latent potential that emits `levels[i]`
/// spikes; the output value is `unit · levels[i]`. Thresholds and levels are
/// strictly increasing and the map is monotone non-decreasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FireFunction {
    thresholds: Vec<f64>,
    levels: Vec<u64>,
    unit: f64,
}

impl FireFunction {
    pub fn new(thresholds: Vec<f64>, levels: Vec<u64>, unit: f64) -> Result<Self> {
        if thresholds.len() != levels.len() || thresholds.is_empty() {
            return Err(SpikeError::InvalidParam {
                name: "fire function",
                reason: format!(
                    "thresholds/levels must be non-empty and equal length ({} vs {})",
                    thresholds.len(),
                    levels.len()
                ),
            });
        }
        if !(unit > 0.0) || !unit.is_finite() {
            return Err(SpikeError::InvalidParam {
                name: "unit",
                reason: format!("must be positive and finite, got {unit}"),
            });
        }
        if thresholds.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SpikeError::InvalidParam {
                name: "thresholds",
                reason: "must be strictly increasing".into(),
            });
        }
        if levels[0] == 0 || levels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SpikeError::InvalidParam {
                name: "levels",
                reason: "must be strictly increasing positive integers".into(),
            });
        }
        Ok(FireFunction {
            thresholds,
            levels,
            unit,
        })
    }

    /// Standard construction with thresholds proportional to levels:
    /// `thresholds[i] = unit · levels[i]`.
    pub fn proportional(levels: Vec<u64>, unit: f64) -> Result<Self> {
        let thresholds = levels.iter().map(|&y| unit * y as f64).collect();
        FireFunction::new(thresholds, levels, unit)
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn levels(&self) -> &[u64] {
        &self.levels
    }

    pub fn unit(&self) -> f64 {
        self.unit
    }

    pub fn max_level(&self) -> u64 {
        *self.levels.last().unwrap()
    }

    /// Spike count for latent potential `h`: the level of the highest
    /// threshold not exceeding `h`, or 0 below the first threshold.
    pub fn count(&self, h: f64) -> u64 {
        let idx = self.thresholds.partition_point(|&t| t <= h);
        if idx == 0 {
            0
        } else {
            self.levels[idx - 1]
        }
    }

    /// Output value for latent potential `h`: `unit · count(h)`.
    pub fn value(&self, h: f64) -> f64 {
        let c = self.count(h);
        if c == 0 {
            0.0
        } else {
            self.unit * c as f64
        }
    }
}

/// Level schedules selectable when building a scale-and-fire neuron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelSchedule {
    /// Dense unit steps up to M, then doubling tail: `M-1+2^(k-M)`.
    Sformer,
    /// `y_k = k` for k = 1..2M.
    Linear,
    /// `y_k = 2^(k-1)` for k = 1..2M.
    Exponential,
}

impl LevelSchedule {
    pub fn levels(self, m: u32) -> Result<Vec<u64>> {
        if m == 0 || m > 32 {
            return Err(SpikeError::InvalidParam {
                name: "M",
                reason: format!("must lie in 1..=32, got {m}"),
            });
        }
        let m = m as u64;
        let ks = 1..=2 * m;
        Ok(match self {
            LevelSchedule::Sformer => ks
                .map(|k| if k <= m { k } else { m - 1 + (1u64 << (k - m)) })
                .collect(),
            LevelSchedule::Linear => ks.collect(),
            LevelSchedule::Exponential => ks.map(|k| 1u64 << (k - 1)).collect(),
        })
    }
}

/// The 2M-value level schedule used by the spiking-transformer fire
/// function: `y_k = k` for the first M, then `y_k = M - 1 + 2^(k-M)`.
pub fn sformer_levels(m: u32) -> Result<Vec<u64>> {
    LevelSchedule::Sformer.levels(m)
}

/// Denominator of the post-SoftMax threshold rule: the largest level,
/// `M - 1 + 2^M`.
pub fn sformer_max_level(m: u32) -> Result<u64> {
    Ok(*sformer_levels(m)?.last().unwrap())
}

/// Signed threshold ladders: `θ_k⁺ = λθ⁺·y_k` and `θ_k⁻ = −λθ⁻·y_k`.
pub fn sformer_thresholds(
    levels: &[u64],
    lambda: f64,
    theta_pos: f64,
    theta_neg: f64,
) -> (Vec<f64>, Vec<f64>) {
    let pos = levels.iter().map(|&y| lambda * theta_pos * y as f64).collect();
    let neg = levels.iter().map(|&y| -(lambda * theta_neg * y as f64)).collect();
    (pos, neg)
}

/// Scale-and-fire neuron parameters. The initial membrane potential is
/// fixed to half the output quantum per branch and folded into the decision
/// boundaries at fire time, so the neuron is stateless at a single step.
/// Slots that only ever see non-negative activations omit the negative
/// branch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SFNParams {
    pub lambda: f64,
    pub theta_pos: f64,
    pub theta_neg: Option<f64>,
    pub fire_pos: FireFunction,
    pub fire_neg: Option<FireFunction>,
}

impl SFNParams {
    pub fn new(
        lambda: f64,
        theta_pos: f64,
        theta_neg: Option<f64>,
        fire_pos: FireFunction,
        fire_neg: Option<FireFunction>,
    ) -> Result<Self> {
        if !(lambda > 0.0 && lambda <= 1.0) {
            return Err(SpikeError::InvalidParam {
                name: "lambda",
                reason: format!("must lie in (0, 1], got {lambda}"),
            });
        }
        if fire_pos.unit() != lambda * theta_pos {
            return Err(SpikeError::InvalidParam {
                name: "fire_pos.unit",
                reason: "must equal lambda * theta_pos".into(),
            });
        }
        if theta_neg.is_some() != fire_neg.is_some() {
            return Err(SpikeError::InvalidParam {
                name: "fire_neg",
                reason: "negative branch needs both theta_neg and fire_neg".into(),
            });
        }
        if let (Some(tn), Some(fnn)) = (theta_neg, &fire_neg) {
            if fnn.unit() != lambda * tn {
                return Err(SpikeError::InvalidParam {
                    name: "fire_neg.unit",
                    reason: "must equal lambda * theta_neg".into(),
                });
            }
        }
        Ok(SFNParams {
            lambda,
            theta_pos,
            theta_neg,
            fire_pos,
            fire_neg,
        })
    }

    /// Largest representable positive output.
    pub fn saturation_pos(&self) -> f64 {
        self.fire_pos.unit() * self.fire_pos.max_level() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SfnFire {
    /// Signed output value, always 0 or ±unit·yᵢ.
    pub value: f64,
    /// Spike count magnitude |yᵢ| of the fired level (0 if silent).
    pub count: u64,
}

/// Single-step scale-and-fire response. The positive branch quantizes
/// `x` with decision boundaries `unit·(yᵢ - ½)` and outputs `unit·yᵢ`,
/// saturating at the top level; the negative branch mirrors it with its
/// own threshold. Ties on a boundary fire.
pub fn sfn_fire(params: &SFNParams, x: f64) -> SfnFire {
    if x < 0.0 {
        if let Some(fire_neg) = &params.fire_neg {
            let h = -x + 0.5 * fire_neg.unit();
            let count = fire_neg.count(h);
            let value = if count == 0 {
                0.0
            } else {
                -(fire_neg.unit() * count as f64)
            };
            return SfnFire { value, count };
        }
    }
    let h = x + 0.5 * params.fire_pos.unit();
    let count = params.fire_pos.count(h);
    let value = if count == 0 {
        0.0
    } else {
        params.fire_pos.unit() * count as f64
    };
    SfnFire { value, count }
}

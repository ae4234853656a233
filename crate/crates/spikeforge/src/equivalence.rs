//! Executable equivalence checks between multi-timestep IF networks and
//! single-timestep multi-threshold networks.
//!
//! The single-neuron check constructs, from IF parameters `(θ, v0)` and a
//! horizon `T`, the multi-threshold neuron with base threshold `θ/T`,
//! initial potential `v0/T` and spike budget `T+1`, and compares the IF
//! average firing rate against the single-step response on the averaged
//! input. The network-level check runs both models through the same layer
//! stack; the dual (signed) check verifies the residual-potential error
//! bound instead of exact equality.
//!
//! Random cases are drawn on a dyadic grid of multiples of `T · 2⁻²⁰` so
//! that every division by `T` and every floor in the pipeline is exact in
//! `f64`; equality checks on these cases are bit-level.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SpikeError};
use crate::network::{linearity_probe, run_network, ForwardCounters, NetworkSpec};
use crate::neurons::{
    dual_if_run, dual_mtn_fire, if_step, mtn_fire, DualParams, IFParams, IFState, MTNParams,
};
use crate::tensor::Tensor;

/// Dyadic grid underlying random case generation.
pub const GRID: f64 = 1.0 / (1 << 20) as f64;

pub const EXACT_TOL: f64 = 1e-12;
pub const NETWORK_TOL: f64 = 1e-9;

/// Multi-threshold construction equivalent to `T` steps of an IF neuron:
/// `θ_M = θ/T`, `v_M(0) = v0/T`, spike budget `N = T+1`.
pub fn build_equivalent_mtn(theta: f64, v0: f64, t_steps: usize) -> Result<MTNParams> {
    if !(theta > 0.0) || !theta.is_finite() {
        return Err(SpikeError::InvalidParam {
            name: "theta",
            reason: format!("must be positive and finite, got {theta}"),
        });
    }
    if !(0.0..theta).contains(&v0) {
        return Err(SpikeError::InvalidParam {
            name: "v0",
            reason: format!("must lie in [0, theta), got {v0}"),
        });
    }
    if t_steps == 0 {
        return Err(SpikeError::InvalidParam {
            name: "T",
            reason: "must be at least 1".into(),
        });
    }
    let t = t_steps as f64;
    MTNParams::new(theta / t, t_steps as u32 + 1, v0 / t)
}

/// A single random single-neuron case satisfying the exactness
/// preconditions: `0 ≤ x(t) ≤ θ` and `0 ≤ v0 < θ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivCase {
    pub t: usize,
    pub theta: f64,
    pub v0: f64,
    pub xs: Vec<f64>,
    pub seed: u64,
    pub case_id: u64,
}

fn case_rng(seed: u64, case_id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case_id);
    rng
}

/// Draws a case on the `T · 2⁻²⁰` grid. With `t_fixed` unset the horizon is
/// uniform over `1..=64`.
pub fn theorem1_case(seed: u64, case_id: u64, t_fixed: Option<usize>) -> EquivCase {
    let mut rng = case_rng(seed, case_id);
    let t = t_fixed.unwrap_or_else(|| rng.random_range(1..=64));
    let quantum = t as f64 * GRID;
    let c_max = (1u64 << 21) / t as u64;
    let c = rng.random_range(1..=c_max);
    let theta = c as f64 * quantum;
    let v0 = rng.random_range(0..c) as f64 * quantum;
    let xs = (0..t)
        .map(|_| rng.random_range(0..=c) as f64 * quantum)
        .collect();
    EquivCase {
        t,
        theta,
        v0,
        xs,
        seed,
        case_id,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theorem1Outcome {
    pub equal: bool,
    pub o_bar_if: f64,
    pub o_mtn: f64,
}

/// Compares the IF average rate against the constructed single-step
/// response on the averaged input.
pub fn check_theorem1(case: &EquivCase) -> Result<Theorem1Outcome> {
    let params = IFParams::new(case.theta, case.v0)?;
    let run = crate::neurons::if_run(&params, &case.xs, case.t)?;
    let mtn = build_equivalent_mtn(case.theta, case.v0, case.t)?;
    let x_m = case.xs.iter().sum::<f64>() / case.t as f64;
    let o_mtn = mtn_fire(&mtn, x_m);
    Ok(Theorem1Outcome {
        equal: (run.o_bar - o_mtn).abs() <= EXACT_TOL,
        o_bar_if: run.o_bar,
        o_mtn,
    })
}

/// Signed random case: per-step magnitudes stay within the threshold of the
/// branch they route to, keeping each branch inside the exactness regime.
#[derive(Debug, Clone, PartialEq)]
pub struct DualCase {
    pub t: usize,
    pub params: DualParams,
    pub xs: Vec<f64>,
    pub seed: u64,
    pub case_id: u64,
}

pub fn theorem3_case(seed: u64, case_id: u64, t_fixed: Option<usize>) -> DualCase {
    let mut rng = case_rng(seed, case_id);
    let t = t_fixed.unwrap_or_else(|| rng.random_range(1..=64));
    let quantum = t as f64 * GRID;
    let c_max = (1u64 << 21) / t as u64;
    let c_pos = rng.random_range(1..=c_max);
    let c_neg = rng.random_range(1..=c_max);
    let pos = IFParams::new(
        c_pos as f64 * quantum,
        rng.random_range(0..c_pos) as f64 * quantum,
    )
    .expect("grid params valid");
    let neg = IFParams::new(
        c_neg as f64 * quantum,
        rng.random_range(0..c_neg) as f64 * quantum,
    )
    .expect("grid params valid");
    let xs = (0..t)
        .map(|_| {
            if rng.random_bool(0.5) {
                rng.random_range(0..=c_pos) as f64 * quantum
            } else {
                -(rng.random_range(0..=c_neg) as f64 * quantum)
            }
        })
        .collect();
    DualCase {
        t,
        params: DualParams::new(pos, neg, t as u32 + 1).expect("grid params valid"),
        xs,
        seed,
        case_id,
    }
}

/// Outcome of a dual-neuron bound check. `passed` holds iff the observed
/// discrepancy is within `(|C_v| + θ_branch)/T` plus the exactness slack.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub discrepancy: f64,
    pub bound: f64,
    pub c_v: f64,
    pub passed: bool,
}

/// Runs the dual-IF over `T` steps, the constructed dual-MTN for one step,
/// and verifies the residual-potential bound on their difference.
pub fn check_theorem3(params: &DualParams, xs: &[f64], t_steps: usize) -> Result<BoundReport> {
    let run = dual_if_run(params, xs, t_steps)?;
    let t = t_steps as f64;
    let mtn = DualParams::new(
        IFParams::new(params.pos.theta / t, params.pos.v0 / t)?,
        IFParams::new(params.neg.theta / t, params.neg.v0 / t)?,
        t_steps as u32 + 1,
    )?;
    let x_m = xs.iter().sum::<f64>() / t;
    let o_m = dual_mtn_fire(&mtn, x_m);
    let discrepancy = (run.o_bar - o_m).abs();
    // residual-potential constant: v⁺(T) + v⁻(0) − v⁻(T)
    let c_v = run.v_pos_final + params.neg.v0 - run.v_neg_final;
    let theta_branch = if x_m >= 0.0 {
        params.pos.theta
    } else {
        params.neg.theta
    };
    let bound = (c_v.abs() + theta_branch) / t;
    Ok(BoundReport {
        discrepancy,
        bound,
        c_v,
        passed: discrepancy <= bound + EXACT_TOL,
    })
}

/// Summary of a property sweep, serialized as the verification report
/// document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub n_cases: u64,
    pub n_passed: u64,
    pub max_discrepancy: f64,
    pub worst_case_seed: u64,
    pub worst_case_id: u64,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.n_passed == self.n_cases
    }
}

/// Seeded sweep of single-neuron exactness cases.
pub fn sweep_theorem1(seed: u64, n_cases: u64, t_fixed: Option<usize>) -> Result<VerificationReport> {
    let mut report = VerificationReport {
        suite: "theorem1".into(),
        n_cases,
        n_passed: 0,
        max_discrepancy: 0.0,
        worst_case_seed: seed,
        worst_case_id: 0,
    };
    for id in 0..n_cases {
        let case = theorem1_case(seed, id, t_fixed);
        let out = check_theorem1(&case)?;
        let disc = (out.o_bar_if - out.o_mtn).abs();
        if out.equal {
            report.n_passed += 1;
        }
        if disc > report.max_discrepancy || (!out.equal && disc >= report.max_discrepancy) {
            report.max_discrepancy = disc;
            report.worst_case_id = id;
        }
    }
    Ok(report)
}

/// Seeded sweep of dual-neuron bound cases.
pub fn sweep_theorem3(seed: u64, n_cases: u64, t_fixed: Option<usize>) -> Result<VerificationReport> {
    let mut report = VerificationReport {
        suite: "theorem3".into(),
        n_cases,
        n_passed: 0,
        max_discrepancy: 0.0,
        worst_case_seed: seed,
        worst_case_id: 0,
    };
    let mut worst_margin = f64::NEG_INFINITY;
    for id in 0..n_cases {
        let case = theorem3_case(seed, id, t_fixed);
        let out = check_theorem3(&case.params, &case.xs, case.t)?;
        if out.passed {
            report.n_passed += 1;
        }
        report.max_discrepancy = report.max_discrepancy.max(out.discrepancy);
        // worst case = smallest distance to the bound (negative on violation)
        let margin = out.bound - out.discrepancy;
        if margin < worst_margin || id == 0 {
            worst_margin = margin;
            report.worst_case_id = id;
        }
    }
    Ok(report)
}

/// Seeded sweep of the telescoping identity `Σx − Σo == v(T) − v(0)` and
/// the averaged form `x̄ − ō == (v(T) − v(0))/T`, both bit-level on the
/// generation grid.
pub fn sweep_identity(seed: u64, n_cases: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport {
        suite: "rate-identity".into(),
        n_cases,
        n_passed: 0,
        max_discrepancy: 0.0,
        worst_case_seed: seed,
        worst_case_id: 0,
    };
    for id in 0..n_cases {
        let case = theorem1_case(seed, id, None);
        let params = IFParams::new(case.theta, case.v0)?;
        let run = crate::neurons::if_run(&params, &case.xs, case.t)?;
        let x_sum: f64 = case.xs.iter().sum();
        let o_sum: f64 = run.spikes.iter().sum();
        let t = case.t as f64;
        let sum_exact = (x_sum - o_sum) == (run.v_final - case.v0);
        let avg_exact = (x_sum / t - o_sum / t) == (run.v_final - case.v0) / t;
        let disc = ((x_sum - o_sum) - (run.v_final - case.v0)).abs();
        if sum_exact && avg_exact {
            report.n_passed += 1;
        } else if disc >= report.max_discrepancy {
            report.worst_case_id = id;
        }
        report.max_discrepancy = report.max_discrepancy.max(disc);
    }
    Ok(report)
}

/// Result of running a spiking network model over a full forward pass.
pub struct SpikingNetRun {
    pub output: Tensor,
    /// Per-slot output (time-averaged for the IF model).
    pub slot_outputs: BTreeMap<String, Tensor>,
    pub counters: ForwardCounters,
    /// Precondition violations observed at slots (IF model only).
    pub warnings: Vec<String>,
}

/// Model I: IF neurons at every slot, driven for `inputs.len()` timesteps.
/// Membrane state persists across steps; the returned output and per-slot
/// outputs are averages over the horizon. Slot inputs are checked against
/// the `0 ≤ x ≤ θ` precondition and violations are reported as warnings.
pub fn run_if_network(
    net: &NetworkSpec,
    slot_params: &BTreeMap<String, IFParams>,
    inputs: &[Tensor],
) -> Result<SpikingNetRun> {
    if inputs.is_empty() {
        return Err(SpikeError::EmptyData);
    }
    for id in net.slot_ids() {
        if !slot_params.contains_key(&id) {
            return Err(SpikeError::UncoveredSlots(vec![id]));
        }
    }
    let t_steps = inputs.len();
    let mut states: BTreeMap<String, Vec<IFState>> = BTreeMap::new();
    let mut out_sum: Option<Tensor> = None;
    let mut slot_sums: BTreeMap<String, Tensor> = BTreeMap::new();
    let mut counters = ForwardCounters::default();
    let mut violated: BTreeMap<String, (usize, f64)> = BTreeMap::new();

    for (t, input) in inputs.iter().enumerate() {
        let mut hook = |slot: &str, x: &Tensor| -> Result<Tensor> {
            let params = slot_params[slot];
            let state = states
                .entry(slot.to_string())
                .or_insert_with(|| vec![IFState { v: params.v0 }; x.len()]);
            if state.len() != x.len() {
                return Err(SpikeError::DimensionMismatch {
                    context: format!("slot '{slot}' state"),
                    expected: state.len(),
                    got: x.len(),
                });
            }
            let mut out = Vec::with_capacity(x.len());
            for (s, &xi) in state.iter_mut().zip(x.data()) {
                if !(0.0..=params.theta).contains(&xi) {
                    violated.entry(slot.to_string()).or_insert((t, xi));
                }
                let (o, next) = if_step(&params, *s, xi);
                out.push(o);
                *s = next;
            }
            let out = Tensor::new(x.shape().to_vec(), out)?;
            match slot_sums.get_mut(slot) {
                Some(acc) => *acc = acc.add(&out)?,
                None => {
                    slot_sums.insert(slot.to_string(), out.clone());
                }
            }
            Ok(out)
        };
        let run = run_network(net, input, &Default::default(), &mut hook)?;
        counters.merge(run.counters);
        out_sum = Some(match out_sum {
            None => run.output,
            Some(acc) => acc.add(&run.output)?,
        });
    }

    let scale = 1.0 / t_steps as f64;
    let slot_sums = slot_sums
        .into_iter()
        .map(|(k, v)| (k, v.scale(scale)))
        .collect();
    let warnings = violated
        .into_iter()
        .map(|(slot, (t, x))| {
            format!("slot '{slot}': input {x} outside [0, theta] at step {t}")
        })
        .collect();
    Ok(SpikingNetRun {
        output: out_sum.expect("at least one step").scale(scale),
        slot_outputs: slot_sums,
        counters,
        warnings,
    })
}

/// Model II: stateless single-step neurons bound per slot.
pub fn run_single_step_network(
    net: &NetworkSpec,
    input: &Tensor,
    mut slot_fire: impl FnMut(&str, f64) -> f64,
) -> Result<SpikingNetRun> {
    let mut slot_outputs = BTreeMap::new();
    let mut hook = |slot: &str, x: &Tensor| -> Result<Tensor> {
        let out = Tensor::new(
            x.shape().to_vec(),
            x.data().iter().map(|&v| slot_fire(slot, v)).collect(),
        )?;
        slot_outputs.insert(slot.to_string(), out.clone());
        Ok(out)
    };
    let run = run_network(net, input, &Default::default(), &mut hook)?;
    Ok(SpikingNetRun {
        output: run.output,
        slot_outputs,
        counters: run.counters,
        warnings: Vec::new(),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SlotDeviation {
    pub slot: String,
    pub max_dev: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Theorem2Report {
    /// Final outputs matched within the network tolerance. Only a theorem
    /// verdict when `preconditions_ok` also holds.
    pub equal: bool,
    pub max_output_dev: f64,
    pub per_slot: Vec<SlotDeviation>,
    pub preconditions_ok: bool,
    pub warnings: Vec<String>,
}

/// Network-level equivalence: Model I (IF at every slot, `inputs.len()`
/// steps) against Model II (constructed single-step neurons on the averaged
/// input). Any non-neuronal layer that fails the linearity probe aborts the
/// check, since averages do not move through nonlinear layers.
pub fn check_theorem2(
    net: &NetworkSpec,
    slot_params: &BTreeMap<String, IFParams>,
    inputs: &[Tensor],
) -> Result<Theorem2Report> {
    if inputs.is_empty() {
        return Err(SpikeError::EmptyData);
    }
    let mut dim = net.input_dim;
    for layer in &net.layers {
        if !layer.is_slot() {
            linearity_probe(layer, dim, 0x11fea9)?;
        }
        dim = crate::network::layer_out_dim(&layer.kind, dim)?;
    }

    let model1 = run_if_network(net, slot_params, inputs)?;

    let t = inputs.len() as f64;
    let mut avg_input = inputs[0].clone();
    for x in &inputs[1..] {
        avg_input = avg_input.add(x)?;
    }
    let avg_input = avg_input.scale(1.0 / t);

    let mut mtns = BTreeMap::new();
    for (slot, p) in slot_params {
        mtns.insert(
            slot.clone(),
            build_equivalent_mtn(p.theta, p.v0, inputs.len())?,
        );
    }
    let model2 = run_single_step_network(net, &avg_input, |slot, x| mtn_fire(&mtns[slot], x))?;

    // per-slot deviation between averaged IF slot output and MTN slot output
    let mut per_slot = Vec::new();
    for (slot, mtn_out) in &model2.slot_outputs {
        if let Some(if_out) = model1.slot_outputs.get(slot) {
            per_slot.push(SlotDeviation {
                slot: slot.clone(),
                max_dev: if_out.sub(mtn_out)?.max_abs(),
            });
        }
    }

    let max_output_dev = model1.output.sub(&model2.output)?.max_abs();
    Ok(Theorem2Report {
        equal: max_output_dev <= NETWORK_TOL,
        max_output_dev,
        per_slot,
        preconditions_ok: model1.warnings.is_empty(),
        warnings: model1.warnings,
    })
}

/// Step-by-step trace of a single-neuron case, for replaying failures.
pub fn trace_theorem1(seed: u64, case_id: u64) -> String {
    let case = theorem1_case(seed, case_id, None);
    let params = IFParams::new(case.theta, case.v0).expect("generated case valid");
    let mut lines = vec![format!(
        "case {} (seed {}): T={} theta={} v0={}",
        case.case_id, case.seed, case.t, case.theta, case.v0
    )];
    let mut state = IFState { v: case.v0 };
    for (t, &x) in case.xs.iter().enumerate() {
        let h = state.v + x;
        let (o, next) = if_step(&params, state, x);
        lines.push(format!(
            "  t={:2}  x={:<22} h={:<22} o={:<22} v={}",
            t + 1,
            x,
            h,
            o,
            next.v
        ));
        state = next;
    }
    let out = check_theorem1(&case).expect("generated case valid");
    lines.push(format!(
        "  IF: o_bar={}   MTN: o={}   equal={}",
        out.o_bar_if, out.o_mtn, out.equal
    ));
    lines.join("\n")
}

/// Step-by-step trace of a dual-neuron case, both branches.
pub fn trace_theorem3(seed: u64, case_id: u64) -> String {
    let case = theorem3_case(seed, case_id, None);
    let mut lines = vec![format!(
        "case {} (seed {}): T={} theta+={} v0+={} theta-={} v0-={}",
        case.case_id,
        case.seed,
        case.t,
        case.params.pos.theta,
        case.params.pos.v0,
        case.params.neg.theta,
        case.params.neg.v0
    )];
    let mut pos = IFState { v: case.params.pos.v0 };
    let mut neg = IFState { v: case.params.neg.v0 };
    for (t, &x) in case.xs.iter().enumerate() {
        let (xp, xn) = crate::neurons::dual_decompose(x);
        let (op, pnext) = if_step(&case.params.pos, pos, xp);
        let (on, nnext) = if_step(&case.params.neg, neg, xn);
        lines.push(format!(
            "  t={:2}  x={:<22} o+={:<22} v+={:<22} o-={:<22} v-={}",
            t + 1,
            x,
            op,
            pnext.v,
            on,
            nnext.v
        ));
        pos = pnext;
        neg = nnext;
    }
    let report = check_theorem3(&case.params, &case.xs, case.t).expect("generated case valid");
    lines.push(format!(
        "  discrepancy={}  bound={}  c_v={}  passed={}",
        report.discrepancy, report.bound, report.c_v, report.passed
    ));
    lines.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{LayerKind, LayerSpec};

    #[test]
    fn mtn_construction_examples() {
        let m = build_equivalent_mtn(1.0, 0.0, 3).unwrap();
        assert_eq!((m.theta_m, m.v0, m.n_max), (1.0 / 3.0, 0.0, 4));
        let m = build_equivalent_mtn(2.0, 1.0, 1).unwrap();
        assert_eq!((m.theta_m, m.v0, m.n_max), (2.0, 1.0, 2));
        let m = build_equivalent_mtn(1.0, 0.5, 4).unwrap();
        assert_eq!((m.theta_m, m.v0, m.n_max), (0.25, 0.125, 5));
        assert!(build_equivalent_mtn(1.0, 1.0, 4).is_err());
        assert!(build_equivalent_mtn(0.0, 0.0, 4).is_err());
        assert!(build_equivalent_mtn(1.0, 0.0, 0).is_err());
    }

    #[test]
    fn theorem1_worked_example() {
        let case = EquivCase {
            t: 3,
            theta: 1.0,
            v0: 0.0,
            xs: vec![0.5, 0.7, 0.3],
            seed: 0,
            case_id: 0,
        };
        let out = check_theorem1(&case).unwrap();
        // both sides: (1/3)·floor(0.5·3/1 + 0) = 1/3
        assert!(out.equal);
        assert!((out.o_bar_if - 1.0 / 3.0).abs() < 1e-15);
        assert!((out.o_mtn - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn theorem1_zero_inputs() {
        let case = EquivCase {
            t: 5,
            theta: 1.0,
            v0: 0.0,
            xs: vec![0.0; 5],
            seed: 0,
            case_id: 0,
        };
        let out = check_theorem1(&case).unwrap();
        assert!(out.equal && out.o_bar_if == 0.0 && out.o_mtn == 0.0);
    }

    #[test]
    fn theorem1_small_sweep_is_exact() {
        let report = sweep_theorem1(7, 500, None).unwrap();
        assert!(report.all_passed(), "{report:?}");
        assert_eq!(report.max_discrepancy, 0.0);
    }

    #[test]
    fn theorem3_worked_example() {
        let params = DualParams::new(
            IFParams::new(1.0, 0.0).unwrap(),
            IFParams::new(1.0, 0.0).unwrap(),
            4,
        )
        .unwrap();
        let report = check_theorem3(&params, &[0.5, -0.9, 0.7], 3).unwrap();
        assert!((report.discrepancy - 1.0 / 3.0).abs() < 1e-15);
        assert!((report.c_v - (-0.7)).abs() < 1e-15);
        assert!((report.bound - 1.7 / 3.0).abs() < 1e-15);
        assert!(report.passed);
    }

    #[test]
    fn theorem3_degenerates_to_theorem1_on_nonnegative_inputs() {
        let params = DualParams::new(
            IFParams::new(1.0, 0.25).unwrap(),
            IFParams::new(1.0, 0.0).unwrap(),
            4,
        )
        .unwrap();
        let report = check_theorem3(&params, &[0.5, 0.25, 0.75], 3).unwrap();
        assert_eq!(report.discrepancy, 0.0);
        assert!(report.passed);
    }

    #[test]
    fn theorem3_small_sweep_passes() {
        let report = sweep_theorem3(11, 500, None).unwrap();
        assert!(report.all_passed(), "{report:?}");
    }

    #[test]
    fn identity_sweep_is_bit_exact() {
        let report = sweep_identity(3, 500).unwrap();
        assert!(report.all_passed(), "{report:?}");
        assert_eq!(report.max_discrepancy, 0.0);
    }

    fn dyadic_linear(name: &str, w: &[Vec<f64>], b: Vec<f64>) -> LayerSpec {
        LayerSpec::new(
            name,
            LayerKind::Linear {
                weights: Tensor::matrix(w).unwrap(),
                bias: Tensor::vector(b),
            },
        )
    }

    fn slot(id: &str) -> LayerSpec {
        LayerSpec::new(id, LayerKind::NeuronSlot { id: id.into() })
    }

    /// All-linear two-slot net with non-negative dyadic weights; thresholds
    /// chosen from worst-case bound propagation so per-step slot inputs stay
    /// within [0, theta].
    fn bounded_linear_net() -> (NetworkSpec, BTreeMap<String, IFParams>) {
        let w1 = [vec![0.5, 0.25], vec![0.125, 0.75]];
        let b1 = vec![0.125, 0.25];
        let w2 = [vec![0.5, 0.5], vec![0.25, 0.125]];
        let b2 = vec![0.0, 0.0625];
        let net = NetworkSpec::new(
            2,
            vec![
                dyadic_linear("l1", &w1, b1.clone()),
                slot("s1"),
                dyadic_linear("l2", &w2, b2.clone()),
                slot("s2"),
            ],
        )
        .unwrap();
        // theta1 >= max row sum of l1 on inputs in [0,1]^2 (+ bias)
        let theta1: f64 = w1
            .iter()
            .zip(&b1)
            .map(|(row, b)| row.iter().sum::<f64>() + b)
            .fold(0.0, f64::max);
        let theta2: f64 = w2
            .iter()
            .zip(&b2)
            .map(|(row, b)| row.iter().sum::<f64>() * theta1 + b)
            .fold(0.0, f64::max);
        let mut params = BTreeMap::new();
        params.insert("s1".to_string(), IFParams::new(theta1, 0.0).unwrap());
        params.insert("s2".to_string(), IFParams::new(theta2, 0.0).unwrap());
        (net, params)
    }

    #[test]
    fn theorem2_linear_fixture_constant_input() {
        let (net, params) = bounded_linear_net();
        for t in [1usize, 2, 4, 8] {
            let inputs = vec![Tensor::vector(vec![0.5, 0.75]); t];
            let report = check_theorem2(&net, &params, &inputs).unwrap();
            assert!(report.preconditions_ok, "T={t}: {:?}", report.warnings);
            assert!(report.equal, "T={t}: dev={}", report.max_output_dev);
        }
    }

    #[test]
    fn theorem2_time_varying_input() {
        let (net, params) = bounded_linear_net();
        let inputs = vec![
            Tensor::vector(vec![0.25, 1.0]),
            Tensor::vector(vec![0.75, 0.5]),
            Tensor::vector(vec![1.0, 0.0]),
            Tensor::vector(vec![0.0, 0.25]),
        ];
        let report = check_theorem2(&net, &params, &inputs).unwrap();
        assert!(report.preconditions_ok);
        assert!(report.equal, "dev={}", report.max_output_dev);
    }

    #[test]
    fn theorem2_identity_network_reduces_to_theorem1() {
        let net = NetworkSpec::new(1, vec![slot("s")]).unwrap();
        let mut params = BTreeMap::new();
        params.insert("s".to_string(), IFParams::new(1.0, 0.0).unwrap());
        let inputs = vec![
            Tensor::vector(vec![0.5]),
            Tensor::vector(vec![0.7]),
            Tensor::vector(vec![0.3]),
        ];
        let report = check_theorem2(&net, &params, &inputs).unwrap();
        assert!(report.equal && report.preconditions_ok);
    }

    #[test]
    fn theorem2_rejects_nonlinear_layer() {
        let (net, params) = bounded_linear_net();
        let mut layers = net.layers.clone();
        layers.insert(2, LayerSpec::new("relu", LayerKind::Relu));
        let net = NetworkSpec::new(2, layers).unwrap();
        let inputs = vec![Tensor::vector(vec![0.5, 0.5]); 2];
        let err = check_theorem2(&net, &params, &inputs).unwrap_err();
        match err {
            SpikeError::NonlinearLayer { layer, .. } => assert_eq!(layer, "relu"),
            other => panic!("expected nonlinearity error, got {other}"),
        }
    }

    #[test]
    fn theorem2_precondition_violation_downgrades() {
        // theta too small for the actual activations -> warning, not assert
        let (net, mut params) = bounded_linear_net();
        params.insert("s1".to_string(), IFParams::new(0.125, 0.0).unwrap());
        let inputs = vec![Tensor::vector(vec![1.0, 1.0]); 4];
        let report = check_theorem2(&net, &params, &inputs).unwrap();
        assert!(!report.preconditions_ok);
        assert!(!report.warnings.is_empty());
    }

    #[test]
    fn traces_render() {
        let t1 = trace_theorem1(5, 17);
        assert!(t1.contains("o_bar"));
        let t3 = trace_theorem3(5, 17);
        assert!(t3.contains("bound"));
    }
}

//! The liquid rank fixed point.
//!
//! Each cycle computes the inflow `U_j = sum_i R_i * V_ij`, rescales it, and
//! blends it into the previous scores:
//!
//! ```text
//! R' = (1 - alpha) * R + alpha * U / |U|
//! ```
//!
//! The iteration runs on L1-normalized shares and stops once no share moves
//! by `epsilon` or more in one cycle. Under [`NormMode::Max`] the result is
//! the same shares divided by their largest entry, so both modes stop at the
//! same cycle and always agree on ordering.

use std::collections::BTreeMap;

use super::{NormMode, RankError, RankParams, ReputationState};
use crate::graph::RatingGraph;
use crate::handle::Handle;

/// Iterates liquid rank to convergence or `params.max_iters`.
///
/// `initial` must name every node with a non-negative weight, not all zero;
/// it is rescaled before the first cycle. Without it every node starts
/// equal. Running out of iterations is not an error: the returned state has
/// `converged == false`.
pub fn liquid_rank(
    graph: &RatingGraph,
    params: &RankParams,
    initial: Option<&BTreeMap<Handle, f64>>,
) -> Result<ReputationState, RankError> {
    params.validate()?;
    if graph.edge_count() == 0 {
        return Err(RankError::EmptyGraph);
    }
    let n = graph.node_count();
    let mut shares = match initial {
        Some(init) => initial_shares(graph, init)?,
        None => vec![1.0 / n as f64; n],
    };
    let mut inflow = vec![0.0; n];
    let mut next = vec![0.0; n];
    let mut iterations = 0;
    let mut delta = f64::INFINITY;
    let keep = 1.0 - params.alpha;

    while iterations < params.max_iters {
        iterations += 1;
        for (j, u) in inflow.iter_mut().enumerate() {
            *u = graph
                .inbound_of(j)
                .iter()
                .map(|&(i, w)| shares[i] * w as f64)
                .sum();
        }
        let total: f64 = inflow.iter().sum();
        if total.is_nan() || total <= 0.0 {
            return Err(RankError::DegenerateUpdate {
                iteration: iterations,
            });
        }
        for ((r, &old), &u) in next.iter_mut().zip(&shares).zip(&inflow) {
            *r = keep * old + params.alpha * (u / total);
        }
        delta = next
            .iter()
            .zip(&shares)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        std::mem::swap(&mut shares, &mut next);
        if delta < params.epsilon {
            break;
        }
    }

    Ok(ReputationState {
        scores: graph
            .nodes()
            .iter()
            .cloned()
            .zip(report(&shares, params.norm_mode))
            .collect(),
        iterations,
        final_delta: delta,
        converged: delta < params.epsilon,
    })
}

fn report(shares: &[f64], mode: NormMode) -> Vec<f64> {
    match mode {
        NormMode::L1 => shares.to_vec(),
        NormMode::Max => {
            let top = mode.norm(shares);
            shares.iter().map(|s| s / top).collect()
        }
    }
}

fn initial_shares(
    graph: &RatingGraph,
    init: &BTreeMap<Handle, f64>,
) -> Result<Vec<f64>, RankError> {
    if let Some(extra) = init.keys().find(|k| graph.index_of(k.as_str()).is_none()) {
        return Err(RankError::InvalidInitial(format!(
            "{extra} is not in the graph"
        )));
    }
    let values = graph
        .nodes()
        .iter()
        .map(|node| match init.get(node) {
            None => Err(RankError::InvalidInitial(format!(
                "missing value for {node}"
            ))),
            Some(&v) if !(v >= 0.0 && v.is_finite()) => Err(RankError::InvalidInitial(format!(
                "value for {node} must be finite and non-negative, got {v}"
            ))),
            Some(&v) => Ok(v),
        })
        .collect::<Result<Vec<f64>, _>>()?;
    let total: f64 = values.iter().sum();
    if !(total > 0.0 && total.is_finite()) {
        return Err(RankError::InvalidInitial(
            "values must not all be zero".into(),
        ));
    }
    Ok(values.into_iter().map(|v| v / total).collect())
}

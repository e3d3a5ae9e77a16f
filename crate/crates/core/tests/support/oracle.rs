//! Reference implementations kept deliberately naive and independent of the
//! library's code paths.

#![allow(dead_code)]

/// Dense damped iteration on an `n x n` weight matrix (`w[i][j]` = weight of
/// `i -> j`), L1 normalization, uniform start.
pub struct DenseRun {
    pub scores: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

pub fn dense_liquid_rank(w: &[Vec<f64>], alpha: f64, epsilon: f64, max_iters: usize) -> DenseRun {
    let n = w.len();
    let mut r = vec![1.0 / n as f64; n];
    for it in 1..=max_iters {
        let mut u = vec![0.0; n];
        for j in 0..n {
            for i in 0..n {
                u[j] += r[i] * w[i][j];
            }
        }
        let total: f64 = u.iter().sum();
        assert!(total > 0.0, "oracle hit a zero update");
        let next: Vec<f64> = (0..n)
            .map(|j| (1.0 - alpha) * r[j] + alpha * u[j] / total)
            .collect();
        let delta = (0..n).map(|j| (next[j] - r[j]).abs()).fold(0.0, f64::max);
        r = next;
        if delta < epsilon {
            return DenseRun {
                scores: r,
                iterations: it,
                converged: true,
            };
        }
    }
    DenseRun {
        scores: r,
        iterations: max_iters,
        converged: false,
    }
}

/// Average precision by direct summation: for each relevant rank `r` within
/// the cutoff, count the relevant entries in `pattern[..r]` from scratch.
pub fn brute_average_precision(pattern: &[bool], k: usize) -> f64 {
    let cut = k.min(pattern.len());
    let relevant_ranks: Vec<usize> = (1..=cut).filter(|&r| pattern[r - 1]).collect();
    if relevant_ranks.is_empty() {
        return 0.0;
    }
    let mut sum = 0.0;
    for &r in &relevant_ranks {
        let hits = pattern[..r].iter().filter(|&&x| x).count();
        sum += hits as f64 / r as f64;
    }
    sum / relevant_ranks.len() as f64
}

//! Exact minimum-cost assignment between two eigenvalue lists.
//!
//! Dimensions stay ≤ a few hundred, so the cubic-time Hungarian method
//! (Kuhn–Munkres) is cheap and removes all heuristic noise from the matching
//! bound checker.

use ordered_float::OrderedFloat;
use pathfinding::prelude::{kuhn_munkres_min, Matrix};

/// Minimum over bijections π of Σⱼ cost[π(j)][j]... concretely: returns the
/// optimal total cost and the column assigned to each row.
pub fn min_cost_assignment(cost: &[Vec<f64>]) -> (f64, Vec<usize>) {
    let n = cost.len();
    assert!(n > 0 && cost.iter().all(|row| row.len() == n), "cost matrix must be square");
    let weights: Matrix<OrderedFloat<f64>> =
        Matrix::from_rows(cost.iter().map(|row| row.iter().map(|&c| OrderedFloat(c)))).unwrap();
    let (total, assignment) = kuhn_munkres_min(&weights);
    (total.into_inner(), assignment)
}

/// Optimal matching cost Σ |a_{π(j)} − b_j|^p over permutations π.
pub fn optimal_matching_power(a: &[f64], b: &[f64], p: f64) -> f64 {
    assert_eq!(a.len(), b.len());
    let cost: Vec<Vec<f64>> =
        b.iter().map(|&bj| a.iter().map(|&ai| (ai - bj).abs().powf(p)).collect()).collect();
    min_cost_assignment(&cost).0
}

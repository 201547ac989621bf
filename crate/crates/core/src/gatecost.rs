//! Two-qubit controlled-Z counts: a hypergraph code versus the graph state
//! obtained by replacing every hyperedge with a clique on its vertices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Standard CZ gates needed for one `C^kZ`: `2k` for `k >= 3`, one for a
/// plain CZ, none for a single-site phase.
pub fn hyper_cost(k: i64) -> Result<u64> {
    match k {
        k if k <= 0 => Err(Error::InvalidEdgeSize(k)),
        1 => Ok(0),
        2 => Ok(1),
        k => Ok(2 * k as u64),
    }
}

/// Edges of a complete graph on `k` vertices.
pub fn clique_cost(k: i64) -> Result<u64> {
    if k <= 0 {
        return Err(Error::InvalidEdgeSize(k));
    }
    let k = k as u64;
    Ok(k * (k - 1) / 2)
}

/// `clique_cost(k) - hyper_cost(k)`.
pub fn advantage(k: i64) -> Result<i64> {
    Ok(clique_cost(k)? as i64 - hyper_cost(k)? as i64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeCost {
    pub size: usize,
    pub hyper_cost: u64,
    pub clique_cost: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CostReport {
    pub per_edge: Vec<EdgeCost>,
    pub total_hyper: u64,
    pub total_clique: u64,
    pub advantage: i64,
}

/// Costs over the declared edges of `graph`, in canonical edge order.
pub fn compare(graph: &Hypergraph) -> CostReport {
    let per_edge: Vec<EdgeCost> = graph
        .edges()
        .iter()
        .map(|e| {
            let k = e.len() as i64;
            EdgeCost {
                size: e.len(),
                hyper_cost: hyper_cost(k).expect("edges are non-empty"),
                clique_cost: clique_cost(k).expect("edges are non-empty"),
            }
        })
        .collect();
    let total_hyper = per_edge.iter().map(|c| c.hyper_cost).sum();
    let total_clique = per_edge.iter().map(|c| c.clique_cost).sum();
    CostReport {
        per_edge,
        total_hyper,
        total_clique,
        advantage: total_clique as i64 - total_hyper as i64,
    }
}

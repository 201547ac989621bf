//! Brute-force oracles and random instances shared by the integration tests.
//! Nothing here goes through the kernel solver or the gate-based simulator.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use hyperdetect::{ErrorConfiguration, Hypergraph, LinearSystem, Modulus, VertexId};

/// Every assignment in `Z_d^cols`, first column most significant.
pub fn assignments(d: u32, cols: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (d as usize).pow(cols as u32);
    (0..total).map(move |mut index| {
        let mut v = vec![0u32; cols];
        for slot in v.iter_mut().rev() {
            *slot = (index % d as usize) as u32;
            index /= d as usize;
        }
        v
    })
}

pub fn brute_force_solutions(sys: &LinearSystem) -> BTreeSet<Vec<u32>> {
    let d = sys.modulus().get();
    let rows = sys.matrix();
    assignments(d, sys.columns().len())
        .filter(|g| {
            rows.iter().all(|r| {
                r.iter().zip(g).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % d as u64 == 0
            })
        })
        .collect()
}

/// Detection decided by enumerating every assignment on `X ∪ E` and reading
/// adjacency straight from the edge list.
pub fn brute_force_detected(g: &Hypergraph, e: &ErrorConfiguration, d: u32) -> bool {
    let adjacent = |a: VertexId, b: VertexId| -> bool {
        if a == b {
            return false;
        }
        let implicit = g.implicit_input_adjacency()
            && ((g.inputs().contains(&a) && g.outputs().contains(&b))
                || (g.inputs().contains(&b) && g.outputs().contains(&a)));
        implicit || g.edges().iter().any(|edge| edge.contains(&a) && edge.contains(&b))
    };
    let cols: Vec<VertexId> = g.inputs().iter().chain(e.vertices()).copied().collect();
    let checks: Vec<VertexId> = g.outputs().iter().copied().filter(|v| !e.contains(*v)).collect();
    let n_in = g.inputs().len();
    for a in assignments(d, cols.len()) {
        let solves = checks.iter().all(|&i| {
            cols.iter()
                .zip(&a)
                .filter(|(&c, _)| adjacent(c, i))
                .map(|(_, &v)| v as u64)
                .sum::<u64>()
                % d as u64
                == 0
        });
        if !solves {
            continue;
        }
        if a[..n_in].iter().any(|&v| v != 0) {
            return false;
        }
        for &x in g.inputs() {
            let s: u64 = cols[n_in..]
                .iter()
                .zip(&a[n_in..])
                .filter(|(&c, _)| adjacent(c, x))
                .map(|(_, &v)| v as u64)
                .sum();
            if s % d as u64 != 0 {
                return false;
            }
        }
    }
    true
}

/// `d^(-n/2) * omega^(sum over phase edges of the product of digits)`.
pub fn closed_form_amplitudes(g: &Hypergraph, d: u32) -> Vec<Complex64> {
    let vertices = g.vertices();
    let edges = g.phase_edges();
    let n = vertices.len();
    let norm = (d as f64).powf(-(n as f64) / 2.0);
    assignments(d, n)
        .map(|digits| {
            let mut exponent: u64 = 0;
            for e in &edges {
                let mut prod: u64 = 1;
                for v in e {
                    let pos = vertices.iter().position(|x| x == v).unwrap();
                    prod *= digits[pos] as u64;
                }
                exponent += prod;
            }
            let angle = 2.0 * std::f64::consts::PI * (exponent % d as u64) as f64 / d as f64;
            Complex64::from_polar(norm, angle)
        })
        .collect()
}

pub fn modulus(d: u64) -> Modulus {
    Modulus::new(d).unwrap()
}

/// Random hypergraph on inputs `0..n_in` and outputs `n_in..n_in+n_out`; each
/// subset of size `1..=max_edge` becomes an edge with probability `p`.
pub fn random_hypergraph<R: Rng>(
    rng: &mut R,
    d: u64,
    n_in: u32,
    n_out: u32,
    max_edge: usize,
    p: f64,
    implicit: bool,
) -> Hypergraph {
    let n = n_in + n_out;
    let mut edges = Vec::new();
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= max_edge && rng.gen_bool(p) {
            edges.push((0..n).filter(|b| mask >> b & 1 == 1).collect::<Vec<u32>>());
        }
    }
    Hypergraph::new(modulus(d), 0..n_in, n_in..n, edges, implicit).unwrap()
}

/// Random bijection from the graph's vertices onto a shuffled id range.
pub fn random_relabeling<R: Rng>(
    rng: &mut R,
    g: &Hypergraph,
) -> std::collections::BTreeMap<VertexId, VertexId> {
    let vertices = g.vertices();
    let mut targets: Vec<u32> = (0..vertices.len() as u32).map(|i| i * 3 + 7).collect();
    targets.shuffle(rng);
    vertices
        .into_iter()
        .zip(targets.into_iter().map(VertexId))
        .collect()
}

/// All subsets of the outputs.
pub fn all_configurations(g: &Hypergraph) -> Vec<ErrorConfiguration> {
    let outputs: Vec<u32> = g.outputs().iter().map(|v| v.0).collect();
    (0u32..(1 << outputs.len()))
        .map(|mask| {
            let chosen = outputs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v);
            ErrorConfiguration::new(g, chosen).unwrap()
        })
        .collect()
}

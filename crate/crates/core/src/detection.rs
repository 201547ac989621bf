//! The linear detection condition.
//!
//! For an error configuration `E` with clean checks `I = Y \ E`, `E` is
//! detected iff every solution `g` over `X ∪ E` of `H_{X∪E}^I g = 0` has
//! `g^X = 0` and `H_E^X g^E = 0`. Both conditions are linear, so they are
//! tested on a generating set of the solution group instead of on every
//! solution.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupTuple, Modulus};
use crate::hypergraph::{ErrorConfiguration, Hypergraph, VertexId};
use crate::linalg;

/// A system of homogeneous linear equations over `Z_d` with labelled rows
/// (check vertices) and columns (unknowns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    modulus: Modulus,
    columns: Vec<VertexId>,
    rows: Vec<(VertexId, Vec<u32>)>,
}

impl LinearSystem {
    pub fn new(
        modulus: Modulus,
        columns: Vec<VertexId>,
        rows: Vec<(VertexId, Vec<u32>)>,
    ) -> Self {
        let d = modulus.get();
        for (_, coeffs) in &rows {
            assert_eq!(coeffs.len(), columns.len(), "row width differs from column count");
            assert!(coeffs.iter().all(|&c| c < d), "coefficient out of range");
        }
        LinearSystem {
            modulus,
            columns,
            rows,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn columns(&self) -> &[VertexId] {
        &self.columns
    }

    pub fn rows(&self) -> &[(VertexId, Vec<u32>)] {
        &self.rows
    }

    pub fn matrix(&self) -> Vec<Vec<u32>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    /// Whether `values` (indexed like the columns) satisfies every row.
    pub fn annihilates(&self, values: &[u32]) -> bool {
        let d = self.modulus.get() as u64;
        self.rows.iter().all(|(_, coeffs)| {
            coeffs
                .iter()
                .zip(values)
                .map(|(&c, &v)| c as u64 * v as u64)
                .sum::<u64>()
                % d
                == 0
        })
    }

    /// Rows grouped by coefficient pattern: each distinct pattern, written as
    /// its support, with the check vertices that share it.
    pub fn row_groups(&self) -> BTreeMap<Vec<(VertexId, u32)>, Vec<VertexId>> {
        let mut groups: BTreeMap<Vec<(VertexId, u32)>, Vec<VertexId>> = BTreeMap::new();
        for (check, coeffs) in &self.rows {
            let support: Vec<(VertexId, u32)> = self
                .columns
                .iter()
                .zip(coeffs)
                .filter(|(_, &c)| c != 0)
                .map(|(&v, &c)| (v, c))
                .collect();
            groups.entry(support).or_default().push(*check);
        }
        groups
    }
}

/// Generators of the solution group of a [`LinearSystem`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    modulus: Modulus,
    columns: Vec<VertexId>,
    generators: Vec<GroupTuple>,
}

impl KernelBasis {
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn columns(&self) -> &[VertexId] {
        &self.columns
    }

    pub fn generators(&self) -> &[GroupTuple] {
        &self.generators
    }

    /// Every element of the generated subgroup, sorted. Exponential in the
    /// number of generators; meant for small systems.
    pub fn subgroup(&self) -> BTreeSet<Vec<u32>> {
        let d = self.modulus.get() as u64;
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        seen.insert(vec![0; self.columns.len()]);
        for generator in &self.generators {
            let mut next = seen.clone();
            for base in &seen {
                let mut current = base.clone();
                for _ in 1..d {
                    for (c, &g) in current.iter_mut().zip(generator.values()) {
                        *c = ((*c as u64 + g as u64) % d) as u32;
                    }
                    next.insert(current.clone());
                }
            }
            seen = next;
        }
        seen
    }
}

/// `H_L^K`: one row per `k` in `codomain`, with coefficient `f(l, k)` in the
/// column of each `l` in `domain`. Column order follows `domain`; row order
/// follows `codomain`.
pub fn build_homomorphism(
    graph: &Hypergraph,
    domain: &[VertexId],
    codomain: &[VertexId],
    modulus: Modulus,
) -> Result<LinearSystem> {
    for &v in domain.iter().chain(codomain) {
        if !graph.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    let rows = codomain
        .iter()
        .map(|&k| {
            let coeffs = domain
                .iter()
                .map(|&l| graph.f(l, k).map(|x| x as u32))
                .collect::<Result<Vec<_>>>()?;
            Ok((k, coeffs))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearSystem::new(modulus, domain.to_vec(), rows))
}

/// Columns `X ∪ E`: inputs ascending, then error vertices ascending.
pub fn detection_columns(graph: &Hypergraph, errors: &ErrorConfiguration) -> Vec<VertexId> {
    graph
        .inputs()
        .iter()
        .chain(errors.vertices())
        .copied()
        .collect()
}

/// The system `H_{X∪E}^I g = 0` with `I = Y \ E`.
pub fn build_detection_system(
    graph: &Hypergraph,
    errors: &ErrorConfiguration,
    modulus: Modulus,
) -> Result<LinearSystem> {
    if let Some(&v) = errors.vertices().iter().find(|v| !graph.outputs().contains(v)) {
        return Err(Error::NotAnOutput(v));
    }
    let columns = detection_columns(graph, errors);
    let checks = errors.check_vertices(graph);
    build_homomorphism(graph, &columns, &checks, modulus)
}

/// Solution-group generators: elimination over `Z_p` for prime `d`, integer
/// Smith normal form otherwise.
pub fn kernel_mod_d(system: &LinearSystem) -> KernelBasis {
    let modulus = system.modulus();
    let matrix = system.matrix();
    let cols = system.columns().len();
    let raw = if modulus.is_prime() {
        linalg::nullspace_prime_field(&matrix, cols, modulus)
    } else {
        linalg::kernel_snf(&matrix, cols, modulus)
    };
    wrap_kernel(system, raw)
}

/// Same as [`kernel_mod_d`] but always through the Smith normal form.
pub fn kernel_mod_d_snf(system: &LinearSystem) -> KernelBasis {
    let raw = linalg::kernel_snf(&system.matrix(), system.columns().len(), system.modulus());
    wrap_kernel(system, raw)
}

fn wrap_kernel(system: &LinearSystem, raw: Vec<Vec<u32>>) -> KernelBasis {
    let modulus = system.modulus();
    let generators = raw
        .into_iter()
        .map(|v| {
            debug_assert!(system.annihilates(&v));
            GroupTuple::new(
                modulus,
                system.columns().to_vec(),
                v.into_iter().map(i64::from).collect(),
            )
        })
        .collect();
    KernelBasis {
        modulus,
        columns: system.columns().to_vec(),
        generators,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectionVerdict {
    pub detected: bool,
    /// A solution over `X ∪ E` that breaks the detection condition.
    pub witness: Option<GroupTuple>,
    /// Rows of `H_E^X`, as coefficients over `E`, that vanish on every
    /// solution.
    pub forced_relations: Vec<Vec<u32>>,
}

fn dot_mod(a: &[u32], b: &[u32], d: u64) -> u64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| x as u64 * y as u64)
        .sum::<u64>()
        % d
}

pub fn is_detected(
    graph: &Hypergraph,
    errors: &ErrorConfiguration,
    modulus: Modulus,
) -> Result<DetectionVerdict> {
    let system = build_detection_system(graph, errors, modulus)?;
    let kernel = kernel_mod_d(&system);
    let inputs: Vec<VertexId> = graph.inputs().iter().copied().collect();
    let error_vertices: Vec<VertexId> = errors.vertices().iter().copied().collect();
    let n_in = inputs.len();
    let d = modulus.get() as u64;

    // H_E^X: one row per input vertex, coefficients over E
    let relations = build_homomorphism(graph, &error_vertices, &inputs, modulus)?;

    let violates = |g: &GroupTuple| {
        let (on_inputs, on_errors) = g.values().split_at(n_in);
        on_inputs.iter().any(|&v| v != 0)
            || relations
                .rows()
                .iter()
                .any(|(_, r)| dot_mod(r, on_errors, d) != 0)
    };
    let witness = kernel.generators().iter().find(|g| violates(g)).cloned();

    let forced_relations = relations
        .rows()
        .iter()
        .filter(|(_, r)| {
            kernel
                .generators()
                .iter()
                .all(|g| dot_mod(r, &g.values()[n_in..], d) == 0)
        })
        .map(|(_, r)| r.clone())
        .collect();

    Ok(DetectionVerdict {
        detected: witness.is_none(),
        witness,
        forced_relations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UndetectedConfiguration {
    pub config: Vec<u32>,
    /// Non-zero witness entries keyed by vertex id.
    pub witness: BTreeMap<u32, u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnumerationReport {
    pub graph: serde_json::Value,
    pub modulus: u32,
    pub size: usize,
    pub total: usize,
    pub detected: usize,
    pub undetected: Vec<UndetectedConfiguration>,
}

impl EnumerationReport {
    pub fn all_detected(&self) -> bool {
        self.undetected.is_empty()
    }
}

pub fn witness_map(witness: &GroupTuple) -> BTreeMap<u32, u32> {
    witness.support().into_iter().map(|(v, x)| (v.0, x)).collect()
}

/// All `size`-subsets of `items`, in lexicographic order.
pub fn combinations<T: Copy>(items: &[T], size: usize) -> Vec<Vec<T>> {
    let n = items.len();
    if size > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(pos) = (0..size).rev().find(|&i| idx[i] != i + n - size) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Runs [`is_detected`] on every `size`-subset of the outputs. Configurations
/// are checked in parallel; the report lists them in lexicographic order.
pub fn enumerate_detected(
    graph: &Hypergraph,
    size: usize,
    modulus: Modulus,
) -> Result<EnumerationReport> {
    let outputs: Vec<u32> = graph.outputs().iter().map(|v| v.0).collect();
    if size > outputs.len() {
        return Err(Error::SizeTooLarge {
            size,
            outputs: outputs.len(),
        });
    }
    let configs = combinations(&outputs, size);
    let verdicts = configs
        .par_iter()
        .map(|c| {
            let errors = ErrorConfiguration::new(graph, c.iter().copied())?;
            is_detected(graph, &errors, modulus)
        })
        .collect::<Result<Vec<_>>>()?;

    let undetected: Vec<UndetectedConfiguration> = configs
        .iter()
        .zip(&verdicts)
        .filter_map(|(c, v)| {
            v.witness.as_ref().map(|w| UndetectedConfiguration {
                config: c.clone(),
                witness: witness_map(w),
            })
        })
        .collect();

    Ok(EnumerationReport {
        graph: graph.to_json_value(),
        modulus: modulus.get(),
        size,
        total: configs.len(),
        detected: configs.len() - undetected.len(),
        undetected,
    })
}

/// Largest `k` such that every configuration of size at most `k` is
/// detected; `-1` when even the empty configuration fails.
///
/// Detection is closed under taking subsets, so the scan stops at the first
/// size with an undetected configuration.
pub fn detection_radius(graph: &Hypergraph, modulus: Modulus) -> Result<i64> {
    let outputs = graph.outputs().len();
    let mut radius = -1;
    for size in 0..=outputs {
        let report = enumerate_detected(graph, size, modulus)?;
        if !report.all_detected() {
            break;
        }
        radius = size as i64;
    }
    Ok(radius)
}

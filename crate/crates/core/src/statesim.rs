//! Dense qudit simulation of hypergraph states and of the encoding isometry.
//!
//! Basis states are indexed big-endian: the first site is the most
//! significant digit. The generalized controlled-Z on a set of sites
//! multiplies each amplitude by `omega^(product of the site digits)`, which
//! is `diag(1, ..., 1, -1)` for qubits.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Modulus;
use crate::hypergraph::{ErrorConfiguration, Hypergraph, VertexId};

/// Largest state dimension the simulator will allocate.
pub const STATE_CAP: u128 = 1 << 22;
/// Largest `d^(|X| + |Y|)` for which the isometry is materialized.
pub const ISOMETRY_CAP: u128 = 1 << 20;

pub const STATE_TOL: f64 = 1e-9;
pub const FACTORIZATION_TOL: f64 = 1e-7;

fn dimension(d: u32, n: usize, cap: u128) -> Result<usize> {
    let mut dim: u128 = 1;
    for _ in 0..n {
        dim *= d as u128;
        if dim > cap {
            return Err(Error::SizeCapExceeded { dim, cap });
        }
    }
    Ok(dim as usize)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
    modulus: Modulus,
    sites: Vec<VertexId>,
}

impl StateVector {
    /// `|+>` on every site.
    pub fn uniform(sites: Vec<VertexId>, modulus: Modulus) -> Result<Self> {
        let dim = dimension(modulus.get(), sites.len(), STATE_CAP)?;
        let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(StateVector {
            amplitudes: vec![amp; dim],
            modulus,
            sites,
        })
    }

    /// Computational basis state with the given digit on each site.
    pub fn basis(sites: Vec<VertexId>, modulus: Modulus, digits: &[u32]) -> Result<Self> {
        assert_eq!(sites.len(), digits.len());
        let dim = dimension(modulus.get(), sites.len(), STATE_CAP)?;
        let d = modulus.get() as usize;
        let index = digits.iter().fold(0usize, |acc, &x| acc * d + x as usize);
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            amplitudes,
            modulus,
            sites,
        })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn local_dim(&self) -> u32 {
        self.modulus.get()
    }

    pub fn sites(&self) -> &[VertexId] {
        &self.sites
    }

    pub fn num_sites(&self) -> usize {
        self.sites.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn max_distance(&self, other: &StateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Digit of `site_pos` in basis index `index`.
    pub fn digit(&self, index: usize, site_pos: usize) -> u32 {
        let d = self.modulus.get() as usize;
        let shift = self.sites.len() - 1 - site_pos;
        ((index / d.pow(shift as u32)) % d) as u32
    }

    fn positions(&self, sites: &[VertexId]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(sites.len());
        for &s in sites {
            let pos = self
                .sites
                .iter()
                .position(|&x| x == s)
                .ok_or(Error::UnknownVertex(s))?;
            if out.contains(&pos) {
                return Err(Error::RepeatedSite(s));
            }
            out.push(pos);
        }
        Ok(out)
    }

    fn strides(&self) -> Vec<usize> {
        let d = self.modulus.get() as usize;
        let n = self.sites.len();
        (0..n).map(|p| d.pow((n - 1 - p) as u32)).collect()
    }

    /// In-place generalized controlled-Z.
    pub fn ckz_in_place(&mut self, sites: &[VertexId]) -> Result<()> {
        let positions = self.positions(sites)?;
        let d = self.modulus.get() as u64;
        let strides = self.strides();
        let modulus = self.modulus;
        let phases: Vec<Complex64> = (0..d).map(|e| modulus.omega_pow(e)).collect();
        self.amplitudes
            .par_iter_mut()
            .enumerate()
            .for_each(|(index, amp)| {
                let exponent = positions.iter().fold(1 % d, |acc, &p| {
                    acc * ((index / strides[p]) as u64 % d) % d
                });
                if exponent != 0 {
                    *amp *= phases[exponent as usize];
                }
            });
        Ok(())
    }

    /// Pauli X (bit flip) on one qubit site.
    pub fn x_in_place(&mut self, site: VertexId) -> Result<()> {
        if self.modulus.get() != 2 {
            return Err(Error::QubitOnly(self.modulus.get()));
        }
        let pos = self.positions(&[site])?[0];
        let stride = self.strides()[pos];
        for index in 0..self.amplitudes.len() {
            if index & stride == 0 {
                self.amplitudes.swap(index, index | stride);
            }
        }
        Ok(())
    }

    pub fn scale(&mut self, factor: Complex64) {
        for a in &mut self.amplitudes {
            *a *= factor;
        }
    }
}

/// Returns `state` with the generalized controlled-Z applied on `sites`.
pub fn apply_ckz(mut state: StateVector, sites: &[VertexId]) -> Result<StateVector> {
    state.ckz_in_place(sites)?;
    Ok(state)
}

/// `prod_e C^{|e|}Z_e |+>^V` over the graph's phase edges, on all vertices in
/// ascending order.
pub fn hypergraph_state(graph: &Hypergraph, modulus: Modulus) -> Result<StateVector> {
    let mut state = StateVector::uniform(graph.vertices(), modulus)?;
    for edge in graph.phase_edges() {
        state.ckz_in_place(&edge)?;
    }
    Ok(state)
}

fn require_qubits(graph: &Hypergraph) -> Result<Modulus> {
    let m = graph.modulus();
    if m.get() != 2 {
        return Err(Error::QubitOnly(m.get()));
    }
    Ok(m)
}

/// Applies `K_i = X_i * prod_{e ∋ i} C^{|e|-1}Z_{e \ i}` to `state`.
fn apply_stabilizer(graph: &Hypergraph, vertex: VertexId, state: &mut StateVector) -> Result<()> {
    for edge in graph.phase_edges() {
        if !edge.contains(&vertex) {
            continue;
        }
        let rest: Vec<VertexId> = edge.iter().copied().filter(|&v| v != vertex).collect();
        if rest.is_empty() {
            // C^0Z is the scalar -1
            state.scale(Complex64::new(-1.0, 0.0));
        } else {
            state.ckz_in_place(&rest)?;
        }
    }
    state.x_in_place(vertex)
}

/// Whether `K_i` fixes the graph's hypergraph state. Qubit graphs only.
pub fn verify_stabilizer(graph: &Hypergraph, vertex: VertexId) -> Result<bool> {
    let modulus = require_qubits(graph)?;
    if !graph.contains(vertex) {
        return Err(Error::UnknownVertex(vertex));
    }
    let state = hypergraph_state(graph, modulus)?;
    let mut image = state.clone();
    apply_stabilizer(graph, vertex, &mut image)?;
    Ok(state.max_distance(&image) <= STATE_TOL)
}

/// Label used for the logical register prepended by [`encode`]: one above
/// every vertex id in the graph.
pub fn logical_register(graph: &Hypergraph) -> VertexId {
    VertexId(graph.vertices().last().map_or(0, |v| v.0 + 1))
}

/// `|0> -> |0>_D ⊗ |Γ>`, `|1> -> |1>_D ⊗ X̄|Γ>`, with the logical register
/// as the first site.
pub fn encode(graph: &Hypergraph, logical: u8) -> Result<StateVector> {
    let modulus = require_qubits(graph)?;
    if logical > 1 {
        return Err(Error::ResidueOutOfRange {
            value: logical as u64,
            modulus: 2,
        });
    }
    let vertices = graph.vertices();
    let mut sites = vec![logical_register(graph)];
    sites.extend(&vertices);
    let dim = dimension(2, sites.len(), STATE_CAP)?;

    let mut code = hypergraph_state(graph, modulus)?;
    if logical == 1 {
        for &v in &vertices {
            code.x_in_place(v)?;
        }
    }
    // the logical register is the most significant digit
    let half = dim / 2;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
    let offset = logical as usize * half;
    amplitudes[offset..offset + half].copy_from_slice(&code.amplitudes);
    Ok(StateVector {
        amplitudes,
        modulus,
        sites,
    })
}

/// The encoding map `L^2(G^X) -> L^2(G^Y)` as a dense matrix. Rows are
/// output assignments, columns input assignments, both big-endian over the
/// ascending vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct IsometryMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
    inputs: Vec<VertexId>,
    outputs: Vec<VertexId>,
    modulus: Modulus,
}

impl IsometryMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    pub fn inputs(&self) -> &[VertexId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[VertexId] {
        &self.outputs
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// `V^dagger V`.
    pub fn gram(&self) -> Vec<Vec<Complex64>> {
        (0..self.cols)
            .map(|a| {
                (0..self.cols)
                    .map(|b| {
                        (0..self.rows)
                            .map(|r| self.entry(r, a).conj() * self.entry(r, b))
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }

    /// Largest entry of `|V^dagger V - 1|`.
    pub fn isometry_deviation(&self) -> f64 {
        let gram = self.gram();
        let mut worst: f64 = 0.0;
        for (a, row) in gram.iter().enumerate() {
            for (b, z) in row.iter().enumerate() {
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((z - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    pub fn is_isometry(&self) -> bool {
        self.isometry_deviation() <= STATE_TOL
    }
}

/// Entry `(g^Y, g^X)` is `omega^(sum over phase edges of the product of the
/// digits on the edge)`, each column scaled to unit norm.
pub fn isometry_matrix(graph: &Hypergraph, modulus: Modulus) -> Result<IsometryMatrix> {
    let inputs: Vec<VertexId> = graph.inputs().iter().copied().collect();
    let outputs: Vec<VertexId> = graph.outputs().iter().copied().collect();
    dimension(modulus.get(), inputs.len() + outputs.len(), ISOMETRY_CAP)?;
    let rows = dimension(modulus.get(), outputs.len(), ISOMETRY_CAP)?;
    let cols = dimension(modulus.get(), inputs.len(), ISOMETRY_CAP)?;
    let d = modulus.get() as u64;

    // position of every vertex: (is_input, position within its register)
    let locate = |v: &VertexId| -> (bool, usize) {
        match inputs.iter().position(|x| x == v) {
            Some(p) => (true, p),
            None => (false, outputs.iter().position(|y| y == v).expect("declared vertex")),
        }
    };
    let edges: Vec<Vec<(bool, usize)>> = graph
        .phase_edges()
        .iter()
        .map(|e| e.iter().map(locate).collect())
        .collect();
    let digits_of = |mut index: usize, len: usize| -> Vec<u64> {
        let mut out = vec![0u64; len];
        for slot in out.iter_mut().rev() {
            *slot = (index % d as usize) as u64;
            index /= d as usize;
        }
        out
    };

    let mut data = vec![Complex64::new(0.0, 0.0); rows * cols];
    data.par_chunks_mut(cols).enumerate().for_each(|(r, row)| {
        let gy = digits_of(r, outputs.len());
        for (c, slot) in row.iter_mut().enumerate() {
            let gx = digits_of(c, inputs.len());
            let exponent = edges.iter().fold(0u64, |acc, edge| {
                let prod = edge.iter().fold(1 % d, |p, &(is_in, pos)| {
                    p * if is_in { gx[pos] } else { gy[pos] } % d
                });
                (acc + prod) % d
            });
            *slot = modulus.omega_pow(exponent);
        }
    });
    let norm = (rows as f64).sqrt();
    for z in &mut data {
        *z /= norm;
    }
    Ok(IsometryMatrix {
        rows,
        cols,
        data,
        inputs,
        outputs,
        modulus,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorizationReport {
    pub factorizes: bool,
    pub max_deviation: f64,
    /// First `(g^E, h^E)` pair, in lexicographic order, whose block is not a
    /// multiple of the identity.
    pub offending: Option<(Vec<u32>, Vec<u32>)>,
}

/// Checks `V^dagger (|g^E><h^E| ⊗ 1) V = c(g^E, h^E) * 1` for every pair of
/// error-register basis states.
pub fn kl_factorization_check(
    graph: &Hypergraph,
    errors: &ErrorConfiguration,
    modulus: Modulus,
) -> Result<FactorizationReport> {
    let iso = isometry_matrix(graph, modulus)?;
    let d = modulus.get() as usize;
    let outputs = iso.outputs().to_vec();
    let ny = outputs.len();
    let stride = |pos: usize| d.pow((ny - 1 - pos) as u32);
    let error_strides: Vec<usize> = outputs
        .iter()
        .enumerate()
        .filter(|(_, v)| errors.contains(**v))
        .map(|(p, _)| stride(p))
        .collect();
    let check_strides: Vec<usize> = outputs
        .iter()
        .enumerate()
        .filter(|(_, v)| !errors.contains(**v))
        .map(|(p, _)| stride(p))
        .collect();
    if let Some(&v) = errors.vertices().iter().find(|v| !outputs.contains(v)) {
        return Err(Error::NotAnOutput(v));
    }

    // row-index contribution of every assignment to a register subset
    let offsets = |strides: &[usize]| -> Vec<usize> {
        let mut out = vec![0usize];
        for &s in strides {
            out = out
                .iter()
                .flat_map(|&base| (0..d).map(move |x| base + x * s))
                .collect();
        }
        out
    };
    let error_offsets = offsets(&error_strides);
    let check_offsets = offsets(&check_strides);
    let cols = iso.cols();

    let pair_deviation = |ge: usize, he: usize| -> f64 {
        let mut block = vec![Complex64::new(0.0, 0.0); cols * cols];
        for &ci in &check_offsets {
            let rg = error_offsets[ge] + ci;
            let rh = error_offsets[he] + ci;
            for a in 0..cols {
                let left = iso.entry(rg, a).conj();
                for b in 0..cols {
                    block[a * cols + b] += left * iso.entry(rh, b);
                }
            }
        }
        let diag0 = block[0];
        let mut worst: f64 = 0.0;
        for a in 0..cols {
            for b in 0..cols {
                let z = block[a * cols + b];
                let dev = if a == b { (z - diag0).norm() } else { z.norm() };
                worst = worst.max(dev);
            }
        }
        worst
    };

    let n_err = error_offsets.len();
    let deviations: Vec<f64> = (0..n_err * n_err)
        .into_par_iter()
        .map(|k| pair_deviation(k / n_err, k % n_err))
        .collect();

    let max_deviation = deviations.iter().copied().fold(0.0, f64::max);
    let digits = |mut index: usize| -> Vec<u32> {
        let mut out = vec![0u32; error_strides.len()];
        for slot in out.iter_mut().rev() {
            *slot = (index % d) as u32;
            index /= d;
        }
        out
    };
    let offending = deviations
        .iter()
        .position(|&x| x > FACTORIZATION_TOL)
        .map(|k| (digits(k / n_err), digits(k % n_err)));
    Ok(FactorizationReport {
        factorizes: offending.is_none(),
        max_deviation,
        offending,
    })
}

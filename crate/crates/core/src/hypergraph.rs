//! Hypergraphs with an input/output vertex partition.
//!
//! Adjacency is derived from the hyperedges: two vertices are neighbours when
//! some edge contains both. With `implicit_input_adjacency` set, every input
//! is additionally adjacent to every output. That augmentation only affects
//! [`Hypergraph::neighbors`] and [`Hypergraph::f`]; [`Hypergraph::gamma`]
//! always reports the declared edge list.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Modulus;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

/// On-disk layout. Field order is the canonical key order.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    modulus: u64,
    inputs: Vec<u32>,
    outputs: Vec<u32>,
    edges: Vec<Vec<u32>>,
    #[serde(default)]
    implicit_input_adjacency: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    modulus: Modulus,
    inputs: BTreeSet<VertexId>,
    outputs: BTreeSet<VertexId>,
    // sorted lexicographically, each edge ascending
    edges: Vec<Vec<VertexId>>,
    implicit_input_adjacency: bool,
    adjacency: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

fn ids(raw: &[VertexId]) -> Vec<u32> {
    raw.iter().map(|v| v.0).collect()
}

impl Hypergraph {
    /// Validates and builds a hypergraph. Vertex lists may be given in any
    /// order; edges are stored sorted.
    pub fn new<I, O, E, V>(
        modulus: Modulus,
        inputs: I,
        outputs: O,
        edges: E,
        implicit_input_adjacency: bool,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = u32>,
        O: IntoIterator<Item = u32>,
        E: IntoIterator<Item = V>,
        V: IntoIterator<Item = u32>,
    {
        let mut input_set = BTreeSet::new();
        for v in inputs {
            if !input_set.insert(VertexId(v)) {
                return Err(Error::DuplicateVertex(VertexId(v)));
            }
        }
        let mut output_set = BTreeSet::new();
        for v in outputs {
            let v = VertexId(v);
            if input_set.contains(&v) {
                return Err(Error::OverlappingPartition(v));
            }
            if !output_set.insert(v) {
                return Err(Error::DuplicateVertex(v));
            }
        }

        let mut edge_set = BTreeSet::new();
        for edge in edges {
            let raw: Vec<VertexId> = edge.into_iter().map(VertexId).collect();
            if raw.is_empty() {
                return Err(Error::EmptyEdge);
            }
            let mut sorted = raw.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != raw.len() {
                return Err(Error::RepeatedEdgeVertex(ids(&raw)));
            }
            if let Some(&v) = sorted
                .iter()
                .find(|v| !input_set.contains(v) && !output_set.contains(v))
            {
                return Err(Error::UndeclaredEdgeVertex(ids(&raw), v));
            }
            if !edge_set.insert(sorted) {
                return Err(Error::DuplicateEdge(ids(&raw)));
            }
        }
        let edges: Vec<Vec<VertexId>> = edge_set.into_iter().collect();

        let mut adjacency: BTreeMap<VertexId, BTreeSet<VertexId>> = input_set
            .iter()
            .chain(&output_set)
            .map(|&v| (v, BTreeSet::new()))
            .collect();
        for edge in &edges {
            for &v in edge {
                let entry = adjacency.get_mut(&v).expect("edge vertices are declared");
                entry.extend(edge.iter().copied().filter(|&u| u != v));
            }
        }
        if implicit_input_adjacency {
            for &x in &input_set {
                for &y in &output_set {
                    adjacency.get_mut(&x).unwrap().insert(y);
                    adjacency.get_mut(&y).unwrap().insert(x);
                }
            }
        }

        Ok(Hypergraph {
            modulus,
            inputs: input_set,
            outputs: output_set,
            edges,
            implicit_input_adjacency,
            adjacency,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let modulus = Modulus::new(file.modulus)?;
        Hypergraph::new(
            modulus,
            file.inputs,
            file.outputs,
            file.edges,
            file.implicit_input_adjacency,
        )
    }

    /// Canonical single-line JSON. Two graphs are equal iff these strings are.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph serialization cannot fail")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_file()).expect("graph serialization cannot fail")
    }

    fn to_file(&self) -> GraphFile {
        GraphFile {
            modulus: self.modulus.get() as u64,
            inputs: self.inputs.iter().map(|v| v.0).collect(),
            outputs: self.outputs.iter().map(|v| v.0).collect(),
            edges: self.edges.iter().map(|e| ids(e)).collect(),
            implicit_input_adjacency: self.implicit_input_adjacency,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn inputs(&self) -> &BTreeSet<VertexId> {
        &self.inputs
    }

    pub fn outputs(&self) -> &BTreeSet<VertexId> {
        &self.outputs
    }

    pub fn edges(&self) -> &[Vec<VertexId>] {
        &self.edges
    }

    pub fn implicit_input_adjacency(&self) -> bool {
        self.implicit_input_adjacency
    }

    /// All vertices, ascending.
    pub fn vertices(&self) -> Vec<VertexId> {
        self.adjacency.keys().copied().collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adjacency.contains_key(&v)
    }

    fn require(&self, v: VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// 1 iff `vertices` is exactly one of the declared edges.
    pub fn gamma(&self, vertices: &[VertexId]) -> Result<u8> {
        if vertices.is_empty() {
            return Err(Error::EmptyEdge);
        }
        for &v in vertices {
            self.require(v)?;
        }
        let mut key = vertices.to_vec();
        key.sort_unstable();
        key.dedup();
        Ok(self.edges.binary_search(&key).is_ok() as u8)
    }

    pub fn neighbors(&self, v: VertexId) -> Result<&BTreeSet<VertexId>> {
        self.adjacency.get(&v).ok_or(Error::UnknownVertex(v))
    }

    /// Adjacency indicator; symmetric in its arguments.
    pub fn f(&self, x: VertexId, y: VertexId) -> Result<u8> {
        self.require(x)?;
        Ok(self.neighbors(y)?.contains(&x) as u8)
    }

    /// Edges that carry a phase in the quantum state: the declared edges,
    /// plus one `{x, y}` edge per input/output pair when implicit adjacency
    /// is on and that pair is not already a declared edge.
    pub fn phase_edges(&self) -> Vec<Vec<VertexId>> {
        let mut out = self.edges.clone();
        if self.implicit_input_adjacency {
            for &x in &self.inputs {
                for &y in &self.outputs {
                    let pair = if x < y { vec![x, y] } else { vec![y, x] };
                    if self.edges.binary_search(&pair).is_err() {
                        out.push(pair);
                    }
                }
            }
        }
        out
    }

    /// Same graph with every vertex id mapped through `map`.
    pub fn relabel(&self, map: &BTreeMap<VertexId, VertexId>) -> Result<Hypergraph> {
        let apply = |v: &VertexId| -> Result<u32> {
            map.get(v).map(|t| t.0).ok_or(Error::UnknownVertex(*v))
        };
        let inputs = self.inputs.iter().map(apply).collect::<Result<Vec<_>>>()?;
        let outputs = self.outputs.iter().map(apply).collect::<Result<Vec<_>>>()?;
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(apply).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Hypergraph::new(
            self.modulus,
            inputs,
            outputs,
            edges,
            self.implicit_input_adjacency,
        )
    }

    pub fn with_modulus(&self, modulus: Modulus) -> Hypergraph {
        Hypergraph {
            modulus,
            ..self.clone()
        }
    }
}

/// A set `E` of output vertices hit by arbitrary errors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ErrorConfiguration {
    vertices: BTreeSet<VertexId>,
}

impl ErrorConfiguration {
    pub fn new<I: IntoIterator<Item = u32>>(graph: &Hypergraph, vertices: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for v in vertices {
            let v = VertexId(v);
            if !graph.outputs().contains(&v) {
                return Err(if graph.contains(v) {
                    Error::NotAnOutput(v)
                } else {
                    Error::UnknownVertex(v)
                });
            }
            set.insert(v);
        }
        Ok(ErrorConfiguration { vertices: set })
    }

    pub fn empty() -> Self {
        ErrorConfiguration {
            vertices: BTreeSet::new(),
        }
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// The clean check vertices `Y \ E`, ascending.
    pub fn check_vertices(&self, graph: &Hypergraph) -> Vec<VertexId> {
        graph
            .outputs()
            .iter()
            .copied()
            .filter(|v| !self.vertices.contains(v))
            .collect()
    }

    pub fn ids(&self) -> Vec<u32> {
        self.vertices.iter().map(|v| v.0).collect()
    }
}

//! The built-in 15-output example: one input vertex `0`, outputs `1..=15`,
//! and five 6-vertex hyperedges arranged in a ring.

use crate::hypergraph::Hypergraph;

pub const FIFTEEN_VERTEX_JSON: &str = r#"{"modulus":2,"inputs":[0],"outputs":[1,2,3,4,5,6,7,8,9,10,11,12,13,14,15],"edges":[[1,2,3,4,5,6],[1,2,3,13,14,15],[4,5,6,7,8,9],[7,8,9,10,11,12],[10,11,12,13,14,15]],"implicit_input_adjacency":true}"#;

/// The six size-4 error configurations worked through by hand for this graph.
pub const WORKED_CONFIGURATIONS: [[u32; 4]; 6] = [
    [1, 2, 3, 4],
    [1, 3, 5, 7],
    [1, 2, 10, 11],
    [1, 2, 9, 10],
    [1, 7, 8, 9],
    [2, 5, 8, 11],
];

pub fn fifteen_vertex() -> Hypergraph {
    Hypergraph::from_json(FIFTEEN_VERTEX_JSON).expect("built-in fixture is valid")
}

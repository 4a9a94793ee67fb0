pub mod blocks;
pub mod canon;
pub mod checks;
pub mod connectivity;
pub mod cycles;
pub mod decompose;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod io;
pub mod ops;
pub mod par;
pub mod planar;
pub mod script;

pub use blocks::{blocks, is_biconnected, BlockDecomposition};
pub use canon::{canonical_code, is_isomorphic, CanonicalCode};
pub use connectivity::{
    collapse_supernodes, is_exactly_k, local_connectivity, minimum_cuts, ConnectivityReport,
    EdgeCut,
};
pub use cycles::chordless_cycles;
pub use decompose::{
    c_partition, decompose, find_collapsible_cycle, is_collapsible, CPartition, ColoredCycle,
};
pub use enumerate::{brute_force_census, brute_force_census_with, check_minimum_equivalence, enumerate, minimum_filter_admits, simple_graph_classes, EnumerationQuery, EnumerationResult};
pub use error::{Error, Result};
pub use graph::{families, Cycle, DenseGraph, Multigraph, Vertex};
pub use ops::{
    block_glue, block_respecting_cycle_expand, contraction_expansion, cycle_contract,
    cycle_expand, k_bridge_add, vertex_glue, vertex_split, CycleExpansionSpec,
    VertexGluingSpec,
};
pub use par::Exec;
pub use planar::{embedding_code, euler_per_block, faces, order_preserving_expand, planar_synthesize, RotationSystem};
pub use script::{replay, thick_tree_factor, ScriptOp, SynthesisScript};

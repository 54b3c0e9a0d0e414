// SPDX-License-Identifier: Apache-2.0

//! Exact anti-van der Waerden numbers `aw(G, k)` of small connected graphs.
//!
//! `aw(G, k)` is the least `r` such that every exact `r`-coloring of `G`
//! contains a rainbow k-term arithmetic progression, where progressions are
//! measured in hop distance. This crate enumerates progressions, searches
//! exact colorings with relabeling symmetry removed, builds the known
//! extremal grid colorings and emits checkable certificates.

pub mod ap;
pub mod certify;
pub mod coloring;
pub mod construct;
pub mod corpus;
pub mod graph;
pub mod polychromatic;
pub mod search;

pub use ap::{
    brute_force_k_aps, enumerate_k_aps, find_rainbow_ap, is_rainbow, ApError, ApTable,
    ArithmeticProgression,
};
pub use certify::{
    emit_certificate, parse_certificate, verify_certificate, Certificate, CertificateError,
    Verdict, VerificationReport,
};
pub use coloring::{
    automorphism_orbit_count, colors_used, parse_coloring, Coloring, ColoringError,
};
pub use construct::{
    closed_form_aw_grid, closed_form_predicate, construct_corner_coloring,
    construct_two_red_coloring, verify_product_bound, ConstructionError, GridColoringName,
    GridColoringSpec, ProductBoundReport,
};
pub use graph::{
    all_pairs_distances, automorphisms, build_complete, build_cycle, build_grid, build_path,
    build_star, cartesian_product, induced_subgraph, is_isometric_subgraph, parse_graph,
    product_layers, DistanceMatrix, Graph, GraphError, GridCoordinates,
};
pub use polychromatic::find_polychromatic_path;
pub use search::{
    compute_aw, compute_aw_with_table, enumerate_rainbow_free_colorings,
    exists_rainbow_free_coloring, AwResult, ColorCountRecord, SearchConfig, SearchError,
    DEFAULT_BUDGET,
};

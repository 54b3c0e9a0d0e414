// SPDX-License-Identifier: Apache-2.0

//! Fixtures shared by the criterion benchmarks.

use awgraph_core::{all_pairs_distances, build_grid, enumerate_k_aps, ApTable};

/// The 3-AP table of `P_m □ P_n`.
pub fn grid_table(m: usize, n: usize) -> ApTable {
    let (g, _) = build_grid(m, n).expect("positive dimensions");
    enumerate_k_aps(&all_pairs_distances(&g), 3).expect("k = 3")
}

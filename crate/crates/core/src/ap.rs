// SPDX-License-Identifier: Apache-2.0

//! Non-degenerate k-term arithmetic progressions of a graph.
//!
//! A k-AP is a set of k distinct vertices admitting an ordering
//! `x_1, ..., x_k` with `d(x_i, x_{i+1}) = d` for one common `d >= 1`.
//! Rainbow status depends only on the vertex set, so tables are keyed by set
//! and one witness ordering is kept for reporting.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::coloring::Coloring;
use crate::graph::DistanceMatrix;

/// Largest `n^k` the brute-force enumerator will walk.
pub const BRUTE_FORCE_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApError {
    #[error("progressions need at least 2 terms, got k = {0}")]
    TermCountTooSmall(usize),
    #[error("brute force over {n}^{k} tuples exceeds the limit of {limit}")]
    GuardExceeded { n: usize, k: usize, limit: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArithmeticProgression {
    vertices: Vec<usize>,
    witness: Vec<usize>,
    difference: u32,
}

impl ArithmeticProgression {
    fn from_witness(witness: Vec<usize>, difference: u32) -> Self {
        let mut vertices = witness.clone();
        vertices.sort_unstable();
        ArithmeticProgression {
            vertices,
            witness,
            difference,
        }
    }

    /// The vertex set, ascending.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// One ordering with equal consecutive distances.
    pub fn witness(&self) -> &[usize] {
        &self.witness
    }

    /// Common difference of the witness ordering.
    pub fn difference(&self) -> u32 {
        self.difference
    }

    /// Checks the progression against a distance matrix.
    pub fn is_valid_in(&self, dist: &DistanceMatrix) -> bool {
        let mut sorted = self.witness.clone();
        sorted.sort_unstable();
        let distinct = sorted.windows(2).all(|w| w[0] != w[1]);
        distinct
            && sorted == self.vertices
            && self.difference >= 1
            && self
                .witness
                .windows(2)
                .all(|w| dist.get(w[0], w[1]) == self.difference)
    }
}

/// All k-APs of a graph, sorted lexicographically by vertex set, with a
/// per-vertex membership index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApTable {
    k: usize,
    aps: Vec<ArithmeticProgression>,
    by_vertex: Vec<Vec<usize>>,
}

impl ApTable {
    fn from_map(k: usize, n: usize, map: BTreeMap<Vec<usize>, ArithmeticProgression>) -> Self {
        let aps: Vec<_> = map.into_values().collect();
        let mut by_vertex = vec![Vec::new(); n];
        for (i, ap) in aps.iter().enumerate() {
            for &v in &ap.vertices {
                by_vertex[v].push(i);
            }
        }
        ApTable { k, aps, by_vertex }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.by_vertex.len()
    }

    pub fn len(&self) -> usize {
        self.aps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.aps.is_empty()
    }

    pub fn aps(&self) -> &[ArithmeticProgression] {
        &self.aps
    }

    pub fn get(&self, index: usize) -> &ArithmeticProgression {
        &self.aps[index]
    }

    /// Indices of the progressions containing `v`.
    pub fn containing(&self, v: usize) -> &[usize] {
        &self.by_vertex[v]
    }

    /// The vertex-set family, in table order.
    pub fn vertex_sets(&self) -> Vec<Vec<usize>> {
        self.aps.iter().map(|ap| ap.vertices.clone()).collect()
    }
}

fn check_k(k: usize) -> Result<(), ApError> {
    if k < 2 {
        Err(ApError::TermCountTooSmall(k))
    } else {
        Ok(())
    }
}

/// Enumerates every non-degenerate k-AP.
///
/// For `k = 3` each vertex is tried as the middle term and the remaining
/// vertices are bucketed by their distance to it; any two vertices in one
/// bucket close a progression. Other `k` extend partial sequences depth-first
/// for each difference `1..=diameter`.
pub fn enumerate_k_aps(dist: &DistanceMatrix, k: usize) -> Result<ApTable, ApError> {
    check_k(k)?;
    let n = dist.vertex_count();
    let mut found = BTreeMap::new();
    if k > n {
        return Ok(ApTable::from_map(k, n, found));
    }
    let diameter = dist.diameter() as usize;
    if k == 3 {
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); diameter + 1];
        for mid in 0..n {
            buckets.iter_mut().for_each(Vec::clear);
            for v in (0..n).filter(|&v| v != mid) {
                buckets[dist.get(mid, v) as usize].push(v);
            }
            for (d, bucket) in buckets.iter().enumerate() {
                for (i, &a) in bucket.iter().enumerate() {
                    for &c in &bucket[i + 1..] {
                        let ap = ArithmeticProgression::from_witness(vec![a, mid, c], d as u32);
                        found.entry(ap.vertices.clone()).or_insert(ap);
                    }
                }
            }
        }
        return Ok(ApTable::from_map(k, n, found));
    }

    // spheres[d][v]: vertices at distance exactly d from v
    let mut spheres = vec![vec![Vec::new(); n]; diameter + 1];
    for u in 0..n {
        for v in 0..n {
            spheres[dist.get(u, v) as usize][u].push(v);
        }
    }
    let mut seq = Vec::with_capacity(k);
    let mut used = vec![false; n];
    for (d, sphere) in spheres.iter().enumerate().skip(1) {
        for start in 0..n {
            seq.push(start);
            used[start] = true;
            extend(sphere, k, d as u32, &mut seq, &mut used, &mut found);
            used[start] = false;
            seq.pop();
        }
    }
    Ok(ApTable::from_map(k, n, found))
}

fn extend(
    sphere: &[Vec<usize>],
    k: usize,
    d: u32,
    seq: &mut Vec<usize>,
    used: &mut [bool],
    found: &mut BTreeMap<Vec<usize>, ArithmeticProgression>,
) {
    if seq.len() == k {
        let ap = ArithmeticProgression::from_witness(seq.clone(), d);
        found.entry(ap.vertices.clone()).or_insert(ap);
        return;
    }
    let last = *seq.last().unwrap();
    for &next in &sphere[last] {
        if used[next] {
            continue;
        }
        used[next] = true;
        seq.push(next);
        extend(sphere, k, d, seq, used, found);
        seq.pop();
        used[next] = false;
    }
}

/// Reference enumerator: walks every ordered k-tuple of distinct vertices.
pub fn brute_force_k_aps(dist: &DistanceMatrix, k: usize) -> Result<ApTable, ApError> {
    check_k(k)?;
    let n = dist.vertex_count();
    let within_limit = u64::try_from(n)
        .ok()
        .and_then(|n| n.checked_pow(k as u32))
        .is_some_and(|total| total <= BRUTE_FORCE_LIMIT);
    if !within_limit {
        return Err(ApError::GuardExceeded {
            n,
            k,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut found = BTreeMap::new();
    let mut tuple = vec![0usize; k];
    'outer: loop {
        let distinct = (0..k).all(|i| (i + 1..k).all(|j| tuple[i] != tuple[j]));
        if distinct {
            let d = dist.get(tuple[0], tuple[1]);
            if tuple.windows(2).all(|w| dist.get(w[0], w[1]) == d) {
                let ap = ArithmeticProgression::from_witness(tuple.clone(), d);
                found.entry(ap.vertices.clone()).or_insert(ap);
            }
        }
        // odometer increment
        for slot in (0..k).rev() {
            tuple[slot] += 1;
            if tuple[slot] < n {
                continue 'outer;
            }
            tuple[slot] = 0;
        }
        break;
    }
    Ok(ApTable::from_map(k, n, found))
}

/// True iff the progression's vertices carry pairwise distinct colors.
pub fn is_rainbow(ap: &ArithmeticProgression, c: &Coloring) -> bool {
    let v = &ap.vertices;
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| c.color(v[i]) != c.color(v[j])))
}

/// First rainbow progression in table order, if any.
///
/// Panics when the coloring and the table disagree on the vertex count.
pub fn find_rainbow_ap<'t>(table: &'t ApTable, c: &Coloring) -> Option<&'t ArithmeticProgression> {
    assert_eq!(
        c.len(),
        table.vertex_count(),
        "coloring size does not match the graph"
    );
    table.aps.iter().find(|ap| is_rainbow(ap, c))
}

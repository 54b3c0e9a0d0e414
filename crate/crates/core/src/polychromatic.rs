// SPDX-License-Identifier: Apache-2.0

use std::collections::VecDeque;

use crate::coloring::{colors_used, Coloring};
use crate::graph::Graph;
use crate::search::SearchError;

/// A simple path of `g` carrying at least three colors.
///
/// Takes the first bichromatic edge `uv`, the nearest vertex `w` to `v`
/// whose color differs from both endpoints, and a shortest `v`-`w` path;
/// `u` is prepended when the path does not already pass through it.
pub fn find_polychromatic_path(g: &Graph, c: &Coloring) -> Result<Vec<usize>, SearchError> {
    let n = g.vertex_count();
    if c.len() != n {
        return Err(SearchError::DimensionMismatch {
            expected: n,
            got: c.len(),
        });
    }
    let all: Vec<usize> = (0..n).collect();
    let found = colors_used(c, &all).len();
    if found < 3 {
        return Err(SearchError::TooFewColors { found });
    }

    // a connected graph with two colors has a bichromatic edge
    let (u, v) = g
        .edges()
        .into_iter()
        .find(|&(a, b)| c.color(a) != c.color(b))
        .expect("connected graph with several colors");

    let mut parent = vec![usize::MAX; n];
    parent[v] = v;
    let mut queue = VecDeque::from([v]);
    let mut target = None;
    while let Some(x) = queue.pop_front() {
        if c.color(x) != c.color(u) && c.color(x) != c.color(v) {
            target = Some(x);
            break;
        }
        for &y in g.neighbors(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let w = target.expect("a third color exists and the graph is connected");

    let mut path = vec![w];
    let mut x = w;
    while x != v {
        x = parent[x];
        path.push(x);
    }
    path.reverse();
    if !path.contains(&u) {
        path.insert(0, u);
    }
    Ok(path)
}

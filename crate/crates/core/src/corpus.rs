// SPDX-License-Identifier: Apache-2.0

//! Small-graph corpora for exhaustive property checks.

use std::collections::BTreeSet;

use crate::graph::{
    build_complete, build_cycle, build_grid, build_path, build_star, cartesian_product, Graph,
};

/// Largest order accepted by [`connected_graphs`]; the isomorphism
/// reduction walks all `n!` relabelings of all `2^(n(n-1)/2)` edge sets.
pub const MAX_CORPUS_ORDER: usize = 6;

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    pairs
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// One representative of every isomorphism class of connected graphs on
/// `n` vertices, in a fixed order. Panics above [`MAX_CORPUS_ORDER`].
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(
        (1..=MAX_CORPUS_ORDER).contains(&n),
        "corpus order must be in 1..={MAX_CORPUS_ORDER}"
    );
    let pairs = pair_index(n);
    let mut slot = vec![vec![0usize; n]; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        slot[u][v] = i;
        slot[v][u] = i;
    }
    let perms = permutations(n);
    let mut classes = BTreeSet::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let canonical = perms
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .fold(0u64, |acc, (_, &(u, v))| acc | 1 << slot[p[u]][p[v]])
            })
            .min()
            .unwrap();
        classes.insert(canonical);
    }
    classes
        .into_iter()
        .filter_map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges).ok()
        })
        .collect()
}

/// Connected graphs on `1..=max_order` vertices, up to isomorphism.
pub fn connected_graphs_up_to(max_order: usize) -> Vec<Graph> {
    (1..=max_order).flat_map(connected_graphs).collect()
}

/// A mixed corpus of connected graphs on at most `max_order` vertices:
/// every isomorphism class up to five vertices, then paths, cycles, stars,
/// complete graphs, grids and small products. No graph appears twice.
pub fn mixed_corpus(max_order: usize) -> Vec<Graph> {
    let mut out = connected_graphs_up_to(max_order.min(5));
    let mut push = |g: Graph| {
        if g.vertex_count() <= max_order && !out.contains(&g) {
            out.push(g);
        }
    };
    for n in 1..=max_order {
        push(build_path(n).unwrap());
        push(build_complete(n).unwrap());
        if n >= 3 {
            push(build_cycle(n).unwrap());
        }
        if n >= 2 {
            push(build_star(n).unwrap());
        }
    }
    for m in 2..=max_order {
        for n in m..=max_order / m {
            push(build_grid(m, n).unwrap().0);
        }
    }
    let factors = [
        build_path(2).unwrap(),
        build_path(3).unwrap(),
        build_cycle(3).unwrap(),
        build_star(4).unwrap(),
        build_cycle(4).unwrap(),
    ];
    for g in &factors {
        for h in &factors {
            push(cartesian_product(g, h));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_class_counts() {
        // OEIS A001349
        let counts: Vec<usize> = (1..=5).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
    }

    #[test]
    fn mixed_corpus_respects_order() {
        let corpus = mixed_corpus(8);
        assert!(corpus.iter().all(|g| g.vertex_count() <= 8));
        assert!(corpus.len() > 31);
        for (i, g) in corpus.iter().enumerate() {
            assert!(!corpus[i + 1..].contains(g));
        }
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Backtracking search over exact colorings that avoid rainbow progressions.
//!
//! Vertices are colored in id order. Colors follow restricted growth, so each
//! color-relabeling class is visited once through its canonical member, and
//! the depth-first order visits canonical colorings lexicographically. A
//! branch is cut when
//!
//! * the vertex just colored completes a rainbow progression,
//! * some uncolored vertex has no admissible color left, or
//! * the colors still missing from `1..=r` outnumber the uncolored vertices
//!   that could take a fresh color.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::ap::{enumerate_k_aps, ApError, ApTable};
use crate::coloring::Coloring;
use crate::graph::{all_pairs_distances, Graph};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;
pub const DEFAULT_SOLUTION_LIMIT: usize = 10_000_000;

/// Node budget shared by all workers is settled in batches of this size.
const BUDGET_BATCH: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search budget of {budget} node expansions exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("more than {limit} colorings; enumeration aborted")]
    TooManySolutions { limit: usize },
    #[error("color count r = {r} outside 1..={n}")]
    ColorCountOutOfRange { r: usize, n: usize },
    #[error("a polychromatic path needs at least 3 colors, found {found}")]
    TooFewColors { found: usize },
    #[error("coloring has {got} entries but the graph has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Progression(#[from] ApError),
}

/// Resource and parallelism knobs for a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of color assignments tried across all workers.
    pub budget: u64,
    /// Worker threads; `1` runs on the calling thread.
    pub threads: usize,
    /// Maximum number of colorings an enumeration may return.
    pub solution_limit: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            threads: 1,
            solution_limit: DEFAULT_SOLUTION_LIMIT,
        }
    }
}

impl SearchConfig {
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }
}

/// Precomputed constraint layout for one (table, r) pair.
struct Searcher {
    n: usize,
    r: u32,
    arity: usize,
    /// For each vertex, the other vertices of every progression whose largest
    /// vertex it is, flattened in chunks of `arity`.
    closing: Vec<Vec<usize>>,
    /// Vertex lists of all progressions, flattened in chunks of `k`.
    members: Vec<usize>,
    /// Progression indices per vertex.
    containing: Vec<Vec<u32>>,
    /// Bitmask of colors `1..=r`; `None` when `r` does not fit a domain mask
    /// and forward checking is off.
    full: Option<u64>,
}

/// Shared node accounting for one search call.
struct Budget {
    limit: u64,
    spent: AtomicU64,
    exhausted: AtomicBool,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget {
            limit,
            spent: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    /// Adds `nodes`; returns false once the limit is passed.
    fn charge(&self, nodes: u64) -> bool {
        let total = self.spent.fetch_add(nodes, Ordering::Relaxed) + nodes;
        if total > self.limit {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        !self.exhausted.load(Ordering::Relaxed)
    }
}

/// Per-thread search state.
///
/// Besides the partial coloring, each uncolored vertex keeps a domain of
/// admissible colors. When every vertex of a progression but one is colored
/// and those colors are pairwise distinct, the last vertex must repeat one of
/// them. A vertex whose domain was narrowed this way can never receive an
/// unused color, so the colors still missing must fit on the uncolored
/// vertices that kept a full domain (`free`).
struct Worker<'a> {
    s: &'a Searcher,
    budget: &'a Budget,
    colors: Vec<u32>,
    domains: Vec<u64>,
    /// Uncolored vertices with a full domain.
    free: u32,
    trail: Vec<(usize, u64)>,
    pending: u64,
}

enum Halt {
    Budget,
    Done,
}

impl<'a> Worker<'a> {
    fn new(s: &'a Searcher, budget: &'a Budget, prefix: &[u32]) -> Self {
        let full = s.full.unwrap_or(u64::MAX);
        let mut w = Worker {
            s,
            budget,
            colors: vec![0; s.n],
            domains: vec![full; s.n],
            free: s.n as u32,
            trail: Vec::new(),
            pending: 0,
        };
        for (v, &col) in prefix.iter().enumerate() {
            let ok = w.assign(v, col);
            debug_assert!(ok, "prefixes come from a consistent search");
        }
        w
    }

    #[inline]
    fn full(&self) -> u64 {
        self.s.full.unwrap_or(u64::MAX)
    }

    /// Would giving `v` color `col` complete a rainbow progression?
    #[inline]
    fn closes_rainbow(&self, v: usize, col: u32) -> bool {
        let c = &self.colors;
        let list = &self.s.closing[v];
        match self.s.arity {
            1 => list.iter().any(|&x| c[x] != col),
            2 => list.chunks_exact(2).any(|p| {
                let (a, b) = (c[p[0]], c[p[1]]);
                a != b && a != col && b != col
            }),
            _ => list.chunks_exact(self.s.arity).any(|others| {
                others
                    .iter()
                    .enumerate()
                    .all(|(i, &x)| c[x] != col && others[i + 1..].iter().all(|&y| c[y] != c[x]))
            }),
        }
    }

    /// Colors `v` and narrows domains. Returns false when some domain
    /// empties. Undo with [`Worker::unassign`] using the trail length taken
    /// before the call.
    fn assign(&mut self, v: usize, col: u32) -> bool {
        let full = self.full();
        self.colors[v] = col;
        if self.domains[v] == full {
            self.free -= 1;
        }
        if self.s.full.is_none() {
            return true;
        }
        let k = self.s.arity + 1;
        for &ap in &self.s.containing[v] {
            let start = ap as usize * k;
            let verts = &self.s.members[start..start + k];
            let mut open = None;
            let mut mask = 0u64;
            let mut distinct = true;
            for &x in verts {
                let cx = self.colors[x];
                if cx == 0 {
                    if open.is_some() {
                        // two or more uncolored: no constraint yet
                        distinct = false;
                        break;
                    }
                    open = Some(x);
                } else {
                    let bit = 1u64 << cx;
                    if mask & bit != 0 {
                        distinct = false;
                        break;
                    }
                    mask |= bit;
                }
            }
            let Some(w) = open else { continue };
            if !distinct {
                continue;
            }
            let old = self.domains[w];
            let narrowed = old & mask;
            if narrowed != old {
                self.trail.push((w, old));
                if old == full {
                    self.free -= 1;
                }
                self.domains[w] = narrowed;
                if narrowed == 0 {
                    return false;
                }
            }
        }
        true
    }

    fn unassign(&mut self, v: usize, mark: usize) {
        let full = self.full();
        while self.trail.len() > mark {
            let (w, old) = self.trail.pop().unwrap();
            if old == full {
                self.free += 1;
            }
            self.domains[w] = old;
        }
        if self.domains[v] == full {
            self.free += 1;
        }
        self.colors[v] = 0;
    }

    fn tick(&mut self) -> Result<(), Halt> {
        self.pending += 1;
        if self.pending == BUDGET_BATCH {
            self.pending = 0;
            if !self.budget.charge(BUDGET_BATCH) {
                return Err(Halt::Budget);
            }
        }
        Ok(())
    }

    fn flush(&mut self) -> bool {
        let ok = self.budget.charge(self.pending);
        self.pending = 0;
        ok
    }

    /// Depth-first search from vertex `v` with `used` colors assigned so far.
    /// Stops at depth `stop` and hands the prefix to `visit`.
    fn dfs<F>(&mut self, v: usize, used: u32, stop: usize, visit: &mut F) -> Result<(), Halt>
    where
        F: FnMut(&[u32], u32) -> ControlFlow<()>,
    {
        if v == stop {
            return match visit(&self.colors[..stop], used) {
                ControlFlow::Continue(()) => Ok(()),
                ControlFlow::Break(()) => Err(Halt::Done),
            };
        }
        let top = (used + 1).min(self.s.r);
        for col in 1..=top {
            if self.s.full.is_some() && self.domains[v] >> col & 1 == 0 {
                continue;
            }
            self.tick()?;
            if self.closes_rainbow(v, col) {
                continue;
            }
            let used_after = used.max(col);
            let mark = self.trail.len();
            if self.assign(v, col) && self.s.r - used_after <= self.free {
                self.dfs(v + 1, used_after, stop, visit)?;
            }
            self.unassign(v, mark);
        }
        Ok(())
    }
}

impl Searcher {
    fn new(table: &ApTable, n: usize, r: usize) -> Result<Self, SearchError> {
        if r == 0 || r > n {
            return Err(SearchError::ColorCountOutOfRange { r, n });
        }
        if table.vertex_count() != n {
            return Err(SearchError::DimensionMismatch {
                expected: table.vertex_count(),
                got: n,
            });
        }
        let arity = table.k() - 1;
        let mut closing = vec![Vec::new(); n];
        let mut members = Vec::with_capacity(table.len() * table.k());
        for ap in table.aps() {
            let (&last, rest) = ap.vertices().split_last().expect("k >= 2");
            closing[last].extend_from_slice(rest);
            members.extend_from_slice(ap.vertices());
        }
        let containing = (0..n)
            .map(|v| table.containing(v).iter().map(|&i| i as u32).collect())
            .collect();
        // bit c stands for color c; bit 0 is unused
        let full = (r < 64).then(|| ((1u64 << (r + 1)) - 1) & !1);
        Ok(Searcher {
            n,
            r: r as u32,
            arity,
            closing,
            members,
            containing,
            full,
        })
    }

    /// Canonical prefixes, in lexicographic order, at the shallowest depth
    /// that yields at least `want` of them.
    fn prefixes(&self, budget: &Budget, want: usize) -> Result<Vec<(Vec<u32>, u32)>, SearchError> {
        let mut depth = 1;
        loop {
            let mut out = Vec::new();
            let mut w = Worker::new(self, budget, &[]);
            let res = w.dfs(0, 0, depth, &mut |p: &[u32], used| {
                out.push((p.to_vec(), used));
                ControlFlow::Continue(())
            });
            let ok = w.flush();
            if matches!(res, Err(Halt::Budget)) || !ok {
                return Err(SearchError::BudgetExceeded {
                    budget: budget.limit,
                });
            }
            if out.len() >= want || depth == self.n {
                return Ok(out);
            }
            depth += 1;
        }
    }

    /// Runs a full search below `prefix`, feeding complete colorings to
    /// `visit`. Returns `Ok(true)` if `visit` asked to stop.
    fn run_from<F>(
        &self,
        budget: &Budget,
        prefix: &[u32],
        used: u32,
        visit: &mut F,
    ) -> Result<bool, SearchError>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        let mut w = Worker::new(self, budget, prefix);
        let r = self.r;
        let mut inner = |c: &[u32], used: u32| {
            if used == r {
                visit(c)
            } else {
                ControlFlow::Continue(())
            }
        };
        let res = w.dfs(prefix.len(), used, self.n, &mut inner);
        let ok = w.flush();
        match res {
            Err(Halt::Done) => Ok(true),
            Err(Halt::Budget) => Err(SearchError::BudgetExceeded {
                budget: budget.limit,
            }),
            Ok(()) if !ok => Err(SearchError::BudgetExceeded {
                budget: budget.limit,
            }),
            Ok(()) => Ok(false),
        }
    }
}

fn to_coloring(colors: &[u32], r: u32) -> Coloring {
    Coloring::with_colors(colors.to_vec(), r).expect("search only emits exact colorings")
}

fn with_pool<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(job),
        Err(_) => job(),
    }
}

/// Lexicographically least canonical rainbow-free exact `r`-coloring, if any.
pub fn exists_rainbow_free_coloring(
    table: &ApTable,
    n: usize,
    r: usize,
    config: &SearchConfig,
) -> Result<Option<Coloring>, SearchError> {
    let searcher = Searcher::new(table, n, r)?;
    let budget = Budget::new(config.budget);
    if config.threads <= 1 {
        let mut found = None;
        searcher.run_from(&budget, &[], 0, &mut |c: &[u32]| {
            found = Some(c.to_vec());
            ControlFlow::Break(())
        })?;
        return Ok(found.map(|c| to_coloring(&c, searcher.r)));
    }

    let prefixes = searcher.prefixes(&budget, config.threads * 8)?;
    let result = with_pool(config.threads, || {
        prefixes.par_iter().find_map_first(|(prefix, used)| {
            let mut found = None;
            match searcher.run_from(&budget, prefix, *used, &mut |c: &[u32]| {
                found = Some(c.to_vec());
                ControlFlow::Break(())
            }) {
                Ok(_) => found.map(Ok),
                Err(e) => Some(Err(e)),
            }
        })
    });
    match result {
        Some(Ok(c)) => Ok(Some(to_coloring(&c, searcher.r))),
        Some(Err(e)) => Err(e),
        None if budget.exhausted.load(Ordering::Relaxed) => Err(SearchError::BudgetExceeded {
            budget: config.budget,
        }),
        None => Ok(None),
    }
}

/// Every canonical rainbow-free exact `r`-coloring, in lexicographic order.
///
/// Relabeling acts freely on exact colorings, so the number of labeled
/// rainbow-free colorings is the returned count times `r!`.
pub fn enumerate_rainbow_free_colorings(
    table: &ApTable,
    n: usize,
    r: usize,
    config: &SearchConfig,
) -> Result<Vec<Coloring>, SearchError> {
    let searcher = Searcher::new(table, n, r)?;
    let budget = Budget::new(config.budget);
    let limit = config.solution_limit;

    let collect_below = |prefix: &[u32], used: u32| -> Result<Vec<Vec<u32>>, SearchError> {
        let mut out = Vec::new();
        let stopped = searcher.run_from(&budget, prefix, used, &mut |c: &[u32]| {
            out.push(c.to_vec());
            if out.len() > limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        if stopped {
            return Err(SearchError::TooManySolutions { limit });
        }
        Ok(out)
    };

    let raw = if config.threads <= 1 {
        collect_below(&[], 0)?
    } else {
        let prefixes = searcher.prefixes(&budget, config.threads * 8)?;
        let parts: Result<Vec<_>, _> = with_pool(config.threads, || {
            prefixes
                .par_iter()
                .map(|(p, used)| collect_below(p, *used))
                .collect()
        });
        parts?.into_iter().flatten().collect()
    };
    if raw.len() > limit {
        return Err(SearchError::TooManySolutions { limit });
    }
    Ok(raw.iter().map(|c| to_coloring(c, searcher.r)).collect())
}

/// Outcome of the existence search for one color count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorCountRecord {
    pub r: usize,
    pub exists: bool,
}

/// `aw(G, k)` with its evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AwResult {
    pub aw: usize,
    pub k: usize,
    pub n: usize,
    /// Lexicographically least canonical rainbow-free exact
    /// `(aw - 1)`-coloring.
    pub witness: Option<Coloring>,
    /// Existence outcome for each `r` examined, ascending from `k`.
    pub per_r: Vec<ColorCountRecord>,
}

/// Computes `aw(G, k)`: the least `r` such that every exact `r`-coloring of
/// `G` has a rainbow k-AP, or `n + 1` when no `r <= n` forces one.
///
/// Every `r` from `k` upward is searched on its own; nothing assumes that
/// rainbow-free colorings exist for all counts below the answer.
pub fn compute_aw(g: &Graph, k: usize, config: &SearchConfig) -> Result<AwResult, SearchError> {
    if k < 2 {
        return Err(ApError::TermCountTooSmall(k).into());
    }
    let n = g.vertex_count();
    if k > n {
        // no k distinct vertices, so the all-distinct coloring is rainbow-free
        let witness = Coloring::new((1..=n as u32).collect()).expect("non-empty");
        return Ok(AwResult {
            aw: n + 1,
            k,
            n,
            witness: Some(witness),
            per_r: Vec::new(),
        });
    }
    let table = enumerate_k_aps(&all_pairs_distances(g), k)?;
    compute_aw_with_table(&table, config)
}

/// [`compute_aw`] over a prebuilt progression table.
pub fn compute_aw_with_table(
    table: &ApTable,
    config: &SearchConfig,
) -> Result<AwResult, SearchError> {
    let (n, k) = (table.vertex_count(), table.k());
    let mut per_r = Vec::new();
    let mut last_witness = None;
    let mut aw = n + 1;
    for r in k..=n {
        let found = exists_rainbow_free_coloring(table, n, r, config)?;
        per_r.push(ColorCountRecord {
            r,
            exists: found.is_some(),
        });
        match found {
            Some(c) => last_witness = Some(c),
            None => {
                aw = r;
                break;
            }
        }
    }
    let witness = if aw > k {
        last_witness
    } else {
        // fewer than k colors can never be rainbow
        exists_rainbow_free_coloring(table, n, aw - 1, config)?
    };
    Ok(AwResult {
        aw,
        k,
        n,
        witness,
        per_r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ap::find_rainbow_ap;
    use crate::graph::{build_grid, build_path};

    fn grid_table(m: usize, n: usize) -> ApTable {
        let (g, _) = build_grid(m, n).unwrap();
        enumerate_k_aps(&all_pairs_distances(&g), 3).unwrap()
    }

    #[test]
    fn monochromatic_is_always_available() {
        let t = grid_table(3, 3);
        let c = exists_rainbow_free_coloring(&t, 9, 1, &SearchConfig::default())
            .unwrap()
            .unwrap();
        assert_eq!(c.colors(), &[1; 9]);
    }

    #[test]
    fn color_count_out_of_range() {
        let t = grid_table(2, 2);
        let cfg = SearchConfig::default();
        assert_eq!(
            exists_rainbow_free_coloring(&t, 4, 0, &cfg),
            Err(SearchError::ColorCountOutOfRange { r: 0, n: 4 })
        );
        assert_eq!(
            enumerate_rainbow_free_colorings(&t, 4, 5, &cfg),
            Err(SearchError::ColorCountOutOfRange { r: 5, n: 4 })
        );
    }

    #[test]
    fn square_has_no_rainbow_free_three_coloring() {
        let t = grid_table(2, 2);
        assert_eq!(
            exists_rainbow_free_coloring(&t, 4, 3, &SearchConfig::default()).unwrap(),
            None
        );
    }

    #[test]
    fn two_by_three_witness_has_opposite_singletons() {
        let t = grid_table(2, 3);
        let c = exists_rainbow_free_coloring(&t, 6, 3, &SearchConfig::default())
            .unwrap()
            .unwrap();
        assert!(c.is_canonical());
        assert!(find_rainbow_ap(&t, &c).is_none());
        let mut singletons: Vec<usize> = (1..=3)
            .filter_map(|col| {
                let class: Vec<usize> = (0..6).filter(|&v| c.color(v) == col).collect();
                (class.len() == 1).then(|| class[0])
            })
            .collect();
        singletons.sort_unstable();
        // diagonally opposite corners of the 2x3 grid
        assert!(
            singletons == [0, 5] || singletons == [2, 3],
            "{singletons:?}"
        );
    }

    #[test]
    fn enumeration_examples() {
        let cfg = SearchConfig::default();
        assert_eq!(
            enumerate_rainbow_free_colorings(&grid_table(2, 3), 6, 3, &cfg)
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            enumerate_rainbow_free_colorings(&grid_table(2, 5), 10, 3, &cfg)
                .unwrap()
                .len(),
            2
        );
        let p2 = enumerate_k_aps(&all_pairs_distances(&build_path(2).unwrap()), 3).unwrap();
        let all = enumerate_rainbow_free_colorings(&p2, 2, 2, &cfg).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].colors(), &[1, 2]);
    }

    #[test]
    fn enumeration_is_sorted_and_canonical() {
        let all =
            enumerate_rainbow_free_colorings(&grid_table(3, 3), 9, 2, &SearchConfig::default())
                .unwrap();
        assert_eq!(all.len(), (1 << 8) - 1);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(Coloring::is_canonical));
    }

    #[test]
    fn budget_is_enforced() {
        let t = grid_table(4, 4);
        let cfg = SearchConfig::default().with_budget(3);
        assert_eq!(
            exists_rainbow_free_coloring(&t, 16, 4, &cfg),
            Err(SearchError::BudgetExceeded { budget: 3 })
        );
        let par = cfg.with_threads(4);
        assert!(matches!(
            exists_rainbow_free_coloring(&t, 16, 4, &par),
            Err(SearchError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn solution_limit_is_enforced() {
        let t = grid_table(3, 3);
        let cfg = SearchConfig {
            solution_limit: 10,
            ..SearchConfig::default()
        };
        assert_eq!(
            enumerate_rainbow_free_colorings(&t, 9, 2, &cfg),
            Err(SearchError::TooManySolutions { limit: 10 })
        );
    }

    #[test]
    fn parallel_matches_sequential() {
        let seq = SearchConfig::default();
        let par = SearchConfig::default().with_threads(4);
        for (m, n) in [(2, 3), (3, 3), (3, 4), (2, 5)] {
            let t = grid_table(m, n);
            for r in 1..=4 {
                assert_eq!(
                    exists_rainbow_free_coloring(&t, m * n, r, &seq).unwrap(),
                    exists_rainbow_free_coloring(&t, m * n, r, &par).unwrap()
                );
                assert_eq!(
                    enumerate_rainbow_free_colorings(&t, m * n, r, &seq).unwrap(),
                    enumerate_rainbow_free_colorings(&t, m * n, r, &par).unwrap()
                );
            }
        }
    }

    #[test]
    fn aw_examples() {
        let cfg = SearchConfig::default();
        let p2 = compute_aw(&build_path(2).unwrap(), 3, &cfg).unwrap();
        assert_eq!(p2.aw, 3);
        assert!(p2.per_r.is_empty());

        for ((m, n), expected) in [((2, 2), 3), ((2, 3), 4), ((3, 3), 3), ((3, 4), 4)] {
            let (g, _) = build_grid(m, n).unwrap();
            let res = compute_aw(&g, 3, &cfg).unwrap();
            assert_eq!(res.aw, expected, "P{m} x P{n}");
            let w = res.witness.unwrap();
            assert_eq!(w.num_colors() as usize, expected - 1);
        }
    }

    #[test]
    fn aw_k2_is_two() {
        // every pair is a 2-AP, so any two colors give a rainbow pair
        let res = compute_aw(&build_path(4).unwrap(), 2, &SearchConfig::default()).unwrap();
        assert_eq!(res.aw, 2);
        assert_eq!(res.witness.unwrap().colors(), &[1, 1, 1, 1]);
    }

    #[test]
    fn aw_rejects_small_k() {
        assert!(matches!(
            compute_aw(&build_path(3).unwrap(), 1, &SearchConfig::default()),
            Err(SearchError::Progression(ApError::TermCountTooSmall(1)))
        ));
    }
}

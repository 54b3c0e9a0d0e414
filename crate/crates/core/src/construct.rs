// SPDX-License-Identifier: Apache-2.0

//! Explicit extremal colorings of grids, the closed form for
//! `aw(P_m □ P_n, 3)` and the product upper-bound check.

use std::fmt;

use thiserror::Error;

use crate::coloring::Coloring;
use crate::graph::{cartesian_product, Graph, GridCoordinates};
use crate::search::{compute_aw, SearchConfig, SearchError};

pub const RED: u32 = 1;
pub const BLUE: u32 = 2;
pub const GREEN: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{name} coloring of a {m}x{n} grid requires {requirement}")]
    Precondition {
        name: GridColoringName,
        m: usize,
        n: usize,
        requirement: &'static str,
    },
    #[error("grid dimensions must be at least 2, got {m}x{n}")]
    GridTooSmall { m: usize, n: usize },
    #[error("product factors need at least 2 vertices, got {left} and {right}")]
    FactorTooSmall { left: usize, right: usize },
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridColoringName {
    /// Red at `v_{1,1}`, blue at `v_{m,n}`, green elsewhere; needs `m + n` odd.
    Corner,
    /// Red at `v_{1,2}` and `v_{2,1}`, blue at `v_{m,n}`, green elsewhere;
    /// needs `m, n >= 4` and `m + n` even.
    TwoRedCorner,
}

impl GridColoringName {
    pub fn as_str(&self) -> &'static str {
        match self {
            GridColoringName::Corner => "corner",
            GridColoringName::TwoRedCorner => "two-red-corner",
        }
    }
}

impl fmt::Display for GridColoringName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for GridColoringName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "corner" => Ok(GridColoringName::Corner),
            "two-red-corner" => Ok(GridColoringName::TwoRedCorner),
            other => Err(format!("unknown construction {other:?}")),
        }
    }
}

/// A named grid coloring with its dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridColoringSpec {
    pub name: GridColoringName,
    pub m: usize,
    pub n: usize,
}

impl GridColoringSpec {
    pub fn new(name: GridColoringName, m: usize, n: usize) -> Self {
        GridColoringSpec { name, m, n }
    }

    pub fn build(&self) -> Result<Coloring, ConstructionError> {
        match self.name {
            GridColoringName::Corner => construct_corner_coloring(self.m, self.n),
            GridColoringName::TwoRedCorner => construct_two_red_coloring(self.m, self.n),
        }
    }
}

fn precondition(
    name: GridColoringName,
    m: usize,
    n: usize,
    requirement: &'static str,
) -> ConstructionError {
    ConstructionError::Precondition {
        name,
        m,
        n,
        requirement,
    }
}

pub fn construct_corner_coloring(m: usize, n: usize) -> Result<Coloring, ConstructionError> {
    let name = GridColoringName::Corner;
    if m == 0 || n == 0 || m * n < 3 {
        return Err(precondition(name, m, n, "at least 3 vertices"));
    }
    if (m + n).is_multiple_of(2) {
        return Err(precondition(name, m, n, "m + n odd"));
    }
    let grid = GridCoordinates::new(m, n);
    let mut colors = vec![GREEN; m * n];
    colors[grid.vertex(1, 1)] = RED;
    colors[grid.vertex(m, n)] = BLUE;
    Ok(Coloring::with_colors(colors, 3).expect("three colors present"))
}

pub fn construct_two_red_coloring(m: usize, n: usize) -> Result<Coloring, ConstructionError> {
    let name = GridColoringName::TwoRedCorner;
    if m < 4 || n < 4 {
        return Err(precondition(name, m, n, "m >= 4 and n >= 4"));
    }
    if (m + n) % 2 == 1 {
        return Err(precondition(name, m, n, "m + n even"));
    }
    let grid = GridCoordinates::new(m, n);
    let mut colors = vec![GREEN; m * n];
    colors[grid.vertex(1, 2)] = RED;
    colors[grid.vertex(2, 1)] = RED;
    colors[grid.vertex(m, n)] = BLUE;
    Ok(Coloring::with_colors(colors, 3).expect("three colors present"))
}

/// The closed-form condition for value 3, read in the given orientation
/// only: `m = 2` with `n` even, or `m = 3` with `n` odd.
pub fn closed_form_predicate(m: usize, n: usize) -> bool {
    (m == 2 && n.is_multiple_of(2)) || (m == 3 && n % 2 == 1)
}

/// `aw(P_m □ P_n, 3)` from the closed form. Both orientations are tested,
/// since `P_m □ P_n` and `P_n □ P_m` are isomorphic.
pub fn closed_form_aw_grid(m: usize, n: usize) -> Result<usize, ConstructionError> {
    if m < 2 || n < 2 {
        return Err(ConstructionError::GridTooSmall { m, n });
    }
    if closed_form_predicate(m, n) || closed_form_predicate(n, m) {
        Ok(3)
    } else {
        Ok(4)
    }
}

/// Outcome of checking `aw(G □ H, 3) <= 4` on one pair of factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductBoundReport {
    pub left_order: usize,
    pub right_order: usize,
    pub aw: usize,
    pub pass: bool,
    /// Extremal coloring of the product (three colors when `aw = 4`).
    pub witness: Option<Coloring>,
}

pub fn verify_product_bound(
    g: &Graph,
    h: &Graph,
    config: &SearchConfig,
) -> Result<ProductBoundReport, ConstructionError> {
    let (left, right) = (g.vertex_count(), h.vertex_count());
    if left < 2 || right < 2 {
        return Err(ConstructionError::FactorTooSmall { left, right });
    }
    let product = cartesian_product(g, h);
    let result = compute_aw(&product, 3, config)?;
    Ok(ProductBoundReport {
        left_order: left,
        right_order: right,
        aw: result.aw,
        pass: result.aw <= 4,
        witness: result.witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ap::{enumerate_k_aps, find_rainbow_ap};
    use crate::graph::{all_pairs_distances, build_cycle, build_grid, build_path};

    fn rainbow_free_on_grid(m: usize, n: usize, c: &Coloring) -> bool {
        let (g, _) = build_grid(m, n).unwrap();
        let t = enumerate_k_aps(&all_pairs_distances(&g), 3).unwrap();
        find_rainbow_ap(&t, c).is_none()
    }

    #[test]
    fn corner_examples() {
        let c = construct_corner_coloring(2, 3).unwrap();
        assert_eq!(c.colors(), &[1, 3, 3, 3, 3, 2]);
        assert!(rainbow_free_on_grid(2, 3, &c));
        assert!(rainbow_free_on_grid(
            3,
            4,
            &construct_corner_coloring(3, 4).unwrap()
        ));
        assert!(matches!(
            construct_corner_coloring(2, 2),
            Err(ConstructionError::Precondition { .. })
        ));
        assert!(construct_corner_coloring(1, 2).is_err());
    }

    #[test]
    fn two_red_examples() {
        for (m, n) in [(4, 4), (4, 6)] {
            let c = construct_two_red_coloring(m, n).unwrap();
            assert_eq!(c.num_colors(), 3);
            assert!(rainbow_free_on_grid(m, n, &c));
        }
        assert!(construct_two_red_coloring(3, 5).is_err());
        assert!(construct_two_red_coloring(4, 5).is_err());
    }

    #[test]
    fn spec_builds_named_coloring() {
        let spec = GridColoringSpec::new("two-red-corner".parse().unwrap(), 4, 4);
        let c = spec.build().unwrap();
        assert_eq!(c.color(1), RED);
        assert_eq!(c.color(4), RED);
        assert_eq!(c.color(15), BLUE);
        assert!("diagonal".parse::<GridColoringName>().is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_aw_grid(2, 4).unwrap(), 3);
        assert_eq!(closed_form_aw_grid(3, 5).unwrap(), 3);
        assert_eq!(closed_form_aw_grid(5, 3).unwrap(), 3);
        assert_eq!(closed_form_aw_grid(4, 5).unwrap(), 4);
        assert_eq!(closed_form_aw_grid(2, 3).unwrap(), 4);
        assert!(!closed_form_predicate(5, 3));
        assert!(matches!(
            closed_form_aw_grid(1, 4),
            Err(ConstructionError::GridTooSmall { .. })
        ));
    }

    #[test]
    fn closed_form_is_symmetric_and_odd_sums_give_four() {
        for m in 2..=12 {
            for n in 2..=12 {
                assert_eq!(closed_form_aw_grid(m, n), closed_form_aw_grid(n, m));
                if (m + n) % 2 == 1 {
                    assert_eq!(closed_form_aw_grid(m, n).unwrap(), 4);
                }
            }
        }
    }

    #[test]
    fn product_bound_examples() {
        let cfg = SearchConfig::default();
        let p2 = build_path(2).unwrap();
        let c3 = build_cycle(3).unwrap();
        let r = verify_product_bound(&p2, &p2, &cfg).unwrap();
        assert_eq!((r.aw, r.pass), (3, true));
        let r = verify_product_bound(&p2, &c3, &cfg).unwrap();
        assert!(r.pass && (3..=4).contains(&r.aw));
        let r = verify_product_bound(&c3, &c3, &cfg).unwrap();
        assert!(r.pass && (3..=4).contains(&r.aw));
        assert!(matches!(
            verify_product_bound(&build_path(1).unwrap(), &c3, &cfg),
            Err(ConstructionError::FactorTooSmall { .. })
        ));
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Graph spec strings: `path:N`, `cycle:N`, `complete:N`, `star:N`,
//! `grid:MxN`, `product:<spec>,<spec>` and `file:<path>`.

use std::fs;

use anyhow::{bail, Context, Result};
use awgraph_core::{
    build_complete, build_cycle, build_grid, build_path, build_star, cartesian_product,
    parse_graph, Graph, GridCoordinates,
};

/// Maximum nesting of `product:` specs.
pub const MAX_PRODUCT_DEPTH: usize = 3;

/// A graph built from a spec, plus grid coordinates when it is `P_m □ P_n`.
#[derive(Debug, Clone)]
pub struct ResolvedGraph {
    pub spec: String,
    pub graph: Graph,
    pub grid: Option<GridCoordinates>,
    /// Set when the graph is a path built by `path:N`.
    path_len: Option<usize>,
}

impl ResolvedGraph {
    /// Human-readable label for vertex `v`: its id, plus `(i,j)` on grids.
    pub fn vertex_label(&self, v: usize) -> String {
        match self.grid {
            Some(g) => {
                let (i, j) = g.coords(v);
                format!("{v}({i},{j})")
            }
            None => v.to_string(),
        }
    }
}

pub fn resolve(spec: &str) -> Result<ResolvedGraph> {
    let (resolved, rest) =
        parse_spec(spec, 0).with_context(|| format!("invalid graph spec {spec:?}"))?;
    if !rest.is_empty() {
        bail!("invalid graph spec {spec:?}: trailing input {rest:?}");
    }
    Ok(resolved)
}

fn parse_number(text: &str, what: &str) -> Result<usize> {
    text.parse()
        .with_context(|| format!("{what} {text:?} is not a non-negative integer"))
}

/// Parses one spec from the front of `s`, returning the unparsed rest.
fn parse_spec(s: &str, depth: usize) -> Result<(ResolvedGraph, &str)> {
    let (kind, body) = s
        .split_once(':')
        .with_context(|| format!("expected <kind>:<args>, got {s:?}"))?;
    if kind == "product" {
        if depth >= MAX_PRODUCT_DEPTH {
            bail!("product specs nest at most {MAX_PRODUCT_DEPTH} deep");
        }
        let (left, rest) = parse_spec(body, depth + 1)?;
        let rest = rest
            .strip_prefix(',')
            .context("product needs two comma-separated factors")?;
        let (right, rest) = parse_spec(rest, depth + 1)?;
        let graph = cartesian_product(&left.graph, &right.graph);
        let grid = match (left.path_len, right.path_len) {
            (Some(m), Some(n)) => Some(GridCoordinates::new(m, n)),
            _ => None,
        };
        let consumed = s.len() - rest.len();
        return Ok((
            ResolvedGraph {
                spec: s[..consumed].to_string(),
                graph,
                grid,
                path_len: None,
            },
            rest,
        ));
    }

    let end = body.find(',').unwrap_or(body.len());
    let (arg, rest) = body.split_at(end);
    let mut grid = None;
    let mut path_len = None;
    let graph = match kind {
        "path" => {
            let n = parse_number(arg, "path length")?;
            path_len = Some(n);
            build_path(n)?
        }
        "cycle" => build_cycle(parse_number(arg, "cycle length")?)?,
        "complete" => build_complete(parse_number(arg, "complete graph order")?)?,
        "star" => build_star(parse_number(arg, "star order")?)?,
        "grid" => {
            let (m, n) = arg
                .split_once('x')
                .with_context(|| format!("grid expects MxN, got {arg:?}"))?;
            let (g, coords) = build_grid(
                parse_number(m, "grid rows")?,
                parse_number(n, "grid columns")?,
            )?;
            grid = Some(coords);
            g
        }
        "file" => {
            let text =
                fs::read_to_string(arg).with_context(|| format!("reading graph file {arg}"))?;
            parse_graph(&text).with_context(|| format!("parsing graph file {arg}"))?
        }
        other => bail!("unknown graph kind {other:?}"),
    };
    let spec = format!("{kind}:{arg}");
    Ok((
        ResolvedGraph {
            spec,
            graph,
            grid,
            path_len,
        },
        rest,
    ))
}

// SPDX-License-Identifier: Apache-2.0

//! Command implementations behind the `awgraph` binary.
//!
//! Every command writes plain `key = value` style records, one per line, to
//! the supplied writer and returns a [`Status`]. Errors are returned as
//! [`anyhow::Error`]; [`exit_code`] maps them to process exit codes.

pub mod spec;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use awgraph_core::search::SearchError;
use awgraph_core::{
    all_pairs_distances, automorphism_orbit_count, automorphisms, build_grid, closed_form_aw_grid,
    compute_aw, emit_certificate, enumerate_k_aps, enumerate_rainbow_free_colorings,
    find_rainbow_ap, parse_coloring, verify_certificate, verify_product_bound, ConstructionError,
    GridColoringName, GridColoringSpec, SearchConfig, Verdict, DEFAULT_BUDGET,
};
use clap::{Parser, Subcommand};

use crate::spec::{resolve, ResolvedGraph};

pub const EXIT_OK: i32 = 0;
/// A check ran to completion and failed (rainbow found, mismatch, bound
/// violated, certificate rejected).
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "awgraph",
    version,
    about = "Anti-van der Waerden numbers of graphs"
)]
pub struct Cli {
    /// Worker threads for the coloring search.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Node-expansion budget for each coloring search.
    #[arg(long, global = true, env = "AWGRAPH_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute aw(G, k) by exhaustive search.
    Aw {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        k: usize,
        /// Write a certificate for the result.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Check a coloring file for rainbow k-APs.
    Verify {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// List every canonical rainbow-free exact r-coloring.
    Extremal {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
    },
    /// Compare the closed form for aw(P_m x P_n, 3) with search.
    Table {
        #[arg(long, default_value_t = 16)]
        max_cells: usize,
    },
    /// Write one of the explicit extremal grid colorings.
    Construct {
        #[arg(long)]
        name: GridColoringName,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check aw(G x H, 3) <= 4 for one pair of factors.
    ProductBound {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Verify a certificate file written by `aw --cert`.
    VerifyCert {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Dump the k-AP table of a graph.
    Aps {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    CheckFailed,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => EXIT_OK,
            Status::CheckFailed => EXIT_CHECK_FAILED,
        }
    }
}

/// Maps an error to an exit code: budget exhaustion is distinguished from
/// every other failure.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        let budget = matches!(
            cause.downcast_ref::<SearchError>(),
            Some(SearchError::BudgetExceeded { .. } | SearchError::TooManySolutions { .. })
        ) || matches!(
            cause.downcast_ref::<ConstructionError>(),
            Some(ConstructionError::Search(
                SearchError::BudgetExceeded { .. } | SearchError::TooManySolutions { .. }
            ))
        );
        if budget {
            return EXIT_BUDGET;
        }
    }
    EXIT_USAGE
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I, out: &mut dyn Write) -> Result<Status>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    run(&cli, out)
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status> {
    let config = SearchConfig::default()
        .with_budget(cli.budget)
        .with_threads(cli.threads);
    match &cli.command {
        Command::Aw { graph, k, cert } => cmd_aw(graph, *k, cert.as_ref(), &config, out),
        Command::Verify { graph, coloring, k } => cmd_verify(graph, coloring, *k, out),
        Command::Extremal { graph, r, k } => cmd_extremal(graph, *r, *k, &config, out),
        Command::Table { max_cells } => cmd_table(*max_cells, &config, out),
        Command::Construct {
            name,
            m,
            n,
            out: path,
        } => cmd_construct(*name, *m, *n, path.as_ref(), out),
        Command::ProductBound { left, right } => cmd_product_bound(left, right, &config, out),
        Command::VerifyCert { cert } => cmd_verify_cert(cert, out),
        Command::Aps { graph, k } => cmd_aps(graph, *k, out),
    }
}

fn header(g: &ResolvedGraph, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "graph = {}", g.spec)?;
    writeln!(out, "vertices = {}", g.graph.vertex_count())?;
    writeln!(out, "edges = {}", g.graph.edge_count())?;
    Ok(())
}

pub fn cmd_aw(
    graph: &str,
    k: usize,
    cert: Option<&PathBuf>,
    config: &SearchConfig,
    out: &mut dyn Write,
) -> Result<Status> {
    let g = resolve(graph)?;
    let result = compute_aw(&g.graph, k, config)?;
    header(&g, out)?;
    writeln!(out, "k = {k}")?;
    for rec in &result.per_r {
        let word = if rec.exists { "exists" } else { "none" };
        writeln!(out, "r = {} rainbow-free {word}", rec.r)?;
    }
    writeln!(out, "aw = {}", result.aw)?;
    match &result.witness {
        Some(w) => writeln!(out, "witness = {w}")?,
        None => writeln!(out, "witness = none")?,
    }
    if let Some(path) = cert {
        fs::write(path, emit_certificate(&result, &g.graph))
            .with_context(|| format!("writing certificate {}", path.display()))?;
        writeln!(out, "certificate = {}", path.display())?;
    }
    Ok(Status::Ok)
}

pub fn cmd_verify(
    graph: &str,
    coloring: &PathBuf,
    k: usize,
    out: &mut dyn Write,
) -> Result<Status> {
    let g = resolve(graph)?;
    let text = fs::read_to_string(coloring)
        .with_context(|| format!("reading coloring {}", coloring.display()))?;
    let c = parse_coloring(&text)
        .with_context(|| format!("parsing coloring {}", coloring.display()))?;
    let n = g.graph.vertex_count();
    if c.len() != n {
        bail!(
            "coloring has {} entries but the graph has {n} vertices",
            c.len()
        );
    }
    let table = enumerate_k_aps(&all_pairs_distances(&g.graph), k)?;
    match find_rainbow_ap(&table, &c) {
        None => {
            writeln!(out, "rainbow-free")?;
            Ok(Status::Ok)
        }
        Some(ap) => {
            let labels: Vec<String> = ap.witness().iter().map(|&v| g.vertex_label(v)).collect();
            writeln!(out, "rainbow = {}", labels.join(" "))?;
            let colors: Vec<String> = ap
                .witness()
                .iter()
                .map(|&v| c.color(v).to_string())
                .collect();
            writeln!(out, "colors = {}", colors.join(" "))?;
            writeln!(out, "d = {}", ap.difference())?;
            Ok(Status::CheckFailed)
        }
    }
}

/// Automorphism groups larger than this are not enumerated by `extremal`.
pub const AUTOMORPHISM_LIMIT: usize = 100_000;

fn factorial(r: usize) -> Option<u128> {
    (1..=r as u128).try_fold(1u128, |acc, x| acc.checked_mul(x))
}

pub fn cmd_extremal(
    graph: &str,
    r: usize,
    k: usize,
    config: &SearchConfig,
    out: &mut dyn Write,
) -> Result<Status> {
    let g = resolve(graph)?;
    let n = g.graph.vertex_count();
    let table = enumerate_k_aps(&all_pairs_distances(&g.graph), k)?;
    let all = enumerate_rainbow_free_colorings(&table, n, r, config)?;
    header(&g, out)?;
    writeln!(out, "k = {k}")?;
    writeln!(out, "r = {r}")?;
    for c in &all {
        writeln!(out, "coloring = {c}")?;
    }
    writeln!(out, "count = {}", all.len())?;
    match factorial(r).and_then(|f| f.checked_mul(all.len() as u128)) {
        Some(labeled) => writeln!(out, "labeled = {labeled} (count x {r}!)")?,
        None => writeln!(out, "labeled = count x {r}!")?,
    }
    match automorphisms(&g.graph, AUTOMORPHISM_LIMIT) {
        Some(autos) => writeln!(
            out,
            "orbits = {} ({} automorphisms)",
            automorphism_orbit_count(&all, &autos),
            autos.len()
        )?,
        None => writeln!(
            out,
            "orbits = skipped (over {AUTOMORPHISM_LIMIT} automorphisms)"
        )?,
    }
    Ok(Status::Ok)
}

/// One row of the grid table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRow {
    pub m: usize,
    pub n: usize,
    pub formula: usize,
    pub search: usize,
}

/// Closed form and search for every `2 <= m <= n` with `m * n <= max_cells`.
pub fn grid_table(max_cells: usize, config: &SearchConfig) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for m in 2.. {
        if m * m > max_cells {
            break;
        }
        for n in m..=max_cells / m {
            let (g, _) = build_grid(m, n)?;
            let search = compute_aw(&g, 3, config)?.aw;
            rows.push(TableRow {
                m,
                n,
                formula: closed_form_aw_grid(m, n)?,
                search,
            });
        }
    }
    Ok(rows)
}

pub fn cmd_table(max_cells: usize, config: &SearchConfig, out: &mut dyn Write) -> Result<Status> {
    let rows = grid_table(max_cells, config)?;
    writeln!(out, "m n formula search match")?;
    let mut mismatches = 0;
    for row in &rows {
        let ok = row.formula == row.search;
        mismatches += usize::from(!ok);
        let flag = if ok { "yes" } else { "no" };
        writeln!(
            out,
            "{} {} {} {} {flag}",
            row.m, row.n, row.formula, row.search
        )?;
    }
    writeln!(out, "rows = {}", rows.len())?;
    writeln!(out, "mismatches = {mismatches}")?;
    Ok(if mismatches == 0 {
        Status::Ok
    } else {
        Status::CheckFailed
    })
}

pub fn cmd_construct(
    name: GridColoringName,
    m: usize,
    n: usize,
    path: Option<&PathBuf>,
    out: &mut dyn Write,
) -> Result<Status> {
    let coloring = GridColoringSpec::new(name, m, n).build()?;
    let (g, _) = build_grid(m, n)?;
    let table = enumerate_k_aps(&all_pairs_distances(&g), 3)?;
    if let Some(ap) = find_rainbow_ap(&table, &coloring) {
        bail!(
            "{name} coloring of the {m}x{n} grid has rainbow progression {:?}",
            ap.witness()
        );
    }
    match path {
        Some(p) => {
            fs::write(p, coloring.to_text()).with_context(|| format!("writing {}", p.display()))?;
            writeln!(out, "construction = {name} {m}x{n}")?;
            writeln!(out, "rainbow-free")?;
            writeln!(out, "written = {}", p.display())?;
        }
        None => write!(out, "{}", coloring.to_text())?,
    }
    Ok(Status::Ok)
}

pub fn cmd_product_bound(
    left: &str,
    right: &str,
    config: &SearchConfig,
    out: &mut dyn Write,
) -> Result<Status> {
    let g = resolve(left)?;
    let h = resolve(right)?;
    let report = verify_product_bound(&g.graph, &h.graph, config)?;
    writeln!(out, "left = {} ({} vertices)", g.spec, report.left_order)?;
    writeln!(out, "right = {} ({} vertices)", h.spec, report.right_order)?;
    writeln!(out, "aw = {}", report.aw)?;
    if let Some(w) = &report.witness {
        writeln!(out, "witness = {w}")?;
    }
    writeln!(out, "bound = {}", if report.pass { "pass" } else { "fail" })?;
    Ok(if report.pass {
        Status::Ok
    } else {
        Status::CheckFailed
    })
}

pub fn cmd_verify_cert(path: &PathBuf, out: &mut dyn Write) -> Result<Status> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let report = verify_certificate(&text);
    writeln!(out, "verdict = {}", report.verdict)?;
    writeln!(out, "detail = {}", report.detail)?;
    writeln!(out, "witness-checked = {}", report.witness_checked)?;
    writeln!(
        out,
        "nonexistence-checked = {}",
        report.nonexistence_checked
    )?;
    Ok(if report.verdict == Verdict::WitnessValid {
        Status::Ok
    } else {
        Status::CheckFailed
    })
}

pub fn cmd_aps(graph: &str, k: usize, out: &mut dyn Write) -> Result<Status> {
    let g = resolve(graph)?;
    let table = enumerate_k_aps(&all_pairs_distances(&g.graph), k)?;
    header(&g, out)?;
    writeln!(out, "k = {k}")?;
    for ap in table.aps() {
        let labels: Vec<String> = ap.witness().iter().map(|&v| g.vertex_label(v)).collect();
        writeln!(out, "ap = {} d={}", labels.join(" "), ap.difference())?;
    }
    writeln!(out, "count = {}", table.len())?;
    Ok(Status::Ok)
}

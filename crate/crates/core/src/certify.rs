// SPDX-License-Identifier: Apache-2.0

//! Plain-text certificates for computed `aw` values.
//!
//! A certificate embeds the graph, `k`, the claimed value, an extremal
//! witness coloring and the per-`r` existence flags. Verification rebuilds
//! distances and progressions from the embedded graph and checks the witness
//! and the arithmetic of the flags. Non-existence flags are attested by the
//! producer and are not re-derived here.
//!
//! ```text
//! GRAPH
//! 4 4
//! 0 1
//! ...
//!
//! K
//! 3
//!
//! CLAIMED_AW
//! 3
//!
//! WITNESS
//! 4 2
//! 1 1 1 2
//!
//! PER_R
//! 3 false
//! ```

use std::fmt;

use thiserror::Error;

use crate::ap::{enumerate_k_aps, find_rainbow_ap};
use crate::coloring::{parse_coloring, Coloring};
use crate::graph::{all_pairs_distances, parse_graph, Graph};
use crate::search::AwResult;

const SECTIONS: [&str; 5] = ["GRAPH", "K", "CLAIMED_AW", "WITNESS", "PER_R"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed certificate: {0}")]
pub struct CertificateError(pub String);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub graph: Graph,
    pub k: usize,
    pub claimed_aw: usize,
    pub witness: Option<Coloring>,
    /// `(r, exists)` for each color count searched, ascending.
    pub per_r: Vec<(usize, bool)>,
}

impl Certificate {
    pub fn from_result(result: &AwResult, graph: &Graph) -> Self {
        Certificate {
            graph: graph.clone(),
            k: result.k,
            claimed_aw: result.aw,
            witness: result.witness.clone(),
            per_r: result.per_r.iter().map(|rec| (rec.r, rec.exists)).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("GRAPH\n");
        out.push_str(&self.graph.to_text());
        out.push_str(&format!("\nK\n{}\n", self.k));
        out.push_str(&format!("\nCLAIMED_AW\n{}\n", self.claimed_aw));
        out.push_str("\nWITNESS\n");
        match &self.witness {
            Some(c) => out.push_str(&c.to_text()),
            None => out.push_str("none\n"),
        }
        out.push_str("\nPER_R\n");
        for (r, exists) in &self.per_r {
            out.push_str(&format!("{r} {exists}\n"));
        }
        out
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Serializes the result of `compute_aw` on `graph`.
pub fn emit_certificate(result: &AwResult, graph: &Graph) -> String {
    Certificate::from_result(result, graph).to_text()
}

fn bad(msg: impl Into<String>) -> CertificateError {
    CertificateError(msg.into())
}

fn single_number(body: &[&str], section: &str) -> Result<usize, CertificateError> {
    match body {
        [line] => line
            .trim()
            .parse()
            .map_err(|_| bad(format!("{section}: {line:?} is not a number"))),
        _ => Err(bad(format!("{section}: expected exactly one line"))),
    }
}

pub fn parse_certificate(text: &str) -> Result<Certificate, CertificateError> {
    let mut bodies: Vec<Vec<&str>> = Vec::new();
    for line in text.lines() {
        let trimmed = line.trim();
        let expected = SECTIONS.get(bodies.len());
        if Some(&trimmed) == expected {
            bodies.push(Vec::new());
        } else if SECTIONS.contains(&trimmed) {
            return Err(bad(format!("section {trimmed} out of order")));
        } else if trimmed.is_empty() {
            continue;
        } else if let Some(body) = bodies.last_mut() {
            body.push(trimmed);
        } else {
            return Err(bad(format!("content before GRAPH header: {trimmed:?}")));
        }
    }
    if bodies.len() != SECTIONS.len() {
        return Err(bad(format!("missing section {}", SECTIONS[bodies.len()])));
    }

    let graph = parse_graph(&bodies[0].join("\n")).map_err(|e| bad(format!("GRAPH: {e}")))?;
    let k = single_number(&bodies[1], "K")?;
    let claimed_aw = single_number(&bodies[2], "CLAIMED_AW")?;
    let witness = match bodies[3].as_slice() {
        ["none"] => None,
        lines => Some(parse_coloring(&lines.join("\n")).map_err(|e| bad(format!("WITNESS: {e}")))?),
    };
    let per_r = bodies[4]
        .iter()
        .map(|line| {
            let mut it = line.split_whitespace();
            let r = it.next().and_then(|t| t.parse().ok());
            let exists = it.next().and_then(|t| t.parse().ok());
            match (r, exists, it.next()) {
                (Some(r), Some(e), None) => Ok((r, e)),
                _ => Err(bad(format!("PER_R: bad record {line:?}"))),
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(Certificate {
        graph,
        k,
        claimed_aw,
        witness,
        per_r,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Arithmetic is consistent and the witness is an exact, rainbow-free
    /// coloring with `claimed_aw - 1` colors.
    WitnessValid,
    WitnessInvalid,
    /// `claimed_aw` disagrees with the per-`r` flags.
    Inconsistent,
    Malformed,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::WitnessValid => "witness-valid",
            Verdict::WitnessInvalid => "witness-invalid",
            Verdict::Inconsistent => "inconsistent",
            Verdict::Malformed => "malformed",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What verification established, and what it did not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub verdict: Verdict,
    pub detail: String,
    /// The witness was rebuilt against a fresh progression table.
    pub witness_checked: bool,
    /// Always false: `exists = false` flags are taken on trust.
    pub nonexistence_checked: bool,
}

impl VerificationReport {
    fn new(verdict: Verdict, detail: impl Into<String>, witness_checked: bool) -> Self {
        VerificationReport {
            verdict,
            detail: detail.into(),
            witness_checked,
            nonexistence_checked: false,
        }
    }
}

fn check_arithmetic(cert: &Certificate) -> Result<(), String> {
    let n = cert.graph.vertex_count();
    let k = cert.k;
    if k < 2 {
        return Err(format!("k = {k} is below 2"));
    }
    if cert.claimed_aw < k.min(n + 1) || cert.claimed_aw > n + 1 {
        return Err(format!(
            "claimed aw {} outside {}..={}",
            cert.claimed_aw,
            k.min(n + 1),
            n + 1
        ));
    }
    for (i, &(r, _)) in cert.per_r.iter().enumerate() {
        if r != k + i || r > n {
            return Err(format!(
                "per-r records must run over {k}..={n} in order; found r = {r}"
            ));
        }
    }
    let implied = match cert.per_r.iter().find(|(_, exists)| !exists) {
        Some(&(r, _)) => r,
        None if k + cert.per_r.len() > n => n + 1,
        None => {
            return Err(format!(
                "per-r records stop at r = {} without a negative entry",
                k + cert.per_r.len() - 1
            ))
        }
    };
    if implied != cert.claimed_aw {
        return Err(format!(
            "per-r records imply aw = {implied}, certificate claims {}",
            cert.claimed_aw
        ));
    }
    Ok(())
}

/// Checks a certificate using only distance and progression primitives.
pub fn verify_certificate(text: &str) -> VerificationReport {
    let cert = match parse_certificate(text) {
        Ok(c) => c,
        Err(e) => return VerificationReport::new(Verdict::Malformed, e.0, false),
    };
    if let Err(why) = check_arithmetic(&cert) {
        return VerificationReport::new(Verdict::Inconsistent, why, false);
    }
    let n = cert.graph.vertex_count();
    let Some(witness) = &cert.witness else {
        return VerificationReport::new(Verdict::WitnessInvalid, "no witness coloring", false);
    };
    let want = cert.claimed_aw - 1;
    if witness.len() != n {
        return VerificationReport::new(
            Verdict::WitnessInvalid,
            format!("witness colors {} vertices, graph has {n}", witness.len()),
            true,
        );
    }
    if witness.num_colors() as usize != want {
        return VerificationReport::new(
            Verdict::WitnessInvalid,
            format!(
                "witness uses {} colors, expected {want}",
                witness.num_colors()
            ),
            true,
        );
    }
    let table = match enumerate_k_aps(&all_pairs_distances(&cert.graph), cert.k) {
        Ok(t) => t,
        Err(e) => return VerificationReport::new(Verdict::Malformed, e.to_string(), false),
    };
    if let Some(ap) = find_rainbow_ap(&table, witness) {
        return VerificationReport::new(
            Verdict::WitnessInvalid,
            format!(
                "rainbow progression {:?} with difference {}",
                ap.witness(),
                ap.difference()
            ),
            true,
        );
    }
    VerificationReport::new(
        Verdict::WitnessValid,
        format!(
            "witness is an exact rainbow-free {want}-coloring; {} non-existence flag(s) attested, not re-checked",
            cert.per_r.iter().filter(|(_, e)| !e).count()
        ),
        true,
    )
}

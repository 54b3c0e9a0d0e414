// SPDX-License-Identifier: Apache-2.0

//! Exact colorings and the coloring file format.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring must cover at least one vertex")]
    Empty,
    #[error("color {color} at vertex {vertex} is outside 1..={r}")]
    ColorOutOfRange { vertex: usize, color: u32, r: u32 },
    #[error("coloring is not exact: color {missing} of 1..={r} is unused")]
    NotSurjective { missing: u32, r: u32 },
    #[error("malformed coloring file: {0}")]
    Malformed(String),
    #[error("coloring has {got} entries but the graph has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },
}

/// An exact coloring `V -> {1..r}`: every color in `1..=r` is used.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    colors: Vec<u32>,
    r: u32,
}

impl Coloring {
    /// Wraps `colors`, taking `r` to be the largest entry.
    pub fn new(colors: Vec<u32>) -> Result<Self, ColoringError> {
        let r = colors.iter().copied().max().ok_or(ColoringError::Empty)?;
        Self::with_colors(colors, r)
    }

    /// Wraps `colors` as an exact `r`-coloring.
    pub fn with_colors(colors: Vec<u32>, r: u32) -> Result<Self, ColoringError> {
        if colors.is_empty() {
            return Err(ColoringError::Empty);
        }
        let mut used = vec![false; r as usize + 1];
        for (vertex, &color) in colors.iter().enumerate() {
            if color == 0 || color > r {
                return Err(ColoringError::ColorOutOfRange { vertex, color, r });
            }
            used[color as usize] = true;
        }
        if let Some(missing) = (1..=r).find(|&c| !used[c as usize]) {
            return Err(ColoringError::NotSurjective { missing, r });
        }
        Ok(Coloring { colors, r })
    }

    /// Relabels arbitrary labels to the restricted-growth representative of
    /// their relabeling class (first appearance order).
    pub fn canonical_from_labels<T: PartialEq + Copy>(labels: &[T]) -> Result<Self, ColoringError> {
        let mut seen: Vec<T> = Vec::new();
        let colors = labels
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(p) => p as u32 + 1,
                None => {
                    seen.push(*l);
                    seen.len() as u32
                }
            })
            .collect();
        Self::new(colors)
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of colors `r`.
    pub fn num_colors(&self) -> u32 {
        self.r
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    #[inline]
    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    /// Restricted growth: `colors[0] = 1` and every entry exceeds the running
    /// maximum by at most one.
    pub fn is_canonical(&self) -> bool {
        let mut max = 0;
        for &c in &self.colors {
            if c > max + 1 {
                return false;
            }
            max = max.max(c);
        }
        true
    }

    pub fn canonical(&self) -> Coloring {
        Self::canonical_from_labels(&self.colors).expect("non-empty")
    }

    /// The coloring restricted to `vertices`, relabeled canonically.
    pub fn restrict(&self, vertices: &[usize]) -> Result<Coloring, ColoringError> {
        let labels: Vec<u32> = vertices.iter().map(|&v| self.colors[v]).collect();
        Self::canonical_from_labels(&labels)
    }

    /// Renders the coloring file format: `"<n> <r>"` then the colors.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self.colors.iter().map(u32::to_string).collect();
        format!("{} {}\n{}\n", self.colors.len(), self.r, body.join(" "))
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.colors.iter().map(u32::to_string).collect();
        f.write_str(&body.join(" "))
    }
}

/// `c(S)`: the set of colors appearing on `vertices`.
pub fn colors_used(c: &Coloring, vertices: &[usize]) -> BTreeSet<u32> {
    vertices.iter().map(|&v| c.color(v)).collect()
}

/// Number of classes among `colorings` when both colors and vertices may be
/// permuted, the latter by the given automorphisms. Each input is taken up to
/// relabeling; inputs whose images leave the list are still counted.
pub fn automorphism_orbit_count(colorings: &[Coloring], automorphisms: &[Vec<usize>]) -> usize {
    let mut seen: BTreeSet<Coloring> = BTreeSet::new();
    let mut orbits = 0;
    for c in colorings {
        if seen.contains(&c.canonical()) {
            continue;
        }
        orbits += 1;
        for p in automorphisms {
            let moved: Vec<u32> = (0..c.len()).map(|v| c.color(p[v])).collect();
            seen.insert(Coloring::canonical_from_labels(&moved).expect("non-empty"));
        }
        seen.insert(c.canonical());
    }
    orbits
}

/// Parses the coloring file format, validating range and surjectivity.
/// Lines starting with `#` are ignored.
pub fn parse_coloring(text: &str) -> Result<Coloring, ColoringError> {
    let mut tokens = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.starts_with('#'))
        .flat_map(str::split_whitespace);
    let mut next_number = |what: &str| -> Result<u64, ColoringError> {
        let tok = tokens
            .next()
            .ok_or_else(|| ColoringError::Malformed(format!("missing {what}")))?;
        tok.parse().map_err(|_| {
            ColoringError::Malformed(format!("{what} {tok:?} is not a non-negative integer"))
        })
    };
    let n = next_number("vertex count")? as usize;
    let r = next_number("color count")?;
    if n == 0 {
        return Err(ColoringError::Empty);
    }
    let r = u32::try_from(r)
        .map_err(|_| ColoringError::Malformed(format!("color count {r} too large")))?;
    let mut colors = Vec::with_capacity(n);
    for v in 0..n {
        let c = next_number(&format!("color of vertex {v}"))?;
        let color = u32::try_from(c).unwrap_or(u32::MAX);
        colors.push(color);
    }
    if tokens.next().is_some() {
        return Err(ColoringError::Malformed(format!(
            "more than {n} colors given"
        )));
    }
    Coloring::with_colors(colors, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exactness_is_enforced() {
        assert!(Coloring::with_colors(vec![1, 2, 3], 3).is_ok());
        assert_eq!(
            Coloring::with_colors(vec![1, 3, 3], 3),
            Err(ColoringError::NotSurjective { missing: 2, r: 3 })
        );
        assert!(matches!(
            Coloring::with_colors(vec![0, 1], 1),
            Err(ColoringError::ColorOutOfRange { vertex: 0, .. })
        ));
        assert_eq!(Coloring::new(vec![]), Err(ColoringError::Empty));
    }

    #[test]
    fn restricted_growth() {
        assert!(Coloring::new(vec![1, 1, 2, 1, 3]).unwrap().is_canonical());
        assert!(!Coloring::new(vec![1, 3, 2]).unwrap().is_canonical());
        assert!(!Coloring::new(vec![2, 1]).unwrap().is_canonical());
        let c = Coloring::new(vec![3, 1, 3, 2]).unwrap().canonical();
        assert_eq!(c.colors(), &[1, 2, 1, 3]);
    }

    #[test]
    fn colors_used_examples() {
        let c = Coloring::new(vec![1, 3, 3, 3, 3, 2]).unwrap();
        assert_eq!(
            colors_used(&c, &[0, 1, 2, 3, 4, 5]),
            BTreeSet::from([1, 2, 3])
        );
        assert!(colors_used(&c, &[]).is_empty());
        // bottom row of the 2x3 corner coloring: green, green, blue
        assert_eq!(colors_used(&c, &[3, 4, 5]), BTreeSet::from([2, 3]));
    }

    #[test]
    fn file_format() {
        let c = parse_coloring("6 3\n1 3 3 3 3 2\n").unwrap();
        assert_eq!(c.colors(), &[1, 3, 3, 3, 3, 2]);
        assert_eq!(parse_coloring(&c.to_text()).unwrap(), c);

        assert!(matches!(
            parse_coloring("2 2\n0 1\n"),
            Err(ColoringError::ColorOutOfRange { color: 0, .. })
        ));
        assert!(matches!(
            parse_coloring("3 3\n1 1 2\n"),
            Err(ColoringError::NotSurjective { missing: 3, .. })
        ));
        assert!(matches!(
            parse_coloring("3 2\n1 2"),
            Err(ColoringError::Malformed(_))
        ));
        assert!(matches!(
            parse_coloring("2 2\n1 2 1"),
            Err(ColoringError::Malformed(_))
        ));
        assert!(matches!(
            parse_coloring("2 2\n1 -2"),
            Err(ColoringError::Malformed(_))
        ));
    }
}

//! Wiring diagrams: simple pseudoline arrangements encoded as a sequence of
//! adjacent wire swaps.
//!
//! Wires carry 0-based labels internally. Swap positions are 1-based with
//! level 1 at the bottom: position `p` exchanges the wires at levels `p` and
//! `p + 1`. Labels are printed 1-based in human-facing messages.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::End;
use crate::graph::ArrangementGraph;

/// Largest wire count the enumerator accepts without an explicit opt-in.
pub const DEFAULT_MAX_ENUMERATION_N: usize = 5;
/// Hard cap on enumeration.
pub const MAX_ENUMERATION_N: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WiringError {
    #[error("wire count {n} outside the supported range {min}..={max}")]
    OutOfRange { n: usize, min: usize, max: usize },
    #[error("invalid wiring diagram: {0}")]
    Invalid(ValidationReport),
    #[error("cannot parse wiring diagram: {0}")]
    Parse(String),
    #[error("topological sweep is stuck after {step} crossings")]
    SweepStuck { step: usize },
    #[error("arrangement has no unbounded cell bounded by exactly two lines")]
    NoTwoBoundedCell,
    #[error("cell index {cell} out of range for {ends} line ends")]
    BadCell { cell: usize, ends: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WiringDiagram {
    pub n: usize,
    pub swaps: Vec<usize>,
}

/// Snapshot of the sweep between two columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepState {
    pub step: usize,
    /// `levels[k]` is the wire at level `k + 1`.
    pub levels: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TooFewWires { n: usize },
    WrongLength { expected: usize, actual: usize },
    /// `step` is 1-based.
    PositionOutOfRange { step: usize, position: usize },
    PairSwappedTwice { step: usize, pair: (usize, usize) },
    PairNeverSwapped { pair: (usize, usize) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewWires { n } => write!(f, "{n} wires, need at least 3"),
            Violation::WrongLength { expected, actual } => {
                write!(f, "expected {expected} swaps, found {actual}")
            }
            Violation::PositionOutOfRange { step, position } => {
                write!(f, "swap position {position} out of range at step {step}")
            }
            Violation::PairSwappedTwice { step, pair } => write!(
                f,
                "pair ({},{}) swapped twice at step {step}",
                pair.0 + 1,
                pair.1 + 1
            ),
            Violation::PairNeverSwapped { pair } => {
                write!(f, "pair ({},{}) never swapped", pair.0 + 1, pair.1 + 1)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl WiringDiagram {
    /// Builds and validates a diagram.
    pub fn new(n: usize, swaps: Vec<usize>) -> Result<Self, WiringError> {
        let d = WiringDiagram { n, swaps };
        let report = d.validate();
        if report.is_ok() {
            Ok(d)
        } else {
            Err(WiringError::Invalid(report))
        }
    }

    pub fn new_unchecked(n: usize, swaps: Vec<usize>) -> Self {
        WiringDiagram { n, swaps }
    }

    pub fn crossing_count(n: usize) -> usize {
        n * n.saturating_sub(1) / 2
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.n;
        let mut violations = Vec::new();
        if n < 3 {
            violations.push(Violation::TooFewWires { n });
            return ValidationReport { violations };
        }
        let expected = Self::crossing_count(n);
        if self.swaps.len() != expected {
            violations.push(Violation::WrongLength {
                expected,
                actual: self.swaps.len(),
            });
        }
        let mut levels: Vec<usize> = (0..n).collect();
        let mut crossed = vec![false; n * n];
        for (idx, &p) in self.swaps.iter().enumerate() {
            let step = idx + 1;
            if p == 0 || p >= n {
                violations.push(Violation::PositionOutOfRange { step, position: p });
                continue;
            }
            let (a, b) = (levels[p - 1], levels[p]);
            let pair = (a.min(b), a.max(b));
            if crossed[pair.0 * n + pair.1] {
                violations.push(Violation::PairSwappedTwice { step, pair });
            }
            crossed[pair.0 * n + pair.1] = true;
            levels.swap(p - 1, p);
        }
        for i in 0..n {
            for j in i + 1..n {
                if !crossed[i * n + j] {
                    violations.push(Violation::PairNeverSwapped { pair: (i, j) });
                }
            }
        }
        ValidationReport { violations }
    }

    /// Sweep states for steps `0..=swaps.len()`; step 0 is the identity.
    /// Assumes swap positions are in range.
    pub fn states(&self) -> Vec<SweepState> {
        let mut levels: Vec<usize> = (0..self.n).collect();
        let mut out = Vec::with_capacity(self.swaps.len() + 1);
        out.push(SweepState {
            step: 0,
            levels: levels.clone(),
        });
        for (idx, &p) in self.swaps.iter().enumerate() {
            levels.swap(p - 1, p);
            out.push(SweepState {
                step: idx + 1,
                levels: levels.clone(),
            });
        }
        out
    }

    /// The wire pair crossing at each step, as `(lower, upper)` before the swap.
    pub fn crossings(&self) -> Vec<(usize, usize)> {
        let mut levels: Vec<usize> = (0..self.n).collect();
        self.swaps
            .iter()
            .map(|&p| {
                let pair = (levels[p - 1], levels[p]);
                levels.swap(p - 1, p);
                pair
            })
            .collect()
    }

    /// `n: s1 s2 ... s_m`
    pub fn to_text(&self) -> String {
        let swaps: Vec<String> = self.swaps.iter().map(|s| s.to_string()).collect();
        format!("{}: {}", self.n, swaps.join(" "))
    }
}

impl FromStr for WiringDiagram {
    type Err = WiringError;

    /// Accepts the JSON object form or the `n: s1 s2 ...` line form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        let d = if trimmed.starts_with('{') {
            serde_json::from_str::<WiringDiagram>(trimmed)
                .map_err(|e| WiringError::Parse(e.to_string()))?
        } else {
            let (head, tail) = trimmed
                .split_once(':')
                .ok_or_else(|| WiringError::Parse("expected `n: s1 s2 ...`".into()))?;
            let n = head
                .trim()
                .parse::<usize>()
                .map_err(|e| WiringError::Parse(format!("wire count: {e}")))?;
            let swaps = tail
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .enumerate()
                .map(|(i, t)| {
                    t.parse::<usize>()
                        .map_err(|e| WiringError::Parse(format!("swap {}: {e}", i + 1)))
                })
                .collect::<Result<Vec<_>, _>>()?;
            WiringDiagram { n, swaps }
        };
        let report = d.validate();
        if report.is_ok() {
            Ok(d)
        } else {
            Err(WiringError::Invalid(report))
        }
    }
}

/// Enumerates every simple wiring diagram on `n` wires (every reduced word
/// of the reversal permutation) in lexicographic order of the swap list.
/// `n = 6` additionally requires `allow_large`.
pub fn enumerate_all(n: usize, allow_large: bool) -> Result<Enumeration, WiringError> {
    let max = if allow_large {
        MAX_ENUMERATION_N
    } else {
        DEFAULT_MAX_ENUMERATION_N
    };
    if !(3..=max).contains(&n) {
        return Err(WiringError::OutOfRange { n, min: 3, max });
    }
    let target = WiringDiagram::crossing_count(n);
    Ok(Enumeration {
        n,
        target,
        levels: (0..n).collect(),
        swaps: Vec::with_capacity(target),
        cursor: vec![0; target + 1],
        emitted: false,
        done: false,
    })
}

/// Depth-first iterator over reduced words; see [`enumerate_all`].
#[derive(Clone, Debug)]
pub struct Enumeration {
    n: usize,
    target: usize,
    levels: Vec<usize>,
    swaps: Vec<usize>,
    /// Next 0-based position to try at each depth.
    cursor: Vec<usize>,
    emitted: bool,
    done: bool,
}

impl Iterator for Enumeration {
    type Item = WiringDiagram;

    fn next(&mut self) -> Option<WiringDiagram> {
        loop {
            if self.done {
                return None;
            }
            let depth = self.swaps.len();
            if depth == self.target && !self.emitted {
                self.emitted = true;
                return Some(WiringDiagram {
                    n: self.n,
                    swaps: self.swaps.clone(),
                });
            }
            let start = self.cursor[depth];
            let found = (start..self.n - 1).find(|&p| self.levels[p] < self.levels[p + 1]);
            match found {
                Some(p) if depth < self.target => {
                    self.cursor[depth] = p + 1;
                    self.levels.swap(p, p + 1);
                    self.swaps.push(p + 1);
                    self.cursor[depth + 1] = 0;
                    self.emitted = false;
                }
                _ => {
                    let Some(last) = self.swaps.pop() else {
                        self.done = true;
                        return None;
                    };
                    self.levels.swap(last - 1, last);
                }
            }
        }
    }
}

/// A wiring diagram together with the arrangement line carried by each wire.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweptDiagram {
    pub diagram: WiringDiagram,
    pub line_of_wire: Vec<usize>,
}

/// Topological sweep starting in the unbounded cell between `g.ends()[cell]`
/// and `g.ends()[cell + 1]` (cyclically). The initial cut crosses the lines
/// at the ends met clockwise from that cell; at each step the lowest
/// sweepable crossing is taken.
pub fn topological_sweep(g: &ArrangementGraph, cell: usize) -> Result<SweptDiagram, WiringError> {
    let n = g.line_count();
    let ends = g.ends();
    let m = ends.len();
    if cell >= m {
        return Err(WiringError::BadCell { cell, ends: m });
    }
    let mut order = Vec::with_capacity(n);
    let mut sequences: Vec<Vec<usize>> = vec![Vec::new(); n];
    for k in 0..n {
        let e = ends[(cell + m - k) % m];
        order.push(e.line);
        let mut seq: Vec<usize> = g
            .line_order(e.line)
            .iter()
            .map(|&v| g.other_line(v, e.line))
            .collect();
        if e.end == End::Finish {
            seq.reverse();
        }
        sequences[e.line] = seq;
    }
    let line_of_wire = order.clone();
    let mut ptr = vec![0usize; n];
    let total = WiringDiagram::crossing_count(n);
    let mut swaps = Vec::with_capacity(total);
    for step in 0..total {
        let ready = (0..n - 1).find(|&p| {
            let (a, b) = (order[p], order[p + 1]);
            sequences[a].get(ptr[a]) == Some(&b) && sequences[b].get(ptr[b]) == Some(&a)
        });
        let Some(p) = ready else {
            return Err(WiringError::SweepStuck { step });
        };
        let (a, b) = (order[p], order[p + 1]);
        ptr[a] += 1;
        ptr[b] += 1;
        order.swap(p, p + 1);
        swaps.push(p + 1);
    }
    let diagram = WiringDiagram::new_unchecked(n, swaps);
    debug_assert!(diagram.validate().is_ok());
    Ok(SweptDiagram {
        diagram,
        line_of_wire,
    })
}

/// Unbounded cells bounded by exactly two lines, as `(cell index, line pair)`.
pub fn two_bounded_cells(g: &ArrangementGraph) -> Vec<(usize, (usize, usize))> {
    let ends = g.ends();
    let m = ends.len();
    (0..m)
        .filter_map(|j| {
            let (e1, e2) = (ends[j], ends[(j + 1) % m]);
            let v1 = g.extreme_vertex(e1.line, e1.end);
            let v2 = g.extreme_vertex(e2.line, e2.end);
            (v1 == v2).then(|| (j, g.vertex_lines(v1)))
        })
        .collect()
}

/// A wiring diagram of the same arrangement with exactly one crossing
/// between the bottom two levels: the sweep starts in an unbounded cell
/// bounded by two lines (smallest line pair first), and those two lines
/// become wires 1 and 2.
pub fn restricted_sweep(g: &ArrangementGraph) -> Result<SweptDiagram, WiringError> {
    let (cell, _) = two_bounded_cells(g)
        .into_iter()
        .min_by_key(|&(j, pair)| (pair, j))
        .ok_or(WiringError::NoTwoBoundedCell)?;
    topological_sweep(g, cell)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Filters every sequence in `[1, n−1]^{n(n−1)/2}` through `validate`.
    fn naive_count(n: usize) -> usize {
        let len = WiringDiagram::crossing_count(n);
        let base = n - 1;
        let total = base.pow(len as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let swaps: Vec<usize> = (0..len)
                    .map(|_| {
                        let s = c % base + 1;
                        c /= base;
                        s
                    })
                    .collect();
                WiringDiagram::new_unchecked(n, swaps).validate().is_ok()
            })
            .count()
    }

    #[test]
    fn validate_examples() {
        assert!(WiringDiagram::new_unchecked(3, vec![1, 2, 1]).validate().is_ok());
        let bad = WiringDiagram::new_unchecked(3, vec![1, 1, 2]).validate();
        assert_eq!(
            bad.first(),
            Some(&Violation::PairSwappedTwice { step: 2, pair: (0, 1) })
        );
        assert!(WiringDiagram::new_unchecked(4, vec![1, 3, 2, 1, 3, 2]).validate().is_ok());
    }

    #[test]
    fn validate_rejects_shape_errors() {
        let short = WiringDiagram::new_unchecked(3, vec![1, 2]).validate();
        assert_eq!(
            short.first(),
            Some(&Violation::WrongLength { expected: 3, actual: 2 })
        );
        let range = WiringDiagram::new_unchecked(3, vec![1, 3, 1]).validate();
        assert_eq!(
            range.first(),
            Some(&Violation::PositionOutOfRange { step: 2, position: 3 })
        );
        let tiny = WiringDiagram::new_unchecked(2, vec![1]).validate();
        assert_eq!(tiny.first(), Some(&Violation::TooFewWires { n: 2 }));
    }

    #[test]
    fn enumeration_counts() {
        let three: Vec<_> = enumerate_all(3, false).unwrap().collect();
        assert_eq!(
            three,
            vec![
                WiringDiagram::new_unchecked(3, vec![1, 2, 1]),
                WiringDiagram::new_unchecked(3, vec![2, 1, 2]),
            ]
        );
        assert_eq!(enumerate_all(4, false).unwrap().count(), 16);
        assert_eq!(enumerate_all(5, false).unwrap().count(), 768);
    }

    #[test]
    fn enumeration_matches_naive_filter() {
        assert_eq!(naive_count(3), 2);
        assert_eq!(naive_count(4), 16);
    }

    #[test]
    fn enumeration_is_lexicographic_and_valid() {
        let all: Vec<_> = enumerate_all(5, false).unwrap().collect();
        for w in all.windows(2) {
            assert!(w[0].swaps < w[1].swaps);
        }
        assert!(all.iter().all(|d| d.validate().is_ok()));
    }

    #[test]
    fn enumeration_range() {
        assert!(matches!(enumerate_all(2, false), Err(WiringError::OutOfRange { .. })));
        assert!(matches!(enumerate_all(6, false), Err(WiringError::OutOfRange { .. })));
        assert!(enumerate_all(6, true).is_ok());
        assert!(matches!(enumerate_all(7, true), Err(WiringError::OutOfRange { .. })));
    }

    #[test]
    fn states_end_reversed() {
        let d = WiringDiagram::new_unchecked(4, vec![1, 3, 2, 1, 3, 2]);
        let states = d.states();
        assert_eq!(states[0].levels, vec![0, 1, 2, 3]);
        assert_eq!(states.last().unwrap().levels, vec![3, 2, 1, 0]);
    }

    #[test]
    fn parse_forms() {
        let a: WiringDiagram = "3: 1 2 1".parse().unwrap();
        let b: WiringDiagram = r#"{"n": 3, "swaps": [1, 2, 1]}"#.parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_text(), "3: 1 2 1");
        assert!(matches!("3: 1 1 2".parse::<WiringDiagram>(), Err(WiringError::Invalid(_))));
        assert!(matches!("3 1 2 1".parse::<WiringDiagram>(), Err(WiringError::Parse(_))));
    }
}

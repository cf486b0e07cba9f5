//! Degree-sequence realization for (pseudo)line arrangement graphs.
//!
//! A sequence is realizable iff it has the form `⟨4^{d4}, 3^{d3}, 2^{d2}⟩`
//! with `d3 = 2(n − d2)`, `d4 = n(n − 5)/2 + d2`, `3 ≤ d2 ≤ n` for some
//! `n ≥ 3`, and `n` odd whenever `d2 = n`. Accepted sequences are realized
//! by a star construction, an optional pull operation and a run of line
//! operations.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    line_operation, line_operation_site, pull_operation, star_construction, GeometryError,
    LineArrangement,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeSequence(Vec<usize>);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("degree sequence is empty")]
    Empty,
    #[error("entry {index} is zero")]
    ZeroEntry { index: usize },
    #[error("sequence increases at position {index}")]
    NotNonIncreasing { index: usize },
}

impl DegreeSequence {
    /// Requires a nonempty, non-increasing list of positive integers.
    pub fn new(entries: Vec<usize>) -> Result<Self, SequenceError> {
        if entries.is_empty() {
            return Err(SequenceError::Empty);
        }
        if let Some(index) = entries.iter().position(|&d| d == 0) {
            return Err(SequenceError::ZeroEntry { index });
        }
        if let Some(index) = entries.windows(2).position(|w| w[0] < w[1]) {
            return Err(SequenceError::NotNonIncreasing { index: index + 1 });
        }
        Ok(DegreeSequence(entries))
    }

    /// Sorts `entries` into non-increasing order first.
    pub fn from_unsorted(mut entries: Vec<usize>) -> Result<Self, SequenceError> {
        entries.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence::new(entries)
    }

    /// `⟨4^{d4}, 3^{d3}, 2^{d2}⟩`
    pub fn from_counts(d2: usize, d3: usize, d4: usize) -> Self {
        let mut entries = vec![4; d4];
        entries.extend(std::iter::repeat_n(3, d3));
        entries.extend(std::iter::repeat_n(2, d2));
        DegreeSequence(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, degree: usize) -> usize {
        self.0.iter().filter(|&&d| d == degree).count()
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "⟨{}⟩", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParityBranch {
    /// Star on `d2` points, then `n − d2` line operations.
    OddD2,
    /// Star on `d2 + 1` points, one pull, then `n − d2 − 1` line operations.
    EvenD2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RealizationPlan {
    pub n: usize,
    pub d2: usize,
    pub d3: usize,
    pub d4: usize,
    pub parity_branch: ParityBranch,
    /// Number of line operations.
    pub k: usize,
}

impl RealizationPlan {
    pub fn star_size(&self) -> usize {
        match self.parity_branch {
            ParityBranch::OddD2 => self.d2,
            ParityBranch::EvenD2 => self.d2 + 1,
        }
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::from_counts(self.d2, self.d3, self.d4)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RejectionCode {
    #[serde(rename = "NOT_234_DEGREES")]
    Not234Degrees,
    CountIdentityFail,
    D2Range,
    Parity,
}

impl RejectionCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            RejectionCode::Not234Degrees => "NOT_234_DEGREES",
            RejectionCode::CountIdentityFail => "COUNT_IDENTITY_FAIL",
            RejectionCode::D2Range => "D2_RANGE",
            RejectionCode::Parity => "PARITY",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    pub code: RejectionCode,
    pub detail: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code.as_str(), self.detail)
    }
}

fn reject(code: RejectionCode, detail: String) -> Result<RealizationPlan, Rejection> {
    Err(Rejection { code, detail })
}

/// Decides realizability and derives the construction plan. `n` is forced
/// to `d2 + d3/2` by the end-vertex count `2·d2 + d3 = 2n`.
pub fn check_sequence(pi: &DegreeSequence) -> Result<RealizationPlan, Rejection> {
    if let Some(&bad) = pi.entries().iter().find(|&&d| !(2..=4).contains(&d)) {
        return reject(
            RejectionCode::Not234Degrees,
            format!("degree {bad} is not 2, 3 or 4"),
        );
    }
    let (d2, d3, d4) = (pi.count(2), pi.count(3), pi.count(4));
    if d3 % 2 != 0 {
        return reject(
            RejectionCode::CountIdentityFail,
            format!("d3 = {d3} is odd, but 2·d2 + d3 = 2n"),
        );
    }
    let n = d2 + d3 / 2;
    if n < 3 {
        return reject(
            RejectionCode::CountIdentityFail,
            format!("line count n = d2 + d3/2 = {n} is below 3"),
        );
    }
    let vertices = n * (n - 1) / 2;
    if pi.len() != vertices {
        return reject(
            RejectionCode::CountIdentityFail,
            format!("{} vertices, but {n} lines have {vertices} crossings", pi.len()),
        );
    }
    // d4 = n(n−5)/2 + d2 follows from the two identities above
    debug_assert_eq!(2 * d4 + 5 * n, n * n + 2 * d2);
    if d2 < 3 {
        return reject(
            RejectionCode::D2Range,
            format!("d2 = {d2}, need 3 <= d2 <= n = {n}"),
        );
    }
    if d2 == n && n % 2 == 0 {
        return reject(
            RejectionCode::Parity,
            format!("d2 = n = {n} but n is even"),
        );
    }
    let (parity_branch, k) = if d2 % 2 == 1 {
        (ParityBranch::OddD2, n - d2)
    } else {
        (ParityBranch::EvenD2, n - d2 - 1)
    };
    Ok(RealizationPlan {
        n,
        d2,
        d3,
        d4,
        parity_branch,
        k,
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizeError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("no 2-vertex admits a line operation")]
    NoLineOperationSite,
    #[error("construction produced degree counts {got:?}, expected {expected:?}")]
    Mismatch { got: [usize; 3], expected: [usize; 3] },
}

/// Builds a line arrangement whose graph has the plan's degree sequence.
pub fn realize(plan: &RealizationPlan) -> Result<LineArrangement, RealizeError> {
    let star = star_construction(plan.star_size())?;
    let base = match plan.parity_branch {
        ParityBranch::OddD2 => star,
        ParityBranch::EvenD2 => {
            let x = star.two_vertices()[0];
            pull_operation(&star, x)?
        }
    };
    let result = if plan.k == 0 {
        base
    } else {
        let x = base
            .two_vertices()
            .into_iter()
            .find(|&x| line_operation_site(&base, x).is_ok())
            .ok_or(RealizeError::NoLineOperationSite)?;
        line_operation(&base, x, plan.k)?
    };
    let expected = [plan.d2, plan.d3, plan.d4];
    let got = result.degree_counts();
    if got != expected {
        return Err(RealizeError::Mismatch { got, expected });
    }
    Ok(result)
}

/// Every accepted plan with `3 ≤ n ≤ n_max`, by increasing `(n, d2)`.
pub fn all_plans(n_max: usize) -> Vec<RealizationPlan> {
    let mut plans = Vec::new();
    for n in 3..=n_max {
        for d2 in 3..=n {
            let d3 = 2 * (n - d2);
            let d4 = (n * n + 2 * d2 - 5 * n) / 2;
            if let Ok(plan) = check_sequence(&DegreeSequence::from_counts(d2, d3, d4)) {
                plans.push(plan);
            }
        }
    }
    plans
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(entries: &[usize]) -> DegreeSequence {
        DegreeSequence::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn accepts_triangle() {
        let plan = check_sequence(&seq(&[2, 2, 2])).unwrap();
        assert_eq!((plan.n, plan.d2, plan.k), (3, 3, 0));
        assert_eq!(plan.parity_branch, ParityBranch::OddD2);
    }

    #[test]
    fn rejects_even_full_d2() {
        let r = check_sequence(&seq(&[4, 4, 2, 2, 2, 2])).unwrap_err();
        assert_eq!(r.code, RejectionCode::Parity);
    }

    #[test]
    fn accepts_star_five() {
        let plan = check_sequence(&DegreeSequence::from_counts(5, 0, 5)).unwrap();
        assert_eq!((plan.n, plan.d2, plan.k), (5, 5, 0));
    }

    #[test]
    fn accepts_three_two_vertices_on_five_lines() {
        let plan = check_sequence(&DegreeSequence::from_counts(3, 4, 3)).unwrap();
        assert_eq!((plan.n, plan.d2, plan.k), (5, 3, 2));
        assert_eq!(plan.parity_branch, ParityBranch::OddD2);
    }

    #[test]
    fn rejection_codes() {
        assert_eq!(check_sequence(&seq(&[5, 2, 2])).unwrap_err().code, RejectionCode::Not234Degrees);
        assert_eq!(check_sequence(&seq(&[3, 2, 2])).unwrap_err().code, RejectionCode::CountIdentityFail);
        assert_eq!(check_sequence(&seq(&[2, 2])).unwrap_err().code, RejectionCode::CountIdentityFail);
        assert_eq!(check_sequence(&seq(&[2, 2, 2, 2])).unwrap_err().code, RejectionCode::CountIdentityFail);
        // n = 4 with d2 = 2 satisfies both count identities
        assert_eq!(check_sequence(&seq(&[3, 3, 3, 3, 2, 2])).unwrap_err().code, RejectionCode::D2Range);
    }

    #[test]
    fn sequence_constructor_checks() {
        assert_eq!(DegreeSequence::new(vec![]), Err(SequenceError::Empty));
        assert_eq!(DegreeSequence::new(vec![2, 3]), Err(SequenceError::NotNonIncreasing { index: 1 }));
        assert_eq!(DegreeSequence::new(vec![2, 0]), Err(SequenceError::ZeroEntry { index: 1 }));
        assert_eq!(DegreeSequence::from_unsorted(vec![2, 4, 3]).unwrap().entries(), &[4, 3, 2]);
    }

    #[test]
    fn realize_small_plans() {
        let tri = realize(&check_sequence(&seq(&[2, 2, 2])).unwrap()).unwrap();
        assert_eq!(tri.len(), 3);
        let even = check_sequence(&DegreeSequence::from_counts(4, 2, 4)).unwrap();
        assert_eq!((even.parity_branch, even.k, even.star_size()), (ParityBranch::EvenD2, 0, 5));
        assert_eq!(realize(&even).unwrap().degree_counts(), [4, 2, 4]);
        let odd = check_sequence(&DegreeSequence::from_counts(3, 4, 3)).unwrap();
        assert_eq!(realize(&odd).unwrap().degree_counts(), [3, 4, 3]);
    }

    #[test]
    fn plan_count_up_to_nine() {
        // per n: d2 in 3..=n, minus d2 = n for even n
        let expected: usize = (3..=9usize).map(|n| n - 2 - usize::from(n % 2 == 0)).sum();
        assert_eq!(all_plans(9).len(), expected);
    }
}

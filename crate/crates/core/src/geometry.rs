//! Exact-rational line arrangements.
//!
//! Lines are stored as `a·x + b·y = c` with coprime integer coefficients, so
//! every crossing, orientation and sidedness test is exact. Besides the basic
//! predicates this module hosts the three constructions used by the realizer:
//! the star construction, the pull operation and the line operation.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use thiserror::Error;

use crate::wiring::{SweptDiagram, WiringDiagram};

/// Denominator used when snapping circle parameters to rationals.
const CIRCLE_GRID: i64 = 4096;
/// Upper bound on retries for a perturbed construction step.
const MAX_RETRIES: u32 = 48;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("lines {0} and {1} are parallel")]
    Parallel(usize, usize),
    #[error("degenerate line: a and b are both zero")]
    DegenerateLine,
    #[error("cannot build a line through two equal points")]
    CoincidentPoints,
    #[error("arrangement is not simple: {0}")]
    NotSimple(SimplicityViolation),
    #[error("star construction needs an odd number of points >= 3, got {0}")]
    BadStarSize(usize),
    #[error("pull operation needs a star on at least 5 points, got {0} lines")]
    PullTooSmall(usize),
    #[error("crossing of lines {0} and {1} is not a 2-vertex")]
    NotTwoVertex(usize, usize),
    #[error("no line crosses the segment from the pulled vertex to the center")]
    NothingToPull,
    #[error("2-vertex ({0}, {1}) has no orientation whose far span ends are 2-vertices")]
    MissingConstructionData(usize, usize),
    #[error("line {0} does not exist")]
    UnknownLine(usize),
    #[error("{operation} failed to find a valid perturbation after {attempts} attempts")]
    ConstructionFailed {
        operation: &'static str,
        attempts: u32,
    },
}

/// A point with exact rational coordinates. `BigRational` keeps itself in
/// lowest terms, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl RationalPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        RationalPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RationalPoint::new(rat(x, 1), rat(y, 1))
    }

    /// `self + (other - self) * t`
    pub fn lerp(&self, other: &RationalPoint, t: &BigRational) -> RationalPoint {
        RationalPoint::new(
            &self.x + (&other.x - &self.x) * t,
            &self.y + (&other.y - &self.y) * t,
        )
    }

    pub fn sub(&self, other: &RationalPoint) -> (BigRational, BigRational) {
        (&self.x - &other.x, &self.y - &other.y)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (ratio_to_f64(&self.x), ratio_to_f64(&self.y))
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Sign of the cross product `u × v`.
pub(crate) fn cross_sign(u: &(BigRational, BigRational), v: &(BigRational, BigRational)) -> Ordering {
    (&u.0 * &v.1 - &u.1 * &v.0).cmp(&BigRational::zero())
}

/// Total order of direction vectors by angle in `[0, 2π)`, measured
/// counterclockwise from the positive x-axis.
pub(crate) fn cmp_angle(u: &(BigRational, BigRational), v: &(BigRational, BigRational)) -> Ordering {
    fn half(w: &(BigRational, BigRational)) -> u8 {
        if w.1.is_positive() || (w.1.is_zero() && w.0.is_positive()) {
            0
        } else {
            1
        }
    }
    half(u)
        .cmp(&half(v))
        .then_with(|| cross_sign(v, u))
}

/// The line `a·x + b·y = c`, normalized so that `gcd(a, b, c) = 1` and the
/// first nonzero of `(a, b)` is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalLine {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl RationalLine {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Result<Self, GeometryError> {
        if a.is_zero() && b.is_zero() {
            return Err(GeometryError::DegenerateLine);
        }
        let g = a.gcd(&b).gcd(&c);
        let (mut a, mut b, mut c) = (a / &g, b / &g, c / &g);
        let flip = if a.is_zero() { b.is_negative() } else { a.is_negative() };
        if flip {
            a = -a;
            b = -b;
            c = -c;
        }
        Ok(RationalLine { a, b, c })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self, GeometryError> {
        RationalLine::new(a.into(), b.into(), c.into())
    }

    /// The line through two distinct rational points.
    pub fn through(p: &RationalPoint, q: &RationalPoint) -> Result<Self, GeometryError> {
        if p == q {
            return Err(GeometryError::CoincidentPoints);
        }
        let a = &q.y - &p.y;
        let b = &p.x - &q.x;
        let c = &a * &p.x + &b * &p.y;
        let scale = a.denom().lcm(b.denom()).lcm(c.denom());
        let to_int = |r: &BigRational| (r * BigRational::from_integer(scale.clone())).to_integer();
        RationalLine::new(to_int(&a), to_int(&b), to_int(&c))
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// `a·x + b·y − c`; zero exactly on the line.
    pub fn eval(&self, p: &RationalPoint) -> BigRational {
        let a = BigRational::from_integer(self.a.clone());
        let b = BigRational::from_integer(self.b.clone());
        let c = BigRational::from_integer(self.c.clone());
        a * &p.x + b * &p.y - c
    }

    /// −1, 0 or +1 according to the sign of [`RationalLine::eval`].
    pub fn side(&self, p: &RationalPoint) -> i8 {
        match self.eval(p).cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    /// Direction vector `(b, −a)`; crossings along a line are ordered by it.
    pub fn direction(&self) -> (BigRational, BigRational) {
        (
            BigRational::from_integer(self.b.clone()),
            BigRational::from_integer(-self.a.clone()),
        )
    }

    /// A coordinate along the line that increases in [`RationalLine::direction`].
    pub fn param(&self, p: &RationalPoint) -> BigRational {
        let (dx, dy) = self.direction();
        dx * &p.x + dy * &p.y
    }

    pub fn is_parallel(&self, other: &RationalLine) -> bool {
        (&self.a * &other.b - &other.a * &self.b).is_zero()
    }
}

impl fmt::Display for RationalLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y = {}", self.a, self.b, self.c)
    }
}

/// Exact crossing of two non-parallel lines. The result does not depend on
/// argument order.
pub fn intersect(l1: &RationalLine, l2: &RationalLine) -> Option<RationalPoint> {
    let det = &l1.a * &l2.b - &l2.a * &l1.b;
    if det.is_zero() {
        return None;
    }
    let x = BigRational::new(&l1.c * &l2.b - &l2.c * &l1.b, det.clone());
    let y = BigRational::new(&l1.a * &l2.c - &l2.a * &l1.c, det);
    Some(RationalPoint::new(x, y))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplicityViolation {
    TooFewLines(usize),
    Parallel(usize, usize),
    Concurrent(usize, usize, usize),
}

impl fmt::Display for SimplicityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimplicityViolation::TooFewLines(n) => write!(f, "only {n} lines, need at least 3"),
            SimplicityViolation::Parallel(i, j) => write!(f, "lines {i} and {j} are parallel"),
            SimplicityViolation::Concurrent(i, j, k) => {
                write!(f, "lines {i}, {j} and {k} pass through one point")
            }
        }
    }
}

/// Which end of a line a ray belongs to, relative to the line's crossing
/// order (`Start` precedes the first crossing).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Start,
    Finish,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineArrangement {
    lines: Vec<RationalLine>,
}

impl LineArrangement {
    /// Builds an arrangement and checks that it is simple.
    pub fn new(lines: Vec<RationalLine>) -> Result<Self, GeometryError> {
        let arrangement = LineArrangement { lines };
        arrangement.is_simple().map_err(GeometryError::NotSimple)?;
        Ok(arrangement)
    }

    /// Wraps lines without any check; use [`LineArrangement::is_simple`] to
    /// inspect the result.
    pub fn from_lines_unchecked(lines: Vec<RationalLine>) -> Self {
        LineArrangement { lines }
    }

    pub fn lines(&self) -> &[RationalLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Reports the first parallel pair, then the first concurrent triple, in
    /// lexicographic order of line indices.
    pub fn is_simple(&self) -> Result<(), SimplicityViolation> {
        let n = self.lines.len();
        if n < 3 {
            return Err(SimplicityViolation::TooFewLines(n));
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.lines[i].is_parallel(&self.lines[j]) {
                    return Err(SimplicityViolation::Parallel(i, j));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let p = intersect(&self.lines[i], &self.lines[j]).expect("checked non-parallel");
                for k in j + 1..n {
                    if self.lines[k].side(&p) == 0 {
                        return Err(SimplicityViolation::Concurrent(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn crossing(&self, i: usize, j: usize) -> Result<RationalPoint, GeometryError> {
        let (li, lj) = (self.line(i)?, self.line(j)?);
        intersect(li, lj).ok_or(GeometryError::Parallel(i.min(j), i.max(j)))
    }

    fn line(&self, i: usize) -> Result<&RationalLine, GeometryError> {
        self.lines.get(i).ok_or(GeometryError::UnknownLine(i))
    }

    /// For every line, the other lines in the order they cross it along
    /// [`RationalLine::direction`]. Requires a simple arrangement.
    pub fn crossing_orders(&self) -> Vec<Vec<usize>> {
        let n = self.lines.len();
        let mut points: HashMap<(usize, usize), RationalPoint> = HashMap::new();
        for i in 0..n {
            for j in i + 1..n {
                if let Some(p) = intersect(&self.lines[i], &self.lines[j]) {
                    points.insert((i, j), p);
                }
            }
        }
        (0..n)
            .map(|l| {
                let mut keyed: Vec<(BigRational, usize)> = (0..n)
                    .filter(|&o| o != l)
                    .filter_map(|o| {
                        points
                            .get(&(l.min(o), l.max(o)))
                            .map(|p| (self.lines[l].param(p), o))
                    })
                    .collect();
                keyed.sort();
                keyed.into_iter().map(|(_, o)| o).collect()
            })
            .collect()
    }

    /// Degree counts `[d2, d3, d4]` of the arrangement graph, computed from
    /// span endpoints alone.
    pub fn degree_counts(&self) -> [usize; 3] {
        let orders = self.crossing_orders();
        let n = self.lines.len();
        let mut counts = [0usize; 3];
        for i in 0..n {
            for j in i + 1..n {
                counts[degree_in(&orders, i, j) - 2] += 1;
            }
        }
        counts
    }

    /// All 2-vertices as line pairs `(i, j)` with `i < j`, sorted.
    pub fn two_vertices(&self) -> Vec<(usize, usize)> {
        let orders = self.crossing_orders();
        let n = self.lines.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if degree_in(&orders, i, j) == 2 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Sweeps the arrangement with a generic direction `(1, q)` and records
    /// the crossing order as a wiring diagram. Wire `k` of the result is line
    /// `line_of_wire[k]`.
    pub fn sweep(&self) -> Result<SweptDiagram, GeometryError> {
        self.is_simple().map_err(GeometryError::NotSimple)?;
        let n = self.lines.len();
        let mut crossings = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                crossings.push((i, j, self.crossing(i, j)?));
            }
        }
        let mut q = 0i64;
        let (q, keys) = loop {
            let qr = rat(q, 1);
            let perpendicular = self
                .lines
                .iter()
                .any(|l| (BigRational::from_integer(l.b.clone()) - BigRational::from_integer(l.a.clone()) * &qr).is_zero());
            if !perpendicular {
                let mut keys: Vec<(BigRational, usize, usize)> = crossings
                    .iter()
                    .map(|(i, j, p)| (&p.x + &qr * &p.y, *i, *j))
                    .collect();
                keys.sort();
                if keys.windows(2).all(|w| w[0].0 != w[1].0) {
                    break (qr, keys);
                }
            }
            q += 1;
        };
        let t0 = &keys[0].0 - BigRational::one();
        let mut order: Vec<(BigRational, usize)> = self
            .lines
            .iter()
            .enumerate()
            .map(|(idx, l)| {
                let a = BigRational::from_integer(l.a.clone());
                let b = BigRational::from_integer(l.b.clone());
                let c = BigRational::from_integer(l.c.clone());
                let det = &a * &q - &b;
                let x = (&c * &q - &b * &t0) / &det;
                let y = (&a * &t0 - &c) / &det;
                (y - &q * x, idx)
            })
            .collect();
        order.sort();
        let line_of_wire: Vec<usize> = order.into_iter().map(|(_, l)| l).collect();
        let mut level_of = vec![0usize; n];
        for (level, &l) in line_of_wire.iter().enumerate() {
            level_of[l] = level;
        }
        let mut at_level = line_of_wire.clone();
        let mut swaps = Vec::with_capacity(keys.len());
        for (_, i, j) in keys {
            let (li, lj) = (level_of[i], level_of[j]);
            let low = li.min(lj);
            debug_assert_eq!(li.abs_diff(lj), 1, "generic sweep swaps adjacent lines");
            at_level.swap(low, low + 1);
            level_of[at_level[low]] = low;
            level_of[at_level[low + 1]] = low + 1;
            swaps.push(low + 1);
        }
        Ok(SweptDiagram {
            diagram: WiringDiagram::new_unchecked(n, swaps),
            line_of_wire,
        })
    }
}

/// Degree of the crossing of lines `i` and `j` given crossing orders.
pub(crate) fn degree_in(orders: &[Vec<usize>], i: usize, j: usize) -> usize {
    let extreme = |l: usize, o: usize| {
        let seq = &orders[l];
        seq.first() == Some(&o) || seq.last() == Some(&o)
    };
    4 - usize::from(extreme(i, j)) - usize::from(extreme(j, i))
}

/// Rational points on the unit circle, counterclockwise, approximately
/// uniformly spaced. Uses `t ↦ ((1−t²)/(1+t²), 2t/(1+t²))` with `t` snapped
/// to a fixed grid.
pub fn circle_points(m: usize) -> Vec<RationalPoint> {
    let mut ts: Vec<i64> = (0..m)
        .map(|i| {
            let theta = -std::f64::consts::PI
                + 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / m as f64;
            ((theta / 2.0).tan() * CIRCLE_GRID as f64).round() as i64
        })
        .collect();
    // keep the sequence strictly increasing even for very large m
    for i in 1..ts.len() {
        if ts[i] <= ts[i - 1] {
            ts[i] = ts[i - 1] + 1;
        }
    }
    ts.into_iter()
        .map(|num| {
            let t = rat(num, CIRCLE_GRID);
            let t2 = &t * &t;
            let denom = BigRational::one() + &t2;
            RationalPoint::new(
                (BigRational::one() - &t2) / &denom,
                (rat(2, 1) * &t) / &denom,
            )
        })
        .collect()
}

/// Star construction on `m` (odd) points in convex position: line `i` joins
/// point `i` to point `i + (m−1)/2`. Its graph has degree sequence
/// `⟨4^{m(m−3)/2}, 2^m⟩`.
pub fn star_construction(m: usize) -> Result<LineArrangement, GeometryError> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(GeometryError::BadStarSize(m));
    }
    let points = circle_points(m);
    let h = (m - 1) / 2;
    let lines = (0..m)
        .map(|i| RationalLine::through(&points[i], &points[(i + h) % m]))
        .collect::<Result<Vec<_>, _>>()?;
    LineArrangement::new(lines)
}

struct Spans {
    orders: Vec<Vec<usize>>,
}

impl Spans {
    fn of(a: &LineArrangement) -> Self {
        Spans {
            orders: a.crossing_orders(),
        }
    }

    fn is_two_vertex(&self, i: usize, j: usize) -> bool {
        degree_in(&self.orders, i, j) == 2
    }

    /// The crossing at the other end of `line`'s span from its crossing with
    /// `from`, which must be extreme.
    fn far_end(&self, line: usize, from: usize) -> usize {
        let seq = &self.orders[line];
        if seq.first() == Some(&from) {
            *seq.last().unwrap()
        } else {
            *seq.first().unwrap()
        }
    }

    /// The end of `line` at which it crosses `other`, if that crossing is extreme.
    fn end_at(&self, line: usize, other: usize) -> Option<End> {
        let seq = &self.orders[line];
        if seq.first() == Some(&other) {
            Some(End::Start)
        } else if seq.last() == Some(&other) {
            Some(End::Finish)
        } else {
            None
        }
    }

    /// `(extreme, inward neighbour)` crossing partners of `line` at `end`.
    fn extreme_pair(&self, line: usize, end: End) -> (usize, usize) {
        let seq = &self.orders[line];
        match end {
            End::Start => (seq[0], seq[1]),
            End::Finish => (seq[seq.len() - 1], seq[seq.len() - 2]),
        }
    }
}

fn check_step(
    candidate: &LineArrangement,
    expected: [usize; 3],
) -> bool {
    candidate.is_simple().is_ok() && candidate.degree_counts() == expected
}

fn pow2_inv(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << k)
}

/// Parameters `s` in `(0, 1)` at which the segment `from → to` crosses the
/// lines not in `skip`, sorted, with the crossed line.
fn ray_hits(
    a: &LineArrangement,
    from: &RationalPoint,
    to: &RationalPoint,
    skip: &[usize],
) -> Vec<(BigRational, usize)> {
    let (dx, dy) = to.sub(from);
    let mut hits: Vec<(BigRational, usize)> = (0..a.len())
        .filter(|l| !skip.contains(l))
        .filter_map(|l| {
            let line = &a.lines[l];
            let rate = BigRational::from_integer(line.a.clone()) * &dx
                + BigRational::from_integer(line.b.clone()) * &dy;
            if rate.is_zero() {
                return None;
            }
            let s = -line.eval(from) / rate;
            (s.is_positive() && s < BigRational::one()).then_some((s, l))
        })
        .collect();
    hits.sort();
    hits
}

/// Pull operation: rotates the two lines through the 2-vertex `x` about
/// their far span endpoints so that `x` slides toward the centroid of the
/// 2-vertices until it has crossed exactly one line. Degree counts change
/// from `(d2, d3, d4)` to `(d2 − 1, d3 + 2, d4 − 1)`.
pub fn pull_operation(
    a: &LineArrangement,
    x: (usize, usize),
) -> Result<LineArrangement, GeometryError> {
    let n = a.len();
    if n < 5 {
        return Err(GeometryError::PullTooSmall(n));
    }
    a.is_simple().map_err(GeometryError::NotSimple)?;
    let (l1, l2) = (x.0.min(x.1), x.0.max(x.1));
    if l2 >= n || l1 == l2 {
        return Err(GeometryError::UnknownLine(l2));
    }
    let spans = Spans::of(a);
    if !spans.is_two_vertex(l1, l2) {
        return Err(GeometryError::NotTwoVertex(l1, l2));
    }
    let twos = a.two_vertices();
    let mut cx = BigRational::zero();
    let mut cy = BigRational::zero();
    for &(i, j) in &twos {
        let p = a.crossing(i, j)?;
        cx += p.x;
        cy += p.y;
    }
    let count = BigRational::from_integer(BigInt::from(twos.len()));
    let center = RationalPoint::new(cx / &count, cy / count);

    let xp = a.crossing(l1, l2)?;
    let u = a.crossing(l1, spans.far_end(l1, l2))?;
    let v = a.crossing(l2, spans.far_end(l2, l1))?;
    let mut aim = center;
    let mut hits = ray_hits(a, &xp, &aim, &[l1, l2]);
    if hits.len() >= 2 && hits[0].0 == hits[1].0 {
        // the segment runs through a vertex (a symmetric star does this);
        // aim instead at the middle of the face edge on the line next to x
        // along l1, so only that line is crossed first
        let c = spans.extreme_pair(l1, spans.end_at(l1, l2).expect("x is extreme on l1")).1;
        let other = if hits[0].1 == c { hits[1].1 } else { hits[0].1 };
        let q = a.crossing(c, other)?;
        let near = a.crossing(c, l1)?;
        let mid = near.lerp(&q, &rat(1, 2));
        aim = xp.lerp(&mid, &rat(2, 1));
        hits = ray_hits(a, &xp, &aim, &[l1, l2]);
    }
    let first = hits.first().map(|h| h.0.clone()).ok_or(GeometryError::NothingToPull)?;
    let second = hits.get(1).map(|h| h.0.clone()).unwrap_or_else(BigRational::one);
    let center = aim;

    let [d2, d3, d4] = a.degree_counts();
    let expected = [d2 - 1, d3 + 2, d4 - 1];
    for attempt in 0..MAX_RETRIES {
        let s = &first + (&second - &first) * pow2_inv(attempt + 1);
        let target = xp.lerp(&center, &s);
        let mut lines = a.lines.clone();
        lines[l1] = RationalLine::through(&u, &target)?;
        lines[l2] = RationalLine::through(&v, &target)?;
        let candidate = LineArrangement::from_lines_unchecked(lines);
        if check_step(&candidate, expected) {
            return Ok(candidate);
        }
    }
    Err(GeometryError::ConstructionFailed {
        operation: "pull operation",
        attempts: MAX_RETRIES,
    })
}

/// Construction data for a line operation at a 2-vertex `x = l1 ∩ l2`:
/// `u` and `v` are the far span endpoints of `l1` and `l2`, and `l3` is the
/// other line through `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineOperationSite {
    pub l1: usize,
    pub l2: usize,
    pub l3: usize,
    /// Partner of `l1` at its far endpoint `u`.
    pub u_partner: usize,
}

/// Finds the orientation of the 2-vertex `x` for which both far span
/// endpoints are 2-vertices. Tries `(min, max)` before `(max, min)`.
pub fn line_operation_site(
    a: &LineArrangement,
    x: (usize, usize),
) -> Result<LineOperationSite, GeometryError> {
    let n = a.len();
    for &l in &[x.0, x.1] {
        if l >= n {
            return Err(GeometryError::UnknownLine(l));
        }
    }
    let spans = Spans::of(a);
    if x.0 == x.1 || !spans.is_two_vertex(x.0, x.1) {
        return Err(GeometryError::NotTwoVertex(x.0, x.1));
    }
    let (lo, hi) = (x.0.min(x.1), x.0.max(x.1));
    for (l1, l2) in [(lo, hi), (hi, lo)] {
        let u_partner = spans.far_end(l1, l2);
        let l3 = spans.far_end(l2, l1);
        if spans.is_two_vertex(l1, u_partner) && spans.is_two_vertex(l2, l3) {
            return Ok(LineOperationSite {
                l1,
                l2,
                l3,
                u_partner,
            });
        }
    }
    Err(GeometryError::MissingConstructionData(lo, hi))
}

/// Performs `k` line operations at the 2-vertex `x`. Each new line passes
/// just outside the span of `l1` beyond its current endpoint on the `x` side
/// and through the span of `l3` close to `v`, so it crosses every other span
/// and keeps `d2` fixed while adding two 3-vertices.
pub fn line_operation(
    a: &LineArrangement,
    x: (usize, usize),
    k: usize,
) -> Result<LineArrangement, GeometryError> {
    a.is_simple().map_err(GeometryError::NotSimple)?;
    let site = line_operation_site(a, x)?;
    let spans = Spans::of(a);
    // the end of l1 at x and the end of l3 at v stay fixed as lines are added
    let l1_end = spans.end_at(site.l1, site.l2).expect("x is extreme on l1");
    let l3_end = spans.end_at(site.l3, site.l2).expect("v is extreme on l3");
    let v = a.crossing(site.l2, site.l3)?;

    let mut current = a.clone();
    for _ in 0..k {
        let spans = Spans::of(&current);
        let (e_partner, e_next) = spans.extreme_pair(site.l1, l1_end);
        let e = current.crossing(site.l1, e_partner)?;
        let e_in = current.crossing(site.l1, e_next)?;
        let (v_partner, v_next) = spans.extreme_pair(site.l3, l3_end);
        debug_assert_eq!(v_partner, site.l2);
        let v_in = current.crossing(site.l3, v_next)?;

        let [d2, d3, d4] = current.degree_counts();
        let expected = [d2, d3 + 2, d4 + current.len() - 2];
        let mut added = None;
        for attempt in 0..MAX_RETRIES {
            let frac = pow2_inv(attempt + 1);
            let beyond = e.lerp(&e_in, &-frac.clone());
            let near_v = v.lerp(&v_in, &frac);
            let line = RationalLine::through(&beyond, &near_v)?;
            let mut lines = current.lines.clone();
            lines.push(line);
            let candidate = LineArrangement::from_lines_unchecked(lines);
            if check_step(&candidate, expected) {
                added = Some(candidate);
                break;
            }
        }
        current = added.ok_or(GeometryError::ConstructionFailed {
            operation: "line operation",
            attempts: MAX_RETRIES,
        })?;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(a: i64, b: i64, c: i64) -> RationalLine {
        RationalLine::from_ints(a, b, c).unwrap()
    }

    fn pt(x: (i64, i64), y: (i64, i64)) -> RationalPoint {
        RationalPoint::new(rat(x.0, x.1), rat(y.0, y.1))
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(intersect(&line(1, 0, 0), &line(0, 1, 0)), Some(pt((0, 1), (0, 1))));
        assert_eq!(intersect(&line(1, 1, 1), &line(1, -1, 0)), Some(pt((1, 2), (1, 2))));
        assert_eq!(intersect(&line(2, 3, 7), &line(1, -1, 1)), Some(pt((2, 1), (1, 1))));
        assert_eq!(intersect(&line(1, 0, 0), &line(2, 0, 5)), None);
    }

    #[test]
    fn intersect_is_symmetric() {
        let (l1, l2) = (line(3, -7, 2), line(5, 11, -4));
        assert_eq!(intersect(&l1, &l2), intersect(&l2, &l1));
    }

    #[test]
    fn normalization() {
        assert_eq!(line(-2, 4, 6), line(1, -2, -3));
        assert_eq!(line(0, -3, 6), line(0, 1, -2));
        assert_eq!(RationalLine::from_ints(0, 0, 1), Err(GeometryError::DegenerateLine));
    }

    #[test]
    fn simplicity_reports() {
        let ok = LineArrangement::from_lines_unchecked(vec![line(1, 0, 0), line(0, 1, 0), line(1, 1, 1)]);
        assert_eq!(ok.is_simple(), Ok(()));
        let concurrent =
            LineArrangement::from_lines_unchecked(vec![line(1, 0, 0), line(0, 1, 0), line(1, 1, 0)]);
        assert_eq!(concurrent.is_simple(), Err(SimplicityViolation::Concurrent(0, 1, 2)));
        let parallel =
            LineArrangement::from_lines_unchecked(vec![line(1, 0, 0), line(1, 0, 1), line(0, 1, 0)]);
        assert_eq!(parallel.is_simple(), Err(SimplicityViolation::Parallel(0, 1)));
    }

    #[test]
    fn circle_points_are_on_circle_and_ccw() {
        let pts = circle_points(9);
        for p in &pts {
            assert_eq!(&p.x * &p.x + &p.y * &p.y, BigRational::one());
        }
        // consecutive points, including the wrap, turn counterclockwise
        for i in 0..pts.len() {
            let (p, q) = (&pts[i], &pts[(i + 1) % pts.len()]);
            let u = (p.x.clone(), p.y.clone());
            let v = (q.x.clone(), q.y.clone());
            assert_eq!(cross_sign(&u, &v), Ordering::Greater);
        }
    }

    #[test]
    fn star_degree_counts() {
        assert_eq!(star_construction(3).unwrap().degree_counts(), [3, 0, 0]);
        assert_eq!(star_construction(5).unwrap().degree_counts(), [5, 0, 5]);
        assert_eq!(star_construction(7).unwrap().degree_counts(), [7, 0, 14]);
        assert!(matches!(star_construction(4), Err(GeometryError::BadStarSize(4))));
        assert!(matches!(star_construction(1), Err(GeometryError::BadStarSize(1))));
    }

    #[test]
    fn star_two_vertices_are_circle_points() {
        let m = 7;
        let star = star_construction(m).unwrap();
        let circle = circle_points(m);
        let twos = star.two_vertices();
        assert_eq!(twos.len(), m);
        for (i, j) in twos {
            let p = star.crossing(i, j).unwrap();
            assert!(circle.contains(&p));
        }
    }

    #[test]
    fn pull_on_stars() {
        let star = star_construction(5).unwrap();
        let x = star.two_vertices()[0];
        let pulled = pull_operation(&star, x).unwrap();
        assert_eq!(pulled.degree_counts(), [4, 2, 4]);
        // only the two lines through x moved
        for l in 0..5 {
            if l != x.0 && l != x.1 {
                assert_eq!(pulled.lines()[l], star.lines()[l]);
            }
        }
        let star7 = star_construction(7).unwrap();
        let pulled7 = pull_operation(&star7, star7.two_vertices()[0]).unwrap();
        assert_eq!(pulled7.degree_counts(), [6, 2, 13]);
    }

    #[test]
    fn pulled_vertex_becomes_four_vertex() {
        let star = star_construction(5).unwrap();
        let x = star.two_vertices()[0];
        let pulled = pull_operation(&star, x).unwrap();
        let orders = pulled.crossing_orders();
        assert_eq!(degree_in(&orders, x.0, x.1), 4);
    }

    #[test]
    fn pull_rejections() {
        let star3 = star_construction(3).unwrap();
        assert!(matches!(pull_operation(&star3, (0, 1)), Err(GeometryError::PullTooSmall(3))));
        let star5 = star_construction(5).unwrap();
        let orders = star5.crossing_orders();
        let four = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .find(|&(i, j)| degree_in(&orders, i, j) == 4)
            .unwrap();
        assert_eq!(pull_operation(&star5, four), Err(GeometryError::NotTwoVertex(four.0, four.1)));
    }

    #[test]
    fn line_operation_deltas() {
        let star5 = star_construction(5).unwrap();
        let x = star5.two_vertices()[0];
        assert_eq!(line_operation(&star5, x, 1).unwrap().degree_counts(), [5, 2, 8]);
        let star3 = star_construction(3).unwrap();
        let x = star3.two_vertices()[0];
        assert_eq!(line_operation(&star3, x, 2).unwrap().degree_counts(), [3, 4, 3]);
    }

    #[test]
    fn line_operation_after_pull() {
        let star5 = star_construction(5).unwrap();
        let pulled = pull_operation(&star5, star5.two_vertices()[0]).unwrap();
        let x = pulled
            .two_vertices()
            .into_iter()
            .find(|&x| line_operation_site(&pulled, x).is_ok())
            .unwrap();
        assert_eq!(line_operation(&pulled, x, 1).unwrap().degree_counts(), [4, 4, 7]);
    }

    #[test]
    fn constructions_are_deterministic() {
        let a = line_operation(&star_construction(5).unwrap(), (0, 3), 2);
        let b = line_operation(&star_construction(5).unwrap(), (0, 3), 2);
        assert_eq!(a, b);
    }

    #[test]
    fn sweep_produces_valid_diagram() {
        let star = star_construction(7).unwrap();
        let swept = star.sweep().unwrap();
        assert!(swept.diagram.validate().is_ok());
        let mut wires = swept.line_of_wire.clone();
        wires.sort();
        assert_eq!(wires, (0..7).collect::<Vec<_>>());
    }
}

//! Exhaustive small-n verification: every structural claim about arrangement
//! graphs is a named predicate, run over all wiring diagrams up to `n_max`.

use std::cell::OnceCell;
use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    build_from_wiring, is_isomorphic, one_layer_vertices, outer_face_vertices, two_switch,
    AbstractGraph, ArrangementGraph,
};
use crate::metrics::{
    all_distances, all_shortest_paths, common_line, in_q_uv, line_subpath, lines_touched,
    separating_line_count, EccentricityReport, DEFAULT_PATH_CAP,
};
use crate::realizer::{check_sequence, DegreeSequence};
use crate::wiring::{enumerate_all, restricted_sweep, WiringDiagram};

pub const MIN_N: usize = 3;
pub const MAX_N: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),
    #[error("n_max must be between {MIN_N} and {MAX_N}, got {0}")]
    Range(usize),
}

type Predicate = fn(&Instance) -> Result<(), String>;

#[derive(Clone, Copy)]
enum Kind {
    /// Checked on every instance separately.
    PerInstance(Predicate),
    /// Degree sequences seen at `n` against those accepted by the checker.
    Census,
    /// A 2-switch leaving the class of arrangement graphs at `n = 4`.
    TwoSwitch,
}

#[derive(Clone, Copy)]
pub struct Claim {
    pub id: &'static str,
    pub description: &'static str,
    /// Largest line count the claim is run at by [`verify_all`].
    pub max_n: usize,
    kind: Kind,
}

impl Claim {
    pub fn is_per_instance(&self) -> bool {
        matches!(self.kind, Kind::PerInstance(_))
    }
}

pub const CLAIMS: &[Claim] = &[
    Claim {
        id: "identities",
        description: "d2 + d3 + d4 = n(n-1)/2, 2·d2 + d3 = 2n, d2 >= 3, and d2 = n only for odd n",
        max_n: 6,
        kind: Kind::PerInstance(check_identities),
    },
    Claim {
        id: "census",
        description: "the degree sequences occurring on n lines are exactly those accepted by check_sequence",
        max_n: 6,
        kind: Kind::Census,
    },
    Claim {
        id: "diameter",
        description: "the diameter is n - 2",
        max_n: 6,
        kind: Kind::PerInstance(check_diameter),
    },
    Claim {
        id: "metric-axioms",
        description: "radius <= diameter <= 2·radius",
        max_n: 5,
        kind: Kind::PerInstance(check_metric_axioms),
    },
    Claim {
        id: "low-degree-outer",
        description: "every vertex of degree below 4 is on the outer face",
        max_n: 5,
        kind: Kind::PerInstance(check_low_degree_outer),
    },
    Claim {
        id: "outer-diametrical",
        description: "a vertex is diametrical exactly when it is on the outer face",
        max_n: 5,
        kind: Kind::PerInstance(check_outer_diametrical),
    },
    Claim {
        id: "colinear-unique-path",
        description: "two vertices on a common line have one shortest path, the sub-path of that line",
        max_n: 5,
        kind: Kind::PerInstance(check_colinear_unique_path),
    },
    Claim {
        id: "path-line-count",
        description: "a shortest path of length k has vertices on exactly k + 2 lines",
        max_n: 5,
        kind: Kind::PerInstance(check_path_line_count),
    },
    Claim {
        id: "separator-bound",
        description: "d(u, v) >= sep(u, v) + 1 for co-linear u, v and >= sep(u, v) + 2 otherwise",
        max_n: 5,
        kind: Kind::PerInstance(check_separator_bound),
    },
    Claim {
        id: "separation-witness",
        description: "the two span endpoints of a line are separated by every line through neither",
        max_n: 5,
        kind: Kind::PerInstance(check_separation_witness),
    },
    Claim {
        id: "quadrant",
        description: "shortest paths between non-co-linear u, v stay in the closed quadrant Q_uv",
        max_n: 5,
        kind: Kind::PerInstance(check_quadrant),
    },
    Claim {
        id: "low-degree-eccentric",
        description: "every vertex has an eccentric vertex of degree 2 or 3",
        max_n: 5,
        kind: Kind::PerInstance(check_low_degree_eccentric),
    },
    Claim {
        id: "outer-eccentric",
        description: "every vertex has an eccentric vertex on the outer face",
        max_n: 5,
        kind: Kind::PerInstance(check_outer_eccentric),
    },
    Claim {
        id: "one-layer",
        description: "a 1-layer vertex with a neighbour on the outer face has eccentricity n - 3",
        max_n: 5,
        kind: Kind::PerInstance(check_one_layer),
    },
    Claim {
        id: "restricted-sweep",
        description: "some sweep has exactly one crossing between the bottom two levels, at a 2-vertex that is neither the first nor the last crossing",
        max_n: 5,
        kind: Kind::PerInstance(check_restricted_sweep),
    },
    Claim {
        id: "two-switch-non-closure",
        description: "some 2-switch on a 4-line arrangement graph gives a graph that is not an arrangement graph",
        max_n: 4,
        kind: Kind::TwoSwitch,
    },
];

pub fn claim(id: &str) -> Option<&'static Claim> {
    CLAIMS.iter().find(|c| c.id == id)
}

/// Every shortest path, keyed by vertex pair `u < v`.
/// Failed claim ids with details.
type Fails<'a> = Vec<(&'a str, String)>;

type PairPaths = BTreeMap<(usize, usize), Vec<Vec<usize>>>;

/// Lazily computed data shared by the predicates of one instance.
pub struct Instance<'a> {
    pub g: &'a ArrangementGraph,
    report: OnceCell<EccentricityReport>,
    outer: OnceCell<Result<BTreeSet<usize>, String>>,
    paths: OnceCell<Result<PairPaths, String>>,
}

impl<'a> Instance<'a> {
    pub fn new(g: &'a ArrangementGraph) -> Self {
        Instance {
            g,
            report: OnceCell::new(),
            outer: OnceCell::new(),
            paths: OnceCell::new(),
        }
    }

    fn n(&self) -> usize {
        self.g.line_count()
    }

    fn report(&self) -> &EccentricityReport {
        self.report.get_or_init(|| all_distances(self.g))
    }

    fn outer(&self) -> Result<&BTreeSet<usize>, String> {
        self.outer
            .get_or_init(|| outer_face_vertices(self.g).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Shortest paths for every pair `u < v`.
    fn paths(&self) -> Result<&PairPaths, String> {
        self.paths
            .get_or_init(|| {
                let mut out = BTreeMap::new();
                let vc = self.g.vertex_count();
                for u in 0..vc {
                    for v in u + 1..vc {
                        let p = all_shortest_paths(self.g, u, v, DEFAULT_PATH_CAP)
                            .map_err(|e| e.to_string())?;
                        out.insert((u, v), p);
                    }
                }
                Ok(out)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn label(&self, v: usize) -> String {
        self.g.label(v)
    }
}

fn check_identities(inst: &Instance) -> Result<(), String> {
    let g = inst.g;
    let n = inst.n();
    let count = |d: usize| (0..g.vertex_count()).filter(|&v| g.degree(v) == d).count();
    let (d2, d3, d4) = (count(2), count(3), count(4));
    if d2 + d3 + d4 != g.vertex_count() {
        return Err("a vertex has degree outside {2, 3, 4}".into());
    }
    if d2 + d3 + d4 != n * (n - 1) / 2 {
        return Err(format!("d2 + d3 + d4 = {}, expected {}", d2 + d3 + d4, n * (n - 1) / 2));
    }
    if 2 * d2 + d3 != 2 * n {
        return Err(format!("2·d2 + d3 = {}, expected {}", 2 * d2 + d3, 2 * n));
    }
    if d2 < 3 {
        return Err(format!("d2 = {d2} is below 3"));
    }
    if d2 == n && n.is_multiple_of(2) {
        return Err(format!("d2 = n = {n} with n even"));
    }
    Ok(())
}

fn check_diameter(inst: &Instance) -> Result<(), String> {
    let d = inst.report().diameter;
    if d + 2 != inst.n() {
        return Err(format!("diameter {d}, expected {}", inst.n() - 2));
    }
    Ok(())
}

fn check_metric_axioms(inst: &Instance) -> Result<(), String> {
    let r = inst.report();
    if r.radius <= r.diameter && r.diameter <= 2 * r.radius {
        Ok(())
    } else {
        Err(format!("radius {} and diameter {}", r.radius, r.diameter))
    }
}

fn check_low_degree_outer(inst: &Instance) -> Result<(), String> {
    let outer = inst.outer()?;
    match (0..inst.g.vertex_count()).find(|&v| inst.g.degree(v) < 4 && !outer.contains(&v)) {
        Some(v) => Err(format!("vertex {} has degree {} but is not on the outer face", inst.label(v), inst.g.degree(v))),
        None => Ok(()),
    }
}

fn check_outer_diametrical(inst: &Instance) -> Result<(), String> {
    let outer = inst.outer()?;
    let diam = &inst.report().diametrical;
    if outer == diam {
        return Ok(());
    }
    let show = |s: &BTreeSet<usize>| s.iter().map(|&v| inst.label(v)).collect::<Vec<_>>().join(" ");
    Err(format!("outer face [{}] vs diametrical [{}]", show(outer), show(diam)))
}

fn check_colinear_unique_path(inst: &Instance) -> Result<(), String> {
    let g = inst.g;
    for (&(u, v), paths) in inst.paths()? {
        let Some(l) = common_line(g, u, v) else {
            continue;
        };
        let sub = line_subpath(g, l, u, v).expect("both vertices are on the line");
        if paths.len() != 1 || paths[0] != sub {
            return Err(format!(
                "{} and {} on line {}: {} shortest paths",
                inst.label(u),
                inst.label(v),
                l + 1,
                paths.len()
            ));
        }
    }
    Ok(())
}

fn check_path_line_count(inst: &Instance) -> Result<(), String> {
    let n = inst.n();
    for (&(u, v), paths) in inst.paths()? {
        for p in paths {
            let k = p.len() - 1;
            let touched = lines_touched(inst.g, p).len();
            if touched != k + 2 {
                return Err(format!(
                    "path {} -> {} of length {k} touches {touched} lines",
                    inst.label(u),
                    inst.label(v)
                ));
            }
            if k == n - 2 && touched != n {
                return Err(format!("length {k} path touches {touched} of {n} lines"));
            }
        }
    }
    Ok(())
}

fn check_separator_bound(inst: &Instance) -> Result<(), String> {
    let g = inst.g;
    let dist = &inst.report().dist;
    for u in 0..g.vertex_count() {
        for v in u + 1..g.vertex_count() {
            let sep = separating_line_count(g, u, v);
            let slack = if common_line(g, u, v).is_some() { 1 } else { 2 };
            if dist[u][v] < sep + slack {
                return Err(format!(
                    "d({}, {}) = {} with {sep} separating lines",
                    inst.label(u),
                    inst.label(v),
                    dist[u][v]
                ));
            }
        }
    }
    Ok(())
}

fn check_separation_witness(inst: &Instance) -> Result<(), String> {
    let g = inst.g;
    let n = inst.n();
    let ends = g.ends();
    for j in 0..n {
        let (a, b) = (ends[j], ends[j + n]);
        let u = g.extreme_vertex(a.line, a.end);
        let v = g.extreme_vertex(b.line, b.end);
        for l in 0..n {
            if g.is_on_line(u, l) || g.is_on_line(v, l) {
                continue;
            }
            if g.side_of_line(u, l) * g.side_of_line(v, l) != -1 {
                return Err(format!(
                    "line {} does not separate {} and {}",
                    l + 1,
                    inst.label(u),
                    inst.label(v)
                ));
            }
        }
    }
    Ok(())
}

fn check_quadrant(inst: &Instance) -> Result<(), String> {
    let g = inst.g;
    for (&(u, v), paths) in inst.paths()? {
        if common_line(g, u, v).is_some() {
            continue;
        }
        for p in paths {
            if let Some(&x) = p.iter().find(|&&x| !in_q_uv(g, u, v, x)) {
                return Err(format!(
                    "vertex {} of a shortest {} -> {} path is outside Q_uv",
                    inst.label(x),
                    inst.label(u),
                    inst.label(v)
                ));
            }
        }
    }
    Ok(())
}

fn check_low_degree_eccentric(inst: &Instance) -> Result<(), String> {
    let r = inst.report();
    for u in 0..inst.g.vertex_count() {
        if !r.eccentric_vertices_of(u).iter().any(|&v| inst.g.degree(v) <= 3) {
            return Err(format!("every eccentric vertex of {} has degree 4", inst.label(u)));
        }
    }
    Ok(())
}

fn check_outer_eccentric(inst: &Instance) -> Result<(), String> {
    let outer = inst.outer()?;
    let r = inst.report();
    for u in 0..inst.g.vertex_count() {
        if r.eccentric_vertices_of(u).is_disjoint(outer) {
            return Err(format!("no eccentric vertex of {} is on the outer face", inst.label(u)));
        }
    }
    Ok(())
}

fn check_one_layer(inst: &Instance) -> Result<(), String> {
    let outer = inst.outer()?;
    let layer = one_layer_vertices(inst.g).map_err(|e| e.to_string())?;
    let r = inst.report();
    for &u in &layer {
        let touches = inst.g.neighbors(u).iter().any(|w| outer.contains(w));
        if touches && r.ecc[u] + 3 != inst.n() {
            return Err(format!("1-layer vertex {} has eccentricity {}", inst.label(u), r.ecc[u]));
        }
    }
    Ok(())
}

fn check_restricted_sweep(inst: &Instance) -> Result<(), String> {
    let g = inst.g;
    let swept = restricted_sweep(g).map_err(|e| e.to_string())?;
    let d = &swept.diagram;
    if let Some(v) = d.validate().first() {
        return Err(format!("restricted sweep is invalid: {v}"));
    }
    let bottom: Vec<usize> = (0..d.swaps.len()).filter(|&t| d.swaps[t] == 1).collect();
    if bottom.len() != 1 {
        return Err(format!("{} crossings between the bottom two levels", bottom.len()));
    }
    let t = bottom[0];
    if t == 0 || t + 1 == d.swaps.len() {
        return Err(format!("bottom crossing is step {} of {}", t + 1, d.swaps.len()));
    }
    let to_g = |(i, j): (usize, usize)| g.vertex_of(swept.line_of_wire[i], swept.line_of_wire[j]);
    let crossings = d.crossings();
    let v = to_g(crossings[t]);
    if g.degree(v) != 2 {
        return Err(format!("bottom crossing {} has degree {}", inst.label(v), g.degree(v)));
    }
    // the sweep is the same arrangement: degrees agree vertex by vertex
    let h = build_from_wiring(d).map_err(|e| e.to_string())?;
    for w in 0..h.vertex_count() {
        let gv = to_g(h.vertex_lines(w));
        if h.degree(w) != g.degree(gv) {
            return Err(format!("sweep changes the degree of {}", inst.label(gv)));
        }
    }
    Ok(())
}

/// Runs one per-instance claim on a graph built any way.
pub fn check_graph(g: &ArrangementGraph, id: &str) -> Result<Result<(), String>, OracleError> {
    let c = claim(id).ok_or_else(|| OracleError::UnknownClaim(id.to_string()))?;
    match c.kind {
        Kind::PerInstance(pred) => Ok(pred(&Instance::new(g))),
        _ => Err(OracleError::UnknownClaim(id.to_string())),
    }
}

/// Runs several per-instance claims sharing one [`Instance`]. Returns the
/// failing claim ids with details.
pub fn check_graph_claims(
    g: &ArrangementGraph,
    ids: &[&str],
) -> Result<Vec<(String, String)>, OracleError> {
    let preds = ids
        .iter()
        .map(|&id| match claim(id) {
            Some(Claim { kind: Kind::PerInstance(p), .. }) => Ok((id, *p)),
            _ => Err(OracleError::UnknownClaim(id.to_string())),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let inst = Instance::new(g);
    Ok(preds
        .into_iter()
        .filter_map(|(id, p)| p(&inst).err().map(|e| (id.to_string(), e)))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub n: usize,
    pub claim: String,
    /// Position in the lexicographic enumeration at `n`, if the failure
    /// belongs to one diagram.
    pub rank: Option<usize>,
    pub diagram: Option<WiringDiagram>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub n: usize,
    pub claim: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoSwitchWitness {
    pub diagram: WiringDiagram,
    /// Edges `xy` and `zw`, by vertex label.
    pub removed: [(String, String); 2],
    /// Edges `yz` and `wx`.
    pub added: [(String, String); 2],
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRun {
    pub n_min: usize,
    pub n_max: usize,
    pub claims: Vec<String>,
    /// Diagrams enumerated per line count.
    pub instances: BTreeMap<usize, usize>,
    /// Instances each claim was evaluated on.
    pub checked: BTreeMap<String, usize>,
    pub skipped: Vec<Skipped>,
    /// Degree sequences found per line count, when the census ran.
    pub census: BTreeMap<usize, Vec<DegreeSequence>>,
    pub two_switch_witness: Option<TwoSwitchWitness>,
    pub failures: Vec<Failure>,
}

impl VerificationRun {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Degree sequences accepted by [`check_sequence`] with `n` lines.
pub fn accepted_sequences(n: usize) -> BTreeSet<DegreeSequence> {
    let total = n * (n - 1) / 2;
    let mut out = BTreeSet::new();
    for d2 in 0..=total {
        for d3 in 0..=total - d2 {
            let pi = DegreeSequence::from_counts(d2, d3, total - d2 - d3);
            if check_sequence(&pi).is_ok_and(|plan| plan.n == n) {
                out.insert(pi);
            }
        }
    }
    out
}

/// Degree sequences of all enumerated arrangement graphs on `n` lines.
pub fn degree_sequence_census(n: usize) -> Result<BTreeSet<DegreeSequence>, OracleError> {
    if !(MIN_N..=MAX_N).contains(&n) {
        return Err(OracleError::Range(n));
    }
    let diagrams: Vec<WiringDiagram> = enumerate_all(n, true).expect("range checked").collect();
    Ok(diagrams
        .par_iter()
        .map(|d| build_from_wiring(d).expect("enumerated diagrams are valid").degree_sequence())
        .collect::<Vec<_>>()
        .into_iter()
        .collect())
}

/// First legal 2-switch, in enumeration and edge order, on a 4-line
/// arrangement graph whose result is isomorphic to no 4-line arrangement
/// graph.
pub fn two_switch_witness() -> Option<TwoSwitchWitness> {
    let diagrams: Vec<WiringDiagram> = enumerate_all(4, false).expect("n = 4 is in range").collect();
    let graphs: Vec<ArrangementGraph> =
        diagrams.iter().map(|d| build_from_wiring(d).expect("valid")).collect();
    let mut classes: Vec<AbstractGraph> = Vec::new();
    for g in &graphs {
        let a = g.to_abstract();
        if !classes.iter().any(|c| is_isomorphic(c, &a).expect("small")) {
            classes.push(a);
        }
    }
    for (d, g) in diagrams.iter().zip(&graphs) {
        let a = g.to_abstract();
        let edges = a.edges();
        for (i, &(x, y)) in edges.iter().enumerate() {
            for &(p, q) in &edges[i + 1..] {
                for (z, w) in [(p, q), (q, p)] {
                    let Ok(h) = two_switch(&a, (x, y), (z, w)) else {
                        continue;
                    };
                    if classes.iter().any(|c| is_isomorphic(c, &h).expect("small")) {
                        continue;
                    }
                    let lab = |v: usize| g.label(v);
                    return Some(TwoSwitchWitness {
                        diagram: d.clone(),
                        removed: [(lab(x), lab(y)), (lab(z), lab(w))],
                        added: [(lab(y), lab(z)), (lab(w), lab(x))],
                        vertices: (0..g.vertex_count()).map(lab).collect(),
                        edges: h.edges().into_iter().map(|(s, t)| (lab(s), lab(t))).collect(),
                    });
                }
            }
        }
    }
    None
}

/// Runs the selected claims (all when `ids` is empty) on every wiring
/// diagram with `3..=n_max` wires. Claims are skipped above their `max_n`.
pub fn verify_all(n_max: usize, ids: &[&str]) -> Result<VerificationRun, OracleError> {
    if !(MIN_N..=MAX_N).contains(&n_max) {
        return Err(OracleError::Range(n_max));
    }
    let selected: Vec<&'static Claim> = if ids.is_empty() {
        CLAIMS.iter().collect()
    } else {
        let mut out: Vec<&'static Claim> = Vec::new();
        for &id in ids {
            let c = claim(id).ok_or_else(|| OracleError::UnknownClaim(id.to_string()))?;
            if !out.iter().any(|o| o.id == c.id) {
                out.push(c);
            }
        }
        out
    };

    let mut run = VerificationRun {
        n_min: MIN_N,
        n_max,
        claims: selected.iter().map(|c| c.id.to_string()).collect(),
        instances: BTreeMap::new(),
        checked: selected.iter().map(|c| (c.id.to_string(), 0)).collect(),
        skipped: Vec::new(),
        census: BTreeMap::new(),
        two_switch_witness: None,
        failures: Vec::new(),
    };

    for n in MIN_N..=n_max {
        let active: Vec<&Claim> = selected.iter().copied().filter(|c| n <= c.max_n).collect();
        for c in selected.iter().filter(|c| n > c.max_n) {
            run.skipped.push(Skipped { n, claim: c.id.to_string() });
        }
        let diagrams: Vec<WiringDiagram> = enumerate_all(n, true).expect("range checked").collect();
        run.instances.insert(n, diagrams.len());

        let per_instance: Vec<(&str, Predicate)> = active
            .iter()
            .filter_map(|c| match c.kind {
                Kind::PerInstance(p) => Some((c.id, p)),
                _ => None,
            })
            .collect();
        let want_census = active.iter().any(|c| matches!(c.kind, Kind::Census));

        // ordered collect keeps the merge deterministic
        let results: Vec<(Option<DegreeSequence>, Fails)> = diagrams
            .par_iter()
            .map(|d| {
                let g = build_from_wiring(d).expect("enumerated diagrams are valid");
                let inst = Instance::new(&g);
                let fails = per_instance
                    .iter()
                    .filter_map(|&(id, p)| p(&inst).err().map(|e| (id, e)))
                    .collect();
                (want_census.then(|| g.degree_sequence()), fails)
            })
            .collect();

        for &(id, _) in &per_instance {
            *run.checked.get_mut(id).expect("selected") += diagrams.len();
        }
        let mut seen = BTreeSet::new();
        for (rank, (seq, fails)) in results.into_iter().enumerate() {
            if let Some(seq) = seq {
                seen.insert(seq);
            }
            for (id, detail) in fails {
                run.failures.push(Failure {
                    n,
                    claim: id.to_string(),
                    rank: Some(rank),
                    diagram: Some(diagrams[rank].clone()),
                    detail,
                });
            }
        }

        if want_census {
            *run.checked.get_mut("census").expect("selected") += diagrams.len();
            let accepted = accepted_sequences(n);
            for missing in accepted.difference(&seen) {
                run.failures.push(Failure {
                    n,
                    claim: "census".into(),
                    rank: None,
                    diagram: None,
                    detail: format!("accepted sequence {missing} does not occur"),
                });
            }
            for extra in seen.difference(&accepted) {
                let rank = diagrams
                    .iter()
                    .position(|d| build_from_wiring(d).expect("valid").degree_sequence() == *extra);
                run.failures.push(Failure {
                    n,
                    claim: "census".into(),
                    rank,
                    diagram: rank.map(|r| diagrams[r].clone()),
                    detail: format!("sequence {extra} occurs but is rejected"),
                });
            }
            run.census.insert(n, seen.into_iter().collect());
        }

        if n == 4 && active.iter().any(|c| matches!(c.kind, Kind::TwoSwitch)) {
            *run.checked.get_mut("two-switch-non-closure").expect("selected") += diagrams.len();
            run.two_switch_witness = two_switch_witness();
            if run.two_switch_witness.is_none() {
                run.failures.push(Failure {
                    n,
                    claim: "two-switch-non-closure".into(),
                    rank: None,
                    diagram: None,
                    detail: "every legal 2-switch gives another arrangement graph".into(),
                });
            }
        }
    }
    // a claim with no instance in range never ran
    for c in &selected {
        if run.checked[c.id] == 0 {
            run.failures.push(Failure {
                n: n_max,
                claim: c.id.to_string(),
                rank: None,
                diagram: None,
                detail: format!("not evaluated for n <= {n_max}"),
            });
        }
    }
    Ok(run)
}

//! Hop distances, eccentricities and the shortest-path structure of
//! arrangement graphs.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::ArrangementGraph;

/// Default cap on the number of paths [`all_shortest_paths`] will return.
pub const DEFAULT_PATH_CAP: usize = 1_000_000;
/// Largest line count for which shortest-path enumeration is allowed.
pub const MAX_PATH_ENUMERATION_LINES: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricsError {
    #[error("source and target are the same vertex {0}")]
    SameVertex(usize),
    #[error("shortest-path enumeration limited to {max} lines, graph has {lines}")]
    TooManyLines { lines: usize, max: usize },
    #[error("more than {cap} shortest paths")]
    PathCapExceeded { cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EccentricityReport {
    /// `dist[u][v]` in hops.
    pub dist: Vec<Vec<usize>>,
    pub ecc: Vec<usize>,
    pub diameter: usize,
    pub radius: usize,
    pub diametrical: BTreeSet<usize>,
    pub central: BTreeSet<usize>,
}

impl EccentricityReport {
    pub fn eccentric_vertices_of(&self, u: usize) -> BTreeSet<usize> {
        let e = self.ecc[u];
        (0..self.dist.len()).filter(|&v| self.dist[u][v] == e).collect()
    }
}

fn bfs(g: &ArrangementGraph, source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// All-pairs distances by one breadth-first search per vertex.
pub fn all_distances(g: &ArrangementGraph) -> EccentricityReport {
    let dist: Vec<Vec<usize>> = (0..g.vertex_count()).map(|s| bfs(g, s)).collect();
    let ecc: Vec<usize> = dist.iter().map(|row| *row.iter().max().unwrap_or(&0)).collect();
    let diameter = ecc.iter().copied().max().unwrap_or(0);
    let radius = ecc.iter().copied().min().unwrap_or(0);
    let diametrical = (0..ecc.len()).filter(|&v| ecc[v] == diameter).collect();
    let central = (0..ecc.len()).filter(|&v| ecc[v] == radius).collect();
    EccentricityReport {
        dist,
        ecc,
        diameter,
        radius,
        diametrical,
        central,
    }
}

/// Conjectured range `⌈n/2⌉ − 1 ..= ⌊3(n − 1)/4⌋` for the radius of an
/// arrangement graph on `n` lines. Unproven; only ever reported.
pub fn conjectured_radius_window(n: usize) -> (usize, usize) {
    (n.div_ceil(2).saturating_sub(1), 3 * n.saturating_sub(1) / 4)
}

/// Vertices whose eccentricity equals the diameter, from distances only.
pub fn diametrical_vertices(report: &EccentricityReport) -> BTreeSet<usize> {
    report.diametrical.clone()
}

pub fn eccentric_vertices_of(report: &EccentricityReport, u: usize) -> BTreeSet<usize> {
    report.eccentric_vertices_of(u)
}

pub fn side_of_line(g: &ArrangementGraph, v: usize, line: usize) -> i8 {
    g.side_of_line(v, line)
}

/// Lines that separate `u` and `v` (neither vertex lies on them).
pub fn separating_lines(g: &ArrangementGraph, u: usize, v: usize) -> Vec<usize> {
    (0..g.line_count())
        .filter(|&l| g.side_of_line(u, l) * g.side_of_line(v, l) == -1)
        .collect()
}

pub fn separating_line_count(g: &ArrangementGraph, u: usize, v: usize) -> usize {
    separating_lines(g, u, v).len()
}

/// The common line of two distinct vertices, if any.
pub fn common_line(g: &ArrangementGraph, u: usize, v: usize) -> Option<usize> {
    let (a, b) = g.vertex_lines(u);
    [a, b].into_iter().find(|&l| g.is_on_line(v, l))
}

/// The sub-path of `line` between two of its vertices.
pub fn line_subpath(g: &ArrangementGraph, line: usize, u: usize, v: usize) -> Option<Vec<usize>> {
    let order = g.line_order(line);
    let iu = order.iter().position(|&x| x == u)?;
    let iv = order.iter().position(|&x| x == v)?;
    Some(if iu <= iv {
        order[iu..=iv].to_vec()
    } else {
        order[iv..=iu].iter().rev().copied().collect()
    })
}

/// Every shortest `u`–`v` path, each as a vertex sequence, in lexicographic
/// order. Walks the distance-layer DAG back from `v`.
pub fn all_shortest_paths(
    g: &ArrangementGraph,
    u: usize,
    v: usize,
    cap: usize,
) -> Result<Vec<Vec<usize>>, MetricsError> {
    if u == v {
        return Err(MetricsError::SameVertex(u));
    }
    if g.line_count() > MAX_PATH_ENUMERATION_LINES {
        return Err(MetricsError::TooManyLines {
            lines: g.line_count(),
            max: MAX_PATH_ENUMERATION_LINES,
        });
    }
    let from_v = bfs(g, v);
    let mut paths = Vec::new();
    let mut current = vec![u];
    fn walk(
        g: &ArrangementGraph,
        from_v: &[usize],
        current: &mut Vec<usize>,
        paths: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<(), MetricsError> {
        let at = *current.last().unwrap();
        if from_v[at] == 0 {
            if paths.len() == cap {
                return Err(MetricsError::PathCapExceeded { cap });
            }
            paths.push(current.clone());
            return Ok(());
        }
        for &w in g.neighbors(at) {
            if from_v[w] + 1 == from_v[at] {
                current.push(w);
                walk(g, from_v, current, paths, cap)?;
                current.pop();
            }
        }
        Ok(())
    }
    walk(g, &from_v, &mut current, &mut paths, cap)?;
    Ok(paths)
}

/// Lines carrying at least one vertex of `path`.
pub fn lines_touched(g: &ArrangementGraph, path: &[usize]) -> BTreeSet<usize> {
    path.iter()
        .flat_map(|&v| {
            let (a, b) = g.vertex_lines(v);
            [a, b]
        })
        .collect()
}

/// One of the four pseudoquadrants cut out by the two lines through a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pseudoquadrant {
    pub vertex: usize,
    pub lines: (usize, usize),
    /// Side of each defining line; 0 only when the target lay on that line.
    pub signs: (i8, i8),
    /// The target used to pick the quadrant lay on a defining line.
    pub boundary: bool,
}

impl Pseudoquadrant {
    /// Membership in the closed quadrant: vertices on a defining line count
    /// when their side of the other line agrees.
    pub fn contains(&self, g: &ArrangementGraph, x: usize) -> bool {
        let s1 = g.side_of_line(x, self.lines.0);
        let s2 = g.side_of_line(x, self.lines.1);
        (s1 == 0 || self.signs.0 == 0 || s1 == self.signs.0)
            && (s2 == 0 || self.signs.1 == 0 || s2 == self.signs.1)
    }

    pub fn contains_open(&self, g: &ArrangementGraph, x: usize) -> bool {
        g.side_of_line(x, self.lines.0) == self.signs.0
            && g.side_of_line(x, self.lines.1) == self.signs.1
            && self.signs.0 != 0
            && self.signs.1 != 0
    }
}

/// The quadrant at `w` that holds `target`.
pub fn quadrant_of(g: &ArrangementGraph, w: usize, target: usize) -> Pseudoquadrant {
    let lines = g.vertex_lines(w);
    let signs = (g.side_of_line(target, lines.0), g.side_of_line(target, lines.1));
    Pseudoquadrant {
        vertex: w,
        lines,
        signs,
        boundary: signs.0 == 0 || signs.1 == 0,
    }
}

/// Closed `Q_uv`: the quadrant at `u` holding `v` intersected with the
/// quadrant at `v` holding `u`.
pub fn in_q_uv(g: &ArrangementGraph, u: usize, v: usize, x: usize) -> bool {
    quadrant_of(g, u, v).contains(g, x) && quadrant_of(g, v, u).contains(g, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::star_construction;
    use crate::graph::{build_from_arrangement, build_from_wiring, outer_face_vertices};
    use crate::wiring::{enumerate_all, WiringDiagram};

    fn triangle() -> ArrangementGraph {
        build_from_wiring(&WiringDiagram::new(3, vec![1, 2, 1]).unwrap()).unwrap()
    }

    #[test]
    fn triangle_report() {
        let g = triangle();
        let r = all_distances(&g);
        assert_eq!(r.diameter, 1);
        assert_eq!(r.radius, 1);
        assert_eq!(r.diametrical.len(), 3);
        for u in 0..3 {
            let ecc = r.eccentric_vertices_of(u);
            assert_eq!(ecc, (0..3).filter(|&v| v != u).collect());
        }
    }

    #[test]
    fn radius_window() {
        assert_eq!(conjectured_radius_window(5), (2, 3));
        assert_eq!(conjectured_radius_window(7), (3, 4));
        assert_eq!(conjectured_radius_window(9), (4, 6));
    }

    #[test]
    fn four_line_diameter() {
        for d in enumerate_all(4, false).unwrap() {
            assert_eq!(all_distances(&build_from_wiring(&d).unwrap()).diameter, 2);
        }
    }

    #[test]
    fn star_five_span_endpoints() {
        let g = build_from_arrangement(&star_construction(5).unwrap()).unwrap();
        let r = all_distances(&g);
        assert_eq!(r.diameter, 3);
        for l in 0..5 {
            let order = g.line_order(l);
            let (a, b) = (order[0], order[order.len() - 1]);
            assert_eq!(r.dist[a][b], 3);
            // two lines pass through the endpoints besides l, leaving n − 3
            assert_eq!(separating_line_count(&g, a, b), 2);
        }
        // a 5-cycle with a triangle on each edge: every eccentricity is 3
        assert!(r.ecc.iter().all(|&e| e == 3));
        let all: BTreeSet<usize> = (0..10).collect();
        assert_eq!(diametrical_vertices(&r), all);
        assert_eq!(outer_face_vertices(&g).unwrap(), all);
    }

    #[test]
    fn adjacent_vertices_single_path() {
        let g = triangle();
        let paths = all_shortest_paths(&g, 0, 1, DEFAULT_PATH_CAP).unwrap();
        assert_eq!(paths, vec![vec![0, 1]]);
        assert_eq!(separating_line_count(&g, 0, 1), 0);
        assert!(matches!(all_shortest_paths(&g, 0, 0, 10), Err(MetricsError::SameVertex(0))));
    }

    #[test]
    fn path_cap_is_enforced() {
        // opposite corners of a 4-line arrangement have two shortest paths
        let g = build_from_wiring(&WiringDiagram::new(4, vec![1, 3, 2, 1, 3, 2]).unwrap()).unwrap();
        let r = all_distances(&g);
        let (u, v) = (0..6)
            .flat_map(|u| (0..6).map(move |v| (u, v)))
            .find(|&(u, v)| u != v && all_shortest_paths(&g, u, v, 100).unwrap().len() > 1)
            .expect("some pair has two shortest paths");
        assert!(r.dist[u][v] >= 2);
        assert!(matches!(
            all_shortest_paths(&g, u, v, 1),
            Err(MetricsError::PathCapExceeded { cap: 1 })
        ));
    }

    #[test]
    fn quadrant_boundary_flag() {
        let g = triangle();
        // in a triangle every other vertex shares a line with w
        let q = quadrant_of(&g, 0, 1);
        assert!(q.boundary);
        assert!(q.contains(&g, 1));
    }

    #[test]
    fn open_quadrants_partition() {
        let g = build_from_arrangement(&star_construction(7).unwrap()).unwrap();
        for w in (0..g.vertex_count()).filter(|&w| g.degree(w) == 4) {
            let (a, b) = g.vertex_lines(w);
            for x in 0..g.vertex_count() {
                if g.is_on_line(x, a) || g.is_on_line(x, b) {
                    continue;
                }
                let hits = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
                    .into_iter()
                    .filter(|&signs| {
                        Pseudoquadrant { vertex: w, lines: (a, b), signs, boundary: false }
                            .contains_open(&g, x)
                    })
                    .count();
                assert_eq!(hits, 1);
            }
        }
    }

    #[test]
    fn sides_agree_across_representations() {
        // the same arrangement as lines and as its sweep
        let a = star_construction(5).unwrap();
        let geo = build_from_arrangement(&a).unwrap();
        let swept = a.sweep().unwrap();
        let wired = build_from_wiring(&swept.diagram).unwrap();
        let line_of = &swept.line_of_wire;
        for u in 0..geo.vertex_count() {
            for v in 0..geo.vertex_count() {
                if u == v {
                    continue;
                }
                let map = |x: usize| {
                    let (i, j) = wired.vertex_lines(x);
                    geo.vertex_of(line_of[i], line_of[j])
                };
                let (wu, wv) = (
                    (0..wired.vertex_count()).find(|&x| map(x) == u).unwrap(),
                    (0..wired.vertex_count()).find(|&x| map(x) == v).unwrap(),
                );
                let sep_geo = separating_lines(&geo, u, v);
                let mut sep_wired: Vec<usize> =
                    separating_lines(&wired, wu, wv).into_iter().map(|w| line_of[w]).collect();
                sep_wired.sort_unstable();
                assert_eq!(sep_geo, sep_wired);
            }
        }
    }
}

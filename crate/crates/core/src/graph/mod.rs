//! Arrangement graphs built from either representation, with a planar
//! embedding, rotation system and the cyclic order of line ends at infinity.

mod faces;
mod iso;

use std::collections::HashMap;

use num::BigRational;
use thiserror::Error;

pub use faces::{faces, one_layer_vertices, outer_face_vertices, FaceStructure};
pub use iso::{is_isomorphic, two_switch, AbstractGraph, SwitchError, ISOMORPHISM_VERTEX_CAP};

use crate::geometry::{
    cmp_angle, End, GeometryError, LineArrangement, RationalLine, RationalPoint, SimplicityViolation,
};
use crate::realizer::DegreeSequence;
use crate::wiring::{ValidationReport, WiringDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid wiring diagram: {0}")]
    InvalidWiring(ValidationReport),
    #[error("arrangement is not simple: {0}")]
    NotSimple(SimplicityViolation),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("Euler relation fails: V={vertices}, E={edges}, F={faces}")]
    Euler {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
    #[error("expected exactly one face of negative area, found {0}")]
    OuterFace(usize),
    #[error("graph has {vertices} vertices, above the cap of {cap}")]
    TooLarge { vertices: usize, cap: usize },
}

/// One end of a line, i.e. one of its two unbounded rays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LineEnd {
    pub line: usize,
    pub end: End,
}

/// Edge between two crossings that are consecutive on `line`. `support`
/// holds the interior polyline points, ordered from `a` to `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub line: usize,
    pub support: Vec<RationalPoint>,
}

/// Per-representation data for pseudohalfplane tests.
#[derive(Clone, Debug, PartialEq, Eq)]
enum SideData {
    Lines(Vec<RationalLine>),
    /// Level (1-based) of every wire in the column of each vertex.
    Wiring(Vec<Vec<usize>>),
}

#[derive(Clone, Debug)]
pub struct ArrangementGraph {
    n: usize,
    vertices: Vec<(usize, usize)>,
    line_orders: Vec<Vec<usize>>,
    adjacency: Vec<Vec<usize>>,
    coords: Vec<RationalPoint>,
    edges: Vec<Edge>,
    edge_lookup: HashMap<(usize, usize), usize>,
    rotation: Vec<Vec<usize>>,
    ends: Vec<LineEnd>,
    sides: SideData,
}

/// Vertex id of the crossing of lines `i < j` among `n` lines; ids follow
/// lexicographic order of the pair.
pub fn pair_id(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

impl ArrangementGraph {
    pub fn line_count(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The two lines through `v`, smaller first.
    pub fn vertex_lines(&self, v: usize) -> (usize, usize) {
        self.vertices[v]
    }

    pub fn vertex_of(&self, i: usize, j: usize) -> usize {
        pair_id(self.n, i, j)
    }

    pub fn is_on_line(&self, v: usize, line: usize) -> bool {
        let (i, j) = self.vertices[v];
        i == line || j == line
    }

    /// The line through `v` other than `line`.
    pub fn other_line(&self, v: usize, line: usize) -> usize {
        let (i, j) = self.vertices[v];
        if i == line {
            j
        } else {
            i
        }
    }

    /// Crossings along `line`, in the representation's orientation.
    pub fn line_order(&self, line: usize) -> &[usize] {
        &self.line_orders[line]
    }

    pub fn line_orders(&self) -> &[Vec<usize>] {
        &self.line_orders
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn coords(&self, v: usize) -> &RationalPoint {
        &self.coords[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbours of `v` in counterclockwise order.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    /// Line ends in counterclockwise order around infinity.
    pub fn ends(&self) -> &[LineEnd] {
        &self.ends
    }

    /// Vertex at the given end of a line's span.
    pub fn extreme_vertex(&self, line: usize, end: End) -> usize {
        let seq = &self.line_orders[line];
        match end {
            End::Start => seq[0],
            End::Finish => seq[seq.len() - 1],
        }
    }

    pub fn label(&self, v: usize) -> String {
        let (i, j) = self.vertices[v];
        format!("{},{}", i + 1, j + 1)
    }

    /// Polyline of the edge `u`–`v` from `u` to `v`, endpoints included.
    pub fn edge_polyline(&self, u: usize, v: usize) -> Option<Vec<RationalPoint>> {
        let &idx = self.edge_lookup.get(&(u.min(v), u.max(v)))?;
        let e = &self.edges[idx];
        let mut pts = Vec::with_capacity(e.support.len() + 2);
        pts.push(self.coords[e.a].clone());
        pts.extend(e.support.iter().cloned());
        pts.push(self.coords[e.b].clone());
        if e.a != u {
            pts.reverse();
        }
        Some(pts)
    }

    /// −1, 0 or +1: which pseudohalfplane of `line` holds `v`; 0 when `v`
    /// lies on `line`. Signs are consistent per line, not across lines.
    pub fn side_of_line(&self, v: usize, line: usize) -> i8 {
        if self.is_on_line(v, line) {
            return 0;
        }
        match &self.sides {
            SideData::Lines(lines) => lines[line].side(&self.coords[v]),
            SideData::Wiring(levels) => {
                let level = BigRational::from_integer(levels[v][line].into());
                if level > self.coords[v].y {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut degrees: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence::new(degrees).expect("sorted positive degrees")
    }

    pub fn to_abstract(&self) -> AbstractGraph {
        AbstractGraph::from_adjacency(self.adjacency.clone())
    }

    fn assemble(
        n: usize,
        coords: Vec<RationalPoint>,
        line_orders: Vec<Vec<usize>>,
        mut supports: HashMap<(usize, usize), Vec<RationalPoint>>,
        ends: Vec<LineEnd>,
        sides: SideData,
    ) -> Self {
        let vertices = all_pairs(n);
        let vcount = vertices.len();
        let mut adjacency = vec![Vec::new(); vcount];
        let mut edges = Vec::new();
        let mut edge_lookup = HashMap::new();
        for (line, order) in line_orders.iter().enumerate() {
            for w in order.windows(2) {
                let (a, b) = (w[0], w[1]);
                adjacency[a].push(b);
                adjacency[b].push(a);
                let support = supports.remove(&(a, b)).unwrap_or_default();
                edge_lookup.insert((a.min(b), a.max(b)), edges.len());
                edges.push(Edge { a, b, line, support });
            }
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        let mut g = ArrangementGraph {
            n,
            vertices,
            line_orders,
            adjacency,
            coords,
            edges,
            edge_lookup,
            rotation: Vec::new(),
            ends,
            sides,
        };
        g.rotation = (0..vcount)
            .map(|v| {
                let mut nbrs: Vec<(usize, (BigRational, BigRational))> = g.adjacency[v]
                    .iter()
                    .map(|&w| {
                        let poly = g.edge_polyline(v, w).expect("edge exists");
                        (w, poly[1].sub(&poly[0]))
                    })
                    .collect();
                nbrs.sort_by(|a, b| cmp_angle(&a.1, &b.1));
                nbrs.into_iter().map(|(w, _)| w).collect()
            })
            .collect();
        g
    }
}

/// Graph of a simple line arrangement with exact crossing coordinates and
/// straight edges.
pub fn build_from_arrangement(a: &LineArrangement) -> Result<ArrangementGraph, GraphError> {
    a.is_simple().map_err(GraphError::NotSimple)?;
    let n = a.len();
    let mut coords = Vec::with_capacity(n * (n - 1) / 2);
    for (i, j) in all_pairs(n) {
        coords.push(a.crossing(i, j)?);
    }
    let line_orders: Vec<Vec<usize>> = a
        .crossing_orders()
        .into_iter()
        .enumerate()
        .map(|(l, others)| others.into_iter().map(|o| pair_id(n, l, o)).collect())
        .collect();
    let mut ends: Vec<(LineEnd, (BigRational, BigRational))> = Vec::with_capacity(2 * n);
    for (line, l) in a.lines().iter().enumerate() {
        let (dx, dy) = l.direction();
        ends.push((LineEnd { line, end: End::Start }, (-dx.clone(), -dy.clone())));
        ends.push((LineEnd { line, end: End::Finish }, (dx, dy)));
    }
    ends.sort_by(|a, b| cmp_angle(&a.1, &b.1));
    Ok(ArrangementGraph::assemble(
        n,
        coords,
        line_orders,
        HashMap::new(),
        ends.into_iter().map(|(e, _)| e).collect(),
        SideData::Lines(a.lines().to_vec()),
    ))
}

/// Graph of a wiring diagram. The crossing at step `t` sits at
/// `(t, p + 1/2)` for swap position `p`; wires run at integer heights
/// between crossings, so every angle at a crossing is a right angle.
pub fn build_from_wiring(d: &WiringDiagram) -> Result<ArrangementGraph, GraphError> {
    let report = d.validate();
    if !report.is_ok() {
        return Err(GraphError::InvalidWiring(report));
    }
    let n = d.n;
    let half = BigRational::new(1.into(), 2.into());
    let int = |k: usize| BigRational::from_integer(k.into());
    let vcount = n * (n - 1) / 2;
    let mut coords = vec![RationalPoint::from_ints(0, 0); vcount];
    let mut level_at = vec![Vec::new(); vcount];
    // per wire: (vertex, column, level after the crossing)
    let mut visits: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];
    let mut levels: Vec<usize> = (0..n).collect();
    let mut level_of: Vec<usize> = (1..=n).collect();
    for (idx, &p) in d.swaps.iter().enumerate() {
        let t = idx + 1;
        let (lower, upper) = (levels[p - 1], levels[p]);
        let v = pair_id(n, lower, upper);
        coords[v] = RationalPoint::new(int(t), int(p) + &half);
        level_at[v] = level_of.clone();
        visits[lower].push((v, t, p + 1));
        visits[upper].push((v, t, p));
        levels.swap(p - 1, p);
        level_of[lower] = p + 1;
        level_of[upper] = p;
    }
    let mut supports = HashMap::new();
    for wire in &visits {
        for w in wire.windows(2) {
            let ((a, t1, level), (b, t2, _)) = (w[0], w[1]);
            let first = RationalPoint::new(int(t1) + &half, int(level));
            let last = RationalPoint::new(int(t2) - &half, int(level));
            let support = if first == last { vec![first] } else { vec![first, last] };
            supports.insert((a, b), support);
        }
    }
    let line_orders = visits
        .iter()
        .map(|wire| wire.iter().map(|&(v, _, _)| v).collect())
        .collect();
    let mut ends = Vec::with_capacity(2 * n);
    for &line in &levels {
        ends.push(LineEnd { line, end: End::Finish });
    }
    for line in (0..n).rev() {
        ends.push(LineEnd { line, end: End::Start });
    }
    Ok(ArrangementGraph::assemble(
        n,
        coords,
        line_orders,
        supports,
        ends,
        SideData::Wiring(level_at),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::star_construction;

    fn wiring(n: usize, swaps: &[usize]) -> ArrangementGraph {
        build_from_wiring(&WiringDiagram::new(n, swaps.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn pair_ids_are_lexicographic() {
        let n = 5;
        let ids: Vec<usize> = all_pairs(n).into_iter().map(|(i, j)| pair_id(n, i, j)).collect();
        assert_eq!(ids, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn triangle_from_wiring() {
        let g = wiring(3, &[1, 2, 1]);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!((0..3).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn four_wire_example_degrees() {
        let g = wiring(4, &[1, 3, 2, 1, 3, 2]);
        assert_eq!(g.degree_sequence().entries(), &[4, 3, 3, 2, 2, 2]);
    }

    #[test]
    fn star_graph_counts() {
        let g = build_from_arrangement(&star_construction(5).unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 15);
        assert_eq!(g.degree_sequence().entries(), &[4, 4, 4, 4, 4, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn line_paths_have_n_minus_one_vertices() {
        let g = build_from_arrangement(&star_construction(7).unwrap()).unwrap();
        for l in 0..7 {
            let order = g.line_order(l);
            assert_eq!(order.len(), 6);
            for w in order.windows(2) {
                assert!(g.neighbors(w[0]).contains(&w[1]));
            }
        }
    }

    #[test]
    fn ends_are_antipodal() {
        for g in [
            wiring(5, &[1, 2, 1, 3, 2, 1, 4, 3, 2, 1]),
            build_from_arrangement(&star_construction(5).unwrap()).unwrap(),
        ] {
            let ends = g.ends();
            let n = g.line_count();
            assert_eq!(ends.len(), 2 * n);
            for i in 0..n {
                assert_eq!(ends[i].line, ends[i + n].line);
                assert_ne!(ends[i].end, ends[i + n].end);
            }
        }
    }

    #[test]
    fn non_simple_and_invalid_inputs_rejected() {
        let lines = vec![
            RationalLine::from_ints(1, 0, 0).unwrap(),
            RationalLine::from_ints(0, 1, 0).unwrap(),
            RationalLine::from_ints(1, 1, 0).unwrap(),
        ];
        let a = LineArrangement::from_lines_unchecked(lines);
        assert!(matches!(build_from_arrangement(&a), Err(GraphError::NotSimple(_))));
        let bad = WiringDiagram::new_unchecked(3, vec![1, 1, 2]);
        assert!(matches!(build_from_wiring(&bad), Err(GraphError::InvalidWiring(_))));
    }

    #[test]
    fn side_of_line_zero_on_line() {
        let g = wiring(4, &[1, 3, 2, 1, 3, 2]);
        for v in 0..g.vertex_count() {
            let (i, j) = g.vertex_lines(v);
            assert_eq!(g.side_of_line(v, i), 0);
            assert_eq!(g.side_of_line(v, j), 0);
        }
    }
}

//! Face traversal of the rotation system, outer face and 1-layer.

use std::collections::BTreeSet;

use num::{BigRational, Signed, Zero};

use super::{ArrangementGraph, GraphError};
use crate::geometry::RationalPoint;

/// Faces as dart cycles. Bounded faces are traced counterclockwise, so the
/// unbounded face is the single walk with negative signed area.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceStructure {
    pub faces: Vec<Vec<(usize, usize)>>,
    pub outer_face_index: usize,
}

impl FaceStructure {
    pub fn outer_face(&self) -> &[(usize, usize)] {
        &self.faces[self.outer_face_index]
    }
}

/// Traces every face of the sub-embedding induced by `active` vertices.
/// Leaving `u → v`, the next dart is `v → w` with `w` the clockwise
/// successor of `u` around `v`.
fn trace(g: &ArrangementGraph, active: &[bool]) -> Vec<Vec<(usize, usize)>> {
    let rot: Vec<Vec<usize>> = (0..g.vertex_count())
        .map(|v| {
            if !active[v] {
                return Vec::new();
            }
            g.rotation(v).iter().copied().filter(|&w| active[w]).collect()
        })
        .collect();
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut faces = Vec::new();
    for u in 0..rot.len() {
        for &v in &rot[u] {
            if seen.contains(&(u, v)) {
                continue;
            }
            let mut walk = Vec::new();
            let (mut a, mut b) = (u, v);
            while seen.insert((a, b)) {
                walk.push((a, b));
                let around = &rot[b];
                let pos = around.iter().position(|&x| x == a).expect("rotation is symmetric");
                let next = around[(pos + around.len() - 1) % around.len()];
                a = b;
                b = next;
            }
            faces.push(walk);
        }
    }
    faces
}

fn walk_polygon(g: &ArrangementGraph, walk: &[(usize, usize)]) -> Vec<RationalPoint> {
    let mut pts = Vec::new();
    for &(a, b) in walk {
        let poly = g.edge_polyline(a, b).expect("dart is an edge");
        pts.extend(poly.into_iter().take_while(|p| p != g.coords(b)));
    }
    pts
}

/// Twice the signed area of a closed polygon.
fn signed_area2(pts: &[RationalPoint]) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, p) in pts.iter().enumerate() {
        let q = &pts[(i + 1) % pts.len()];
        acc += &p.x * &q.y - &q.x * &p.y;
    }
    acc
}

/// Winding number of `polygon` around `p`; `p` must not lie on it.
fn winding_number(p: &RationalPoint, polygon: &[RationalPoint]) -> i64 {
    let mut wn = 0;
    for (i, a) in polygon.iter().enumerate() {
        let b = &polygon[(i + 1) % polygon.len()];
        let cross = (&b.x - &a.x) * (&p.y - &a.y) - (&p.x - &a.x) * (&b.y - &a.y);
        if a.y <= p.y {
            if b.y > p.y && cross.is_positive() {
                wn += 1;
            }
        } else if b.y <= p.y && cross.is_negative() {
            wn -= 1;
        }
    }
    wn
}

pub fn faces(g: &ArrangementGraph) -> Result<FaceStructure, GraphError> {
    let active = vec![true; g.vertex_count()];
    let faces = trace(g, &active);
    let (v, e, f) = (g.vertex_count(), g.edge_count(), faces.len());
    if v + f != e + 2 {
        return Err(GraphError::Euler {
            vertices: v,
            edges: e,
            faces: f,
        });
    }
    let negative: Vec<usize> = faces
        .iter()
        .enumerate()
        .filter(|(_, w)| signed_area2(&walk_polygon(g, w)).is_negative())
        .map(|(i, _)| i)
        .collect();
    if negative.len() != 1 {
        return Err(GraphError::OuterFace(negative.len()));
    }
    Ok(FaceStructure {
        faces,
        outer_face_index: negative[0],
    })
}

/// Vertices on the unbounded face of the realization.
pub fn outer_face_vertices(g: &ArrangementGraph) -> Result<BTreeSet<usize>, GraphError> {
    let fs = faces(g)?;
    Ok(fs.outer_face().iter().map(|&(a, _)| a).collect())
}

/// Outer-face vertices of the embedding left after deleting every outer-face
/// vertex and its incident edges. The remainder may be disconnected; a
/// component counts only if no other component encloses it.
pub fn one_layer_vertices(g: &ArrangementGraph) -> Result<BTreeSet<usize>, GraphError> {
    let outer = outer_face_vertices(g)?;
    let vcount = g.vertex_count();
    let active: Vec<bool> = (0..vcount).map(|v| !outer.contains(&v)).collect();

    let mut component = vec![usize::MAX; vcount];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for s in 0..vcount {
        if !active[s] || component[s] != usize::MAX {
            continue;
        }
        let id = members.len();
        let mut stack = vec![s];
        let mut list = Vec::new();
        component[s] = id;
        while let Some(v) = stack.pop() {
            list.push(v);
            for &w in g.neighbors(v) {
                if active[w] && component[w] == usize::MAX {
                    component[w] = id;
                    stack.push(w);
                }
            }
        }
        list.sort_unstable();
        members.push(list);
    }

    // outer walk of each component, or None for an isolated vertex
    let mut boundary: Vec<Option<(Vec<usize>, Vec<RationalPoint>)>> = vec![None; members.len()];
    for walk in trace(g, &active) {
        let poly = walk_polygon(g, &walk);
        if signed_area2(&poly).is_negative() {
            let c = component[walk[0].0];
            boundary[c] = Some((walk.iter().map(|&(a, _)| a).collect(), poly));
        }
    }

    let mut layer = BTreeSet::new();
    for (c, list) in members.iter().enumerate() {
        let probe = g.coords(list[0]);
        let enclosed = boundary.iter().enumerate().any(|(d, b)| {
            d != c
                && b
                    .as_ref()
                    .is_some_and(|(_, poly)| winding_number(probe, poly) != 0)
        });
        if enclosed {
            continue;
        }
        match &boundary[c] {
            Some((verts, _)) => layer.extend(verts.iter().copied()),
            None => layer.extend(list.iter().copied()),
        }
    }
    Ok(layer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::star_construction;
    use crate::graph::{build_from_arrangement, build_from_wiring};
    use crate::wiring::{enumerate_all, WiringDiagram};

    #[test]
    fn triangle_faces() {
        let g = build_from_wiring(&WiringDiagram::new(3, vec![1, 2, 1]).unwrap()).unwrap();
        let fs = faces(&g).unwrap();
        assert_eq!(fs.faces.len(), 2);
        assert_eq!(fs.outer_face().len(), 3);
        assert_eq!(outer_face_vertices(&g).unwrap().len(), 3);
        assert!(one_layer_vertices(&g).unwrap().is_empty());
    }

    #[test]
    fn star_faces_and_layers() {
        let g = build_from_arrangement(&star_construction(5).unwrap()).unwrap();
        assert_eq!(faces(&g).unwrap().faces.len(), 7);
        // the star outline runs through the tips and the concave corners,
        // so every vertex is on the unbounded face
        let outer = outer_face_vertices(&g).unwrap();
        assert_eq!(outer, (0..10).collect());
        assert!(one_layer_vertices(&g).unwrap().is_empty());
    }

    #[test]
    fn star7_layer_nonempty_and_disjoint() {
        let g = build_from_arrangement(&star_construction(7).unwrap()).unwrap();
        let outer = outer_face_vertices(&g).unwrap();
        let layer = one_layer_vertices(&g).unwrap();
        assert!(!layer.is_empty());
        assert!(layer.is_disjoint(&outer));
    }

    #[test]
    fn four_wire_faces() {
        for d in enumerate_all(4, false).unwrap() {
            let g = build_from_wiring(&d).unwrap();
            assert_eq!(faces(&g).unwrap().faces.len(), 4);
            let outer = outer_face_vertices(&g).unwrap();
            for v in 0..g.vertex_count() {
                if g.degree(v) < 4 {
                    assert!(outer.contains(&v));
                }
            }
        }
    }

    #[test]
    fn every_dart_in_one_face() {
        for d in enumerate_all(5, false).unwrap().step_by(37) {
            let g = build_from_wiring(&d).unwrap();
            let fs = faces(&g).unwrap();
            let darts: usize = fs.faces.iter().map(Vec::len).sum();
            assert_eq!(darts, 2 * g.edge_count());
        }
    }

    #[test]
    fn winding_of_square() {
        let sq = vec![
            RationalPoint::from_ints(0, 0),
            RationalPoint::from_ints(2, 0),
            RationalPoint::from_ints(2, 2),
            RationalPoint::from_ints(0, 2),
        ];
        assert_eq!(winding_number(&RationalPoint::from_ints(1, 1), &sq), 1);
        assert_eq!(winding_number(&RationalPoint::from_ints(3, 1), &sq), 0);
        let rev: Vec<_> = sq.into_iter().rev().collect();
        assert_eq!(winding_number(&RationalPoint::from_ints(1, 1), &rev), -1);
    }
}

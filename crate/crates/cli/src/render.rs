//! SVG and DOT output.

use std::collections::BTreeSet;
use std::fmt::Write;

use pseudoline::graph::ArrangementGraph;
use pseudoline::WiringDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    Wiring,
    Arrangement,
    Graph,
}

#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub target: Target,
    pub width: f64,
    pub height: f64,
    pub label_lines: bool,
    pub mark_outer: bool,
    pub mark_diametrical: bool,
}

impl RenderSpec {
    pub fn validate(&self) -> Result<(), String> {
        if self.width > 0.0 && self.height > 0.0 && self.width.is_finite() && self.height.is_finite() {
            Ok(())
        } else {
            Err(format!("canvas must be positive, got {} x {}", self.width, self.height))
        }
    }
}

type Pt = (f64, f64);

/// Wire `w` as a polyline: flat between crossings, diagonal through them.
fn wire_paths(d: &WiringDiagram) -> Vec<Vec<Pt>> {
    let n = d.n;
    let mut level_of: Vec<usize> = (1..=n).collect();
    let mut paths: Vec<Vec<Pt>> = (0..n).map(|w| vec![(0.0, level_of[w] as f64)]).collect();
    let mut at_level: Vec<usize> = (0..n).collect();
    for (idx, &p) in d.swaps.iter().enumerate() {
        let t = (idx + 1) as f64;
        let (lo, hi) = (at_level[p - 1], at_level[p]);
        for (w, from, to) in [(lo, p, p + 1), (hi, p + 1, p)] {
            paths[w].push((t - 0.5, from as f64));
            paths[w].push((t + 0.5, to as f64));
        }
        at_level.swap(p - 1, p);
        level_of[lo] = p + 1;
        level_of[hi] = p;
    }
    let end = (d.swaps.len() + 1) as f64;
    for (w, path) in paths.iter_mut().enumerate() {
        path.push((end, level_of[w] as f64));
    }
    paths
}

/// Span of each line through its crossings, following edge polylines.
fn span_paths(g: &ArrangementGraph) -> Vec<Vec<Pt>> {
    g.line_orders()
        .iter()
        .map(|order| {
            let mut pts = vec![g.coords(order[0]).to_f64()];
            for w in order.windows(2) {
                let poly = g.edge_polyline(w[0], w[1]).expect("consecutive crossings share an edge");
                pts.extend(poly[1..].iter().map(|p| p.to_f64()));
            }
            pts
        })
        .collect()
}

fn min_gap(points: &[Pt]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let d = ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt();
            if d > 0.0 {
                best = best.min(d);
            }
        }
    }
    if best.is_finite() {
        best
    } else {
        1.0
    }
}

fn fmt_pts(pts: &[Pt]) -> String {
    pts.iter()
        .map(|&(x, y)| format!("{:.6},{:.6}", x, -y))
        .collect::<Vec<_>>()
        .join(" ")
}

const PALETTE: [&str; 8] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
];

/// Renders `g`; for the wiring target, `wiring` must be the diagram `g`
/// was built from.
pub fn svg(
    g: &ArrangementGraph,
    wiring: Option<&WiringDiagram>,
    spec: &RenderSpec,
    outer: &BTreeSet<usize>,
    diametrical: &BTreeSet<usize>,
) -> String {
    let vertices: Vec<Pt> = (0..g.vertex_count()).map(|v| g.coords(v).to_f64()).collect();
    let curves = match (spec.target, wiring) {
        (Target::Wiring, Some(d)) => wire_paths(d),
        _ => span_paths(g),
    };
    let all: Vec<Pt> = curves.iter().flatten().chain(&vertices).copied().collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let (w, h) = ((x1 - x0).max(1e-9), (y1 - y0).max(1e-9));
    let (mx, my) = (0.05 * w, 0.05 * h);
    let r = (0.25 * min_gap(&vertices)).min(0.05 * w.max(h));
    let stroke = r / 3.0;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{:.6} {:.6} {:.6} {:.6}" preserveAspectRatio="xMidYMid meet">"#,
        spec.width,
        spec.height,
        x0 - mx,
        -y1 - my,
        w + 2.0 * mx,
        h + 2.0 * my
    )
    .unwrap();
    writeln!(out, r#"<g fill="none" stroke-width="{stroke:.6}" stroke-linejoin="round">"#).unwrap();
    for (l, pts) in curves.iter().enumerate() {
        let colour = if spec.target == Target::Graph { "#444444" } else { PALETTE[l % PALETTE.len()] };
        writeln!(out, r#"<polyline class="line" data-line="{}" stroke="{colour}" points="{}"/>"#, l + 1, fmt_pts(pts)).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    if spec.label_lines {
        let size = 2.0 * r;
        for (l, pts) in curves.iter().enumerate() {
            let (x, y) = pts[0];
            writeln!(
                out,
                r#"<text x="{:.6}" y="{:.6}" font-size="{size:.6}" text-anchor="end">{}</text>"#,
                x - r,
                -y,
                l + 1
            )
            .unwrap();
        }
    }
    for (v, &(x, y)) in vertices.iter().enumerate() {
        let is_outer = spec.mark_outer && outer.contains(&v);
        let fill = if is_outer { "#d6604d" } else { "#ffffff" };
        let mut attrs = format!(r##"fill="{fill}" stroke="#000000" stroke-width="{:.6}""##, stroke / 2.0);
        if is_outer {
            attrs.push_str(r#" class="outer""#);
        }
        writeln!(
            out,
            r#"<circle cx="{x:.6}" cy="{:.6}" r="{r:.6}" data-vertex="{}" {attrs}/>"#,
            -y,
            g.label(v)
        )
        .unwrap();
        if spec.mark_diametrical && diametrical.contains(&v) {
            writeln!(
                out,
                r##"<circle class="diametrical" cx="{x:.6}" cy="{:.6}" r="{:.6}" fill="none" stroke="#2166ac" stroke-width="{:.6}"/>"##,
                -y,
                1.6 * r,
                stroke / 2.0
            )
            .unwrap();
        }
        if spec.target == Target::Graph {
            writeln!(
                out,
                r#"<text x="{x:.6}" y="{:.6}" font-size="{:.6}" text-anchor="middle">{}</text>"#,
                -y - 1.3 * r,
                0.9 * r,
                g.label(v)
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Undirected DOT graph with vertices named by line pair.
pub fn dot(g: &ArrangementGraph, outer: &BTreeSet<usize>, diametrical: Option<&BTreeSet<usize>>) -> String {
    let mut out = String::from("graph arrangement {\n  node [shape=circle];\n");
    for v in 0..g.vertex_count() {
        let mut attrs = vec![format!("degree={}", g.degree(v))];
        if outer.contains(&v) {
            attrs.push("outer=true".into());
            attrs.push("style=filled".into());
            attrs.push("fillcolor=\"#d6604d\"".into());
        }
        if diametrical.is_some_and(|d| d.contains(&v)) {
            attrs.push("diametrical=true".into());
            attrs.push("penwidth=3".into());
        }
        writeln!(out, "  \"{}\" [{}];", g.label(v), attrs.join(", ")).unwrap();
    }
    for e in g.edges() {
        writeln!(out, "  \"{}\" -- \"{}\" [line={}];", g.label(e.a), g.label(e.b), e.line + 1).unwrap();
    }
    out.push_str("}\n");
    out
}

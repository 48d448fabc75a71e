//! Deterministic SVG and DOT figures.
//!
//! Built-in lattices use fixed planar embeddings (the honeycomb with unit
//! edges, the square/octagon tiling with unit squares). Fisher images put
//! each triangle corner a fixed fraction of the way along its edge.

use std::fmt::Write;

use saw_core::fisher::{FisherResult, GasketGraph};
use saw_core::lattice::{BallGraph, Colour, EdgeOrigin, LatticeSpec, VertexId};

const BANNER: &str = concat!("<!-- saw-cli ", env!("CARGO_PKG_VERSION"), " -->");
const WIDTH: f64 = 640.0;
const MARGIN: f64 = 24.0;
const CORNER: f64 = 0.3;

type P = [f64; 2];

/// Planar positions for the translation basis and the cell vertices.
#[derive(Clone, Debug)]
pub struct Embedding {
    basis: Vec<P>,
    local: Vec<P>,
}

impl Embedding {
    /// The fixed embedding of a built-in, or a generic one for other periodic
    /// specs. Aperiodic specs have none.
    pub fn for_spec(spec: &LatticeSpec) -> Option<Self> {
        if spec.aperiodic.is_some() {
            return None;
        }
        let s3 = 3f64.sqrt();
        let (basis, local) = match spec.name.as_str() {
            "hexagonal" => (vec![[s3, 0.0], [s3 / 2.0, 1.5]], vec![[0.0, 0.0], [s3 / 2.0, 0.5]]),
            "ladder" => (vec![[1.0, 0.0]], vec![[0.0, 0.0], [0.0, 1.0]]),
            "loop3" => (vec![[2.0, 0.0]], vec![[0.0, 0.0], [1.0, 0.0]]),
            "line" => (vec![[1.0, 0.0]], vec![[0.0, 0.0]]),
            "square_octagon" => {
                let h = 0.5f64.sqrt();
                let l = 1.0 + 2f64.sqrt();
                (vec![[l, 0.0], [0.0, l]], vec![[h, 0.0], [0.0, h], [-h, 0.0], [0.0, -h]])
            }
            _ => return Some(Self::generic(spec)),
        };
        (local.len() == spec.vertices.len()).then_some(Embedding { basis, local })
    }

    fn generic(spec: &LatticeSpec) -> Self {
        let basis = (0..spec.dimension)
            .map(|i| {
                let a = i as f64 * std::f64::consts::PI / (spec.dimension.max(2) as f64);
                [2.0 * a.cos(), 2.0 * a.sin()]
            })
            .collect();
        let n = spec.vertices.len();
        let local = (0..n)
            .map(|i| {
                if n == 1 {
                    return [0.0, 0.0];
                }
                let a = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                [0.5 * a.cos(), 0.5 * a.sin()]
            })
            .collect();
        Embedding { basis, local }
    }

    fn shift(&self, cell: &[i64]) -> P {
        let mut p = [0.0, 0.0];
        for (c, b) in cell.iter().zip(&self.basis) {
            p[0] += *c as f64 * b[0];
            p[1] += *c as f64 * b[1];
        }
        p
    }

    pub fn position(&self, v: &VertexId) -> P {
        let s = self.shift(&v.cell);
        let l = self.local.get(v.local).copied().unwrap_or([0.0, 0.0]);
        [s[0] + l[0], s[1] + l[1]]
    }

    /// Embedding of the transformed spec, derived from this one.
    pub fn fisher(&self, original: &LatticeSpec, f: &FisherResult) -> Self {
        let mut towards: Vec<Vec<P>> = vec![Vec::new(); original.vertices.len()];
        for e in &original.edges {
            let off = self.shift(&e.offset);
            let (pu, pv) = (self.local[e.u], self.local[e.v]);
            towards[e.u].push([pv[0] + off[0], pv[1] + off[1]]);
            towards[e.v].push([pu[0] - off[0], pu[1] - off[1]]);
        }
        let mut local = vec![[0.0, 0.0]; f.transformed.vertices.len()];
        for (l, corners) in f.maps.vertex_map.iter().enumerate() {
            let c = self.local[l];
            if corners.len() == 1 {
                local[corners[0]] = c;
                continue;
            }
            for (corner, t) in corners.iter().zip(&towards[l]) {
                local[*corner] = [c[0] + CORNER * (t[0] - c[0]), c[1] + CORNER * (t[1] - c[1])];
            }
        }
        Embedding {
            basis: self.basis.clone(),
            local,
        }
    }
}

/// Rings by BFS depth, vertices ordered by label within a ring.
fn radial_layout(ball: &BallGraph) -> Vec<P> {
    let mut order: Vec<usize> = (0..ball.vertex_count()).collect();
    order.sort_by(|&a, &b| (ball.depth[a], &ball.vertices[a]).cmp(&(ball.depth[b], &ball.vertices[b])));
    let mut pos = vec![[0.0, 0.0]; ball.vertex_count()];
    let mut i = 0;
    while i < order.len() {
        let d = ball.depth[order[i]];
        let ring: Vec<usize> = order[i..].iter().copied().take_while(|&v| ball.depth[v] == d).collect();
        for (k, &v) in ring.iter().enumerate() {
            let a = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / ring.len() as f64;
            pos[v] = [d as f64 * a.cos(), d as f64 * a.sin()];
        }
        i += ring.len();
    }
    pos
}

struct Frame {
    min: P,
    scale: f64,
    height: f64,
}

impl Frame {
    fn fit(points: impl Iterator<Item = P>) -> Self {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in points {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        if !lo[0].is_finite() {
            lo = [0.0, 0.0];
            hi = [1.0, 1.0];
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
        let scale = (WIDTH - 2.0 * MARGIN) / span;
        Frame {
            min: lo,
            scale,
            height: (hi[1] - lo[1]) * scale + 2.0 * MARGIN,
        }
    }

    /// SVG coordinates, y pointing up in the model.
    fn map(&self, p: P) -> P {
        [
            MARGIN + (p[0] - self.min[0]) * self.scale,
            self.height - MARGIN - (p[1] - self.min[1]) * self.scale,
        ]
    }
}

fn header(out: &mut String, title: &str, height: f64) {
    let _ = writeln!(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{height:.1}\" viewBox=\"0 0 {WIDTH} {height:.1}\">");
    let _ = writeln!(out, "{BANNER}");
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn line(out: &mut String, a: P, b: P, style: &str) {
    let _ = writeln!(
        out,
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" {style}/>",
        a[0], a[1], b[0], b[1]
    );
}

fn dot(out: &mut String, p: P, r: f64, fill: &str) {
    let _ = writeln!(
        out,
        "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{r:.1}\" fill=\"{fill}\" stroke=\"black\"/>",
        p[0], p[1]
    );
}

/// A ball drawn with the lattice's embedding. Triangle edges are red,
/// seed vertices are ringed.
pub fn ball_svg(ball: &BallGraph, embedding: Option<&Embedding>) -> String {
    let model: Vec<P> = match embedding {
        Some(e) => ball.vertices.iter().map(|v| e.position(v)).collect(),
        None => radial_layout(ball),
    };
    let frame = Frame::fit(model.iter().copied());
    let pos: Vec<P> = model.iter().map(|&p| frame.map(p)).collect();
    let mut out = String::new();
    header(&mut out, &format!("{} ball of radius {}", ball.spec_name, ball.radius), frame.height);
    for e in &ball.edges {
        let style = match e.mid.origin {
            Some(EdgeOrigin::Triangle) => "stroke=\"#c0392b\" stroke-width=\"2\"",
            _ => "stroke=\"black\" stroke-width=\"1.5\"",
        };
        line(&mut out, pos[e.ends[0] as usize], pos[e.ends[1] as usize], style);
    }
    for (i, p) in pos.iter().enumerate() {
        let fill = match ball.colours[i] {
            Colour::Black => "black",
            Colour::White => "white",
            Colour::None => "#7f8c8d",
        };
        dot(&mut out, *p, 3.5, fill);
    }
    for &s in &ball.seed {
        let _ = writeln!(
            out,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"7\" fill=\"none\" stroke=\"#2980b9\" stroke-width=\"2\"/>",
            pos[s][0], pos[s][1]
        );
    }
    out.push_str("</svg>\n");
    out
}

pub fn gasket_svg(g: &GasketGraph, k: usize) -> String {
    let frame = Frame::fit(g.positions.iter().copied().chain(g.stubs.iter().map(|s| s.1)));
    let mut out = String::new();
    header(&mut out, &format!("gasket iterate {k}"), frame.height);
    for &(a, b) in &g.edges {
        line(&mut out, frame.map(g.positions[a]), frame.map(g.positions[b]), "stroke=\"black\"");
    }
    for (v, tip) in &g.stubs {
        line(
            &mut out,
            frame.map(g.positions[*v]),
            frame.map(*tip),
            "stroke=\"black\" stroke-dasharray=\"3,3\"",
        );
    }
    for p in &g.positions {
        dot(&mut out, frame.map(*p), 2.0, "black");
    }
    out.push_str("</svg>\n");
    out
}

/// DOT with pinned positions, for `neato -n`.
pub fn gasket_dot(g: &GasketGraph, k: usize) -> String {
    let mut out = format!("graph \"gasket_{k}\" {{\n  node [shape=point];\n");
    for (i, p) in g.positions.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [pos=\"{:.6},{:.6}!\"];", p[0], p[1]);
    }
    for (i, (v, tip)) in g.stubs.iter().enumerate() {
        let _ = writeln!(out, "  s{i} [pos=\"{:.6},{:.6}!\", style=invis];", tip[0], tip[1]);
        let _ = writeln!(out, "  n{v} -- s{i} [style=dashed];");
    }
    for (a, b) in &g.edges {
        let _ = writeln!(out, "  n{a} -- n{b};");
    }
    out.push_str("}\n");
    out
}

pub struct Curve {
    pub label: String,
    pub points: Vec<P>,
    pub colour: &'static str,
}

/// Line plot with optional dashed horizontal reference lines.
pub fn plot_svg(title: &str, x_label: &str, curves: &[Curve], hlines: &[(String, f64)]) -> String {
    let (w, h) = (WIDTH, 420.0);
    // The legend gets its own strip under the title.
    let (left, right, top, bottom) = (70.0, 20.0, 34.0 + 16.0 * curves.len() as f64, 50.0);
    let all = curves.iter().flat_map(|c| c.points.iter().copied());
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in all.chain(hlines.iter().map(|l| [f64::NAN, l.1])) {
        for k in 0..2 {
            if p[k].is_finite() {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
    }
    for k in 0..2 {
        if !lo[k].is_finite() {
            lo[k] = 0.0;
            hi[k] = 1.0;
        }
        if hi[k] - lo[k] < 1e-12 {
            lo[k] -= 0.5;
            hi[k] += 0.5;
        }
    }
    let pad = 0.05 * (hi[1] - lo[1]);
    lo[1] -= pad;
    hi[1] += pad;
    let sx = |x: f64| left + (x - lo[0]) / (hi[0] - lo[0]) * (w - left - right);
    let sy = |y: f64| h - bottom - (y - lo[1]) / (hi[1] - lo[1]) * (h - top - bottom);
    let mut out = String::new();
    let _ = writeln!(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" font-family=\"sans-serif\" font-size=\"12\">");
    let _ = writeln!(out, "{BANNER}");
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    let _ = writeln!(out, "<text x=\"{}\" y=\"18\" text-anchor=\"middle\">{}</text>", w / 2.0, escape(title));
    line(&mut out, [left, h - bottom], [w - right, h - bottom], "stroke=\"black\"");
    line(&mut out, [left, top], [left, h - bottom], "stroke=\"black\"");
    for i in 0..=4 {
        let x = lo[0] + (hi[0] - lo[0]) * i as f64 / 4.0;
        let y = lo[1] + (hi[1] - lo[1]) * i as f64 / 4.0;
        let _ = writeln!(out, "<text x=\"{:.1}\" y=\"{}\" text-anchor=\"middle\">{}</text>", sx(x), h - bottom + 16.0, tick(x));
        let _ = writeln!(out, "<text x=\"{}\" y=\"{:.1}\" text-anchor=\"end\">{}</text>", left - 6.0, sy(y) + 4.0, tick(y));
    }
    let _ = writeln!(out, "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>", w / 2.0, h - 12.0, escape(x_label));
    for (label, y) in hlines {
        line(&mut out, [left, sy(*y)], [w - right, sy(*y)], "stroke=\"#7f8c8d\" stroke-dasharray=\"6,4\"");
        let _ = writeln!(out, "<text x=\"{}\" y=\"{:.1}\" fill=\"#7f8c8d\">{}</text>", left + 6.0, sy(*y) - 4.0, escape(label));
    }
    for (i, c) in curves.iter().enumerate() {
        let pts: Vec<String> = c
            .points
            .iter()
            .filter(|p| p[0].is_finite() && p[1].is_finite())
            .map(|p| format!("{:.2},{:.2}", sx(p[0]), sy(p[1])))
            .collect();
        let _ = writeln!(out, "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>", c.colour, pts.join(" "));
        for p in &pts {
            let (x, y) = p.split_once(',').unwrap();
            let _ = writeln!(out, "<circle cx=\"{x}\" cy=\"{y}\" r=\"2\" fill=\"{}\"/>", c.colour);
        }
        let ly = 22.0 + 16.0 * (i as f64 + 1.0);
        let _ = writeln!(out, "<text x=\"{left}\" y=\"{ly:.1}\" fill=\"{}\">{}</text>", c.colour, escape(&c.label));
    }
    out.push_str("</svg>\n");
    out
}

fn tick(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.to_string() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use saw_core::fisher::{fisher_black, gasket_iterate};
    use saw_core::lattice::{build_ball, builtin};

    #[test]
    fn honeycomb_edges_have_unit_length() {
        let spec = builtin("hexagonal").unwrap();
        let e = Embedding::for_spec(&spec).unwrap();
        let ball = build_ball(&spec, 4).unwrap();
        for edge in &ball.edges {
            let a = e.position(&ball.vertices[edge.ends[0] as usize]);
            let b = e.position(&ball.vertices[edge.ends[1] as usize]);
            assert!(((a[0] - b[0]).hypot(a[1] - b[1]) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn square_octagon_edges_have_unit_length() {
        let spec = builtin("square_octagon").unwrap();
        let e = Embedding::for_spec(&spec).unwrap();
        let ball = build_ball(&spec, 4).unwrap();
        for edge in &ball.edges {
            let a = e.position(&ball.vertices[edge.ends[0] as usize]);
            let b = e.position(&ball.vertices[edge.ends[1] as usize]);
            assert!(((a[0] - b[0]).hypot(a[1] - b[1]) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn black_fisher_triangles_are_equilateral() {
        let spec = builtin("hexagonal").unwrap();
        let f = fisher_black(&spec).unwrap();
        let e = Embedding::for_spec(&spec).unwrap().fisher(&spec, &f);
        let ball = build_ball(&f.transformed, 3).unwrap();
        let side = CORNER * 3f64.sqrt();
        for edge in ball.edges.iter().filter(|x| x.mid.origin == Some(EdgeOrigin::Triangle)) {
            let a = e.position(&ball.vertices[edge.ends[0] as usize]);
            let b = e.position(&ball.vertices[edge.ends[1] as usize]);
            assert!(((a[0] - b[0]).hypot(a[1] - b[1]) - side).abs() < 1e-12);
        }
    }

    #[test]
    fn svg_is_deterministic() {
        let spec = builtin("hexagonal").unwrap();
        let ball = build_ball(&spec, 3).unwrap();
        let e = Embedding::for_spec(&spec);
        assert_eq!(ball_svg(&ball, e.as_ref()), ball_svg(&ball, e.as_ref()));
        let g = gasket_iterate(3, 1000).unwrap();
        let svg = gasket_svg(&g, 3);
        assert_eq!(svg.matches("<circle").count(), 54);
        assert!(svg.starts_with("<svg") && svg.contains(BANNER));
    }

    #[test]
    fn tree_uses_radial_layout() {
        let spec = builtin("tree3").unwrap();
        assert!(Embedding::for_spec(&spec).is_none());
        let ball = build_ball(&spec, 3).unwrap();
        assert!(ball_svg(&ball, None).contains("<line"));
    }
}

//! SVG pictures of packings and their stairs.
//!
//! One user unit of the drawing is a hundredth of a coordinate unit and the
//! y axis points up. Triangles are split greedily into layers of pairwise
//! interior-disjoint translates, each layer with its own fill colour.

use std::fmt::Write as _;

use stairpack::geom::Point;
use stairpack::overlap::common_interior_witness;
use stairpack::rational::{one, to_f64};
use stairpack::stair::StairFamily;
use stairpack::PackingInstance;

const UNIT: f64 = 100.0;
const PALETTE: [&str; 8] =
    ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1", "#9c755f"];

/// Layer index of each triangle: the first layer holding no triangle whose
/// interior meets it.
pub fn layers(p: &PackingInstance) -> Vec<usize> {
    let offs = p.offsets();
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut out = Vec::with_capacity(offs.len());
    for (i, o) in offs.iter().enumerate() {
        let layer = members
            .iter()
            .position(|m| m.iter().all(|&j| common_interior_witness(&[o, &offs[j]], &one()).is_none()))
            .unwrap_or(members.len());
        if layer == members.len() {
            members.push(Vec::new());
        }
        members[layer].push(i);
        out.push(layer);
    }
    out
}

struct Frame {
    l: f64,
}

impl Frame {
    fn xy(&self, p: &Point) -> (f64, f64) {
        (to_f64(&p.x) * UNIT, (self.l - to_f64(&p.y)) * UNIT)
    }

    fn path(&self, pts: &[Point]) -> String {
        let mut d = String::new();
        for (n, p) in pts.iter().enumerate() {
            let (x, y) = self.xy(p);
            write!(d, "{}{x:.3} {y:.3} ", if n == 0 { "M" } else { "L" }).expect("String write");
        }
        d.push('Z');
        d
    }
}

/// The closed outline of a stair: up the left side, along the steps, down
/// the right side.
fn stair_outline(xs: &[stairpack::Rational], ys: &[stairpack::Rational]) -> Vec<Point> {
    let last = xs.len() - 1;
    let bottom = &ys[last];
    let mut pts = vec![Point::new(xs[0].clone(), bottom.clone())];
    for j in 0..last {
        pts.push(Point::new(xs[j].clone(), ys[j].clone()));
        pts.push(Point::new(xs[j + 1].clone(), ys[j].clone()));
    }
    pts.push(Point::new(xs[last].clone(), bottom.clone()));
    pts
}

pub fn render(p: &PackingInstance, stairs: Option<&StairFamily>) -> String {
    let l = f64::from(p.l());
    let frame = Frame { l };
    let size = l * UNIT;
    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).expect("String write");
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size:.0}" height="{size:.0}" viewBox="0 0 {size:.0} {size:.0}">"#
    )
    .expect("String write");
    writeln!(s, r##"<rect x="0" y="0" width="{size:.0}" height="{size:.0}" fill="white" stroke="#333" stroke-width="2"/>"##)
        .expect("String write");
    let layer = layers(p);
    writeln!(s, r#"<g id="triangles" fill-opacity="0.45" stroke="black" stroke-width="0.8">"#).expect("String write");
    for (i, t) in p.translates().enumerate() {
        let d = frame.path(&t.vertices());
        let colour = PALETTE[layer[i] % PALETTE.len()];
        writeln!(s, r#"<path id="t{i}" d="{d}" fill="{colour}"/>"#).expect("String write");
    }
    writeln!(s, "</g>").expect("String write");
    if let Some(fam) = stairs {
        writeln!(s, r##"<g id="stairs" fill="none" stroke="#222" stroke-width="1.5" stroke-dasharray="4 2">"##)
            .expect("String write");
        for (i, st) in fam.stairs.iter().enumerate() {
            let d = frame.path(&stair_outline(st.xs(), st.ys()));
            writeln!(s, r#"<path id="s{i}" d="{d}"/>"#).expect("String write");
        }
        writeln!(s, "</g>").expect("String write");
        writeln!(s, r##"<g id="corners" fill="#d62728">"##).expect("String write");
        for (i, zs) in fam.inner_corners.iter().enumerate() {
            for z in zs {
                let (x, y) = frame.xy(z);
                writeln!(s, r#"<circle data-stair="{i}" cx="{x:.3}" cy="{y:.3}" r="3"/>"#).expect("String write");
            }
        }
        writeln!(s, "</g>").expect("String write");
    }
    writeln!(s, "</svg>").expect("String write");
    s
}

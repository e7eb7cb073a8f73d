//! Circular-layout SVG drawings in the style of hand-drawn book embeddings:
//! spine vertices evenly spaced clockwise from the top, straight chords
//! colored by page.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::constructions::COLOR_NAMES;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layout::{validate, BookEmbedding};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelMode {
    /// 1-based `(p,q)` pairs of a bundle with fiber length `t`.
    Pairs { t: usize },
    Flat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub radius: f64,
    pub labels: LabelMode,
    /// Stroke color for each page index.
    pub palette: Vec<String>,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { radius: 200.0, labels: LabelMode::Flat, palette: default_palette() }
    }
}

pub fn default_palette() -> Vec<String> {
    COLOR_NAMES.iter().map(|c| c.to_string()).collect()
}

/// Fixed three-decimal output, with `-0.000` folded to `0.000`.
fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

pub fn render_svg(g: &Graph, emb: &BookEmbedding, spec: &RenderSpec) -> Result<String> {
    let n = g.vertex_count();
    if n == 0 || g.edge_count() == 0 {
        return Err(Error::InvalidSize("nothing to draw in an empty graph".into()));
    }
    if !(spec.radius.is_finite() && spec.radius > 0.0) {
        return Err(Error::InvalidSize(format!("radius {} must be positive", spec.radius)));
    }
    let report = validate(g, emb)?;
    if !report.is_valid() {
        return Err(Error::InvalidEmbedding(format!("{} violations", report.violations.len())));
    }
    if let Some(&p) = emb.pages.values().find(|&&p| p >= spec.palette.len()) {
        return Err(Error::InvalidSize(format!("palette has {} colors, page {p} needs more", spec.palette.len())));
    }

    let r = spec.radius;
    let margin = 40.0;
    let center = r + margin;
    let size = 2.0 * center;
    let point = |v: usize, radius: f64| {
        let angle = 2.0 * PI * emb.layout.position(v) as f64 / n as f64 - PI / 2.0;
        (center + radius * angle.cos(), center + radius * angle.sin())
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        num(size)
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<circle cx="{0}" cy="{0}" r="{1}" fill="none" stroke="lightgray"/>"#, num(center), num(r));
    for (e, &page) in &emb.pages {
        let (x1, y1) = point(e.u(), r);
        let (x2, y2) = point(e.v(), r);
        let _ = writeln!(
            out,
            r#"<line class="chord" data-page="{page}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="2"/>"#,
            num(x1),
            num(y1),
            num(x2),
            num(y2),
            spec.palette[page]
        );
    }
    for &v in emb.layout.order() {
        let (x, y) = point(v, r);
        let (lx, ly) = point(v, r + 18.0);
        let label = match spec.labels {
            LabelMode::Pairs { t } => format!("({},{})", v / t + 1, v % t + 1),
            LabelMode::Flat => v.to_string(),
        };
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="4" fill="black"/>"#, num(x), num(y));
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="10" text-anchor="middle" dominant-baseline="middle">{label}</text>"#,
            num(lx),
            num(ly)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::BundleSpec;
    use crate::constructions::{embed, Embedded};
    use crate::graph::cycle_graph;
    use crate::layout::CircularLayout;

    #[test]
    fn chords_use_palette() {
        let spec: BundleSpec = "s=5,t=13,phi=refl:one".parse().unwrap();
        let Embedded::Built(r) = embed(&spec).unwrap() else { panic!() };
        let svg = render_svg(&spec.graph(), &r.embedding, &RenderSpec::default()).unwrap();
        let colors: std::collections::BTreeSet<&str> = svg
            .lines()
            .filter(|l| l.contains("class=\"chord\""))
            .map(|l| l.split("stroke=\"").nth(1).unwrap().split('"').next().unwrap())
            .collect();
        assert_eq!(colors.len(), 5);
        assert_eq!(svg.matches("<text").count(), 65);
    }

    #[test]
    fn pair_labels() {
        let g = cycle_graph(4).unwrap();
        let emb = BookEmbedding::new(
            CircularLayout::new(vec![0, 1, 2, 3]).unwrap(),
            g.edges().iter().map(|&e| (e, if e.endpoints() == (0, 3) { 1 } else { e.u() % 2 })).collect(),
            2,
        )
        .unwrap();
        let spec = RenderSpec { labels: LabelMode::Pairs { t: 2 }, ..RenderSpec::default() };
        let svg = render_svg(&g, &emb, &spec).unwrap();
        assert!(svg.contains(">(2,2)</text>"));
        assert!(svg.contains("x1=\"240.000\" y1=\"40.000\""));
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = Graph::new(2, []).unwrap();
        let emb = BookEmbedding::new(CircularLayout::new(vec![0, 1]).unwrap(), Default::default(), 1).unwrap();
        assert!(matches!(render_svg(&g, &emb, &RenderSpec::default()), Err(Error::InvalidSize(_))));

        let g = cycle_graph(4).unwrap();
        let all_zero = g.edges().iter().map(|&e| (e, 0)).collect();
        let emb = BookEmbedding::new(CircularLayout::new(vec![0, 1, 2, 3]).unwrap(), all_zero, 1).unwrap();
        assert!(matches!(render_svg(&g, &emb, &RenderSpec::default()), Err(Error::InvalidEmbedding(_))));
    }
}

//! Scatter plots of 2-D clusterings as standalone SVG.
//!
//! Unlabeled points are circles, labeled points are outlined triangles drawn
//! on top. Colors come from a fixed palette indexed by cluster id, and all
//! coordinates are printed with fixed precision, so equal inputs give
//! byte-identical files.

use std::fmt::Write as _;
use std::path::Path;

use crate::data::{Dataset, Kind, LabelSet};
use crate::error::{Error, Result};
use crate::pipeline::ClusterResult;

pub const PALETTE: [&str; 12] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22",
    "#7f7f7f", "#393b79", "#637939",
];

const SIZE: f64 = 600.0;
const MARGIN: f64 = 20.0;

pub fn scatter_svg(ds: &Dataset, res: &ClusterResult, labels: &LabelSet) -> Result<String> {
    if ds.kind() != Kind::Numeric || ds.dim() != 2 {
        return Err(Error::UnsupportedPlot {
            kind: ds.kind(),
            dim: ds.dim(),
        });
    }
    if res.assignment.len() != ds.len() {
        return Err(Error::TruthLength {
            expected: ds.len(),
            found: res.assignment.len(),
        });
    }
    let pts: Vec<(f64, f64)> = (0..ds.len())
        .map(|i| {
            let r = ds.numeric_row(i).expect("numeric");
            (r[0], r[1])
        })
        .collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    // one scale for both axes keeps shapes undistorted
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let project = |(x, y): (f64, f64)| (MARGIN + (x - x0) * scale, SIZE - MARGIN - (y - y0) * scale);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let color = |i: usize| PALETTE[res.assignment[i] % PALETTE.len()];
    let _ = writeln!(out, r#"<g id="points" stroke="none">"#);
    for (i, &p) in pts.iter().enumerate() {
        if labels.is_labeled(i) {
            continue;
        }
        let (x, y) = project(p);
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2" fill="{}"/>"#, color(i));
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g id="labeled" stroke="black" stroke-width="1">"#);
    for (i, _) in labels.iter() {
        let (x, y) = project(pts[i]);
        let _ = writeln!(
            out,
            r#"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{}"/>"#,
            x,
            y - 7.0,
            x - 6.0,
            y + 5.0,
            x + 6.0,
            y + 5.0,
            color(i)
        );
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn emit_scatter_svg(ds: &Dataset, res: &ClusterResult, labels: &LabelSet, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if path.as_os_str().is_empty() {
        return Err(Error::EmptyPath);
    }
    let svg = scatter_svg(ds, res, labels)?;
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Metric;
    use crate::pipeline::run_sdc;
    use crate::synth;
    use std::collections::BTreeSet;

    fn fills(svg: &str) -> BTreeSet<String> {
        svg.split("fill=\"")
            .skip(1)
            .map(|s| s[..s.find('"').unwrap()].to_string())
            .filter(|c| c.starts_with('#'))
            .collect()
    }

    #[test]
    fn three_groups_three_colors_three_triangles() {
        let s = synth::gaussian_blobs(&[(0.0, 0.0), (30.0, 0.0), (15.0, 25.0)], 30, 1.0, 8);
        let ls = LabelSet::new([(0, "g0"), (30, "g1"), (60, "g2")]).unwrap();
        let res = run_sdc(&s.dataset, &ls, Metric::Euclidean).unwrap();
        let svg = scatter_svg(&s.dataset, &res, &ls).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polygon").count(), 3);
        assert_eq!(svg.matches("<circle").count(), 87);
        assert_eq!(fills(&svg).len(), 3);
        assert_eq!(svg, scatter_svg(&s.dataset, &res, &ls).unwrap());
    }

    #[test]
    fn single_cluster_single_color() {
        let s = synth::gaussian_blobs(&[(0.0, 0.0), (30.0, 0.0)], 20, 1.0, 9);
        let ls = LabelSet::new([(0, "one"), (25, "one")]).unwrap();
        let res = run_sdc(&s.dataset, &ls, Metric::Euclidean).unwrap();
        assert_eq!(fills(&scatter_svg(&s.dataset, &res, &ls).unwrap()).len(), 1);
    }

    #[test]
    fn rejects_non_planar_data() {
        let ds = Dataset::numeric(vec![vec![0.0, 0.0, 0.0], vec![1.0, 1.0, 1.0]]).unwrap();
        let ls = LabelSet::new([(0, "a")]).unwrap();
        let res = run_sdc(&ds, &ls, Metric::Euclidean).unwrap();
        assert!(matches!(
            scatter_svg(&ds, &res, &ls),
            Err(Error::UnsupportedPlot { dim: 3, .. })
        ));
    }
}

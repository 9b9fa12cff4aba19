//! SVG drawings of patches: kernel shaded, each layer outlined with a
//! lighter fill.

use std::fmt::Write;

use thiserror::Error;

use crate::corona::Patch;
use crate::Point;

/// Longest pentagon edge in SVG user units.
pub const EDGE_UNITS: f64 = 100.0;

const MARGIN: f64 = 10.0;
const KERNEL_FILL: &str = "#8c8c8c";
const LAYER_FILLS: [&str; 3] = ["#e8e8e8", "#f6f6f6", "#ffffff"];

#[derive(Debug, Error, PartialEq)]
pub enum RenderError {
    #[error("patch has no tiles")]
    Empty,
    #[error("patch contains a non-finite placement")]
    NonFinite,
}

/// Six decimals, without a negative zero.
fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Renders `patch` as a standalone SVG document. The output depends only on
/// the patch (stable element order, fixed precision).
pub fn render_svg(patch: &Patch) -> Result<String, RenderError> {
    if patch.kernel.is_empty() {
        return Err(RenderError::Empty);
    }
    if patch
        .placements()
        .any(|p| !(p.x.is_finite() && p.y.is_finite() && p.theta_rad.is_finite()))
    {
        return Err(RenderError::NonFinite);
    }
    let k = EDGE_UNITS / patch.pentagon.longest_edge();
    // SVG's y axis points down
    let map = |p: Point| Point::new(p.x * k, -p.y * k);

    let mut groups: Vec<(String, &str, Vec<[Point; 5]>)> = Vec::new();
    let corners = |pl: &crate::corona::Placement| pl.corners(&patch.pentagon).map(map);
    groups.push(("kernel".into(), KERNEL_FILL, patch.kernel.iter().map(corners).collect()));
    for (i, layer) in patch.layers.iter().enumerate() {
        let fill = LAYER_FILLS[i.min(LAYER_FILLS.len() - 1)];
        groups.push((format!("layer-{}", i + 1), fill, layer.iter().map(corners).collect()));
    }

    let (mut lo, mut hi) = (Point::new(f64::INFINITY, f64::INFINITY), Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for (_, _, tiles) in &groups {
        for c in tiles.iter().flatten() {
            lo = Point::new(lo.x.min(c.x), lo.y.min(c.y));
            hi = Point::new(hi.x.max(c.x), hi.y.max(c.y));
        }
    }
    let (x0, y0) = (lo.x - MARGIN, lo.y - MARGIN);
    let (w, h) = (hi.x - lo.x + 2.0 * MARGIN, hi.y - lo.y + 2.0 * MARGIN);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{}" height="{}">"#,
        num(x0),
        num(y0),
        num(w),
        num(h),
        num(w),
        num(h)
    )
    .unwrap();
    for (id, fill, tiles) in &groups {
        writeln!(
            out,
            r##"  <g id="{id}" fill="{fill}" stroke="#000000" stroke-width="1.000000" stroke-linejoin="round">"##
        )
        .unwrap();
        for c in tiles {
            let pts: Vec<String> = c.iter().map(|p| format!("{},{}", num(p.x), num(p.y))).collect();
            writeln!(out, r#"    <polygon points="{}"/>"#, pts.join(" ")).unwrap();
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Params;
    use crate::corona::{census, PlacementModel, Placement, SearchConfig};
    use crate::solver::solve_category;

    #[test]
    fn kernel_and_layer_counts() {
        let (p, _) = solve_category(1, Params::NONE).unwrap();
        let c = census(&p, &[Placement::identity()], &SearchConfig::default()).unwrap();
        let svg = render_svg(&c[0]).unwrap();
        assert_eq!(svg.matches("<polygon").count(), c[0].tile_count());
        assert!(svg.contains(r##"id="kernel" fill="#8c8c8c""##));
        assert_eq!(svg, render_svg(&c[0]).unwrap());
    }

    #[test]
    fn longest_edge_is_one_hundred_units() {
        let (p, _) = solve_category(9, Params::NONE).unwrap();
        let svg = render_svg(&Patch::single(&p, PlacementModel::EecOnly)).unwrap();
        let line = svg.lines().find(|l| l.contains("<polygon")).unwrap();
        let pts: Vec<Point> = line
            .split('"')
            .nth(1)
            .unwrap()
            .split(' ')
            .map(|xy| {
                let (x, y) = xy.split_once(',').unwrap();
                Point::new(x.parse().unwrap(), y.parse().unwrap())
            })
            .collect();
        let longest = (0..5)
            .map(|i| pts[i].distance(pts[(i + 1) % 5]))
            .fold(0.0, f64::max);
        assert!((longest - 100.0).abs() < 1e-5);
    }

    #[test]
    fn empty_patch_is_rejected() {
        let (p, _) = solve_category(1, Params::NONE).unwrap();
        let mut patch = Patch::single(&p, PlacementModel::EecOnly);
        patch.kernel.clear();
        assert_eq!(render_svg(&patch), Err(RenderError::Empty));
    }

    #[test]
    fn no_negative_zero() {
        assert_eq!(num(-0.0000001), "0.000000");
        assert_eq!(num(1.5), "1.500000");
    }
}

//! ASCII and SVG pictures of planar cell sets.

use std::collections::BTreeSet;
use std::fmt::Write;

use edgeiso::lattice::{boundary_edges, CellSet, Point};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotPlanar(pub usize);

impl std::fmt::Display for NotPlanar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "rendering needs a 2-dimensional set, got dimension {}",
            self.0
        )
    }
}

struct Layout {
    cells: BTreeSet<(i64, i64)>,
    outer: BTreeSet<(i64, i64)>,
    edges: Vec<((i64, i64), (i64, i64))>,
    x0: i64,
    x1: i64,
    y0: i64,
    y1: i64,
}

fn layout(a: &CellSet) -> Result<Layout, NotPlanar> {
    if a.spec().dim() != 2 {
        return Err(NotPlanar(a.spec().dim()));
    }
    let cells: BTreeSet<(i64, i64)> = a.iter().map(Point::as_xy).collect();
    let edges: Vec<_> = boundary_edges(a)
        .into_iter()
        .map(|(p, q)| (p.as_xy(), q.as_xy()))
        .collect();
    let outer: BTreeSet<(i64, i64)> = edges.iter().map(|e| e.1).collect();
    let all = || cells.iter().chain(outer.iter());
    let (x0, x1) = (
        all().map(|c| c.0).min().unwrap_or(0),
        all().map(|c| c.0).max().unwrap_or(0),
    );
    let (y0, y1) = (
        all().map(|c| c.1).min().unwrap_or(0),
        all().map(|c| c.1).max().unwrap_or(0),
    );
    Ok(Layout {
        cells,
        outer,
        edges,
        x0,
        x1,
        y0,
        y1,
    })
}

/// `#` for cells, `+` for outside endpoints of boundary edges, `.` elsewhere,
/// with the row index on the left and the column index (mod 10) below.
pub fn ascii(a: &CellSet) -> Result<String, NotPlanar> {
    let l = layout(a)?;
    let label = l.y0.to_string().len().max(l.y1.to_string().len());
    let mut s = String::new();
    for y in (l.y0..=l.y1).rev() {
        let row: Vec<&str> = (l.x0..=l.x1)
            .map(|x| {
                if l.cells.contains(&(x, y)) {
                    "#"
                } else if l.outer.contains(&(x, y)) {
                    "+"
                } else {
                    "."
                }
            })
            .collect();
        writeln!(s, "{y:>label$} | {}", row.join(" ")).unwrap();
    }
    let width = 2 * (l.x1 - l.x0 + 1) as usize;
    writeln!(s, "{:>label$} +{}", "", "-".repeat(width)).unwrap();
    let digits: Vec<String> = (l.x0..=l.x1)
        .map(|x| x.rem_euclid(10).to_string())
        .collect();
    writeln!(s, "{:>label$}   {}", "", digits.join(" ")).unwrap();
    Ok(s)
}

fn edge_class(d: (i64, i64)) -> &'static str {
    match d {
        (1, 0) | (-1, 0) => "edge-h",
        (0, 1) | (0, -1) => "edge-v",
        (1, 1) | (-1, -1) => "edge-d",
        (1, -1) | (-1, 1) => "edge-a",
        _ => "edge-o",
    }
}

/// Cells as squares and boundary edges as segments between cell centres,
/// styled by direction: horizontal, vertical, and the two diagonals.
pub fn svg(a: &CellSet) -> Result<String, NotPlanar> {
    const U: i64 = 40;
    let l = layout(a)?;
    let w = (l.x1 - l.x0 + 2) * U;
    let h = (l.y1 - l.y0 + 2) * U;
    let px = |x: i64| (x - l.x0) * U + U;
    let py = |y: i64| (l.y1 - y) * U + U;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    s.push_str(
        "<style>\n\
         .cell{fill:#d5d8dc;stroke:#566573;stroke-width:1}\n\
         .axis{stroke:#000;stroke-width:2}\n\
         .edge-h{stroke:#c0392b;stroke-width:2}\n\
         .edge-v{stroke:#2471a3;stroke-width:2}\n\
         .edge-d{stroke:#229954;stroke-width:2;stroke-dasharray:6 3}\n\
         .edge-a{stroke:#b9770e;stroke-width:2;stroke-dasharray:2 3}\n\
         .edge-o{stroke:#7d3c98;stroke-width:1}\n\
         </style>\n",
    );
    let half_dims = a.spec().half_dims();
    if half_dims >= 1 {
        writeln!(
            s,
            r#"<line class="axis" x1="0" y1="{0}" x2="{w}" y2="{0}"/>"#,
            py(0) + U / 2
        )
        .unwrap();
    }
    if half_dims == 2 {
        writeln!(
            s,
            r#"<line class="axis" x1="{0}" y1="0" x2="{0}" y2="{h}"/>"#,
            px(0) - U / 2
        )
        .unwrap();
    }
    for &(x, y) in &l.cells {
        writeln!(
            s,
            r#"<rect class="cell" x="{}" y="{}" width="{U}" height="{U}"/>"#,
            px(x) - U / 2,
            py(y) - U / 2
        )
        .unwrap();
    }
    for &((x, y), (u, v)) in &l.edges {
        writeln!(
            s,
            r#"<line class="{}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            edge_class((u - x, v - y)),
            px(x),
            py(y),
            px(u),
            py(v)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_grid() {
        let a = CellSet::quadrant([(0, 0)]).unwrap();
        assert_eq!(ascii(&a).unwrap(), "1 | + +\n0 | # +\n  +----\n    0 1\n");
    }

    #[test]
    fn svg_styles_every_direction() {
        let a = CellSet::quadrant([(1, 1)]).unwrap();
        let s = svg(&a).unwrap();
        for class in ["edge-h", "edge-v", "edge-d", "edge-a"] {
            assert_eq!(
                s.matches(&format!("class=\"{class}\"")).count(),
                2,
                "{class}"
            );
        }
        assert_eq!(s.matches("class=\"cell\"").count(), 1);
    }
}

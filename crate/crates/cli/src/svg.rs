//! Deterministic SVG drawings of planar (and one-dimensional) sections.
//!
//! Cells are filled by their group in the finest regular coarsening;
//! interior walls are drawn as lines, dashed when the coarsening relaxes
//! them, and red when an overlaid assignment violates them.

use std::collections::BTreeSet;
use std::fmt::Write;

use recreg::complex::convex_hull_2d;
use recreg::{Error, Rational, Result, Scalar, Subdivision};

const SIZE: f64 = 1000.0;
const PAD: f64 = 50.0;

const PALETTE: [&str; 12] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
    "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f",
];

/// What to draw on top of the cells.
pub struct Style<'a> {
    /// Group index of every cell.
    pub group_of: &'a [usize],
    /// Walls drawn dashed.
    pub relaxed: &'a BTreeSet<usize>,
    /// Walls drawn red.
    pub violated: &'a BTreeSet<usize>,
}

/// Affine map from section coordinates onto the 1000 × 1000 canvas, with
/// the y axis pointing up.
struct Frame {
    min: [f64; 2],
    scale: f64,
    offset: [f64; 2],
}

impl Frame {
    fn fit(points: &[[f64; 2]]) -> Self {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in points {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(f64::MIN_POSITIVE);
        let scale = (SIZE - 2.0 * PAD) / span;
        let offset = [
            PAD + (SIZE - 2.0 * PAD - (hi[0] - lo[0]) * scale) / 2.0,
            PAD + (SIZE - 2.0 * PAD - (hi[1] - lo[1]) * scale) / 2.0,
        ];
        Frame {
            min: lo,
            scale,
            offset,
        }
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        let x = self.offset[0] + (p[0] - self.min[0]) * self.scale;
        let y = SIZE - (self.offset[1] + (p[1] - self.min[1]) * self.scale);
        (x, y)
    }
}

fn num(x: f64) -> String {
    // Avoid printing "-0.000000".
    let s = format!("{x:.6}");
    if s.trim_start_matches('-')
        .trim_matches(|c| c == '0' || c == '.')
        .is_empty()
    {
        "0.000000".into()
    } else {
        s
    }
}

/// Renders a subdivision of `ℝ¹` or `ℝ²`.
pub fn render(s: &Subdivision, style: &Style) -> Result<String> {
    let d = s.dimension();
    if d == 0 || d > 2 {
        return Err(Error::Precondition(format!(
            "only sections of dimension at most 2 can be plotted, this one has dimension {d}"
        )));
    }
    let points = s.config().points();
    // A line is drawn as a band whose height is a tenth of its length.
    let band = if d == 1 {
        let xs: Vec<f64> = points.iter().map(|p| p[0].to_f64_lossy()).collect();
        let span = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - xs.iter().cloned().fold(f64::INFINITY, f64::min);
        span / 20.0
    } else {
        0.0
    };
    let plane = |p: &[Rational], lift: f64| -> [f64; 2] {
        if d == 1 {
            [p[0].to_f64_lossy(), lift]
        } else {
            [p[0].to_f64_lossy(), p[1].to_f64_lossy()]
        }
    };
    let mut all: Vec<[f64; 2]> = Vec::new();
    for p in points {
        all.push(plane(p, -band));
        all.push(plane(p, band));
    }
    let frame = Frame::fit(&all);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">"#
    )
    .unwrap();
    writeln!(
        out,
        r##"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="#ffffff"/>"##
    )
    .unwrap();

    for (c, cell) in s.cells().iter().enumerate() {
        let corners: Vec<[f64; 2]> = if d == 1 {
            let xs: Vec<&Vec<Rational>> = cell.iter().map(|&i| &points[i]).collect();
            let lo = xs.iter().min().unwrap();
            let hi = xs.iter().max().unwrap();
            vec![
                plane(lo, -band),
                plane(hi, -band),
                plane(hi, band),
                plane(lo, band),
            ]
        } else {
            let verts: Vec<Vec<Rational>> = cell.iter().map(|&i| points[i].clone()).collect();
            convex_hull_2d(&verts)
                .iter()
                .map(|p| plane(p, 0.0))
                .collect()
        };
        let coords: Vec<String> = corners
            .iter()
            .map(|&p| {
                let (x, y) = frame.map(p);
                format!("{},{}", num(x), num(y))
            })
            .collect();
        let group = style.group_of[c];
        writeln!(
            out,
            r##"<polygon class="cell" data-cell="{c}" data-group="{group}" points="{}" fill="{}" stroke="#555555" stroke-width="1"/>"##,
            coords.join(" "),
            PALETTE[group % PALETTE.len()]
        )
        .unwrap();
    }

    for (w, wall) in s.walls().iter().enumerate() {
        let ridge: Vec<&Vec<Rational>> = wall.ridge.iter().map(|&i| &points[i]).collect();
        let (a, b) = if d == 1 {
            let p = ridge[0];
            (plane(p, -band), plane(p, band))
        } else {
            (
                plane(ridge.iter().min().unwrap(), 0.0),
                plane(ridge.iter().max().unwrap(), 0.0),
            )
        };
        let ((x1, y1), (x2, y2)) = (frame.map(a), frame.map(b));
        let colour = if style.violated.contains(&w) {
            "#d62728"
        } else {
            "#000000"
        };
        let dash = if style.relaxed.contains(&w) {
            r#" stroke-dasharray="12 8""#
        } else {
            ""
        };
        writeln!(
            out,
            r#"<line class="wall" data-wall="{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{colour}" stroke-width="3"{dash}/>"#,
            wall.name(),
            num(x1),
            num(y1),
            num(x2),
            num(y2)
        )
        .unwrap();
    }

    for p in points {
        let (x, y) = frame.map(plane(p, 0.0));
        writeln!(
            out,
            r##"<circle class="vertex" cx="{}" cy="{}" r="4" fill="#000000"/>"##,
            num(x),
            num(y)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

//! Minimal SVG plots of a projection onto the map.

use std::fmt::Write;

use hyperseed::{Coord, Landscape, ProjectionRow};

const CELL: f64 = 8.0;
const MARGIN: f64 = 20.0;
const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

fn colour(label: usize) -> String {
    if label < PALETTE.len() {
        PALETTE[label].to_string()
    } else {
        // golden-angle hues beyond the palette
        format!("hsl({:.0},65%,45%)", (label as f64 * 137.508) % 360.0)
    }
}

/// Scatter of BMV positions coloured by true label, with crosses on the
/// training targets. Column `j` runs along x, row `i` down the page.
pub fn projection_svg(
    rows: &[ProjectionRow],
    n: usize,
    m: usize,
    targets: &[Coord],
    label_names: &[String],
) -> String {
    let width = m as f64 * CELL + 2.0 * MARGIN + 140.0;
    let height =
        (n as f64 * CELL + 2.0 * MARGIN).max(label_names.len() as f64 * 14.0 + 2.0 * MARGIN);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        s,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="#999"/>"##,
        m as f64 * CELL,
        n as f64 * CELL
    );
    let centre = |i: usize, j: usize| {
        (
            MARGIN + (j as f64 + 0.5) * CELL,
            MARGIN + (i as f64 + 0.5) * CELL,
        )
    };
    for r in rows {
        // spread samples sharing a node
        let a = r.sample as f64 * 2.399;
        let (x, y) = centre(r.i, r.j);
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{}" fill-opacity="0.7"/>"#,
            x + 0.3 * CELL * a.cos(),
            y + 0.3 * CELL * a.sin(),
            colour(r.true_label)
        );
    }
    for t in targets {
        let (x, y) = centre(t.i, t.j);
        let k = CELL * 0.8;
        let _ = writeln!(
            s,
            r#"<path d="M{:.2} {:.2}L{:.2} {:.2}M{:.2} {:.2}L{:.2} {:.2}" stroke="black" stroke-width="1.5"/>"#,
            x - k,
            y - k,
            x + k,
            y + k,
            x - k,
            y + k,
            x + k,
            y - k
        );
    }
    let lx = MARGIN * 2.0 + m as f64 * CELL;
    for (k, name) in label_names.iter().enumerate() {
        let y = MARGIN + 10.0 + k as f64 * 14.0;
        let _ = writeln!(
            s,
            r#"<circle cx="{lx}" cy="{}" r="4" fill="{}"/>"#,
            y - 4.0,
            colour(k)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{y}" font-family="sans-serif" font-size="11">{}</text>"#,
            lx + 8.0,
            escape(name)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Grey-scale heat map of a similarity landscape, white at the maximum.
pub fn landscape_svg(l: &Landscape) -> String {
    let (lo, hi) = l
        .values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
            (a.min(v), b.max(v))
        });
    let span = if hi > lo { hi - lo } else { 1.0 };
    let width = l.cols as f64 * CELL + 2.0 * MARGIN;
    let height = l.rows as f64 * CELL + 2.0 * MARGIN;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    for i in 0..l.rows {
        for (j, v) in l.row(i).iter().enumerate() {
            let g = (255.0 * (v - lo) / span).round() as u8;
            let _ = writeln!(
                s,
                r#"<rect x="{}" y="{}" width="{CELL}" height="{CELL}" fill="rgb({g},{g},{g})"/>"#,
                MARGIN + j as f64 * CELL,
                MARGIN + i as f64 * CELL
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

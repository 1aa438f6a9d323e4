//! SVG output. Coordinates are printed with fixed precision so the same
//! family always gives the same bytes.

use std::fmt::Write;

use arcs_core::{Fish, Point, RealizedFamily};

const SCALE: f64 = 120.0;
const MARGIN: f64 = 24.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

fn xy(p: &Point) -> (f64, f64) {
    let (x, y) = p.to_f64();
    (MARGIN + x * SCALE, MARGIN + (1.0 - y) * SCALE)
}

fn points(ps: &[Point]) -> String {
    let mut s = String::new();
    for (i, p) in ps.iter().enumerate() {
        let (x, y) = xy(p);
        if i > 0 {
            s.push(' ');
        }
        write!(s, "{x:.3},{y:.3}").unwrap();
    }
    s
}

pub fn svg(fam: &RealizedFamily, fish: &[Fish]) -> arcs_core::Result<String> {
    let m = fam.model.m;
    let w = MARGIN * 2.0 + (m as f64 + 1.0) * SCALE;
    let h = MARGIN * 2.0 + SCALE;
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#).unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for f in fish {
        writeln!(s, r##"<polygon points="{}" fill="#f4d03f" fill-opacity="0.35" stroke="none"/>"##, points(&f.head)).unwrap();
        writeln!(s, r##"<polygon points="{}" fill="#5dade2" fill-opacity="0.25" stroke="none"/>"##, points(&f.tail)).unwrap();
    }
    writeln!(s, r#"<polygon points="{}" fill="none" stroke="black" stroke-width="2"/>"#, points(&fam.model.rect())).unwrap();
    for (a, b) in &fam.model.walls {
        writeln!(s, r##"<polyline points="{}" fill="none" stroke="#bbbbbb" stroke-dasharray="4 3"/>"##, points(&[a.clone(), b.clone()]))
            .unwrap();
    }
    for (i, arc) in fam.planar()?.iter().enumerate() {
        writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
            points(&arc.vertices),
            PALETTE[i % PALETTE.len()]
        )
        .unwrap();
    }
    for (j, p) in fam.model.punctures.iter().enumerate() {
        let (x, y) = xy(p);
        writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="black"/>"#).unwrap();
        writeln!(s, r#"<text x="{:.3}" y="{:.3}" font-size="12" font-family="sans-serif">q{}</text>"#, x + 5.0, y - 6.0, j + 1).unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}

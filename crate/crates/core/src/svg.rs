//! SVG pictures of barcodes and block decompositions.

use std::fmt::Write;

use crate::poset::{BlockType, FinitePoset};
use crate::structure::{Barcode, BlockList};

const UNIT: f64 = 40.0;
const ROW: f64 = 18.0;
const MARGIN: f64 = 30.0;

fn colour(t: BlockType) -> &'static str {
    match t {
        BlockType::Db => "#d95f02",
        BlockType::Bb => "#1b9e77",
        BlockType::Vb => "#7570b3",
        BlockType::Hb => "#e7298a",
    }
}

fn header(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
}

/// One horizontal bar per distinct carrier, ordered by birth, death and
/// multiplicity, over an axis with `points` ticks.
pub fn render_barcode(barcode: &Barcode, points: usize) -> String {
    let mut bars: Vec<(usize, usize, usize)> =
        barcode.bars.iter().map(|b| (b.birth(), b.death(), b.multiplicity)).collect();
    bars.sort_unstable();
    let width = 2.0 * MARGIN + UNIT * points.max(1) as f64;
    let height = 2.0 * MARGIN + ROW * bars.len().max(1) as f64;
    let axis_y = height - MARGIN / 2.0;
    let mut out = String::new();
    header(&mut out, width, height);
    let _ = writeln!(
        out,
        r#"  <line class="axis" x1="{MARGIN}" y1="{axis_y}" x2="{}" y2="{axis_y}" stroke="black"/>"#,
        width - MARGIN
    );
    for k in 0..=points {
        let x = MARGIN + UNIT * k as f64;
        let _ = writeln!(
            out,
            r#"  <line class="tick" x1="{x}" y1="{axis_y}" x2="{x}" y2="{}" stroke="black"/>"#,
            axis_y - 4.0
        );
    }
    for (row, (birth, death, mult)) in bars.iter().enumerate() {
        let x = MARGIN + UNIT * *birth as f64;
        let w = UNIT * (death - birth + 1) as f64;
        let y = MARGIN / 2.0 + ROW * row as f64;
        let _ = writeln!(
            out,
            r##"  <rect class="bar" x="{x}" y="{y}" width="{w}" height="{}" fill="#377eb8"/>"##,
            ROW - 4.0
        );
        if *mult > 1 {
            let _ = writeln!(out, r#"  <text x="{}" y="{}" font-size="11">x{mult}</text>"#, x + w + 3.0, y + ROW - 6.0);
        }
    }
    out.push_str("</svg>\n");
    out
}

/// One rectangle per block over the lattice of `poset`, with a legend of
/// the block types that occur.
pub fn render_blocks(blocks: &BlockList, poset: &FinitePoset) -> String {
    let (m, n) = poset.grid_dims().unwrap_or((1, 1));
    let legend_h = 20.0;
    let width = 2.0 * MARGIN + UNIT * m as f64;
    let height = 2.0 * MARGIN + UNIT * n as f64 + legend_h;
    let top = MARGIN + legend_h;
    let mut out = String::new();
    header(&mut out, width, height);
    // lattice: x to the right, y upwards
    for i in 0..=m {
        let x = MARGIN + UNIT * i as f64;
        let _ = writeln!(
            out,
            r##"  <line class="grid" x1="{x}" y1="{top}" x2="{x}" y2="{}" stroke="#cccccc"/>"##,
            top + UNIT * n as f64
        );
    }
    for j in 0..=n {
        let y = top + UNIT * j as f64;
        let _ = writeln!(
            out,
            r##"  <line class="grid" x1="{MARGIN}" y1="{y}" x2="{}" y2="{y}" stroke="#cccccc"/>"##,
            MARGIN + UNIT * m as f64
        );
    }
    let mut seen: Vec<BlockType> = Vec::new();
    for b in &blocks.blocks {
        let pts: Vec<(i64, i64)> = b.carrier.elements().iter().filter_map(|&x| poset.coords(x)).collect();
        if pts.is_empty() {
            continue;
        }
        let x0 = pts.iter().map(|p| p.0).min().unwrap();
        let x1 = pts.iter().map(|p| p.0).max().unwrap();
        let y0 = pts.iter().map(|p| p.1).min().unwrap();
        let y1 = pts.iter().map(|p| p.1).max().unwrap();
        let t = *b.types.iter().next().expect("blocks have a type");
        if !seen.contains(&t) {
            seen.push(t);
        }
        let x = MARGIN + UNIT * x0 as f64 + 3.0;
        let y = top + UNIT * (n as i64 - 1 - y1) as f64 + 3.0;
        let w = UNIT * (x1 - x0 + 1) as f64 - 6.0;
        let h = UNIT * (y1 - y0 + 1) as f64 - 6.0;
        let _ = writeln!(
            out,
            r#"  <rect class="block {t}" x="{x}" y="{y}" width="{w}" height="{h}" fill="{}" fill-opacity="0.35" stroke="{}"/>"#,
            colour(t),
            colour(t)
        );
        if b.multiplicity > 1 {
            let _ = writeln!(out, r#"  <text x="{}" y="{}" font-size="11">x{}</text>"#, x + 2.0, y + 12.0, b.multiplicity);
        }
    }
    seen.sort();
    for (k, t) in seen.iter().enumerate() {
        let x = MARGIN + 50.0 * k as f64;
        let _ = writeln!(out, r#"  <circle cx="{}" cy="{}" r="5" fill="{}"/>"#, x + 5.0, MARGIN - 5.0, colour(*t));
        let _ = writeln!(out, r#"  <text class="legend" x="{}" y="{}" font-size="12">{t}</text>"#, x + 14.0, MARGIN);
    }
    out.push_str("</svg>\n");
    out
}

//! Horizontal bar charts of a ranking, as plain text or SVG.

use std::fmt::Write;

use liquidrank::rank::format_score;
use liquidrank::RankedList;

const TEXT_BAR_WIDTH: usize = 40;
const SVG_BAR_WIDTH: f64 = 400.0;
const SVG_LABEL_WIDTH: f64 = 140.0;
const SVG_ROW: f64 = 22.0;
const SVG_TOP: f64 = 40.0;

fn max_score(list: &RankedList) -> f64 {
    list.entries().iter().map(|e| e.score).fold(0.0, f64::max)
}

fn fraction(score: f64, max: f64) -> f64 {
    if max > 0.0 {
        (score / max).clamp(0.0, 1.0)
    } else {
        0.0
    }
}

fn title(name: &str, list: &RankedList, total: usize) -> String {
    format!(
        "{name}: {} ranking, top {} of {total}",
        list.method(),
        list.len()
    )
}

/// One line per entry: rank, node, a `#` bar scaled to the top score, score.
/// `list` is expected to be already cut to the charted entries.
pub fn text_chart(name: &str, list: &RankedList, total: usize) -> String {
    let mut out = format!("# {}\n", title(name, list, total));
    let max = max_score(list);
    for e in list.entries() {
        let bar = (fraction(e.score, max) * TEXT_BAR_WIDTH as f64).round() as usize;
        writeln!(
            out,
            "{:>4}  {:<15}  {:<width$}  {}",
            e.rank,
            e.node,
            "#".repeat(bar),
            format_score(e.score),
            width = TEXT_BAR_WIDTH
        )
        .unwrap();
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn svg_chart(name: &str, list: &RankedList, total: usize) -> String {
    let width = SVG_LABEL_WIDTH + SVG_BAR_WIDTH + 120.0;
    let height = SVG_TOP + SVG_ROW * list.len() as f64 + 10.0;
    let max = max_score(list);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="monospace" font-size="12">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"<text x="10" y="22" font-size="14" font-weight="bold">{}</text>"#,
        escape(&title(name, list, total))
    )
    .unwrap();
    for (row, e) in list.entries().iter().enumerate() {
        let y = SVG_TOP + SVG_ROW * row as f64;
        let bar = fraction(e.score, max) * SVG_BAR_WIDTH;
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}. {}</text>"#,
            SVG_LABEL_WIDTH - 6.0,
            y + 14.0,
            e.rank,
            escape(e.node.as_str())
        )
        .unwrap();
        writeln!(
            out,
            r##"<rect x="{SVG_LABEL_WIDTH:.2}" y="{:.2}" width="{bar:.2}" height="{:.2}" fill="#4878a8"/>"##,
            y + 3.0,
            SVG_ROW - 6.0
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            SVG_LABEL_WIDTH + bar + 6.0,
            y + 14.0,
            format_score(e.score)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

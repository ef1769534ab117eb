//! Diagrams of consecutive constellations: one column per level, vertices as
//! dots and circles as regions enclosing everything below them.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::complex::Complex;
use crate::constellation::{ConstellationOrder, Node};
use crate::duality::{constellation_orders, dualize_complex, dualize_opetope};
use crate::error::{Error, Result};
use crate::hypergraph::{Face, PositiveHypergraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Dot,
    Svg,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "ascii" => Ok(Format::Ascii),
            "dot" => Ok(Format::Dot),
            "svg" => Ok(Format::Svg),
            other => Err(Error::Malformed(format!("unsupported format `{other}`"))),
        }
    }
}

/// Circle labels: own names, or the names of their codomains in the dual.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Labels {
    #[default]
    Own,
    Gamma,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Dot(String),
    Region(String, Vec<Item>),
}

impl Item {
    /// Number of regions around each dot, in drawing order.
    pub fn dot_depths(&self, depth: usize, out: &mut Vec<(String, usize)>) {
        match self {
            Item::Dot(n) => out.push((n.clone(), depth)),
            Item::Region(_, items) => items.iter().for_each(|i| i.dot_depths(depth + 1, out)),
        }
    }
}

/// Column `i` draws the vertices of level `i` inside the circles of level `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Column {
    pub level: usize,
    pub items: Vec<Item>,
}

fn base_name(co: &ConstellationOrder, x: usize) -> String {
    let n = co.poset.name(x);
    n[..n.len() - 2].to_string()
}

fn build_item(co: &ConstellationOrder, x: usize, label: &dyn Fn(usize) -> String) -> Item {
    match co.node(x) {
        Node::Vertex(_) => Item::Dot(base_name(co, x)),
        Node::Circle(_) => {
            let mut kids = co.poset.children(x).to_vec();
            kids.sort_unstable();
            Item::Region(
                label(x),
                kids.into_iter().map(|k| build_item(co, k, label)).collect(),
            )
        }
    }
}

pub fn columns(x: &Complex, labels: Labels) -> Result<Vec<Column>> {
    let orders = constellation_orders(x)?;
    let dual = match labels {
        Labels::Gamma => Some(dualize_complex(x)?),
        Labels::Own => None,
    };
    Ok(orders
        .iter()
        .enumerate()
        .map(|(i, co)| {
            let label = |p: usize| match (&dual, i) {
                (Some(h), i) if i > 0 => h
                    .name(h.gamma(Face::new(i, p)).expect("positive dimension"))
                    .to_string(),
                _ => base_name(co, p),
            };
            let mut roots = co.poset.maximal();
            roots.sort_unstable();
            Column {
                level: i,
                items: roots
                    .into_iter()
                    .map(|r| build_item(co, r, &label))
                    .collect(),
            }
        })
        .collect())
}

pub fn render_complex(x: &Complex, format: Format, labels: Labels) -> Result<String> {
    let cols = columns(x, labels)?;
    Ok(match format {
        Format::Ascii => ascii(&cols),
        Format::Dot => dot(&cols),
        Format::Svg => svg(&cols),
    })
}

/// Opetopes and cardinals are drawn through their dual complex.
pub fn render_hypergraph(h: &PositiveHypergraph, format: Format, labels: Labels) -> Result<String> {
    render_complex(&dualize_opetope(h)?, format, labels)
}

fn ascii_item(item: &Item) -> Vec<String> {
    match item {
        Item::Dot(n) => vec![format!("* {n}")],
        Item::Region(label, items) => {
            let inner: Vec<String> = items.iter().flat_map(ascii_item).collect();
            let width = inner
                .iter()
                .map(|l| l.chars().count())
                .max()
                .unwrap_or(0)
                .max(label.chars().count() + 3);
            let mut out = vec![format!(
                "+- {label} {}+",
                "-".repeat(width - label.chars().count() - 1)
            )];
            for l in inner {
                out.push(format!("| {l}{} |", " ".repeat(width - l.chars().count())));
            }
            out.push(format!("+{}+", "-".repeat(width + 2)));
            out
        }
    }
}

fn ascii(cols: &[Column]) -> String {
    let blocks: Vec<Vec<String>> = cols
        .iter()
        .map(|c| {
            let mut lines = vec![format!("level {}", c.level)];
            lines.extend(c.items.iter().flat_map(ascii_item));
            lines
        })
        .collect();
    let widths: Vec<usize> = blocks
        .iter()
        .map(|b| b.iter().map(|l| l.chars().count()).max().unwrap_or(0))
        .collect();
    let height = blocks.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    for row in 0..height {
        let mut line = String::new();
        for (b, &w) in blocks.iter().zip(&widths) {
            let cell = b.get(row).map_or("", String::as_str);
            let _ = write!(line, "{cell}{}   ", " ".repeat(w - cell.chars().count()));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn dot_item(item: &Item, col: usize, counter: &mut usize, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    *counter += 1;
    let id = *counter;
    match item {
        Item::Dot(n) => {
            let _ = writeln!(out, "{pad}c{col}_{id} [label={}];", quote(n));
        }
        Item::Region(label, items) => {
            let _ = writeln!(out, "{pad}subgraph cluster_c{col}_{id} {{");
            let _ = writeln!(out, "{pad}  label={};", quote(label));
            for i in items {
                dot_item(i, col, counter, indent + 1, out);
            }
            let _ = writeln!(out, "{pad}}}");
        }
    }
}

fn dot(cols: &[Column]) -> String {
    let mut out = String::from(
        "graph constellations {\n  node [shape=point, xlabel=\"\"];\n  style=rounded;\n",
    );
    for c in cols {
        let mut counter = 0;
        let _ = writeln!(out, "  subgraph cluster_level{} {{", c.level);
        let _ = writeln!(out, "    label=\"level {}\";\n    style=dashed;", c.level);
        for i in &c.items {
            dot_item(i, c.level, &mut counter, 2, &mut out);
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

const ROW: usize = 18;
const PAD: usize = 8;
const CHAR: usize = 7;

fn svg_size(item: &Item) -> (usize, usize) {
    match item {
        Item::Dot(n) => (16 + CHAR * n.chars().count(), ROW),
        Item::Region(label, items) => {
            let (w, h) = items
                .iter()
                .map(svg_size)
                .fold((0, 0), |(w, h), (iw, ih)| (w.max(iw), h + ih + PAD / 2));
            (
                (w + 2 * PAD).max(CHAR * label.chars().count() + 2 * PAD),
                h + ROW + PAD,
            )
        }
    }
}

fn svg_item(item: &Item, x: usize, y: usize, out: &mut String) {
    match item {
        Item::Dot(n) => {
            let _ = writeln!(
                out,
                "  <circle cx=\"{}\" cy=\"{}\" r=\"3\"/>",
                x + 4,
                y + ROW / 2
            );
            let _ = writeln!(
                out,
                "  <text x=\"{}\" y=\"{}\">{}</text>",
                x + 12,
                y + ROW / 2 + 4,
                escape(n)
            );
        }
        Item::Region(label, items) => {
            let (w, h) = svg_size(item);
            let _ = writeln!(out, "  <rect x=\"{x}\" y=\"{y}\" width=\"{w}\" height=\"{h}\" rx=\"10\" fill=\"none\" stroke=\"black\"/>");
            let _ = writeln!(
                out,
                "  <text x=\"{}\" y=\"{}\">{}</text>",
                x + PAD,
                y + ROW - 4,
                escape(label)
            );
            let mut cy = y + ROW;
            for i in items {
                svg_item(i, x + PAD, cy, out);
                cy += svg_size(i).1 + PAD / 2;
            }
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn svg(cols: &[Column]) -> String {
    let mut body = String::new();
    let mut x = PAD;
    let mut height = 0;
    for c in cols {
        let _ = writeln!(
            body,
            "  <text x=\"{x}\" y=\"{}\">level {}</text>",
            ROW - 4,
            c.level
        );
        let mut y = ROW + PAD;
        let mut width = CHAR * 8;
        for i in &c.items {
            svg_item(i, x, y, &mut body);
            let (w, h) = svg_size(i);
            y += h + PAD;
            width = width.max(w);
        }
        height = height.max(y);
        x += width + 3 * PAD;
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{x}\" height=\"{height}\" font-family=\"monospace\" font-size=\"12\">\n{body}</svg>\n"
    )
}

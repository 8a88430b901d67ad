//! Text and SVG pictures of (labelled) lace diagrams.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::bfun::LinearForm;
use crate::error::{Error, Result};
use crate::lace::{column_offsets, dot_height, Connection, LaceDiagram};
use crate::quiver::{DimVector, Direction, QuiverA};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDiagram {
    pub quiver: QuiverA,
    pub diagram: LaceDiagram,
    pub labels: BTreeMap<Connection, LinearForm>,
}

impl LabeledDiagram {
    pub fn new(quiver: QuiverA, diagram: LaceDiagram, labels: BTreeMap<Connection, LinearForm>) -> Result<Self> {
        if diagram.r() != quiver.r() {
            return Err(Error::LengthMismatch {
                expected: quiver.r(),
                got: diagram.r(),
            });
        }
        if let Some(c) = labels.keys().find(|c| !diagram.contains(c)) {
            return Err(Error::InvalidDiagram(format!(
                "label on missing connection ({}, {}, {})",
                c.edge, c.left, c.right
            )));
        }
        Ok(LabeledDiagram {
            quiver,
            diagram,
            labels,
        })
    }

    pub fn unlabeled(quiver: QuiverA, diagram: LaceDiagram) -> Result<Self> {
        LabeledDiagram::new(quiver, diagram, BTreeMap::new())
    }

    fn heights(&self) -> (Vec<i64>, DimVector) {
        let n = DimVector::new(self.diagram.columns().to_vec()).expect("diagram columns are positive");
        (column_offsets(&self.quiver, &n), n)
    }
}

fn arrow(dir: Direction) -> &'static str {
    match dir {
        Direction::Right => "-->",
        Direction::Left => "<--",
    }
}

fn centered(text: &str, width: usize) -> String {
    let pad = width.saturating_sub(text.len());
    let left = pad / 2;
    format!("{}{}{}", " ".repeat(left), text, " ".repeat(pad - left))
}

/// Fixed-width picture: one dot row per height (highest first), arrows
/// between columns, labels on the line above their arrow, vertex numbers
/// underneath. Connections between dots of different heights are drawn on
/// the left dot's row with the right dot's number appended.
pub fn render_ascii(d: &LabeledDiagram) -> String {
    let (offsets, n) = d.heights();
    let r = d.diagram.r();
    let col_width = r.to_string().len();
    let height = |col: usize, dot: usize| dot_height(&offsets, &n, col, dot);
    let (lo, hi) = (1..=r).fold((i64::MAX, i64::MIN), |(lo, hi), c| {
        (lo.min(height(c, n.at(c))), hi.max(height(c, 1)))
    });

    let mut arrow_text: BTreeMap<(usize, i64), String> = BTreeMap::new();
    let mut label_text: BTreeMap<(usize, i64), String> = BTreeMap::new();
    for c in d.diagram.connections() {
        let h = height(c.edge, c.left);
        let mut text = arrow(d.quiver.direction(c.edge)).to_string();
        if height(c.edge + 1, c.right) != h {
            text.push_str(&c.right.to_string());
        }
        arrow_text.insert((c.edge, h), text);
        if let Some(form) = d.labels.get(&c) {
            label_text.insert((c.edge, h), form.render(false));
        }
    }
    let gaps: Vec<usize> = (1..r)
        .map(|a| {
            let widest = arrow_text
                .iter()
                .chain(&label_text)
                .filter(|((e, _), _)| *e == a)
                .map(|(_, t)| t.len())
                .max()
                .unwrap_or(0);
            widest.max(3) + 2
        })
        .collect();

    let mut lines = Vec::new();
    for h in (lo..=hi).rev() {
        if !d.labels.is_empty() {
            let mut line = " ".repeat(col_width);
            for a in 1..r {
                line.push_str(&centered(label_text.get(&(a, h)).map_or("", String::as_str), gaps[a - 1]));
                line.push_str(&" ".repeat(col_width));
            }
            lines.push(line.trim_end().to_string());
        }
        let mut line = String::new();
        for col in 1..=r {
            let has_dot = (1..=n.at(col)).any(|dot| height(col, dot) == h);
            line.push_str(&centered(if has_dot { "*" } else { "" }, col_width));
            if col < r {
                line.push_str(&centered(arrow_text.get(&(col, h)).map_or("", String::as_str), gaps[col - 1]));
            }
        }
        lines.push(line.trim_end().to_string());
    }
    let mut footer = String::new();
    for col in 1..=r {
        footer.push_str(&centered(&col.to_string(), col_width));
        if col < r {
            footer.push_str(&" ".repeat(gaps[col - 1]));
        }
    }
    lines.push(footer.trim_end().to_string());
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

const SPACING_X: i64 = 80;
const SPACING_Y: i64 = 30;
const MARGIN: i64 = 30;

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// SVG 1.1 document: a circle per dot, a `<line>` per connection pointing
/// along its edge, and a `<text>` per label when labels are given.
pub fn render_svg(d: &LabeledDiagram) -> String {
    let (offsets, n) = d.heights();
    let r = d.diagram.r();
    let height = |col: usize, dot: usize| dot_height(&offsets, &n, col, dot);
    let hi = (1..=r).map(|c| height(c, 1)).max().unwrap_or(0);
    let lo = (1..=r).map(|c| height(c, n.at(c))).min().unwrap_or(0);
    let x = |col: usize| MARGIN + (col as i64 - 1) * SPACING_X;
    let y = |h: i64| MARGIN + (hi - h) * SPACING_Y;
    let width = 2 * MARGIN + (r as i64 - 1) * SPACING_X;
    let total_height = 2 * MARGIN + (hi - lo) * SPACING_Y;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{total_height}" viewBox="0 0 {width} {total_height}">"#
    );
    out.push_str(concat!(
        "<defs><marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"8\" refY=\"4\" orient=\"auto\">",
        "<path d=\"M0,0 L8,4 L0,8 z\" fill=\"black\"/></marker></defs>\n"
    ));
    for col in 1..=r {
        for dot in 1..=n.at(col) {
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="4" fill="black"/>"#,
                x(col),
                y(height(col, dot))
            );
        }
    }
    for c in d.diagram.connections() {
        let (mut x1, mut y1) = (x(c.edge), y(height(c.edge, c.left)));
        let (mut x2, mut y2) = (x(c.edge + 1), y(height(c.edge + 1, c.right)));
        if d.quiver.direction(c.edge) == Direction::Left {
            std::mem::swap(&mut x1, &mut x2);
            std::mem::swap(&mut y1, &mut y2);
        }
        let shorten = if x2 > x1 { -6 } else { 6 };
        let _ = writeln!(
            out,
            r#"<line x1="{x1}" y1="{y1}" x2="{}" y2="{y2}" stroke="black" stroke-width="1.5" marker-end="url(#head)"/>"#,
            x2 + shorten
        );
        if let Some(form) = d.labels.get(&c) {
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-size="11" text-anchor="middle">{}</text>"#,
                (x1 + x2) / 2,
                (y1 + y2) / 2 - 5,
                escape(&form.render(false))
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bfun::superposed_diagram;
    use crate::invariant::index;
    use crate::lace::{complete_diagram, exact_diagram};

    fn first_example() -> (QuiverA, DimVector) {
        (QuiverA::equioriented(5), DimVector::new(vec![2, 5, 6, 6, 2]).unwrap())
    }

    #[test]
    fn exact_diagram_ascii() {
        let (q, n) = first_example();
        let d = exact_diagram(&q, &n, &index(&q, &n, 3, 4).unwrap()).unwrap();
        let text = render_ascii(&LabeledDiagram::unlabeled(q, d).unwrap());
        assert_eq!(text.matches("-->").count(), 6);
        for line in text.lines().filter(|l| l.contains("-->")) {
            assert!(line.contains("* --> *"));
        }
        assert!(text.ends_with("1     2     3     4     5\n"));
        let dots: usize = text.matches('*').count();
        assert_eq!(dots, 21);
    }

    #[test]
    fn empty_diagram_is_dots_only() {
        let (q, n) = first_example();
        let text = render_ascii(&LabeledDiagram::unlabeled(q, LaceDiagram::empty(&n)).unwrap());
        assert!(!text.contains("--"));
        assert_eq!(text.matches('*').count(), 21);
    }

    #[test]
    fn superposed_labels_on_edge_three() {
        let (q, n) = first_example();
        let (d, labels) = superposed_diagram(&q, &n).unwrap();
        let text = render_ascii(&LabeledDiagram::new(q.clone(), d.clone(), labels.clone()).unwrap());
        for label in ["s2+1", "s2+2", "s2+3", "s2+4", "s1+s2+5", "s1+s2+6"] {
            assert!(text.contains(label), "{label} missing from\n{text}");
        }
        let svg = render_svg(&LabeledDiagram::new(q, d.clone(), labels).unwrap());
        assert_eq!(svg.matches("<line").count(), d.connections().len());
        assert_eq!(svg.matches("<text").count(), d.connections().len());
    }

    #[test]
    fn svg_lines_and_labels() {
        let (q, n) = first_example();
        let d = exact_diagram(&q, &n, &index(&q, &n, 3, 4).unwrap()).unwrap();
        let svg = render_svg(&LabeledDiagram::unlabeled(q.clone(), d).unwrap());
        assert_eq!(svg.matches("<line").count(), 6);
        assert_eq!(svg.matches("<text").count(), 0);
        assert_eq!(svg.matches("<circle").count(), 21);
        assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
        let full = complete_diagram(&q, &n).unwrap();
        let svg = render_svg(&LabeledDiagram::unlabeled(q, full.clone()).unwrap());
        assert_eq!(svg.matches("<line").count(), full.connections().len());
    }

    #[test]
    fn left_edges_point_left() {
        let q = QuiverA::parse("1<-2").unwrap();
        let n = DimVector::new(vec![1, 1]).unwrap();
        let d = complete_diagram(&q, &n).unwrap();
        let text = render_ascii(&LabeledDiagram::unlabeled(q, d).unwrap());
        assert_eq!(text, "* <-- *\n1     2\n");
    }

    #[test]
    fn labels_must_exist() {
        let (q, n) = first_example();
        let mut labels = BTreeMap::new();
        labels.insert(
            Connection {
                edge: 1,
                left: 1,
                right: 1,
            },
            LinearForm::new([1], 1),
        );
        assert!(LabeledDiagram::new(q, LaceDiagram::empty(&n), labels).is_err());
    }

    #[test]
    fn rendering_is_deterministic() {
        let (q, n) = first_example();
        let (d, labels) = superposed_diagram(&q, &n).unwrap();
        let ld = LabeledDiagram::new(q, d, labels).unwrap();
        assert_eq!(render_ascii(&ld), render_ascii(&ld.clone()));
        assert_eq!(render_svg(&ld), render_svg(&ld.clone()));
    }
}

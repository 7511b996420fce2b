//! Deterministic SVG drawings of instances: a numbered axis, the target
//! interval, and one row per pack with intervals as bars and singletons as
//! dots. Passing a witness highlights the chosen interval of each row.
//!
//! Above [`AXIS_POINT_LIMIT`] the axis switches from one column per point to
//! one column per compressed segment, labelled with the original coordinate
//! span, so arbitrarily large bounds stay drawable.
//!
//! All geometry and palette constants, in pixels:
//!
//! | constant          | value     | meaning                            |
//! |-------------------|-----------|------------------------------------|
//! | `MARGIN`          | 16        | outer margin                       |
//! | `GUTTER`          | 56        | left gutter for row labels         |
//! | `ROW_HEIGHT`      | 22        | vertical pitch per row             |
//! | `BAR_HEIGHT`      | 10        | interval bar thickness             |
//! | `DOT_RADIUS`      | 5         | singleton dot radius               |
//! | `POINT_CELL`      | 22        | column width, per-point axis       |
//! | `SEGMENT_CELL`    | 72        | column width, per-segment axis     |
//! | `FONT_SIZE`       | 11        | label font size                    |
//! | `COLOR_TARGET`    | `#4d7fd0` | target interval bar                |
//! | `COLOR_BAR`       | `#e8973a` | pack interval bars and dots        |
//! | `COLOR_CHOSEN`    | `#2a62c9` | witness-selected bars and dots     |
//! | `COLOR_GRID`      | `#d8d8d8` | column grid lines                  |
//! | `COLOR_TEXT`      | `#333333` | labels                             |

use std::fmt::Write as _;

use crate::pic::{PicInstance, Selection, SelectionError};

/// Point count up to which every point gets its own axis column.
pub const AXIS_POINT_LIMIT: u64 = 200;

const MARGIN: u64 = 16;
const GUTTER: u64 = 56;
const ROW_HEIGHT: u64 = 22;
const BAR_HEIGHT: u64 = 10;
const DOT_RADIUS: u64 = 5;
const POINT_CELL: u64 = 22;
const SEGMENT_CELL: u64 = 72;
const FONT_SIZE: u64 = 11;
const COLOR_TARGET: &str = "#4d7fd0";
const COLOR_BAR: &str = "#e8973a";
const COLOR_CHOSEN: &str = "#2a62c9";
const COLOR_GRID: &str = "#d8d8d8";
const COLOR_TEXT: &str = "#333333";

/// Renders an instance (and optionally a witness) to an SVG document.
///
/// The output is a pure function of the inputs. The instance is assumed
/// well-formed; the witness, when given, is validated first.
pub fn render_svg(
    instance: &PicInstance,
    witness: Option<&Selection>,
) -> Result<String, SelectionError> {
    if let Some(selection) = witness {
        // Surfaces arity and range problems before anything is drawn.
        instance.chosen_intervals(selection)?;
    }

    let columns: Vec<Column> = if instance.n_bound() <= AXIS_POINT_LIMIT {
        (1..=instance.n_bound())
            .map(|p| Column {
                hi: p,
                label: p.to_string(),
            })
            .collect()
    } else {
        instance
            .compress()
            .segments()
            .iter()
            .map(|seg| Column {
                hi: seg.hi(),
                label: if seg.lo() == seg.hi() {
                    seg.lo().to_string()
                } else {
                    format!("{}..{}", seg.lo(), seg.hi())
                },
            })
            .collect()
    };
    let cell = if instance.n_bound() <= AXIS_POINT_LIMIT {
        POINT_CELL
    } else {
        SEGMENT_CELL
    };

    let rows = instance.num_packs() as u64 + 2; // label row + target row + packs
    let width = GUTTER + columns.len() as u64 * cell + 2 * MARGIN;
    let height = rows * ROW_HEIGHT + 2 * MARGIN;

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(
        svg,
        r#"<g font-family="monospace" font-size="{FONT_SIZE}" fill="{COLOR_TEXT}">"#
    )
    .unwrap();

    let canvas = Canvas {
        columns,
        cell,
        rows,
    };

    // Column grid and axis labels.
    for (c, column) in canvas.columns.iter().enumerate() {
        let x = canvas.column_center(c);
        writeln!(
            svg,
            r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="{COLOR_GRID}" stroke-width="1"/>"#,
            MARGIN + ROW_HEIGHT,
            MARGIN + canvas.rows * ROW_HEIGHT,
        )
        .unwrap();
        writeln!(
            svg,
            r#"<text x="{x}" y="{}" text-anchor="middle">{}</text>"#,
            MARGIN + FONT_SIZE,
            column.label,
        )
        .unwrap();
    }

    // Target interval row.
    canvas.bar(&mut svg, 1, 1, instance.n_bound(), COLOR_TARGET);
    writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="end">target</text>"#,
        GUTTER + MARGIN - 8,
        canvas.row_text_y(1),
    )
    .unwrap();

    // Pack rows.
    for (k, pack) in instance.packs().iter().enumerate() {
        let row = k as u64 + 2;
        writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="end">P{}</text>"#,
            GUTTER + MARGIN - 8,
            canvas.row_text_y(row),
            k + 1,
        )
        .unwrap();
        for (t, iv) in pack.intervals().iter().enumerate() {
            let chosen = witness.is_some_and(|sel| sel.choices()[k] == t);
            let color = if chosen { COLOR_CHOSEN } else { COLOR_BAR };
            if iv.is_singleton() {
                canvas.dot(&mut svg, row, iv.lo(), color);
            } else {
                canvas.bar(&mut svg, row, iv.lo(), iv.hi(), color);
            }
        }
    }

    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}

struct Column {
    hi: u64,
    label: String,
}

struct Canvas {
    columns: Vec<Column>,
    cell: u64,
    rows: u64,
}

impl Canvas {
    /// Index of the column containing an original point.
    fn column_of(&self, p: u64) -> usize {
        self.columns
            .partition_point(|c| c.hi < p)
            .min(self.columns.len() - 1)
    }

    fn column_center(&self, index: usize) -> u64 {
        GUTTER + MARGIN + index as u64 * self.cell + self.cell / 2
    }

    fn row_text_y(&self, row: u64) -> u64 {
        MARGIN + row * ROW_HEIGHT + (ROW_HEIGHT + FONT_SIZE) / 2 - 2
    }

    fn row_bar_y(&self, row: u64) -> u64 {
        MARGIN + row * ROW_HEIGHT + (ROW_HEIGHT - BAR_HEIGHT) / 2
    }

    fn bar(&self, svg: &mut String, row: u64, lo: u64, hi: u64, color: &str) {
        let c0 = self.column_of(lo);
        let c1 = self.column_of(hi);
        let x0 = GUTTER + MARGIN + c0 as u64 * self.cell + 2;
        let x1 = GUTTER + MARGIN + (c1 as u64 + 1) * self.cell - 2;
        writeln!(
            svg,
            r#"<rect x="{x0}" y="{}" width="{}" height="{BAR_HEIGHT}" rx="3" fill="{color}"/>"#,
            self.row_bar_y(row),
            x1 - x0,
        )
        .unwrap();
    }

    fn dot(&self, svg: &mut String, row: u64, p: u64, color: &str) {
        let cx = self.column_center(self.column_of(p));
        let cy = self.row_bar_y(row) + BAR_HEIGHT / 2;
        writeln!(
            svg,
            r#"<circle cx="{cx}" cy="{cy}" r="{DOT_RADIUS}" fill="{color}"/>"#
        )
        .unwrap();
    }
}

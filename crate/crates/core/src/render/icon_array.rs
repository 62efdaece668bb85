use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::odds_text::{render_odds_text, OddsTextExplanation};
use super::xml_escape;
use crate::error::{Error, Result};
use crate::scenario::ExplanationRequest;

pub const ICON_ROWS: u32 = 10;
pub const ICON_COLS: u32 = 10;
/// Tableau 10 blue.
pub const HIGHLIGHT_COLOR: &str = "#4E79A7";
/// Tableau 10 grey.
pub const MUTED_COLOR: &str = "#BAB0AC";
const TEXT_COLOR: &str = "#333333";

const CELL: u32 = 22;
const MARGIN: u32 = 20;
const PANEL_GAP: u32 = 40;
const LINE_HEIGHT: u32 = 15;
const FONT_SIZE: u32 = 12;
const WRAP_COLUMNS: usize = 34;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum IconGlyph {
    #[default]
    Circle,
    Square,
}

/// Layout of the two 10×10 panels. Icons fill top to bottom within a
/// column, columns left to right: icon `k` sits at column `k / 10`, row
/// `k % 10`, and is highlighted iff `k < highlighted`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IconArraySpec {
    pub rows: u32,
    pub cols: u32,
    pub highlighted_withhold: u32,
    pub highlighted_share: u32,
    pub glyph: IconGlyph,
}

impl IconArraySpec {
    /// `(column, row)` of icon `k`.
    pub fn position(&self, k: u32) -> (u32, u32) {
        (k / self.rows, k % self.rows)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IconArrayExplanation {
    pub text: OddsTextExplanation,
    pub spec: IconArraySpec,
    pub svg: String,
}

pub fn render_icon_array(req: &ExplanationRequest) -> Result<IconArrayExplanation> {
    render_icon_array_with(req, IconGlyph::default())
}

pub fn render_icon_array_with(
    req: &ExplanationRequest,
    glyph: IconGlyph,
) -> Result<IconArrayExplanation> {
    if req.denominator != ICON_ROWS * ICON_COLS {
        return Err(Error::UnsupportedDenominator {
            denominator: req.denominator,
        });
    }
    let text = render_odds_text(req)?;
    let spec = IconArraySpec {
        rows: ICON_ROWS,
        cols: ICON_COLS,
        highlighted_withhold: text.odds.x,
        highlighted_share: text.odds.y,
        glyph,
    };
    let svg = draw(&spec, &text.line_withhold, &text.line_share);
    Ok(IconArrayExplanation { text, spec, svg })
}

fn wrap(text: &str, width: usize) -> Vec<String> {
    let mut lines = Vec::new();
    let mut current = String::new();
    for word in text.split_whitespace() {
        if !current.is_empty() && current.chars().count() + 1 + word.chars().count() > width {
            lines.push(core::mem::take(&mut current));
        }
        if !current.is_empty() {
            current.push(' ');
        }
        current.push_str(word);
    }
    if !current.is_empty() {
        lines.push(current);
    }
    lines
}

fn draw(spec: &IconArraySpec, label_withhold: &str, label_share: &str) -> String {
    let labels = [
        wrap(label_withhold, WRAP_COLUMNS),
        wrap(label_share, WRAP_COLUMNS),
    ];
    let label_lines = labels.iter().map(Vec::len).max().unwrap_or(0) as u32;
    let panel_w = spec.cols * CELL;
    let panel_h = spec.rows * CELL;
    let grid_top = MARGIN + label_lines * LINE_HEIGHT + 10;
    let width = 2 * panel_w + PANEL_GAP + 2 * MARGIN;
    let height = grid_top + panel_h + MARGIN;

    let mut svg = String::new();
    // Writing into a String cannot fail.
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        svg,
        "<title>{} {}</title>",
        xml_escape(label_withhold),
        xml_escape(label_share)
    );
    let panels = [
        ("withhold", spec.highlighted_withhold, &labels[0]),
        ("share", spec.highlighted_share, &labels[1]),
    ];
    for (i, (id, highlighted, lines)) in panels.into_iter().enumerate() {
        let x0 = MARGIN + i as u32 * (panel_w + PANEL_GAP);
        let _ = writeln!(svg, r#"<g id="panel-{id}">"#);
        let _ = write!(
            svg,
            r#"<text x="{x0}" y="{}" font-family="sans-serif" font-size="{FONT_SIZE}" fill="{TEXT_COLOR}">"#,
            MARGIN + FONT_SIZE - 2
        );
        for (j, line) in lines.iter().enumerate() {
            let dy = if j == 0 { 0 } else { LINE_HEIGHT };
            let _ = write!(
                svg,
                r#"<tspan x="{x0}" dy="{dy}">{}</tspan>"#,
                xml_escape(line)
            );
        }
        let _ = writeln!(svg, "</text>");
        for k in 0..spec.rows * spec.cols {
            let (col, row) = spec.position(k);
            let fill = if k < highlighted {
                HIGHLIGHT_COLOR
            } else {
                MUTED_COLOR
            };
            let left = x0 + col * CELL;
            let top = grid_top + row * CELL;
            let _ = match spec.glyph {
                IconGlyph::Circle => writeln!(
                    svg,
                    r#"<circle cx="{}" cy="{}" r="8" fill="{fill}"/>"#,
                    left + CELL / 2,
                    top + CELL / 2
                ),
                IconGlyph::Square => writeln!(
                    svg,
                    r#"<rect x="{}" y="{}" width="16" height="16" fill="{fill}"/>"#,
                    left + 3,
                    top + 3
                ),
            };
        }
        let _ = writeln!(svg, "</g>");
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::PrivacyBudget;
    use crate::scenario::fixtures::workplace;
    use crate::scenario::{Method, Setting};
    use alloc::format;

    fn req(eps: f64) -> ExplanationRequest {
        ExplanationRequest::new(
            workplace(Setting::Optional),
            PrivacyBudget::new(eps).unwrap(),
            Method::OddsVis,
        )
    }

    fn panel<'a>(svg: &'a str, id: &str) -> &'a str {
        let start = svg.find(&format!(r#"<g id="panel-{id}""#)).unwrap();
        let end = start + svg[start..].find("</g>").unwrap();
        &svg[start..end]
    }

    fn highlighted(panel: &str) -> usize {
        panel
            .matches(&format!(r#"fill="{HIGHLIGHT_COLOR}""#))
            .count()
    }

    #[test]
    fn epsilon_two_counts() {
        let e = render_icon_array(&req(2.0)).unwrap();
        assert_eq!(highlighted(panel(&e.svg, "withhold")), 18);
        assert_eq!(highlighted(panel(&e.svg, "share")), 82);
        for id in ["withhold", "share"] {
            let p = panel(&e.svg, id);
            assert_eq!(p.matches("<circle").count(), 100);
        }
    }

    #[test]
    fn fill_order_is_column_major() {
        let e = render_icon_array(&req(0.1)).unwrap();
        assert_eq!(e.spec.highlighted_withhold, 48);
        // 48 = four full columns plus the top eight icons of column 4.
        for k in 0..100 {
            let (col, row) = e.spec.position(k);
            let expected = col < 4 || (col == 4 && row < 8);
            assert_eq!(k < 48, expected, "icon {k}");
        }
        // In the SVG, column 4 (x offset 4*22) has 8 highlighted circles.
        let p = panel(&e.svg, "withhold");
        let cx = MARGIN + 4 * CELL + CELL / 2;
        let col4: Vec<&str> = p
            .lines()
            .filter(|l| l.contains(&format!(r#"cx="{cx}""#)))
            .collect();
        assert_eq!(col4.len(), 10);
        assert_eq!(
            col4.iter().filter(|l| l.contains(HIGHLIGHT_COLOR)).count(),
            8
        );
        assert!(col4[..8].iter().all(|l| l.contains(HIGHLIGHT_COLOR)));
    }

    #[test]
    fn empty_fill_is_valid() {
        let spec = IconArraySpec {
            rows: 10,
            cols: 10,
            highlighted_withhold: 0,
            highlighted_share: 100,
            glyph: IconGlyph::Square,
        };
        let svg = draw(&spec, "a", "b");
        assert_eq!(highlighted(panel(&svg, "withhold")), 0);
        assert_eq!(highlighted(panel(&svg, "share")), 100);
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn rejects_other_denominators() {
        let mut r = req(2.0);
        r.denominator = 1000;
        assert_eq!(
            render_icon_array(&r).unwrap_err(),
            Error::UnsupportedDenominator { denominator: 1000 }
        );
    }

    #[test]
    fn byte_identical() {
        let a = render_icon_array(&req(0.5)).unwrap();
        let b = render_icon_array(&req(0.5)).unwrap();
        assert_eq!(a.svg, b.svg);
    }

    #[test]
    fn labels_are_escaped() {
        let mut r = req(2.0);
        r.scenario.adversary_label = "<Boss & Co>".into();
        let e = render_icon_array(&r).unwrap();
        assert!(!e.svg.contains("<Boss"));
        assert!(e.svg.contains("&lt;Boss &amp; Co&gt;"));
    }

    #[test]
    fn wrap_respects_width() {
        let lines = wrap("one two three four five six seven eight nine ten", 10);
        assert!(lines.iter().all(|l| l.chars().count() <= 10));
        assert_eq!(
            lines.join(" "),
            "one two three four five six seven eight nine ten"
        );
    }
}

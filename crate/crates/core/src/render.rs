//! Renderers for triangles: a text staircase (top row first), SVG and ASCII
//! PPM. All outputs are byte-stable for equal inputs.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::coloring::{ShapeError, TriangleColoring};
use crate::fixtures::EXAMPLE_PALETTE;
use crate::system::Color;

/// Display name and RGB value for each color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Palette {
    entries: Vec<(String, [u8; 3])>,
}

impl Palette {
    pub fn new(entries: Vec<(String, [u8; 3])>) -> Self {
        Palette { entries }
    }

    /// The named palette of the bundled 13-color example.
    pub fn example() -> Self {
        Palette { entries: EXAMPLE_PALETTE.iter().map(|&(name, rgb)| (name.to_string(), rgb)).collect() }
    }

    /// The example palette, extended with generated hues up to `n` colors.
    pub fn for_colors(n: usize) -> Self {
        let mut p = Palette::example();
        for c in p.entries.len()..n {
            // golden-angle hue walk, fixed saturation and value
            let hue = (c as f64 * 137.507_764) % 360.0;
            p.entries.push((format!("color {c}"), hsv_to_rgb(hue, 0.65, 0.9)));
        }
        p.entries.truncate(n.max(1));
        p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn name(&self, c: Color) -> Option<&str> {
        self.entries.get(c as usize).map(|(n, _)| n.as_str())
    }

    pub fn rgb(&self, c: Color) -> Option<[u8; 3]> {
        self.entries.get(c as usize).map(|&(_, rgb)| rgb)
    }
}

fn hsv_to_rgb(h: f64, s: f64, v: f64) -> [u8; 3] {
    let c = v * s;
    let x = c * (1.0 - ((h / 60.0) % 2.0 - 1.0).abs());
    let m = v - c;
    let (r, g, b) = match (h / 60.0) as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    [r, g, b].map(|t| ((t + m) * 255.0).round() as u8)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Svg,
    Ppm,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "svg" => Ok(Format::Svg),
            "ppm" => Ok(Format::Ppm),
            other => Err(format!("unknown format `{other}` (expected text, svg or ppm)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("color {color} at ({x}, {y}) has no palette entry ({len} entries)")]
    Palette { color: Color, x: usize, y: usize, len: usize },
}

fn check_palette(tri: &TriangleColoring, palette: &Palette) -> Result<(), RenderError> {
    for (y, row) in tri.rows().iter().enumerate() {
        for (x, &color) in row.iter().enumerate() {
            if color as usize >= palette.len() {
                return Err(RenderError::Palette { color, x, y, len: palette.len() });
            }
        }
    }
    Ok(())
}

/// Renders with one pixel per cell for PPM.
pub fn render_triangle(
    tri: &TriangleColoring,
    palette: &Palette,
    format: Format,
) -> Result<Vec<u8>, RenderError> {
    render_scaled(tri, palette, format, 1)
}

pub fn render_scaled(
    tri: &TriangleColoring,
    palette: &Palette,
    format: Format,
    scale: usize,
) -> Result<Vec<u8>, RenderError> {
    check_palette(tri, palette)?;
    Ok(match format {
        Format::Text => render_text(tri).into_bytes(),
        Format::Svg => render_svg(tri, palette).into_bytes(),
        Format::Ppm => render_ppm(tri, palette, scale.max(1)).into_bytes(),
    })
}

/// One line per row, highest row first, colors separated by single spaces.
pub fn render_text(tri: &TriangleColoring) -> String {
    let mut out = String::new();
    for row in tri.rows().iter().rev() {
        let line: Vec<String> = row.iter().map(u8::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the text staircase produced by [`render_text`]. Any amount of
/// horizontal whitespace separates colors; blank lines are ignored.
pub fn parse_text(text: &str) -> Result<TriangleColoring, ShapeError> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<Color>().map_err(|_| ShapeError::Token { line: i + 1, token: tok.to_string() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ShapeError::Empty);
    }
    rows.reverse();
    let tiles: usize = rows.iter().map(Vec::len).sum();
    TriangleColoring::from_rows(tiles - 1, rows)
}

fn hex(rgb: [u8; 3]) -> String {
    format!("#{:02x}{:02x}{:02x}", rgb[0], rgb[1], rgb[2])
}

const SVG_CELL: usize = 16;

/// Unit cells in a `width x height` view box, origin at the bottom left.
pub fn render_svg(tri: &TriangleColoring, palette: &Palette) -> String {
    let rows = tri.rows();
    let height = rows.len();
    let width = rows[0].len();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {width} {height}\" shape-rendering=\"crispEdges\">",
        width * SVG_CELL,
        height * SVG_CELL
    );
    for (y, row) in rows.iter().enumerate() {
        for (x, &c) in row.iter().enumerate() {
            let rgb = palette.rgb(c).expect("palette checked");
            let _ = writeln!(
                out,
                "<rect x=\"{x}\" y=\"{}\" width=\"1\" height=\"1\" fill=\"{}\"><title>({x}, {y}) {}</title></rect>",
                height - 1 - y,
                hex(rgb),
                c
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

/// ASCII PPM (P3), `scale` pixels per cell, white outside the domain.
pub fn render_ppm(tri: &TriangleColoring, palette: &Palette, scale: usize) -> String {
    let rows = tri.rows();
    let height = rows.len();
    let width = rows[0].len();
    let mut out = format!("P3\n{} {}\n255\n", width * scale, height * scale);
    for y in (0..height).rev() {
        let pixels: Vec<String> = (0..width)
            .flat_map(|x| {
                let rgb =
                    rows[y].get(x).map_or([255, 255, 255], |&c| palette.rgb(c).expect("palette checked"));
                std::iter::repeat_n(format!("{} {} {}", rgb[0], rgb[1], rgb[2]), scale)
            })
            .collect();
        let line = pixels.join(" ");
        for _ in 0..scale {
            out.push_str(&line);
            out.push('\n');
        }
    }
    out
}

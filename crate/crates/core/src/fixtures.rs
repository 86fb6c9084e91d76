//! A worked 13-color system with an acceptable coloring, and the partial
//! coloring of its first ten diagonals.

use crate::coloring::TriangleColoring;
use crate::system::{Color, ColoringSystem};

pub const EXAMPLE_COLORS: usize = 13;

/// Origin color 1 (blue).
pub const EXAMPLE_ORIGIN: Color = 1;

#[rustfmt::skip]
pub const EXAMPLE_HORIZONTAL: [(Color, Color); 36] = [
    (0, 1), (0, 4), (1, 2), (1, 5), (2, 0), (2, 3), (3, 2), (3, 5), (4, 0), (4, 3), (5, 1), (5, 4),
    (6, 6), (6, 9), (6, 10), (7, 7), (7, 8), (7, 11), (7, 12), (8, 6), (8, 9), (8, 10), (9, 7),
    (9, 8), (9, 11), (9, 12), (10, 6), (10, 9), (10, 10), (11, 7), (11, 8), (11, 11), (11, 12),
    (12, 6), (12, 9), (12, 10),
];

#[rustfmt::skip]
pub const EXAMPLE_VERTICAL: [(Color, Color); 53] = [
    (0, 2), (0, 4), (0, 5), (0, 8), (0, 9), (0, 12), (1, 2), (1, 4), (1, 5), (1, 8), (1, 9), (1, 12),
    (2, 2), (2, 4), (2, 5), (2, 8), (2, 9), (2, 12), (3, 10), (3, 11), (4, 10), (4, 11), (5, 10),
    (5, 11), (6, 0), (6, 1), (6, 3), (7, 0), (7, 1), (7, 3), (8, 0), (8, 1), (8, 3), (9, 2), (9, 4),
    (9, 5), (9, 8), (9, 9), (9, 12), (10, 2), (10, 4), (10, 5), (10, 8), (10, 9), (10, 12),
    (11, 2), (11, 4), (11, 5), (11, 8), (11, 9), (11, 12), (12, 6), (12, 7),
];

/// The partial coloring of `x + y <= 9`, top row first, as displayed.
pub const EXAMPLE_TRIANGLE_TEXT: &str = "\
8
9 11
1 5 4
8 10 9 8
0 4 0 1 2
8 9 7 8 9 8
9 11 12 10 9 11 12
0 4 0 4 0 4 0 4
8 9 8 9 8 9 8 9 8
1 2 0 1 2 0 1 2 0 1
";

/// Display names and RGB values of the example's colors, in color order.
pub const EXAMPLE_PALETTE: [(&str, [u8; 3]); 13] = [
    ("red", [255, 0, 0]),
    ("blue", [0, 0, 255]),
    ("forest green", [34, 139, 34]),
    ("purple", [128, 0, 128]),
    ("yellow", [255, 255, 0]),
    ("pink", [255, 192, 203]),
    ("aqua", [0, 255, 255]),
    ("grey", [128, 128, 128]),
    ("teal", [0, 128, 128]),
    ("lime green", [50, 205, 50]),
    ("brown", [165, 42, 42]),
    ("candy green", [124, 252, 0]),
    ("orange", [255, 165, 0]),
];

pub fn example_system() -> ColoringSystem {
    ColoringSystem::new(EXAMPLE_COLORS, EXAMPLE_ORIGIN, EXAMPLE_HORIZONTAL, EXAMPLE_VERTICAL)
        .expect("example system is valid")
}

pub fn example_triangle() -> TriangleColoring {
    crate::render::parse_text(EXAMPLE_TRIANGLE_TEXT).expect("example triangle parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn relation_sizes() {
        let s = example_system();
        assert_eq!(s.horizontal().len(), 36);
        assert_eq!(s.vertical().len(), 53);
        assert_eq!(EXAMPLE_HORIZONTAL.iter().collect::<HashSet<_>>().len(), 36);
        assert_eq!(EXAMPLE_VERTICAL.iter().collect::<HashSet<_>>().len(), 53);
    }

    #[test]
    fn triangle_shape() {
        let t = example_triangle();
        assert_eq!(t.tile_count(), 55);
        assert_eq!(t.rows()[0], vec![1, 2, 0, 1, 2, 0, 1, 2, 0, 1]);
        assert_eq!(t.rows()[9], vec![8]);
    }
}

//! Finite colorings: diagonal-order sequences, the triangles they induce, and
//! periodic torus colorings that certify infinite ones.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diag::{self, Tile};
use crate::system::{Color, ColoringSystem};

/// Colors of tiles `0, 1, 2, …` in diagonal order.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorSequence(Vec<Color>);

impl ColorSequence {
    pub fn new(colors: Vec<Color>) -> Self {
        ColorSequence(colors)
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Color> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, c: Color) {
        self.0.push(c);
    }

    pub fn pop(&mut self) -> Option<Color> {
        self.0.pop()
    }

    /// `S^k`: the first `k + 1` colors.
    pub fn truncated(&self, k: usize) -> ColorSequence {
        ColorSequence(self.0[..=k].to_vec())
    }

    /// Whether `self` is contained in `other` (a prefix of it).
    pub fn is_prefix_of(&self, other: &ColorSequence) -> bool {
        is_prefix(self, other)
    }

    pub fn extended(&self, c: Color) -> ColorSequence {
        let mut v = self.0.clone();
        v.push(c);
        ColorSequence(v)
    }
}

impl From<Vec<Color>> for ColorSequence {
    fn from(v: Vec<Color>) -> Self {
        ColorSequence(v)
    }
}

impl From<&[Color]> for ColorSequence {
    fn from(v: &[Color]) -> Self {
        ColorSequence(v.to_vec())
    }
}

impl fmt::Display for ColorSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// `p ⊆ s`: `s` is at least as long as `p` and agrees with it on `p`'s indices.
pub fn is_prefix(p: &ColorSequence, s: &ColorSequence) -> bool {
    s.0.starts_with(&p.0)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("a triangle needs at least one tile")]
    Empty,
    #[error("expected {expected} rows for depth {depth}, found {found}")]
    RowCount { depth: usize, expected: usize, found: usize },
    #[error("row {row} should hold {expected} tiles for depth {depth}, found {found}")]
    RowLength { depth: usize, row: usize, expected: usize, found: usize },
    #[error("ragged text triangle: line {line} has {found} entries after a shorter line")]
    Ragged { line: usize, found: usize },
    #[error("line {line}: `{token}` is not a color")]
    Token { line: usize, token: String },
}

/// Number of tiles in each row of the domain `{t : D(t) <= depth}`.
fn row_lengths(depth: usize) -> Vec<usize> {
    let mut lens: Vec<usize> = Vec::new();
    for k in 0..=depth as u64 {
        let t = diag::tile_at(k);
        let y = t.y as usize;
        if y == lens.len() {
            lens.push(0);
        }
        lens[y] += 1;
    }
    lens
}

/// A partial coloring on the diagonal prefix `{(x, y) : D(x, y) <= depth}`,
/// stored as rows bottom-up.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriangleColoring {
    depth: usize,
    rows: Vec<Vec<Color>>,
}

/// File form of a triangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangleFile {
    pub depth: usize,
    pub rows: Vec<Vec<Color>>,
}

impl TriangleColoring {
    /// Lays a nonempty sequence out on its diagonal domain.
    pub fn from_sequence(seq: &ColorSequence) -> Result<Self, ShapeError> {
        if seq.is_empty() {
            return Err(ShapeError::Empty);
        }
        let depth = seq.len() - 1;
        let mut rows: Vec<Vec<Color>> = Vec::new();
        for (k, &c) in seq.as_slice().iter().enumerate() {
            let t = diag::tile_at(k as u64);
            let y = t.y as usize;
            if y == rows.len() {
                rows.push(Vec::new());
            }
            debug_assert_eq!(rows[y].len() as u64, t.x);
            rows[y].push(c);
        }
        Ok(TriangleColoring { depth, rows })
    }

    /// Validates that `rows` has exactly the shape of the depth-`depth` domain.
    pub fn from_rows(depth: usize, rows: Vec<Vec<Color>>) -> Result<Self, ShapeError> {
        let lens = row_lengths(depth);
        if rows.len() != lens.len() {
            return Err(ShapeError::RowCount { depth, expected: lens.len(), found: rows.len() });
        }
        for (row, (r, &expected)) in rows.iter().zip(&lens).enumerate() {
            if r.len() != expected {
                return Err(ShapeError::RowLength { depth, row, expected, found: r.len() });
            }
        }
        Ok(TriangleColoring { depth, rows })
    }

    pub fn from_file(file: TriangleFile) -> Result<Self, ShapeError> {
        Self::from_rows(file.depth, file.rows)
    }

    pub fn to_file(&self) -> TriangleFile {
        TriangleFile { depth: self.depth, rows: self.rows.clone() }
    }

    /// The full triangle `{(x, y) : x + y <= diagonals}` of a total coloring.
    pub fn from_fn(diagonals: usize, mut color: impl FnMut(Tile) -> Color) -> Self {
        let rows = (0..=diagonals)
            .map(|y| (0..=diagonals - y).map(|x| color(Tile::new(x as u64, y as u64))).collect())
            .collect();
        let tiles = (diagonals + 1) * (diagonals + 2) / 2;
        TriangleColoring { depth: tiles - 1, rows }
    }

    /// Largest diagonal index in the domain.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn tile_count(&self) -> usize {
        self.depth + 1
    }

    /// Rows bottom-up; `rows()[y][x]` is the color of `(x, y)`.
    pub fn rows(&self) -> &[Vec<Color>] {
        &self.rows
    }

    pub fn get(&self, t: Tile) -> Option<Color> {
        self.rows.get(t.y as usize).and_then(|r| r.get(t.x as usize)).copied()
    }

    pub fn set(&mut self, t: Tile, c: Color) -> bool {
        match self.rows.get_mut(t.y as usize).and_then(|r| r.get_mut(t.x as usize)) {
            Some(slot) => {
                *slot = c;
                true
            }
            None => false,
        }
    }

    /// Serializes in diagonal order.
    pub fn to_sequence(&self) -> ColorSequence {
        (0..=self.depth as u64)
            .map(|k| {
                let t = diag::tile_at(k);
                self.rows[t.y as usize][t.x as usize]
            })
            .collect::<Vec<_>>()
            .into()
    }

    /// Tiles of the domain in diagonal order.
    pub fn tiles(&self) -> impl Iterator<Item = Tile> {
        (0..=self.depth as u64).map(diag::tile_at)
    }

    pub fn max_color(&self) -> Color {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("periods must be at least 1 (got {p}x{q})")]
    Period { p: usize, q: usize },
    #[error("expected {expected} cells for a {p}x{q} torus, found {found}")]
    CellCount { p: usize, q: usize, expected: usize, found: usize },
    #[error("cell ({i}, {j}) has color {color}, outside the {colors}-color system")]
    Color { i: usize, j: usize, color: Color, colors: usize },
    #[error("cell (0, 0) has color {found}, the origin color is {expected}")]
    Origin { found: Color, expected: Color },
    #[error("horizontal pair ({from}, {to}) at cell ({i}, {j}) is not allowed")]
    Horizontal { i: usize, j: usize, from: Color, to: Color },
    #[error("vertical pair ({from}, {to}) at cell ({i}, {j}) is not allowed")]
    Vertical { i: usize, j: usize, from: Color, to: Color },
}

/// A `p x q` torus coloring. Unrolled as `f(x, y) = cells(x mod p, y mod q)`
/// it colors the whole quadrant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicWitness {
    p: usize,
    q: usize,
    /// Row-major: cell `(i, j)` at `j * p + i`.
    cells: Vec<Color>,
}

impl PeriodicWitness {
    /// Builds a torus from its rows, bottom-up (`rows[j][i]` is cell `(i, j)`).
    pub fn from_rows(rows: &[Vec<Color>]) -> Result<Self, WitnessError> {
        let q = rows.len();
        let p = rows.first().map_or(0, Vec::len);
        if p == 0 || q == 0 {
            return Err(WitnessError::Period { p, q });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != p) {
            return Err(WitnessError::CellCount { p, q, expected: p * q, found: p * (q - 1) + bad.len() });
        }
        Ok(PeriodicWitness { p, q, cells: rows.concat() })
    }

    pub(crate) fn from_cells(p: usize, q: usize, cells: Vec<Color>) -> Self {
        debug_assert_eq!(cells.len(), p * q);
        PeriodicWitness { p, q, cells }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn cell(&self, i: usize, j: usize) -> Color {
        self.cells[j * self.p + i]
    }

    pub fn rows(&self) -> Vec<Vec<Color>> {
        self.cells.chunks(self.p).map(<[Color]>::to_vec).collect()
    }

    /// Color of a quadrant tile in the unrolled coloring.
    pub fn color_at(&self, t: Tile) -> Color {
        self.cell((t.x % self.p as u64) as usize, (t.y % self.q as u64) as usize)
    }

    /// Checks the origin rule and every wrap-around pair of the torus.
    pub fn verify(&self, sys: &ColoringSystem) -> Result<(), WitnessError> {
        let (p, q) = (self.p, self.q);
        for j in 0..q {
            for i in 0..p {
                let c = self.cell(i, j);
                if c as usize >= sys.colors() {
                    return Err(WitnessError::Color { i, j, color: c, colors: sys.colors() });
                }
            }
        }
        if self.cell(0, 0) != sys.origin() {
            return Err(WitnessError::Origin { found: self.cell(0, 0), expected: sys.origin() });
        }
        for j in 0..q {
            for i in 0..p {
                let c = self.cell(i, j);
                let right = self.cell((i + 1) % p, j);
                if !sys.horizontal().contains(c, right) {
                    return Err(WitnessError::Horizontal { i, j, from: c, to: right });
                }
                let up = self.cell(i, (j + 1) % q);
                if !sys.vertical().contains(c, up) {
                    return Err(WitnessError::Vertical { i, j, from: c, to: up });
                }
            }
        }
        Ok(())
    }

    /// First `len` colors of the unrolled coloring in diagonal order.
    pub fn to_sequence(&self, len: usize) -> ColorSequence {
        (0..len as u64).map(|k| self.color_at(diag::tile_at(k))).collect::<Vec<_>>().into()
    }

    /// The unrolled coloring on the full triangle `x + y <= diagonals`.
    pub fn expand(&self, diagonals: usize) -> TriangleColoring {
        TriangleColoring::from_fn(diagonals, |t| self.color_at(t))
    }

    /// Applies a color bijection to every cell.
    pub fn relabel(&self, perm: &[Color]) -> PeriodicWitness {
        PeriodicWitness {
            p: self.p,
            q: self.q,
            cells: self.cells.iter().map(|&c| perm[c as usize]).collect(),
        }
    }
}

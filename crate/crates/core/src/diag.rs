//! Diagonal enumeration of the quadrant.
//!
//! Tiles are counted along anti-diagonals, starting at the origin and moving
//! from the y-axis towards the x-axis within each diagonal:
//!
//! ```text
//! 10
//!  6 11
//!  3  7 12
//!  1  4  8 13
//!  0  2  5  9 14
//! ```
//!
//! A tile's left and lower neighbours always carry a smaller index than the
//! tile itself, so a coloring can be grown one index at a time while checking
//! only the pairs that involve the newest tile.

use std::fmt;

use thiserror::Error;

/// Largest diagonal sum `x + y` accepted by [`index_of`].
pub const MAX_DIAGONAL: u64 = 1 << 31;

/// A cell `(x, y)` of the quadrant; `x` is the column, `y` the row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tile {
    pub x: u64,
    pub y: u64,
}

impl Tile {
    pub const ORIGIN: Tile = Tile { x: 0, y: 0 };

    pub const fn new(x: u64, y: u64) -> Self {
        Tile { x, y }
    }

    /// Index of the anti-diagonal holding this tile.
    pub const fn diagonal(self) -> u64 {
        self.x + self.y
    }

    pub fn left(self) -> Option<Tile> {
        self.x.checked_sub(1).map(|x| Tile { x, y: self.y })
    }

    pub fn below(self) -> Option<Tile> {
        self.y.checked_sub(1).map(|y| Tile { x: self.x, y })
    }

    pub fn right(self) -> Tile {
        Tile { x: self.x + 1, y: self.y }
    }

    pub fn above(self) -> Tile {
        Tile { x: self.x, y: self.y + 1 }
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl serde::Serialize for Tile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

impl From<(u64, u64)> for Tile {
    fn from((x, y): (u64, u64)) -> Self {
        Tile { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum RangeError {
    #[error("tile {0} lies beyond the supported diagonal range")]
    Tile(Tile),
    #[error("triangular number T({0}) does not fit in 64 bits")]
    Triangular(u64),
}

/// The `n`-th triangular number `n (n + 1) / 2`.
pub fn triangular(n: u64) -> Result<u64, RangeError> {
    // one of n, n + 1 is even; halve it first so the product is exact
    let (a, b) =
        if n.is_multiple_of(2) { (n / 2, n.checked_add(1)) } else { (n, n.checked_add(1).map(|m| m / 2)) };
    b.and_then(|b| a.checked_mul(b)).ok_or(RangeError::Triangular(n))
}

/// Diagonal index of a tile: `(x + y)(x + y + 1) / 2 + x`.
pub fn index_of(tile: Tile) -> Result<u64, RangeError> {
    let s = tile.x.checked_add(tile.y).filter(|&s| s <= MAX_DIAGONAL).ok_or(RangeError::Tile(tile))?;
    triangular(s).ok().and_then(|t| t.checked_add(tile.x)).ok_or(RangeError::Tile(tile))
}

/// Largest `j` with `T(j) <= k`, i.e. the diagonal that holds index `k`.
pub fn diagonal_of(k: u64) -> u64 {
    // T(j) <= k  <=>  j <= (sqrt(8k + 1) - 1) / 2
    let disc = 8 * u128::from(k) + 1;
    let mut j = ((disc.isqrt() - 1) / 2) as u64;
    while tri_wide(j) > u128::from(k) {
        j -= 1;
    }
    while tri_wide(j + 1) <= u128::from(k) {
        j += 1;
    }
    j
}

fn tri_wide(j: u64) -> u128 {
    let j = u128::from(j);
    j * (j + 1) / 2
}

/// Tile carrying diagonal index `k`.
pub fn tile_at(k: u64) -> Tile {
    let l = diagonal_of(k);
    let x = k - tri_wide(l) as u64;
    Tile { x, y: l - x }
}

/// Neighbourhood of every index below a horizon, precomputed for the search
/// loops: all four neighbours as diagonal indices.
#[derive(Debug, Clone)]
pub struct Layout {
    tiles: Vec<Tile>,
    left: Vec<Option<usize>>,
    below: Vec<Option<usize>>,
    right: Vec<usize>,
    above: Vec<usize>,
}

impl Layout {
    /// Layout of the first `len` indices.
    pub fn new(len: usize) -> Self {
        let mut tiles = Vec::with_capacity(len);
        let mut left = Vec::with_capacity(len);
        let mut below = Vec::with_capacity(len);
        let mut right = Vec::with_capacity(len);
        let mut above = Vec::with_capacity(len);
        let idx = |t: Tile| index_of(t).expect("in range") as usize;
        for k in 0..len as u64 {
            let t = tile_at(k);
            tiles.push(t);
            left.push(t.left().map(idx));
            below.push(t.below().map(idx));
            right.push(idx(t.right()));
            above.push(idx(t.above()));
        }
        Layout { tiles, left, below, right, above }
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn tile(&self, k: usize) -> Tile {
        self.tiles[k]
    }

    pub fn left(&self, k: usize) -> Option<usize> {
        self.left[k]
    }

    pub fn below(&self, k: usize) -> Option<usize> {
        self.below[k]
    }

    /// Index of the right neighbour; always on the next diagonal.
    pub fn right(&self, k: usize) -> usize {
        self.right[k]
    }

    /// Index of the upper neighbour; always on the next diagonal.
    pub fn above(&self, k: usize) -> usize {
        self.above[k]
    }
}

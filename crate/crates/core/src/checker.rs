//! Membership of finite colorings in the acceptable coloring space.
//!
//! A constraint binds only when both of its tiles lie in the colored domain;
//! tiles on the outer diagonal have right and upper neighbours outside it.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{ColorSequence, TriangleColoring};
use crate::diag::{self, Tile};
use crate::system::{full_mask, Axis, Color, ColoringSystem};

/// First broken rule, in diagonal-index order of the later tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Violation {
    Origin {
        found: Color,
        expected: Color,
    },
    Pair {
        axis: Axis,
        /// Diagonal index of the later tile of the pair.
        index: u64,
        from: Tile,
        to: Tile,
        colors: (Color, Color),
    },
}

impl Violation {
    pub fn index(&self) -> u64 {
        match self {
            Violation::Origin { .. } => 0,
            Violation::Pair { index, .. } => *index,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Origin { found, expected } => {
                write!(f, "origin (0, 0) has color {found}, expected {expected}")
            }
            Violation::Pair { axis, index, from, to, colors } => write!(
                f,
                "{axis} pair {from} -> {to} (index {index}) has colors ({}, {}), not allowed",
                colors.0, colors.1
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Accepted,
    Rejected(Violation),
}

impl Check {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Check::Accepted)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Check::Accepted => None,
            Check::Rejected(v) => Some(v),
        }
    }
}

/// Malformed input, as opposed to a coloring that breaks a rule.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("an acceptable sequence has at least one color")]
    Empty,
    #[error("index {index} has color {color}, outside the {colors}-color system")]
    ColorOutOfRange { index: u64, color: Color, colors: usize },
}

fn check_colors(sys: &ColoringSystem, colors: impl Iterator<Item = (u64, Color)>) -> Result<(), InputError> {
    for (index, color) in colors {
        if color as usize >= sys.colors() {
            return Err(InputError::ColorOutOfRange { index, color, colors: sys.colors() });
        }
    }
    Ok(())
}

/// Walks the domain in diagonal order; `color` must be total on tiles with
/// index `<= depth`.
fn check_domain(sys: &ColoringSystem, depth: u64, color: impl Fn(u64, Tile) -> Color) -> Check {
    let origin = color(0, Tile::ORIGIN);
    if origin != sys.origin() {
        return Check::Rejected(Violation::Origin { found: origin, expected: sys.origin() });
    }
    for k in 1..=depth {
        let t = diag::tile_at(k);
        let c = color(k, t);
        for (axis, nb) in [(Axis::Horizontal, t.left()), (Axis::Vertical, t.below())] {
            let Some(nb) = nb else { continue };
            let d = color(diag::index_of(nb).expect("neighbour precedes tile"), nb);
            if !sys.relation(axis).contains(d, c) {
                return Check::Rejected(Violation::Pair { axis, index: k, from: nb, to: t, colors: (d, c) });
            }
        }
    }
    Check::Accepted
}

/// Decides whether the partial coloring `g(j, k) = s[D(j, k)]` satisfies the
/// system.
pub fn check_sequence(sys: &ColoringSystem, seq: &ColorSequence) -> Result<Check, InputError> {
    let s = seq.as_slice();
    if s.is_empty() {
        return Err(InputError::Empty);
    }
    check_colors(sys, s.iter().enumerate().map(|(i, &c)| (i as u64, c)))?;
    Ok(check_domain(sys, s.len() as u64 - 1, |k, _| s[k as usize]))
}

/// Same decision as [`check_sequence`], read directly off the grid.
pub fn check_triangle(sys: &ColoringSystem, g: &TriangleColoring) -> Result<Check, InputError> {
    check_colors(sys, g.tiles().enumerate().map(|(k, t)| (k as u64, g.get(t).expect("tile in domain"))))?;
    Ok(check_domain(sys, g.depth() as u64, |_, t| g.get(t).expect("tile in domain")))
}

pub use crate::coloring::is_prefix;

/// Colors that can be appended to an accepted `prefix` while keeping it
/// accepted. Only the new tile's left and lower neighbours are consulted.
pub fn next_colors(sys: &ColoringSystem, prefix: &[Color]) -> u64 {
    if prefix.is_empty() {
        return 1 << sys.origin();
    }
    let t = diag::tile_at(prefix.len() as u64);
    let mut mask = full_mask(sys.colors());
    if let Some(l) = t.left() {
        let c = prefix[diag::index_of(l).expect("in range") as usize];
        mask &= sys.horizontal().successors(c);
    }
    if let Some(b) = t.below() {
        let c = prefix[diag::index_of(b).expect("in range") as usize];
        mask &= sys.vertical().successors(c);
    }
    mask
}

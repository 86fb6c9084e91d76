//! Coloring systems `(C, a, H, V)` and their isomorphism classes.
//!
//! Colors are `0..n`. Each adjacency relation is kept as `n` row masks, row
//! `c` holding bit `d` when `(c, d)` is in the relation. Read as one integer
//! with bit `c * n + d`, this is the row-major `n²`-bit mask used for census
//! ordering and canonical encodings.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A color, `0 <= c < n`.
pub type Color = u8;

/// Largest supported color count.
pub const MAX_COLORS: usize = 64;

/// Mask with the low `n` bits set.
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask in ascending order.
pub fn bits(mut mask: u64) -> impl Iterator<Item = Color> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let c = mask.trailing_zeros() as Color;
            mask &= mask - 1;
            Some(c)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Horizontal => "horizontal",
            Axis::Vertical => "vertical",
        })
    }
}

/// A binary relation on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    rows: Vec<u64>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation { rows: vec![0; n] }
    }

    pub fn full(n: usize) -> Self {
        Relation { rows: vec![full_mask(n); n] }
    }

    /// Builds a relation from its row-major mask; requires `n <= 8`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 8, "row-major masks fit a word only for n <= 8");
        let row = full_mask(n);
        Relation { rows: (0..n).map(|c| (mask >> (c * n)) & row).collect() }
    }

    pub fn colors(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, from: Color, to: Color) -> bool {
        self.rows.get(from as usize).is_some_and(|r| r >> to & 1 == 1)
    }

    pub fn insert(&mut self, from: Color, to: Color) {
        self.rows[from as usize] |= 1 << to;
    }

    /// Colors `d` with `(c, d)` in the relation.
    pub fn successors(&self, c: Color) -> u64 {
        self.rows[c as usize]
    }

    /// Colors `d` with `(d, c)` in the relation.
    pub fn predecessors(&self, c: Color) -> u64 {
        self.rows.iter().enumerate().filter(|(_, r)| *r >> c & 1 == 1).fold(0, |acc, (d, _)| acc | 1 << d)
    }

    /// Colors `c` with `(c, c)` in the relation.
    pub fn loops(&self) -> u64 {
        self.rows.iter().enumerate().filter(|(c, r)| *r >> c & 1 == 1).fold(0, |acc, (c, _)| acc | 1 << c)
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// Row-major mask, available for `n <= 8`.
    pub fn mask(&self) -> Option<u64> {
        let n = self.colors();
        (n <= 8).then(|| self.rows.iter().enumerate().fold(0, |acc, (c, &r)| acc | r << (c * n)))
    }

    /// Pairs in ascending lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (Color, Color)> + '_ {
        self.rows.iter().enumerate().flat_map(|(c, &r)| bits(r).map(move |d| (c as Color, d)))
    }

    /// Image of the relation under the color map `perm`.
    pub fn relabel(&self, perm: &[Color]) -> Relation {
        let mut rows = vec![0u64; self.rows.len()];
        for (c, &r) in self.rows.iter().enumerate() {
            rows[perm[c] as usize] = bits(r).fold(0, |acc, d| acc | 1 << perm[d as usize]);
        }
        Relation { rows }
    }

    /// Compares the row-major masks as unsigned integers.
    fn cmp_mask(&self, other: &Relation) -> Ordering {
        self.rows.iter().rev().cmp(other.rows.iter().rev())
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// A validated coloring system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoringSystem {
    origin: Color,
    horizontal: Relation,
    vertical: Relation,
}

/// One violated system invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Issue {
    ColorCount { colors: u64 },
    Origin { origin: u64, colors: u64 },
    Pair { axis: Axis, pair: [u64; 2], colors: u64 },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::ColorCount { colors } => {
                write!(f, "color count {colors} outside 1..={MAX_COLORS}")
            }
            Issue::Origin { origin, colors } => {
                write!(f, "origin color {origin} not below color count {colors}")
            }
            Issue::Pair { axis, pair, colors } => {
                write!(f, "{axis} pair ({}, {}) out of range for {colors} colors", pair[0], pair[1])
            }
        }
    }
}

/// Every invariant a candidate system violates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid coloring system")?;
        for issue in &self.issues {
            write!(f, "; {issue}")?;
        }
        Ok(())
    }
}

/// Interchange form of a system, as read from and written to JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub colors: u64,
    pub origin: u64,
    pub horizontal: Vec<[u64; 2]>,
    pub vertical: Vec<[u64; 2]>,
}

impl SystemFile {
    /// Checks every invariant and reports all violations at once.
    pub fn validate(&self) -> Result<ColoringSystem, ValidationReport> {
        let n = self.colors;
        let mut issues = Vec::new();
        if n == 0 || n > MAX_COLORS as u64 {
            issues.push(Issue::ColorCount { colors: n });
        }
        if self.origin >= n {
            issues.push(Issue::Origin { origin: self.origin, colors: n });
        }
        for (axis, pairs) in [(Axis::Horizontal, &self.horizontal), (Axis::Vertical, &self.vertical)] {
            for &pair in pairs {
                if pair[0] >= n || pair[1] >= n {
                    issues.push(Issue::Pair { axis, pair, colors: n });
                }
            }
        }
        if !issues.is_empty() {
            return Err(ValidationReport { issues });
        }
        let n = n as usize;
        let mut horizontal = Relation::empty(n);
        let mut vertical = Relation::empty(n);
        for &[c, d] in &self.horizontal {
            horizontal.insert(c as Color, d as Color);
        }
        for &[c, d] in &self.vertical {
            vertical.insert(c as Color, d as Color);
        }
        Ok(ColoringSystem { origin: self.origin as Color, horizontal, vertical })
    }
}

impl From<&ColoringSystem> for SystemFile {
    fn from(sys: &ColoringSystem) -> Self {
        let widen = |r: &Relation| r.pairs().map(|(c, d)| [u64::from(c), u64::from(d)]).collect();
        SystemFile {
            colors: sys.colors() as u64,
            origin: u64::from(sys.origin),
            horizontal: widen(&sys.horizontal),
            vertical: widen(&sys.vertical),
        }
    }
}

/// Validates a candidate system given as raw parts.
pub fn validate_system(candidate: &SystemFile) -> Result<ColoringSystem, ValidationReport> {
    candidate.validate()
}

impl ColoringSystem {
    pub fn new(
        colors: usize,
        origin: Color,
        horizontal: impl IntoIterator<Item = (Color, Color)>,
        vertical: impl IntoIterator<Item = (Color, Color)>,
    ) -> Result<Self, ValidationReport> {
        let wide = |pairs: &mut dyn Iterator<Item = (Color, Color)>| {
            pairs.map(|(c, d)| [u64::from(c), u64::from(d)]).collect()
        };
        SystemFile {
            colors: colors as u64,
            origin: u64::from(origin),
            horizontal: wide(&mut horizontal.into_iter()),
            vertical: wide(&mut vertical.into_iter()),
        }
        .validate()
    }

    /// Builds a system from row-major relation masks; `colors <= 8`.
    pub fn from_masks(colors: usize, origin: Color, h_mask: u64, v_mask: u64) -> Self {
        assert!((1..=8).contains(&colors) && (origin as usize) < colors);
        let bits = colors * colors;
        if bits < 64 {
            assert!(h_mask >> bits == 0 && v_mask >> bits == 0, "mask out of range");
        }
        ColoringSystem {
            origin,
            horizontal: Relation::from_mask(colors, h_mask),
            vertical: Relation::from_mask(colors, v_mask),
        }
    }

    pub fn colors(&self) -> usize {
        self.horizontal.colors()
    }

    pub fn origin(&self) -> Color {
        self.origin
    }

    pub fn horizontal(&self) -> &Relation {
        &self.horizontal
    }

    pub fn vertical(&self) -> &Relation {
        &self.vertical
    }

    pub fn relation(&self, axis: Axis) -> &Relation {
        match axis {
            Axis::Horizontal => &self.horizontal,
            Axis::Vertical => &self.vertical,
        }
    }

    pub fn to_file(&self) -> SystemFile {
        SystemFile::from(self)
    }

    /// Canonical interchange JSON: compact, pairs sorted, trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(&self.to_file()).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// Image of the system under the bijection `perm` (`perm[c]` is the new
    /// label of color `c`).
    pub fn relabel(&self, perm: &[Color]) -> ColoringSystem {
        debug_assert!(is_permutation(perm, self.colors()));
        ColoringSystem {
            origin: perm[self.origin as usize],
            horizontal: self.horizontal.relabel(perm),
            vertical: self.vertical.relabel(perm),
        }
    }

    /// Order on encodings `(origin, H mask, V mask)`, masks compared as integers.
    pub fn cmp_encoding(&self, other: &ColoringSystem) -> Ordering {
        self.colors()
            .cmp(&other.colors())
            .then(self.origin.cmp(&other.origin))
            .then_with(|| self.horizontal.cmp_mask(&other.horizontal))
            .then_with(|| self.vertical.cmp_mask(&other.vertical))
    }

    /// The least encoding over all relabelings, together with a bijection
    /// reaching it. Tries every bijection, so cost grows as `(n - 1)!`.
    pub fn canonical_labeling(&self) -> (ColoringSystem, Vec<Color>) {
        let n = self.colors();
        let origin = self.origin as usize;
        // the least encoding always sends the origin to 0
        let mut rest: Vec<Color> = (1..n as Color).collect();
        let mut perm = vec![0 as Color; n];
        let mut best: Option<(ColoringSystem, Vec<Color>)> = None;
        loop {
            let mut it = rest.iter();
            for (c, slot) in perm.iter_mut().enumerate() {
                *slot = if c == origin { 0 } else { *it.next().unwrap() };
            }
            let image = self.relabel(&perm);
            if best.as_ref().is_none_or(|(b, _)| image.cmp_encoding(b) == Ordering::Less) {
                best = Some((image, perm.clone()));
            }
            if !next_permutation(&mut rest) {
                break;
            }
        }
        best.expect("at least one bijection")
    }

    pub fn canonical_form(&self) -> ColoringSystem {
        self.canonical_labeling().0
    }

    /// Compact textual identifier `origin:H:V` (hex masks), for `n <= 8`.
    pub fn mask_id(&self) -> Option<String> {
        Some(format!("{}:{:x}:{:x}", self.origin, self.horizontal.mask()?, self.vertical.mask()?))
    }
}

impl fmt::Display for ColoringSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{n: {}, a: {}, H: {:?}, V: {:?}}}",
            self.colors(),
            self.origin,
            self.horizontal,
            self.vertical
        )
    }
}

pub fn canonical_form(sys: &ColoringSystem) -> ColoringSystem {
    sys.canonical_form()
}

fn is_permutation(perm: &[Color], n: usize) -> bool {
    perm.len() == n && perm.iter().fold(0u64, |acc, &c| acc | 1 << c) == full_mask(n)
}

/// Rearranges into the next permutation in lexicographic order; returns
/// `false` (leaving the slice sorted ascending) after the last one.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        v.reverse();
        return false;
    };
    let j = v.iter().rposition(|x| *x > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Finds a bijection `phi` with `phi(a1) = a2` carrying `s1`'s relations
/// exactly onto `s2`'s; `phi[c]` is the image of `c`.
pub fn find_isomorphism(s1: &ColoringSystem, s2: &ColoringSystem) -> Option<Vec<Color>> {
    let n = s1.colors();
    if n != s2.colors()
        || s1.horizontal.len() != s2.horizontal.len()
        || s1.vertical.len() != s2.vertical.len()
    {
        return None;
    }
    let sig1: Vec<_> = (0..n as Color).map(|c| signature(s1, c)).collect();
    let sig2: Vec<_> = (0..n as Color).map(|c| signature(s2, c)).collect();
    if sig1[s1.origin as usize] != sig2[s2.origin as usize] {
        return None;
    }
    let mut order: Vec<Color> = vec![s1.origin];
    order.extend((0..n as Color).filter(|&c| c != s1.origin));
    let mut phi = vec![Color::MAX; n];
    phi[s1.origin as usize] = s2.origin;
    let mut used = 1u64 << s2.origin;
    if extend_isomorphism(s1, s2, &sig1, &sig2, &order, 1, &mut phi, &mut used) {
        Some(phi)
    } else {
        None
    }
}

type Signature = (u32, u32, u32, u32, bool, bool);

fn signature(s: &ColoringSystem, c: Color) -> Signature {
    (
        s.horizontal.successors(c).count_ones(),
        s.horizontal.predecessors(c).count_ones(),
        s.vertical.successors(c).count_ones(),
        s.vertical.predecessors(c).count_ones(),
        s.horizontal.contains(c, c),
        s.vertical.contains(c, c),
    )
}

#[allow(clippy::too_many_arguments)]
fn extend_isomorphism(
    s1: &ColoringSystem,
    s2: &ColoringSystem,
    sig1: &[Signature],
    sig2: &[Signature],
    order: &[Color],
    depth: usize,
    phi: &mut [Color],
    used: &mut u64,
) -> bool {
    if depth > 0 && !consistent(s1, s2, order, depth, phi) {
        return false;
    }
    if depth == order.len() {
        return true;
    }
    let c = order[depth];
    let free = full_mask(s1.colors()) & !*used;
    for d in bits(free) {
        if sig1[c as usize] != sig2[d as usize] {
            continue;
        }
        phi[c as usize] = d;
        *used |= 1 << d;
        if extend_isomorphism(s1, s2, sig1, sig2, order, depth + 1, phi, used) {
            return true;
        }
        *used &= !(1 << d);
    }
    phi[c as usize] = Color::MAX;
    false
}

/// Checks every pair between the newest mapped color and the mapped prefix.
fn consistent(
    s1: &ColoringSystem,
    s2: &ColoringSystem,
    order: &[Color],
    depth: usize,
    phi: &[Color],
) -> bool {
    let c = order[depth - 1];
    let pc = phi[c as usize];
    order[..depth].iter().all(|&e| {
        let pe = phi[e as usize];
        [&s1.horizontal, &s1.vertical].into_iter().zip([&s2.horizontal, &s2.vertical]).all(|(r1, r2)| {
            r1.contains(c, e) == r2.contains(pc, pe) && r1.contains(e, c) == r2.contains(pe, pc)
        })
    })
}

/// Whether some bijection maps one system onto the other. Systems with
/// different color counts are never isomorphic.
pub fn is_isomorphic(s1: &ColoringSystem, s2: &ColoringSystem) -> bool {
    find_isomorphism(s1, s2).is_some()
}

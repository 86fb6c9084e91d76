//! Reference implementations that share no code with the library: tile
//! positions come from walking diagonals, acceptance from pair lookups in a
//! position table, enumeration from filtering all `n^L` sequences.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use colorsys::system::Color;
use colorsys::ColoringSystem;
use rand::Rng;

/// The first `len` tiles in diagonal order: diagonal `s`, then `x = 0..=s`.
pub fn tiles(len: usize) -> Vec<(u64, u64)> {
    let mut out = Vec::with_capacity(len);
    let mut s = 0;
    while out.len() < len {
        for x in 0..=s {
            if out.len() == len {
                break;
            }
            out.push((x, s - x));
        }
        s += 1;
    }
    out
}

/// Plain relation view: `h[c][d]` / `v[c][d]`.
pub struct Tables {
    pub n: usize,
    pub origin: Color,
    pub h: Vec<Vec<bool>>,
    pub v: Vec<Vec<bool>>,
}

impl Tables {
    pub fn of(sys: &ColoringSystem) -> Self {
        let n = sys.colors();
        let mut h = vec![vec![false; n]; n];
        let mut v = vec![vec![false; n]; n];
        for (c, d) in sys.horizontal().pairs() {
            h[c as usize][d as usize] = true;
        }
        for (c, d) in sys.vertical().pairs() {
            v[c as usize][d as usize] = true;
        }
        Tables { n, origin: sys.origin(), h, v }
    }
}

/// In-domain neighbour pairs among the first `len` tiles, as
/// `(earlier, later, horizontal)` positions.
pub fn pair_list(len: usize) -> Vec<(usize, usize, bool)> {
    let pos = tiles(len);
    let at: HashMap<(u64, u64), usize> = pos.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut out = Vec::new();
    for (i, &(x, y)) in pos.iter().enumerate() {
        if let Some(&r) = at.get(&(x + 1, y)) {
            out.push((i, r, true));
        }
        if let Some(&u) = at.get(&(x, y + 1)) {
            out.push((i, u, false));
        }
    }
    out
}

/// Acceptance from first principles: origin color, then every in-domain
/// horizontal and vertical pair.
pub fn accepts(t: &Tables, seq: &[Color]) -> bool {
    accepts_with(t, seq, &pair_list(seq.len()))
}

/// As [`accepts`], with a pair list for at least `seq.len()` tiles.
pub fn accepts_with(t: &Tables, seq: &[Color], pairs: &[(usize, usize, bool)]) -> bool {
    if seq.is_empty() || seq[0] != t.origin {
        return false;
    }
    pairs.iter().filter(|&&(_, j, _)| j < seq.len()).all(|&(i, j, horiz)| {
        let rel = if horiz { &t.h } else { &t.v };
        rel[seq[i] as usize][seq[j] as usize]
    })
}

/// All accepted sequences of length `len`, by filtering every `n^len` word.
pub fn brute_enumerate(sys: &ColoringSystem, len: usize) -> BTreeSet<Vec<Color>> {
    let t = Tables::of(sys);
    let mut out = BTreeSet::new();
    let total = (t.n as u64).pow(len as u32);
    let pairs = pair_list(len);
    let mut word = vec![0 as Color; len];
    for mut w in 0..total {
        for slot in word.iter_mut().rev() {
            *slot = (w % t.n as u64) as Color;
            w /= t.n as u64;
        }
        if accepts_with(&t, &word, &pairs) {
            out.insert(word.clone());
        }
    }
    out
}

/// Random system; each pair present with probability `density`.
pub fn random_system(rng: &mut impl Rng, n: usize, density: f64) -> ColoringSystem {
    let origin = rng.gen_range(0..n) as Color;
    let mut pick = || {
        let mut pairs = Vec::new();
        for c in 0..n as Color {
            for d in 0..n as Color {
                if rng.gen_bool(density) {
                    pairs.push((c, d));
                }
            }
        }
        pairs
    };
    let h = pick();
    let v = pick();
    ColoringSystem::new(n, origin, h, v).expect("pairs in range")
}

/// Every permutation of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<Color>> {
    fn go(prefix: &mut Vec<Color>, left: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..left.len() {
            let c = left.remove(i);
            prefix.push(c);
            go(prefix, left, out);
            prefix.pop();
            left.insert(i, c);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..n as Color).collect(), &mut out);
    out
}

/// Every system with `n` colors, built from explicit pair lists.
pub fn all_systems(n: usize) -> Vec<ColoringSystem> {
    let pairs: Vec<(Color, Color)> =
        (0..n as Color).flat_map(|c| (0..n as Color).map(move |d| (c, d))).collect();
    let subset = |m: u64| -> Vec<(Color, Color)> {
        pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &p)| p).collect()
    };
    let k = pairs.len();
    let mut out = Vec::new();
    for a in 0..n as Color {
        for h in 0..1u64 << k {
            for v in 0..1u64 << k {
                out.push(ColoringSystem::new(n, a, subset(h), subset(v)).unwrap());
            }
        }
    }
    out
}

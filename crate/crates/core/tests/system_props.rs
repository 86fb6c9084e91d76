mod common;

use colorsys::system::{find_isomorphism, Color};
use colorsys::{canonical_form, is_isomorphic, ColoringSystem};
use common::{all_systems, permutations, random_system};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(origin, H, V)` with masks read off the pair lists, bit `c·n + d`.
fn encoding(s: &ColoringSystem) -> (Color, u64, u64) {
    let n = s.colors();
    let mask = |pairs: Vec<(Color, Color)>| {
        pairs.iter().fold(0u64, |m, &(c, d)| m | 1 << (c as usize * n + d as usize))
    };
    (s.origin(), mask(s.horizontal().pairs().collect()), mask(s.vertical().pairs().collect()))
}

fn apply(s: &ColoringSystem, perm: &[Color]) -> ColoringSystem {
    let m = |c: Color| perm[c as usize];
    ColoringSystem::new(
        s.colors(),
        m(s.origin()),
        s.horizontal().pairs().map(|(c, d)| (m(c), m(d))),
        s.vertical().pairs().map(|(c, d)| (m(c), m(d))),
    )
    .unwrap()
}

/// Least encoding over every relabeling.
fn oracle_canonical(s: &ColoringSystem) -> (Color, u64, u64) {
    permutations(s.colors()).iter().map(|p| encoding(&apply(s, p))).min().unwrap()
}

#[test]
fn canonical_form_is_invariant_and_idempotent_exhaustively() {
    for n in 1..=3 {
        let perms = permutations(n);
        for s in all_systems(n) {
            let c = canonical_form(&s);
            assert_eq!(c.origin(), 0);
            assert_eq!(canonical_form(&c), c);
            assert!(is_isomorphic(&s, &c));
            for p in &perms[1..] {
                assert_eq!(canonical_form(&apply(&s, p)), c, "{s} under {p:?}");
            }
        }
    }
}

#[test]
fn canonical_form_is_least_encoding() {
    for s in all_systems(2) {
        assert_eq!(encoding(&canonical_form(&s)), oracle_canonical(&s));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xca);
    for _ in 0..3000 {
        let n = rng.gen_range(3..=5);
        let d = rng.gen_range(0.1..0.9);
        let s = random_system(&mut rng, n, d);
        assert_eq!(encoding(&canonical_form(&s)), oracle_canonical(&s), "{s}");
    }
}

#[test]
fn class_count_for_two_colors() {
    let mut classes: Vec<_> = all_systems(2).iter().map(canonical_form).collect();
    classes.sort_by(|a, b| a.cmp_encoding(b));
    classes.dedup();
    // Burnside: (512 + fixed points of the swap) / 2; the swap fixes a system
    // only if it fixes the origin, which it never does.
    assert_eq!(classes.len(), 256);
}

#[test]
fn isomorphism_is_an_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    for _ in 0..3000 {
        let n = rng.gen_range(1..=4);
        let d = rng.gen_range(0.2..0.8);
        let a = random_system(&mut rng, n, d);
        let perms = permutations(n);
        let b = apply(&a, &perms[rng.gen_range(0..perms.len())]);
        // c: either another relabeling of a or an unrelated system
        let c = if rng.gen_bool(0.5) {
            apply(&b, &perms[rng.gen_range(0..perms.len())])
        } else {
            random_system(&mut rng, n, d)
        };
        assert!(is_isomorphic(&a, &a));
        assert!(is_isomorphic(&a, &b) && is_isomorphic(&b, &a));
        assert_eq!(is_isomorphic(&a, &c), is_isomorphic(&c, &a));
        assert_eq!(is_isomorphic(&b, &c), is_isomorphic(&a, &c));
        let brute = perms.iter().any(|p| apply(&a, p) == c);
        assert_eq!(is_isomorphic(&a, &c), brute, "{a} vs {c}");
        if let Some(p) = find_isomorphism(&a, &c) {
            assert_eq!(apply(&a, &p), c);
        }
        assert_eq!(is_isomorphic(&a, &c), canonical_form(&a) == canonical_form(&c));
    }
}

#[test]
fn different_color_counts_are_not_isomorphic() {
    let a = ColoringSystem::new(1, 0, [], []).unwrap();
    let b = ColoringSystem::new(2, 0, [], []).unwrap();
    assert!(!is_isomorphic(&a, &b));
    assert_eq!(find_isomorphism(&a, &b), None);
}

#[test]
fn system_file_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xf1);
    for _ in 0..500 {
        let n = rng.gen_range(1..=12);
        let s = random_system(&mut rng, n, 0.3);
        let text = s.to_json();
        assert_eq!(colorsys::io::parse_system(&text).unwrap(), s);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in ["horizontal", "vertical"] {
            let pairs: Vec<(u64, u64)> = v[key]
                .as_array()
                .unwrap()
                .iter()
                .map(|p| (p[0].as_u64().unwrap(), p[1].as_u64().unwrap()))
                .collect();
            assert!(pairs.windows(2).all(|w| w[0] < w[1]), "{key} not strictly sorted");
        }
    }
}

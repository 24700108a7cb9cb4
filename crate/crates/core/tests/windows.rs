//! Canonical keys and repeat counting against brute-force isomorphism search
//! and exhaustive interval packing.

use std::collections::BTreeSet;

use poset_endo::generators::{gen_random_tower, TowerParams};
use poset_endo::*;
use proptest::prelude::*;

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

fn cover_set(w: &Window) -> BTreeSet<(usize, usize)> {
    w.induced.covers().collect()
}

/// Tries every product of per-level permutations.
fn brute_iso(a: &Window, b: &Window) -> bool {
    let (la, lb) = (a.levels(), b.levels());
    if la.len() != lb.len() || la.iter().zip(&lb).any(|(x, y)| x.len() != y.len()) {
        return false;
    }
    let target = cover_set(b);
    let perms: Vec<Vec<Vec<usize>>> = la.iter().map(|l| permutations(l.len())).collect();
    let mut idx = vec![0; la.len()];
    loop {
        let mut map = vec![0; a.induced.len()];
        for (r, level) in la.iter().enumerate() {
            for (i, &x) in level.iter().enumerate() {
                map[x] = lb[r][perms[r][idx[r]][i]];
            }
        }
        let mapped: BTreeSet<_> = a.induced.covers().map(|(u, v)| (map[u], map[v])).collect();
        if mapped == target {
            return true;
        }
        let mut r = 0;
        loop {
            if r == idx.len() {
                return false;
            }
            idx[r] += 1;
            if idx[r] < perms[r].len() {
                break;
            }
            idx[r] = 0;
            r += 1;
        }
    }
}

/// Largest subset of starts with consecutive picks at least `gap` apart.
fn brute_pack(starts: &[usize], gap: usize) -> usize {
    let k = starts.len();
    (0u32..1 << k)
        .filter(|&m| {
            let picked: Vec<usize> = (0..k).filter(|&i| m >> i & 1 == 1).map(|i| starts[i]).collect();
            picked.windows(2).all(|w| w[1] >= w[0] + gap)
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn tower() -> impl Strategy<Value = Poset> {
    (any::<u64>(), 3usize..=8, 1usize..=3, 0.3f64..=1.0)
        .prop_map(|(seed, levels, max, d)| {
            gen_random_tower(&TowerParams::new(seed, levels, max, d)).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_keys_decide_isomorphism(p in tower(), span in 1usize..=2) {
        let g = compute_grading(&p).unwrap();
        prop_assume!(g.top_rank >= span);
        let ws: Vec<Window> =
            (0..=g.top_rank - span).map(|lo| window(&p, &g, lo, span).unwrap()).collect();
        for a in &ws {
            for b in &ws {
                let same_key = a.canonical_key == b.canonical_key;
                prop_assert_eq!(same_key, brute_iso(a, b));
                prop_assert_eq!(same_key, is_isomorphic_rank_preserving(a, b).is_some());
            }
        }
    }

    #[test]
    fn keys_survive_relabeling(p in tower(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..p.len()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let q = p.relabel(&perm);
        let (gp, gq) = (compute_grading(&p).unwrap(), compute_grading(&q).unwrap());
        let wp = window(&p, &gp, 0, gp.top_rank).unwrap();
        let wq = window(&q, &gq, 0, gq.top_rank).unwrap();
        prop_assert_eq!(wp.canonical_key, wq.canonical_key);
    }

    #[test]
    fn repeat_counts_match_exhaustive_packing(p in tower(), span in 1usize..=3) {
        let g = compute_grading(&p).unwrap();
        prop_assume!(g.top_rank >= span);
        let rep = find_repeating_windows(&p, &g, span);
        let ws: Vec<Window> =
            (0..=g.top_rank - span).map(|lo| window(&p, &g, lo, span).unwrap()).collect();
        for group in &rep.groups {
            let starts: Vec<usize> = ws
                .iter()
                .filter(|w| brute_iso(w, &ws[group.starts[0]]))
                .map(|w| w.lo)
                .collect();
            prop_assert_eq!(&starts, &group.starts);
            prop_assert_eq!(group.c, brute_pack(&starts, span));
            prop_assert_eq!(group.c_strict, brute_pack(&starts, span + 1));
        }
        let best = rep.groups.iter().map(|g| g.c).max().unwrap_or(0);
        prop_assert_eq!(rep.c(), best);
    }
}

#[test]
fn stacked_blocks_repeat_k_times() {
    let blocks = [
        (gen_diamond_tower(1), 0, 2),
        (fixture(Fixture::K333), 0, 2),
        (complete_levels(&[2, 3, 1, 2]), 0, 3),
    ];
    for (p, lo, span) in blocks {
        let g = compute_grading(&p).unwrap();
        let w = window(&p, &g, lo, span).unwrap();
        for k in 1..=5 {
            let q = gen_stacked(&w, k, None).unwrap();
            let gq = compute_grading(&q).unwrap();
            let rep = find_repeating_windows(&q, &gq, span);
            let group = rep.group(&w.canonical_key).unwrap();
            // copies sit at lo = 0, span, 2 span, …
            let copies: Vec<usize> = (0..k).map(|i| i * span).collect();
            assert!(copies.iter().all(|s| group.starts.contains(s)));
            assert!(group.c >= k);
            assert_eq!(
                copies.iter().filter(|&&s| brute_iso(&window(&q, &gq, s, span).unwrap(), &w)).count(),
                k
            );
        }
    }
}

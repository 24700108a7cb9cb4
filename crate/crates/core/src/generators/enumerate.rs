//! Exhaustive enumeration of small graded posets and of all small posets.

use std::collections::HashSet;

use crate::bitset::BitSet;
use crate::error::GenerateError;
use crate::poset::Poset;
use crate::window::canonical_form;

/// Largest element count accepted by [`enumerate_all_posets`].
pub const MAX_POSET_N: usize = 5;

/// Default cap on the number of candidate cover relations examined.
pub const DEFAULT_GRADED_BUDGET: u64 = 1 << 24;

/// Lazily yields every graded poset of rank `0..=max_rank` whose levels have
/// between 1 and `max_level` elements and whose covers join consecutive levels,
/// with every element covering (resp. covered by) at least one element of the
/// adjacent level where that level exists. Elements are numbered level by
/// level. With `dedup`, only the first poset of each rank-preserving
/// isomorphism class is yielded.
pub struct GradedEnumerator {
    max_rank: usize,
    max_level: usize,
    sizes: Vec<usize>,
    masks: Vec<u64>,
    done: bool,
    seen: Option<HashSet<Vec<u8>>>,
}

/// Number of candidate relations [`GradedEnumerator`] will examine.
pub fn graded_candidates(max_rank: usize, max_level: usize) -> u128 {
    let mut total: u128 = 0;
    for rank in 0..=max_rank {
        let mut sizes = vec![1; rank + 1];
        loop {
            let bits: u32 = sizes.windows(2).map(|w| (w[0] * w[1]) as u32).sum();
            total = total.saturating_add(1u128.checked_shl(bits).unwrap_or(u128::MAX));
            if !next_sizes(&mut sizes, max_level) {
                break;
            }
        }
    }
    total
}

pub fn enumerate_all_graded(
    max_rank: usize,
    max_level: usize,
    dedup: bool,
    budget: u64,
) -> Result<GradedEnumerator, GenerateError> {
    if max_level == 0 {
        return Err(GenerateError::InvalidParameter("max_level must be positive".into()));
    }
    let candidates = graded_candidates(max_rank, max_level);
    if candidates > budget as u128 {
        return Err(GenerateError::BudgetExceeded(format!(
            "{candidates} candidate relations exceed the budget of {budget}"
        )));
    }
    Ok(GradedEnumerator {
        max_rank,
        max_level,
        sizes: vec![1],
        masks: Vec::new(),
        done: false,
        seen: dedup.then(HashSet::new),
    })
}

fn next_sizes(sizes: &mut [usize], max_level: usize) -> bool {
    for s in sizes.iter_mut().rev() {
        if *s < max_level {
            *s += 1;
            return true;
        }
        *s = 1;
    }
    false
}

impl GradedEnumerator {
    fn advance(&mut self) {
        // odometer over the masks of each gap, then over shapes, then ranks
        for (gap, m) in self.masks.iter_mut().enumerate().rev() {
            let bits = self.sizes[gap] * self.sizes[gap + 1];
            if *m + 1 < (1u64 << bits) {
                *m += 1;
                return;
            }
            *m = 0;
        }
        if !next_sizes(&mut self.sizes, self.max_level) {
            if self.sizes.len() > self.max_rank {
                self.done = true;
                return;
            }
            self.sizes = vec![1; self.sizes.len() + 1];
            self.masks = vec![0; self.sizes.len() - 1];
        }
    }

    fn current(&self) -> Option<(Poset, Vec<Vec<usize>>)> {
        let mut starts = Vec::with_capacity(self.sizes.len());
        let mut n = 0;
        for &s in &self.sizes {
            starts.push(n);
            n += s;
        }
        let mut up_deg = vec![0; n];
        let mut down_deg = vec![0; n];
        let mut covers = Vec::new();
        for (gap, &m) in self.masks.iter().enumerate() {
            let (a, b) = (self.sizes[gap], self.sizes[gap + 1]);
            for i in 0..a {
                for j in 0..b {
                    if m >> (i * b + j) & 1 == 1 {
                        let (u, v) = (starts[gap] + i, starts[gap + 1] + j);
                        covers.push((u, v));
                        up_deg[u] += 1;
                        down_deg[v] += 1;
                    }
                }
            }
        }
        let top = self.sizes.len() - 1;
        for (lvl, &start) in starts.iter().enumerate() {
            for x in start..start + self.sizes[lvl] {
                if (lvl < top && up_deg[x] == 0) || (lvl > 0 && down_deg[x] == 0) {
                    return None;
                }
            }
        }
        let p = Poset::from_cover_list(n, &covers).expect("covers join consecutive levels");
        let levels = starts
            .iter()
            .zip(&self.sizes)
            .map(|(&s, &k)| (s..s + k).collect())
            .collect();
        Some((p, levels))
    }
}

impl Iterator for GradedEnumerator {
    type Item = Poset;

    fn next(&mut self) -> Option<Poset> {
        while !self.done {
            let found = self.current();
            self.advance();
            if let Some((p, levels)) = found {
                if let Some(seen) = &mut self.seen {
                    if !seen.insert(canonical_form(&p, &levels)) {
                        continue;
                    }
                }
                return Some(p);
            }
        }
        None
    }
}

/// Every labeled poset on `n` elements, enumerated as strict order relations
/// (irreflexive, antisymmetric, transitive) and reduced to covers. With
/// `dedup`, one representative per isomorphism class is kept.
pub fn enumerate_all_posets(n: usize, dedup: bool) -> Result<Vec<Poset>, GenerateError> {
    if n > MAX_POSET_N {
        return Err(GenerateError::SizeLimit(format!(
            "poset enumeration needs n <= {MAX_POSET_N}, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    'relations: for mask in 0u64..(1u64 << pairs.len()) {
        let mut rel = vec![0u32; n];
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                if rel[j] >> i & 1 == 1 {
                    continue 'relations;
                }
                rel[i] |= 1 << j;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if rel[i] >> j & 1 == 1 && rel[j] & !rel[i] != 0 {
                    continue 'relations;
                }
            }
        }
        let above: Vec<BitSet> = rel
            .iter()
            .map(|&r| {
                let mut s = BitSet::new(n);
                for j in 0..n {
                    if r >> j & 1 == 1 {
                        s.insert(j);
                    }
                }
                s
            })
            .collect();
        let p = Poset::from_strict_order(n, &above)?;
        if dedup && !seen.insert(poset_canonical_key(&p)) {
            continue;
        }
        out.push(p);
    }
    Ok(out)
}

/// Least strict-order matrix over all relabelings; equal keys iff isomorphic.
/// Brute force over `n!` permutations, for small `n` only.
pub fn poset_canonical_key(p: &Poset) -> Vec<u8> {
    let n = p.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u8>> = None;
    loop {
        // perm[new] = old
        let mut key = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                key.push(p.lt(perm[i], perm[j]) as u8);
            }
        }
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let mut out = vec![n as u8];
    out.extend(best.unwrap_or_default());
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

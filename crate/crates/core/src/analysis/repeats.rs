use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::grading::GradedInfo;
use crate::poset::Poset;
use crate::window::window;

/// All windows of one isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepeatGroup {
    pub key: Vec<u8>,
    /// Start ranks, ascending.
    pub starts: Vec<usize>,
    /// Most occurrences whose rank intervals pairwise share at most one
    /// boundary rank (disjoint interiors).
    pub c: usize,
    /// Most occurrences whose rank intervals are pairwise disjoint.
    pub c_strict: usize,
}

/// Windows of a fixed span grouped by canonical key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepeatReport {
    pub span: usize,
    /// Sorted by key.
    pub groups: Vec<RepeatGroup>,
    /// Key with the largest `c`; the smallest such key on ties.
    pub best_key: Option<Vec<u8>>,
}

impl RepeatReport {
    pub fn best(&self) -> Option<&RepeatGroup> {
        let key = self.best_key.as_ref()?;
        self.group(key)
    }

    pub fn group(&self, key: &[u8]) -> Option<&RepeatGroup> {
        self.groups
            .binary_search_by(|g| g.key.as_slice().cmp(key))
            .ok()
            .map(|i| &self.groups[i])
    }

    /// `c` of the best group, or 0 when no window exists.
    pub fn c(&self) -> usize {
        self.best().map_or(0, |g| g.c)
    }
}

/// Greedy earliest-start selection; optimal for equal-length intervals.
/// Consecutive picks must start at least `gap` ranks apart.
pub fn max_disjoint(starts: &[usize], gap: usize) -> usize {
    let mut count = 0;
    let mut next_free = 0;
    for &s in starts {
        if count == 0 || s >= next_free {
            count += 1;
            next_free = s + gap;
        }
    }
    count
}

/// Groups every window of span `span` by canonical key.
pub fn find_repeating_windows(p: &Poset, g: &GradedInfo, span: usize) -> RepeatReport {
    if span > g.top_rank {
        return RepeatReport {
            span,
            groups: Vec::new(),
            best_key: None,
        };
    }
    let keyed: Vec<(Vec<u8>, usize)> = (0..=g.top_rank - span)
        .into_par_iter()
        .map(|lo| {
            let w = window(p, g, lo, span).expect("start rank in range");
            (w.canonical_key, lo)
        })
        .collect();
    let mut by_key: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
    for (key, lo) in keyed {
        by_key.entry(key).or_default().push(lo);
    }
    let groups: Vec<RepeatGroup> = by_key
        .into_iter()
        .map(|(key, starts)| {
            let c = max_disjoint(&starts, span.max(1));
            let c_strict = max_disjoint(&starts, span + 1);
            RepeatGroup {
                key,
                starts,
                c,
                c_strict,
            }
        })
        .collect();
    let best_key = groups
        .iter()
        .fold(None::<&RepeatGroup>, |best, g| match best {
            Some(b) if b.c >= g.c => Some(b),
            _ => Some(g),
        })
        .map(|g| g.key.clone());
    RepeatReport {
        span,
        groups,
        best_key,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_chain, gen_diamond_tower};
    use crate::grading::compute_grading;

    #[test]
    fn chain_of_nine() {
        let c = gen_chain(9);
        let g = compute_grading(&c).unwrap();
        let r = find_repeating_windows(&c, &g, 2);
        assert_eq!(r.groups.len(), 1);
        let best = r.best().unwrap();
        assert_eq!(best.starts, vec![0, 1, 2, 3, 4, 5, 6]);
        // [0,2], [3,5], [6,8] when no rank may be shared; [0,2], [2,4], [4,6],
        // [6,8] when boundary ranks may be shared.
        assert_eq!(best.c_strict, 3);
        assert_eq!(best.c, 4);
    }

    #[test]
    fn single_diamond() {
        let d = gen_diamond_tower(1);
        let g = compute_grading(&d).unwrap();
        let r = find_repeating_windows(&d, &g, 2);
        assert_eq!(r.groups.len(), 1);
        assert_eq!(r.c(), 1);
    }

    #[test]
    fn diamond_tower_three() {
        let d = gen_diamond_tower(3);
        let g = compute_grading(&d).unwrap();
        let r = find_repeating_windows(&d, &g, 2);
        let diamond_key = window(&d, &g, 0, 2).unwrap().canonical_key;
        let grp = r.group(&diamond_key).unwrap();
        assert_eq!(grp.starts, vec![0, 2, 4]);
        assert_eq!(grp.c, 3);
        assert_eq!(grp.c_strict, 2);
    }

    #[test]
    fn greedy_edge_cases() {
        assert_eq!(max_disjoint(&[], 3), 0);
        assert_eq!(max_disjoint(&[5], 3), 1);
        assert_eq!(max_disjoint(&[0, 1, 2, 3], 1), 4);
        assert_eq!(max_disjoint(&[0, 1, 2, 3], 2), 2);
    }

    #[test]
    fn span_too_large() {
        let d = gen_diamond_tower(1);
        let g = compute_grading(&d).unwrap();
        let r = find_repeating_windows(&d, &g, 3);
        assert!(r.groups.is_empty());
        assert_eq!(r.c(), 0);
    }
}

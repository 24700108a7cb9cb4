//! Detectors for the structures that yield non-bijective endomorphisms.

mod classify;
mod repeats;

pub use classify::{classify_pair, PairCase, PairClassification};
pub use repeats::{find_repeating_windows, RepeatGroup, RepeatReport};

use serde::Serialize;

use crate::grading::GradedInfo;
use crate::poset::Poset;

/// Everything the single-poset detectors found.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct StructureReport {
    pub up_singles: Vec<usize>,
    pub down_singles: Vec<usize>,
    /// `(a, b)` with `b` an older sibling of `a`.
    pub older_sibling_pairs: Vec<(usize, usize)>,
    /// Unordered twin pairs, stored with the smaller element first.
    pub twin_pairs: Vec<(usize, usize)>,
    /// `(x, r1, r2)` for every central element found.
    pub central_witnesses: Vec<(usize, usize, usize)>,
}

/// Up-singles (exactly one upper cover) and down-singles (exactly one lower
/// cover).
pub fn find_singles(p: &Poset) -> (Vec<usize>, Vec<usize>) {
    let up = (0..p.len()).filter(|&x| p.up_covers(x).len() == 1).collect();
    let down = (0..p.len())
        .filter(|&x| p.down_covers(x).len() == 1)
        .collect();
    (up, down)
}

fn is_sorted_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Whether `b` is an older sibling of `a`: same rank, `b` covers everything
/// `a` covers and is covered by everything covering `a`.
pub fn is_older_sibling(p: &Poset, g: &GradedInfo, a: usize, b: usize) -> bool {
    a != b
        && g.ranks[a] == g.ranks[b]
        && is_sorted_subset(p.down_covers(a), p.down_covers(b))
        && is_sorted_subset(p.up_covers(a), p.up_covers(b))
}

/// All ordered pairs `(a, b)` with `b` an older sibling of `a`, sorted.
pub fn older_siblings(p: &Poset, g: &GradedInfo) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for level in g.levels() {
        for &a in &level {
            for &b in &level {
                if is_older_sibling(p, g, a, b) {
                    out.push((a, b));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Pairs present in both orders, smaller element first.
pub fn twin_pairs(siblings: &[(usize, usize)]) -> Vec<(usize, usize)> {
    siblings
        .iter()
        .filter(|&&(a, b)| a < b && siblings.binary_search(&(b, a)).is_ok())
        .copied()
        .collect()
}

/// Elements `x` above every element `r1` ranks below and below every element
/// `r2` ranks above.
pub fn central_elements(p: &Poset, g: &GradedInfo, r1: usize, r2: usize) -> Vec<usize> {
    let levels = g.levels();
    (0..p.len())
        .filter(|&x| {
            let r = g.ranks[x];
            r >= r1
                && r + r2 <= g.top_rank
                && levels[r - r1].iter().all(|&a| p.le(a, x))
                && levels[r + r2].iter().all(|&b| p.le(x, b))
        })
        .collect()
}

/// Runs all single-poset detectors, scanning central elements for
/// `r1, r2 in {1, 2}`.
pub fn structure_report(p: &Poset, g: &GradedInfo) -> StructureReport {
    let (up_singles, down_singles) = find_singles(p);
    let older_sibling_pairs = older_siblings(p, g);
    let twin_pairs = twin_pairs(&older_sibling_pairs);
    let mut central_witnesses = Vec::new();
    for r1 in 1..=2 {
        for r2 in 1..=2 {
            for x in central_elements(p, g, r1, r2) {
                central_witnesses.push((x, r1, r2));
            }
        }
    }
    central_witnesses.sort_unstable();
    StructureReport {
        up_singles,
        down_singles,
        older_sibling_pairs,
        twin_pairs,
        central_witnesses,
    }
}

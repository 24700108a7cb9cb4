//! Rank functions, Whitney numbers and rank selection.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::error::PosetError;
use crate::poset::Poset;

/// Grading data of a graded poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedInfo {
    pub ranks: Vec<usize>,
    pub whitney: Vec<usize>,
    pub whidth: usize,
    pub top_rank: usize,
}

impl GradedInfo {
    pub fn rank(&self, x: usize) -> usize {
        self.ranks[x]
    }

    /// Elements of rank `r`, ascending.
    pub fn level(&self, r: usize) -> Vec<usize> {
        (0..self.ranks.len()).filter(|&x| self.ranks[x] == r).collect()
    }

    /// All levels `0..=top_rank`.
    pub fn levels(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.top_rank + 1];
        for (x, &r) in self.ranks.iter().enumerate() {
            out[r].push(x);
        }
        out
    }
}

/// Outcome of the gradedness test for a poset that is not graded: two maximal
/// chains of different lengths, the longer one first.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("poset is not graded: maximal chains {longer:?} and {shorter:?} differ in length")]
    NotGraded {
        longer: Vec<usize>,
        shorter: Vec<usize>,
    },
    #[error("poset is empty")]
    Empty,
}

/// Computes the rank function, or a witness that the poset is not graded.
///
/// Ranks are longest-path distances from the minimal elements. The poset is
/// graded iff every cover raises that distance by exactly one and all maximal
/// elements share the same distance.
pub fn compute_grading(p: &Poset) -> Result<GradedInfo, GradingError> {
    if p.is_empty() {
        return Err(GradingError::Empty);
    }
    let h = p.heights();

    for (u, v) in p.covers() {
        if h[v] != h[u] + 1 {
            let above = extend_up(p, v);
            let mut longer = longest_chain_to(p, &h, v);
            longer.extend_from_slice(&above);
            let mut shorter = longest_chain_to(p, &h, u);
            shorter.push(v);
            shorter.extend_from_slice(&above);
            return Err(GradingError::NotGraded { longer, shorter });
        }
    }

    let maximal = p.maximal_elements();
    let top = maximal.iter().map(|&x| h[x]).max().unwrap_or(0);
    if let Some(&low) = maximal.iter().find(|&&x| h[x] != top) {
        let high = *maximal.iter().find(|&&x| h[x] == top).unwrap();
        return Err(GradingError::NotGraded {
            longer: longest_chain_to(p, &h, high),
            shorter: longest_chain_to(p, &h, low),
        });
    }

    let mut whitney = vec![0; top + 1];
    for &r in &h {
        whitney[r] += 1;
    }
    let whidth = *whitney.iter().max().unwrap();
    Ok(GradedInfo {
        ranks: h,
        whitney,
        whidth,
        top_rank: top,
    })
}

/// A longest cover chain from a minimal element up to `x`, bottom first.
fn longest_chain_to(p: &Poset, h: &[usize], x: usize) -> Vec<usize> {
    let mut chain = vec![x];
    let mut cur = x;
    while h[cur] > 0 {
        cur = *p
            .down_covers(cur)
            .iter()
            .find(|&&d| h[d] + 1 == h[cur])
            .expect("height is realized by some lower cover");
        chain.push(cur);
    }
    chain.reverse();
    chain
}

/// Some cover path from just above `x` to a maximal element.
fn extend_up(p: &Poset, x: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur = x;
    while let Some(&next) = p.up_covers(cur).first() {
        out.push(next);
        cur = next;
    }
    out
}

/// An induced subposet together with the source element of each of its
/// elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subposet {
    pub elements: Vec<usize>,
    pub poset: Poset,
}

/// The rank-selected subposet on all elements whose rank lies in `ranks`.
pub fn rank_selected(
    p: &Poset,
    g: &GradedInfo,
    ranks: &BTreeSet<usize>,
) -> Result<Subposet, PosetError> {
    if let Some(&bad) = ranks.iter().find(|&&r| r > g.top_rank) {
        return Err(PosetError::RankOutOfRange {
            rank: bad,
            top: g.top_rank,
        });
    }
    let elements: Vec<usize> = (0..p.len())
        .filter(|&x| ranks.contains(&g.ranks[x]))
        .collect();
    if elements.is_empty() {
        return Err(PosetError::EmptySelection);
    }
    let poset = p.induced(&elements);
    Ok(Subposet { elements, poset })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Poset {
        Poset::from_cover_list(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn chain(n: usize) -> Poset {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_cover_list(n, &covers).unwrap()
    }

    #[test]
    fn diamond_grading() {
        let g = compute_grading(&diamond()).unwrap();
        assert_eq!(g.ranks, vec![0, 1, 1, 2]);
        assert_eq!(g.whitney, vec![1, 2, 1]);
        assert_eq!(g.whidth, 2);
        assert_eq!(g.top_rank, 2);
    }

    #[test]
    fn not_graded_witness() {
        let p = Poset::from_cover_list(4, &[(0, 1), (1, 2), (3, 2)]).unwrap();
        assert_eq!(
            compute_grading(&p),
            Err(GradingError::NotGraded {
                longer: vec![0, 1, 2],
                shorter: vec![3, 2],
            })
        );
    }

    #[test]
    fn unequal_maximal_ranks_are_detected() {
        // 0 < 1 < 2 next to an isolated 3
        let p = Poset::from_cover_list(4, &[(0, 1), (1, 2)]).unwrap();
        match compute_grading(&p) {
            Err(GradingError::NotGraded { longer, shorter }) => {
                assert_eq!(longer, vec![0, 1, 2]);
                assert_eq!(shorter, vec![3]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn chain_rank() {
        for n in 1..8 {
            let g = compute_grading(&chain(n + 1)).unwrap();
            assert_eq!(g.top_rank, n);
            assert!(g.whitney.iter().all(|&w| w == 1));
        }
    }

    #[test]
    fn rank_selection_examples() {
        let d = diamond();
        let g = compute_grading(&d).unwrap();
        let s = rank_selected(&d, &g, &BTreeSet::from([0, 2])).unwrap();
        assert_eq!(s.elements, vec![0, 3]);
        assert_eq!(s.poset.covers().collect::<Vec<_>>(), vec![(0, 1)]);

        let s = rank_selected(&d, &g, &BTreeSet::from([1])).unwrap();
        assert_eq!(s.poset.cover_count(), 0);
        assert_eq!(s.poset.len(), 2);

        let c = chain(5);
        let gc = compute_grading(&c).unwrap();
        let s = rank_selected(&c, &gc, &BTreeSet::from([0, 2, 4])).unwrap();
        assert_eq!(s.poset.covers().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);

        assert_eq!(
            rank_selected(&d, &g, &BTreeSet::new()),
            Err(PosetError::EmptySelection)
        );
        assert!(matches!(
            rank_selected(&d, &g, &BTreeSet::from([3])),
            Err(PosetError::RankOutOfRange { rank: 3, top: 2 })
        ));
    }
}

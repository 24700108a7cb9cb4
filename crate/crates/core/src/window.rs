//! Consecutive-rank windows and their rank-preserving canonical keys.
//!
//! A window of a graded poset is the induced subposet on the ranks
//! `lo..=lo + span`. Every element of rank `lo + j` with `j > 0` keeps its
//! lower covers inside the window, so the window is graded again with relative
//! ranks `0..=span`, and its order is plain cover reachability inside the
//! window.

use crate::error::PosetError;
use crate::grading::GradedInfo;
use crate::poset::Poset;

/// An induced subposet on `span + 1` consecutive ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub lo: usize,
    pub span: usize,
    /// Source elements, ascending. Element `i` of `induced` is `elements[i]`.
    pub elements: Vec<usize>,
    pub induced: Poset,
    /// Relative rank of every induced element.
    pub ranks: Vec<usize>,
    pub canonical_key: Vec<u8>,
}

impl Window {
    /// Induced element indices grouped by relative rank.
    pub fn levels(&self) -> Vec<Vec<usize>> {
        levels_of(&self.ranks, self.span)
    }

    /// Source elements at relative rank `r`.
    pub fn source_level(&self, r: usize) -> Vec<usize> {
        self.elements
            .iter()
            .zip(&self.ranks)
            .filter(|&(_, &rr)| rr == r)
            .map(|(&x, _)| x)
            .collect()
    }

    /// Source elements strictly between the lowest and highest rank.
    pub fn interior(&self) -> Vec<usize> {
        self.elements
            .iter()
            .zip(&self.ranks)
            .filter(|&(_, &r)| r > 0 && r < self.span)
            .map(|(&x, _)| x)
            .collect()
    }

    pub fn local_index(&self, source: usize) -> Option<usize> {
        self.elements.binary_search(&source).ok()
    }
}

/// A rank-preserving isomorphism between two windows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoMap {
    /// Pairs `(source element of a, source element of b)`, sorted by the first.
    pub forward: Vec<(usize, usize)>,
    /// `b.lo - a.lo`.
    pub rank_shift: isize,
}

/// The window on ranks `lo..=lo + span`.
pub fn window(p: &Poset, g: &GradedInfo, lo: usize, span: usize) -> Result<Window, PosetError> {
    if lo + span > g.top_rank {
        return Err(PosetError::RankOutOfRange {
            rank: lo + span,
            top: g.top_rank,
        });
    }
    let elements: Vec<usize> = (0..p.len())
        .filter(|&x| (lo..=lo + span).contains(&g.ranks[x]))
        .collect();
    let mut local = vec![usize::MAX; p.len()];
    for (i, &x) in elements.iter().enumerate() {
        local[x] = i;
    }
    let covers: Vec<(usize, usize)> = elements
        .iter()
        .filter(|&&x| g.ranks[x] < lo + span)
        .flat_map(|&x| p.up_covers(x).iter().map(move |&y| (x, y)))
        .map(|(x, y)| (local[x], local[y]))
        .collect();
    let induced = Poset::from_cover_list(elements.len(), &covers)
        .expect("covers of a valid poset restricted to consecutive ranks");
    let ranks: Vec<usize> = elements.iter().map(|&x| g.ranks[x] - lo).collect();
    let canonical_key = canonical_form(&induced, &levels_of(&ranks, span));
    Ok(Window {
        lo,
        span,
        elements,
        induced,
        ranks,
        canonical_key,
    })
}

fn levels_of(ranks: &[usize], span: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); span + 1];
    for (x, &r) in ranks.iter().enumerate() {
        out[r].push(x);
    }
    out
}

/// Lexicographically least encoding of a leveled poset over all
/// rank-preserving relabelings.
///
/// `levels` partitions the elements of `p`, and every cover must join
/// consecutive levels. The encoding is the level sizes, the sorted
/// `(down degree, up degree)` profile of every level, then for each level
/// above the bottom one the bitmask of lower covers of each element in the
/// chosen order. Relabelings only permute elements inside a level and are
/// restricted to those keeping the degree profile sorted. At each level only
/// orders that minimise that level's mask block are explored, since any other
/// order loses at that block already.
pub fn canonical_form(p: &Poset, levels: &[Vec<usize>]) -> Vec<u8> {
    let mut key = Vec::new();
    push_u32(&mut key, levels.len() as u32);
    for level in levels {
        push_u32(&mut key, level.len() as u32);
    }

    let profile = |x: usize| (p.down_covers(x).len(), p.up_covers(x).len());
    let mut sorted_levels: Vec<Vec<usize>> = levels.to_vec();
    for level in &mut sorted_levels {
        level.sort_by_key(|&x| (profile(x), x));
        for &x in level.iter() {
            let (d, u) = profile(x);
            push_u32(&mut key, d as u32);
            push_u32(&mut key, u as u32);
        }
    }
    if levels.is_empty() {
        return key;
    }

    let mut search = CanonSearch {
        p,
        levels: &sorted_levels,
        position: vec![usize::MAX; p.len()],
        current: Vec::new(),
        best: None,
    };
    let bottom = &sorted_levels[0];
    let groups = group_runs(bottom, |&x| profile(x));
    for_each_grouped_permutation(bottom, &groups, &mut |order| {
        for (i, &x) in order.iter().enumerate() {
            search.position[x] = i;
        }
        search.descend(1);
    });
    key.extend(search.best.unwrap_or_default());
    key
}

struct CanonSearch<'a> {
    p: &'a Poset,
    levels: &'a [Vec<usize>],
    position: Vec<usize>,
    current: Vec<u8>,
    best: Option<Vec<u8>>,
}

impl CanonSearch<'_> {
    fn descend(&mut self, level: usize) {
        if let Some(best) = &self.best {
            let k = self.current.len();
            if self.current.as_slice() > &best[..k] {
                return;
            }
        }
        if level == self.levels.len() {
            if self.best.as_ref().is_none_or(|b| self.current < *b) {
                self.best = Some(self.current.clone());
            }
            return;
        }
        let below = self.levels[level - 1].len();
        let mask_bytes = below.div_ceil(8);
        let mask = |x: usize| {
            let mut m = vec![0u8; mask_bytes];
            for &d in self.p.down_covers(x) {
                let i = self.position[d];
                m[i / 8] |= 0x80 >> (i % 8);
            }
            m
        };
        let profile = |x: usize| (self.p.down_covers(x).len(), self.p.up_covers(x).len());
        let mut order: Vec<(usize, (usize, usize), Vec<u8>)> = self.levels[level]
            .iter()
            .map(|&x| (x, profile(x), mask(x)))
            .collect();
        order.sort_by(|a, b| (a.1, &a.2, a.0).cmp(&(b.1, &b.2, b.0)));
        let elements: Vec<usize> = order.iter().map(|t| t.0).collect();
        let groups = group_runs(&order, |t| (t.1, t.2.clone()));

        let mark = self.current.len();
        for (_, _, m) in &order {
            self.current.extend_from_slice(m);
        }
        let last = level + 1 == self.levels.len();
        if last {
            self.descend(level + 1);
        } else {
            let saved: Vec<usize> = elements.iter().map(|&x| self.position[x]).collect();
            let mut buf = elements.clone();
            permute_groups(&mut buf, &groups, 0, &mut |perm| {
                for (i, &x) in perm.iter().enumerate() {
                    self.position[x] = i;
                }
                self.descend(level + 1);
            });
            for (&x, &s) in elements.iter().zip(&saved) {
                self.position[x] = s;
            }
        }
        self.current.truncate(mark);
    }
}

fn push_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_be_bytes());
}

/// Half-open index ranges of maximal runs with equal `key`.
fn group_runs<T, K: PartialEq>(items: &[T], key: impl Fn(&T) -> K) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=items.len() {
        if i == items.len() || key(&items[i]) != key(&items[start]) {
            out.push((start, i));
            start = i;
        }
    }
    out
}

fn for_each_grouped_permutation(
    items: &[usize],
    groups: &[(usize, usize)],
    f: &mut dyn FnMut(&[usize]),
) {
    let mut buf = items.to_vec();
    permute_groups(&mut buf, groups, 0, f);
}

/// Calls `f` on every arrangement of `buf` that permutes entries only within
/// each group.
fn permute_groups(
    buf: &mut Vec<usize>,
    groups: &[(usize, usize)],
    g: usize,
    f: &mut dyn FnMut(&[usize]),
) {
    if g == groups.len() {
        f(buf);
        return;
    }
    let (start, end) = groups[g];
    heap_permute(buf, start, end - start, &mut |b| {
        permute_groups(b, groups, g + 1, f)
    });
}

fn heap_permute(
    buf: &mut Vec<usize>,
    start: usize,
    k: usize,
    f: &mut dyn FnMut(&mut Vec<usize>),
) {
    if k <= 1 {
        f(buf);
        return;
    }
    for i in 0..k - 1 {
        heap_permute(buf, start, k - 1, f);
        if k.is_multiple_of(2) {
            buf.swap(start + i, start + k - 1);
        } else {
            buf.swap(start, start + k - 1);
        }
    }
    heap_permute(buf, start, k - 1, f);
}

/// Searches for a rank-preserving cover isomorphism from `a` to `b`.
///
/// Independent of `canonical_form`: elements of `a` are matched level by
/// level against unused elements of `b` with equal degrees whose lower covers
/// are the images of the lower covers already matched.
pub fn is_isomorphic_rank_preserving(a: &Window, b: &Window) -> Option<IsoMap> {
    let map = leveled_isomorphism(&a.induced, &a.levels(), &b.induced, &b.levels())?;
    let mut forward: Vec<(usize, usize)> = map
        .iter()
        .enumerate()
        .map(|(i, &j)| (a.elements[i], b.elements[j]))
        .collect();
    forward.sort_unstable();
    Some(IsoMap {
        forward,
        rank_shift: b.lo as isize - a.lo as isize,
    })
}

/// Level-preserving isomorphism between two leveled posets whose covers join
/// consecutive levels; `result[x]` is the image of `x`.
pub fn leveled_isomorphism(
    p: &Poset,
    p_levels: &[Vec<usize>],
    q: &Poset,
    q_levels: &[Vec<usize>],
) -> Option<Vec<usize>> {
    if p.len() != q.len()
        || p_levels.len() != q_levels.len()
        || p_levels
            .iter()
            .zip(q_levels)
            .any(|(x, y)| x.len() != y.len())
    {
        return None;
    }
    let order: Vec<usize> = p_levels.iter().flatten().copied().collect();
    let mut p_level_of = vec![0; p.len()];
    for (r, level) in p_levels.iter().enumerate() {
        for &x in level {
            p_level_of[x] = r;
        }
    }
    let mut image = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];

    fn go(
        i: usize,
        order: &[usize],
        p: &Poset,
        q: &Poset,
        p_level_of: &[usize],
        q_levels: &[Vec<usize>],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let x = order[i];
        for &y in &q_levels[p_level_of[x]] {
            if used[y]
                || p.down_covers(x).len() != q.down_covers(y).len()
                || p.up_covers(x).len() != q.up_covers(y).len()
                || p
                    .down_covers(x)
                    .iter()
                    .any(|&d| q.down_covers(y).binary_search(&image[d]).is_err())
            {
                continue;
            }
            image[x] = y;
            used[y] = true;
            if go(i + 1, order, p, q, p_level_of, q_levels, image, used) {
                return true;
            }
            used[y] = false;
            image[x] = usize::MAX;
        }
        false
    }

    if go(
        0,
        &order,
        p,
        q,
        &p_level_of,
        q_levels,
        &mut image,
        &mut used,
    ) {
        Some(image)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::compute_grading;

    fn diamond() -> Poset {
        Poset::from_cover_list(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn diamond_windows() {
        let d = diamond();
        let g = compute_grading(&d).unwrap();
        let w = window(&d, &g, 0, 1).unwrap();
        assert_eq!(w.elements, vec![0, 1, 2]);
        assert_eq!(w.induced.covers().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);

        let whole = window(&d, &g, 0, 2).unwrap();
        assert_eq!(whole.induced, d);

        let upper = window(&d, &g, 1, 1).unwrap();
        assert_ne!(w.canonical_key, upper.canonical_key);
        assert!(is_isomorphic_rank_preserving(&w, &upper).is_none());

        assert!(matches!(
            window(&d, &g, 1, 2),
            Err(PosetError::RankOutOfRange { rank: 3, top: 2 })
        ));
    }

    #[test]
    fn identity_isomorphism() {
        let d = diamond();
        let g = compute_grading(&d).unwrap();
        let w = window(&d, &g, 0, 2).unwrap();
        let iso = is_isomorphic_rank_preserving(&w, &w).unwrap();
        assert_eq!(iso.rank_shift, 0);
        // The search tries candidates in ascending order, so the identity comes first.
        assert!(iso.forward.iter().all(|&(a, b)| a == b));
    }

    #[test]
    fn different_whitney_vectors_are_not_isomorphic() {
        let d = diamond();
        let g = compute_grading(&d).unwrap();
        let c = Poset::from_cover_list(3, &[(0, 1), (1, 2)]).unwrap();
        let gc = compute_grading(&c).unwrap();
        let a = window(&d, &g, 0, 2).unwrap();
        let b = window(&c, &gc, 0, 2).unwrap();
        assert!(is_isomorphic_rank_preserving(&a, &b).is_none());
        assert_ne!(a.canonical_key, b.canonical_key);
    }

    #[test]
    fn wedge_vs_vee() {
        let d = diamond();
        let g = compute_grading(&d).unwrap();
        let lower = window(&d, &g, 0, 1).unwrap();
        // {0, 1} < 2
        let vee = Poset::from_cover_list(3, &[(0, 2), (1, 2)]).unwrap();
        let gv = compute_grading(&vee).unwrap();
        let v = window(&vee, &gv, 0, 1).unwrap();
        assert!(is_isomorphic_rank_preserving(&lower, &v).is_none());
        assert_ne!(lower.canonical_key, v.canonical_key);
    }

    #[test]
    fn grouped_permutations_cover_all_arrangements() {
        let mut seen = std::collections::BTreeSet::new();
        for_each_grouped_permutation(&[0, 1, 2, 3, 4], &[(0, 2), (2, 5)], &mut |o| {
            seen.insert(o.to_vec());
        });
        assert_eq!(seen.len(), 2 * 6);
    }
}

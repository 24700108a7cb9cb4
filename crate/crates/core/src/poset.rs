//! Finite posets stored as their Hasse diagram.

use std::collections::{BTreeSet, VecDeque};

use crate::bitset::BitSet;
use crate::error::PosetError;

/// A finite poset on the elements `0..n`, stored by its cover relation.
///
/// The cover lists are always a transitive reduction, acyclic and mutually
/// transposed. The reflexive up-closure of every element is precomputed so
/// that `le` is a bit test.
#[derive(Clone)]
pub struct Poset {
    n: usize,
    up_covers: Vec<Vec<usize>>,
    down_covers: Vec<Vec<usize>>,
    up_sets: Vec<BitSet>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.up_covers == other.up_covers
    }
}

impl Eq for Poset {}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Poset")
            .field("n", &self.n)
            .field("covers", &self.covers().collect::<Vec<_>>())
            .finish()
    }
}

impl Poset {
    /// Builds a poset from its Hasse diagram.
    ///
    /// The pairs are `(lower, upper)`. Redundant pairs are rejected rather than
    /// reduced away, so a valid input has exactly one representation.
    pub fn from_cover_list(n: usize, covers: &[(usize, usize)]) -> Result<Poset, PosetError> {
        let mut up_covers = vec![Vec::new(); n];
        let mut down_covers = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for &(u, v) in covers {
            if u >= n || v >= n {
                return Err(PosetError::IndexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(PosetError::CycleDetected(u));
            }
            if !seen.insert((u, v)) {
                return Err(PosetError::DuplicateCover(u, v));
            }
            up_covers[u].push(v);
            down_covers[v].push(u);
        }
        for list in up_covers.iter_mut().chain(down_covers.iter_mut()) {
            list.sort_unstable();
        }

        let order = topological_order(n, &up_covers, &down_covers)?;
        let mut up_sets = vec![BitSet::new(n); n];
        for &x in order.iter().rev() {
            let mut set = BitSet::new(n);
            set.insert(x);
            for &y in &up_covers[x] {
                set.union_with(&up_sets[y]);
            }
            up_sets[x] = set;
        }

        // (u, v) is redundant iff v is reachable from another upper cover of u.
        for u in 0..n {
            for &v in &up_covers[u] {
                if up_covers[u]
                    .iter()
                    .any(|&w| w != v && up_sets[w].contains(v))
                {
                    return Err(PosetError::RedundantCover(u, v));
                }
            }
        }

        Ok(Poset {
            n,
            up_covers,
            down_covers,
            up_sets,
        })
    }

    /// Builds a poset from a strict order given as per-element sets of
    /// strictly larger elements. The relation must be transitive and acyclic.
    pub fn from_strict_order(n: usize, above: &[BitSet]) -> Result<Poset, PosetError> {
        Poset::from_cover_list(n, &transitive_reduction(n, above))
    }

    /// The antichain on `n` elements.
    pub fn antichain(n: usize) -> Poset {
        Poset::from_cover_list(n, &[]).expect("antichain is valid")
    }

    /// Disjoint union; the elements of `other` are shifted by `self.len()`.
    pub fn disjoint_union(&self, other: &Poset) -> Poset {
        let shift = self.n;
        let covers: Vec<_> = self
            .covers()
            .chain(other.covers().map(|(u, v)| (u + shift, v + shift)))
            .collect();
        Poset::from_cover_list(self.n + other.n, &covers).expect("union of valid posets")
    }

    /// Applies the relabeling `x -> perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Poset {
        assert_eq!(perm.len(), self.n);
        let covers: Vec<_> = self.covers().map(|(u, v)| (perm[u], perm[v])).collect();
        Poset::from_cover_list(self.n, &covers).expect("relabeling preserves validity")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn up_covers(&self, x: usize) -> &[usize] {
        &self.up_covers[x]
    }

    pub fn down_covers(&self, x: usize) -> &[usize] {
        &self.down_covers[x]
    }

    /// All cover pairs in lexicographic order.
    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up_covers
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn cover_count(&self) -> usize {
        self.up_covers.iter().map(Vec::len).sum()
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.up_sets[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.le(b, a)
    }

    /// Reflexive principal up-set of `x`.
    pub fn up_set(&self, x: usize) -> &BitSet {
        &self.up_sets[x]
    }

    /// Strict up-sets for every element, i.e. the full order minus the diagonal.
    pub fn strict_up_sets(&self) -> Vec<BitSet> {
        self.up_sets
            .iter()
            .enumerate()
            .map(|(x, s)| {
                let mut s = s.clone();
                s.remove(x);
                s
            })
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| self.down_covers[x].is_empty())
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| self.up_covers[x].is_empty())
            .collect()
    }

    /// The unique minimum, if there is one.
    pub fn minimum(&self) -> Option<usize> {
        match self.minimal_elements().as_slice() {
            [x] => Some(*x),
            _ => None,
        }
    }

    /// Length of the longest cover path from a minimal element to each element.
    pub fn heights(&self) -> Vec<usize> {
        let order = topological_order(self.n, &self.up_covers, &self.down_covers)
            .expect("poset covers are acyclic");
        let mut h = vec![0; self.n];
        for x in order {
            for &y in &self.up_covers[x] {
                h[y] = h[y].max(h[x] + 1);
            }
        }
        h
    }

    /// Elements sorted by height, ties broken by index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let h = self.heights();
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&x| (h[x], x));
        order
    }

    /// Components of the Hasse diagram viewed as an undirected graph, each
    /// sorted ascending and ordered by smallest element.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &y in self.up_covers[x].iter().chain(&self.down_covers[x]) {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Size of a largest antichain.
    ///
    /// By Dilworth's theorem this is `n` minus a maximum matching in the
    /// bipartite graph with an edge `a -> b` whenever `a < b`.
    pub fn width(&self) -> usize {
        let strict = self.strict_up_sets();
        let mut match_right: Vec<Option<usize>> = vec![None; self.n];
        let mut matched = 0;
        for a in 0..self.n {
            let mut visited = vec![false; self.n];
            if augment(a, &strict, &mut match_right, &mut visited) {
                matched += 1;
            }
        }
        self.n - matched
    }

    /// The induced subposet on `elements` (ascending, no repeats), with the
    /// order restricted from `self` and re-reduced to covers. Element `i` of
    /// the result corresponds to `elements[i]`.
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let k = elements.len();
        let above: Vec<BitSet> = elements
            .iter()
            .map(|&a| {
                let mut s = BitSet::new(k);
                for (j, &b) in elements.iter().enumerate() {
                    if self.lt(a, b) {
                        s.insert(j);
                    }
                }
                s
            })
            .collect();
        Poset::from_strict_order(k, &above).expect("restriction of a partial order")
    }
}

fn augment(
    a: usize,
    strict: &[BitSet],
    match_right: &mut [Option<usize>],
    visited: &mut [bool],
) -> bool {
    for b in strict[a].iter() {
        if visited[b] {
            continue;
        }
        visited[b] = true;
        if match_right[b].is_none_or(|a2| augment(a2, strict, match_right, visited)) {
            match_right[b] = Some(a);
            return true;
        }
    }
    false
}

fn topological_order(
    n: usize,
    up: &[Vec<usize>],
    down: &[Vec<usize>],
) -> Result<Vec<usize>, PosetError> {
    let mut indeg: Vec<usize> = down.iter().map(Vec::len).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &y in &up[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                queue.push_back(y);
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n).find(|&x| indeg[x] > 0).unwrap_or(0);
        return Err(PosetError::CycleDetected(stuck));
    }
    Ok(order)
}

/// Cover pairs of a strict order given as sets of strictly larger elements.
pub fn transitive_reduction(n: usize, above: &[BitSet]) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for u in 0..n {
        for v in above[u].iter() {
            let implied = above[u].iter().any(|w| w != v && above[w].contains(v));
            if !implied {
                covers.push((u, v));
            }
        }
    }
    covers
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
    fn diamond_builds() {
        let d = diamond();
        assert_eq!(d.len(), 4);
        assert_eq!(d.up_covers(0), &[1, 2]);
        assert_eq!(d.down_covers(3), &[1, 2]);
        assert!(d.lt(0, 3));
        assert!(!d.comparable(1, 2));
    }

    #[test]
    fn rejects_redundant_cover() {
        assert_eq!(
            Poset::from_cover_list(3, &[(0, 1), (1, 2), (0, 2)]),
            Err(PosetError::RedundantCover(0, 2))
        );
    }

    #[test]
    fn rejects_cycles_and_bad_input() {
        assert!(matches!(
            Poset::from_cover_list(2, &[(0, 1), (1, 0)]),
            Err(PosetError::CycleDetected(_))
        ));
        assert!(matches!(
            Poset::from_cover_list(1, &[(0, 0)]),
            Err(PosetError::CycleDetected(0))
        ));
        assert_eq!(
            Poset::from_cover_list(2, &[(0, 2)]),
            Err(PosetError::IndexOutOfRange(0, 2, 2))
        );
        assert_eq!(
            Poset::from_cover_list(2, &[(0, 1), (0, 1)]),
            Err(PosetError::DuplicateCover(0, 1))
        );
    }

    #[test]
    fn width_examples() {
        assert_eq!(diamond().width(), 2);
        assert_eq!(chain(5).width(), 1);
        assert_eq!(Poset::antichain(4).width(), 4);
    }

    #[test]
    fn components() {
        assert_eq!(diamond().connected_components().len(), 1);
        let dd = diamond().disjoint_union(&diamond());
        assert_eq!(
            dd.connected_components(),
            vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]]
        );
        assert_eq!(Poset::antichain(3).connected_components().len(), 3);
    }

    #[test]
    fn reduction_reproduces_covers() {
        let d = diamond();
        let covers = transitive_reduction(4, &d.strict_up_sets());
        assert_eq!(covers, d.covers().collect::<Vec<_>>());
    }

    #[test]
    fn induced_keeps_comparability() {
        let d = diamond();
        let sub = d.induced(&[0, 3]);
        assert_eq!(sub.covers().collect::<Vec<_>>(), vec![(0, 1)]);
    }
}

//! Naive reference searches sharing no code with the engine: maps are built
//! in index order and every ordered pair is tested against `le` directly.

use poset_endo::Poset;

/// Constraints of element `i` against earlier elements: `(j, j_le_i)`.
fn constraints(p: &Poset) -> Vec<Vec<(usize, bool)>> {
    (0..p.len())
        .map(|i| {
            (0..i)
                .filter(|&j| p.comparable(i, j))
                .map(|j| (j, p.le(j, i)))
                .collect()
        })
        .collect()
}

/// Number of order-preserving self-maps.
pub fn naive_end_count(p: &Poset) -> u64 {
    fn go(le: &[bool], n: usize, cons: &[Vec<(usize, bool)>], f: &mut Vec<usize>) -> u64 {
        let i = f.len();
        if i == n {
            return 1;
        }
        let mut total = 0;
        for y in 0..n {
            let ok = cons[i].iter().all(|&(j, below)| {
                if below {
                    le[f[j] * n + y]
                } else {
                    le[y * n + f[j]]
                }
            });
            if !ok {
                continue;
            }
            // the last element has nothing after it to constrain
            if i + 1 == n {
                total += 1;
            } else {
                f.push(y);
                total += go(le, n, cons, f);
                f.pop();
            }
        }
        total
    }
    let n = p.len();
    let le: Vec<bool> = (0..n * n).map(|k| p.le(k / n, k % n)).collect();
    go(&le, n, &constraints(p), &mut Vec::with_capacity(n))
}

/// Every bijection preserving and reflecting the order, in lexicographic order.
pub fn naive_automorphisms(p: &Poset) -> Vec<Vec<usize>> {
    fn go(p: &Poset, f: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let i = f.len();
        if i == p.len() {
            out.push(f.clone());
            return;
        }
        for y in 0..p.len() {
            if used[y] {
                continue;
            }
            let ok = (0..i).all(|j| p.le(j, i) == p.le(f[j], y) && p.le(i, j) == p.le(y, f[j]));
            if ok {
                used[y] = true;
                f.push(y);
                go(p, f, used, out);
                f.pop();
                used[y] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(p, &mut Vec::new(), &mut vec![false; p.len()], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use poset_endo::gen_chain;

    #[test]
    fn small_cases() {
        let d = Poset::from_cover_list(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(naive_end_count(&d), 36);
        assert_eq!(naive_automorphisms(&d).len(), 2);
        assert_eq!(naive_end_count(&gen_chain(3)), 10);
        assert_eq!(naive_end_count(&Poset::antichain(3)), 27);
        assert_eq!(naive_automorphisms(&Poset::antichain(3)).len(), 6);
    }
}

use super::{CountOptions, Morphism};
use crate::error::MorphismError;
use crate::grading::GradedInfo;
use crate::poset::Poset;

/// All automorphisms of a graded poset, sorted by image vector.
///
/// Automorphisms preserve rank, so elements are matched level by level.
pub fn enumerate_automorphisms(
    p: &Poset,
    g: &GradedInfo,
    opts: &CountOptions,
) -> Result<Vec<Morphism>, MorphismError> {
    leveled_automorphisms(p, &g.ranks, opts)
}

/// All automorphisms of an arbitrary poset, sorted by image vector. Levels are
/// longest-chain heights, which every automorphism preserves.
pub fn automorphisms(p: &Poset, opts: &CountOptions) -> Result<Vec<Morphism>, MorphismError> {
    leveled_automorphisms(p, &p.heights(), opts)
}

fn factorial_exceeds(k: usize, limit: u64) -> bool {
    let mut acc: u64 = 1;
    for i in 2..=k as u64 {
        acc = match acc.checked_mul(i) {
            Some(v) => v,
            None => return true,
        };
        if acc > limit {
            return true;
        }
    }
    false
}

fn leveled_automorphisms(
    p: &Poset,
    level_of: &[usize],
    opts: &CountOptions,
) -> Result<Vec<Morphism>, MorphismError> {
    let n = p.len();
    let top = level_of.iter().copied().max().unwrap_or(0);
    let mut levels = vec![Vec::new(); top + 1];
    for x in 0..n {
        levels[level_of[x]].push(x);
    }
    if let Some(big) = levels
        .iter()
        .find(|l| factorial_exceeds(l.len(), opts.max_level_permutations))
    {
        return Err(MorphismError::SizeLimit(format!(
            "a level of {} elements exceeds {} permutations",
            big.len(),
            opts.max_level_permutations
        )));
    }
    let order: Vec<usize> = levels.iter().flatten().copied().collect();

    struct Search<'a> {
        p: &'a Poset,
        level_of: &'a [usize],
        levels: &'a [Vec<usize>],
        order: &'a [usize],
        image: Vec<usize>,
        used: Vec<bool>,
        out: Vec<Morphism>,
        nodes: u64,
        budget: u64,
    }

    impl Search<'_> {
        fn go(&mut self, i: usize) -> Result<(), MorphismError> {
            if i == self.order.len() {
                self.out.push(Morphism::new(self.image.clone()));
                return Ok(());
            }
            let x = self.order[i];
            let p = self.p;
            for &y in &self.levels[self.level_of[x]] {
                if self.used[y]
                    || p.down_covers(x).len() != p.down_covers(y).len()
                    || p.up_covers(x).len() != p.up_covers(y).len()
                    || p
                        .down_covers(x)
                        .iter()
                        .any(|&d| p.down_covers(y).binary_search(&self.image[d]).is_err())
                {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(MorphismError::Budget(self.budget));
                }
                self.image[x] = y;
                self.used[y] = true;
                self.go(i + 1)?;
                self.used[y] = false;
            }
            Ok(())
        }
    }

    let mut s = Search {
        p,
        level_of,
        levels: &levels,
        order: &order,
        image: vec![usize::MAX; n],
        used: vec![false; n],
        out: Vec::new(),
        nodes: 0,
        budget: opts.budget,
    };
    s.go(0)?;
    let mut out = s.out;
    out.sort_by(|a, b| a.image.cmp(&b.image));
    Ok(out)
}

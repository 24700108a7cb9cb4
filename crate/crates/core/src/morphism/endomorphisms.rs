use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{is_order_preserving, CountOptions, Morphism};
use crate::error::MorphismError;
use crate::poset::Poset;

/// Largest element count accepted by [`brute_force_endomorphisms`].
pub const BRUTE_FORCE_MAX_N: usize = 7;

/// Every order-preserving self-map, found by testing all `n^n` maps.
/// Sorted by image vector.
pub fn brute_force_endomorphisms(p: &Poset) -> Result<Vec<Morphism>, MorphismError> {
    let n = p.len();
    if n > BRUTE_FORCE_MAX_N {
        return Err(MorphismError::SizeLimit(format!(
            "brute force needs n <= {BRUTE_FORCE_MAX_N}, got {n}"
        )));
    }
    let mut out = Vec::new();
    let mut image = vec![0usize; n];
    loop {
        if is_order_preserving(p, &image) {
            out.push(Morphism::new(image.clone()));
        }
        // odometer, last position fastest
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            image[i] += 1;
            if image[i] < n {
                break;
            }
            image[i] = 0;
        }
    }
}

/// Exact number of order-preserving self-maps.
///
/// Elements are assigned in a fixed linear extension (by height, ties by
/// index). The candidates for an element are the intersection of the
/// principal up-sets of the images of its lower covers; the last element's
/// candidates are counted without descending.
pub fn count_endomorphisms(p: &Poset, opts: &CountOptions) -> Result<BigUint, MorphismError> {
    if p.is_empty() {
        return Ok(BigUint::one());
    }
    let plan = Plan::new(p);
    if opts.memo {
        return plan.count_memo(opts.budget);
    }
    if opts.parallel && p.len() > 4 {
        plan.count_parallel(opts.budget)
    } else {
        let mut w = Worker::new(&plan, opts.budget, None);
        w.dfs(0)?;
        Ok(BigUint::from(w.count))
    }
}

struct Plan {
    n: usize,
    words: usize,
    order: Vec<usize>,
    /// Lower covers of `order[i]`.
    preds: Vec<Vec<usize>>,
    /// Reflexive up-set of each element, `words` words per element.
    up: Vec<u64>,
    full: Vec<u64>,
    /// For memoised search: elements placed before position `i` that still
    /// have an upper cover at position `>= i`.
    active: Vec<Vec<usize>>,
}

impl Plan {
    fn new(p: &Poset) -> Self {
        let n = p.len();
        let words = n.div_ceil(64);
        let order = frontier_order(p);
        let preds = order.iter().map(|&x| p.down_covers(x).to_vec()).collect();
        let mut up = Vec::with_capacity(n * words);
        for x in 0..n {
            up.extend_from_slice(p.up_set(x).words());
        }
        let mut full = vec![0u64; words];
        for i in 0..n {
            full[i / 64] |= 1 << (i % 64);
        }
        let mut pos = vec![0; n];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        let last_use: Vec<usize> = (0..n)
            .map(|x| p.up_covers(x).iter().map(|&y| pos[y]).max().unwrap_or(0))
            .collect();
        let active = (0..=n)
            .map(|i| {
                order[..i]
                    .iter()
                    .copied()
                    .filter(|&x| last_use[x] >= i)
                    .collect()
            })
            .collect();
        Plan {
            n,
            words,
            order,
            preds,
            up,
            full,
            active,
        }
    }

    fn candidates(&self, i: usize, image: &[usize], out: &mut [u64]) {
        let preds = &self.preds[i];
        if preds.is_empty() {
            out.copy_from_slice(&self.full);
            return;
        }
        let w = self.words;
        let first = image[preds[0]];
        out.copy_from_slice(&self.up[first * w..(first + 1) * w]);
        for &d in &preds[1..] {
            let img = image[d];
            for (o, u) in out.iter_mut().zip(&self.up[img * w..(img + 1) * w]) {
                *o &= *u;
            }
        }
    }

    fn count_parallel(&self, budget: u64) -> Result<BigUint, MorphismError> {
        let shared = AtomicU64::new(0);
        let first = self.order[0];
        let parts: Result<Vec<u128>, MorphismError> = (0..self.n)
            .into_par_iter()
            .map(|y| {
                let mut w = Worker::new(self, budget, Some(&shared));
                w.image[first] = y;
                w.nodes = 1;
                w.dfs(1)?;
                w.flush()?;
                Ok(w.count)
            })
            .collect();
        let total: u128 = parts?.into_iter().sum();
        if shared.load(Ordering::Relaxed) > budget {
            return Err(MorphismError::Budget(budget));
        }
        Ok(BigUint::from(total))
    }

    fn count_memo(&self, budget: u64) -> Result<BigUint, MorphismError> {
        let mut memo: Vec<HashMap<MemoKey, BigUint>> = vec![HashMap::new(); self.n + 1];
        let mut image = vec![0usize; self.n];
        let mut scratch = vec![0u64; self.words * self.n];
        let mut nodes = 0u64;
        self.memo_dfs(0, &mut image, &mut scratch, &mut memo, &mut nodes, budget)
    }

    fn memo_dfs(
        &self,
        i: usize,
        image: &mut [usize],
        scratch: &mut [u64],
        memo: &mut [HashMap<MemoKey, BigUint>],
        nodes: &mut u64,
        budget: u64,
    ) -> Result<BigUint, MorphismError> {
        let key = MemoKey::new(&self.active[i], image, self.n);
        if let Some(v) = memo[i].get(&key) {
            return Ok(v.clone());
        }
        let w = self.words;
        let (mine, rest) = scratch.split_at_mut(w);
        self.candidates(i, image, mine);
        let result = if i + 1 == self.n {
            *nodes += 1;
            BigUint::from(popcount(mine))
        } else {
            let x = self.order[i];
            let mut total = BigUint::zero();
            for y in iter_bits(mine) {
                *nodes += 1;
                if *nodes > budget {
                    return Err(MorphismError::Budget(budget));
                }
                image[x] = y;
                total += self.memo_dfs(i + 1, image, rest, memo, nodes, budget)?;
            }
            total
        };
        memo[i].insert(key, result.clone());
        Ok(result)
    }
}

/// A linear extension keeping few placed elements with unplaced upper
/// covers: each step places the available element that grows this frontier
/// least, ties broken by height and index. The frontier is what the memoised
/// search keys on.
fn frontier_order(p: &Poset) -> Vec<usize> {
    let n = p.len();
    let h = p.heights();
    let mut missing_down: Vec<usize> = (0..n).map(|x| p.down_covers(x).len()).collect();
    let mut open_up: Vec<usize> = (0..n).map(|x| p.up_covers(x).len()).collect();
    let mut available: Vec<usize> = (0..n).filter(|&x| missing_down[x] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while !available.is_empty() {
        let growth = |x: usize| {
            let closed = p.down_covers(x).iter().filter(|&&d| open_up[d] == 1).count();
            (!p.up_covers(x).is_empty()) as isize - closed as isize
        };
        let (slot, &x) = available
            .iter()
            .enumerate()
            .min_by_key(|&(_, &x)| (growth(x), h[x], x))
            .expect("nonempty");
        available.swap_remove(slot);
        order.push(x);
        for &d in p.down_covers(x) {
            open_up[d] -= 1;
        }
        for &u in p.up_covers(x) {
            missing_down[u] -= 1;
            if missing_down[u] == 0 {
                available.push(u);
            }
        }
    }
    order
}

/// Images of the frontier elements; packed into one integer when small.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum MemoKey {
    Packed(u128),
    Wide(Vec<u32>),
}

impl MemoKey {
    fn new(active: &[usize], image: &[usize], n: usize) -> Self {
        if n <= 256 && active.len() <= 16 {
            MemoKey::Packed(
                active
                    .iter()
                    .fold(0u128, |acc, &x| (acc << 8) | image[x] as u128),
            )
        } else {
            MemoKey::Wide(active.iter().map(|&x| image[x] as u32).collect())
        }
    }
}

fn popcount(words: &[u64]) -> u64 {
    words.iter().map(|w| w.count_ones() as u64).sum()
}

fn iter_bits(words: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (wi, &w) in words.iter().enumerate() {
        let mut rest = w;
        while rest != 0 {
            out.push(wi * 64 + rest.trailing_zeros() as usize);
            rest &= rest - 1;
        }
    }
    out
}

struct Worker<'a> {
    plan: &'a Plan,
    image: Vec<usize>,
    scratch: Vec<u64>,
    count: u128,
    nodes: u64,
    flushed: u64,
    budget: u64,
    shared: Option<&'a AtomicU64>,
}

const FLUSH_EVERY: u64 = 1 << 14;

impl<'a> Worker<'a> {
    fn new(plan: &'a Plan, budget: u64, shared: Option<&'a AtomicU64>) -> Self {
        Worker {
            plan,
            image: vec![0; plan.n],
            scratch: vec![0; plan.words * plan.n],
            count: 0,
            nodes: 0,
            flushed: 0,
            budget,
            shared,
        }
    }

    fn flush(&mut self) -> Result<(), MorphismError> {
        let delta = self.nodes - self.flushed;
        self.flushed = self.nodes;
        let total = match self.shared {
            Some(s) => s.fetch_add(delta, Ordering::Relaxed) + delta,
            None => self.nodes,
        };
        if total > self.budget {
            return Err(MorphismError::Budget(self.budget));
        }
        Ok(())
    }

    #[inline]
    fn tick(&mut self) -> Result<(), MorphismError> {
        self.nodes += 1;
        match self.shared {
            None if self.nodes > self.budget => Err(MorphismError::Budget(self.budget)),
            Some(_) if self.nodes - self.flushed >= FLUSH_EVERY => self.flush(),
            _ => Ok(()),
        }
    }

    fn dfs(&mut self, i: usize) -> Result<(), MorphismError> {
        let plan = self.plan;
        let w = plan.words;
        let mut scratch = std::mem::take(&mut self.scratch);
        plan.candidates(i, &self.image, &mut scratch[i * w..(i + 1) * w]);
        self.scratch = scratch;
        if i + 1 == plan.n {
            self.count += popcount(&self.scratch[i * w..(i + 1) * w]) as u128;
            return self.tick();
        }
        // Deeper calls only write their own slots, so slot `i` stays valid.
        let x = plan.order[i];
        for wi in 0..w {
            let mut rest = self.scratch[i * w + wi];
            while rest != 0 {
                let y = wi * 64 + rest.trailing_zeros() as usize;
                rest &= rest - 1;
                self.tick()?;
                self.image[x] = y;
                self.dfs(i + 1)?;
            }
        }
        Ok(())
    }
}

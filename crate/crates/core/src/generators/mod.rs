//! Deterministic and seeded families of graded posets, plus named fixtures.

mod enumerate;
mod fixtures;
mod random;

use serde::{Deserialize, Serialize};

pub use enumerate::{
    enumerate_all_graded, enumerate_all_posets, graded_candidates, poset_canonical_key,
    GradedEnumerator, DEFAULT_GRADED_BUDGET, MAX_POSET_N,
};
pub use fixtures::{complete_levels, fixture, Fixture};
pub use random::{gen_random_poset, gen_random_tower, TowerParams, MAX_RETRIES};

use crate::error::GenerateError;
use crate::grading::compute_grading;
use crate::poset::Poset;
use crate::window::{window, Window};

/// `0 < 1 < … < len-1`.
pub fn gen_chain(len: usize) -> Poset {
    let covers: Vec<_> = (1..len).map(|i| (i - 1, i)).collect();
    Poset::from_cover_list(len, &covers).expect("chain covers are valid")
}

/// `k` diamonds stacked so that each top is the next bottom. Element 0 is the
/// bottom; diamond `i` has middle elements `3i+1, 3i+2` and top `3i+3`.
pub fn gen_diamond_tower(k: usize) -> Poset {
    let mut covers = Vec::with_capacity(4 * k);
    for i in 0..k {
        let (b, t) = (3 * i, 3 * i + 3);
        covers.extend([(b, b + 1), (b, b + 2), (b + 1, t), (b + 2, t)]);
    }
    Poset::from_cover_list(3 * k + 1, &covers).expect("diamond covers are valid")
}

/// `k` copies of `block`, the top level of each copy identified with the
/// bottom level of the next.
///
/// `glue[j] = q` identifies the `j`-th element of a copy's top level with the
/// `q`-th element of the next copy's bottom level (levels in ascending source
/// order); `None` is the identity. Elements are numbered level by level in the
/// first copy, then by copy and level for the non-bottom levels of later
/// copies, so a diamond block reproduces [`gen_diamond_tower`].
pub fn gen_stacked(block: &Window, k: usize, glue: Option<&[usize]>) -> Result<Poset, GenerateError> {
    if k == 0 {
        return Err(GenerateError::InvalidParameter("k must be positive".into()));
    }
    let s = block.span;
    if s == 0 {
        return Err(GenerateError::InvalidParameter(
            "block must span at least two ranks".into(),
        ));
    }
    let levels = block.levels();
    let (bottom, top) = (levels[0].len(), levels[s].len());
    if bottom != top {
        return Err(GenerateError::GlueMismatch(format!(
            "top level has {top} elements, bottom level has {bottom}"
        )));
    }
    let identity: Vec<usize> = (0..top).collect();
    let glue = glue.unwrap_or(&identity);
    let mut inv = vec![usize::MAX; top];
    if glue.len() != top {
        return Err(GenerateError::GlueMismatch(format!(
            "glue has {} entries for a level of {top}",
            glue.len()
        )));
    }
    for (j, &q) in glue.iter().enumerate() {
        if q >= top || inv[q] != usize::MAX {
            return Err(GenerateError::GlueMismatch(format!(
                "glue {glue:?} is not a permutation"
            )));
        }
        inv[q] = j;
    }

    // (level, position) of each local element of the block
    let mut place = vec![(0, 0); block.induced.len()];
    for (r, lvl) in levels.iter().enumerate() {
        for (i, &x) in lvl.iter().enumerate() {
            place[x] = (r, i);
        }
    }
    // ids[c][r][i]
    let mut ids: Vec<Vec<Vec<usize>>> = Vec::with_capacity(k);
    let mut next = 0;
    for c in 0..k {
        let mut copy = Vec::with_capacity(s + 1);
        for (r, lvl) in levels.iter().enumerate() {
            let row = if r == 0 && c > 0 {
                let below: &Vec<usize> = &ids[c - 1][s];
                (0..lvl.len()).map(|i| below[inv[i]]).collect()
            } else {
                let row: Vec<usize> = (next..next + lvl.len()).collect();
                next += lvl.len();
                row
            };
            copy.push(row);
        }
        ids.push(copy);
    }
    let mut covers = Vec::new();
    for copy in &ids {
        for (u, v) in block.induced.covers() {
            let (ru, iu) = place[u];
            let (rv, iv) = place[v];
            covers.push((copy[ru][iu], copy[rv][iv]));
        }
    }
    Ok(Poset::from_cover_list(next, &covers)?)
}

fn default_true() -> bool {
    true
}

fn default_one() -> usize {
    1
}

fn default_graded_budget() -> u64 {
    DEFAULT_GRADED_BUDGET
}

/// A family of posets, as read from JSON configs.
///
/// ```
/// use poset_endo::generators::FamilySpec;
///
/// let spec: FamilySpec = serde_json::from_str(r#"{"kind":"diamond_tower","k":2}"#).unwrap();
/// assert_eq!(spec.generate(0).unwrap()[0].len(), 7);
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    Chain {
        len: usize,
    },
    DiamondTower {
        k: usize,
    },
    /// Window `lo..=lo+span` of the (single) poset produced by `block`,
    /// stacked `k` times.
    StackedBlock {
        block: Box<FamilySpec>,
        lo: usize,
        span: usize,
        k: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        glue: Option<Vec<usize>>,
    },
    /// `count` towers with seeds `seed, seed+1, …`; a missing seed falls back
    /// to the caller's default.
    RandomTower {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
        num_levels: usize,
        max_level_size: usize,
        #[serde(default = "default_one")]
        min_level_size: usize,
        density: f64,
        #[serde(default = "default_one")]
        min_degree: usize,
        #[serde(default = "default_one")]
        count: usize,
    },
    RandomPoset {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
        n: usize,
        density: f64,
        #[serde(default = "default_one")]
        count: usize,
    },
    Ladder,
    S4Fixture,
    K333,
    Fixture {
        name: Fixture,
    },
    /// Levels of the given sizes, consecutive levels completely joined.
    Complete {
        levels: Vec<usize>,
    },
    EnumerateAll {
        max_rank: usize,
        max_level: usize,
        #[serde(default = "default_true")]
        dedup: bool,
        #[serde(default = "default_graded_budget")]
        budget: u64,
    },
    EnumeratePosets {
        n: usize,
        #[serde(default = "default_true")]
        dedup: bool,
    },
}

impl FamilySpec {
    /// Every poset of the family, in a deterministic order.
    pub fn generate(&self, default_seed: u64) -> Result<Vec<Poset>, GenerateError> {
        let bad = |m: &str| Err(GenerateError::InvalidParameter(m.into()));
        Ok(match self {
            FamilySpec::Chain { len } => {
                if *len == 0 {
                    return bad("chain length must be positive");
                }
                vec![gen_chain(*len)]
            }
            FamilySpec::DiamondTower { k } => {
                if *k == 0 {
                    return bad("diamond tower needs k >= 1");
                }
                vec![gen_diamond_tower(*k)]
            }
            FamilySpec::StackedBlock {
                block,
                lo,
                span,
                k,
                glue,
            } => {
                let mut base = block.generate(default_seed)?;
                if base.len() != 1 {
                    return bad("stacked block must describe exactly one poset");
                }
                let p = base.pop().unwrap();
                let g = compute_grading(&p)
                    .map_err(|e| GenerateError::InvalidParameter(format!("block: {e}")))?;
                let w = window(&p, &g, *lo, *span)?;
                vec![gen_stacked(&w, *k, glue.as_deref())?]
            }
            FamilySpec::RandomTower {
                seed,
                num_levels,
                max_level_size,
                min_level_size,
                density,
                min_degree,
                count,
            } => {
                let seed = seed.unwrap_or(default_seed);
                (0..*count as u64)
                    .map(|i| {
                        gen_random_tower(&TowerParams {
                            seed: seed.wrapping_add(i),
                            num_levels: *num_levels,
                            max_level_size: *max_level_size,
                            min_level_size: *min_level_size,
                            density: *density,
                            min_degree: *min_degree,
                        })
                    })
                    .collect::<Result<_, _>>()?
            }
            FamilySpec::RandomPoset {
                seed,
                n,
                density,
                count,
            } => {
                let seed = seed.unwrap_or(default_seed);
                (0..*count as u64)
                    .map(|i| gen_random_poset(seed.wrapping_add(i), *n, *density))
                    .collect::<Result<_, _>>()?
            }
            FamilySpec::Ladder => vec![fixture(Fixture::Ladder)],
            FamilySpec::S4Fixture => vec![fixture(Fixture::S4)],
            FamilySpec::K333 => vec![fixture(Fixture::K333)],
            FamilySpec::Fixture { name } => vec![fixture(*name)],
            FamilySpec::Complete { levels } => {
                if levels.is_empty() || levels.contains(&0) {
                    return bad("complete levels must be non-empty");
                }
                vec![complete_levels(levels)]
            }
            FamilySpec::EnumerateAll {
                max_rank,
                max_level,
                dedup,
                budget,
            } => enumerate_all_graded(*max_rank, *max_level, *dedup, *budget)?.collect(),
            FamilySpec::EnumeratePosets { n, dedup } => enumerate_all_posets(*n, *dedup)?,
        })
    }
}

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::GenerateError;
use crate::poset::Poset;

/// Connectivity rejection cap.
pub const MAX_RETRIES: usize = 1000;

fn default_one() -> usize {
    1
}

/// Parameters of a seeded random tower.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TowerParams {
    pub seed: u64,
    pub num_levels: usize,
    pub max_level_size: usize,
    #[serde(default = "default_one")]
    pub min_level_size: usize,
    /// Probability of each cover between consecutive levels before repair.
    pub density: f64,
    /// Every element gets at least this many covers on each side that has a
    /// neighbouring level (capped by that level's size).
    #[serde(default = "default_one")]
    pub min_degree: usize,
}

impl TowerParams {
    pub fn new(seed: u64, num_levels: usize, max_level_size: usize, density: f64) -> Self {
        TowerParams {
            seed,
            num_levels,
            max_level_size,
            min_level_size: 1,
            density,
            min_degree: 1,
        }
    }

    fn validate(&self) -> Result<(), GenerateError> {
        let bad = |m: String| Err(GenerateError::InvalidParameter(m));
        if !(1..=4).contains(&self.max_level_size) {
            return bad(format!("max_level_size {} not in 1..=4", self.max_level_size));
        }
        if self.min_level_size == 0 || self.min_level_size > self.max_level_size {
            return bad(format!(
                "min_level_size {} not in 1..={}",
                self.min_level_size, self.max_level_size
            ));
        }
        if self.num_levels == 0 {
            return bad("num_levels must be positive".into());
        }
        if !(self.density > 0.0 && self.density <= 1.0) {
            return bad(format!("density {} not in (0, 1]", self.density));
        }
        Ok(())
    }
}

/// A connected graded poset whose covers only join consecutive levels.
///
/// Each level's cover relation is sampled with the given density and then
/// repaired: an element short of covers gets a missing one picked uniformly.
/// Disconnected samples are redrawn, up to [`MAX_RETRIES`] times. The seed
/// determines the output completely.
pub fn gen_random_tower(params: &TowerParams) -> Result<Poset, GenerateError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for _ in 0..MAX_RETRIES {
        let p = sample_tower(params, &mut rng);
        if p.connected_components().len() == 1 {
            return Ok(p);
        }
    }
    Err(GenerateError::RetryExhausted(MAX_RETRIES))
}

fn sample_tower(params: &TowerParams, rng: &mut ChaCha8Rng) -> Poset {
    let sizes: Vec<usize> = (0..params.num_levels)
        .map(|_| rng.gen_range(params.min_level_size..=params.max_level_size))
        .collect();
    let mut starts = Vec::with_capacity(sizes.len());
    let mut n = 0;
    for &s in &sizes {
        starts.push(n);
        n += s;
    }
    let mut covers = Vec::new();
    for lvl in 0..sizes.len().saturating_sub(1) {
        let (a, b) = (sizes[lvl], sizes[lvl + 1]);
        let mut adj = vec![vec![false; b]; a];
        for row in adj.iter_mut() {
            for cell in row.iter_mut() {
                *cell = rng.gen_bool(params.density);
            }
        }
        let need_up = params.min_degree.min(b);
        for row in adj.iter_mut() {
            while row.iter().filter(|&&c| c).count() < need_up {
                let free: Vec<usize> = (0..b).filter(|&j| !row[j]).collect();
                row[*free.choose(rng).unwrap()] = true;
            }
        }
        let need_down = params.min_degree.min(a);
        for j in 0..b {
            while (0..a).filter(|&i| adj[i][j]).count() < need_down {
                let free: Vec<usize> = (0..a).filter(|&i| !adj[i][j]).collect();
                adj[*free.choose(rng).unwrap()][j] = true;
            }
        }
        for (i, row) in adj.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c {
                    covers.push((starts[lvl] + i, starts[lvl + 1] + j));
                }
            }
        }
    }
    Poset::from_cover_list(n, &covers).expect("covers join consecutive levels")
}

/// A random labeled poset on `n` elements: a random linear order is thinned
/// to pairs kept with probability `density`, then closed transitively.
pub fn gen_random_poset(seed: u64, n: usize, density: f64) -> Result<Poset, GenerateError> {
    if !(0.0..=1.0).contains(&density) {
        return Err(GenerateError::InvalidParameter(format!(
            "density {density} not in [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut above = vec![BitSet::new(n); n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                above[perm[i]].insert(perm[j]);
            }
        }
    }
    // Close transitively, processing from the top of the linear order down.
    for i in (0..n).rev() {
        let x = perm[i];
        let ups: Vec<usize> = above[x].iter().collect();
        for y in ups {
            let extra = above[y].clone();
            above[x].union_with(&extra);
        }
    }
    Ok(Poset::from_strict_order(n, &above)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::compute_grading;

    #[test]
    fn towers_are_graded_and_bounded() {
        for seed in 0..50 {
            let p = gen_random_tower(&TowerParams::new(seed, 5, 2, 0.5)).unwrap();
            let g = compute_grading(&p).unwrap();
            assert!(g.whidth <= 2);
            assert_eq!(g.top_rank, 4);
            assert_eq!(p.connected_components().len(), 1);
        }
    }

    #[test]
    fn same_seed_same_tower() {
        let params = TowerParams::new(1, 6, 4, 0.3);
        assert_eq!(gen_random_tower(&params).unwrap(), gen_random_tower(&params).unwrap());
    }

    #[test]
    fn min_degree_is_honoured() {
        let params = TowerParams {
            min_level_size: 2,
            min_degree: 2,
            ..TowerParams::new(9, 6, 3, 0.2)
        };
        let p = gen_random_tower(&params).unwrap();
        let g = compute_grading(&p).unwrap();
        for x in 0..p.len() {
            if g.ranks[x] < g.top_rank {
                assert!(p.up_covers(x).len() >= 2);
            }
            if g.ranks[x] > 0 {
                assert!(p.down_covers(x).len() >= 2);
            }
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(gen_random_tower(&TowerParams::new(0, 3, 5, 0.5)).is_err());
        assert!(gen_random_tower(&TowerParams::new(0, 3, 2, 0.0)).is_err());
        assert!(gen_random_tower(&TowerParams::new(0, 0, 2, 0.5)).is_err());
    }

    #[test]
    fn random_posets_are_deterministic() {
        let a = gen_random_poset(7, 6, 0.4).unwrap();
        let b = gen_random_poset(7, 6, 0.4).unwrap();
        assert_eq!(a, b);
        assert_eq!(gen_random_poset(0, 5, 1.0).unwrap().width(), 1);
        assert_eq!(gen_random_poset(0, 5, 0.0).unwrap().width(), 5);
    }
}

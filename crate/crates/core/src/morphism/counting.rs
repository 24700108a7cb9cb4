use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use super::{automorphisms, count_endomorphisms, enumerate_automorphisms, CountOptions};
use crate::error::MorphismError;
use crate::grading::GradedInfo;
use crate::poset::Poset;

/// Exact `|Aut|`, `|End|` and their ratio in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub aut_count: BigUint,
    pub end_count: BigUint,
    pub ratio: BigRational,
}

impl CountResult {
    fn new(aut_count: BigUint, end_count: BigUint) -> Self {
        debug_assert!(!end_count.is_zero());
        let ratio = BigRational::new(aut_count.clone().into(), end_count.clone().into());
        CountResult {
            aut_count,
            end_count,
            ratio,
        }
    }
}

/// Counts for a graded poset; automorphisms are matched rank by rank.
pub fn count_result(
    p: &Poset,
    g: &GradedInfo,
    opts: &CountOptions,
) -> Result<CountResult, MorphismError> {
    let aut = enumerate_automorphisms(p, g, opts)?.len();
    let end = count_endomorphisms(p, opts)?;
    Ok(CountResult::new(BigUint::from(aut), end))
}

/// Counts for an arbitrary poset.
pub fn count_poset(p: &Poset, opts: &CountOptions) -> Result<CountResult, MorphismError> {
    let aut = automorphisms(p, opts)?.len();
    let end = count_endomorphisms(p, opts)?;
    Ok(CountResult::new(BigUint::from(aut), end))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_chain;
    use crate::grading::compute_grading;

    fn counts(p: &Poset) -> (u64, u64, String) {
        let g = compute_grading(p).unwrap();
        let r = count_result(p, &g, &CountOptions::default()).unwrap();
        (
            r.aut_count.try_into().unwrap(),
            r.end_count.try_into().unwrap(),
            r.ratio.to_string(),
        )
    }

    #[test]
    fn examples() {
        let d = Poset::from_cover_list(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(counts(&d), (2, 36, "1/18".into()));
        assert_eq!(counts(&gen_chain(3)), (1, 10, "1/10".into()));
        assert_eq!(counts(&Poset::antichain(2)), (2, 4, "1/2".into()));
    }
}

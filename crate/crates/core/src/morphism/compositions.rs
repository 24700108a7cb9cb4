use std::collections::HashMap;

use super::{compose, Morphism};

/// Size statistics of the multiset `{c ∘ φ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionTally {
    /// Size of the multiset.
    pub total: usize,
    pub distinct: usize,
    pub max_multiplicity: usize,
    /// Maps of maximal multiplicity, each with the constructor indices that
    /// produced it (one entry per occurrence).
    pub heaviest: Vec<(Vec<usize>, Vec<usize>)>,
}

/// Counts the distinct maps among `c ∘ φ` for every constructor `c` and
/// automorphism `φ`. Maps of mismatched size are skipped.
pub fn distinct_compositions(constructors: &[Morphism], auts: &[Morphism]) -> CompositionTally {
    let mut seen: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut total = 0;
    for (ci, c) in constructors.iter().enumerate() {
        for phi in auts {
            if let Ok(m) = compose(c, phi) {
                total += 1;
                seen.entry(m.image).or_default().push(ci);
            }
        }
    }
    let max_multiplicity = seen.values().map(Vec::len).max().unwrap_or(0);
    let mut heaviest: Vec<(Vec<usize>, Vec<usize>)> = seen
        .iter()
        .filter(|(_, v)| v.len() == max_multiplicity && max_multiplicity > 1)
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    heaviest.sort();
    CompositionTally {
        total,
        distinct: seen.len(),
        max_multiplicity,
        heaviest,
    }
}

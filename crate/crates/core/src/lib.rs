//! Graded posets of small whidth (largest Whitney number).
//!
//! The crate detects the structures that force non-bijective endomorphisms
//! (up/down-singles, older siblings and twins, central elements, repeating
//! rank windows), builds those endomorphisms explicitly, and counts
//! automorphisms and endomorphisms exactly so that the ratio
//! `|Aut(P)| / |End(P)|` can be tracked over families of posets.
//!
//! ```
//! use poset_endo::{Poset, compute_grading, count_result};
//!
//! let diamond = Poset::from_cover_list(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
//! let g = compute_grading(&diamond).unwrap();
//! let counts = count_result(&diamond, &g, &Default::default()).unwrap();
//! assert_eq!(counts.ratio.to_string(), "1/18");
//! ```

pub mod analysis;
pub mod bitset;
pub mod error;
pub mod generators;
pub mod grading;
pub mod morphism;
pub mod poset;
pub mod window;

pub use analysis::{
    central_elements, classify_pair, find_repeating_windows, find_singles, older_siblings,
    structure_report, PairCase, PairClassification, RepeatGroup, RepeatReport, StructureReport,
};
pub use bitset::BitSet;
pub use error::{GenerateError, MorphismError, PosetError};
pub use generators::{
    complete_levels, enumerate_all_graded, enumerate_all_posets, fixture, gen_chain,
    gen_diamond_tower, gen_random_poset, gen_random_tower, gen_stacked, FamilySpec, Fixture,
    TowerParams,
};
pub use grading::{compute_grading, rank_selected, GradedInfo, GradingError, Subposet};
pub use morphism::{
    automorphisms, brute_force_endomorphisms, compose, construct_f, construct_swap, construct_u,
    construct_v, count_endomorphisms, count_poset, count_result, distinct_compositions,
    enumerate_automorphisms, is_order_preserving, CompositionTally, CountOptions, CountResult,
    Morphism, MorphismKind,
};
pub use poset::Poset;
pub use window::{canonical_form, is_isomorphic_rank_preserving, window, IsoMap, Window};

//! Order-preserving self-maps: the explicit endomorphism constructors,
//! composition, and exact automorphism/endomorphism counts.

mod automorphisms;
mod compositions;
mod counting;
mod endomorphisms;

pub use automorphisms::{automorphisms, enumerate_automorphisms};
pub use compositions::{distinct_compositions, CompositionTally};
pub use counting::{count_poset, count_result, CountResult};
pub use endomorphisms::{brute_force_endomorphisms, count_endomorphisms, BRUTE_FORCE_MAX_N};

use crate::analysis::{PairCase, PairClassification};
use crate::error::MorphismError;
use crate::poset::Poset;
use crate::window::Window;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MorphismKind {
    Automorphism,
    Endomorphism,
}

/// A total self-map given by its image vector. `kind` is derived from the
/// image: bijective maps are automorphisms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub image: Vec<usize>,
    pub kind: MorphismKind,
}

impl Morphism {
    pub fn new(image: Vec<usize>) -> Self {
        let kind = if is_bijection(&image) {
            MorphismKind::Automorphism
        } else {
            MorphismKind::Endomorphism
        };
        Morphism { image, kind }
    }

    pub fn identity(n: usize) -> Self {
        Morphism::new((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn is_bijective(&self) -> bool {
        self.kind == MorphismKind::Automorphism
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Option<Morphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Some(Morphism::new(inv))
    }
}

fn is_bijection(image: &[usize]) -> bool {
    let mut seen = vec![false; image.len()];
    for &y in image {
        if y >= image.len() || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}

/// First cover `(u, v)` with `image[u] <= image[v]` failing, if any.
pub fn first_violation(p: &Poset, image: &[usize]) -> Option<(usize, usize)> {
    p.covers().find(|&(u, v)| !p.le(image[u], image[v]))
}

/// Whether `image` preserves order. Checking covers suffices because they
/// generate the order.
pub fn is_order_preserving(p: &Poset, image: &[usize]) -> bool {
    image.len() == p.len() && image.iter().all(|&y| y < p.len()) && first_violation(p, image).is_none()
}

/// `(outer ∘ inner)(z) = outer(inner(z))`: `inner` applies first.
pub fn compose(outer: &Morphism, inner: &Morphism) -> Result<Morphism, MorphismError> {
    if outer.len() != inner.len() {
        return Err(MorphismError::SizeMismatch(outer.len(), inner.len()));
    }
    Ok(Morphism::new(
        inner.image.iter().map(|&z| outer.image[z]).collect(),
    ))
}

fn checked(p: &Poset, image: Vec<usize>) -> Result<Morphism, MorphismError> {
    match first_violation(p, &image) {
        Some((u, v)) => Err(MorphismError::NotOrderPreserving(u, v)),
        None => Ok(Morphism::new(image)),
    }
}

/// Sends the up-single `x` to its unique upper cover and fixes everything else.
pub fn construct_u(p: &Poset, x: usize) -> Result<Morphism, MorphismError> {
    let [y] = p.up_covers(x) else {
        return Err(MorphismError::NotUpSingle(x));
    };
    let mut image: Vec<usize> = (0..p.len()).collect();
    image[x] = *y;
    Ok(Morphism::new(image))
}

/// Sends `a` to its older sibling `b` and fixes everything else.
pub fn construct_v(p: &Poset, a: usize, b: usize) -> Result<Morphism, MorphismError> {
    let h = p.heights();
    let subset = |s: &[usize], t: &[usize]| s.iter().all(|v| t.binary_search(v).is_ok());
    if a == b
        || h[a] != h[b]
        || !subset(p.down_covers(a), p.down_covers(b))
        || !subset(p.up_covers(a), p.up_covers(b))
    {
        return Err(MorphismError::NotOlderSibling { a, b });
    }
    let mut image: Vec<usize> = (0..p.len()).collect();
    image[a] = b;
    Ok(Morphism::new(image))
}

/// Contracts the interior of `w` onto `x` and fixes everything else.
///
/// Requires `x` in the interior of `w`, above every element of the window's
/// lowest rank and below every element of its highest rank.
pub fn construct_f(p: &Poset, w: &Window, x: usize) -> Result<Morphism, MorphismError> {
    let interior = w.interior();
    if !interior.contains(&x) {
        return Err(MorphismError::NotInterior(x));
    }
    if let Some(a) = w.source_level(0).into_iter().find(|&a| !p.lt(a, x)) {
        return Err(MorphismError::NotCentral {
            x,
            detail: format!("{a} is not below {x}"),
        });
    }
    if let Some(b) = w.source_level(w.span).into_iter().find(|&b| !p.lt(x, b)) {
        return Err(MorphismError::NotCentral {
            x,
            detail: format!("{b} is not above {x}"),
        });
    }
    let mut image: Vec<usize> = (0..p.len()).collect();
    for z in interior {
        image[z] = x;
    }
    checked(p, image)
}

/// The ladder swap: `x2 -> y2`, `z1 -> t1`, everything else fixed.
pub fn construct_swap(p: &Poset, cls: &PairClassification) -> Result<Morphism, MorphismError> {
    if cls.case != PairCase::S2Ladder {
        return Err(MorphismError::WrongCase(cls.case.to_string()));
    }
    let get = |name: &str| {
        cls.witness(name)
            .ok_or_else(|| MorphismError::WrongCase(format!("missing witness {name}")))
    };
    let (x2, y2, z1, t1) = (get("x2")?, get("y2")?, get("z1")?, get("t1")?);
    let mut image: Vec<usize> = (0..p.len()).collect();
    image[x2] = y2;
    image[z1] = t1;
    checked(p, image)
}

/// Search limits for the exact counters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountOptions {
    /// Maximum number of search nodes before giving up.
    pub budget: u64,
    /// Cache subtree counts keyed by the images of the elements whose upper
    /// covers are still unassigned.
    pub memo: bool,
    /// Split the endomorphism search over the first element's candidates.
    pub parallel: bool,
    /// Largest `k!` allowed for a level of `k` elements in automorphism search.
    pub max_level_permutations: u64,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            budget: 1_000_000_000,
            memo: false,
            parallel: true,
            max_level_permutations: 10_000_000,
        }
    }
}

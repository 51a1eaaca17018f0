//! Deciding whether a delta-matroid is binary, two ways.
//!
//! The matrix method tries to represent each normal twist of `D` by a
//! symmetric GF(2) matrix. The entries of a representing matrix are forced by
//! the feasible sets of size at most two: `a_ee = [{e} feasible]` from the
//! 1 × 1 minors, and since `det [[a, b], [b, c]] = ac + b` over GF(2),
//! `a_ef = [{e, f} feasible] + a_ee·a_ff`. So each twist has exactly one
//! candidate matrix, which is then checked against every subset.
//!
//! The minor method searches for one of the five excluded minors of the
//! class of binary delta-matroids. Every minor has the form `(D * X) \ A`, so
//! the search runs over pairs of subsets.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::dm::DeltaMatroid;
use crate::error::{Error, Result};
use crate::gf2::SymMatrixGf2;
use crate::iso::{is_isomorphic, isomorphism_code};
use crate::subset::{ElementId, Family, Subset};

/// Largest ground set accepted by the minor searches (`4^n` candidate pairs).
pub const MINOR_SEARCH_LIMIT: usize = 8;

/// A twist of `D` by a feasible set, together with the matrix representing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationWitness {
    pub twist_set: Subset,
    pub matrix: SymMatrixGf2,
}

/// Locates a minor: `D * twist_set`, with `deleted` removed and the
/// survivors relabeled by `relabeling` (survivor `i` becomes target element
/// `relabeling[i]`), equals the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorWitness {
    pub twist_set: Subset,
    pub deleted: Subset,
    pub relabeling: Vec<ElementId>,
}

impl MinorWitness {
    /// Rebuilds the minor of `d` this witness describes.
    pub fn apply(&self, d: &DeltaMatroid) -> Result<DeltaMatroid> {
        let minor = d.twist(self.twist_set).delete_set(self.deleted)?;
        Ok(minor.permute(&self.relabeling))
    }

    pub fn verify(&self, d: &DeltaMatroid, target: &DeltaMatroid) -> bool {
        self.apply(d).is_ok_and(|m| &m == target)
    }
}

/// The unique matrix consistent with the feasible sets of size at most two.
pub fn candidate_matrix(d: &DeltaMatroid) -> Result<SymMatrixGf2> {
    if !d.is_normal() {
        return Err(Error::NotNormal);
    }
    let n = d.n();
    let mut a = SymMatrixGf2::zero(n);
    for e in 0..n {
        a.set(e, e, d.is_feasible(Subset::singleton(e)));
    }
    for e in 0..n {
        for f in e + 1..n {
            let pair = d.is_feasible(Subset::from_elements([e, f]));
            a.set(e, f, pair ^ (a.get(e, e) && a.get(f, f)));
        }
    }
    Ok(a)
}

/// Whether the nonsingular principal submatrices of `a` are exactly the
/// feasible sets of `d`.
pub fn verify_representation(d: &DeltaMatroid, a: &SymMatrixGf2) -> bool {
    d.n() == a.n() && (0..(1u32 << d.n())).map(Subset::from_bits).all(|x| a.is_principal_nonsingular(x) == d.is_feasible(x))
}

/// The first feasible `F` (by mask) such that `D * F` is represented by its
/// candidate matrix, or `None` when `D` is not binary.
///
/// Only feasible twists need testing: a represented delta-matroid is normal
/// because the empty submatrix is nonsingular, and `D * A` is normal exactly
/// when `A` is feasible.
pub fn find_representation(d: &DeltaMatroid) -> Option<RepresentationWitness> {
    let found = d.feasible_sets().find_map(|f| {
        let twisted = d.twist(f);
        let matrix = candidate_matrix(&twisted).expect("twist by a feasible set is normal");
        verify_representation(&twisted, &matrix).then_some(RepresentationWitness { twist_set: f, matrix })
    });
    if cfg!(debug_assertions) && d.n() <= 3 {
        let exhaustive = (0..(1u32 << d.n())).map(Subset::from_bits).any(|a| represented_by_some_matrix(&d.twist(a)));
        debug_assert_eq!(found.is_some(), exhaustive, "feasible-twist shortcut disagrees with all twists for {d:?}");
    }
    found
}

/// Tries every symmetric matrix; only for tiny ground sets.
pub(crate) fn represented_by_some_matrix(d: &DeltaMatroid) -> bool {
    let n = d.n();
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    (0u32..(1 << cells.len())).any(|code| {
        let mut a = SymMatrixGf2::zero(n);
        for (k, &(i, j)) in cells.iter().enumerate() {
            a.set(i, j, code >> k & 1 == 1);
        }
        verify_representation(d, &a)
    })
}

pub fn is_binary(d: &DeltaMatroid) -> bool {
    find_representation(d).is_some()
}

fn set(elements: &[usize]) -> Subset {
    Subset::from_elements(elements.iter().map(|e| e - 1))
}

fn fixture(n: usize, sets: &[&[usize]]) -> DeltaMatroid {
    DeltaMatroid::new(Family::from_subsets(n, sets.iter().map(|s| set(s))).expect("fixture fits")).expect("fixture is a delta-matroid")
}

/// The five excluded minors for the class of binary delta-matroids.
pub fn excluded_minors() -> [DeltaMatroid; 5] {
    [
        fixture(3, &[&[], &[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]]),
        fixture(3, &[&[], &[1], &[2], &[3], &[1, 2], &[1, 3], &[2, 3]]),
        fixture(3, &[&[], &[2], &[3], &[1, 2], &[1, 3], &[1, 2, 3]]),
        fixture(4, &[&[], &[1, 2], &[1, 3], &[1, 4], &[2, 3], &[2, 4], &[3, 4]]),
        fixture(4, &[&[], &[1, 2], &[1, 4], &[2, 3], &[3, 4], &[1, 2, 3, 4]]),
    ]
}

/// `({1,2}, {∅, {1}, {2}})`.
pub fn d1() -> DeltaMatroid {
    fixture(2, &[&[], &[1], &[2]])
}

/// `({1,2,3}, {∅, {1,2}, {1,3}})`.
pub fn d2() -> DeltaMatroid {
    fixture(3, &[&[], &[1, 2], &[1, 3]])
}

fn check_minor_budget(d: &DeltaMatroid) -> Result<()> {
    if d.n() > MINOR_SEARCH_LIMIT {
        return Err(Error::CapacityExceeded { size: d.n(), limit: MINOR_SEARCH_LIMIT });
    }
    Ok(())
}

/// Every minor `(D * X) \ A` with a nonempty family, one per isomorphism
/// class, ordered by ground-set size and then by canonical family. Includes
/// `D` itself.
pub fn enumerate_minors(d: &DeltaMatroid) -> Result<Vec<DeltaMatroid>> {
    check_minor_budget(d)?;
    let full = 1u32 << d.n();
    let minors = (0..full)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc, x| {
            let twisted = d.twist(Subset::from_bits(x));
            for a in 0..full {
                if let Ok(minor) = twisted.delete_set(Subset::from_bits(a)) {
                    let code = isomorphism_code(&minor);
                    acc.entry((minor.n(), code)).or_insert(minor);
                }
            }
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                a.entry(k).or_insert(v);
            }
            a
        });
    Ok(minors.into_values().collect())
}

/// The first `(X, A)` in lexicographic mask order with `(D * X) \ A`
/// isomorphic to `target`.
pub fn find_minor(d: &DeltaMatroid, target: &DeltaMatroid) -> Option<MinorWitness> {
    if target.n() > d.n() {
        return None;
    }
    let drop = d.n() - target.n();
    let target_len = target.family().len();
    for x in 0..(1u32 << d.n()) {
        let x = Subset::from_bits(x);
        let twisted = d.twist(x);
        for a in (0..(1u32 << d.n())).map(Subset::from_bits).filter(|a| a.len() == drop) {
            let survivors = a.complement(d.n());
            if twisted.feasible_sets().filter(|f| f.is_subset_of(survivors)).count() != target_len {
                continue;
            }
            let Ok(minor) = twisted.delete_set(a) else { continue };
            if let Some(relabeling) = is_isomorphic(&minor, target) {
                return Some(MinorWitness { twist_set: x, deleted: a, relabeling });
            }
        }
    }
    None
}

/// Which excluded minor was found (index into [`excluded_minors`]) and where.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcludedMinorWitness {
    pub index: usize,
    pub witness: MinorWitness,
}

pub fn find_excluded_minor(d: &DeltaMatroid) -> Result<Option<ExcludedMinorWitness>> {
    check_minor_budget(d)?;
    Ok(excluded_minors()
        .iter()
        .enumerate()
        .find_map(|(index, target)| find_minor(d, target).map(|witness| ExcludedMinorWitness { index, witness })))
}

/// Binary iff none of the five excluded minors occurs.
pub fn is_binary_excluded_minor(d: &DeltaMatroid) -> Result<bool> {
    Ok(find_excluded_minor(d)?.is_none())
}

//! Delta-matroids and their operation algebra: twist, deletion, contraction,
//! restriction, duality and direct sum.
//!
//! Every [`DeltaMatroid`] lives on the ground set `{0, .., n-1}`. Deletion
//! and contraction shift the surviving elements down so that the result again
//! uses a dense ground set.

use std::fmt;

use crate::error::{Error, Result};
use crate::subset::{ElementId, Family, SetSystem, Subset, MAX_ELEMENTS};

/// A certificate that the symmetric exchange axiom fails: `u` lies in
/// `x ^ y`, yet no `v` in `x ^ y` puts `x ^ {u, v}` in the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExchangeWitness {
    pub x: Subset,
    pub y: Subset,
    pub u: ElementId,
}

impl fmt::Display for ExchangeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X={}, Y={}, u={}", self.x, self.y, self.u + 1)
    }
}

/// Checks the symmetric exchange axiom. On failure, returns the first
/// witness in `(x, y, u)` order, with `x` and `y` compared as masks.
///
/// `v = u` is allowed, so `x ^ {u}` itself counts as a repair.
pub fn check_symmetric_exchange(s: &SetSystem) -> Result<()> {
    if s.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let n = s.n();
    let members: Vec<Subset> = s.iter().collect();
    // repairs[i][u]: the elements v for which members[i] ^ {u, v} is feasible.
    let repairs: Vec<Vec<Subset>> = members
        .iter()
        .map(|&x| {
            (0..n)
                .map(|u| {
                    let flipped = x ^ Subset::singleton(u);
                    Subset::from_elements((0..n).filter(|&v| {
                        if v == u {
                            s.contains(flipped)
                        } else {
                            s.contains(flipped ^ Subset::singleton(v))
                        }
                    }))
                })
                .collect()
        })
        .collect();
    for (i, &x) in members.iter().enumerate() {
        for &y in &members {
            let diff = x ^ y;
            for u in diff.elements() {
                if (repairs[i][u] & diff).is_empty() {
                    return Err(Error::ExchangeViolation(ExchangeWitness { x, y, u }));
                }
            }
        }
    }
    Ok(())
}

/// Re-validates operation outputs in debug builds, where the closure
/// properties of delta-matroids make the check redundant in release.
#[inline]
fn debug_validate(family: &Family) {
    if cfg!(debug_assertions) && family.n() <= 6 {
        if let Err(e) = check_symmetric_exchange(family) {
            panic!("operation produced an invalid delta-matroid: {e}; {family:?}");
        }
    }
}

/// A set system whose family is nonempty and satisfies symmetric exchange.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaMatroid {
    family: Family,
}

impl DeltaMatroid {
    /// Validates `s` eagerly.
    pub fn new(s: SetSystem) -> Result<Self> {
        check_symmetric_exchange(&s)?;
        Ok(DeltaMatroid { family: s })
    }

    /// Builds a delta-matroid from 0-based member lists.
    pub fn from_sets<I, S>(n: usize, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = ElementId>,
    {
        let mut subsets = Vec::new();
        for set in sets {
            let mut s = Subset::EMPTY;
            for e in set {
                if e >= n {
                    return Err(Error::ElementOutOfRange { element: e, n });
                }
                s = s.with(e);
            }
            subsets.push(s);
        }
        DeltaMatroid::new(Family::from_subsets(n, subsets)?)
    }

    /// Wraps a family that is known to be a delta-matroid, e.g. the output of
    /// an operation that preserves the axiom. Checked in debug builds.
    pub(crate) fn from_family_trusted(family: Family) -> Self {
        debug_assert!(!family.is_empty());
        debug_validate(&family);
        DeltaMatroid { family }
    }

    fn from_nonempty(family: Family) -> Result<Self> {
        if family.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok(DeltaMatroid::from_family_trusted(family))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.family.n()
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn into_family(self) -> Family {
        self.family
    }

    #[inline]
    pub fn is_feasible(&self, s: Subset) -> bool {
        self.family.contains(s)
    }

    /// Feasible sets in ascending mask order.
    pub fn feasible_sets(&self) -> impl Iterator<Item = Subset> + '_ {
        self.family.iter()
    }

    pub fn ground_set(&self) -> Subset {
        Subset::full(self.n())
    }

    fn check_element(&self, e: ElementId) -> Result<()> {
        if e >= self.n() {
            return Err(Error::ElementOutOfRange { element: e, n: self.n() });
        }
        Ok(())
    }

    fn check_subset(&self, a: Subset) -> Result<()> {
        if !a.fits(self.n()) {
            return Err(Error::SubsetOutOfRange { subset: a, n: self.n() });
        }
        Ok(())
    }

    /// `D * a`: every feasible set is replaced by its symmetric difference
    /// with `a`. Panics if `a` does not fit the ground set.
    pub fn twist(&self, a: Subset) -> DeltaMatroid {
        assert!(a.fits(self.n()), "{a} does not fit a ground set of size {}", self.n());
        DeltaMatroid::from_family_trusted(self.family.xor_all(a))
    }

    /// The twist by the whole ground set.
    pub fn dual(&self) -> DeltaMatroid {
        self.twist(self.ground_set())
    }

    /// `D \ e`, relabeling the elements above `e` down by one. Fails with
    /// [`Error::EmptyFamily`] when every feasible set contains `e`.
    pub fn delete(&self, e: ElementId) -> Result<DeltaMatroid> {
        self.check_element(e)?;
        let mut out = Family::empty(self.n() - 1)?;
        for f in self.family.iter().filter(|f| !f.contains(e)) {
            out.insert(f.remove_index(e));
        }
        DeltaMatroid::from_nonempty(out)
    }

    /// `D / e`, relabeled like [`DeltaMatroid::delete`]. Fails with
    /// [`Error::EmptyFamily`] when no feasible set contains `e`.
    pub fn contract(&self, e: ElementId) -> Result<DeltaMatroid> {
        self.check_element(e)?;
        let mut out = Family::empty(self.n() - 1)?;
        for f in self.family.iter().filter(|f| f.contains(e)) {
            out.insert(f.without(e).remove_index(e));
        }
        DeltaMatroid::from_nonempty(out)
    }

    /// Deletes every element of `a`; the survivors keep their relative order.
    pub fn delete_set(&self, a: Subset) -> Result<DeltaMatroid> {
        self.check_subset(a)?;
        self.restrict(a.complement(self.n()))
    }

    /// Contracts every element of `a`; the survivors keep their relative order.
    pub fn contract_set(&self, a: Subset) -> Result<DeltaMatroid> {
        self.check_subset(a)?;
        let keep = a.complement(self.n());
        let mut out = Family::empty(keep.len())?;
        for f in self.family.iter().filter(|&f| a.is_subset_of(f)) {
            out.insert(f.compress(keep));
        }
        DeltaMatroid::from_nonempty(out)
    }

    /// `D|a`: deletes every element outside `a` and relabels `a` onto
    /// `{0, .., |a|-1}` in increasing order.
    pub fn restrict(&self, a: Subset) -> Result<DeltaMatroid> {
        self.check_subset(a)?;
        let mut out = Family::empty(a.len())?;
        for f in self.family.iter().filter(|&f| f.is_subset_of(a)) {
            out.insert(f.compress(a));
        }
        DeltaMatroid::from_nonempty(out)
    }

    /// `D1 ⊕ D2` with the elements of `other` shifted up by `self.n()`.
    pub fn direct_sum(&self, other: &DeltaMatroid) -> Result<DeltaMatroid> {
        let n = self.n() + other.n();
        if n > MAX_ELEMENTS {
            return Err(Error::CapacityExceeded { size: n, limit: MAX_ELEMENTS });
        }
        let mut out = Family::empty(n)?;
        for f2 in other.family.iter() {
            let shifted = f2.bits() << self.n();
            for f1 in self.family.iter() {
                out.insert(Subset::from_bits(f1.bits() | shifted));
            }
        }
        Ok(DeltaMatroid::from_family_trusted(out))
    }

    /// Relabels element `i` as `perm[i]`.
    pub fn permute(&self, perm: &[ElementId]) -> DeltaMatroid {
        assert_eq!(perm.len(), self.n(), "permutation length must equal the ground-set size");
        DeltaMatroid::from_family_trusted(self.family.permute(perm))
    }

    /// Size of the largest feasible set minus size of the smallest.
    pub fn width(&self) -> usize {
        let (lo, hi) = self.size_range();
        hi - lo
    }

    /// Smallest and largest feasible-set sizes.
    pub fn size_range(&self) -> (usize, usize) {
        self.family.iter().fold((usize::MAX, 0), |(lo, hi), f| (lo.min(f.len()), hi.max(f.len())))
    }

    pub fn is_normal(&self) -> bool {
        self.family.contains(Subset::EMPTY)
    }

    pub fn is_matroid(&self) -> bool {
        let (lo, hi) = self.size_range();
        lo == hi
    }

    /// Feasible sets of size `min + i` (`from_min`) or `max - i`. The result
    /// may be empty and in general is not a delta-matroid.
    pub fn layer(&self, from_min: bool, i: usize) -> Family {
        let (lo, hi) = self.size_range();
        let size = if from_min { lo.checked_add(i) } else { hi.checked_sub(i) };
        match size {
            Some(size) => self.family.filter(|f| f.len() == size),
            None => Family::empty(self.n()).expect("ground set already validated"),
        }
    }

    /// The matroid of smallest feasible sets.
    pub fn min_matroid(&self) -> Matroid {
        Matroid::from_layer_trusted(self.layer(true, 0))
    }

    /// The matroid of largest feasible sets.
    pub fn max_matroid(&self) -> Matroid {
        Matroid::from_layer_trusted(self.layer(false, 0))
    }

    /// For a feasible `f0`, a smallest feasible set below it and a largest
    /// feasible set above it, each the least such mask.
    pub fn envelope(&self, f0: Subset) -> Result<(Subset, Subset)> {
        if !self.is_feasible(f0) {
            return Err(Error::NotFeasible(f0));
        }
        let (lo, hi) = self.size_range();
        let below = self.family.iter().find(|f| f.len() == lo && f.is_subset_of(f0));
        let above = self.family.iter().find(|f| f.len() == hi && f0.is_subset_of(*f));
        match (below, above) {
            (Some(b), Some(a)) => Ok((b, a)),
            // Every delta-matroid admits the chain; reaching here means the
            // family was not a delta-matroid.
            _ => unreachable!("no envelope for feasible set {f0}"),
        }
    }
}

impl fmt::Debug for DeltaMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DeltaMatroid({:?})", self.family)
    }
}

/// A delta-matroid all of whose feasible sets (bases) share one size.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matroid {
    family: Family,
    rank: usize,
}

impl Matroid {
    pub fn new(family: Family) -> Result<Self> {
        check_symmetric_exchange(&family)?;
        let rank = family.min_size().expect("validated nonempty");
        if family.iter().any(|f| f.len() != rank) {
            return Err(Error::NotMatroid);
        }
        Ok(Matroid { family, rank })
    }

    fn from_layer_trusted(family: Family) -> Self {
        debug_validate(&family);
        let rank = family.min_size().expect("extreme layers are nonempty");
        debug_assert!(family.iter().all(|f| f.len() == rank));
        Matroid { family, rank }
    }

    pub fn n(&self) -> usize {
        self.family.n()
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// The common size of the bases.
    pub fn rank_value(&self) -> usize {
        self.rank
    }

    /// `max |x ∩ B|` over the bases `B`.
    pub fn rank(&self, x: Subset) -> usize {
        self.family.iter().map(|b| (b & x).len()).max().unwrap_or(0)
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid(rank={}, {:?})", self.rank, self.family)
    }
}

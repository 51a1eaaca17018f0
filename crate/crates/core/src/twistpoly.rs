//! Twist polynomials: `Σ_{A ⊆ E} z^{w(D * A)}`, where `w` is the width.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::binary::{candidate_matrix, find_representation, verify_representation};
use crate::dm::DeltaMatroid;
use crate::error::{Error, Result};
use crate::gf2::ComponentKind;
use crate::subset::{Family, Subset, MAX_ELEMENTS};

/// Coefficients keyed by exponent. Only nonzero coefficients are stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct TwistPolynomial {
    coeffs: BTreeMap<usize, u64>,
}

impl TwistPolynomial {
    pub fn from_coefficients<I: IntoIterator<Item = (usize, u64)>>(terms: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            if c != 0 {
                *coeffs.entry(e).or_insert(0) += c;
            }
        }
        TwistPolynomial { coeffs }
    }

    /// `c * z^e`.
    pub fn monomial(c: u64, e: usize) -> Self {
        TwistPolynomial::from_coefficients([(e, c)])
    }

    pub fn coefficient(&self, exponent: usize) -> u64 {
        self.coeffs.get(&exponent).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Value at `z = 1`.
    pub fn coefficient_sum(&self) -> u64 {
        self.coeffs.values().sum()
    }

    pub fn multiply(&self, other: &TwistPolynomial) -> TwistPolynomial {
        TwistPolynomial::from_coefficients(self.terms().flat_map(|(e1, c1)| other.terms().map(move |(e2, c2)| (e1 + e2, c1 * c2))))
    }
}

/// Ascending exponents joined by ` + `: `c` for `z^0`, `c*z` for `z^1` and
/// `c*z^e` otherwise.
impl fmt::Display for TwistPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TwistPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistPolynomial({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsePolynomialError(pub String);

impl fmt::Display for ParsePolynomialError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid polynomial term {:?}", self.0)
    }
}

impl std::error::Error for ParsePolynomialError {}

impl FromStr for TwistPolynomial {
    type Err = ParsePolynomialError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(TwistPolynomial::default());
        }
        let mut terms = Vec::new();
        let mut last = None;
        for term in s.split(" + ") {
            let bad = || ParsePolynomialError(term.to_string());
            let (c, e) = match term.split_once("*z") {
                None => (term, 0),
                Some((c, "")) => (c, 1),
                Some((c, rest)) => (c, rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?),
            };
            let c: u64 = c.parse().map_err(|_| bad())?;
            // Canonical text only: positive coefficients, strictly ascending exponents.
            if c == 0 || last.is_some_and(|l| l >= e) {
                return Err(bad());
            }
            last = Some(e);
            terms.push((e, c));
        }
        Ok(TwistPolynomial::from_coefficients(terms))
    }
}

/// Width histogram over all `2^n` twists.
pub fn twist_polynomial(d: &DeltaMatroid) -> TwistPolynomial {
    let n = d.n();
    let members: Vec<u32> = d.feasible_sets().map(Subset::bits).collect();
    let width_of = |a: u32| {
        let (lo, hi) = members.iter().fold((u32::MAX, 0), |(lo, hi), &f| {
            let k = (f ^ a).count_ones();
            (lo.min(k), hi.max(k))
        });
        (hi - lo) as usize
    };
    let histogram = |range: std::ops::Range<u32>| {
        let mut counts = vec![0u64; n + 1];
        for a in range {
            counts[width_of(a)] += 1;
        }
        counts
    };
    let total = 1u32 << n;
    let counts = if n >= 10 {
        let chunk = 1u32 << 8;
        (0..total / chunk)
            .into_par_iter()
            .map(|i| histogram(i * chunk..(i + 1) * chunk))
            .reduce(|| vec![0; n + 1], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect())
    } else {
        histogram(0..total)
    };
    TwistPolynomial::from_coefficients(counts.into_iter().enumerate())
}

pub fn is_twist_monomial(d: &DeltaMatroid) -> bool {
    twist_polynomial(d).is_monomial()
}

/// A partition `E = A ⊔ B_1 ⊔ .. ⊔ B_m` with every `B_i` of odd size, whose
/// feasible sets are those meeting every `B_i` in an even number of elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialPartition {
    pub free_part: Subset,
    pub odd_blocks: Vec<Subset>,
}

impl MonomialPartition {
    pub fn admits(&self, f: Subset) -> bool {
        self.odd_blocks.iter().all(|&b| (f & b).len().is_multiple_of(2))
    }

    /// The family described by the partition on a ground set of size `n`.
    pub fn family(&self, n: usize) -> Family {
        Family::power_set(n).expect("partition of a valid ground set").filter(|f| self.admits(f))
    }
}

/// For a normal delta-matroid, the odd-block partition when its graph is a
/// disjoint union of odd complete graphs and looped vertices, else `None`.
///
/// Only the graph of the identity twist is examined: every normal twist of a
/// binary delta-matroid is itself represented by a matrix.
pub fn characterize_monomial(d: &DeltaMatroid) -> Result<Option<MonomialPartition>> {
    let matrix = candidate_matrix(d)?;
    let represented = verify_representation(d, &matrix);
    if cfg!(debug_assertions) && d.n() <= 4 {
        debug_assert_eq!(represented, find_representation(d).is_some(), "normal binary delta-matroid without identity witness: {d:?}");
    }
    if !represented {
        return Ok(None);
    }
    let mut partition = MonomialPartition { free_part: Subset::EMPTY, odd_blocks: Vec::new() };
    for comp in matrix.components() {
        match matrix.classify_component(comp).kind {
            ComponentKind::LoopedVertex => partition.free_part = partition.free_part | comp,
            ComponentKind::OddComplete(_) => partition.odd_blocks.push(comp),
            ComponentKind::Other => return Ok(None),
        }
    }
    debug_assert_eq!(&partition.family(d.n()), d.family(), "partition does not reproduce the family");
    Ok(Some(partition))
}

/// The even-size subsets of a `(2k+1)`-element set, represented by the
/// complete graph `K_{2k+1}`.
pub fn make_odd_complete(k: usize) -> Result<DeltaMatroid> {
    let n = 2 * k + 1;
    if n > MAX_ELEMENTS {
        return Err(Error::CapacityExceeded { size: n, limit: MAX_ELEMENTS });
    }
    let family = Family::power_set(n)?.filter(|f| f.len() % 2 == 0);
    Ok(DeltaMatroid::from_family_trusted(family))
}

/// Every subset of an `n`-element set is feasible.
pub fn make_free(n: usize) -> Result<DeltaMatroid> {
    Ok(DeltaMatroid::from_family_trusted(Family::power_set(n)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::{d1, d2};

    /// Builds every twist explicitly and measures its width.
    fn polynomial_oracle(d: &DeltaMatroid) -> TwistPolynomial {
        TwistPolynomial::from_coefficients((0..(1u32 << d.n())).map(|a| (d.twist(Subset::from_bits(a)).width(), 1)))
    }

    #[test]
    fn closed_form_monomials() {
        for k in 1..=3 {
            let p = twist_polynomial(&make_odd_complete(k).unwrap());
            assert_eq!(p, TwistPolynomial::monomial(1 << (2 * k + 1), 2 * k));
        }
        for n in 0..=6 {
            assert_eq!(twist_polynomial(&make_free(n).unwrap()), TwistPolynomial::monomial(1 << n, n));
        }
    }

    #[test]
    fn d1_polynomial() {
        let expected = polynomial_oracle(&d1());
        assert_eq!(expected, TwistPolynomial::from_coefficients([(1, 2), (2, 2)]));
        assert_eq!(twist_polynomial(&d1()), expected);
        assert_eq!(twist_polynomial(&d1()).to_string(), "2*z + 2*z^2");
    }

    #[test]
    fn large_ground_sets_use_the_parallel_path() {
        let d = make_odd_complete(5).unwrap();
        assert_eq!(twist_polynomial(&d), TwistPolynomial::monomial(1 << 11, 10));
        let sum = d.direct_sum(&d1()).unwrap();
        assert_eq!(twist_polynomial(&sum), polynomial_oracle(&sum));
    }

    #[test]
    fn monomial_detection() {
        assert!(is_twist_monomial(&make_odd_complete(1).unwrap()));
        assert!(!is_twist_monomial(&d1()));
        assert!(!is_twist_monomial(&d2()));
    }

    #[test]
    fn characterizations() {
        let d3 = make_odd_complete(1).unwrap();
        let sum = d3.direct_sum(&make_free(1).unwrap()).unwrap();
        assert_eq!(
            characterize_monomial(&sum).unwrap(),
            Some(MonomialPartition { free_part: Subset::singleton(3), odd_blocks: vec![Subset::full(3)] })
        );
        assert_eq!(
            characterize_monomial(&d3).unwrap(),
            Some(MonomialPartition { free_part: Subset::EMPTY, odd_blocks: vec![Subset::full(3)] })
        );
        assert_eq!(characterize_monomial(&d2()).unwrap(), None);
        assert_eq!(characterize_monomial(&d1().twist(Subset::full(2))), Err(Error::NotNormal));
    }

    #[test]
    fn generators() {
        assert_eq!(make_odd_complete(1).unwrap().family().len(), 4);
        assert_eq!(make_odd_complete(2).unwrap().family().len(), 16);
        let empty = make_free(0).unwrap();
        assert_eq!((empty.n(), empty.family().len()), (0, 1));
        assert!(matches!(make_odd_complete(8), Err(Error::CapacityExceeded { .. })));
        assert!(matches!(make_free(17), Err(Error::CapacityExceeded { .. })));
    }

    #[test]
    fn rendering_and_parsing() {
        let p = TwistPolynomial::from_coefficients([(0, 3), (1, 2), (4, 5)]);
        assert_eq!(p.to_string(), "3 + 2*z + 5*z^4");
        assert_eq!("3 + 2*z + 5*z^4".parse::<TwistPolynomial>().unwrap(), p);
        assert_eq!(TwistPolynomial::monomial(8, 2).to_string(), "8*z^2");
        assert!("2*z^2 + 1*z".parse::<TwistPolynomial>().is_err());
        assert!("2*y".parse::<TwistPolynomial>().is_err());
        assert!("0*z".parse::<TwistPolynomial>().is_err());
    }

    #[test]
    fn multiplication() {
        let a = TwistPolynomial::from_coefficients([(1, 2), (2, 2)]);
        let b = TwistPolynomial::monomial(2, 1);
        assert_eq!(a.multiply(&b), TwistPolynomial::from_coefficients([(2, 4), (3, 4)]));
    }
}

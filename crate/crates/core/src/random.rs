//! Random delta-matroids for property tests and sampling tools.
//!
//! Three sources with different coverage: twists of matrix-represented
//! delta-matroids (always binary), random walks through the census search
//! (any normal delta-matroid on up to five elements, then relabeled and
//! twisted), and rejection sampling of arbitrary families (tiny ground sets
//! only).

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::census::{sample_normal_word, CensusRecord, CENSUS_LIMIT};
use crate::dm::{check_symmetric_exchange, DeltaMatroid};
use crate::gf2::SymMatrixGf2;
use crate::subset::{ElementId, Family, Subset};

pub fn permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<ElementId> {
    let mut perm: Vec<ElementId> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

pub fn subset<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Subset {
    Subset::from_bits(rng.random::<u32>() & Subset::full(n).bits())
}

pub fn symmetric_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SymMatrixGf2 {
    let mut a = SymMatrixGf2::zero(n);
    for i in 0..n {
        for j in i..n {
            a.set(i, j, rng.random_bool(0.5));
        }
    }
    a
}

/// A random symmetric matrix's delta-matroid, twisted by a random set.
pub fn binary_delta_matroid<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DeltaMatroid {
    let d = symmetric_matrix(rng, n).delta_matroid();
    d.twist(subset(rng, n))
}

/// A random walk through the exchange-pruned search on `n <= 5` elements,
/// relabeled and twisted at random.
pub fn search_delta_matroid<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DeltaMatroid {
    assert!(n <= CENSUS_LIMIT, "search sampling supports at most {CENSUS_LIMIT} elements");
    let bias = rng.random_range(0.2..0.8);
    let word = sample_normal_word(rng, n, bias);
    let d = DeltaMatroid::from_family_trusted(Family::from_word(n, word).expect("word from the search fits"));
    d.permute(&permutation(rng, n)).twist(subset(rng, n))
}

/// Uniformly random families until one is a delta-matroid.
pub fn rejection_delta_matroid<R: Rng + ?Sized>(rng: &mut R, n: usize, max_tries: usize) -> Option<DeltaMatroid> {
    (0..max_tries).find_map(|_| {
        let family = Family::from_subsets(n, (0..1u32 << n).map(Subset::from_bits).filter(|_| rng.random_bool(0.5))).ok()?;
        check_symmetric_exchange(&family).is_ok().then(|| DeltaMatroid::from_family_trusted(family))
    })
}

/// A uniformly chosen catalog class, relabeled and twisted at random.
pub fn from_catalog<R: Rng + ?Sized>(rng: &mut R, records: &[CensusRecord]) -> Option<DeltaMatroid> {
    let record = records.choose(rng)?;
    let d = record.code.decode();
    let n = d.n();
    Some(d.permute(&permutation(rng, n)).twist(subset(rng, n)))
}

/// Mixes the sources above; for `n <= 5`.
pub fn delta_matroid<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DeltaMatroid {
    if n <= 3 && rng.random_bool(0.2) {
        if let Some(d) = rejection_delta_matroid(rng, n, 256) {
            return d;
        }
    }
    if rng.random_bool(0.3) {
        binary_delta_matroid(rng, n)
    } else {
        search_delta_matroid(rng, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samplers_produce_valid_delta_matroids() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.random_range(0..=5);
            for d in [delta_matroid(&mut rng, n), search_delta_matroid(&mut rng, n), binary_delta_matroid(&mut rng, n)] {
                assert_eq!(d.n(), n);
                assert!(check_symmetric_exchange(d.family()).is_ok());
            }
        }
        assert!(rejection_delta_matroid(&mut rng, 2, 1000).is_some());
    }

    #[test]
    fn search_sampler_reaches_non_binary_delta_matroids() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let nonbinary = (0..100).filter(|_| !crate::binary::is_binary(&search_delta_matroid(&mut rng, 4))).count();
        assert!(nonbinary > 10, "{nonbinary}");
    }
}

//! Enumeration of delta-matroids up to relabeling and twisting.
//!
//! Two delta-matroids are equivalent when one is obtained from the other by a
//! permutation of the ground set followed by a twist. Each class has normal
//! members (twist by any feasible set), and `D * A` is normal exactly when `A`
//! is feasible, so the normal members of the class of `D` are the relabelings
//! of `D * F` for feasible `F`. The canonical code of a class is the least
//! family word among those, where the family word of a set system has bit
//! `m` set iff the subset with mask `m` is feasible.
//!
//! Families over at most six elements fit one `u64`; all kernels here work on
//! such words.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{BufRead, Write};
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::binary::is_binary;
use crate::dm::DeltaMatroid;
use crate::error::{Error, Result};
use crate::subset::{xor_positions, Family, Subset};
use crate::text::{format_compact, parse_compact};
use crate::twistpoly::{twist_polynomial, TwistPolynomial};

/// Largest ground set for canonical codes (`n!` relabelings per twist).
pub const CANONICAL_LIMIT: usize = 6;

/// Largest ground set the census enumerates.
pub const CENSUS_LIMIT: usize = 5;

/// Relabelings of family words, one lookup per byte of the word.
struct PermTables {
    perms: Vec<Vec<u8>>,
    bytes: usize,
    table: Vec<u64>,
}

impl PermTables {
    fn build(n: usize) -> Self {
        let perms = permutations(n);
        let bytes = (1usize << n).div_ceil(8);
        let mut table = vec![0u64; perms.len() * bytes * 256];
        for (p, perm) in perms.iter().enumerate() {
            let image: Vec<u32> = (0..1u32 << n).map(|m| Subset::from_bits(m).elements().fold(0, |acc, e| acc | 1 << perm[e])).collect();
            for b in 0..bytes {
                for v in 0..256usize {
                    let mut out = 0u64;
                    for bit in 0..8 {
                        let m = b * 8 + bit;
                        if v >> bit & 1 == 1 && m < image.len() {
                            out |= 1 << image[m];
                        }
                    }
                    table[(p * bytes + b) * 256 + v] = out;
                }
            }
        }
        PermTables { perms, bytes, table }
    }

    #[inline]
    fn apply(&self, p: usize, word: u64) -> u64 {
        let base = p * self.bytes * 256;
        let mut out = 0;
        for b in 0..self.bytes {
            out |= self.table[base + b * 256 + ((word >> (8 * b)) & 0xff) as usize];
        }
        out
    }
}

fn tables(n: usize) -> &'static PermTables {
    static TABLES: [OnceLock<PermTables>; CANONICAL_LIMIT + 1] = [const { OnceLock::new() }; CANONICAL_LIMIT + 1];
    TABLES[n].get_or_init(|| PermTables::build(n))
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<u8>> {
    fn go(prefix: &mut Vec<u8>, n: usize, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for e in 0..n as u8 {
            if !prefix.contains(&e) {
                prefix.push(e);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), n, &mut out);
    out
}

#[inline]
fn bits(mut w: u64) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        (w != 0).then(|| {
            let b = w.trailing_zeros();
            w &= w - 1;
            b
        })
    })
}

/// Least family word over the normal members of the class of `word`.
pub fn canonical_word(n: usize, word: u64) -> u64 {
    let t = tables(n);
    let mut best = u64::MAX;
    for f in bits(word) {
        let twisted = xor_positions(word, f);
        for p in 0..t.perms.len() {
            best = best.min(t.apply(p, twisted));
        }
    }
    best
}

/// Whether `word` is its own canonical word; exits at the first smaller image.
pub fn is_canonical_word(n: usize, word: u64) -> bool {
    if word & 1 == 0 {
        return false;
    }
    let t = tables(n);
    bits(word).all(|f| {
        let twisted = xor_positions(word, f);
        (0..t.perms.len()).all(|p| t.apply(p, twisted) >= word)
    })
}

/// Symmetric exchange on a family word.
pub fn word_satisfies_exchange(n: usize, word: u64) -> bool {
    word != 0 && bits(word).all(|x| bits(word).all(|y| (0..n as u32).all(|u| triple_ok(x, x ^ y, u, word))))
}

/// Whether the triple `(x, y = x ^ diff, u)` has a repair in `possible`.
/// Vacuous when `u` is outside `diff`.
#[inline]
fn triple_ok(x: u32, diff: u32, u: u32, possible: u64) -> bool {
    if diff >> u & 1 == 0 {
        return true;
    }
    let flipped = x ^ (1 << u);
    bits(diff as u64).any(|v| {
        let repair = if v == u { flipped } else { flipped ^ (1 << v) };
        possible >> repair & 1 == 1
    })
}

/// Equivalence class identifier: the canonical family word, rendered in the
/// compact text form `n:<hex>`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    n: usize,
    word: u64,
}

impl CanonicalCode {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn word(&self) -> u64 {
        self.word
    }

    pub fn family(&self) -> Family {
        Family::from_word(self.n, self.word).expect("canonical words fit their ground set")
    }

    /// The normal representative this code names.
    pub fn decode(&self) -> DeltaMatroid {
        DeltaMatroid::from_family_trusted(self.family())
    }

    /// Reads a code, checking that it is a delta-matroid and canonical.
    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        let family = parse_compact(text)?;
        let n = family.n();
        if n > CANONICAL_LIMIT {
            return Err(format!("canonical codes cover at most {CANONICAL_LIMIT} elements"));
        }
        let word = family.as_word().expect("n checked");
        if !word_satisfies_exchange(n, word) {
            return Err("family is not a delta-matroid".into());
        }
        if !is_canonical_word(n, word) {
            return Err("family is not the canonical member of its class".into());
        }
        Ok(CanonicalCode { n, word })
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_compact(&self.family()))
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({self})")
    }
}

pub fn canonical_code(d: &DeltaMatroid) -> Result<CanonicalCode> {
    let n = d.n();
    if n > CANONICAL_LIMIT {
        return Err(Error::CapacityExceeded { size: n, limit: CANONICAL_LIMIT });
    }
    let word = d.family().as_word().expect("n checked");
    Ok(CanonicalCode { n, word: canonical_word(n, word) })
}

/// One equivalence class with its twist-invariant data. `width` is the width
/// of the canonical representative, which is not itself a class invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub code: CanonicalCode,
    pub family_size: usize,
    pub width: usize,
    pub binary: bool,
    pub twist_poly: TwistPolynomial,
    pub monomial: bool,
}

impl CensusRecord {
    pub fn from_code(code: CanonicalCode) -> Self {
        let d = code.decode();
        let twist_poly = twist_polynomial(&d);
        CensusRecord {
            code,
            family_size: d.family().len(),
            width: d.width(),
            binary: is_binary(&d),
            monomial: twist_poly.is_monomial(),
            twist_poly,
        }
    }
}

/// Summary counts of a census.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusCounts {
    pub classes: usize,
    pub binary: usize,
    pub monomial: usize,
}

pub fn counts(records: &[CensusRecord]) -> CensusCounts {
    CensusCounts {
        classes: records.len(),
        binary: records.iter().filter(|r| r.binary).count(),
        monomial: records.iter().filter(|r| r.monomial).count(),
    }
}

/// Canonical words of every class on `n <= 4` elements by testing all
/// `2^(2^n - 1)` families that contain the empty set.
pub fn canonical_words_by_brute_force(n: usize) -> Result<Vec<u64>> {
    if n > 4 {
        return Err(Error::CapacityExceeded { size: n, limit: 4 });
    }
    let free_bits = (1u64 << n) - 1;
    Ok((0..1u64 << free_bits).map(|w| w << 1 | 1).filter(|&w| word_satisfies_exchange(n, w) && is_canonical_word(n, w)).collect())
}

/// Depth-first search over normal families, deciding the nonempty masks in
/// descending order and pruning any exchange triple whose repairs have all
/// been excluded.
struct ExchangeSearch {
    n: u32,
}

/// Decisions made so far: `inn` holds included masks, `possible` the
/// included and undecided ones. Masks below `next` are undecided.
#[derive(Clone, Copy, Debug)]
struct Partial {
    inn: u64,
    possible: u64,
    next: u32,
}

impl ExchangeSearch {
    fn root(&self) -> Partial {
        let top = 1u32 << self.n;
        let all = if top == 64 { u64::MAX } else { (1u64 << top) - 1 };
        Partial { inn: 1, possible: all, next: top - 1 }
    }

    /// Adding `m` creates triples with `m` at either end.
    fn include_ok(&self, s: &Partial, m: u32) -> bool {
        bits(s.inn).all(|y| {
            let diff = m ^ y;
            (0..self.n).all(|u| triple_ok(m, diff, u, s.possible) && triple_ok(y, diff, u, s.possible))
        })
    }

    /// Removing `m` can only break triples that used `m` as their repair.
    fn exclude_ok(&self, s: &Partial, m: u32) -> bool {
        let n = self.n;
        for u in 0..n {
            // Repair with v = u: m = x ^ {u}.
            let x = m ^ (1 << u);
            if s.inn >> x & 1 == 1 && !bits(s.inn).all(|y| triple_ok(x, x ^ y, u, s.possible)) {
                return false;
            }
            for v in u + 1..n {
                let x = m ^ (1 << u) ^ (1 << v);
                if s.inn >> x & 1 == 0 {
                    continue;
                }
                let both = (1 << u) | (1 << v);
                let ok = bits(s.inn).all(|y| {
                    let diff = x ^ y;
                    diff & both != both || (triple_ok(x, diff, u, s.possible) && triple_ok(x, diff, v, s.possible))
                });
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    fn children(&self, s: &Partial) -> [Option<Partial>; 2] {
        let m = s.next;
        let base = Partial { next: m - 1, ..*s };
        let inn = Partial { inn: s.inn | 1 << m, ..base };
        let inn = self.include_ok(&inn, m).then_some(inn);
        let out = Partial { possible: s.possible & !(1 << m), ..base };
        let out = self.exclude_ok(&out, m).then_some(out);
        [inn, out]
    }

    fn visit(&self, s: Partial, leaf: &mut dyn FnMut(u64)) {
        if s.next == 0 {
            leaf(s.inn);
            return;
        }
        for child in self.children(&s).into_iter().flatten() {
            self.visit(child, leaf);
        }
    }

    /// Partial states after `depth` decisions, in search order.
    fn frontier(&self, depth: u32) -> Vec<Partial> {
        let mut layer = vec![self.root()];
        for _ in 0..depth {
            layer = layer.iter().flat_map(|s| if s.next == 0 { [Some(*s), None] } else { self.children(s) }).flatten().collect();
        }
        layer
    }
}

/// Every normal delta-matroid word on `n <= 5` elements, from the pruned
/// search. Intended for tests and tools; the census only keeps canonical ones.
pub fn normal_words_by_search(n: usize) -> Result<Vec<u64>> {
    if n > CENSUS_LIMIT {
        return Err(Error::CapacityExceeded { size: n, limit: CENSUS_LIMIT });
    }
    let mut out = Vec::new();
    if n == 0 {
        return Ok(vec![1]);
    }
    ExchangeSearch { n: n as u32 }.visit(ExchangeSearch { n: n as u32 }.root(), &mut |w| out.push(w));
    Ok(out)
}

/// Canonical words of every class on `n <= 5` elements via the pruned search,
/// sharded over the first decision levels.
pub fn canonical_words_by_search(n: usize) -> Result<Vec<u64>> {
    if n > CENSUS_LIMIT {
        return Err(Error::CapacityExceeded { size: n, limit: CENSUS_LIMIT });
    }
    if n == 0 {
        return Ok(vec![1]);
    }
    let search = ExchangeSearch { n: n as u32 };
    let depth = ((1u32 << n) - 1).min(8);
    let shards = search.frontier(depth);
    let found: BTreeSet<u64> = shards
        .into_par_iter()
        .fold(BTreeSet::new, |mut acc, s| {
            search.visit(s, &mut |w| {
                if is_canonical_word(n, w) {
                    acc.insert(w);
                }
            });
            acc
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(found.into_iter().collect())
}

/// One record per equivalence class on `n` elements, ordered by code.
pub fn enumerate_classes(n: usize) -> Result<Vec<CensusRecord>> {
    let words = if n <= 4 { canonical_words_by_brute_force(n)? } else { canonical_words_by_search(n)? };
    Ok(words.into_par_iter().map(|word| CensusRecord::from_code(CanonicalCode { n, word })).collect())
}

/// Like [`enumerate_classes`], on a dedicated pool of `jobs` threads.
pub fn enumerate_classes_with_jobs(n: usize, jobs: usize) -> Result<Vec<CensusRecord>> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().map_err(|e| Error::Io(e.to_string()))?;
    pool.install(|| enumerate_classes(n))
}

/// Random walk through the exchange search: each decision is taken at random
/// and dead ends backtrack. Returns a normal delta-matroid word.
pub(crate) fn sample_normal_word<R: rand::Rng + ?Sized>(rng: &mut R, n: usize, include_bias: f64) -> u64 {
    assert!(n <= CENSUS_LIMIT);
    if n == 0 {
        return 1;
    }
    fn go<R: rand::Rng + ?Sized>(search: &ExchangeSearch, s: Partial, rng: &mut R, bias: f64) -> Option<u64> {
        if s.next == 0 {
            return Some(s.inn);
        }
        let [inn, out] = search.children(&s);
        let order = if rng.random_bool(bias) { [inn, out] } else { [out, inn] };
        order.into_iter().flatten().find_map(|c| go(search, c, rng, bias))
    }
    let search = ExchangeSearch { n: n as u32 };
    go(&search, search.root(), rng, include_bias).expect("the family {∅} is always reachable")
}

const CATALOG_MAGIC: &str = "dm-census v1";

/// Writes the header `dm-census v1 n=<n>` and one line per record.
pub fn write_catalog<W: Write>(n: usize, records: &[CensusRecord], mut sink: W) -> std::io::Result<()> {
    writeln!(sink, "{CATALOG_MAGIC} n={n}")?;
    for r in records {
        writeln!(
            sink,
            "{} |F|={} w={} binary={} monomial={} poly={}",
            r.code,
            r.family_size,
            r.width,
            u8::from(r.binary),
            u8::from(r.monomial),
            r.twist_poly
        )?;
    }
    Ok(())
}

/// Reads a catalog, returning the ground-set size from its header.
pub fn read_catalog<R: BufRead>(source: R) -> Result<(usize, Vec<CensusRecord>)> {
    let mut lines = source.lines().enumerate().map(|(i, l)| (i + 1, l));
    let malformed = |line: usize, reason: &str| Error::MalformedLine { line, reason: reason.to_string() };
    let (_, header) = lines.next().ok_or_else(|| malformed(1, "missing header"))?;
    let header = header?;
    let n: usize = header
        .strip_prefix(CATALOG_MAGIC)
        .and_then(|rest| rest.strip_prefix(" n="))
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| malformed(1, "expected `dm-census v1 n=<n>`"))?;
    let mut records = Vec::new();
    for (line_no, line) in lines {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        records.push(parse_record(&line, n).map_err(|reason| Error::MalformedLine { line: line_no, reason })?);
    }
    Ok((n, records))
}

fn parse_record(line: &str, n: usize) -> std::result::Result<CensusRecord, String> {
    let (head, poly) = line.split_once(" poly=").ok_or("missing poly field")?;
    let mut fields = head.split(' ');
    let code = CanonicalCode::parse(fields.next().ok_or("missing code")?)?;
    if code.n() != n {
        return Err(format!("code has {} elements, header says {n}", code.n()));
    }
    let mut field = |key: &str| -> std::result::Result<usize, String> {
        let raw = fields.next().ok_or(format!("missing {key} field"))?;
        raw.strip_prefix(key).and_then(|v| v.parse().ok()).ok_or(format!("expected `{key}<integer>`, found {raw:?}"))
    };
    let family_size = field("|F|=")?;
    let width = field("w=")?;
    let binary = field("binary=")?;
    let monomial = field("monomial=")?;
    if fields.next().is_some() {
        return Err("unexpected trailing field".into());
    }
    let flag = |v: usize, key: &str| match v {
        0 => Ok(false),
        1 => Ok(true),
        _ => Err(format!("{key} must be 0 or 1")),
    };
    Ok(CensusRecord {
        code,
        family_size,
        width,
        binary: flag(binary, "binary")?,
        monomial: flag(monomial, "monomial")?,
        twist_poly: poly.parse().map_err(|e: crate::twistpoly::ParsePolynomialError| e.to_string())?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::d1;

    #[test]
    fn permutation_tables_match_direct_relabeling() {
        for n in 0..=4 {
            let t = tables(n);
            for word in [1u64, 0b1011, 0x29, 0xffff & ((1u64 << (1 << n)) - 1)] {
                let word = word & ((1u64 << (1 << n)) - 1);
                for (p, perm) in t.perms.iter().enumerate() {
                    let perm: Vec<usize> = perm.iter().map(|&e| e as usize).collect();
                    let family = Family::from_word(n, word).unwrap();
                    assert_eq!(t.apply(p, word), family.permute(&perm).as_word().unwrap());
                }
            }
        }
    }

    #[test]
    fn canonical_code_examples() {
        // D_1's normal members: 0x7, twisted by {1} 0xb, by {2} 0xd.
        assert_eq!(canonical_code(&d1()).unwrap().to_string(), "2:07");
        let point = DeltaMatroid::from_sets(1, [Vec::<usize>::new()]).unwrap();
        let coloop = DeltaMatroid::from_sets(1, [vec![0]]).unwrap();
        assert_eq!(canonical_code(&point).unwrap().to_string(), "1:01");
        assert_eq!(canonical_code(&coloop).unwrap().to_string(), "1:01");
        let big = crate::twistpoly::make_free(7).unwrap();
        assert!(matches!(canonical_code(&big), Err(Error::CapacityExceeded { .. })));
    }

    #[test]
    fn search_finds_every_normal_delta_matroid() {
        for n in 1..=4 {
            let mut found = normal_words_by_search(n).unwrap();
            found.sort();
            let brute: Vec<u64> = (0..1u64 << ((1 << n) - 1)).map(|w| w << 1 | 1).filter(|&w| word_satisfies_exchange(n, w)).collect();
            assert_eq!(found, brute, "n={n}");
        }
    }

    #[test]
    fn word_exchange_matches_family_check() {
        for word in 1u64..256 {
            let family = Family::from_word(3, word).unwrap();
            assert_eq!(word_satisfies_exchange(3, word), crate::dm::check_symmetric_exchange(&family).is_ok());
        }
    }

    #[test]
    fn search_and_brute_force_agree_on_classes() {
        for n in 0..=4 {
            assert_eq!(canonical_words_by_search(n).unwrap(), canonical_words_by_brute_force(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn small_census_counts() {
        assert_eq!(enumerate_classes(1).unwrap().len(), 2);
        let c = counts(&enumerate_classes(2).unwrap());
        assert_eq!((c.classes, c.binary), (5, 5));
        let c = counts(&enumerate_classes(3).unwrap());
        assert_eq!((c.classes, c.binary), (16, 13));
        assert!(matches!(enumerate_classes(6), Err(Error::CapacityExceeded { .. })));
    }

    #[test]
    fn catalog_round_trip() {
        let records = enumerate_classes(3).unwrap();
        let mut buf = Vec::new();
        write_catalog(3, &records, &mut buf).unwrap();
        let (n, back) = read_catalog(buf.as_slice()).unwrap();
        assert_eq!((n, back), (3, records));

        let mut buf = Vec::new();
        write_catalog(4, &[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "dm-census v1 n=4\n");
        assert_eq!(read_catalog(buf.as_slice()).unwrap(), (4, vec![]));
    }

    #[test]
    fn catalog_rejects_malformed_lines() {
        let bad_bits = "dm-census v1 n=2\n2:1f |F|=3 w=1 binary=1 monomial=0 poly=2*z + 2*z^2\n";
        assert!(matches!(read_catalog(bad_bits.as_bytes()), Err(Error::MalformedLine { line: 2, .. })));
        let bad_header = "dm-census v2 n=2\n";
        assert!(matches!(read_catalog(bad_header.as_bytes()), Err(Error::MalformedLine { line: 1, .. })));
        let not_canonical = "dm-census v1 n=2\n2:0b |F|=3 w=2 binary=1 monomial=0 poly=2*z + 2*z^2\n";
        assert!(matches!(read_catalog(not_canonical.as_bytes()), Err(Error::MalformedLine { line: 2, .. })));
        let bad_flag = "dm-census v1 n=2\n2:07 |F|=3 w=1 binary=2 monomial=0 poly=2*z + 2*z^2\n";
        assert!(matches!(read_catalog(bad_flag.as_bytes()), Err(Error::MalformedLine { line: 2, .. })));
    }
}

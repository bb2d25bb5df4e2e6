//! Smallest-prime-factor sieve and the integer functions built on it:
//! factorization, Euler phi, smooth parts, smooth counting, and prime
//! counting in arithmetic progressions.
//!
//! The table stores `spf[n]`, the smallest prime factor of `n`, for every
//! `2 <= n <= limit`. Construction is a segmented sieve parallelized over
//! segments; the finished table is immutable and all queries are pure, so it
//! can be shared freely across threads.

use crate::error::{Error, Result};
use rayon::prelude::*;
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

/// Largest limit a table will accept; entries are stored as `u32`.
pub const MAX_SIEVE_LIMIT: u64 = u32::MAX as u64 - 1;

/// Default segment length (entries) for the segmented construction.
pub const DEFAULT_SEGMENT: usize = 1 << 20;

const CACHE_MAGIC: &[u8; 4] = b"SPFC";
const CACHE_VERSION: u16 = 1;
const CACHE_HEADER_LEN: u64 = 4 + 2 + 8;

/// Smallest prime factor of an integer, with `P^-(1)` represented as a
/// dedicated infinite marker rather than a magic integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MinFactor {
    Prime(u64),
    Infinite,
}

impl MinFactor {
    /// True when the smallest factor exceeds `bound` (always true for the
    /// infinite marker).
    pub fn exceeds(&self, bound: u64) -> bool {
        match self {
            MinFactor::Prime(p) => *p > bound,
            MinFactor::Infinite => true,
        }
    }
}

/// Prime factorization as `(prime, exponent)` pairs with strictly increasing
/// primes. Empty exactly for n = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    entries: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn entries(&self) -> &[(u64, u32)] {
        &self.entries
    }

    /// Reconstructs the factored integer.
    pub fn value(&self) -> u64 {
        self.entries.iter().map(|&(p, e)| p.pow(e)).product()
    }

    /// Number of distinct prime factors.
    pub fn num_distinct(&self) -> usize {
        self.entries.len()
    }

    /// Number of prime factors counted with multiplicity.
    pub fn num_with_multiplicity(&self) -> u64 {
        self.entries.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn exponent_of(&self, q: u64) -> u32 {
        self.entries
            .iter()
            .find(|&&(p, _)| p == q)
            .map_or(0, |&(_, e)| e)
    }
}

/// Immutable smallest-prime-factor table over `[2, limit]`.
pub struct SieveTable {
    limit: u64,
    spf: Vec<u32>,
}

impl SieveTable {
    /// Builds the table with the default segment size.
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with_segment(limit, DEFAULT_SEGMENT)
    }

    /// Builds the table sieving `segment` entries at a time. Segments are
    /// processed in parallel.
    pub fn build_with_segment(limit: u64, segment: usize) -> Result<Self> {
        if limit < 2 || limit > MAX_SIEVE_LIMIT {
            return Err(Error::SieveLimit {
                limit,
                max: MAX_SIEVE_LIMIT,
            });
        }
        if segment == 0 {
            return Err(Error::InvalidParameter(
                "segment size must be positive".into(),
            ));
        }
        let len = (limit + 1) as usize;
        let mut spf: Vec<u32> = Vec::new();
        spf.try_reserve_exact(len)
            .map_err(|_| Error::SieveAlloc { limit })?;
        spf.resize(len, 0);

        let root = limit.isqrt();
        let base_primes = primes_up_to(root);
        spf.par_chunks_mut(segment)
            .enumerate()
            .for_each(|(chunk_idx, chunk)| {
                mark_segment(chunk, (chunk_idx * segment) as u64, &base_primes);
            });
        Ok(SieveTable { limit, spf })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn check_range(&self, n: u64) -> Result<()> {
        if n == 0 || n > self.limit {
            Err(Error::OutOfRange {
                n,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    fn spf_unchecked(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    /// Smallest prime factor of `n`, for `2 <= n <= limit`.
    pub fn smallest_prime_factor(&self, n: u64) -> Result<u64> {
        self.check_range(n)?;
        if n == 1 {
            return Err(Error::OutOfRange {
                n,
                limit: self.limit,
            });
        }
        Ok(self.spf_unchecked(n))
    }

    /// `P^-(n)` with the infinite marker for n = 1.
    pub fn min_prime_factor(&self, n: u64) -> Result<MinFactor> {
        self.check_range(n)?;
        if n == 1 {
            Ok(MinFactor::Infinite)
        } else {
            Ok(MinFactor::Prime(self.spf_unchecked(n)))
        }
    }

    /// `P^+(n)`, the largest prime factor, with `P^+(1) = 0`.
    pub fn largest_prime_factor(&self, n: u64) -> Result<u64> {
        self.check_range(n)?;
        let mut n = n;
        let mut largest = 0;
        while n > 1 {
            let p = self.spf_unchecked(n);
            largest = p;
            while n % p == 0 {
                n /= p;
            }
        }
        Ok(largest)
    }

    /// True iff `n` is prime. Panics if `n > limit`.
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "is_prime({n}) beyond table limit {}", self.limit);
        n >= 2 && self.spf_unchecked(n) == n
    }

    /// All primes `<= limit`, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (2..=self.limit).filter(move |&n| self.spf_unchecked(n) == n)
    }

    /// Primes in `[2, x]`, ascending.
    pub fn primes_to(&self, x: u64) -> Result<impl Iterator<Item = u64> + '_> {
        if x > self.limit {
            return Err(Error::OutOfRange {
                n: x,
                limit: self.limit,
            });
        }
        Ok((2..=x).filter(move |&n| self.spf_unchecked(n) == n))
    }

    /// `pi(x)`, the number of primes `<= x`.
    pub fn prime_count(&self, x: u64) -> Result<u64> {
        if x > self.limit {
            return Err(Error::OutOfRange {
                n: x,
                limit: self.limit,
            });
        }
        if x < 2 {
            return Ok(0);
        }
        Ok((2..=x)
            .into_par_iter()
            .filter(|&n| self.spf_unchecked(n) == n)
            .count() as u64)
    }

    /// Number of primes `p <= x` with `p = residue (mod modulus)`.
    pub fn prime_count_ap(&self, x: u64, modulus: u64, residue: i64) -> Result<u64> {
        if modulus == 0 {
            return Err(Error::InvalidParameter("modulus must be >= 1".into()));
        }
        if x > self.limit {
            return Err(Error::OutOfRange {
                n: x,
                limit: self.limit,
            });
        }
        let b = residue.rem_euclid(modulus as i64) as u64;
        if x < 2 {
            return Ok(0);
        }
        Ok((2..=x)
            .into_par_iter()
            .filter(|&n| self.spf_unchecked(n) == n && n % modulus == b)
            .count() as u64)
    }

    /// Full factorization of `n`, `1 <= n <= limit`.
    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        self.check_range(n)?;
        let mut entries = Vec::new();
        let mut n = n;
        while n > 1 {
            let p = self.spf_unchecked(n);
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            entries.push((p, e));
        }
        Ok(Factorization { entries })
    }

    /// Euler's totient of `n`.
    pub fn euler_phi(&self, n: u64) -> Result<u64> {
        self.check_range(n)?;
        let mut n = n;
        let mut phi = 1u64;
        while n > 1 {
            let p = self.spf_unchecked(n);
            let mut pk = 1;
            while n % p == 0 {
                n /= p;
                pk *= p;
            }
            phi *= pk - pk / p;
        }
        Ok(phi)
    }

    /// True iff every prime factor of `n` is `<= y`.
    pub fn is_smooth(&self, n: u64, y: u64) -> Result<bool> {
        self.check_range(n)?;
        let mut n = n;
        while n > 1 {
            let p = self.spf_unchecked(n);
            if p > y {
                return Ok(false);
            }
            while n % p == 0 {
                n /= p;
            }
        }
        Ok(true)
    }

    /// Splits `n = m * cofactor` where `m` is the largest y-smooth divisor,
    /// so `P^+(m) <= y < P^-(cofactor)`.
    pub fn smooth_part(&self, n: u64, y: u64) -> Result<(u64, u64)> {
        self.check_range(n)?;
        if y < 2 {
            return Err(Error::InvalidParameter("smoothness bound y must be >= 2".into()));
        }
        let mut cofactor = n;
        let mut m = 1u64;
        while cofactor > 1 {
            let p = self.spf_unchecked(cofactor);
            if p > y {
                break;
            }
            while cofactor % p == 0 {
                cofactor /= p;
                m *= p;
            }
        }
        Ok((m, cofactor))
    }

    /// `Psi(x, y)`: the exact number of y-smooth integers in `[1, x]`.
    ///
    /// Computed by a linear scan with the recurrence
    /// `smooth(n) = spf(n) <= y && smooth(n / spf(n))`.
    pub fn psi(&self, x: u64, y: u64) -> Result<u64> {
        if x > self.limit {
            return Err(Error::OutOfRange {
                n: x,
                limit: self.limit,
            });
        }
        if x == 0 {
            return Err(Error::OutOfRange { n: 0, limit: self.limit });
        }
        if y < 2 {
            return Err(Error::InvalidParameter("smoothness bound y must be >= 2".into()));
        }
        let mut smooth = vec![false; (x + 1) as usize];
        smooth[1] = true;
        let mut count = 1u64;
        for n in 2..=x {
            let p = self.spf_unchecked(n);
            if p <= y && smooth[(n / p) as usize] {
                smooth[n as usize] = true;
                count += 1;
            }
        }
        Ok(count)
    }

    /// Writes the binary cache: magic `SPFC`, version u16 LE, limit u64 LE,
    /// then the entries for indices `2..=limit` as u32 LE.
    pub fn write_cache<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        w.write_all(CACHE_MAGIC)?;
        w.write_all(&CACHE_VERSION.to_le_bytes())?;
        w.write_all(&self.limit.to_le_bytes())?;
        let mut buf = Vec::with_capacity(1 << 16);
        for &v in &self.spf[2..] {
            buf.extend_from_slice(&v.to_le_bytes());
            if buf.len() >= (1 << 16) {
                w.write_all(&buf)?;
                buf.clear();
            }
        }
        w.write_all(&buf)?;
        w.flush()?;
        Ok(())
    }

    /// Loads a table from the binary cache, validating magic, version and
    /// total length.
    pub fn read_cache<P: AsRef<Path>>(path: P) -> Result<Self> {
        let file = File::open(path)?;
        let file_len = file.metadata()?.len();
        let mut r = BufReader::new(file);

        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != CACHE_MAGIC {
            return Err(Error::Cache("bad magic bytes".into()));
        }
        let mut vbuf = [0u8; 2];
        r.read_exact(&mut vbuf)?;
        let version = u16::from_le_bytes(vbuf);
        if version != CACHE_VERSION {
            return Err(Error::Cache(format!(
                "unsupported version {version} (expected {CACHE_VERSION})"
            )));
        }
        let mut lbuf = [0u8; 8];
        r.read_exact(&mut lbuf)?;
        let limit = u64::from_le_bytes(lbuf);
        if limit < 2 || limit > MAX_SIEVE_LIMIT {
            return Err(Error::Cache(format!("invalid limit {limit}")));
        }
        let expected = CACHE_HEADER_LEN + (limit - 1) * 4;
        if file_len != expected {
            return Err(Error::Cache(format!(
                "file length {file_len} does not match expected {expected}"
            )));
        }

        let mut spf: Vec<u32> = Vec::new();
        spf.try_reserve_exact((limit + 1) as usize)
            .map_err(|_| Error::SieveAlloc { limit })?;
        spf.resize(2, 0);
        let mut buf = vec![0u8; 1 << 16];
        let mut remaining = ((limit - 1) * 4) as usize;
        while remaining > 0 {
            let take = remaining.min(buf.len());
            r.read_exact(&mut buf[..take])?;
            for chunk in buf[..take].chunks_exact(4) {
                spf.push(u32::from_le_bytes(chunk.try_into().unwrap()));
            }
            remaining -= take;
        }
        Ok(SieveTable { limit, spf })
    }
}

fn mark_segment(chunk: &mut [u32], lo: u64, base_primes: &[u64]) {
    let hi = lo + chunk.len() as u64;
    for &p in base_primes {
        let pp = p * p;
        if pp >= hi {
            break;
        }
        let mut n = pp.max(lo.div_ceil(p) * p);
        while n < hi {
            let slot = (n - lo) as usize;
            if chunk[slot] == 0 {
                chunk[slot] = p as u32;
            }
            n += p;
        }
    }
    for (i, v) in chunk.iter_mut().enumerate() {
        if *v == 0 && lo + (i as u64) >= 2 {
            *v = (lo + i as u64) as u32;
        }
    }
}

/// Primes `<= n` by a plain in-memory sieve. Memory is O(n); meant for the
/// base primes of the segmented sieve and other small inputs.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Deterministic primality by trial division; used to validate inputs that
/// arrive without a sieve table.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Parameters for smooth-number enumeration: smoothness bound `y`, value
/// ceiling `max_value`, and a hard budget `max_count` on emitted values.
#[derive(Debug, Clone, Copy)]
pub struct SmoothEnumConfig {
    pub y: u64,
    pub max_value: u64,
    pub max_count: u64,
}

impl SmoothEnumConfig {
    pub fn new(y: u64, max_value: u64, max_count: u64) -> Result<Self> {
        if y < 2 {
            return Err(Error::InvalidParameter("smoothness bound y must be >= 2".into()));
        }
        if max_value < 1 {
            return Err(Error::InvalidParameter("max_value must be >= 1".into()));
        }
        if max_count == 0 {
            return Err(Error::InvalidParameter("max_count budget must be positive".into()));
        }
        Ok(SmoothEnumConfig { y, max_value, max_count })
    }
}

/// Ordered stream of y-smooth integers in `[1, max_value]`.
///
/// Values come out strictly increasing, starting with 1. If the budget runs
/// out while more values remain, the stream ends with a single
/// `Err(Error::SmoothBudget)` item; truncation is never silent.
pub struct SmoothEnumerator {
    primes: Vec<u64>,
    heap: BinaryHeap<Reverse<(u64, usize)>>,
    max_value: u64,
    max_count: u64,
    remaining: u64,
    emitted_one: bool,
    finished: bool,
}

/// Enumerates y-smooth integers by lazy heap expansion over prime powers:
/// each popped value pushes at most two successors, so the cost is
/// output-sensitive rather than proportional to `max_value`.
pub fn enumerate_smooth(cfg: &SmoothEnumConfig) -> Result<SmoothEnumerator> {
    SmoothEnumConfig::new(cfg.y, cfg.max_value, cfg.max_count)?;
    let primes = primes_up_to(cfg.y.min(cfg.max_value));
    let mut heap = BinaryHeap::new();
    if let Some(&p) = primes.first() {
        if p <= cfg.max_value {
            heap.push(Reverse((p, 0)));
        }
    }
    Ok(SmoothEnumerator {
        primes,
        heap,
        max_value: cfg.max_value,
        max_count: cfg.max_count,
        remaining: cfg.max_count,
        emitted_one: false,
        finished: false,
    })
}

impl Iterator for SmoothEnumerator {
    type Item = Result<u64>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.finished {
            return None;
        }
        if !self.emitted_one {
            self.emitted_one = true;
            self.remaining -= 1;
            return Some(Ok(1));
        }
        let Reverse((v, idx)) = match self.heap.peek() {
            Some(&top) => top,
            None => {
                self.finished = true;
                return None;
            }
        };
        if self.remaining == 0 {
            self.finished = true;
            return Some(Err(Error::SmoothBudget {
                max_count: self.max_count,
            }));
        }
        self.heap.pop();
        self.remaining -= 1;

        let p = self.primes[idx];
        // First child: extend by the same prime.
        if let Some(child) = v.checked_mul(p) {
            if child <= self.max_value {
                self.heap.push(Reverse((child, idx)));
            }
        }
        // Next sibling: replace the leading prime by the next one.
        if idx + 1 < self.primes.len() {
            if let Some(sib) = (v / p).checked_mul(self.primes[idx + 1]) {
                if sib <= self.max_value {
                    self.heap.push(Reverse((sib, idx + 1)));
                }
            }
        }
        Some(Ok(v))
    }
}

impl SmoothEnumerator {
    /// Collects the whole stream, failing if the budget was exceeded.
    pub fn collect_all(self) -> Result<Vec<u64>> {
        self.collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_spf(limit: u64) -> Vec<u64> {
        let mut out = vec![0, 0];
        for n in 2..=limit {
            let mut f = n;
            for d in 2..=n {
                if d * d > n {
                    break;
                }
                if n % d == 0 {
                    f = d;
                    break;
                }
            }
            out.push(f);
        }
        out
    }

    #[test]
    fn primes_up_to_ten() {
        let t = SieveTable::build(10).unwrap();
        let primes: Vec<u64> = t.primes().collect();
        assert_eq!(primes, vec![2, 3, 5, 7]);
    }

    #[test]
    fn spf_of_nine_is_three() {
        let t = SieveTable::build(10).unwrap();
        assert_eq!(t.smallest_prime_factor(9).unwrap(), 3);
    }

    #[test]
    fn prime_count_to_hundred_matches_trial_division() {
        let t = SieveTable::build(100).unwrap();
        let oracle = (2..=100u64).filter(|&n| {
            (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
        });
        assert_eq!(t.prime_count(100).unwrap(), oracle.count() as u64);
        assert_eq!(t.prime_count(100).unwrap(), 25);
    }

    #[test]
    fn table_matches_trial_division_across_segment_sizes() {
        let oracle = trial_division_spf(3000);
        for seg in [1usize, 7, 64, 1024, 1 << 20] {
            let t = SieveTable::build_with_segment(3000, seg).unwrap();
            for n in 2..=3000u64 {
                assert_eq!(t.smallest_prime_factor(n).unwrap(), oracle[n as usize], "n={n} seg={seg}");
            }
        }
    }

    #[test]
    fn limit_below_two_rejected() {
        assert!(matches!(SieveTable::build(1), Err(Error::SieveLimit { .. })));
        assert!(matches!(SieveTable::build(0), Err(Error::SieveLimit { .. })));
    }

    #[test]
    fn factorize_examples() {
        let t = SieveTable::build(100).unwrap();
        assert_eq!(t.factorize(12).unwrap().entries(), &[(2, 2), (3, 1)]);
        assert_eq!(t.factorize(1).unwrap().entries(), &[]);
        assert_eq!(t.factorize(97).unwrap().entries(), &[(97, 1)]);
    }

    #[test]
    fn factorize_out_of_range() {
        let t = SieveTable::build(100).unwrap();
        assert!(matches!(t.factorize(0), Err(Error::OutOfRange { .. })));
        assert!(matches!(t.factorize(101), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn euler_phi_examples() {
        let t = SieveTable::build(200).unwrap();
        assert_eq!(t.euler_phi(1).unwrap(), 1);
        assert_eq!(t.euler_phi(12).unwrap(), 4);
        for q in [2u64, 3, 5, 7, 11, 13, 97, 199] {
            assert_eq!(t.euler_phi(q).unwrap(), q - 1);
        }
    }

    #[test]
    fn smooth_part_examples() {
        let t = SieveTable::build(100).unwrap();
        assert_eq!(t.smooth_part(14, 3).unwrap(), (2, 7));
        assert_eq!(t.smooth_part(8, 3).unwrap(), (8, 1));
        assert_eq!(t.smooth_part(15, 5).unwrap(), (15, 1));
    }

    #[test]
    fn min_factor_sentinel() {
        let t = SieveTable::build(10).unwrap();
        let inf = t.min_prime_factor(1).unwrap();
        assert_eq!(inf, MinFactor::Infinite);
        assert!(inf.exceeds(u64::MAX - 1));
        assert!(inf > MinFactor::Prime(u64::MAX));
        assert_eq!(t.min_prime_factor(9).unwrap(), MinFactor::Prime(3));
    }

    #[test]
    fn largest_prime_factor_convention() {
        let t = SieveTable::build(100).unwrap();
        assert_eq!(t.largest_prime_factor(1).unwrap(), 0);
        assert_eq!(t.largest_prime_factor(84).unwrap(), 7);
    }

    #[test]
    fn enumerate_smooth_examples() {
        let cfg = SmoothEnumConfig::new(3, 10, 1000).unwrap();
        let vals = enumerate_smooth(&cfg).unwrap().collect_all().unwrap();
        assert_eq!(vals, vec![1, 2, 3, 4, 6, 8, 9]);

        let cfg = SmoothEnumConfig::new(2, 20, 1000).unwrap();
        let vals = enumerate_smooth(&cfg).unwrap().collect_all().unwrap();
        assert_eq!(vals, vec![1, 2, 4, 8, 16]);
    }

    #[test]
    fn enumerate_smooth_count_five_smooth_to_hundred() {
        // Independent oracle: direct enumeration of 2^a 3^b 5^c <= 100.
        let mut oracle = Vec::new();
        let mut a = 1u64;
        while a <= 100 {
            let mut b = a;
            while b <= 100 {
                let mut c = b;
                while c <= 100 {
                    oracle.push(c);
                    c *= 5;
                }
                b *= 3;
            }
            a *= 2;
        }
        oracle.sort_unstable();
        assert_eq!(oracle.len(), 34);

        let cfg = SmoothEnumConfig::new(5, 100, 1000).unwrap();
        let vals = enumerate_smooth(&cfg).unwrap().collect_all().unwrap();
        assert_eq!(vals, oracle);
    }

    #[test]
    fn enumerate_smooth_budget_signal() {
        let cfg = SmoothEnumConfig::new(3, 1000, 5).unwrap();
        let items: Vec<_> = enumerate_smooth(&cfg).unwrap().collect();
        assert_eq!(items.len(), 6);
        for item in &items[..5] {
            assert!(item.is_ok());
        }
        assert!(matches!(items[5], Err(Error::SmoothBudget { max_count: 5 })));

        // Exactly exhausting the stream is not a truncation.
        let cfg = SmoothEnumConfig::new(3, 10, 7).unwrap();
        assert_eq!(enumerate_smooth(&cfg).unwrap().collect_all().unwrap().len(), 7);
    }

    #[test]
    fn psi_examples() {
        let t = SieveTable::build(200).unwrap();
        assert_eq!(t.psi(10, 3).unwrap(), 7);
        assert_eq!(t.psi(200, 200).unwrap(), 200);
        assert_eq!(t.psi(100, 5).unwrap(), 34);
    }

    #[test]
    fn prime_count_ap_examples() {
        let t = SieveTable::build(20).unwrap();
        // Oracle by direct enumeration: primes 3, 7, 11, 19 are 3 mod 4.
        assert_eq!(t.prime_count_ap(20, 4, 3).unwrap(), 4);
        assert_eq!(t.prime_count_ap(20, 1, 0).unwrap(), 8);
        assert_eq!(t.prime_count_ap(20, 2, 0).unwrap(), 1);
        // Negative residues are normalized: -1 mod 4 = 3 mod 4.
        assert_eq!(t.prime_count_ap(20, 4, -1).unwrap(), 4);
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("spf.bin");
        let t = SieveTable::build(5000).unwrap();
        t.write_cache(&path).unwrap();
        let loaded = SieveTable::read_cache(&path).unwrap();
        assert_eq!(loaded.limit(), t.limit());
        assert_eq!(loaded.spf[2..], t.spf[2..]);
    }

    #[test]
    fn cache_rejects_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("spf.bin");
        let t = SieveTable::build(100).unwrap();
        t.write_cache(&path).unwrap();

        let good = std::fs::read(&path).unwrap();

        let mut bad_magic = good.clone();
        bad_magic[0] = b'X';
        std::fs::write(&path, &bad_magic).unwrap();
        assert!(matches!(SieveTable::read_cache(&path), Err(Error::Cache(_))));

        let mut bad_version = good.clone();
        bad_version[4] = 99;
        std::fs::write(&path, &bad_version).unwrap();
        assert!(matches!(SieveTable::read_cache(&path), Err(Error::Cache(_))));

        let mut truncated = good.clone();
        truncated.truncate(good.len() - 4);
        std::fs::write(&path, &truncated).unwrap();
        assert!(matches!(SieveTable::read_cache(&path), Err(Error::Cache(_))));
    }

    #[test]
    fn is_prime_u64_small() {
        let t = SieveTable::build(500).unwrap();
        for n in 0..=500u64 {
            let expected = n >= 2 && t.is_prime(n);
            assert_eq!(is_prime_u64(n), expected, "n={n}");
        }
    }
}

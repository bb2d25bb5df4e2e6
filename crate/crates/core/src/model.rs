//! The probabilistic model of prime-factor exponents.
//!
//! For a fixed nonzero shift `a`, each prime `q` gets an independent random
//! exponent `W_q`: identically 0 when `q` divides `a`, and otherwise
//!
//! ```text
//! P(W_q = 0) = 1 - 1/(q-1),      P(W_q = v) = q^{-v}   (v >= 1).
//! ```
//!
//! The companion integer-side model `X_p` has `P(X_p = k) = p^{-k}(1 - 1/p)`.
//! This module provides both single-coordinate laws, the joint weights
//! `g_y(m)` / `h_y(m)` of realizing exactly the exponent pattern of a smooth
//! integer `m`, the `H` functionals driving Poisson parameters, exact
//! distributions of the prime-divisor counts, a seeded sampler, and the
//! Dickman function.

use crate::error::{Error, Result};
use crate::pmf::Weight;
use crate::sieve::{is_prime_u64, SieveTable};
use num::integer::gcd;
use num::rational::BigRational;
use num::{One, Zero};
use serde::{Deserialize, Serialize};

mod dickman;
mod rdist;
mod sample;

pub use dickman::dickman_rho;
pub use rdist::{r_distribution, r_distribution_f64};
pub use sample::sample_w_vector;

/// Exact rational weight.
pub type Ratio = BigRational;

/// The model's shift and smoothness bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftConfig {
    a: i64,
    y: u64,
}

impl ShiftConfig {
    pub fn new(a: i64, y: u64) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidParameter("shift a must be nonzero".into()));
        }
        if y < 2 {
            return Err(Error::InvalidParameter("model bound y must be >= 2".into()));
        }
        Ok(ShiftConfig { a, y })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn y(&self) -> u64 {
        self.y
    }
}

/// Counting mode for a prime set: distinct prime divisors or prime divisors
/// with multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Omega,
    BigOmega,
}

/// Finite ordered set of primes together with its counting mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSet {
    primes: Vec<u64>,
    mode: Mode,
}

impl PrimeSet {
    /// Sorts, deduplicates, and validates primality of every element.
    pub fn new(primes: impl IntoIterator<Item = u64>, mode: Mode) -> Result<Self> {
        let mut primes: Vec<u64> = primes.into_iter().collect();
        primes.sort_unstable();
        primes.dedup();
        if primes.is_empty() {
            return Err(Error::EmptyPrimeSet);
        }
        for &q in &primes {
            if !is_prime_u64(q) {
                return Err(Error::NotPrime { q });
            }
        }
        Ok(PrimeSet { primes, mode })
    }

    /// All primes in the half-open interval `(lo, hi]`.
    pub fn range(lo: u64, hi: u64, mode: Mode, table: &SieveTable) -> Result<Self> {
        let primes: Vec<u64> = table.primes_to(hi)?.filter(|&p| p > lo).collect();
        Self::new(primes, mode)
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn max_prime(&self) -> u64 {
        *self.primes.last().expect("nonempty by construction")
    }

    /// `H_1 = sum 1/(q-1)`, the Poisson parameter for distinct-divisor counts.
    pub fn h1(&self) -> f64 {
        self.primes.iter().map(|&q| 1.0 / (q - 1) as f64).sum()
    }

    /// `H_1' = sum q/(q-1)^2`, the Poisson parameter for counts with
    /// multiplicity.
    pub fn h1_prime(&self) -> f64 {
        self.primes
            .iter()
            .map(|&q| q as f64 / ((q - 1) as f64 * (q - 1) as f64))
            .sum()
    }

    /// `H_2 = sum 1/q^2`.
    pub fn h2(&self) -> f64 {
        self.primes.iter().map(|&q| 1.0 / (q as f64 * q as f64)).sum()
    }

    /// `H = sum 1/q`.
    pub fn h_plain(&self) -> f64 {
        self.primes.iter().map(|&q| 1.0 / q as f64).sum()
    }

    /// The Poisson parameter matching the counting mode.
    pub fn lambda(&self) -> f64 {
        match self.mode {
            Mode::Omega => self.h1(),
            Mode::BigOmega => self.h1_prime(),
        }
    }
}

/// `P(W_q = v)` for the shifted-prime model, exact.
pub fn w_pmf(q: u64, v: u32, a: i64) -> Result<Ratio> {
    if a == 0 {
        return Err(Error::InvalidParameter("shift a must be nonzero".into()));
    }
    if !is_prime_u64(q) {
        return Err(Error::NotPrime { q });
    }
    if a.unsigned_abs() % q == 0 {
        return Ok(if v == 0 { Ratio::one() } else { Ratio::zero() });
    }
    if v == 0 {
        // 1 - 1/(q-1); zero exactly when q = 2.
        Ok(Ratio::from_u64_ratio(q - 2, q - 1))
    } else {
        Ok(Ratio::recip_prime_power(q, v))
    }
}

/// `P(X_p = k) = p^{-k}(1 - 1/p)` for the integer-side model, exact.
pub fn x_pmf(p: u64, k: u32) -> Result<Ratio> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime { q: p });
    }
    // (p-1) / p^{k+1}
    Ok(Ratio::from_u64_ratio(p - 1, 1) * Ratio::recip_prime_power(p, k + 1))
}

fn require_smooth(m: u64, y: u64, table: &SieveTable) -> Result<()> {
    if !table.is_smooth(m, y)? {
        return Err(Error::NotSmooth { m, y });
    }
    Ok(())
}

/// Joint probability that the W-vector realizes exactly the exponent pattern
/// of the y-smooth integer `m`, by the closed form
///
/// ```text
/// g_y(m) = (1/m) * prod_{q <= y, q not dividing a*m} (1 - 1/(q-1)),
/// ```
///
/// which is 0 when gcd(a, m) > 1 or when a and m are both odd.
pub fn g_weight(m: u64, cfg: &ShiftConfig, table: &SieveTable) -> Result<Ratio> {
    require_smooth(m, cfg.y, table)?;
    if cfg.y > table.limit() {
        return Err(Error::TableTooSmall {
            limit: table.limit(),
            needed: cfg.y,
        });
    }
    let abs_a = cfg.a.unsigned_abs();
    if gcd(abs_a, m) > 1 {
        return Ok(Ratio::zero());
    }
    if abs_a % 2 == 1 && m % 2 == 1 {
        return Ok(Ratio::zero());
    }
    let mut out = Ratio::from_u64_ratio(1, m);
    for q in table.primes_to(cfg.y)?.skip(1) {
        if abs_a % q != 0 && m % q != 0 {
            out *= Ratio::from_u64_ratio(q - 2, q - 1);
        }
    }
    Ok(out)
}

/// The same weight computed by the independent route: the product of
/// `w_pmf(q, v_q(m), a)` over every prime `q <= y`. Kept separate from
/// [`g_weight`] so the two can be compared exactly.
pub fn g_weight_product(m: u64, cfg: &ShiftConfig, table: &SieveTable) -> Result<Ratio> {
    require_smooth(m, cfg.y, table)?;
    if cfg.y > table.limit() {
        return Err(Error::TableTooSmall {
            limit: table.limit(),
            needed: cfg.y,
        });
    }
    let factorization = table.factorize(m)?;
    let mut out = Ratio::one();
    for q in table.primes_to(cfg.y)? {
        out *= w_pmf(q, factorization.exponent_of(q), cfg.a)?;
        if out.is_zero() {
            break;
        }
    }
    Ok(out)
}

/// Joint probability that the X-vector realizes exactly the exponent
/// pattern of the y-smooth integer `m`:
/// `h_y(m) = (1/m) * prod_{p <= y} (1 - 1/p)`, exact.
pub fn h_weight(m: u64, y: u64, table: &SieveTable) -> Result<Ratio> {
    require_smooth(m, y, table)?;
    if y > table.limit() {
        return Err(Error::TableTooSmall {
            limit: table.limit(),
            needed: y,
        });
    }
    let mut out = Ratio::from_u64_ratio(1, m);
    for p in table.primes_to(y)? {
        out *= Ratio::from_u64_ratio(p - 1, p);
    }
    Ok(out)
}

/// Float evaluator for `g_y(m)` shared across a whole experiment.
///
/// The product over primes not dividing `a*m` is folded into one base
/// constant over odd primes; each query then only factorizes `m` and applies
/// the per-divisor corrections, so evaluating millions of weights stays
/// cheap.
pub struct GyWeights<'t> {
    table: &'t SieveTable,
    a: i64,
    y: u64,
    base: f64,
}

impl<'t> GyWeights<'t> {
    pub fn new(cfg: &ShiftConfig, table: &'t SieveTable) -> Result<Self> {
        if cfg.y > table.limit() {
            return Err(Error::TableTooSmall {
                limit: table.limit(),
                needed: cfg.y,
            });
        }
        let abs_a = cfg.a.unsigned_abs();
        let mut base = 1.0f64;
        for q in table.primes_to(cfg.y)?.skip(1) {
            if abs_a % q != 0 {
                base *= (q - 2) as f64 / (q - 1) as f64;
            }
        }
        Ok(GyWeights {
            table,
            a: cfg.a,
            y: cfg.y,
            base,
        })
    }

    /// `g_y(m)` as a float; errors if `m` is not y-smooth.
    pub fn weight(&self, m: u64) -> Result<f64> {
        let abs_a = self.a.unsigned_abs();
        if gcd(abs_a, m) > 1 {
            require_smooth(m, self.y, self.table)?;
            return Ok(0.0);
        }
        if abs_a % 2 == 1 && m % 2 == 1 {
            require_smooth(m, self.y, self.table)?;
            return Ok(0.0);
        }
        // Walk the factorization once: validates smoothness and collects the
        // corrections undoing the base factors at primes dividing m.
        let mut rest = m;
        let mut out = self.base / m as f64;
        while rest > 1 {
            let q = self.table.smallest_prime_factor(rest)?;
            if q > self.y {
                return Err(Error::NotSmooth { m, y: self.y });
            }
            if q > 2 {
                out *= (q - 1) as f64 / (q - 2) as f64;
            }
            while rest % q == 0 {
                rest /= q;
            }
        }
        Ok(out)
    }
}

/// Float evaluator for `h_y(m) = base / m` with `base = prod_{p<=y}(1-1/p)`.
pub struct HyWeights<'t> {
    table: &'t SieveTable,
    y: u64,
    base: f64,
}

impl<'t> HyWeights<'t> {
    pub fn new(y: u64, table: &'t SieveTable) -> Result<Self> {
        if y < 2 {
            return Err(Error::InvalidParameter("model bound y must be >= 2".into()));
        }
        if y > table.limit() {
            return Err(Error::TableTooSmall {
                limit: table.limit(),
                needed: y,
            });
        }
        let mut base = 1.0f64;
        for p in table.primes_to(y)? {
            base *= (p - 1) as f64 / p as f64;
        }
        Ok(HyWeights { table, y, base })
    }

    pub fn weight(&self, m: u64) -> Result<f64> {
        require_smooth(m, self.y, self.table)?;
        Ok(self.base / m as f64)
    }
}

/// Poisson pmf `e^{-lambda} lambda^k / k!`, via the stable multiplicative
/// recurrence.
pub fn poisson_pmf(lambda: f64, k: u32) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "poisson parameter must be positive, got {lambda}"
        )));
    }
    let mut p = (-lambda).exp();
    for i in 1..=k {
        p *= lambda / i as f64;
    }
    Ok(p)
}

/// Smallest cap `k` with `P(Poisson(lambda) > k) < eps`, certified by the
/// geometric tail bound `tail(k) <= pmf(k+1) / (1 - lambda/(k+2))`.
pub fn poisson_tail_cap(lambda: f64, eps: f64) -> Result<u32> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "poisson parameter must be positive, got {lambda}"
        )));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter("eps must be in (0, 1)".into()));
    }
    let mut k = 0u32;
    let mut p = (-lambda).exp();
    loop {
        let next = p * lambda / (k + 1) as f64;
        if (k + 2) as f64 > lambda {
            let bound = next / (1.0 - lambda / (k + 2) as f64);
            if bound < eps {
                return Ok(k);
            }
        }
        p = next;
        k += 1;
        if k > 1_000_000 {
            return Err(Error::InvalidParameter(
                "poisson tail cap search did not converge".into(),
            ));
        }
    }
}

//! Probabilistic models of the prime factors of shifted primes `p + a`,
//! verified against exact desk-scale computation.
//!
//! The crate splits into five layers:
//!
//! - [`sieve`]: smallest-prime-factor table, factorization, smooth numbers,
//!   prime counting in progressions.
//! - [`model`]: the independent-exponent models `W_q` (shifted primes) and
//!   `X_p` (integers), their joint weights, Poisson parameters, exact count
//!   distributions, samplers, and Dickman's function.
//! - [`tv`]: exact total-variation distances between model and empirical
//!   exponent vectors, via the smooth-part histogram.
//! - [`poisson`]: joint distributions of divisor counts over disjoint prime
//!   sets, their Poisson product approximations, and generating-function
//!   identity checks.
//! - [`transfer`]: integer-to-shifted-prime transference experiments, the
//!   normalized divisor-count fluctuation statistic, and progression
//!   deviation scans.

pub mod error;
pub mod model;
pub mod pmf;
pub mod poisson;
pub mod sieve;
pub mod transfer;
pub mod tv;

pub use error::{Error, Result};
pub use model::{Mode, PrimeSet, Ratio, ShiftConfig};
pub use pmf::{Pmf, Weight};
pub use sieve::{Factorization, MinFactor, SieveTable, SmoothEnumConfig};

//! Transference between the anatomy of random integers and of random
//! shifted primes: event-probability gaps over arbitrary regions, the
//! normalized divisor-count fluctuation statistic and its extremal profile
//! over a geometric grid, deviation scans of primes in progressions with
//! smooth moduli, and divisor-count moments of shifted primes.

use crate::error::{Error, Result};
use crate::poisson::{
    empirical_joint_integers, empirical_joint_shifted, EmpiricalJoint, PrimePartition,
};
use crate::sieve::SieveTable;
use crate::tv::bound_curves;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::sync::Arc;

/// Decidable membership test for tuples in `N_0^m`.
#[derive(Clone)]
pub enum RegionSpec {
    /// Per-coordinate inclusive ranges; `None` upper bound means unbounded.
    Rectangle(Vec<(u32, Option<u32>)>),
    /// Single-coordinate threshold.
    Threshold {
        coord: usize,
        at_least: bool,
        bound: u32,
    },
    /// Explicit finite tuple set.
    Explicit(BTreeSet<Vec<u32>>),
    /// Caller-supplied membership test.
    Predicate(Arc<dyn Fn(&[u32]) -> bool + Send + Sync>),
}

impl std::fmt::Debug for RegionSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RegionSpec::Rectangle(r) => f.debug_tuple("Rectangle").field(r).finish(),
            RegionSpec::Threshold {
                coord,
                at_least,
                bound,
            } => f
                .debug_struct("Threshold")
                .field("coord", coord)
                .field("at_least", at_least)
                .field("bound", bound)
                .finish(),
            RegionSpec::Explicit(s) => f.debug_tuple("Explicit").field(s).finish(),
            RegionSpec::Predicate(_) => f.write_str("Predicate(..)"),
        }
    }
}

impl RegionSpec {
    /// The whole space, as an unbounded rectangle.
    pub fn everything(dim: usize) -> Self {
        RegionSpec::Rectangle(vec![(0, None); dim])
    }

    pub fn empty() -> Self {
        RegionSpec::Explicit(BTreeSet::new())
    }

    pub fn contains(&self, tuple: &[u32]) -> bool {
        match self {
            RegionSpec::Rectangle(ranges) => {
                ranges.len() == tuple.len()
                    && tuple.iter().zip(ranges).all(|(&v, &(lo, hi))| {
                        v >= lo && hi.map_or(true, |h| v <= h)
                    })
            }
            RegionSpec::Threshold {
                coord,
                at_least,
                bound,
            } => tuple.get(*coord).is_some_and(|&v| {
                if *at_least {
                    v >= *bound
                } else {
                    v <= *bound
                }
            }),
            RegionSpec::Explicit(set) => set.contains(tuple),
            RegionSpec::Predicate(p) => p(tuple),
        }
    }
}

/// Event-probability gap between the integer and shifted-prime joints, with
/// the transference bound. Counts are retained so the gap and its complement
/// can be compared exactly in integer arithmetic.
#[derive(Debug, Clone)]
pub struct TransferenceReport {
    pub p_int: f64,
    pub p_shift: f64,
    pub diff: f64,
    pub bound: f64,
    pub int_count: u64,
    pub shift_count: u64,
    pub int_total: u64,
    pub shift_total: u64,
}

pub fn region_count(joint: &EmpiricalJoint, region: &RegionSpec) -> u64 {
    joint
        .counts()
        .iter()
        .filter(|(t, _)| region.contains(t))
        .map(|(_, &c)| c)
        .sum()
}

/// The full transference pipeline at `(x, y, a)`: both empirical joints, the
/// gap over `region`, and the bound
/// `sum_j H_2(T_j)/(1 + sqrt(H_1(T_j))) + e^{-alpha u log u} + (log x)^{-A}`.
pub fn transference_report(
    x: u64,
    y: u64,
    a: i64,
    partition: &PrimePartition,
    region: &RegionSpec,
    table: &SieveTable,
    alpha: f64,
    log_power: f64,
) -> Result<TransferenceReport> {
    let emp_int = empirical_joint_integers(x, partition, table)?;
    let emp_shift = empirical_joint_shifted(x, a, partition, table)?;
    transference_from_joints(&emp_int, &emp_shift, x, y, partition, region, alpha, log_power)
}

/// Same report from precomputed joints, for sweeping many regions without
/// re-scanning the integers and primes.
#[allow(clippy::too_many_arguments)]
pub fn transference_from_joints(
    emp_int: &EmpiricalJoint,
    emp_shift: &EmpiricalJoint,
    x: u64,
    y: u64,
    partition: &PrimePartition,
    region: &RegionSpec,
    alpha: f64,
    log_power: f64,
) -> Result<TransferenceReport> {
    if partition.max_prime() > y {
        return Err(Error::InvalidParameter(
            "partition primes must lie in [2, y]".into(),
        ));
    }
    let int_count = region_count(emp_int, region);
    let shift_count = region_count(emp_shift, region);
    let (ni, ns) = (emp_int.total(), emp_shift.total());
    // |c_i/N_i - c_s/N_s| through the exact integer cross-difference.
    let cross = (int_count as u128 * ns as u128).abs_diff(shift_count as u128 * ni as u128);
    let diff = cross as f64 / (ni as f64 * ns as f64);
    let u = (x as f64).ln() / (y as f64).ln();
    let (bound_alpha, _, bound_log) = bound_curves(u, alpha, x as f64, log_power)?;
    let h_term: f64 = partition
        .sets()
        .iter()
        .map(|s| s.h2() / (1.0 + s.h1().sqrt()))
        .sum();
    Ok(TransferenceReport {
        p_int: int_count as f64 / ni as f64,
        p_shift: shift_count as f64 / ns as f64,
        diff,
        bound: h_term + bound_alpha + bound_log,
        int_count,
        shift_count,
        int_total: ni,
        shift_total: ns,
    })
}

/// Smallest `t` for which the fluctuation statistic is defined:
/// `t > e^(e^e)`, the point where the fourth iterated logarithm turns
/// positive.
pub fn lambda_min_t() -> f64 {
    std::f64::consts::E.exp().exp()
}

/// The normalized fluctuation of the divisor count below `t`:
/// `(omega(n, [2, t]) - loglog t) / sqrt(2 loglog t * log_4 t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaValue {
    pub value: f64,
    /// Count of distinct prime divisors `<= t` that produced the value.
    pub omega: u32,
    /// Set when `log_4 t < 1`: the statistic is well-defined but `t` is far
    /// below the scale where its extremal behavior stabilizes.
    pub shallow_domain: bool,
}

pub fn lambda_statistic(n: u64, t: f64, table: &SieveTable) -> Result<LambdaValue> {
    let min_t = lambda_min_t();
    if !(t > min_t) {
        return Err(Error::LambdaDomain { t, min_t });
    }
    let log2 = t.ln().ln();
    let log4 = log2.ln().ln();
    let omega = table
        .factorize(n)?
        .entries()
        .iter()
        .filter(|&&(q, _)| (q as f64) <= t)
        .count() as u32;
    Ok(LambdaValue {
        value: (omega as f64 - log2) / (2.0 * log2 * log4).sqrt(),
        omega,
        shallow_domain: log4 < 1.0,
    })
}

/// Lower cutoff for the profile grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Xi {
    /// `xi(x) = log x`, the maximal admissible cutoff.
    LogX,
    Fixed(f64),
}

impl Xi {
    fn value(&self, x: u64) -> f64 {
        match self {
            Xi::LogX => (x as f64).ln(),
            Xi::Fixed(v) => *v,
        }
    }
}

/// Grid specification for extremal profiles of the fluctuation statistic.
#[derive(Debug, Clone, Copy)]
pub struct LilConfig {
    pub x: u64,
    pub a: i64,
    pub xi: Xi,
    /// Geometric grid ratio, > 1.
    pub ratio: f64,
}

impl LilConfig {
    pub fn new(x: u64, a: i64, xi: Xi, ratio: f64) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidParameter("shift a must be nonzero".into()));
        }
        if !(ratio > 1.0) {
            return Err(Error::InvalidParameter("grid ratio must exceed 1".into()));
        }
        if let Xi::Fixed(v) = xi {
            if !(v <= (x as f64).ln()) {
                return Err(Error::InvalidParameter(
                    "cutoff xi(x) must not exceed log x".into(),
                ));
            }
        }
        Ok(LilConfig { x, a, xi, ratio })
    }

    /// Grid points in `(max(xi(x), e^(e^e)), x]`, anchored at `x` and
    /// descending geometrically so the endpoint `t = x` is always included.
    pub fn grid(&self) -> Result<Vec<f64>> {
        let lo = self.xi.value(self.x).max(lambda_min_t());
        let mut ts = Vec::new();
        let mut t = self.x as f64;
        while t > lo {
            ts.push(t);
            t /= self.ratio;
        }
        if ts.is_empty() {
            return Err(Error::EmptyGrid);
        }
        ts.reverse();
        Ok(ts)
    }
}

/// Extremes of the fluctuation statistic over the grid.
#[derive(Debug, Clone, Copy)]
pub struct LilProfile {
    pub inf: f64,
    pub sup: f64,
    pub argmin_t: f64,
    pub argmax_t: f64,
    pub shallow_domain: bool,
}

pub fn lil_profile(n: u64, cfg: &LilConfig, table: &SieveTable) -> Result<LilProfile> {
    let grid = cfg.grid()?;
    let mut out: Option<LilProfile> = None;
    let mut shallow = false;
    for &t in &grid {
        let lv = lambda_statistic(n, t, table)?;
        shallow |= lv.shallow_domain;
        out = Some(match out {
            None => LilProfile {
                inf: lv.value,
                sup: lv.value,
                argmin_t: t,
                argmax_t: t,
                shallow_domain: shallow,
            },
            Some(mut p) => {
                if lv.value < p.inf {
                    p.inf = lv.value;
                    p.argmin_t = t;
                }
                if lv.value > p.sup {
                    p.sup = lv.value;
                    p.argmax_t = t;
                }
                p.shallow_domain = shallow;
                p
            }
        });
    }
    out.ok_or(Error::EmptyGrid)
}

/// Configuration of the progression-deviation scan: moduli up to
/// `modulus_bound`, restricted to `x^delta`-smooth values coprime to the
/// shift. When `theta` and `log_power` are set, each modulus is also tested
/// for membership in the large-deviation set driven by the dyadic inner sum
/// over cofactors `d <= x^theta / m`.
#[derive(Debug, Clone, Copy)]
pub struct ZScanConfig {
    pub x: u64,
    pub modulus_bound: u64,
    pub delta: f64,
    pub a: i64,
    pub theta: Option<f64>,
    pub log_power: Option<f64>,
}

impl ZScanConfig {
    pub fn new(
        x: u64,
        modulus_bound: u64,
        delta: f64,
        a: i64,
        theta: Option<f64>,
        log_power: Option<f64>,
    ) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidParameter("shift a must be nonzero".into()));
        }
        if modulus_bound < 1 {
            return Err(Error::InvalidParameter("modulus bound must be >= 1".into()));
        }
        if modulus_bound > x {
            return Err(Error::InvalidParameter(
                "modulus bound must not exceed x".into(),
            ));
        }
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::InvalidParameter(
                "smoothness exponent delta must lie in (0, 1]".into(),
            ));
        }
        Ok(ZScanConfig {
            x,
            modulus_bound,
            delta,
            a,
            theta,
            log_power,
        })
    }
}

#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct ModulusDeviation {
    pub modulus: u64,
    pub deviation: f64,
    pub in_e: bool,
}

#[derive(Debug, Clone)]
pub struct ZScanReport {
    pub deviation_sum: f64,
    pub per_modulus: Vec<ModulusDeviation>,
    pub members_of_e: Vec<u64>,
}

/// Scans `|pi(x; m, -a) - pi(x)/phi(m)|` over admissible moduli.
pub fn z_scan(cfg: &ZScanConfig, table: &SieveTable) -> Result<ZScanReport> {
    if table.limit() < cfg.x {
        return Err(Error::TableTooSmall {
            limit: table.limit(),
            needed: cfg.x,
        });
    }
    let x = cfg.x;
    let abs_a = cfg.a.unsigned_abs();
    let smooth_bound = ((x as f64).powf(cfg.delta).floor() as u64).max(2);
    let primes: Vec<u64> = table.primes_to(x)?.collect();
    let pi_x = primes.len() as f64;
    let theta_bound = cfg
        .theta
        .map(|theta| (x as f64).powf(theta).floor() as u64);

    let ap_count = |modulus: u64, residue: i64| -> u64 {
        let b = residue.rem_euclid(modulus as i64) as u64;
        primes.par_iter().filter(|&&p| p % modulus == b).count() as u64
    };
    let deviation = |modulus: u64| -> Result<f64> {
        let phi = table.euler_phi(modulus)?;
        Ok((ap_count(modulus, -cfg.a) as f64 - pi_x / phi as f64).abs())
    };

    let mut per_modulus = Vec::new();
    let mut members = Vec::new();
    let mut sum = crate::tv::Kahan::default();
    for m in 1..=cfg.modulus_bound {
        if num::integer::gcd(m, abs_a) > 1 || !table.is_smooth(m, smooth_bound)? {
            continue;
        }
        let dev = deviation(m)?;
        sum.add(dev);

        let mut in_e = false;
        if let (Some(bound_m), Some(log_power)) = (theta_bound, cfg.log_power) {
            if m <= bound_m {
                let phi_m = table.euler_phi(m)? as f64;
                let threshold = pi_x / (phi_m * (x as f64).ln().powf(log_power));
                let mut inner = 0.0;
                for d in 1..=bound_m / m {
                    if num::integer::gcd(d, abs_a) > 1 || !table.is_smooth(d, smooth_bound)? {
                        continue;
                    }
                    inner += deviation(m * d)?;
                    if inner >= threshold {
                        break;
                    }
                }
                in_e = inner >= threshold;
            }
        }
        if in_e {
            members.push(m);
        }
        per_modulus.push(ModulusDeviation {
            modulus: m,
            deviation: dev,
            in_e,
        });
    }
    Ok(ZScanReport {
        deviation_sum: sum.value(),
        per_modulus,
        members_of_e: members,
    })
}

/// Exact mean and variance of the number of distinct prime factors of
/// `p + a` over primes `p in (|a|+1, x]`.
pub fn omega_moments_shifted(x: u64, a: i64, table: &SieveTable) -> Result<(f64, f64)> {
    if a == 0 {
        return Err(Error::InvalidParameter("shift a must be nonzero".into()));
    }
    let abs_a = a.unsigned_abs();
    if table.limit() < x + abs_a {
        return Err(Error::TableTooSmall {
            limit: table.limit(),
            needed: x + abs_a,
        });
    }
    let (count, sum, sum_sq) = (abs_a + 2..=x)
        .into_par_iter()
        .filter(|&p| table.is_prime(p))
        .map(|p| {
            let shifted = (p as i64 + a) as u64;
            let w = table
                .factorize(shifted)
                .expect("within table")
                .num_distinct() as u64;
            (1u64, w, w * w)
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    if count == 0 {
        return Err(Error::InvalidParameter(format!("no primes in (|a|+1, {x}]")));
    }
    let mean = sum as f64 / count as f64;
    let variance = sum_sq as f64 / count as f64 - mean * mean;
    Ok((mean, variance))
}

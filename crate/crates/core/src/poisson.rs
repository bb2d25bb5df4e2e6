//! Poisson approximation of divisor counts over disjoint prime sets.
//!
//! For disjoint sets `T_1, ..., T_m` with per-set counting modes, the joint
//! law of `(f_1(p+a), ..., f_m(p+a))` over primes `p <= x` is compared with
//! the product of independent Poisson laws whose parameters are the matching
//! `H` functionals. Empirical joints keep their integer counts so that event
//! probabilities, complements, and distances can be compared exactly.

use crate::error::{Error, Result};
use crate::model::{
    poisson_pmf, poisson_tail_cap, r_distribution_f64, Mode, PrimeSet,
};
use crate::sieve::SieveTable;
use crate::tv::{bound_curves, DistanceReport, TvDistance};
use num::complex::Complex64;
use num::Zero;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};

/// Disjoint nonempty prime sets, each carrying its own counting mode.
#[derive(Debug, Clone)]
pub struct PrimePartition {
    sets: Vec<PrimeSet>,
}

impl PrimePartition {
    pub fn new(sets: Vec<PrimeSet>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::EmptyPrimeSet);
        }
        let mut seen = std::collections::HashSet::new();
        for set in &sets {
            for &q in set.primes() {
                if !seen.insert(q) {
                    return Err(Error::OverlappingSets { q });
                }
            }
        }
        Ok(PrimePartition { sets })
    }

    pub fn sets(&self) -> &[PrimeSet] {
        &self.sets
    }

    pub fn dimension(&self) -> usize {
        self.sets.len()
    }

    pub fn max_prime(&self) -> u64 {
        self.sets.iter().map(|s| s.max_prime()).max().unwrap_or(0)
    }

    fn index_of(&self) -> HashMap<u64, usize> {
        let mut map = HashMap::new();
        for (i, set) in self.sets.iter().enumerate() {
            for &q in set.primes() {
                map.insert(q, i);
            }
        }
        map
    }
}

/// Sparse joint law over `N_0^m` tuples with float weights; tuples absent
/// from the map carry zero weight.
#[derive(Debug, Clone)]
pub struct JointDist {
    dim: usize,
    weights: BTreeMap<Vec<u32>, f64>,
    mass_deficit: f64,
}

impl JointDist {
    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn weights(&self) -> &BTreeMap<Vec<u32>, f64> {
        &self.weights
    }

    pub fn mass_deficit(&self) -> f64 {
        self.mass_deficit
    }

    pub fn weight_of(&self, tuple: &[u32]) -> f64 {
        self.weights.get(tuple).copied().unwrap_or(0.0)
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.values().sum()
    }

    /// JSON lines, one record per tuple: `{"t":[...],"w":...}`.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for (t, w) in &self.weights {
            out.push_str(&serde_json::json!({ "t": t, "w": w }).to_string());
            out.push('\n');
        }
        out
    }
}

/// Empirical joint law stored as exact integer counts over a denominator.
#[derive(Debug, Clone)]
pub struct EmpiricalJoint {
    dim: usize,
    counts: BTreeMap<Vec<u32>, u64>,
    total: u64,
}

impl EmpiricalJoint {
    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn counts(&self) -> &BTreeMap<Vec<u32>, u64> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count_of(&self, tuple: &[u32]) -> u64 {
        self.counts.get(tuple).copied().unwrap_or(0)
    }

    pub fn to_dist(&self) -> JointDist {
        let n = self.total as f64;
        JointDist {
            dim: self.dim,
            weights: self
                .counts
                .iter()
                .map(|(t, &c)| (t.clone(), c as f64 / n))
                .collect(),
            mass_deficit: 0.0,
        }
    }
}

fn empirical_joint<I>(range: I, partition: &PrimePartition, table: &SieveTable, total: u64) -> Result<EmpiricalJoint>
where
    I: IntoParallelIterator<Item = u64>,
{
    let dim = partition.dimension();
    let index = partition.index_of();
    let modes: Vec<Mode> = partition.sets.iter().map(|s| s.mode()).collect();
    let maps: Vec<HashMap<Vec<u32>, u64>> = range
        .into_par_iter()
        .fold(HashMap::new, |mut map: HashMap<Vec<u32>, u64>, v| {
            let mut tuple = vec![0u32; dim];
            let f = table.factorize(v).expect("value within table");
            for &(q, e) in f.entries() {
                if let Some(&i) = index.get(&q) {
                    tuple[i] += match modes[i] {
                        Mode::Omega => 1,
                        Mode::BigOmega => e,
                    };
                }
            }
            *map.entry(tuple).or_insert(0) += 1;
            map
        })
        .collect();
    let mut counts = BTreeMap::new();
    for map in maps {
        for (t, c) in map {
            *counts.entry(t).or_insert(0) += c;
        }
    }
    Ok(EmpiricalJoint { dim, counts, total })
}

/// Joint law of the divisor-count tuple of `p + a` over primes
/// `p in (|a|+1, x]`, exact counts over `pi*(x)`.
pub fn empirical_joint_shifted(
    x: u64,
    a: i64,
    partition: &PrimePartition,
    table: &SieveTable,
) -> Result<EmpiricalJoint> {
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
    let total = table.prime_count(x)? - table.prime_count(abs_a + 1)?;
    if total == 0 {
        return Err(Error::InvalidParameter(format!("no primes in (|a|+1, {x}]")));
    }
    let shifted: Vec<u64> = (abs_a + 2..=x)
        .into_par_iter()
        .filter(|&p| table.is_prime(p))
        .map(|p| (p as i64 + a) as u64)
        .collect();
    empirical_joint(shifted, partition, table, total)
}

/// Joint law of the divisor-count tuple of a uniform integer `n <= x`.
pub fn empirical_joint_integers(
    x: u64,
    partition: &PrimePartition,
    table: &SieveTable,
) -> Result<EmpiricalJoint> {
    if x == 0 || table.limit() < x {
        return Err(Error::TableTooSmall {
            limit: table.limit(),
            needed: x.max(1),
        });
    }
    empirical_joint(1..=x, partition, table, x)
}

/// Product of independent Poisson laws truncated at `cap` per coordinate,
/// with `mass_deficit = 1 - prod_i CDF_i(cap)`.
pub fn poisson_joint(lambdas: &[f64], cap: u32) -> Result<JointDist> {
    if lambdas.is_empty() {
        return Err(Error::InvalidParameter("need at least one parameter".into()));
    }
    if cap == 0 {
        return Err(Error::InvalidParameter("cap must be >= 1".into()));
    }
    let per_coord: Vec<Vec<f64>> = lambdas
        .iter()
        .map(|&l| -> Result<Vec<f64>> { (0..=cap).map(|k| poisson_pmf(l, k)).collect() })
        .collect::<Result<_>>()?;
    let size = (cap as usize + 1).checked_pow(lambdas.len() as u32);
    if size.is_none() || size.unwrap() > 100_000_000 {
        return Err(Error::InvalidParameter(format!(
            "product grid (cap+1)^m too large for cap={cap}, m={}",
            lambdas.len()
        )));
    }
    let mut weights = BTreeMap::new();
    let mut tuple = vec![0u32; lambdas.len()];
    loop {
        let w: f64 = tuple
            .iter()
            .zip(&per_coord)
            .map(|(&k, v)| v[k as usize])
            .product();
        weights.insert(tuple.clone(), w);
        // Odometer increment over {0..cap}^m.
        let mut i = 0;
        loop {
            if i == tuple.len() {
                let total: f64 = weights.values().sum();
                return Ok(JointDist {
                    dim: lambdas.len(),
                    weights,
                    mass_deficit: (1.0 - total).max(0.0),
                });
            }
            if tuple[i] < cap {
                tuple[i] += 1;
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

/// Half-L1 distance over the union of supports, deficits as phantom mass;
/// the same semantics as `tv::dtv_finite` for tuple-valued laws.
pub fn joint_dtv(p: &JointDist, q: &JointDist) -> Result<TvDistance<f64>> {
    if p.dim != q.dim {
        return Err(Error::InvalidParameter(format!(
            "dimension mismatch: {} vs {}",
            p.dim, q.dim
        )));
    }
    let mut sum = 0.0f64;
    for (t, &wp) in &p.weights {
        sum += (wp - q.weight_of(t)).abs();
    }
    for (t, &wq) in &q.weights {
        if !p.weights.contains_key(t) {
            sum += wq.abs();
        }
    }
    let phantom = (p.mass_deficit - q.mass_deficit).abs();
    let spread = p.mass_deficit + q.mass_deficit;
    Ok(TvDistance {
        value: 0.5 * (sum + phantom),
        uncertainty: 0.5 * (spread - phantom),
    })
}

/// Exact numerator/denominator of the distance between two empirical joints:
/// `d_TV = num / den` with `num = sum |c_p * N_q - c_q * N_p|` and
/// `den = 2 * N_p * N_q`. Integer arithmetic, so inequalities against region
/// gaps can be checked exactly.
pub fn joint_dtv_counts(p: &EmpiricalJoint, q: &EmpiricalJoint) -> Result<(u128, u128)> {
    if p.dim != q.dim {
        return Err(Error::InvalidParameter(format!(
            "dimension mismatch: {} vs {}",
            p.dim, q.dim
        )));
    }
    let (np, nq) = (p.total as u128, q.total as u128);
    let mut num: u128 = 0;
    for (t, &cp) in &p.counts {
        let cq = q.count_of(t) as u128;
        num += (cp as u128 * nq).abs_diff(cq * np);
    }
    for (t, &cq) in &q.counts {
        if !p.counts.contains_key(t) {
            num += cq as u128 * np;
        }
    }
    Ok((num, 2 * np * nq))
}

/// Distance between the empirical joint over shifted primes and the product
/// of Poisson laws with the mode-matched parameters, with the
/// Poisson-approximation bound terms.
pub fn poisson_report(
    x: u64,
    y: u64,
    a: i64,
    partition: &PrimePartition,
    table: &SieveTable,
    alpha: f64,
    log_power: f64,
) -> Result<DistanceReport> {
    if partition.max_prime() > y || y > x {
        return Err(Error::InvalidParameter(
            "partition primes must lie in [2, y] with y <= x".into(),
        ));
    }
    let emp = empirical_joint_shifted(x, a, partition, table)?;
    let lambdas: Vec<f64> = partition.sets.iter().map(|s| s.lambda()).collect();
    let cap = lambdas
        .iter()
        .map(|&l| poisson_tail_cap(l, 1e-12))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(1)
        .max(1);
    let product = poisson_joint(&lambdas, cap)?;
    let distance = joint_dtv(&emp.to_dist(), &product)?;
    let poisson_term: f64 = partition
        .sets
        .iter()
        .map(|s| s.h2() / (1.0 + s.h1()))
        .sum();
    let u = (x as f64).ln() / (y as f64).ln();
    let (bound_alpha, bound_uu, bound_log) = bound_curves(u, alpha, x as f64, log_power)?;
    let dtv = distance.value;
    Ok(DistanceReport {
        x,
        y,
        a: Some(a),
        u,
        dtv,
        bound_alpha,
        bound_uu,
        bound_log,
        poisson_term: Some(poisson_term),
        ratio: dtv / (poisson_term + bound_alpha + bound_log),
        alpha,
        log_power,
    })
}

/// Exact-to-truncation distance between Poisson laws, the closed-form
/// Kullback-Leibler divergence between them, and the first-order bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonPairDistance {
    /// Half-L1 of the pmfs truncated so the deficit is below 1e-12.
    pub exact: f64,
    /// `(lambda' - lambda) / (1 + sqrt(lambda))`.
    pub bound: f64,
    /// `(lambda' - lambda) - lambda * log(lambda'/lambda)`.
    pub kl: f64,
}

pub fn dtv_poisson_pair(lambda: f64, lambda_prime: f64) -> Result<PoissonPairDistance> {
    if !(lambda > 0.0 && lambda_prime >= lambda) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < lambda <= lambda', got {lambda}, {lambda_prime}"
        )));
    }
    let cap = poisson_tail_cap(lambda_prime, 1e-12)?.max(poisson_tail_cap(lambda, 1e-12)?);
    let truncated = |l: f64| -> Result<crate::pmf::Pmf<f64>> {
        let entries: Vec<(u64, f64)> = (0..=cap)
            .map(|k| Ok((k as u64, poisson_pmf(l, k)?)))
            .collect::<Result<_>>()?;
        let total: f64 = entries.iter().map(|&(_, w)| w).sum();
        crate::pmf::Pmf::new(entries, (1.0 - total).max(0.0))
    };
    let exact = crate::tv::dtv_finite(&truncated(lambda)?, &truncated(lambda_prime)?)?.value;
    let kl = (lambda_prime - lambda) - lambda * (lambda_prime / lambda).ln();
    let bound = (lambda_prime - lambda) / (1.0 + lambda.sqrt());
    Ok(PoissonPairDistance { exact, bound, kl })
}

/// Both sides of a probability-generating-function identity at one point.
#[derive(Debug, Clone, Copy)]
pub struct PgfCheck {
    /// `sum_k P(count = k) z^k` from the convolved distribution.
    pub lhs: Complex64,
    /// The closed-form product over the set's primes.
    pub rhs: Complex64,
    pub diff: f64,
}

/// Evaluates the generating-function identity for `set` at a single `z`.
///
/// Omega mode checks `E z^count = prod (1 + (z-1)/(q-1))`; BigOmega mode
/// checks `E z^count = prod (1 + q(z-1)/((q-1)(q-z)))`. Primes dividing the
/// shift contribute a factor 1 on both sides. The left side truncates each
/// coordinate at `truncation`, so pick it large enough for the target
/// accuracy at your largest `|z|` (the q = 2 tail decays like `(|z|/2)^v`).
pub fn pgf_check(set: &PrimeSet, a: i64, z: Complex64, truncation: u32) -> Result<PgfCheck> {
    Ok(pgf_check_grid(set, a, &[z], truncation)?.remove(0))
}

/// Same identity on a grid of points, convolving the distribution once.
pub fn pgf_check_grid(
    set: &PrimeSet,
    a: i64,
    zs: &[Complex64],
    truncation: u32,
) -> Result<Vec<PgfCheck>> {
    for &z in zs {
        if z.norm() > 1.9 {
            return Err(Error::InvalidParameter(format!(
                "|z| = {} exceeds the identity's disk |z| <= 1.9",
                z.norm()
            )));
        }
        if set.mode() == Mode::BigOmega {
            for &q in set.primes() {
                if (z - Complex64::new(q as f64, 0.0)).norm() < 1e-9 {
                    return Err(Error::PgfPole { q });
                }
            }
        }
    }
    let pmf = r_distribution_f64(set, a, truncation)?;
    let abs_a = a.unsigned_abs();
    zs.iter()
        .map(|&z| {
            // Horner evaluation from the top coefficient.
            let mut lhs = Complex64::zero();
            for &(_, w) in pmf.entries().iter().rev() {
                lhs = lhs * z + Complex64::new(w, 0.0);
            }
            let mut rhs = Complex64::new(1.0, 0.0);
            for &q in set.primes() {
                if abs_a % q == 0 {
                    continue;
                }
                let qf = q as f64;
                let factor = match set.mode() {
                    Mode::Omega => Complex64::new(1.0, 0.0) + (z - 1.0) / (qf - 1.0),
                    Mode::BigOmega => {
                        Complex64::new(1.0, 0.0) + qf * (z - 1.0) / ((qf - 1.0) * (qf - z))
                    }
                };
                rhs *= factor;
            }
            Ok(PgfCheck {
                lhs,
                rhs,
                diff: (lhs - rhs).norm(),
            })
        })
        .collect()
}

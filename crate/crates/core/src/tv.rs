//! Exact total-variation computations.
//!
//! The central identity: the distance between the model exponent vector and
//! the empirical one is computable exactly through smooth parts,
//!
//! ```text
//! d_TV = (1/2) * sum_m | Phi_m / N  -  g_y(m) |,
//! ```
//!
//! summed over y-smooth m, where `Phi_m` counts shifted primes (or integers)
//! whose y-smooth part is exactly m. Because the model weights sum to one
//! over all smooth m and the histogram vanishes off its finite support, the
//! sum over any set S containing the support plus an enumeration prefix is
//! completed exactly by the tail term `(1/2) * (1 - sum_{m in S} g_y(m))`.
//! No enumeration up to x is ever needed.

use crate::error::{Error, Result};
use crate::model::{GyWeights, HyWeights, Ratio, ShiftConfig};
use crate::pmf::{Pmf, Weight};
use crate::sieve::{enumerate_smooth, SieveTable, SmoothEnumConfig};
use num::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// Compensated (Kahan) accumulator for the long half-L1 passes.
#[derive(Debug, Default, Clone, Copy)]
pub struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// A computed distance plus the uncertainty contributed by truncated mass.
///
/// `value` is a lower bound on the distance between the untruncated laws;
/// the true value lies in `[value, value + uncertainty]`. Exact pmfs with
/// zero deficit give zero uncertainty.
#[derive(Debug, Clone, PartialEq)]
pub struct TvDistance<W> {
    pub value: W,
    pub uncertainty: W,
}

/// Half-L1 distance between two pmfs over the union of their supports, with
/// each mass deficit treated as an extra phantom outcome.
pub fn dtv_finite<W: Weight>(p: &Pmf<W>, q: &Pmf<W>) -> Result<TvDistance<W>> {
    let half = W::from_u64_ratio(1, 2);
    let mut sum = W::zero();
    let (pe, qe) = (p.entries(), q.entries());
    let (mut i, mut j) = (0, 0);
    while i < pe.len() || j < qe.len() {
        let diff = match (pe.get(i), qe.get(j)) {
            (Some(&(xp, ref wp)), Some(&(xq, ref wq))) => {
                if xp == xq {
                    i += 1;
                    j += 1;
                    wp.clone() - wq.clone()
                } else if xp < xq {
                    i += 1;
                    wp.clone()
                } else {
                    j += 1;
                    wq.clone()
                }
            }
            (Some((_, wp)), None) => {
                i += 1;
                wp.clone()
            }
            (None, Some((_, wq))) => {
                j += 1;
                wq.clone()
            }
            (None, None) => unreachable!(),
        };
        sum = sum + diff.abs();
    }
    let dp = p.mass_deficit().clone();
    let dq = q.mass_deficit().clone();
    let phantom = (dp.clone() - dq.clone()).abs();
    let spread = dp + dq;
    let value = half.clone() * (sum + phantom.clone());
    let uncertainty = half * (spread - phantom);
    Ok(TvDistance { value, uncertainty })
}

/// Map `m -> Phi_m(x, y)`: the number of primes `p` in `(|a|+1, x]` whose
/// shifted value `p + a` has y-smooth part exactly `m`. One histogram pass
/// classifies every prime, so the counts partition `pi*(x)`.
#[derive(Debug, Clone)]
pub struct SmoothPartHistogram {
    x: u64,
    y: u64,
    a: i64,
    counts: BTreeMap<u64, u64>,
    prime_total: u64,
}

impl SmoothPartHistogram {
    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn y(&self) -> u64 {
        self.y
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    /// `pi*(x) = pi(x) - pi(|a|+1)`, computed independently of the counts.
    pub fn prime_total(&self) -> u64 {
        self.prime_total
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn count_of(&self, m: u64) -> u64 {
        self.counts.get(&m).copied().unwrap_or(0)
    }

    pub fn total_count(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// Builds the smooth-part histogram by a single parallel pass over the
/// primes in `(|a|+1, x]`.
pub fn phi_histogram(x: u64, y: u64, a: i64, table: &SieveTable) -> Result<SmoothPartHistogram> {
    if a == 0 {
        return Err(Error::InvalidParameter("shift a must be nonzero".into()));
    }
    if !(2 <= y && y <= x) {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= y <= x, got y={y}, x={x}"
        )));
    }
    let abs_a = a.unsigned_abs();
    let needed = x + abs_a;
    if table.limit() < needed {
        return Err(Error::TableTooSmall {
            limit: table.limit(),
            needed,
        });
    }
    let lo = abs_a + 2; // primes strictly above |a| + 1
    let maps: Vec<HashMap<u64, u64>> = (lo..=x)
        .into_par_iter()
        .fold(HashMap::new, |mut map: HashMap<u64, u64>, p| {
            if table.is_prime(p) {
                let shifted = (p as i64 + a) as u64;
                let (m, _) = table
                    .smooth_part(shifted, y)
                    .expect("shifted value within table by precondition");
                *map.entry(m).or_insert(0) += 1;
            }
            map
        })
        .collect();
    let mut counts = BTreeMap::new();
    for map in maps {
        for (m, c) in map {
            *counts.entry(m).or_insert(0) += c;
        }
    }
    let prime_total = table.prime_count(x)? - table.prime_count(abs_a + 1)?;
    Ok(SmoothPartHistogram {
        x,
        y,
        a,
        counts,
        prime_total,
    })
}

/// A computed distance together with the theoretical bound terms it is
/// measured against and their ratio.
#[derive(Debug, Clone, Serialize)]
pub struct DistanceReport {
    pub x: u64,
    pub y: u64,
    /// Shift, absent for the integer-side experiment.
    pub a: Option<i64>,
    /// `u = log x / log y`.
    pub u: f64,
    pub dtv: f64,
    /// `exp(-alpha * u * log u)`.
    pub bound_alpha: f64,
    /// `u^{-u}`.
    pub bound_uu: f64,
    /// `(log x)^{-A}`.
    pub bound_log: f64,
    /// `sum_j H_2(T_j) / (1 + H_1(T_j))`, for Poisson-approximation reports.
    pub poisson_term: Option<f64>,
    /// `dtv / (sum of the bound terms applicable to the experiment)`.
    pub ratio: f64,
    pub alpha: f64,
    pub log_power: f64,
}

impl DistanceReport {
    pub const CSV_HEADER: &'static str = "x,y,u,a,dtv,bound_alpha,bound_uu,bound_log,ratio";

    /// One CSV row; floats are printed with 17 significant digits so they
    /// round-trip exactly.
    pub fn csv_row(&self) -> String {
        let a = self.a.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.x,
            self.y,
            fmt_f64(self.u),
            a,
            fmt_f64(self.dtv),
            fmt_f64(self.bound_alpha),
            fmt_f64(self.bound_uu),
            fmt_f64(self.bound_log),
            fmt_f64(self.ratio),
        )
    }
}

/// 17 significant digits: enough to reconstruct any f64 bit pattern.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// The three scalar bound terms `(e^{-alpha u log u}, u^{-u}, (log x)^{-A})`.
pub fn bound_curves(u: f64, alpha: f64, x: f64, log_power: f64) -> Result<(f64, f64, f64)> {
    if !(u > 0.0) {
        return Err(Error::InvalidParameter(format!("u must be positive, got {u}")));
    }
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    if !(x > 1.0) {
        return Err(Error::InvalidParameter(format!("x must exceed 1, got {x}")));
    }
    if !(log_power > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "log exponent must be positive, got {log_power}"
        )));
    }
    let b_alpha = (-alpha * u * u.ln()).exp();
    let b_uu = (-u * u.ln()).exp();
    let b_log = x.ln().powf(-log_power);
    Ok((b_alpha, b_uu, b_log))
}

/// Exact total-variation distance between the shifted-prime model vector and
/// the empirical exponent vector at `(x, y, a)`, as a float report.
///
/// The sum runs over `S = (y-smooth m emitted within the enumeration
/// budget) ∪ support(Phi)`; the union always contains the histogram support,
/// so an exhausted budget only moves model-only mass into the exact tail
/// term and never invalidates the result.
pub fn dtv_shifted(
    x: u64,
    y: u64,
    a: i64,
    table: &SieveTable,
    enum_cfg: &SmoothEnumConfig,
    alpha: f64,
    log_power: f64,
) -> Result<DistanceReport> {
    if enum_cfg.y != y {
        return Err(Error::InvalidParameter(
            "enumeration smoothness bound must match y".into(),
        ));
    }
    let hist = phi_histogram(x, y, a, table)?;
    let cfg = ShiftConfig::new(a, y)?;
    let weights = GyWeights::new(&cfg, table)?;
    let n = hist.prime_total();
    if n == 0 {
        return Err(Error::InvalidParameter(format!(
            "no primes in (|a|+1, {x}]"
        )));
    }
    let dtv = half_l1_with_tail(&hist.counts, n, enum_cfg, |m| weights.weight(m))?;
    let u = (x as f64).ln() / (y as f64).ln();
    let (bound_alpha, bound_uu, bound_log) = bound_curves(u, alpha, x as f64, log_power)?;
    Ok(DistanceReport {
        x,
        y,
        a: Some(a),
        u,
        dtv,
        bound_alpha,
        bound_uu,
        bound_log,
        poisson_term: None,
        ratio: dtv / (bound_alpha + bound_log),
        alpha,
        log_power,
    })
}

/// Integer-side analog: distance between the model vector over primes `<= y`
/// and the empirical exponent vector of a uniform `n <= x`.
pub fn dtv_integers(
    x: u64,
    y: u64,
    table: &SieveTable,
    enum_cfg: &SmoothEnumConfig,
    alpha: f64,
    log_power: f64,
) -> Result<DistanceReport> {
    if enum_cfg.y != y {
        return Err(Error::InvalidParameter(
            "enumeration smoothness bound must match y".into(),
        ));
    }
    if !(2 <= y && y <= x) {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= y <= x, got y={y}, x={x}"
        )));
    }
    if table.limit() < x {
        return Err(Error::TableTooSmall {
            limit: table.limit(),
            needed: x,
        });
    }
    let counts = integer_histogram(x, y, table);
    let weights = HyWeights::new(y, table)?;
    let dtv = half_l1_with_tail(&counts, x, enum_cfg, |m| weights.weight(m))?;
    let u = (x as f64).ln() / (y as f64).ln();
    let (bound_alpha, bound_uu, bound_log) = bound_curves(u, alpha, x as f64, log_power)?;
    Ok(DistanceReport {
        x,
        y,
        a: None,
        u,
        dtv,
        bound_alpha,
        bound_uu,
        bound_log,
        poisson_term: None,
        ratio: dtv / bound_uu,
        alpha,
        log_power,
    })
}

fn integer_histogram(x: u64, y: u64, table: &SieveTable) -> BTreeMap<u64, u64> {
    let maps: Vec<HashMap<u64, u64>> = (1..=x)
        .into_par_iter()
        .fold(HashMap::new, |mut map: HashMap<u64, u64>, n| {
            let (m, _) = table.smooth_part(n, y).expect("n within table");
            *map.entry(m).or_insert(0) += 1;
            map
        })
        .collect();
    let mut counts = BTreeMap::new();
    for map in maps {
        for (m, c) in map {
            *counts.entry(m).or_insert(0) += c;
        }
    }
    counts
}

/// Shared accumulation pass: Kahan-compensated half-L1 over the union of the
/// enumerated smooth numbers and the histogram support, plus the exact tail.
fn half_l1_with_tail(
    counts: &BTreeMap<u64, u64>,
    total: u64,
    enum_cfg: &SmoothEnumConfig,
    weight: impl Fn(u64) -> Result<f64>,
) -> Result<f64> {
    let n = total as f64;
    let mut abs_sum = Kahan::default();
    let mut model_sum = Kahan::default();
    let mut visit = |m: u64, count: u64| -> Result<()> {
        let w = weight(m)?;
        abs_sum.add((count as f64 / n - w).abs());
        model_sum.add(w);
        Ok(())
    };

    let mut keys = counts.iter().map(|(&m, &c)| (m, c)).peekable();
    for item in enumerate_smooth(enum_cfg)? {
        match item {
            Ok(v) => {
                while let Some(&(m, c)) = keys.peek() {
                    if m < v {
                        visit(m, c)?;
                        keys.next();
                    } else {
                        break;
                    }
                }
                if let Some(&(m, c)) = keys.peek() {
                    if m == v {
                        visit(m, c)?;
                        keys.next();
                        continue;
                    }
                }
                visit(v, 0)?;
            }
            Err(Error::SmoothBudget { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    for (m, c) in keys {
        visit(m, c)?;
    }
    let tail = (1.0 - model_sum.value()).max(0.0);
    Ok(0.5 * abs_sum.value() + 0.5 * tail)
}

/// Rational-exact version of [`dtv_shifted`] for desk-size inputs; the
/// enumeration covers every smooth number up to `x + |a|`.
pub fn dtv_shifted_exact(x: u64, y: u64, a: i64, table: &SieveTable) -> Result<Ratio> {
    let hist = phi_histogram(x, y, a, table)?;
    let cfg = ShiftConfig::new(a, y)?;
    let n = hist.prime_total();
    if n == 0 {
        return Err(Error::InvalidParameter(format!(
            "no primes in (|a|+1, {x}]"
        )));
    }
    exact_half_l1(
        &hist.counts,
        n,
        y,
        x + a.unsigned_abs(),
        |m| crate::model::g_weight(m, &cfg, table),
    )
}

/// Rational-exact version of [`dtv_integers`].
pub fn dtv_integers_exact(x: u64, y: u64, table: &SieveTable) -> Result<Ratio> {
    if !(2 <= y && y <= x) {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= y <= x, got y={y}, x={x}"
        )));
    }
    if table.limit() < x {
        return Err(Error::TableTooSmall {
            limit: table.limit(),
            needed: x,
        });
    }
    let counts = integer_histogram(x, y, table);
    exact_half_l1(&counts, x, y, x, |m| crate::model::h_weight(m, y, table))
}

fn exact_half_l1(
    counts: &BTreeMap<u64, u64>,
    total: u64,
    y: u64,
    max_value: u64,
    weight: impl Fn(u64) -> Result<Ratio>,
) -> Result<Ratio> {
    let cfg = SmoothEnumConfig::new(y, max_value, u64::MAX)?;
    let half = Ratio::from_u64_ratio(1, 2);
    let mut abs_sum = Ratio::zero();
    let mut model_sum = Ratio::zero();
    for item in enumerate_smooth(&cfg)? {
        let m = item?;
        let w = weight(m)?;
        let count = counts.get(&m).copied().unwrap_or(0);
        let emp = Ratio::from_u64_ratio(count, total);
        abs_sum += (emp - w.clone()).abs();
        model_sum += w;
    }
    let tail = Ratio::one() - model_sum;
    Ok(half * (abs_sum + tail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::g_weight;

    fn ratio(num: i64, den: i64) -> Ratio {
        Ratio::new(num.into(), den.into())
    }

    fn rational_pmf(entries: &[(u64, (i64, i64))]) -> Pmf<Ratio> {
        Pmf::new(
            entries.iter().map(|&(x, (n, d))| (x, ratio(n, d))).collect(),
            Ratio::zero(),
        )
        .unwrap()
    }

    #[test]
    fn dtv_finite_examples() {
        let p = rational_pmf(&[(0, (1, 2)), (1, (1, 2))]);
        assert_eq!(dtv_finite(&p, &p).unwrap().value, Ratio::zero());

        let zero = Pmf::<Ratio>::point_mass(0);
        let one = Pmf::<Ratio>::point_mass(1);
        assert_eq!(dtv_finite(&zero, &one).unwrap().value, Ratio::one());

        let q = rational_pmf(&[(0, (1, 1))]);
        assert_eq!(dtv_finite(&p, &q).unwrap().value, ratio(1, 2));
    }

    #[test]
    fn dtv_finite_deficit_interval() {
        let p = Pmf::<f64>::new(vec![(0, 0.7)], 0.3).unwrap();
        let q = Pmf::<f64>::new(vec![(0, 0.9)], 0.1).unwrap();
        let d = dtv_finite(&p, &q).unwrap();
        // phantom outcome contributes |0.3 - 0.1|/2; spread min(0.3, 0.1).
        assert!((d.value - 0.2).abs() < 1e-15);
        assert!((d.uncertainty - 0.1).abs() < 1e-15);
    }

    #[test]
    fn phi_histogram_small_case() {
        let table = SieveTable::build(64).unwrap();
        let hist = phi_histogram(20, 3, 1, &table).unwrap();
        // p in {3,5,7,11,13,17,19}; smooth parts of p+1: 4,6,8,12,2,18,4.
        assert_eq!(hist.count_of(2), 1);
        assert_eq!(hist.count_of(4), 2);
        assert_eq!(hist.count_of(6), 1);
        assert_eq!(hist.count_of(8), 1);
        assert_eq!(hist.count_of(12), 1);
        assert_eq!(hist.count_of(18), 1);
        assert_eq!(hist.total_count(), 7);
        assert_eq!(hist.prime_total(), 7);
        // p + 1 is even for every odd prime, so odd smooth parts are absent.
        for (&m, _) in hist.counts() {
            assert_eq!(m % 2, 0);
        }
    }

    #[test]
    fn zero_model_alignment() {
        // Every histogram key carries positive model weight.
        let table = SieveTable::build(2000).unwrap();
        for a in [1i64, -1, 2, 3] {
            let cfg = ShiftConfig::new(a, 7).unwrap();
            let hist = phi_histogram(1000, 7, a, &table).unwrap();
            for (&m, _) in hist.counts() {
                let g = g_weight(m, &cfg, &table).unwrap();
                assert!(!g.is_zero(), "a={a}, m={m} has zero model weight");
            }
        }
    }

    /// Brute-force oracle built entirely from first principles: trial
    /// division primality, trial-division smooth parts, and the defining
    /// product over W laws. No sieve table, no model code.
    fn oracle_dtv_shifted(x: i64, y: u64, a: i64) -> Ratio {
        let is_prime = |n: i64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        let trial_factor = |mut n: u64| -> Vec<(u64, u32)> {
            let mut out = Vec::new();
            let mut d = 2;
            while n > 1 {
                if n % d == 0 {
                    let mut e = 0;
                    while n % d == 0 {
                        n /= d;
                        e += 1;
                    }
                    out.push((d, e));
                }
                d += 1;
            }
            out
        };
        let w_law = |q: u64, v: u32| -> Ratio {
            if a.unsigned_abs() % q == 0 {
                return if v == 0 { Ratio::one() } else { Ratio::zero() };
            }
            if v == 0 {
                ratio((q - 2) as i64, (q - 1) as i64)
            } else {
                Ratio::recip_prime_power(q, v)
            }
        };
        let g = |m: u64| -> Ratio {
            let f = trial_factor(m);
            let mut out = Ratio::one();
            for q in 2..=y {
                if is_prime(q as i64) {
                    let v = f.iter().find(|&&(p, _)| p == q).map_or(0, |&(_, e)| e);
                    out *= w_law(q, v);
                }
            }
            out
        };

        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        let mut n_primes = 0u64;
        for p in (a.abs() + 2)..=x {
            if is_prime(p) {
                n_primes += 1;
                let shifted = (p + a) as u64;
                let m: u64 = trial_factor(shifted)
                    .into_iter()
                    .filter(|&(q, _)| q <= y)
                    .map(|(q, e)| q.pow(e))
                    .product();
                *counts.entry(m).or_insert(0) += 1;
            }
        }

        let mut abs_sum = Ratio::zero();
        let mut model_sum = Ratio::zero();
        let bound = (x + a.abs()) as u64;
        for m in 1..=bound {
            if trial_factor(m).iter().all(|&(q, _)| q <= y) {
                let w = g(m);
                let c = counts.get(&m).copied().unwrap_or(0);
                abs_sum += (Ratio::from_u64_ratio(c, n_primes) - w.clone()).abs();
                model_sum += w;
            }
        }
        ratio(1, 2) * (abs_sum + Ratio::one() - model_sum)
    }

    #[test]
    fn dtv_shifted_exact_matches_brute_force() {
        let table = SieveTable::build(64).unwrap();
        let got = dtv_shifted_exact(20, 3, 1, &table).unwrap();
        assert_eq!(got, oracle_dtv_shifted(20, 3, 1));
        assert_eq!(got, ratio(391, 1008));
    }

    #[test]
    fn dtv_shifted_exact_more_shifts_match_oracle() {
        let table = SieveTable::build(128).unwrap();
        for (x, y, a) in [(30u64, 3u64, -1i64), (50, 5, 2), (40, 3, 3)] {
            let got = dtv_shifted_exact(x, y, a, &table).unwrap();
            assert_eq!(got, oracle_dtv_shifted(x as i64, y, a), "x={x} y={y} a={a}");
        }
    }

    #[test]
    fn dtv_integers_exact_small_case() {
        // Smooth parts of 1..=10 at y=3: 1,2,3,4,1,6,1,8,9,2 and h(m) = 1/(3m).
        let table = SieveTable::build(64).unwrap();
        let got = dtv_integers_exact(10, 3, &table).unwrap();
        let mut abs_sum = Ratio::zero();
        let mut model_sum = Ratio::zero();
        let counts = [(1u64, 3u64), (2, 2), (3, 1), (4, 1), (6, 1), (8, 1), (9, 1)];
        for m in [1u64, 2, 3, 4, 6, 8, 9] {
            let h = Ratio::from_u64_ratio(1, 3 * m);
            let c = counts.iter().find(|&&(k, _)| k == m).map_or(0, |&(_, c)| c);
            abs_sum += (Ratio::from_u64_ratio(c, 10) - h.clone()).abs();
            model_sum += h;
        }
        let expected = ratio(1, 2) * (abs_sum + Ratio::one() - model_sum);
        assert_eq!(got, expected);
        assert_eq!(got, ratio(233, 1080));
    }

    #[test]
    fn float_route_agrees_with_exact_route() {
        let table = SieveTable::build(4096).unwrap();
        let enum_cfg = SmoothEnumConfig::new(5, 2001, 1 << 20).unwrap();
        let report = dtv_shifted(2000, 5, 1, &table, &enum_cfg, 0.5, 1.0).unwrap();
        let exact = dtv_shifted_exact(2000, 5, 1, &table).unwrap();
        assert!((report.dtv - exact.to_f64_lossy()).abs() < 1e-12);

        let enum_cfg = SmoothEnumConfig::new(7, 1500, 1 << 20).unwrap();
        let report = dtv_integers(1500, 7, &table, &enum_cfg, 0.5, 1.0).unwrap();
        let exact = dtv_integers_exact(1500, 7, &table).unwrap();
        assert!((report.dtv - exact.to_f64_lossy()).abs() < 1e-12);
    }

    #[test]
    fn truncated_enumeration_still_exact() {
        // The histogram support is merged in, so a tiny budget only moves
        // model-only terms into the exact tail.
        let table = SieveTable::build(4096).unwrap();
        let generous = SmoothEnumConfig::new(5, 2001, 1 << 20).unwrap();
        let tiny = SmoothEnumConfig::new(5, 2001, 3).unwrap();
        let full = dtv_shifted(2000, 5, 1, &table, &generous, 0.5, 1.0).unwrap();
        let cut = dtv_shifted(2000, 5, 1, &table, &tiny, 0.5, 1.0).unwrap();
        assert!((full.dtv - cut.dtv).abs() < 1e-12);
    }

    #[test]
    fn dtv_is_within_range_and_x_equals_y_is_small() {
        let table = SieveTable::build(4096).unwrap();
        let enum_cfg = SmoothEnumConfig::new(1000, 1001, 1 << 20).unwrap();
        let report = dtv_integers(1000, 1000, &table, &enum_cfg, 0.5, 1.0).unwrap();
        assert!(report.dtv >= 0.0 && report.dtv <= 1.0);
        // Every n <= x is x-smooth: only model error remains.
        assert!(report.dtv < 0.05, "dtv={}", report.dtv);
    }

    #[test]
    fn bound_curve_examples() {
        let (ba, buu, _) = bound_curves(1.0, 0.5, 100.0, 1.0).unwrap();
        assert_eq!(ba, 1.0);
        assert_eq!(buu, 1.0);
        let e = std::f64::consts::E;
        let (ba, _, _) = bound_curves(e, 0.5, 100.0, 1.0).unwrap();
        assert!((ba - (-e / 2.0).exp()).abs() < 1e-15);
        let (ba, buu, _) = bound_curves(4.0, 0.5, 100.0, 1.0).unwrap();
        assert!((ba - 1.0 / 16.0).abs() < 1e-15);
        assert!((buu - 4.0f64.powi(-4)).abs() < 1e-18);
        assert!(bound_curves(0.0, 0.5, 100.0, 1.0).is_err());
    }

    #[test]
    fn csv_row_shape() {
        let r = DistanceReport {
            x: 100,
            y: 10,
            a: Some(1),
            u: 2.0,
            dtv: 0.125,
            bound_alpha: 0.5,
            bound_uu: 0.25,
            bound_log: 0.1,
            poisson_term: None,
            ratio: 0.2,
            alpha: 0.5,
            log_power: 1.0,
        };
        let row = r.csv_row();
        assert_eq!(row.split(',').count(), DistanceReport::CSV_HEADER.split(',').count());
        assert!(row.starts_with("100,10,"));
    }
}

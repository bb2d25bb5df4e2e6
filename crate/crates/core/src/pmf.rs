//! Finite discrete distributions, the common currency of every
//! total-variation computation in the crate.
//!
//! A `Pmf` is a sorted list of `(outcome, weight)` pairs plus an explicitly
//! tracked `mass_deficit`, the tail mass lost when the pmf is a truncation of
//! an infinite-support law. Weights are either exact `BigRational`s or `f64`s
//! through the [`Weight`] trait; identities that the model satisfies exactly
//! are tested in rational arithmetic, large experiments run in floats.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Arithmetic needed of a pmf weight: ordered signed semifield elements with
/// exact or lossy construction from small rationals.
pub trait Weight: Clone + PartialOrd + Zero + One + Signed {
    fn from_u64_ratio(num: u64, den: u64) -> Self;
    /// `q^{-v}` for prime powers; exact for rationals.
    fn recip_prime_power(q: u64, v: u32) -> Self;
    fn to_f64_lossy(&self) -> f64;
    /// Exact decimal-digit rendering, `None` when the weight is a float.
    fn exact_string(&self) -> Option<String>;
}

impl Weight for f64 {
    fn from_u64_ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn recip_prime_power(q: u64, v: u32) -> Self {
        (q as f64).powi(-(v as i32))
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }

    fn exact_string(&self) -> Option<String> {
        None
    }
}

impl Weight for BigRational {
    fn from_u64_ratio(num: u64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn recip_prime_power(q: u64, v: u32) -> Self {
        BigRational::new(BigInt::one(), BigInt::from(q).pow(v))
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn exact_string(&self) -> Option<String> {
        Some(format!("{}/{}", self.numer(), self.denom()))
    }
}

/// Finite discrete distribution over nonnegative integer outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf<W> {
    entries: Vec<(u64, W)>,
    mass_deficit: W,
}

impl<W: Weight> Pmf<W> {
    /// Builds a pmf from `(outcome, weight)` pairs. Entries are sorted,
    /// duplicate outcomes merged, and weights checked for nonnegativity.
    /// Total mass is the caller's responsibility (checked by tests, not
    /// here, so that empirical and truncated laws can be represented).
    pub fn new(mut entries: Vec<(u64, W)>, mass_deficit: W) -> Result<Self> {
        if mass_deficit < W::zero() {
            return Err(Error::NegativeWeight);
        }
        for (_, w) in &entries {
            if *w < W::zero() {
                return Err(Error::NegativeWeight);
            }
        }
        entries.sort_by_key(|&(x, _)| x);
        let mut merged: Vec<(u64, W)> = Vec::with_capacity(entries.len());
        for (x, w) in entries {
            match merged.last_mut() {
                Some((lx, lw)) if *lx == x => *lw = lw.clone() + w,
                _ => merged.push((x, w)),
            }
        }
        Ok(Pmf {
            entries: merged,
            mass_deficit,
        })
    }

    pub fn point_mass(outcome: u64) -> Self {
        Pmf {
            entries: vec![(outcome, W::one())],
            mass_deficit: W::zero(),
        }
    }

    pub fn entries(&self) -> &[(u64, W)] {
        &self.entries
    }

    pub fn mass_deficit(&self) -> &W {
        &self.mass_deficit
    }

    pub fn weight_of(&self, outcome: u64) -> W {
        self.entries
            .binary_search_by_key(&outcome, |&(x, _)| x)
            .map(|i| self.entries[i].1.clone())
            .unwrap_or_else(|_| W::zero())
    }

    /// Sum of listed weights (excludes the deficit).
    pub fn total_mass(&self) -> W {
        let mut total = W::zero();
        for (_, w) in &self.entries {
            total = total + w.clone();
        }
        total
    }

    pub fn max_outcome(&self) -> Option<u64> {
        self.entries.last().map(|&(x, _)| x)
    }

    /// Lossy float view, preserving deficit.
    pub fn to_f64(&self) -> Pmf<f64> {
        Pmf {
            entries: self
                .entries
                .iter()
                .map(|(x, w)| (*x, w.to_f64_lossy()))
                .collect(),
            mass_deficit: self.mass_deficit.to_f64_lossy(),
        }
    }

    /// JSON object `{support, weights, mass_deficit}`. Rational weights are
    /// emitted as exact `"num/den"` decimal-digit strings, floats as JSON
    /// numbers (serde_json prints shortest round-trip form).
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "support": self.entries.iter().map(|&(x, _)| x).collect::<Vec<_>>(),
            "weights": self.entries.iter().map(|(_, w)| weight_json(w)).collect::<Vec<_>>(),
            "mass_deficit": weight_json(&self.mass_deficit),
        })
    }
}

impl Pmf<f64> {
    pub fn mean(&self) -> f64 {
        self.entries.iter().map(|&(x, w)| x as f64 * w).sum()
    }

    pub fn central_moment(&self, order: u32) -> f64 {
        let mu = self.mean();
        self.entries
            .iter()
            .map(|&(x, w)| (x as f64 - mu).powi(order as i32) * w)
            .sum()
    }

    pub fn variance(&self) -> f64 {
        self.central_moment(2)
    }

    pub fn skewness(&self) -> f64 {
        self.central_moment(3) / self.variance().powf(1.5)
    }
}

fn weight_json<W: Weight>(w: &W) -> serde_json::Value {
    // Rationals are not representable as JSON numbers; emit them as strings.
    match w.exact_string() {
        Some(s) => serde_json::Value::String(s),
        None => serde_json::json!(w.to_f64_lossy()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_and_sorts() {
        let p = Pmf::<f64>::new(vec![(3, 0.25), (1, 0.5), (3, 0.25)], 0.0).unwrap();
        assert_eq!(p.entries(), &[(1, 0.5), (3, 0.5)]);
        assert_eq!(p.weight_of(3), 0.5);
        assert_eq!(p.weight_of(2), 0.0);
    }

    #[test]
    fn rejects_negative_weights() {
        assert!(matches!(
            Pmf::<f64>::new(vec![(0, -0.1)], 0.0),
            Err(Error::NegativeWeight)
        ));
        assert!(matches!(
            Pmf::<f64>::new(vec![(0, 1.0)], -0.5),
            Err(Error::NegativeWeight)
        ));
    }

    #[test]
    fn json_shape_rational_and_float() {
        let p = Pmf::<BigRational>::new(
            vec![
                (0, BigRational::from_u64_ratio(1, 3)),
                (1, BigRational::from_u64_ratio(2, 3)),
            ],
            BigRational::zero(),
        )
        .unwrap();
        let v = p.to_json();
        assert_eq!(v["support"], serde_json::json!([0, 1]));
        assert_eq!(v["weights"][0], serde_json::json!("1/3"));
        assert_eq!(v["mass_deficit"], serde_json::json!("0/1"));

        let q = Pmf::<f64>::new(vec![(0, 0.5), (1, 0.5)], 0.0).unwrap();
        assert_eq!(q.to_json()["weights"][0], serde_json::json!(0.5));
    }
}

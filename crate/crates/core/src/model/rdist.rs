//! Exact distributions of the prime-divisor counts under the model.
//!
//! In Omega mode the count is the number of primes `q` in the set with
//! `W_q >= 1`, a sum of independent Bernoulli(1/(q-1)) indicators (Bernoulli(1)
//! for q = 2 with odd shift, a point mass at 0 for q dividing the shift). In
//! BigOmega mode it is the sum of the `W_q` themselves, convolved after
//! truncating each coordinate at `truncation` with the lost tail tracked in
//! the pmf's `mass_deficit`.

use crate::error::{Error, Result};
use crate::model::{PrimeSet, Mode, Ratio};
use crate::pmf::{Pmf, Weight};

/// Exact rational distribution of the count statistic for `set` under shift
/// `a`. Intended for small sets; cost grows quickly with both set size and
/// truncation.
pub fn r_distribution(set: &PrimeSet, a: i64, truncation: u32) -> Result<Pmf<Ratio>> {
    distribution::<Ratio>(set, a, truncation)
}

/// Float fallback with the same semantics, for sets too large for exact
/// arithmetic to be worthwhile.
pub fn r_distribution_f64(set: &PrimeSet, a: i64, truncation: u32) -> Result<Pmf<f64>> {
    distribution::<f64>(set, a, truncation)
}

fn distribution<W: Weight>(set: &PrimeSet, a: i64, truncation: u32) -> Result<Pmf<W>> {
    if a == 0 {
        return Err(Error::InvalidParameter("shift a must be nonzero".into()));
    }
    if truncation == 0 {
        return Err(Error::InvalidParameter("truncation must be >= 1".into()));
    }
    if set.is_empty() {
        return Err(Error::EmptyPrimeSet);
    }
    let abs_a = a.unsigned_abs();
    let mut coeffs: Vec<W> = vec![W::one()];
    for &q in set.primes() {
        match set.mode() {
            Mode::Omega => {
                let hit = if abs_a % q == 0 {
                    W::zero()
                } else {
                    W::from_u64_ratio(1, q - 1)
                };
                coeffs = convolve_bernoulli(&coeffs, hit);
            }
            Mode::BigOmega => {
                let factor = w_vector::<W>(q, abs_a, truncation);
                coeffs = convolve(&coeffs, &factor);
            }
        }
    }
    let mut total = W::zero();
    for c in &coeffs {
        total = total.clone() + c.clone();
    }
    let deficit = if total > W::one() {
        W::zero() // float rounding can push the sum a hair above one
    } else {
        W::one() - total
    };
    Pmf::new(
        coeffs
            .into_iter()
            .enumerate()
            .map(|(k, w)| (k as u64, w))
            .collect(),
        deficit,
    )
}

/// Truncated single-coordinate law of `W_q`: `[P(0), P(1), ..., P(cap)]`.
fn w_vector<W: Weight>(q: u64, abs_a: u64, cap: u32) -> Vec<W> {
    if abs_a % q == 0 {
        return vec![W::one()];
    }
    let mut v = Vec::with_capacity(cap as usize + 1);
    v.push(W::from_u64_ratio(q - 2, q - 1));
    for e in 1..=cap {
        v.push(W::recip_prime_power(q, e));
    }
    v
}

fn convolve_bernoulli<W: Weight>(coeffs: &[W], hit: W) -> Vec<W> {
    let miss = W::one() - hit.clone();
    let mut out = vec![W::zero(); coeffs.len() + 1];
    for (k, c) in coeffs.iter().enumerate() {
        out[k] = out[k].clone() + c.clone() * miss.clone();
        out[k + 1] = out[k + 1].clone() + c.clone() * hit.clone();
    }
    out
}

fn convolve<W: Weight>(a: &[W], b: &[W]) -> Vec<W> {
    let mut out = vec![W::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{One, ToPrimitive, Zero};

    fn ratio(num: i64, den: i64) -> Ratio {
        Ratio::new(num.into(), den.into())
    }

    #[test]
    fn single_prime_omega() {
        let set = PrimeSet::new([3], Mode::Omega).unwrap();
        let pmf = r_distribution(&set, 1, 8).unwrap();
        assert_eq!(pmf.weight_of(0), ratio(1, 2));
        assert_eq!(pmf.weight_of(1), ratio(1, 2));
        assert!(pmf.mass_deficit().is_zero());
    }

    #[test]
    fn two_with_odd_shift_is_point_mass_at_one() {
        let set = PrimeSet::new([2], Mode::Omega).unwrap();
        let pmf = r_distribution(&set, 1, 8).unwrap();
        assert_eq!(pmf.weight_of(0), Ratio::zero());
        assert_eq!(pmf.weight_of(1), Ratio::one());
    }

    #[test]
    fn prime_dividing_shift_contributes_nothing() {
        let set = PrimeSet::new([2], Mode::Omega).unwrap();
        let pmf = r_distribution(&set, 2, 8).unwrap();
        assert_eq!(pmf.weight_of(0), Ratio::one());
    }

    #[test]
    fn big_omega_single_two() {
        // P(sum = v) = 2^{-v} for v >= 1 when the set is {2} and a is odd.
        let set = PrimeSet::new([2], Mode::BigOmega).unwrap();
        let pmf = r_distribution(&set, 1, 20).unwrap();
        assert_eq!(pmf.weight_of(0), Ratio::zero());
        for v in 1..=20u64 {
            assert_eq!(pmf.weight_of(v), Ratio::recip_prime_power(2, v as u32));
        }
        // Tracked deficit equals the discarded geometric tail 2^{-20}.
        assert_eq!(*pmf.mass_deficit(), Ratio::recip_prime_power(2, 20));
    }

    #[test]
    fn omega_support_is_bounded_by_set_size() {
        let set = PrimeSet::new([3, 5, 7], Mode::Omega).unwrap();
        let pmf = r_distribution(&set, 1, 4).unwrap();
        assert!(pmf.max_outcome().unwrap() <= 3);
        assert!(pmf.mass_deficit().is_zero());
        assert_eq!(pmf.total_mass(), Ratio::one());
        // Convolution oracle at 0: prod (1 - 1/(q-1)).
        assert_eq!(
            pmf.weight_of(0),
            ratio(1, 2) * ratio(3, 4) * ratio(5, 6)
        );
    }

    #[test]
    fn float_route_tracks_exact_route() {
        let set = PrimeSet::new([2, 3, 5, 7], Mode::BigOmega).unwrap();
        let exact = r_distribution(&set, 1, 16).unwrap();
        let float = r_distribution_f64(&set, 1, 16).unwrap();
        for (x, w) in exact.entries() {
            let e = w.to_f64().unwrap();
            let f = float.weight_of(*x);
            assert!((e - f).abs() < 1e-14, "x={x}: {e} vs {f}");
        }
    }

    #[test]
    fn empty_and_bad_args_rejected() {
        let set = PrimeSet::new([3], Mode::Omega).unwrap();
        assert!(r_distribution(&set, 0, 4).is_err());
        assert!(r_distribution(&set, 1, 0).is_err());
    }
}

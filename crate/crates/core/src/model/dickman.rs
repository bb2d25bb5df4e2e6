//! Dickman's function by fixed-step integration of its integral form.

use crate::error::{Error, Result};

const STEP: f64 = 1e-4;

/// Dickman's rho at `u >= 0`.
///
/// Uses `rho(u) = (1/u) * integral_{u-1}^{u} rho(t) dt` with a trapezoidal
/// rule on a grid of step 1e-4, giving ~1e-8 relative accuracy for u <= 20.
/// The closed form on [1, 2] is `1 - ln u`, which the tests check against.
pub fn dickman_rho(u: f64) -> Result<f64> {
    if !(u >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "dickman argument must be nonnegative, got {u}"
        )));
    }
    if u <= 1.0 {
        return Ok(1.0);
    }
    if u > 1000.0 {
        // Far below f64 underflow; avoid an absurd grid.
        return Ok(0.0);
    }

    let n0 = (1.0 / STEP).round() as usize;
    let hi = (u / STEP).ceil() as usize;
    let mut rho = Vec::with_capacity(hi + 1);
    rho.resize(n0 + 1, 1.0f64);

    // Running sum of the interior grid values of the trailing window,
    // S_i = sum_{j=i-n0+1}^{i-1} rho_j, updated in O(1) per step.
    let mut interior: f64 = (n0 - 1) as f64;
    for i in n0 + 1..=hi {
        let t = i as f64 * STEP;
        let tail = rho[i - n0];
        let value = STEP * (0.5 * tail + interior) / (t - 0.5 * STEP);
        rho.push(value);
        interior += value - rho[i - n0 + 1];
    }

    // Linear interpolation between the two bracketing grid points.
    let idx = (u / STEP).floor() as usize;
    if idx >= hi {
        return Ok(rho[hi]);
    }
    let frac = u / STEP - idx as f64;
    Ok(rho[idx] * (1.0 - frac) + rho[idx + 1] * frac)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identically_one_below_one() {
        assert_eq!(dickman_rho(0.0).unwrap(), 1.0);
        assert_eq!(dickman_rho(0.5).unwrap(), 1.0);
        assert_eq!(dickman_rho(1.0).unwrap(), 1.0);
    }

    #[test]
    fn closed_form_on_one_to_two() {
        // rho(u) = 1 - ln u on [1, 2].
        for u in [1.25f64, 1.5, 1.75, 2.0] {
            let expected = 1.0 - u.ln();
            let got = dickman_rho(u).unwrap();
            assert!(
                (got - expected).abs() < 1e-8,
                "u={u}: {got} vs {expected}"
            );
        }
    }

    #[test]
    fn value_at_three() {
        // Oracle: numerical integration at the default step.
        let got = dickman_rho(3.0).unwrap();
        assert!((got - 0.0486).abs() < 5e-4, "rho(3)={got}");
        assert!((got - 0.04860839).abs() < 1e-6, "rho(3)={got}");
    }

    #[test]
    fn negative_rejected() {
        assert!(dickman_rho(-0.1).is_err());
        assert!(dickman_rho(f64::NAN).is_err());
    }

    #[test]
    fn positive_and_decreasing() {
        let mut prev = dickman_rho(1.0).unwrap();
        let mut u = 1.1;
        while u <= 20.0 {
            let v = dickman_rho(u).unwrap();
            assert!(v > 0.0, "rho({u}) = {v}");
            assert!(v < prev, "rho not decreasing at {u}");
            prev = v;
            u += 0.1;
        }
    }
}

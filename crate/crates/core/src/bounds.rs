//! Numeric thresholds and bounds.
//!
//! Comparisons that can be made exact are made on integers. Real-valued
//! bounds go through [`snap`], which rounds values within `1e-9` of an
//! integer so that exact points such as `4^{log2 3} = 9` do not floor to 8.

use serde::Serialize;

use crate::error::{Error, Result};

pub const SNAP_EPS: f64 = 1e-9;

pub fn log2_3() -> f64 {
    3f64.log2()
}

pub fn log3_2() -> f64 {
    2f64.ln() / 3f64.ln()
}

/// Rounds `x` to the nearest integer when it is within [`SNAP_EPS`] of it.
pub fn snap(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= SNAP_EPS {
        r
    } else {
        x
    }
}

/// `k^{log2 3}`, the order above which every circuit graph has a cycle of
/// length at least `k`.
pub fn chen_yu_order(k: usize) -> f64 {
    snap((k as f64).powf(log2_3()))
}

/// `(2k/7)^{log2 3}`.
pub fn glued_base(k: usize) -> f64 {
    snap((2.0 * k as f64 / 7.0).powf(log2_3()))
}

/// Lobe order of the glued construction: `floor((2k/7)^{log2 3})`.
pub fn glued_lobe_order(k: usize) -> usize {
    glued_base(k).floor() as usize
}

/// `7/2 * n0^{log3 2}`: every cycle of the stacked triangulation of order
/// `n0` is shorter than this.
pub fn moon_moser_cycle_bound(n0: usize) -> f64 {
    snap(3.5 * (n0 as f64).powf(log3_2()))
}

/// An exact non-negative fraction.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ratio {
    pub num: i64,
    pub den: i64,
}

impl Ratio {
    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Exact `value < self`.
    pub fn exceeds(self, value: i64) -> bool {
        (value as i128) * (self.den as i128) < self.num as i128
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// The extraction threshold `(n - (t - 1)) / (3t - 7)`.
pub fn extraction_threshold(n: usize, t: usize) -> Ratio {
    Ratio {
        num: n as i64 - (t as i64 - 1),
        den: 3 * t as i64 - 7,
    }
}

/// Exact test of `m < (n - (t - 1)) / (3t - 7)`.
pub fn extraction_hypothesis(m: usize, n: usize, t: usize) -> bool {
    t >= 4 && extraction_threshold(n, t).exceeds(m as i64)
}

/// `3n - 6 - n / (4 k^{log2 3})`.
pub fn ck_upper(n: usize, k: usize) -> f64 {
    let n = n as f64;
    3.0 * n - 6.0 - n / (4.0 * chen_yu_order(k))
}

/// `3n - 6 - n / (8 k^{log2 3}) + k^3`.
pub fn two_ck_upper(n: usize, k: usize) -> f64 {
    let nf = n as f64;
    3.0 * nf - 6.0 - nf / (8.0 * chen_yu_order(k)) + (k as f64).powi(3)
}

/// `3n - 12 - (n - 2) / ((2k/7)^{log2 3} - 2)`; `None` when the lobe order is
/// at most 2 and the construction behind it does not exist.
pub fn two_ck_lower(n: usize, k: usize) -> Option<f64> {
    if glued_lobe_order(k) <= 2 {
        return None;
    }
    let nf = n as f64;
    Some(3.0 * nf - 12.0 - (nf - 2.0) / (glued_base(k) - 2.0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsProfile {
    pub n: usize,
    pub t: usize,
    pub k: usize,
    pub extraction_threshold: Ratio,
    pub ck_upper: f64,
    pub two_ck_upper: f64,
    pub two_ck_lower: Option<f64>,
    pub chen_yu_order: f64,
}

pub fn bounds_profile(n: usize, t: usize, k: usize) -> Result<BoundsProfile> {
    if t < 4 || k < 3 || n < 1 {
        return Err(Error::BadParameters(format!(
            "need t >= 4, k >= 3, n >= 1 (got n={n}, t={t}, k={k})"
        )));
    }
    Ok(BoundsProfile {
        n,
        t,
        k,
        extraction_threshold: extraction_threshold(n, t),
        ck_upper: ck_upper(n, k),
        two_ck_upper: two_ck_upper(n, k),
        two_ck_lower: two_ck_lower(n, k),
        chen_yu_order: chen_yu_order(k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_is_exact() {
        let p = bounds_profile(10, 4, 5).unwrap();
        assert_eq!(p.extraction_threshold, Ratio { num: 7, den: 5 });
        assert!(extraction_hypothesis(1, 10, 4));
        assert!(!extraction_hypothesis(2, 10, 4));
        // m = 3 on a hexagon with t = 4: 3 * 5 >= 6 - 3.
        assert!(!extraction_hypothesis(3, 6, 4));
        // Boundary: m (3t - 7) == n - (t - 1) is not enough.
        assert!(!extraction_hypothesis(1, 8, 4));
        assert!(extraction_hypothesis(1, 9, 4));
    }

    #[test]
    fn chen_yu_orders() {
        assert!((chen_yu_order(5) - 12.818_619_193_123_03).abs() < 1e-9);
        assert_eq!(chen_yu_order(4), 9.0);
        assert_eq!(chen_yu_order(2), 3.0);
    }

    #[test]
    fn snap_point_k14() {
        assert_eq!(glued_base(14), 9.0);
        assert_eq!(glued_lobe_order(14), 9);
        assert_eq!(glued_lobe_order(7), 3);
        assert_eq!(two_ck_lower(30, 14), Some(74.0));
    }

    #[test]
    fn non_instantiable_k() {
        assert!(glued_lobe_order(5) <= 2);
        assert!(glued_lobe_order(6) <= 2);
        assert_eq!(two_ck_lower(100, 5), None);
        assert_eq!(two_ck_lower(100, 6), None);
    }

    #[test]
    fn moon_moser_bound_at_43() {
        assert_eq!(moon_moser_cycle_bound(43).ceil(), 38.0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(bounds_profile(10, 3, 5).is_err());
        assert!(bounds_profile(10, 4, 2).is_err());
        assert!(bounds_profile(0, 4, 5).is_err());
    }
}

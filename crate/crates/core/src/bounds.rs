//! Exact arithmetic for the approximation-factor functions
//! g_t(r) = 4^{3t−2−r} + (4^{3t−2−r}−1)/3 · log₂(512t) and f(t) = 2^{2^{g_t(0)}}.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("g is defined for t >= 1 and 0 <= r <= 3t-2, got t={t} r={r}")]
    OutOfDomain { t: usize, r: usize },
}

/// g_t(r) represented exactly as a + b·log₂(512t). Both coefficients are
/// integers: a = 4^{3t−2−r} and b = (4^{3t−2−r}−1)/3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GValue {
    pub a: BigInt,
    pub b: BigInt,
}

impl GValue {
    /// Numeric value in double precision.
    pub fn eval(&self, t: usize) -> f64 {
        let log = (512.0 * t as f64).log2();
        self.a.to_f64().unwrap_or(f64::INFINITY) + self.b.to_f64().unwrap_or(f64::INFINITY) * log
    }
}

pub fn g(t: usize, r: usize) -> Result<GValue, BoundsError> {
    if t < 1 || r > 3 * t - 2 {
        return Err(BoundsError::OutOfDomain { t, r });
    }
    let e = (3 * t - 2 - r) as u32;
    let a = BigInt::from(4u32).pow(e);
    let b = (&a - BigInt::one()) / BigInt::from(3u32);
    Ok(GValue { a, b })
}

/// Certifies the exact identity 4·g_t(r) + log₂(512t) = g_t(r−1) for all
/// r ∈ [1, 3t−2], that g_t(r) ≥ 1 (so h_t(r) ≥ 4), and that g_t is
/// strictly decreasing for t ≥ 2.
pub fn check_recurrence(t: usize) -> bool {
    if t < 1 {
        return false;
    }
    let four = BigInt::from(4u32);
    let mut prev: Option<GValue> = None;
    for r in 0..=3 * t - 2 {
        let cur = g(t, r).unwrap();
        if cur.a < BigInt::one() || cur.b < BigInt::zero() || cur.eval(t) < 1.0 {
            return false;
        }
        if let Some(p) = &prev {
            // 4(a + b·log) + log = 4a + (4b+1)·log
            if &four * &cur.a != p.a || &four * &cur.b + BigInt::one() != p.b {
                return false;
            }
            if t >= 2 && cur.eval(t) >= p.eval(t) {
                return false;
            }
        }
        prev = Some(cur);
    }
    true
}

/// log₂log₂ f(t) = g_t(0), for reporting.
pub fn loglog_f(t: usize) -> f64 {
    g(t, 0).expect("t >= 1").eval(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoint_and_small_values() {
        assert_eq!(g(1, 1).unwrap(), GValue { a: BigInt::one(), b: BigInt::zero() });
        assert_eq!(
            g(1, 0).unwrap(),
            GValue { a: BigInt::from(4), b: BigInt::one() }
        );
        assert_eq!(g(2, 4).unwrap(), GValue { a: BigInt::one(), b: BigInt::zero() });
        assert_eq!(g(1, 2), Err(BoundsError::OutOfDomain { t: 1, r: 2 }));
        assert_eq!(loglog_f(1), 13.0);
        assert_eq!(loglog_f(2), 1106.0);
    }

    #[test]
    fn recurrence_holds() {
        for t in 1..=20 {
            assert!(check_recurrence(t), "recurrence fails at t={t}");
        }
    }

    #[test]
    fn tampered_value_breaks_identity() {
        let t = 3;
        let four = BigInt::from(4u32);
        let bad = GValue {
            a: g(t, 1).unwrap().a + BigInt::one(),
            b: g(t, 1).unwrap().b,
        };
        let parent = g(t, 0).unwrap();
        assert!(&four * &bad.a != parent.a);
    }

    #[test]
    fn numeric_matches_direct_formula() {
        for t in 1..=20usize {
            for r in 0..=3 * t - 2 {
                let e = (3 * t - 2 - r) as i32;
                let a = 4f64.powi(e);
                let direct = a + (a - 1.0) / 3.0 * (512.0 * t as f64).log2();
                let got = g(t, r).unwrap().eval(t);
                if direct.is_finite() && got.is_finite() {
                    assert!((got - direct).abs() <= 1e-9 * direct.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn growth_ratio_tends_to_64() {
        let mut prev = f64::INFINITY;
        for t in 3..=10 {
            let ratio = loglog_f(t) / loglog_f(t - 1);
            assert!(ratio > 64.0 && ratio < 68.0, "ratio {ratio} at t={t}");
            assert!(ratio < prev, "ratio not decreasing toward 64 at t={t}");
            prev = ratio;
        }
    }
}

//! Mathematical constants as rational approximations accurate to 10^-60.
//!
//! Every bound comparison in the crate uses these values; floats are only
//! produced for display.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::rational::{int, ratio, round_to_digits, to_f64, Rational};

/// Decimal digits retained by every constant.
pub const DIGITS: u32 = 60;

/// Absolute error bound of every constant: `10^-DIGITS` (rounding) plus a
/// negligible series tail.
pub fn precision() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u32).pow(DIGITS - 1))
}

/// `exp(x)` for |x| <= 4, by Taylor series truncated once terms drop below 10^-80.
pub fn exp_rational(x: &Rational) -> Rational {
    assert!(x.abs() <= int(4), "exp_rational is only used on small arguments");
    let cutoff = Rational::new(BigInt::one(), BigInt::from(10u32).pow(DIGITS + 20));
    let mut sum = int(1);
    let mut term = int(1);
    let mut k = 1i64;
    loop {
        term = round_to_digits(&(term * x / int(k)), DIGITS + 30);
        sum += &term;
        if term.abs() < cutoff {
            break;
        }
        k += 1;
    }
    round_to_digits(&sum, DIGITS)
}

struct Table {
    e: Rational,
    inv_e: Rational,
    inv_two_e: Rational,
    one_minus_inv_e: Rational,
    general_ratio: Rational,
    inv_sqrt_e: Rational,
}

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        let e = exp_rational(&int(1));
        let inv_e = exp_rational(&int(-1));
        let inv_two_e = round_to_digits(&(&inv_e / int(2)), DIGITS);
        let one_minus_inv_e = int(1) - &inv_e;
        let general_ratio = round_to_digits(&(int(2) * &e * &e / (&e - int(1))), DIGITS);
        let inv_sqrt_e = exp_rational(&ratio(-1, 2));
        Table {
            e,
            inv_e,
            inv_two_e,
            one_minus_inv_e,
            general_ratio,
            inv_sqrt_e,
        }
    })
}

pub fn e() -> &'static Rational {
    &table().e
}

pub fn inv_e() -> &'static Rational {
    &table().inv_e
}

/// `1/(2e)`, the uniformly dense guarantee `-p^2 ln p` at `p = e^{-1/2}`.
pub fn inv_two_e() -> &'static Rational {
    &table().inv_two_e
}

pub fn one_minus_inv_e() -> &'static Rational {
    &table().one_minus_inv_e
}

/// `2e^2/(e-1)`, the competitive ratio of the principal-minor algorithm.
pub fn general_ratio() -> &'static Rational {
    &table().general_ratio
}

/// `e^{-1/2}`, the default sampling probability of the threshold algorithm.
pub fn inv_sqrt_e() -> &'static Rational {
    &table().inv_sqrt_e
}

/// A named constant with its display value, as printed next to every bound check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct NamedConstant {
    pub name: String,
    pub approx: f64,
}

impl NamedConstant {
    pub fn new(name: impl Into<String>, value: &Rational) -> Self {
        Self {
            name: name.into(),
            approx: to_f64(value),
        }
    }
}

/// `floor(n / e)` computed against the high-precision value of `e`.
pub fn floor_div_e(n: usize) -> usize {
    let q = int(n as i64) / e();
    q.floor().to_integer().try_into().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Rational, b: f64) -> bool {
        (to_f64(a) - b).abs() < 1e-15
    }

    #[test]
    fn constants_match_f64_values() {
        assert!(close(e(), std::f64::consts::E));
        assert!(close(inv_e(), (-1f64).exp()));
        assert!(close(inv_two_e(), 0.5 * (-1f64).exp()));
        assert!(close(one_minus_inv_e(), 1.0 - (-1f64).exp()));
        assert!(close(inv_sqrt_e(), (-0.5f64).exp()));
        let e = std::f64::consts::E;
        assert!((to_f64(general_ratio()) - 2.0 * e * e / (e - 1.0)).abs() < 1e-13);
        assert!((to_f64(general_ratio()) - 8.600_52).abs() < 1e-5);
    }

    #[test]
    fn high_precision_identities() {
        // e * e^{-1} = 1 and (e^{-1/2})^2 = e^{-1} to far beyond f64 precision.
        let eps = precision() * int(10);
        assert!((e() * inv_e() - int(1)).abs() < eps);
        assert!((inv_sqrt_e() * inv_sqrt_e() - inv_e()).abs() < eps);
        // -p^2 ln p at p = e^{-1/2} equals p^2 / 2 = 1/(2e).
        assert!((inv_sqrt_e() * inv_sqrt_e() / int(2) - inv_two_e()).abs() < eps);
    }

    #[test]
    fn floor_of_n_over_e() {
        assert_eq!(floor_div_e(0), 0);
        assert_eq!(floor_div_e(1), 0);
        assert_eq!(floor_div_e(2), 0);
        assert_eq!(floor_div_e(3), 1);
        assert_eq!(floor_div_e(100), 36);
    }
}

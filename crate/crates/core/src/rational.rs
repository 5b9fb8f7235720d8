//! Exact rational arithmetic helpers shared across the crate.
//!
//! Sparsity ratios and codegree ratios fit comfortably in an `i64`-backed
//! rational; the exhaustive sampling oracle needs arbitrary precision, so
//! both flavours appear here together with a single JSON-facing
//! representation (`{num, den, float}`, numerator and denominator as decimal
//! strings so arbitrary-precision values survive serialization).

use num::bigint::BigInt;
use num::rational::{BigRational, Ratio};
use num::traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Machine-word rational used by graph analyzers.
pub type Rat64 = Ratio<i64>;

/// Arbitrary-precision rational used by the exact oracles.
pub type BigRat = BigRational;

/// Serializable rational: exact numerator/denominator plus an `f64` view.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
    pub float: f64,
}

impl From<&Rat64> for RationalJson {
    fn from(r: &Rat64) -> Self {
        Self {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
            float: rat64_to_f64(r),
        }
    }
}

impl From<&BigRat> for RationalJson {
    fn from(r: &BigRat) -> Self {
        Self {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
            float: r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

/// Exact `f64` view of a [`Rat64`].
pub fn rat64_to_f64(r: &Rat64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Widens a machine rational to arbitrary precision.
pub fn rat64_to_big(r: &Rat64) -> BigRat {
    BigRat::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Exact machine rational that serializes as `{num, den, float}`.
///
/// Report structs carry this wrapper so exact values survive into JSON
/// while in-process consumers keep full-precision arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactRatio(pub Rat64);

impl ExactRatio {
    pub fn value(&self) -> Rat64 {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        rat64_to_f64(&self.0)
    }
}

impl Serialize for ExactRatio {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RationalJson::from(&self.0).serialize(serializer)
    }
}

/// Binomial coefficient as a `u128`; saturates on overflow (never hit for
/// the desk-scale inputs this crate handles, but kept total for safety).
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Binomial coefficient as an exact big rational.
pub fn big_binomial(n: u64, k: u64) -> BigRat {
    if k > n {
        return BigRat::zero();
    }
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    let k = k.min(n - k);
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    BigRat::new(num, den)
}

/// Parses a rational from decimal (`0.19`), fraction (`19/100`), or integer
/// (`2`) notation, exactly.
pub fn parse_rational(text: &str) -> Option<Rat64> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: i64 = num.trim().parse().ok()?;
        let den: i64 = den.trim().parse().ok()?;
        if den == 0 {
            return None;
        }
        return Some(Rat64::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let sign = if whole.trim_start().starts_with('-') { -1 } else { 1 };
        let whole: i64 = if whole.is_empty() || whole == "-" {
            0
        } else {
            whole.parse().ok()?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits: i64 = frac.parse().ok()?;
        let scale = 10i64.checked_pow(frac.len() as u32)?;
        return Some(Rat64::from_integer(whole) + Rat64::new(sign * digits, scale));
    }
    text.parse::<i64>().ok().map(Rat64::from_integer)
}

/// Exact test of `value <= base^(3/2) * scale` for a non-negative rational
/// `base` and non-negative integers `value`, `scale`.
///
/// Squaring both sides gives `value^2 * den(base)^3 <= num(base)^3 * scale^2
/// * den(base)^0`… worked in full: with `base = a/b`, the inequality
/// `value <= (a/b)^{3/2} * scale` holds iff `value^2 * b^3 <= a^3 * scale^2`.
pub fn leq_three_halves_power(value: u128, base: &Rat64, scale: u128) -> bool {
    debug_assert!(!base.is_negative());
    if value == 0 {
        return true;
    }
    let a = BigInt::from(*base.numer());
    let b = BigInt::from(*base.denom());
    let lhs = BigInt::from(value).pow(2) * b.pow(3);
    let rhs = a.pow(3) * BigInt::from(scale).pow(2);
    lhs <= rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 2), 45);
        assert_eq!(binomial(10, 3), 120);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(big_binomial(10, 3), BigRat::from_integer(120.into()));
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("0.19"), Some(Rat64::new(19, 100)));
        assert_eq!(parse_rational("19/100"), Some(Rat64::new(19, 100)));
        assert_eq!(parse_rational("2"), Some(Rat64::from_integer(2)));
        assert_eq!(parse_rational("1.0"), Some(Rat64::from_integer(1)));
        assert_eq!(parse_rational("-0.5"), Some(Rat64::new(-1, 2)));
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn three_halves_power_test_is_exact() {
        // 1 <= 1^{3/2} * 1 and the Petersen boundary case: 1 <= 1 * C(3,3).
        assert!(leq_three_halves_power(1, &Rat64::from_integer(1), 1));
        // 2 <= (1/4)^{3/2} * 16 = 2 exactly.
        assert!(leq_three_halves_power(2, &Rat64::new(1, 4), 16));
        // 3 > 2: fails.
        assert!(!leq_three_halves_power(3, &Rat64::new(1, 4), 16));
    }

    #[test]
    fn rational_json_uses_strings() {
        let json = RationalJson::from(&Rat64::new(17, 45));
        assert_eq!(json.num, "17");
        assert_eq!(json.den, "45");
        assert!((json.float - 17.0 / 45.0).abs() < 1e-15);
    }
}

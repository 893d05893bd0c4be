//! Exact rational scalars and their canonical string form.
//!
//! [`Rational`] is `num_rational::BigRational`, which normalizes on
//! construction: positive denominator, reduced, zero stored as `0/1`.
//! The canonical text form is `p/q`, `-p/q`, or `p` when `q = 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `num / den`, normalized. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

pub fn format(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_vec(items: &[String]) -> Result<Vec<Rational>> {
    items.iter().map(|s| parse(s)).collect()
}

pub fn format_vec(items: &[Rational]) -> Vec<String> {
    items.iter().map(format).collect()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for a direct conversion
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Nearest rational with denominator `den` (ties away from zero).
pub fn round_to_denominator(x: f64, den: i64) -> Rational {
    let scaled = (x * den as f64).round();
    let num = BigInt::from(scaled as i64);
    Rational::new(num, BigInt::from(den))
}

pub fn clamp(x: Rational, lo: &Rational, hi: &Rational) -> Rational {
    if &x < lo {
        lo.clone()
    } else if &x > hi {
        hi.clone()
    } else {
        x
    }
}

/// Largest absolute numerator or denominator, as used by instance-size metrics.
pub fn magnitude(r: &Rational) -> BigInt {
    let n = r.numer().abs();
    let d = r.denom().clone();
    if n > d {
        n
    } else {
        d
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_forms() {
        assert_eq!(parse("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse("-4/2").unwrap(), int(-2));
        assert_eq!(parse(" 7 ").unwrap(), int(7));
        assert_eq!(parse("2/-4").unwrap(), ratio(-1, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("1.5").is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format(&ratio(6, 4)), "3/2");
        assert_eq!(format(&ratio(-6, 4)), "-3/2");
        assert_eq!(format(&int(5)), "5");
        assert_eq!(format(&int(0)), "0");
        assert_eq!(ratio(0, 7).denom(), &BigInt::one());
    }

    #[test]
    fn magnitude_picks_larger_part() {
        assert_eq!(magnitude(&ratio(9, 4)), BigInt::from(9));
        assert_eq!(magnitude(&ratio(-1, 8196)), BigInt::from(8196));
    }

    #[test]
    fn rounding_respects_denominator_cap() {
        let r = round_to_denominator(0.123456, 10_000);
        assert_eq!(r, ratio(1235, 10_000));
        assert!(r.denom() <= &BigInt::from(10_000));
    }
}

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Exact rational scalar. `BigRational` keeps values in lowest terms with a
/// positive denominator after every operation.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"` or `"p/q"`; rejects a zero denominator and anything that is
/// not a plain decimal integer pair.
pub fn parse_scalar(text: &str) -> Result<Scalar, ExactError> {
    let bad = || ExactError::Parse(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let digits_ok = |s: &str| {
        let body = s.strip_prefix('-').unwrap_or(s);
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits_ok(num) || !digits_ok(den) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ExactError::ZeroDenominator(text.to_string()));
    }
    Ok(Scalar::new(num, den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Exact conversion to a machine integer when the value is integral and fits.
pub fn to_i64(x: &Scalar) -> Option<i64> {
    use num_traits::ToPrimitive;
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn is_nonnegative(x: &Scalar) -> bool {
    !x.is_negative()
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_scalar("3").unwrap(), int(3));
        assert_eq!(parse_scalar("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(format_scalar(&parse_scalar("10/5").unwrap()), "2");
        assert_eq!(format_scalar(&ratio(1, -3)), "-1/3");
    }

    #[test]
    fn rejects_zero_denominator_and_junk() {
        assert!(matches!(
            parse_scalar("1/0"),
            Err(ExactError::ZeroDenominator(_))
        ));
        assert!(parse_scalar("1.5").is_err());
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("1/").is_err());
        assert!(parse_scalar("+1").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
    }
}

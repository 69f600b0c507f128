//! Exact rational arithmetic helpers.
//!
//! All bound values are `BigRational`s: arbitrary-precision fractions kept in
//! lowest terms with a positive denominator. Decimal strings are produced only
//! for display and never feed back into any computation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact fraction with arbitrary-precision integer parts.
pub type Rational = BigRational;

/// Shorthand for small constant fractions.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

/// Renders `r` as a fixed-point decimal with `precision` fractional digits,
/// rounding ties half-to-even.
pub fn decimal_string(r: &Rational, precision: usize) -> String {
    let scale = BigInt::from(10u8).pow(precision as u32);
    let scaled = r * Rational::from_integer(scale);
    let (mut q, rem) = scaled.numer().div_mod_floor(scaled.denom());
    // div_mod_floor gives 0 <= rem < denom; round the fractional remainder.
    let twice = 2 * rem;
    if &twice > scaled.denom() || (&twice == scaled.denom() && q.is_odd()) {
        q += 1;
    }
    let negative = q.is_negative();
    let digits = q.abs().to_string();
    let digits = if digits.len() <= precision {
        format!("{}{}", "0".repeat(precision + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int_part, frac_part) = digits.split_at(digits.len() - precision);
    let sign = if negative { "-" } else { "" };
    if precision == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Parses the `num/den` form produced by [`display_fraction`].
pub fn parse_fraction(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

pub fn display_fraction(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serializes a [`Rational`] as `{"num": "...", "den": "..."}` with decimal
/// strings, so arbitrary-precision values survive JSON round trips.
pub mod ratio_serde {
    use super::Rational;
    use num_bigint::BigInt;
    use serde::de::Error as DeError;
    use serde::ser::SerializeStruct;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Rational", 2)?;
        st.serialize_field("num", &r.numer().to_string())?;
        st.serialize_field("den", &r.denom().to_string())?;
        st.end()
    }

    #[derive(Deserialize)]
    struct Repr {
        num: String,
        den: String,
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let repr = Repr::deserialize(d)?;
        let num: BigInt = repr.num.parse().map_err(D::Error::custom)?;
        let den: BigInt = repr.den.parse().map_err(D::Error::custom)?;
        if den == BigInt::from(0) {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Rational::new(num, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rendering_rounds_half_even() {
        assert_eq!(decimal_string(&rat(90, 91), 8), "0.98901099");
        assert_eq!(decimal_string(&rat(875, 649), 8), "1.34822804");
        assert_eq!(decimal_string(&rat(3, 5), 8), "0.60000000");
        // exact ties go to the even last digit
        assert_eq!(decimal_string(&rat(1, 8), 2), "0.12");
        assert_eq!(decimal_string(&rat(3, 8), 2), "0.38");
        assert_eq!(decimal_string(&rat(-1, 8), 2), "-0.12");
        assert_eq!(decimal_string(&rat(7, 2), 0), "4");
        assert_eq!(decimal_string(&rat(5, 2), 0), "2");
    }

    #[test]
    fn fraction_display_parses_back() {
        let v = rat(875, 649);
        assert_eq!(display_fraction(&v), "875/649");
        assert_eq!(parse_fraction("875/649").unwrap(), v);
        assert_eq!(parse_fraction("0").unwrap(), rat_int(0));
        assert_eq!(parse_fraction("x"), None);
        assert_eq!(parse_fraction("1/0"), None);
    }

    #[test]
    fn stored_in_lowest_terms() {
        let v = Rational::new(num_bigint::BigInt::from(18), num_bigint::BigInt::from(-15));
        assert_eq!(v.numer().to_string(), "-6");
        assert_eq!(v.denom().to_string(), "5");
    }
}

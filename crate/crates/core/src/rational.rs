//! Parsing and formatting of exact rationals as `"p/q"` or plain integer strings.
//!
//! This is the wire form used everywhere rationals cross a JSON or CLI
//! boundary (weight certificates, region budgets).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};
use std::str::FromStr;

/// Parse `"3"`, `"-2"` or `"3/4"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational literal".to_string());
    }
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s).map_err(|e| format!("bad integer {s:?}: {e}"))?;
            Ok(BigRational::from_integer(n))
        }
        Some((num, den)) => {
            let n = BigInt::from_str(num.trim()).map_err(|e| format!("bad numerator {num:?}: {e}"))?;
            let d = BigInt::from_str(den.trim()).map_err(|e| format!("bad denominator {den:?}: {e}"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Format a rational as `"p/q"`, or just `"p"` when the denominator is 1.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse a comma-separated list of rationals, e.g. `"1,2,3"` or `"1/2,3"`.
pub fn parse_rational_csv(s: &str) -> Result<Vec<BigRational>, String> {
    s.split(',').map(parse_rational).collect()
}

/// True iff every entry is strictly positive.
pub fn all_positive(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.is_positive())
}

/// Serde adapter: (de)serialize `Vec<BigRational>` as a vector of strings.
pub mod ratio_vec_serde {
    use super::*;
    use serde::de::Error as DeError;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<BigRational>, D::Error> {
        let raw = Vec::<String>::deserialize(de)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), BigRational::from_integer(3.into()));
        assert_eq!(
            parse_rational("3/4").unwrap(),
            BigRational::new(3.into(), 4.into())
        );
        assert_eq!(parse_rational(" -2/6 ").unwrap(), BigRational::new((-1).into(), 3.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats_reduced_forms() {
        assert_eq!(format_rational(&BigRational::one()), "1");
        assert_eq!(format_rational(&BigRational::new(6.into(), 4.into())), "3/2");
    }

    #[test]
    fn csv_round_trip() {
        let v = parse_rational_csv("1,1/2,5").unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(format_rational(&v[1]), "1/2");
    }
}

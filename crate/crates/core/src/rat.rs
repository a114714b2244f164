//! Rational scalars and their string form (`"p/q"` or `"p"`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational number; always reduced with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratq(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
    }
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Integer powers `c^e` for `e >= 0`.
pub fn rat_pow(c: &Rat, e: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("6/4").unwrap(), ratq(3, 2));
        assert_eq!(parse_rat(" -7 ").unwrap(), rat(-7));
        assert_eq!(format_rat(&ratq(-2, 4)), "-1/2");
        assert_eq!(format_rat(&rat(5)), "5");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn denominator_positive() {
        let r = parse_rat("3/-6").unwrap();
        assert!(r.denom() > &BigInt::zero());
        assert_eq!(r, ratq(-1, 2));
    }
}

//! Exact rational scalars. Everything in this crate computes over `Rat`;
//! no floating point is used anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Rat = BigRational;

/// Integer as a rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair.
pub fn rfrac(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Render a rational as `n` or `n/d`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `n` or `n/d` (optionally signed).
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(rat_from_str("-3/6").unwrap(), rfrac(-1, 2));
        assert_eq!(rat_to_string(&rfrac(4, 2)), "2");
        assert_eq!(rat_to_string(&rfrac(-1, 3)), "-1/3");
        assert!(rat_from_str("1/0").is_none());
    }
}

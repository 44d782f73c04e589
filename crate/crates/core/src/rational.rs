//! Exact rational helpers on top of `num_rational::BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number. Always normalized: positive denominator, gcd 1.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-1.25"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::input("empty rational"));
    }
    if let Some((n, d)) = t.split_once('/') {
        let num: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::input(format!("bad numerator in {t:?}")))?;
        let den: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::input(format!("bad denominator in {t:?}")))?;
        if den.is_zero() {
            return Err(Error::input(format!("zero denominator in {t:?}")));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::input(format!("bad decimal {t:?}")));
        }
        let num: BigInt = digits.parse().unwrap();
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let q = BigRational::new(num, den);
        return Ok(if neg { -q } else { q });
    }
    let n: BigInt = t
        .parse()
        .map_err(|_| Error::input(format!("bad rational {t:?}")))?;
    Ok(BigRational::from_integer(n))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // numerator/denominator beyond f64 range: scale both down
        let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
        let n = (q.numer() >> shift as usize).to_f64().unwrap_or(0.0);
        let d = (q.denom() >> shift as usize).to_f64().unwrap_or(1.0);
        n / d
    })
}

/// Closest-below dyadic-free conversion used for rational search points.
pub fn from_f64(x: f64) -> Rational {
    BigRational::from_float(x).unwrap_or_else(zero)
}

pub fn pow(q: &Rational, k: u32) -> Rational {
    num_traits::pow(q.clone(), k as usize)
}

/// Exact `n`-th root when both numerator and denominator are perfect powers.
pub fn exact_root(q: &Rational, n: u32) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let a = q.numer().nth_root(n);
    let b = q.denom().nth_root(n);
    if num_traits::pow(a.clone(), n as usize) == *q.numer()
        && num_traits::pow(b.clone(), n as usize) == *q.denom()
    {
        Some(BigRational::new(a, b))
    } else {
        None
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Scales a rational vector to a primitive integer vector (same ray).
pub fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// A rational in a data file: a `"p/q"` string or a JSON integer.
#[derive(serde::Deserialize)]
#[serde(untagged)]
pub(crate) enum RationalText {
    Text(String),
    Int(i64),
}

impl RationalText {
    pub(crate) fn parse<E: serde::de::Error>(&self) -> std::result::Result<Rational, E> {
        match self {
            RationalText::Text(t) => parse_rational(t).map_err(E::custom),
            RationalText::Int(n) => Ok(Rational::from_integer((*n).into())),
        }
    }
}

pub(crate) mod serde_rational {
    use super::{fmt_rational, Rational, RationalText};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        RationalText::deserialize(d)?.parse()
    }
}

pub(crate) mod serde_rational_vec {
    use super::{fmt_rational, Rational, RationalText};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(fmt_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<RationalText>::deserialize(d)?.iter().map(RationalText::parse).collect()
    }
}

pub(crate) mod serde_rational_opt {
    use super::{fmt_rational, Rational, RationalText};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        q.as_ref().map(fmt_rational).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<RationalText>::deserialize(d)?.map(|t| t.parse()).transpose()
    }
}

pub(crate) mod serde_rational_matrix {
    use super::{fmt_rational, Rational, RationalText};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        m.iter()
            .map(|row| row.iter().map(fmt_rational).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        Vec::<Vec<RationalText>>::deserialize(d)?
            .iter()
            .map(|row| row.iter().map(RationalText::parse).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational(" 2/-4 ").unwrap(), rat(-1, 2));
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn exact_roots() {
        assert_eq!(exact_root(&rat(25, 16), 2), Some(rat(5, 4)));
        assert_eq!(exact_root(&rat(8, 27), 3), Some(rat(2, 3)));
        assert_eq!(exact_root(&int(2), 2), None);
    }

    #[test]
    fn primitive_vectors() {
        let v = primitive(&[rat(1, 2), rat(-3, 4), int(0)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
    }
}

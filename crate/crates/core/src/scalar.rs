//! Exact scalar abstraction.
//!
//! All geometry in this crate is decided by exact sign tests, so the scalar
//! type must be an exact ordered field.  The [`Scalar`] trait is implemented
//! for every `num_rational::Ratio<I>` over a signed integer type `I`; the
//! canonical instantiation is [`Rational`](crate::Rational) (arbitrary
//! precision).  Fixed-width instantiations such as `Ratio<i128>` are useful
//! for small inputs but panic on overflow.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact ordered field element.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + PartialOrd
    + Ord
    + Hash
    + Num
    + Signed
    + Send
    + Sync
    + 'static
{
    /// Embeds a machine integer.
    fn from_int(value: i64) -> Self;

    /// Parses an integer, a `"p/q"` fraction or a finite decimal such as
    /// `"-1.25"` or `"3e-2"`, exactly.
    fn parse_exact(text: &str) -> Result<Self>;

    /// Nearest `f64`, for presentation only.
    fn to_f64_lossy(&self) -> f64;

    /// True when the value is an integer.
    fn is_integral(&self) -> bool;

    /// Rescales `v` by a positive factor so that it becomes a primitive
    /// integer vector (coprime integer entries).  The zero vector is returned
    /// unchanged.
    fn primitive(v: &[Self]) -> Vec<Self>;
}

impl<I> Scalar for Ratio<I>
where
    I: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + FromStr
        + Send
        + Sync
        + 'static,
{
    fn from_int(value: i64) -> Self {
        let i = I::from_i64(value).expect("integer does not fit the scalar's integer type");
        Ratio::from_integer(i)
    }

    fn parse_exact(text: &str) -> Result<Self> {
        parse_ratio::<I>(text)
    }

    fn to_f64_lossy(&self) -> f64 {
        let n = self.numer().to_f64().unwrap_or(f64::NAN);
        let d = self.denom().to_f64().unwrap_or(f64::NAN);
        if n.is_finite() && d.is_finite() {
            n / d
        } else {
            // Very large operands: fall back to a digit-count estimate.
            let ns = self.numer().to_string();
            let ds = self.denom().to_string();
            approximate_from_strings(&ns, &ds)
        }
    }

    fn is_integral(&self) -> bool {
        self.denom().is_one()
    }

    fn primitive(v: &[Self]) -> Vec<Self> {
        if v.iter().all(|x| x.is_zero()) {
            return v.to_vec();
        }
        let lcm = v.iter().fold(I::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<I> = v
            .iter()
            .map(|x| x.numer().clone() * (lcm.clone() / x.denom().clone()))
            .collect();
        let gcd = ints.iter().fold(I::zero(), |acc, x| acc.gcd(x));
        ints.into_iter()
            .map(|x| Ratio::from_integer(x / gcd.clone()))
            .collect()
    }
}

fn approximate_from_strings(numer: &str, denom: &str) -> f64 {
    fn mantissa(s: &str) -> (f64, i32) {
        let (neg, digits) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let head: String = digits.chars().take(17).collect();
        let m: f64 = head.parse().unwrap_or(0.0);
        let exp = digits.len() as i32 - head.len() as i32;
        (if neg { -m } else { m }, exp)
    }
    let (mn, en) = mantissa(numer);
    let (md, ed) = mantissa(denom);
    (mn / md) * 10f64.powi(en - ed)
}

fn parse_ratio<I>(text: &str) -> Result<Ratio<I>>
where
    I: Integer + Signed + Clone + FromPrimitive,
{
    let err = || Error::Parse(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_decimal::<I>(p.trim()).ok_or_else(err)?;
        let q = parse_decimal::<I>(q.trim()).ok_or_else(err)?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(p / q);
    }
    parse_decimal::<I>(s).ok_or_else(err)
}

/// Parses `[+-]digits[.digits][(e|E)[+-]digits]` exactly.
fn parse_decimal<I>(s: &str) -> Option<Ratio<I>>
where
    I: Integer + Signed + Clone + FromPrimitive,
{
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, body) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((a, b)) => (a, b),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = I::from_str_radix(&digits, 10).ok()?;
    let ten = I::from_u8(10)?;
    let scale = exponent - frac_part.len() as i32;
    let pow = num_traits::pow(ten, scale.unsigned_abs() as usize);
    let value = if scale >= 0 {
        Ratio::from_integer(numer * pow)
    } else {
        Ratio::new(numer, pow)
    };
    Some(if negative { -value } else { value })
}

/// Dot product of two equally long slices.
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Componentwise difference `a - b`.
pub fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() - y.clone())
        .collect()
}

/// Componentwise sum `a + b`.
pub fn add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() + y.clone())
        .collect()
}

/// Scalar multiple `k * a`.
pub fn scale<T: Scalar>(k: &T, a: &[T]) -> Vec<T> {
    a.iter().map(|x| k.clone() * x.clone()).collect()
}

/// Converts a slice of machine integers into scalars.
pub fn ints<T: Scalar>(values: &[i64]) -> Vec<T> {
    values.iter().map(|&v| T::from_int(v)).collect()
}

/// Builds the exact fraction `p/q`.
pub fn frac<T: Scalar>(p: i64, q: i64) -> T {
    assert!(q != 0, "zero denominator");
    T::from_int(p) / T::from_int(q)
}

/// Renders a scalar as an integer or `"p/q"` string.
pub fn to_text<T: Scalar>(value: &T) -> String {
    value.to_string()
}

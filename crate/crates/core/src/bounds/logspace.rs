//! Natural logarithms as outward-rounded dyadic intervals.
//!
//! A [`LogValue`] holds `[lo, hi] / 2^bits`. Every operation rounds `lo` down
//! and `hi` up, so the true value always lies in the interval.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Extra binary digits carried beyond the requested decimal precision.
const GUARD_BITS: u32 = 64;

pub const DEFAULT_DIGITS: u32 = 50;

/// Working precision in bits for `digits` significant decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    // log2(10) < 3.3220
    (digits * 33220).div_ceil(10000) + GUARD_BITS
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogValue {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// `[floor, ceil]` of `2^bits · atanh(a/b)` for `0 ≤ a/b ≤ 1/3`.
fn atanh_scaled(a: &BigInt, b: &BigInt, bits: u32) -> (BigInt, BigInt) {
    if a.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let scale = BigInt::one() << bits;
    let a2 = a * a;
    let b2 = b * b;
    let mut num = a * &scale;
    let mut den = b.clone();
    let mut k = BigInt::one();
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    loop {
        // term = num / (den · k) = 2^bits · (a/b)^k / k
        let d = &den * &k;
        lo += floor_div(&num, &d);
        hi += ceil_div(&num, &d);
        num *= &a2;
        den *= &b2;
        k += 2;
        if num < &den * &k {
            break;
        }
    }
    // remaining terms are bounded by the geometric tail t_k / (1 - (a/b)²)
    let tail_num = num * &b2;
    let tail_den = den * &k * (&b2 - &a2);
    hi += ceil_div(&tail_num, &tail_den);
    (lo, hi)
}

fn ln2_scaled(bits: u32) -> (BigInt, BigInt) {
    let (lo, hi) = atanh_scaled(&BigInt::one(), &BigInt::from(3), bits);
    (lo * 2, hi * 2)
}

/// `[floor, ceil]` of `2^bits · ln(n)` for a positive integer `n`.
fn ln_int_scaled(n: &BigInt, bits: u32) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "logarithm of a non-positive integer");
    let k = n.bits() - 1;
    let pow = BigInt::one() << k;
    // n = 2^k · m with m ∈ [1, 2); ln m = 2·atanh((m-1)/(m+1))
    let (alo, ahi) = atanh_scaled(&(n - &pow), &(n + &pow), bits);
    let (l2lo, l2hi) = ln2_scaled(bits);
    let k = BigInt::from(k);
    (&k * l2lo + alo * 2, &k * l2hi + ahi * 2)
}

impl LogValue {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// The exact rational `q`, enclosed at `bits` of precision.
    pub fn from_rational(q: &BigRational, bits: u32) -> Self {
        let s = q * BigRational::from_integer(BigInt::one() << bits);
        LogValue { lo: s.floor().to_integer(), hi: s.ceil().to_integer(), bits }
    }

    pub fn from_int(n: &BigInt, bits: u32) -> Self {
        LogValue::from_rational(&BigRational::from_integer(n.clone()), bits)
    }

    /// `ln n` for a positive integer.
    pub fn ln_int(n: &BigInt, bits: u32) -> Self {
        let (lo, hi) = ln_int_scaled(n, bits);
        LogValue { lo, hi, bits }
    }

    pub fn ln_u64(n: u64, bits: u32) -> Self {
        LogValue::ln_int(&BigInt::from(n), bits)
    }

    /// `ln q` for a positive rational.
    pub fn ln_rational(q: &BigRational, bits: u32) -> Self {
        assert!(q.is_positive(), "logarithm of a non-positive rational");
        LogValue::ln_int(q.numer(), bits).sub(&LogValue::ln_int(q.denom(), bits))
    }

    /// `ln x` for `x` in this (positive) interval.
    pub fn ln(&self) -> Self {
        assert!(self.lo.is_positive(), "logarithm of an interval reaching 0");
        let den = BigInt::one() << self.bits;
        let lo = LogValue::ln_rational(&BigRational::new(self.lo.clone(), den.clone()), self.bits);
        let hi = LogValue::ln_rational(&BigRational::new(self.hi.clone(), den), self.bits);
        LogValue { lo: lo.lo, hi: hi.hi, bits: self.bits }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.bits, o.bits, "mixed precision");
        LogValue { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, bits: self.bits }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.bits, o.bits, "mixed precision");
        LogValue { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo, bits: self.bits }
    }

    /// Multiplication by a non-negative integer.
    pub fn scale(&self, k: &BigInt) -> Self {
        assert!(!k.is_negative(), "negative scale factor");
        LogValue { lo: &self.lo * k, hi: &self.hi * k, bits: self.bits }
    }

    pub fn scale_u64(&self, k: u64) -> Self {
        self.scale(&BigInt::from(k))
    }

    pub fn max(&self, o: &Self) -> Self {
        assert_eq!(self.bits, o.bits, "mixed precision");
        LogValue { lo: (&self.lo).max(&o.lo).clone(), hi: (&self.hi).max(&o.hi).clone(), bits: self.bits }
    }

    pub fn lo(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.bits)
    }

    pub fn hi(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.bits)
    }

    pub fn width(&self) -> BigRational {
        self.hi() - self.lo()
    }

    pub fn midpoint(&self) -> BigRational {
        (self.lo() + self.hi()) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        self.lo() <= *q && *q <= self.hi()
    }

    /// Certified comparison: `Some` only when the intervals are disjoint,
    /// or both are the same single point.
    pub fn certified_cmp(&self, o: &Self) -> Option<Ordering> {
        if self.hi() < o.lo() {
            Some(Ordering::Less)
        } else if o.hi() < self.lo() {
            Some(Ordering::Greater)
        } else if self.lo() == self.hi() && o.lo() == o.hi() && self.lo() == o.lo() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// True only when every point of `self` is `≤` every point of `o`.
    pub fn certainly_le(&self, o: &Self) -> bool {
        self.hi() <= o.lo()
    }

    /// Decimal rendering with `frac_digits` digits after the point, `lo`
    /// rounded down and `hi` rounded up.
    pub fn to_decimal(&self, frac_digits: u32) -> DecimalInterval {
        let ten = BigInt::from(10).pow(frac_digits);
        let den = BigInt::one() << self.bits;
        let lo = floor_div(&(&self.lo * &ten), &den);
        let hi = ceil_div(&(&self.hi * &ten), &den);
        DecimalInterval { lo: render_fixed(&lo, frac_digits), hi: render_fixed(&hi, frac_digits), digits: frac_digits }
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.to_decimal(12);
        write!(f, "[{}, {}]", d.lo, d.hi)
    }
}

/// A log interval rendered as decimal strings, with the number of digits
/// after the decimal point as its precision tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecimalInterval {
    pub lo: String,
    pub hi: String,
    pub digits: u32,
}

fn render_fixed(scaled: &BigInt, frac_digits: u32) -> String {
    let neg = scaled.is_negative();
    let s = scaled.abs().to_string();
    let fd = frac_digits as usize;
    let body = if fd == 0 {
        s
    } else {
        let padded = format!("{s:0>width$}", width = fd + 1);
        let (int, frac) = padded.split_at(padded.len() - fd);
        format!("{int}.{frac}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> BigRational {
        // parse a decimal literal exactly
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        let den = BigInt::from(10).pow(frac.len() as u32);
        let num: BigInt = format!("{int}{frac}").parse().unwrap();
        BigRational::new(num, den)
    }

    #[test]
    fn ln_encloses_reference_values() {
        let bits = bits_for_digits(40);
        // mpmath, 45 digits
        let cases = [
            (2u64, "0.6931471805599453094172321214581765680755001344"),
            (14, "2.639057329615258614522584864901356297712584864"),
            (1000, "6.907755278982137052053974364053092622803304466"),
        ];
        for (n, want) in cases {
            let v = LogValue::ln_u64(n, bits);
            let w = r(want);
            let tol = BigRational::new(BigInt::one(), BigInt::from(10).pow(40));
            assert!(v.lo() <= &w + &tol && &w - &tol <= v.hi(), "ln {n}");
            assert!(v.width() < tol);
        }
        assert_eq!(LogValue::ln_u64(1, bits).width(), BigRational::zero());
        assert!(LogValue::ln_u64(1, bits).contains(&BigRational::zero()));
    }

    #[test]
    fn ln_of_rationals_and_intervals() {
        let bits = bits_for_digits(30);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let v = LogValue::ln_rational(&half, bits);
        let ln2 = LogValue::ln_u64(2, bits);
        assert!(v.hi() <= -ln2.lo() && -ln2.hi() <= v.lo());
        let x = LogValue::from_int(&BigInt::from(14), bits).ln();
        assert!(x.contains(&LogValue::ln_u64(14, bits).midpoint()));
    }

    #[test]
    fn rendering_rounds_outward() {
        let v = LogValue::from_rational(&BigRational::new(BigInt::from(-1), BigInt::from(3)), 80);
        let d = v.to_decimal(5);
        assert_eq!(d.lo, "-0.33334");
        assert_eq!(d.hi, "-0.33333");
        let v = LogValue::from_rational(&BigRational::new(BigInt::from(5), BigInt::from(4)), 10);
        assert_eq!(v.to_decimal(2).lo, "1.25");
        assert_eq!(v.to_decimal(0).hi, "2");
    }

    #[test]
    fn certified_comparisons() {
        let bits = 100;
        let a = LogValue::ln_u64(10, bits);
        let b = LogValue::ln_u64(11, bits);
        assert!(a.certainly_le(&b));
        assert!(!b.certainly_le(&a));
        assert_eq!(a.certified_cmp(&b), Some(Ordering::Less));
        assert_eq!(a.certified_cmp(&a), None);
    }
}

//! Binary floating point with a big-integer mantissa.
//!
//! A value is `mantissa * 2^exp`, rounded to `prec` significant bits after
//! every operation. Only what the asymptotic checks need is provided.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub const DEFAULT_PRECISION: u32 = 256;

#[derive(Clone, Debug)]
pub struct BigFloat {
    mantissa: BigInt,
    exp: i64,
    prec: u32,
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat {
            mantissa: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn from_bigint(m: BigInt, prec: u32) -> Self {
        Self::from_parts(m, 0, prec)
    }

    pub fn from_biguint(m: BigUint, prec: u32) -> Self {
        Self::from_parts(BigInt::from(m), 0, prec)
    }

    /// `m * 2^exp`, rounded to `prec` bits.
    pub fn from_parts(m: BigInt, exp: i64, prec: u32) -> Self {
        let mut v = BigFloat {
            mantissa: m,
            exp,
            prec: prec.max(2),
        };
        v.normalize();
        v
    }

    /// `num / den` rounded to `prec` bits.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero(), "division by zero");
        if num.is_zero() {
            return Self::zero(prec);
        }
        let shift = prec as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let shift = shift.max(0);
        let q = (num << shift as usize) / den;
        Self::from_parts(q, -shift, prec)
    }

    /// `2^(1/root)` rounded to `prec` bits.
    pub fn root_of_two(root: u32, prec: u32) -> Self {
        let guard = prec as u64 + 8;
        let radicand = BigUint::one() << (guard * root as u64 + 1);
        let r = radicand.nth_root(root);
        Self::from_parts(BigInt::from(r), -(guard as i64), prec)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exp = 0;
            return;
        }
        let bits = self.mantissa.bits();
        if bits > self.prec as u64 {
            let drop = bits - self.prec as u64;
            let negative = self.mantissa.is_negative();
            let mut mag = self.mantissa.magnitude().clone();
            let half = BigUint::one() << (drop - 1);
            mag += half;
            mag >>= drop as usize;
            self.mantissa =
                BigInt::from_biguint(if negative { Sign::Minus } else { Sign::Plus }, mag);
            self.exp += drop as i64;
        }
    }

    /// Multiplies by `2^k` exactly.
    pub fn ldexp(&self, k: i64) -> Self {
        let mut v = self.clone();
        if !v.is_zero() {
            v.exp += k;
        }
        v
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_parts(
            &self.mantissa * &other.mantissa,
            self.exp + other.exp,
            self.prec.max(other.prec),
        )
    }

    pub fn div(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        let q = Self::from_ratio(&self.mantissa, &other.mantissa, prec);
        q.ldexp(self.exp - other.exp)
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        if self.is_zero() {
            return Self::from_parts(other.mantissa.clone(), other.exp, prec);
        }
        if other.is_zero() {
            return Self::from_parts(self.mantissa.clone(), self.exp, prec);
        }
        let e = self.exp.min(other.exp);
        let a = &self.mantissa << (self.exp - e) as usize;
        let b = &other.mantissa << (other.exp - e) as usize;
        Self::from_parts(a + b, e, prec)
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mantissa: -self.mantissa.clone(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mantissa: self.mantissa.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits() as i64;
        let keep = bits.min(60);
        let top = (&self.mantissa >> (bits - keep) as usize)
            .to_f64()
            .expect("60-bit value");
        top * 2f64.powi((self.exp + bits - keep) as i32)
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        Self::from_parts(self.mantissa.clone(), self.exp, prec)
    }

    /// Decimal rendering rounded half away from zero to `digits` places.
    pub fn to_rounded_decimal(&self, digits: usize) -> String {
        let half = BigFloat::from_ratio(
            &BigInt::one(),
            &(BigInt::from(10u32).pow(digits as u32) * 2),
            self.prec + 8,
        );
        let nudged = if self.mantissa.is_negative() {
            self.sub(&half)
        } else {
            self.add(&half)
        };
        nudged.with_precision(self.prec + 8).to_decimal(digits)
    }

    /// Scientific notation with `digits` significant digits, truncated,
    /// e.g. `1.2345e-7`.
    pub fn to_scientific(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let digits = digits.max(1);
        let mag = self.mantissa.magnitude();
        // decimal exponent estimate, corrected below
        let log2 = mag.bits() as f64 + self.exp as f64;
        let mut e10 = (log2 * std::f64::consts::LOG10_2).floor() as i64;
        loop {
            let shift = digits as i64 - 1 - e10;
            let mut num = mag.clone();
            let mut den = BigUint::one();
            if shift >= 0 {
                num *= BigUint::from(10u32).pow(shift as u32);
            } else {
                den *= BigUint::from(10u32).pow((-shift) as u32);
            }
            if self.exp >= 0 {
                num <<= self.exp as usize;
            } else {
                den <<= (-self.exp) as usize;
            }
            let q = num / den;
            let text = q.to_str_radix(10);
            if text.len() > digits {
                e10 += 1;
                continue;
            }
            if text.len() < digits {
                e10 -= 1;
                continue;
            }
            let sign = if self.mantissa.is_negative() { "-" } else { "" };
            let (head, tail) = text.split_at(1);
            return if tail.is_empty() {
                format!("{sign}{head}e{e10}")
            } else {
                format!("{sign}{head}.{tail}e{e10}")
            };
        }
    }

    /// Decimal rendering with exactly `digits` digits after the point,
    /// truncated toward zero.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigUint::from(10u32).pow(digits as u32);
        let mag = self.mantissa.magnitude();
        let scaled = if self.exp >= 0 {
            (mag << self.exp as usize) * &scale
        } else {
            (mag * &scale) >> (-self.exp) as usize
        };
        let negative = self.mantissa.is_negative() && !scaled.is_zero();
        let mut text = scaled.to_str_radix(10);
        if digits > 0 {
            if text.len() <= digits {
                text = "0".repeat(digits + 1 - text.len()) + &text;
            }
            text.insert(text.len() - digits, '.');
        }
        if negative {
            text.insert(0, '-');
        }
        text
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    /// Exact comparison of the represented values.
    fn cmp(&self, other: &Self) -> Ordering {
        if self.is_zero() || other.is_zero() {
            return self.mantissa.sign().cmp(&other.mantissa.sign());
        }
        let e = self.exp.min(other.exp);
        let a = &self.mantissa << (self.exp - e) as usize;
        let b = &other.mantissa << (other.exp - e) as usize;
        a.cmp(&b)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(12);
        f.write_str(&self.to_decimal(digits))
    }
}

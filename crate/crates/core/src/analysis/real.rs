//! A small owned wrapper over `astro_float::BigFloat` carrying its working
//! precision, so fixed-point code can be written with ordinary operators.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

const RM: RoundingMode = RoundingMode::ToEven;

/// Default number of significant decimal digits for fixed-point work.
pub const DEFAULT_DIGITS: usize = 60;

/// Binary precision for `digits` decimal digits plus guard bits.
pub fn bits_for_digits(digits: usize) -> usize {
    let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64;
    bits.div_ceil(64) * 64
}

#[derive(Clone, Debug)]
pub struct Real {
    v: BigFloat,
    p: usize,
}

impl Real {
    pub fn from_f64(x: f64, digits: usize) -> Self {
        let p = bits_for_digits(digits);
        Real {
            v: BigFloat::from_f64(x, p),
            p,
        }
    }

    pub fn from_u64(x: u64, digits: usize) -> Self {
        let p = bits_for_digits(digits);
        Real {
            v: BigFloat::from_u64(x, p),
            p,
        }
    }

    /// Parses a decimal literal such as `0.618` or `1e-3`.
    pub fn parse(text: &str, digits: usize) -> Option<Self> {
        let p = bits_for_digits(digits);
        let mut cc = Consts::new().ok()?;
        let v = BigFloat::parse(text.trim(), Radix::Dec, p, RM, &mut cc);
        if v.is_nan() || v.is_inf() {
            return None;
        }
        Some(Real { v, p })
    }

    /// A value with the same precision as `self`.
    pub fn lift(&self, x: f64) -> Self {
        Real {
            v: BigFloat::from_f64(x, self.p),
            p: self.p,
        }
    }

    pub fn int(&self, x: u64) -> Self {
        Real {
            v: BigFloat::from_u64(x, self.p),
            p: self.p,
        }
    }

    pub fn precision_bits(&self) -> usize {
        self.p
    }

    pub fn digits(&self) -> usize {
        ((self.p - 64) as f64 / std::f64::consts::LOG2_10).floor() as usize
    }

    pub fn sqrt(&self) -> Self {
        Real {
            v: self.v.sqrt(self.p, RM),
            p: self.p,
        }
    }

    pub fn abs(&self) -> Self {
        Real {
            v: self.v.abs(),
            p: self.p,
        }
    }

    pub fn powi(&self, n: usize) -> Self {
        Real {
            v: self.v.powi(n, self.p, RM),
            p: self.p,
        }
    }

    pub fn recip(&self) -> Self {
        self.int(1) / self
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().unwrap_or(f64::NAN)
    }

    /// Scientific notation with `sig` significant digits, e.g. `6.180e-1`.
    pub fn to_sci(&self, sig: usize) -> String {
        let Some((neg, digits, exp)) = self.decompose() else {
            return "0".into();
        };
        let (digits, exp) = round_digits(&digits, exp, sig.max(1));
        let sign = if neg { "-" } else { "" };
        let (head, tail) = digits.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        }
    }

    /// Plain decimal notation rounded to `sig` significant digits.
    pub fn to_decimal(&self, sig: usize) -> String {
        let Some((neg, digits, exp)) = self.decompose() else {
            return "0".into();
        };
        let (digits, exp) = round_digits(&digits, exp, sig.max(1));
        let sign = if neg { "-" } else { "" };
        let body = if exp < 0 {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        } else {
            let point = exp as usize + 1;
            if digits.len() <= point {
                format!("{digits}{}", "0".repeat(point - digits.len()))
            } else {
                format!("{}.{}", &digits[..point], &digits[point..])
            }
        };
        let body = if body.contains('.') {
            body.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            body
        };
        format!("{sign}{body}")
    }

    /// (negative, significant digits, decimal exponent of the first digit).
    fn decompose(&self) -> Option<(bool, String, i64)> {
        if self.v.is_zero() {
            return None;
        }
        let text = self.v.to_string();
        let (neg, text) = match text.strip_prefix('-') {
            Some(t) => (true, t),
            None => (false, text.as_str()),
        };
        let (mant, exp) = text.split_once('e').unwrap_or((text, "0"));
        let exp: i64 = exp.parse().ok()?;
        let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
        let all = format!("{int}{frac}");
        let lead = all.len() - all.trim_start_matches('0').len();
        let digits = all.trim_start_matches('0').to_string();
        if digits.is_empty() {
            return None;
        }
        Some((neg, digits, exp + int.len() as i64 - 1 - lead as i64))
    }
}

fn round_digits(digits: &str, exp: i64, sig: usize) -> (String, i64) {
    if digits.len() <= sig {
        return (digits.to_string(), exp);
    }
    let mut kept: Vec<u8> = digits.as_bytes()[..sig].iter().map(|b| b - b'0').collect();
    if digits.as_bytes()[sig] >= b'5' {
        let mut i = sig;
        loop {
            if i == 0 {
                kept.insert(0, 1);
                kept.pop();
                return (kept.iter().map(|d| (d + b'0') as char).collect(), exp + 1);
            }
            i -= 1;
            if kept[i] == 9 {
                kept[i] = 0;
            } else {
                kept[i] += 1;
                break;
            }
        }
    }
    (kept.iter().map(|d| (d + b'0') as char).collect(), exp)
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let p = self.p.max(rhs.p);
                Real {
                    v: self.v.$m(&rhs.v, p, RM),
                    p,
                }
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                (&self).$m(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            v: self.v.clone().neg(),
            p: self.p,
        }
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

impl serde::Serialize for Real {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_sci(self.digits().min(50)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        let x = Real::parse("0.61803398874989484820458683436563811772", 60).unwrap();
        assert_eq!(x.to_decimal(12), "0.61803398875");
        assert_eq!(x.to_decimal(13), "0.6180339887499");
        assert_eq!(x.to_sci(4), "6.180e-1");
        assert_eq!(Real::from_u64(1234, 40).to_decimal(3), "1230");
        assert_eq!(Real::from_f64(-12345.5, 40).to_decimal(6), "-12345.5");
        assert_eq!(Real::from_f64(0.00999996, 40).to_decimal(4), "0.01");
        assert_eq!(Real::from_u64(0, 40).to_decimal(4), "0");
        assert!((x.to_f64() - 0.6180339887498949).abs() < 1e-16);
    }

    #[test]
    fn arithmetic_and_order() {
        let two = Real::from_u64(2, 60);
        let r = two.sqrt();
        let back = &r * &r - &two;
        assert!(back.abs() < two.lift(1e-55));
        assert!(r > two.lift(1.414) && r < two.lift(1.415));
        assert_eq!(two.int(3) / two.int(4), two.lift(0.75));
        assert!((-&two).is_negative());
    }
}

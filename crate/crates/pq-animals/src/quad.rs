//! Exact arithmetic in a real quadratic field.
//!
//! A [`QuadExt`] is a number `a + b*sqrt(d)` with rational `a`, `b` and a fixed
//! positive non-square integer discriminant `d`. Values from different fields
//! never mix: every binary operation checks that the discriminants agree.
//!
//! Signs, comparisons and floors are decided with integer arithmetic only
//! (cross-multiplication and integer square roots). No floating point is
//! involved anywhere in this module, so results are exact at any magnitude.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: BigRational,
    b: BigRational,
    d: BigInt,
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Compare an integer `y` against `b*sqrt(d)` (`b` must be nonzero).
///
/// Equality cannot occur for a non-square `d`, so the result is always
/// strict in practice; `Ordering::Equal` would indicate a broken invariant.
fn cmp_int_vs_root(y: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
    debug_assert!(!b.is_zero());
    let s = b * b * d;
    if b.is_positive() {
        if !y.is_positive() {
            return Ordering::Less;
        }
        (y * y).cmp(&s)
    } else {
        if !y.is_negative() {
            return Ordering::Greater;
        }
        // y < 0: y <=> -sqrt(s) flips to s <=> y^2
        s.cmp(&(y * y))
    }
}

impl QuadExt {
    /// Build `a + b*sqrt(d)`, validating the discriminant.
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Result<Self> {
        if !d.is_positive() || is_perfect_square(&d) {
            return Err(Error::domain(format!(
                "discriminant must be a positive non-square integer, got {d}"
            )));
        }
        Ok(QuadExt { a, b, d })
    }

    /// Internal constructor for values whose discriminant is already known valid.
    pub(crate) fn raw(a: BigRational, b: BigRational, d: BigInt) -> Self {
        QuadExt { a, b, d }
    }

    pub fn from_integer(n: impl Into<BigInt>, d: BigInt) -> Result<Self> {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero(), d)
    }

    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>, d: BigInt) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::Arithmetic("zero denominator"));
        }
        Self::new(BigRational::new(num.into(), den), BigRational::zero(), d)
    }

    /// The square root itself: `0 + 1*sqrt(d)`.
    pub fn sqrt_d(d: BigInt) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(QuadExt::raw(&self.a + &rhs.a, &self.b + &rhs.b, self.d.clone()))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(QuadExt::raw(&self.a - &rhs.a, &self.b - &rhs.b, self.d.clone()))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        let d = BigRational::from_integer(self.d.clone());
        let a = &self.a * &rhs.a + &self.b * &rhs.b * &d;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Ok(QuadExt::raw(a, b, self.d.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        self.checked_mul(&rhs.inverse()?)
    }

    pub fn conjugate(&self) -> Self {
        QuadExt::raw(self.a.clone(), -self.b.clone(), self.d.clone())
    }

    /// Field norm `a^2 - b^2 d`; multiplicative, zero only for the zero element.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.clone())
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero"));
        }
        let n = self.norm();
        debug_assert!(!n.is_zero(), "nonzero element with zero norm");
        let conj = self.conjugate();
        Ok(QuadExt::raw(conj.a / &n, conj.b / &n, self.d.clone()))
    }

    /// `self^k` for any integer `k`; negative exponents go through the inverse.
    pub fn int_pow(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(QuadExt::raw(
                BigRational::one(),
                BigRational::zero(),
                self.d.clone(),
            ));
        }
        let base = if k < 0 {
            self.inverse()
                .map_err(|_| Error::Arithmetic("zero raised to a negative power"))?
        } else {
            self.clone()
        };
        let mut e = k.unsigned_abs();
        let mut acc = QuadExt::raw(BigRational::one(), BigRational::zero(), self.d.clone());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.checked_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Exact sign: -1, 0 or +1.
    ///
    /// When the rational and irrational parts disagree in sign, the outcome is
    /// decided by comparing `a^2` with `b^2 d`.
    pub fn sign(&self) -> i32 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * BigRational::from_integer(self.d.clone());
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("a^2 == b^2 d with non-square d"),
        }
    }

    /// Exact floor via integer square-root bracketing.
    ///
    /// The value is first written as `(A + B*sqrt(d)) / C` with integers and
    /// `C > 0`; an isqrt estimate is then corrected by at most one step in
    /// either direction using exact integer-vs-root comparisons.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        let qa = self.a.denom();
        let qb = self.b.denom();
        let c: BigInt = qa.lcm(qb);
        let aa = self.a.numer() * (&c / qa);
        let bb = self.b.numer() * (&c / qb);
        let s = &bb * &bb * &self.d;
        let r = s.sqrt();
        let approx = if bb.is_positive() {
            &aa + &r
        } else {
            &aa - &r - BigInt::one()
        };
        let mut f = approx.div_floor(&c);
        loop {
            let y = &c * (&f + BigInt::one()) - &aa;
            if cmp_int_vs_root(&y, &bb, &self.d) != Ordering::Greater {
                f += 1;
            } else {
                break;
            }
        }
        loop {
            let y = &c * &f - &aa;
            if cmp_int_vs_root(&y, &bb, &self.d) == Ordering::Greater {
                f -= 1;
            } else {
                break;
            }
        }
        f
    }

    /// Exact ceiling, derived from [`QuadExt::floor`].
    pub fn ceil(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.ceil().to_integer();
        }
        // irrational, so never an integer: ceil = floor + 1
        self.floor() + BigInt::one()
    }

    pub fn cmp_field(&self, other: &Self) -> Result<Ordering> {
        let diff = self.checked_sub(other)?;
        Ok(match diff.sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    /// Lossy conversion for display and rendering only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }

    /// Decimal expansion with `sig` significant digits (truncated), for display.
    pub fn to_decimal(&self, sig: usize) -> String {
        let sgn = self.sign();
        if sgn == 0 {
            return "0".to_string();
        }
        let abs = if sgn < 0 { -self.clone() } else { self.clone() };
        let scale = sig + 4;
        let pow = BigInt::from(10u32).pow(scale as u32);
        let scaled = QuadExt::raw(
            &abs.a * BigRational::from_integer(pow.clone()),
            &abs.b * BigRational::from_integer(pow),
            abs.d.clone(),
        );
        let f = scaled.floor();
        let mut digits = f.to_string();
        if digits.len() <= scale {
            digits = format!("{}{}", "0".repeat(scale + 1 - digits.len()), digits);
        }
        let point = digits.len() - scale;
        let (int_part, frac_part) = digits.split_at(point);

        let mut out = String::new();
        if sgn < 0 {
            out.push('-');
        }
        out.push_str(int_part);
        // count significant digits already used by the integer part
        let int_sig = int_part.trim_start_matches('0').len();
        if int_sig >= sig {
            return out;
        }
        let mut kept = 0usize;
        let mut frac = String::new();
        let mut seen_sig = int_sig > 0;
        for ch in frac_part.chars() {
            if kept >= sig - int_sig && seen_sig {
                break;
            }
            frac.push(ch);
            if ch != '0' {
                seen_sig = true;
            }
            if seen_sig {
                kept += 1;
            }
        }
        let frac = frac.trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
        out
    }
}

fn rational_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::raw(-self.a, -self.b, self.d)
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::raw(-self.a.clone(), -self.b.clone(), self.d.clone())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                self.$checked(rhs).expect("quadratic field operation failed")
            }
        }
        impl $trait for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

#[cfg(test)]
mod tests {
    use super::*;

    fn q(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn quad(an: i64, ad: i64, bn: i64, bd: i64, d: i64) -> QuadExt {
        QuadExt::new(q(an, ad), q(bn, bd), BigInt::from(d)).unwrap()
    }

    #[test]
    fn rejects_square_discriminant() {
        assert!(QuadExt::from_integer(1, BigInt::from(9)).is_err());
        assert!(QuadExt::from_integer(1, BigInt::from(-5)).is_err());
        assert!(QuadExt::from_integer(1, BigInt::from(5)).is_ok());
    }

    #[test]
    fn golden_ratio_square() {
        // ((1+sqrt(5))/2)^2 = (3+sqrt(5))/2, expanded by hand:
        // (1 + 2 sqrt5 + 5)/4 = (6 + 2 sqrt5)/4
        let phi = quad(1, 2, 1, 2, 5);
        let sq = phi.checked_mul(&phi).unwrap();
        assert_eq!(sq, quad(3, 2, 1, 2, 5));
    }

    #[test]
    fn inverse_identity() {
        // alpha of {4,5}: 2 + sqrt(3) in the (4,5) field d = 12 is (4 + sqrt(12))/2;
        // use the raw d = 12 representation used by contexts.
        let alpha = quad(2, 1, 1, 2, 12);
        let inv = alpha.inverse().unwrap();
        let prod = alpha.checked_mul(&inv).unwrap();
        assert_eq!(prod, quad(1, 1, 0, 1, 12));
    }

    #[test]
    fn beta_of_4_5_satisfies_quadratic() {
        // beta = (3+sqrt(3))/2 solves 2 b^2 - 6 b + 3 = 0.
        // In the d = 12 field: beta = (6 + sqrt(12))/4.
        let beta = quad(3, 2, 1, 4, 12);
        let two = quad(2, 1, 0, 1, 12);
        let six = quad(6, 1, 0, 1, 12);
        let three = quad(3, 1, 0, 1, 12);
        let expr = two * beta.clone() * beta.clone() - six * beta + three;
        assert!(expr.is_zero());
    }

    #[test]
    fn sign_cases() {
        assert_eq!(quad(0, 1, 0, 1, 5).sign(), 0);
        // 5 - 2 sqrt(5) > 0 since 25 > 20
        assert_eq!(quad(5, 1, -2, 1, 5).sign(), 1);
        // 2 - sqrt(5) < 0 since 4 < 5
        assert_eq!(quad(2, 1, -1, 1, 5).sign(), -1);
        assert_eq!(quad(-2, 1, 1, 1, 5).sign(), 1);
        assert_eq!(quad(0, 1, -1, 3, 5).sign(), -1);
    }

    #[test]
    fn floor_rational() {
        assert_eq!(quad(7, 2, 0, 1, 5).floor(), BigInt::from(3));
        assert_eq!(quad(-7, 2, 0, 1, 5).floor(), BigInt::from(-4));
        assert_eq!(quad(4, 1, 0, 1, 5).floor(), BigInt::from(4));
    }

    #[test]
    fn floor_beta_3_7() {
        // beta of {3,7} = (5 + sqrt(5))/2, floor 3 = q - 4
        let beta = quad(5, 2, 1, 2, 5);
        assert_eq!(beta.floor(), BigInt::from(3));
    }

    #[test]
    fn floor_five_beta_7_3() {
        // beta of {7,3} = (5 + sqrt(5))/10; 5*beta = (5+sqrt(5))/2 ~ 3.618
        let five_beta = quad(5, 2, 1, 2, 5);
        assert_eq!(five_beta.floor(), BigInt::from(3));
        // and a negative multiple for the sign-handling path
        let neg = -five_beta;
        assert_eq!(neg.floor(), BigInt::from(-4));
    }

    #[test]
    fn int_pow_identities() {
        let alpha = quad(2, 1, 1, 2, 12); // alpha of {4,5} = (4+sqrt(12))/2
        assert_eq!(alpha.int_pow(0).unwrap(), quad(1, 1, 0, 1, 12));
        // alpha^-1 = (t - sqrt(t^2-4))/2 with t = 4: (4 - sqrt(12))/2 = 2 - sqrt(3)
        assert_eq!(alpha.int_pow(-1).unwrap(), quad(2, 1, -1, 2, 12));
        // alpha^2 - t alpha + 1 = 0
        let t = quad(4, 1, 0, 1, 12);
        let expr = alpha.int_pow(2).unwrap() - t * alpha.clone() + quad(1, 1, 0, 1, 12);
        assert!(expr.is_zero());
        // zero to a negative power errors
        assert!(quad(0, 1, 0, 1, 12).int_pow(-3).is_err());
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let x = quad(1, 1, 1, 1, 5);
        let y = quad(1, 1, 1, 1, 12);
        assert!(matches!(x.checked_add(&y), Err(Error::FieldMismatch)));
    }

    #[test]
    fn decimal_display() {
        let beta = quad(5, 2, 1, 2, 5); // 3.6180339887498948482...
        assert_eq!(beta.to_decimal(10), "3.618033988");
        let small = quad(0, 1, 1, 100, 5); // sqrt(5)/100 = 0.02236...
        assert_eq!(small.to_decimal(5), "0.02236");
        assert_eq!(quad(0, 1, 0, 1, 5).to_decimal(5), "0");
    }
}

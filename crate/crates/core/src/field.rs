//! Exact arithmetic in the biquadratic field ℚ(√2, √3).
//!
//! Every element is stored as `a + b√2 + c√3 + d√6` with rational
//! coefficients. The basis is linearly independent over ℚ, so the
//! coefficient vector is a canonical representation: two values are equal
//! iff their coefficients are equal.
//!
//! The coefficient type is generic. [`crate::QScalar`] fixes it to
//! arbitrary-precision rationals; `Ratio<i64>` is usable for small inputs.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rational coefficient type usable inside [`QuadField`].
pub trait Coefficient:
    Clone
    + fmt::Debug
    + fmt::Display
    + Eq
    + Ord
    + Hash
    + Signed
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn from_ratio(numer: i64, denom: i64) -> Self;
    fn approx(&self) -> f64;
    /// The value as an `i64` when it is a rational integer in range.
    fn to_integer(&self) -> Option<i64>;
    /// Parses `n` or `n/d`.
    fn parse_ratio(s: &str) -> Option<Self>;
}

impl<T> Coefficient for Ratio<T>
where
    T: Clone
        + Integer
        + Signed
        + Hash
        + fmt::Debug
        + fmt::Display
        + FromStr
        + ToPrimitive
        + From<i64>
        + for<'a> Add<&'a T, Output = T>
        + for<'a> Sub<&'a T, Output = T>
        + for<'a> Mul<&'a T, Output = T>
        + for<'a> Div<&'a T, Output = T>,
{
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(T::from(numer), T::from(denom))
    }

    fn approx(&self) -> f64 {
        let n = self.numer().to_f64().unwrap_or(f64::NAN);
        let d = self.denom().to_f64().unwrap_or(f64::NAN);
        if n.is_finite() && d.is_finite() {
            n / d
        } else {
            // Very large numerator or denominator: scale via integer division.
            let q = self.numer().clone() / self.denom().clone();
            q.to_f64().unwrap_or(f64::NAN)
        }
    }

    fn to_integer(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    fn parse_ratio(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n = T::from_str(n.trim()).ok()?;
                let d = T::from_str(d.trim()).ok()?;
                if d.is_zero() {
                    None
                } else {
                    Some(Ratio::new(n, d))
                }
            }
            None => T::from_str(s).ok().map(Ratio::from_integer),
        }
    }
}

/// Exact sign of a real number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    fn of_ordering(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    fn times(self, other: Sign) -> Sign {
        Sign::of_ordering((self.as_i8() * other.as_i8()).cmp(&0))
    }
}

/// Field operations needed by the geometry layer.
///
/// `PartialOrd` compares numerically; [`Scalar::canonical_cmp`] is a total
/// order on representations used for canonical keys.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + Eq
    + Hash
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn sign(&self) -> Sign;
    fn from_int(n: i64) -> Self;
    fn from_ratio(numer: i64, denom: i64) -> Self;
    fn approx(&self) -> f64;
    /// `Some(n)` iff the value is the rational integer `n`.
    fn to_integer(&self) -> Option<i64>;
    fn canonical_cmp(&self, other: &Self) -> Ordering;

    fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }

    fn square(&self) -> Self {
        self.clone() * self
    }
}

/// `a + b√2 + c√3 + d√6`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadField<R> {
    coeffs: [R; 4],
}

impl<R: Coefficient> QuadField<R> {
    pub fn new(a: R, b: R, c: R, d: R) -> Self {
        QuadField {
            coeffs: [a, b, c, d],
        }
    }

    pub fn rational(a: R) -> Self {
        QuadField::new(a, R::zero(), R::zero(), R::zero())
    }

    pub fn sqrt2() -> Self {
        QuadField::new(R::zero(), R::one(), R::zero(), R::zero())
    }

    pub fn sqrt3() -> Self {
        QuadField::new(R::zero(), R::zero(), R::one(), R::zero())
    }

    pub fn sqrt6() -> Self {
        QuadField::new(R::zero(), R::zero(), R::zero(), R::one())
    }

    /// Coefficients `[a, b, c, d]` of `a + b√2 + c√3 + d√6`.
    pub fn coeffs(&self) -> &[R; 4] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Exact inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let [a, b, c, d] = &self.coeffs;
        // x = P + Q√3 with P = a + b√2, Q = c + d√2.
        // 1/x = (P - Q√3) / (P² - 3Q²), and P² - 3Q² = u + v√2.
        let two = R::from_ratio(2, 1);
        let three = R::from_ratio(3, 1);
        let six = R::from_ratio(6, 1);
        let u = a.clone() * a + &(two.clone() * b * b) - &(three.clone() * c * c) - &(six * d * d);
        let v = two.clone() * a * b - &(two.clone() * &three * c * d);
        // 1/(u + v√2) = (u - v√2) / (u² - 2v²)
        let norm = u.clone() * &u - &(two * &v * &v);
        let iu = u / &norm;
        let iv = -(v / &norm);
        // (P - Q√3)(iu + iv√2)
        let p_neg_q = QuadField::new(a.clone(), b.clone(), -c.clone(), -d.clone());
        Some(p_neg_q * &QuadField::new(iu, iv, R::zero(), R::zero()))
    }

    /// Floating approximation, for display and spatial bucketing only.
    pub fn approx(&self) -> f64 {
        let [a, b, c, d] = &self.coeffs;
        a.approx()
            + b.approx() * std::f64::consts::SQRT_2
            + c.approx() * 3f64.sqrt()
            + d.approx() * 6f64.sqrt()
    }

    fn exact_sign(&self) -> Sign {
        let [a, b, c, d] = &self.coeffs;
        // x = P + Q√3, P = a + b√2, Q = c + d√2
        let sp = sign_sqrt2(a, b);
        let sq = sign_sqrt2(c, d);
        if sq == Sign::Zero {
            return sp;
        }
        if sp == Sign::Zero || sp == sq {
            return sq;
        }
        // Opposite signs: sign(x) = sign(P) * sign(P² - 3Q²).
        let two = R::from_ratio(2, 1);
        let three = R::from_ratio(3, 1);
        let u = a.clone() * a + &(two.clone() * b * b) - &(three.clone() * c * c)
            - &(R::from_ratio(6, 1) * d * d);
        let v = two.clone() * a * b - &(two * &three * c * d);
        sp.times(sign_sqrt2(&u, &v))
    }
}

/// Sign of `u + v√2`.
fn sign_sqrt2<R: Coefficient>(u: &R, v: &R) -> Sign {
    let su = Sign::of_ordering(u.cmp(&R::zero()));
    let sv = Sign::of_ordering(v.cmp(&R::zero()));
    if sv == Sign::Zero {
        return su;
    }
    if su == Sign::Zero || su == sv {
        return if su == Sign::Zero { sv } else { su };
    }
    // sign(u) * sign(u² - 2v²)
    let diff = u.clone() * u - &(R::from_ratio(2, 1) * v * v);
    su.times(Sign::of_ordering(diff.cmp(&R::zero())))
}

impl<R: Coefficient> Scalar for QuadField<R> {
    fn sign(&self) -> Sign {
        // Floating filter first; the exact path decides near zero.
        let [a, b, c, d] = &self.coeffs;
        let terms = [
            a.approx(),
            b.approx() * std::f64::consts::SQRT_2,
            c.approx() * 3f64.sqrt(),
            d.approx() * 6f64.sqrt(),
        ];
        if terms.iter().all(|t| t.is_finite()) {
            let value: f64 = terms.iter().sum();
            let magnitude: f64 = terms.iter().map(|t| t.abs()).sum();
            if value.abs() > magnitude * 1e-12 + f64::MIN_POSITIVE {
                return if value > 0.0 {
                    Sign::Positive
                } else {
                    Sign::Negative
                };
            }
        }
        self.exact_sign()
    }

    fn from_int(n: i64) -> Self {
        QuadField::rational(R::from_ratio(n, 1))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        QuadField::rational(R::from_ratio(numer, denom))
    }

    fn approx(&self) -> f64 {
        QuadField::approx(self)
    }

    fn to_integer(&self) -> Option<i64> {
        if self.is_rational() {
            self.coeffs[0].to_integer()
        } else {
            None
        }
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl<R: Coefficient> PartialOrd for QuadField<R> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(match (self.clone() - other.clone()).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        })
    }
}

impl<R: Coefficient> Zero for QuadField<R> {
    fn zero() -> Self {
        QuadField::rational(R::zero())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl<R: Coefficient> One for QuadField<R> {
    fn one() -> Self {
        QuadField::rational(R::one())
    }
}

impl<R: Coefficient> Neg for QuadField<R> {
    type Output = Self;
    fn neg(self) -> Self {
        let [a, b, c, d] = self.coeffs;
        QuadField::new(-a, -b, -c, -d)
    }
}

impl<'a, R: Coefficient> Add<&'a QuadField<R>> for QuadField<R> {
    type Output = Self;
    fn add(self, rhs: &'a Self) -> Self {
        let [a, b, c, d] = self.coeffs;
        let [ra, rb, rc, rd] = &rhs.coeffs;
        QuadField::new(a + ra, b + rb, c + rc, d + rd)
    }
}

impl<R: Coefficient> Add for QuadField<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self + &rhs
    }
}

impl<'a, R: Coefficient> Sub<&'a QuadField<R>> for QuadField<R> {
    type Output = Self;
    fn sub(self, rhs: &'a Self) -> Self {
        let [a, b, c, d] = self.coeffs;
        let [ra, rb, rc, rd] = &rhs.coeffs;
        QuadField::new(a - ra, b - rb, c - rc, d - rd)
    }
}

impl<R: Coefficient> Sub for QuadField<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self - &rhs
    }
}

impl<'a, R: Coefficient> Mul<&'a QuadField<R>> for QuadField<R> {
    type Output = Self;
    fn mul(self, rhs: &'a Self) -> Self {
        let [a1, b1, c1, d1] = &self.coeffs;
        let [a2, b2, c2, d2] = &rhs.coeffs;
        if rhs.is_rational() {
            return QuadField::new(
                a1.clone() * a2,
                b1.clone() * a2,
                c1.clone() * a2,
                d1.clone() * a2,
            );
        }
        if self.is_rational() {
            return QuadField::new(
                a2.clone() * a1,
                b2.clone() * a1,
                c2.clone() * a1,
                d2.clone() * a1,
            );
        }
        let two = R::from_ratio(2, 1);
        let three = R::from_ratio(3, 1);
        let six = R::from_ratio(6, 1);
        let a = a1.clone() * a2
            + &(two.clone() * b1 * b2)
            + &(three.clone() * c1 * c2)
            + &(six * d1 * d2);
        let b = a1.clone() * b2 + &(b1.clone() * a2) + &(three * &(c1.clone() * d2 + &(d1.clone() * c2)));
        let c = a1.clone() * c2 + &(c1.clone() * a2) + &(two * &(b1.clone() * d2 + &(d1.clone() * b2)));
        let d = a1.clone() * d2 + &(d1.clone() * a2) + &(b1.clone() * c2) + &(c1.clone() * b2);
        QuadField::new(a, b, c, d)
    }
}

impl<R: Coefficient> Mul for QuadField<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self * &rhs
    }
}

impl<'a, R: Coefficient> Div<&'a QuadField<R>> for QuadField<R> {
    type Output = Self;
    fn div(self, rhs: &'a Self) -> Self {
        if rhs.is_rational() {
            let r = &rhs.coeffs[0];
            assert!(!r.is_zero(), "division by zero in QuadField");
            let [a, b, c, d] = self.coeffs;
            return QuadField::new(a / r, b / r, c / r, d / r);
        }
        self * &rhs.inverse().expect("division by zero in QuadField")
    }
}

impl<R: Coefficient> Div for QuadField<R> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self / &rhs
    }
}

impl<R: Coefficient> fmt::Display for QuadField<R> {
    /// Field-literal syntax `a+b*r2+c*r3+d*r6`, omitting zero terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["", "r2", "r3", "r6"];
        let mut first = true;
        for (coeff, name) in self.coeffs.iter().zip(names) {
            if coeff.is_zero() {
                continue;
            }
            let negative = coeff.is_negative();
            let magnitude = coeff.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { "-" } else { "+" })?;
            }
            first = false;
            if name.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{magnitude}*{name}")?;
            }
        }
        Ok(())
    }
}

impl<R: Coefficient> fmt::Debug for QuadField<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid field literal {0:?}")]
pub struct ParseScalarError(pub String);

impl<R: Coefficient> FromStr for QuadField<R> {
    type Err = ParseScalarError;

    /// Parses the literal syntax produced by `Display`: a signed sum of
    /// terms `q`, `q*rK` or `rK` with `q` rational and `K ∈ {2,3,6}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut coeffs = [R::zero(), R::zero(), R::zero(), R::zero()];
        let bytes = compact.as_bytes();
        let mut start = 0;
        let mut i = 1;
        let mut terms = Vec::new();
        while i <= bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'*') {
                terms.push(&compact[start..i]);
                start = i;
            }
            i += 1;
        }
        for term in terms {
            let (negative, body) = match term.as_bytes()[0] {
                b'-' => (true, &term[1..]),
                b'+' => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(err());
            }
            let (coeff, slot) = if let Some(pos) = body.find('r') {
                let radical = &body[pos..];
                let slot = match radical {
                    "r2" => 1,
                    "r3" => 2,
                    "r6" => 3,
                    _ => return Err(err()),
                };
                let head = &body[..pos];
                let coeff = if head.is_empty() {
                    R::one()
                } else {
                    let head = head.strip_suffix('*').ok_or_else(err)?;
                    R::parse_ratio(head).ok_or_else(err)?
                };
                (coeff, slot)
            } else {
                (R::parse_ratio(body).ok_or_else(err)?, 0)
            };
            let coeff = if negative { -coeff } else { coeff };
            coeffs[slot] = coeffs[slot].clone() + &coeff;
        }
        let [a, b, c, d] = coeffs;
        Ok(QuadField::new(a, b, c, d))
    }
}

/// Convenience: the rational `n/d` in the default field.
pub fn q(numer: i64, denom: i64) -> crate::QScalar {
    QuadField::from_ratio(numer, denom)
}

/// `cos(k·15°)` and `sin(k·15°)`; all of them lie in ℚ(√2, √3).
pub fn cos_sin_15<R: Coefficient>(k: i64) -> (QuadField<R>, QuadField<R>) {
    let k = k.rem_euclid(24);
    // cos of 0, 15, ..., 90 degrees
    let base = |j: i64| -> QuadField<R> {
        let r = |n, d| R::from_ratio(n, d);
        match j {
            0 => QuadField::rational(r(1, 1)),
            // (√6 + √2)/4
            1 => QuadField::new(r(0, 1), r(1, 4), r(0, 1), r(1, 4)),
            2 => QuadField::new(r(0, 1), r(0, 1), r(1, 2), r(0, 1)),
            3 => QuadField::new(r(0, 1), r(1, 2), r(0, 1), r(0, 1)),
            4 => QuadField::rational(r(1, 2)),
            // (√6 - √2)/4
            5 => QuadField::new(r(0, 1), r(-1, 4), r(0, 1), r(1, 4)),
            6 => QuadField::zero(),
            _ => unreachable!(),
        }
    };
    let cos_of = |k: i64| -> QuadField<R> {
        let k = k.rem_euclid(24);
        match k {
            0..=6 => base(k),
            7..=12 => -base(12 - k),
            13..=18 => -base(k - 12),
            _ => base(24 - k),
        }
    };
    (cos_of(k), cos_of(k - 6))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QScalar;

    fn qs(a: i64, b: i64, c: i64, d: i64) -> QScalar {
        QScalar::new(
            Coefficient::from_ratio(a, 1),
            Coefficient::from_ratio(b, 1),
            Coefficient::from_ratio(c, 1),
            Coefficient::from_ratio(d, 1),
        )
    }

    #[test]
    fn sign_examples() {
        assert_eq!(qs(0, 0, 0, 0).sign(), Sign::Zero);
        assert_eq!(qs(-1, 1, 0, 0).sign(), Sign::Positive);
        assert_eq!(qs(7, 0, -4, 0).sign(), Sign::Positive);
        assert_eq!(qs(-7, 0, 4, 0).sign(), Sign::Negative);
    }

    #[test]
    fn exact_sign_agrees_on_near_cancellations() {
        // 7 - 4√3 = 1/(7 + 4√3) ≈ 0.0718; (√2+√3)² = 5 + 2√6
        assert_eq!(qs(7, 0, -4, 0).exact_sign(), Sign::Positive);
        assert_eq!(qs(5, 0, 0, 2).exact_sign(), Sign::Positive);
        assert_eq!(qs(-5, 0, 0, 2).exact_sign(), Sign::Negative);
        // 1 + √2 - √3 - (√6 - ...) mixed cases
        assert_eq!(qs(1, 1, -1, 0).exact_sign(), Sign::Positive);
        assert_eq!(qs(0, 1, 1, -1).exact_sign(), Sign::Positive);
        assert_eq!(qs(0, -1, -1, 1).exact_sign(), Sign::Negative);
    }

    #[test]
    fn radical_products() {
        let r2 = QScalar::sqrt2();
        let r3 = QScalar::sqrt3();
        let r6 = QScalar::sqrt6();
        assert_eq!(r2.clone() * &r3, r6);
        assert_eq!(r2.clone() * &r6, qs(0, 0, 2, 0));
        assert_eq!(r3.clone() * &r6, qs(0, 3, 0, 0));
        assert_eq!(r6.clone() * &r6, qs(6, 0, 0, 0));
    }

    #[test]
    fn inverse_of_mixed_element() {
        let x = qs(1, 2, -3, 5);
        let inv = x.inverse().unwrap();
        assert_eq!(x * &inv, QScalar::one());
        assert!(QScalar::zero().inverse().is_none());
    }

    #[test]
    fn literal_round_trip() {
        for s in ["0", "1", "-3/4", "r2", "-r3", "1/2+3/4*r2-r3+2*r6", "-1/4*r2+1/4*r6"] {
            let v: QScalar = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert!("1+r5".parse::<QScalar>().is_err());
        assert!("".parse::<QScalar>().is_err());
        assert_eq!("2*r2 + r2".parse::<QScalar>().unwrap(), qs(0, 3, 0, 0));
    }

    #[test]
    fn fifteen_degree_table() {
        for k in 0..24 {
            let (c, s) = cos_sin_15::<crate::Rational>(k);
            assert_eq!(c.clone() * &c + &(s.clone() * &s), QScalar::one(), "k={k}");
            let angle = (k as f64) * 15f64.to_radians();
            assert!((c.approx() - angle.cos()).abs() < 1e-12);
            assert!((s.approx() - angle.sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn small_ratio_coefficients_work() {
        type Small = QuadField<Ratio<i64>>;
        let x: Small = "1+r2".parse().unwrap();
        let y = x.inverse().unwrap();
        assert_eq!(y.to_string(), "-1+r2");
        assert_eq!(Small::from_int(3).to_integer(), Some(3));
    }
}

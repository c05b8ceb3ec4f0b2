//! Rational numbers stored inline while numerator and denominator fit in
//! an `i64`, spilling to arbitrary precision otherwise.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::field::Coefficient;

/// Exact rational with a machine-word fast path.
///
/// The representation is canonical: a value that fits the inline form is
/// always stored inline, so derived equality and hashing are by value.
#[derive(Clone)]
pub enum Rational {
    Small { n: i64, d: i64 },
    Big(BigRational),
}

impl Rational {
    pub fn from_integer(n: i64) -> Self {
        Rational::from_i128(n as i128, 1)
    }

    fn from_i128(n: i128, d: i128) -> Self {
        debug_assert!(d != 0);
        if d == 1 {
            if let Ok(n) = i64::try_from(n) {
                if n != i64::MIN {
                    return Rational::Small { n, d: 1 };
                }
            }
        }
        if let (Ok(a), Ok(b)) = (i64::try_from(n), i64::try_from(d)) {
            if a != i64::MIN && b != i64::MIN {
                let g = a.unsigned_abs().gcd(&b.unsigned_abs()) as i64;
                let (n, d) = if b < 0 { (-a / g, -b / g) } else { (a / g, b / g) };
                return Rational::Small { n, d };
            }
        }
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) if n != i64::MIN => Rational::Small { n, d },
            _ => Rational::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Rational::Small { n, d },
            _ => Rational::Big(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small { n, d } => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn numer_denom(&self) -> (BigInt, BigInt) {
        match self {
            Rational::Small { n, d } => (BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(r) => (r.numer().clone(), r.denom().clone()),
        }
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational::from_big(r)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rational::Small { n: a, d: b }, Rational::Small { n: c, d: e }) => a == c && b == e,
            (Rational::Big(x), Rational::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rational::Small { n, d } => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Rational::Big(r) => {
                1u8.hash(state);
                r.hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small { n: a, d: b }, Rational::Small { n: c, d: e }) => {
                (*a as i128 * *e as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small { n, d: 1 } => write!(f, "{n}"),
            Rational::Small { n, d } => write!(f, "{n}/{d}"),
            Rational::Big(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $small:expr, $big:expr) => {
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                if let (Rational::Small { n: a, d: b }, Rational::Small { n: c, d: e }) = (&self, rhs) {
                    let f: fn(i128, i128, i128, i128) -> Option<(i128, i128)> = $small;
                    if let Some((n, d)) = f(*a as i128, *b as i128, *c as i128, *e as i128) {
                        return Rational::from_i128(n, d);
                    }
                }
                let g: fn(BigRational, BigRational) -> BigRational = $big;
                Rational::from_big(g(self.to_big(), rhs.to_big()))
            }
        }

        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b, c, e| Some((a.checked_mul(e)?.checked_add(c.checked_mul(b)?)?, b.checked_mul(e)?)), |x, y| x + y);
binop!(Sub, sub, |a, b, c, e| Some((a.checked_mul(e)?.checked_sub(c.checked_mul(b)?)?, b.checked_mul(e)?)), |x, y| x - y);
binop!(Mul, mul, |a, b, c, e| Some((a.checked_mul(c)?, b.checked_mul(e)?)), |x, y| x * y);
binop!(
    Div,
    div,
    |a, b, c, e| {
        assert!(c != 0, "division by zero");
        Some((a.checked_mul(e)?, b.checked_mul(c)?))
    },
    |x, y| x / y
);
binop!(
    Rem,
    rem,
    |a, b, c, e| {
        assert!(c != 0, "division by zero");
        let (x, y) = (a.checked_mul(e)?, c.checked_mul(b)?);
        Some((x % y, b.checked_mul(e)?))
    },
    |x, y| x % y
);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small { n, d } => Rational::Small { n: -n, d },
            Rational::Big(r) => Rational::from_big(-r),
        }
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::Small { n: 0, d: 1 }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small { n: 0, .. })
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::Small { n: 1, d: 1 }
    }
}

impl Num for Rational {
    type FromStrRadixErr = <BigRational as Num>::FromStrRadixErr;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        BigRational::from_str_radix(s, radix).map(Rational::from_big)
    }
}

impl Signed for Rational {
    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn abs_sub(&self, other: &Self) -> Self {
        if self <= other {
            Rational::zero()
        } else {
            self.clone() - other
        }
    }

    fn signum(&self) -> Self {
        match self.cmp(&Rational::zero()) {
            Ordering::Less => -Rational::one(),
            Ordering::Equal => Rational::zero(),
            Ordering::Greater => Rational::one(),
        }
    }

    fn is_positive(&self) -> bool {
        match self {
            Rational::Small { n, .. } => *n > 0,
            Rational::Big(r) => r.is_positive(),
        }
    }

    fn is_negative(&self) -> bool {
        match self {
            Rational::Small { n, .. } => *n < 0,
            Rational::Big(r) => r.is_negative(),
        }
    }
}

impl Coefficient for Rational {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational::from_i128(numer as i128, denom as i128)
    }

    fn approx(&self) -> f64 {
        match self {
            Rational::Small { n, d } => *n as f64 / *d as f64,
            Rational::Big(r) => r.approx(),
        }
    }

    fn to_integer(&self) -> Option<i64> {
        match self {
            Rational::Small { n, d: 1 } => Some(*n),
            _ => None,
        }
    }

    fn parse_ratio(s: &str) -> Option<Self> {
        BigRational::parse_ratio(s).map(Rational::from_big)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn big(x: &Rational) -> BigRational {
        x.to_big()
    }

    #[test]
    fn canonical_small_form() {
        assert_eq!(r(2, 4), r(1, 2));
        assert_eq!(r(3, -6), r(-1, 2));
        assert!(matches!(r(5, 1), Rational::Small { n: 5, d: 1 }));
        assert_eq!(r(7, 3).to_string(), "7/3");
        assert_eq!(Rational::parse_ratio("-4/6"), Some(r(-2, 3)));
    }

    #[test]
    fn overflow_spills_and_returns() {
        let m = Rational::from_integer(i64::MAX);
        let sq = m.clone() * &m;
        assert!(matches!(sq, Rational::Big(_)));
        let back = sq / &m;
        assert!(matches!(back, Rational::Small { .. }));
        assert_eq!(back, m);
        let min = Rational::from_integer(i64::MIN);
        assert!(matches!(min, Rational::Big(_)));
        assert_eq!(-min, m + &Rational::one());
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational(a in any::<i64>(), b in 1..i64::MAX, c in any::<i64>(), e in 1..i64::MAX) {
            let (x, y) = (r(a, b), r(c, e));
            let (bx, by) = (big(&x), big(&y));
            prop_assert_eq!(big(&(x.clone() + &y)), bx.clone() + &by);
            prop_assert_eq!(big(&(x.clone() - &y)), bx.clone() - &by);
            prop_assert_eq!(big(&(x.clone() * &y)), bx.clone() * &by);
            if !y.is_zero() {
                prop_assert_eq!(big(&(x.clone() / &y)), bx.clone() / &by);
            }
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
        }
    }
}

//! Exact rational scalars.
//!
//! Values that fit in a pair of `i64` stay on the fast path; anything larger
//! is promoted to a boxed `BigRational` and demoted again when it shrinks.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A reduced fraction with positive denominator.
#[derive(Clone)]
pub enum Rational {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational::Small(0, 1);
    pub const ONE: Rational = Rational::Small(1, 1);

    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_int(n: i64) -> Rational {
        Rational::Small(n, 1)
    }

    fn from_i128(num: i128, den: i128) -> Rational {
        debug_assert!(den != 0);
        if num == 0 {
            return Rational::ZERO;
        }
        let neg = (num < 0) != (den < 0);
        let (n, d) = (num.unsigned_abs(), den.unsigned_abs());
        let g = gcd_u128(n, d);
        let (n, d) = (n / g, d / g);
        if n <= i64::MAX as u128 && d <= i64::MAX as u128 {
            let n = n as i64;
            Rational::Small(if neg { -n } else { n }, d as i64)
        } else {
            let n = BigInt::from(n);
            let n = if neg { -n } else { n };
            Rational::Big(Box::new(BigRational::new_raw(n, BigInt::from(d))))
        }
    }

    fn from_big(r: BigRational) -> Rational {
        // BigRational arithmetic keeps values reduced with positive denominator.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            Rational::Small(n, d)
        } else {
            Rational::Big(Box::new(r))
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(b) => b.denom().clone(),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rational::Small(n, _) => n.signum() as i32,
            Rational::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "reciprocal of zero");
        match self {
            Rational::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Rational::Big(b) => Self::from_big(b.recip()),
        }
    }

    pub fn abs(&self) -> Rational {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Size estimate used for pivot selection: smaller is cheaper.
    pub fn height(&self) -> u64 {
        match self {
            Rational::Small(n, d) => n.unsigned_abs().max(*d as u64),
            Rational::Big(_) => u64::MAX,
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
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
            (Rational::Small(a, b), Rational::Small(c, d)) => a == c && b == d,
            (Rational::Big(x), Rational::Big(y)) => x == y,
            // Normalized representations never mix for equal values.
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rational::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Rational::Big(b) => {
                1u8.hash(state);
                b.numer().hash(state);
                b.denom().hash(state);
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

fn add_ref(x: &Rational, y: &Rational) -> Rational {
    match (x, y) {
        (Rational::Small(0, _), _) => y.clone(),
        (_, Rational::Small(0, _)) => x.clone(),
        (Rational::Small(a, b), Rational::Small(c, d)) => {
            if b == d {
                Rational::from_i128(*a as i128 + *c as i128, *b as i128)
            } else {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                let g = b.gcd(&d);
                let (bg, dg) = (b / g, d / g);
                match (a * dg).checked_add(c * bg) {
                    Some(n) => Rational::from_i128(n, b * dg),
                    None => Rational::from_big(x.to_big() + y.to_big()),
                }
            }
        }
        _ => Rational::from_big(x.to_big() + y.to_big()),
    }
}

fn mul_ref(x: &Rational, y: &Rational) -> Rational {
    match (x, y) {
        (Rational::Small(0, _), _) | (_, Rational::Small(0, _)) => Rational::ZERO,
        (Rational::Small(a, b), Rational::Small(c, d)) => {
            Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
        }
        _ => Rational::from_big(x.to_big() * y.to_big()),
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(n, d) => {
                if *n == i64::MIN {
                    Rational::from_big(-self.to_big())
                } else {
                    Rational::Small(-n, *d)
                }
            }
            Rational::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                let f: fn(&Rational, &Rational) -> Rational = $body;
                f(self, rhs)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                (&self).$m(rhs)
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, |x, y| add_ref(x, &-y));
binop!(Mul, mul, mul_ref);
binop!(Div, div, |x, y| mul_ref(x, &y.recip()));

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = add_ref(self, rhs);
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = add_ref(self, &-rhs);
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = mul_ref(self, rhs);
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::ONE
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, d) => write!(f, "{}/{}", n, d),
            Rational::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `"p/q"` or a bare integer `"p"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for `Rational::new`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        assert_eq!(q(2, -4), q(-1, 2));
        assert_eq!(q(0, -7), Rational::ZERO);
        assert_eq!(q(6, 3).to_string(), "2/1");
    }

    #[test]
    fn promotes_and_demotes() {
        let big = Rational::from_int(i64::MAX) * Rational::from_int(i64::MAX);
        assert!(matches!(big, Rational::Big(_)));
        let back = &big / &Rational::from_int(i64::MAX);
        assert_eq!(back, Rational::from_int(i64::MAX));
        assert!(matches!(back, Rational::Small(..)));
    }

    #[test]
    fn parses_literals() {
        assert_eq!("-3/12".parse::<Rational>().unwrap(), q(-1, 4));
        assert_eq!("5".parse::<Rational>().unwrap(), q(5, 1));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn serde_uses_fraction_strings() {
        let s = serde_json::to_string(&q(1, 32)).unwrap();
        assert_eq!(s, "\"1/32\"");
        let r: Rational = serde_json::from_str("\"-7/4\"").unwrap();
        assert_eq!(r, q(-7, 4));
    }

    proptest! {
        #[test]
        fn reciprocal_product_is_one(n in -1_000_000i64..1_000_000, d in 1i64..1_000_000) {
            prop_assume!(n != 0);
            let x = q(n, d);
            prop_assert_eq!(&x * &x.recip(), Rational::ONE);
        }

        #[test]
        fn field_laws_hold_across_promotion(a in any::<i64>(), b in 1i64..i64::MAX, c in any::<i64>()) {
            let x = q(a, b);
            let y = Rational::from_int(c);
            let lhs = (&x + &y) * (&x - &y);
            let rhs = &x * &x - &y * &y;
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(x.cmp(&y), x.to_big().cmp(&y.to_big()));
        }
    }
}

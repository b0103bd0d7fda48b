//! Arbitrary-precision integers with an inline representation for values
//! that fit in an `i64`.
//!
//! Every arithmetic operation is exact: a result that leaves the `i64`
//! range is promoted to a heap `BigInt`, and a `BigInt` result that fits
//! is demoted again, so the representation of a value is unique.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(Box<BigInt>),
}

impl Int {
    #[inline]
    pub const fn zero() -> Int {
        Int::Small(0)
    }

    #[inline]
    pub const fn one() -> Int {
        Int::Small(1)
    }

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(Box::new(b)),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => (**b).clone(),
        }
    }

    #[inline]
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    #[inline]
    pub fn is_positive(&self) -> bool {
        match self {
            Int::Small(v) => *v > 0,
            Int::Big(b) => b.is_positive(),
        }
    }

    #[inline]
    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    /// -1, 0 or 1.
    #[inline]
    pub fn signum(&self) -> i8 {
        match self {
            Int::Small(v) => v.signum() as i8,
            Int::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::from_big(BigInt::from(*v).abs()),
            },
            Int::Big(b) => Int::from_big(b.abs()),
        }
    }

    /// Compares absolute values.
    pub fn cmp_abs(&self, other: &Int) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.to_bigint().abs().cmp(&other.to_bigint().abs()),
        }
    }

    /// Floor division by a positive divisor.
    pub fn div_floor(&self, d: &Int) -> Int {
        assert!(d.is_positive(), "div_floor by non-positive divisor");
        match (self, d) {
            (Int::Small(a), Int::Small(b)) => Int::Small(a.div_euclid(*b)),
            _ => {
                use num_integer::Integer;
                Int::from_big(self.to_bigint().div_floor(&d.to_bigint()))
            }
        }
    }

    /// Euclidean remainder, always in `0..|d|`.
    pub fn rem_euclid(&self, d: &Int) -> Int {
        match (self, d) {
            (Int::Small(a), Int::Small(b)) if *b != 0 && !(*a == i64::MIN && *b == -1) => {
                Int::Small(a.rem_euclid(*b))
            }
            _ => {
                use num_integer::Integer;
                let db = d.to_bigint().abs();
                Int::from_big(self.to_bigint().mod_floor(&db))
            }
        }
    }

    /// Exact division; panics in debug builds when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Int) -> Int {
        match (self, d) {
            (Int::Small(a), Int::Small(b)) if !(*a == i64::MIN && *b == -1) => {
                debug_assert_eq!(a % b, 0);
                Int::Small(a / b)
            }
            _ => {
                let (q, r) = {
                    use num_integer::Integer;
                    self.to_bigint().div_rem(&d.to_bigint())
                };
                debug_assert!(r.is_zero());
                Int::from_big(q)
            }
        }
    }

    pub fn gcd(&self, other: &Int) -> Int {
        use num_integer::Integer;
        match (self, other) {
            (Int::Small(a), Int::Small(b)) if *a != i64::MIN && *b != i64::MIN => {
                Int::Small(a.gcd(b))
            }
            _ => Int::from_big(self.to_bigint().gcd(&other.to_bigint())),
        }
    }

    /// Saturating conversion used for ordering heuristics only.
    pub fn to_u64_saturating(&self) -> u64 {
        match self {
            Int::Small(v) if *v >= 0 => *v as u64,
            Int::Small(_) => 0,
            Int::Big(b) => {
                if b.is_negative() {
                    0
                } else {
                    u64::MAX
                }
            }
        }
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::zero()
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<usize> for Int {
    fn from(v: usize) -> Self {
        match i64::try_from(v) {
            Ok(x) => Int::Small(x),
            Err(_) => Int::from_big(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        Int::from_big(v)
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            // A Big value is always outside the i64 range.
            (Int::Small(_), Int::Big(b)) => {
                if b.is_negative() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            (Int::Big(a), Int::Small(_)) => {
                if a.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (Int::Big(a), Int::Big(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Int> for &'a Int {
    type Output = Int;
    #[inline]
    fn add(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_add(*b) {
                return Int::Small(s);
            }
        }
        Int::from_big(self.to_bigint() + rhs.to_bigint())
    }
}

impl<'a> Sub<&'a Int> for &'a Int {
    type Output = Int;
    #[inline]
    fn sub(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_sub(*b) {
                return Int::Small(s);
            }
        }
        Int::from_big(self.to_bigint() - rhs.to_bigint())
    }
}

impl<'a> Mul<&'a Int> for &'a Int {
    type Output = Int;
    #[inline]
    fn mul(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_mul(*b) {
                return Int::Small(s);
            }
        }
        Int::from_big(self.to_bigint() * rhs.to_bigint())
    }
}

impl Neg for &Int {
    type Output = Int;
    #[inline]
    fn neg(self) -> Int {
        match self {
            Int::Small(a) => match a.checked_neg() {
                Some(v) => Int::Small(v),
                None => Int::from_big(-BigInt::from(*a)),
            },
            Int::Big(b) => Int::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    #[inline]
    fn neg(self) -> Int {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Int> for Int {
            type Output = Int;
            #[inline]
            fn $m(self, rhs: Int) -> Int {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Int> for Int {
            type Output = Int;
            #[inline]
            fn $m(self, rhs: &Int) -> Int {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Int> for &'a Int {
            type Output = Int;
            #[inline]
            fn $m(self, rhs: Int) -> Int {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Int> for Int {
    #[inline]
    fn add_assign(&mut self, rhs: &Int) {
        if let (Int::Small(a), Int::Small(b)) = (&mut *self, rhs) {
            if let Some(s) = a.checked_add(*b) {
                *a = s;
                return;
            }
        }
        *self = &*self + rhs;
    }
}

impl AddAssign<Int> for Int {
    #[inline]
    fn add_assign(&mut self, rhs: Int) {
        *self += &rhs;
    }
}

impl SubAssign<&Int> for Int {
    #[inline]
    fn sub_assign(&mut self, rhs: &Int) {
        if let (Int::Small(a), Int::Small(b)) = (&mut *self, rhs) {
            if let Some(s) = a.checked_sub(*b) {
                *a = s;
                return;
            }
        }
        *self = &*self - rhs;
    }
}

impl SubAssign<Int> for Int {
    #[inline]
    fn sub_assign(&mut self, rhs: Int) {
        *self -= &rhs;
    }
}

impl MulAssign<&Int> for Int {
    fn mul_assign(&mut self, rhs: &Int) {
        *self = &*self * rhs;
    }
}

impl Sum for Int {
    fn sum<I: Iterator<Item = Int>>(iter: I) -> Int {
        let mut acc = Int::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl<'a> Sum<&'a Int> for Int {
    fn sum<I: Iterator<Item = &'a Int>>(iter: I) -> Int {
        let mut acc = Int::zero();
        for x in iter {
            acc += x;
        }
        acc
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::zero()
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::one()
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid integer literal {0:?}")]
pub struct ParseIntError(pub String);

impl FromStr for Int {
    type Err = ParseIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Int::Small(v));
        }
        s.parse::<BigInt>()
            .map(Int::from_big)
            .map_err(|_| ParseIntError(s.to_string()))
    }
}

/// Small values serialize as JSON numbers, larger ones as decimal strings.
impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Int::Small(v) if v.unsigned_abs() < (1u64 << 53) => s.serialize_i64(*v),
            _ => s.serialize_str(&self.to_string()),
        }
    }
}

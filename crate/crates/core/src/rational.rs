//! Exact rational numbers.
//!
//! [`Rat`] keeps values whose numerator and denominator fit in an `i64` in an
//! inline representation and promotes to [`BigRational`] only when an
//! operation overflows. Every value is stored in lowest terms with a positive
//! denominator, and a value that fits the small representation is never
//! stored big, so structural equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug)]
enum Repr {
    /// numerator, denominator (> 0), coprime
    Small(i64, i64),
    Big(BigRational),
}

/// An exact rational number in canonical form.
#[derive(Clone, Debug)]
pub struct Rat(Repr);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("`{0}` is not an exact rational (expected `p` or `p/q`)")]
    Malformed(String),
    #[error("`{0}` has a zero denominator")]
    ZeroDenominator(String),
}

impl Rat {
    pub fn zero() -> Self {
        Rat(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rat(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Rat(Repr::Small(n, 1))
    }

    /// `num / den`; panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_big(value: BigRational) -> Self {
        // BigRational is already reduced with a positive denominator.
        match (value.numer().to_i64(), value.denom().to_i64()) {
            (Some(n), Some(d)) => Rat(Repr::Small(n, d)),
            _ => Rat(Repr::Big(value)),
        }
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rat(Repr::Small(n, d)),
            _ => Rat(Repr::Big(BigRational::new_raw(
                BigInt::from(n),
                BigInt::from(d),
            ))),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        matches!(self.0, Repr::Small(_, 1)) || matches!(&self.0, Repr::Big(b) if b.denom().is_one())
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn recip(&self) -> Self {
        match &self.0 {
            Repr::Small(0, _) => panic!("reciprocal of zero"),
            Repr::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Repr::Big(b) => Self::from_big(b.recip()),
        }
    }

    /// True if the value is stored in its canonical form. Always holds for
    /// values produced by this module; exposed for property tests.
    pub fn is_canonical(&self) -> bool {
        match &self.0 {
            Repr::Small(n, d) => *d > 0 && n.gcd(d) == 1 && (*n != 0 || *d == 1),
            Repr::Big(b) => {
                b.denom().is_positive()
                    && b.numer().gcd(b.denom()).is_one()
                    && !(b.numer().to_i64().is_some() && b.denom().to_i64().is_some())
            }
        }
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<BigRational> for Rat {
    fn from(b: BigRational) -> Self {
        Rat::from_big(b)
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn add_ref(x: &Rat, y: &Rat) -> Rat {
    match (&x.0, &y.0) {
        (Repr::Small(0, _), _) => y.clone(),
        (_, Repr::Small(0, _)) => x.clone(),
        (Repr::Small(a, b), Repr::Small(c, d)) => {
            if b == d {
                Rat::from_i128(*a as i128 + *c as i128, *b as i128)
            } else {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rat::from_i128(a * d + c * b, b * d)
            }
        }
        _ => Rat::from_big(x.to_big() + y.to_big()),
    }
}

fn mul_ref(x: &Rat, y: &Rat) -> Rat {
    match (&x.0, &y.0) {
        (Repr::Small(0, _), _) | (_, Repr::Small(0, _)) => Rat::zero(),
        (Repr::Small(1, 1), _) => y.clone(),
        (_, Repr::Small(1, 1)) => x.clone(),
        (Repr::Small(a, b), Repr::Small(c, d)) => {
            Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
        }
        _ => Rat::from_big(x.to_big() * y.to_big()),
    }
}

fn neg_ref(x: &Rat) -> Rat {
    match &x.0 {
        Repr::Small(n, d) => Rat::from_i128(-(*n as i128), *d as i128),
        Repr::Big(b) => Rat::from_big(-b.clone()),
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        neg_ref(&self)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        neg_ref(self)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                $body(self, rhs)
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                $body(&self, &rhs)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                $body(&self, rhs)
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, |x: &Rat, y: &Rat| add_ref(x, &neg_ref(y)));
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, |x: &Rat, y: &Rat| mul_ref(x, &y.recip()));

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = add_ref(self, rhs);
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        *self = add_ref(self, &rhs);
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = add_ref(self, &neg_ref(rhs));
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        *self = mul_ref(self, rhs);
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

fn is_integer_literal(s: &str) -> bool {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Accepts `p` or `p/q` with decimal integers; rejects decimals,
    /// exponents and anything else that would not be exact.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() {
            return Err(ParseRatError::Empty);
        }
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        if !is_integer_literal(num) || !is_integer_literal(den) || den.starts_with('-') {
            return Err(ParseRatError::Malformed(t.to_string()));
        }
        let num: BigInt = num
            .parse()
            .map_err(|_| ParseRatError::Malformed(t.to_string()))?;
        let den: BigInt = den
            .parse()
            .map_err(|_| ParseRatError::Malformed(t.to_string()))?;
        if den.is_zero() {
            return Err(ParseRatError::ZeroDenominator(t.to_string()));
        }
        Ok(Rat::from_big(BigRational::new(num, den)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_zero() {
        let z = Rat::new(0, -7);
        assert_eq!(z, Rat::zero());
        assert!(z.is_canonical());
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn reduces_and_normalizes_sign() {
        let r = Rat::new(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert!(r.is_canonical());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rat::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(sq.is_canonical());
        assert_eq!(sq.numer(), BigInt::from(i64::MAX) * BigInt::from(i64::MAX));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(..)));
        let m = Rat::from_int(i64::MIN);
        let neg = -&m;
        assert_eq!(neg.numer(), -BigInt::from(i64::MIN));
        assert_eq!(-neg, m);
    }

    #[test]
    fn parse_accepts_exact_literals() {
        assert_eq!("3".parse::<Rat>().unwrap(), Rat::from_int(3));
        assert_eq!("-2/4".parse::<Rat>().unwrap(), Rat::new(-1, 2));
        assert_eq!(" 5 / 10 ".parse::<Rat>().unwrap(), Rat::new(1, 2));
        let huge: Rat = "123456789012345678901234567890/11".parse().unwrap();
        assert!(huge.is_canonical());
        assert_eq!(huge.to_string(), "123456789012345678901234567890/11");
    }

    #[test]
    fn parse_rejects_inexact_literals() {
        for bad in ["0.5", "1e3", "1/0", "", "x", "1/-2", "1/2/3"] {
            assert!(bad.parse::<Rat>().is_err(), "{bad} should be rejected");
        }
        let err = "0.5".parse::<Rat>().unwrap_err();
        assert!(err.to_string().contains("0.5"));
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        prop_oneof![
            (-50i64..50, 1i64..20).prop_map(|(n, d)| Rat::new(n, d)),
            (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Rat::new(n, d)),
        ]
    }

    proptest! {
        #[test]
        fn field_laws(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn results_stay_canonical(a in arb_rat(), b in arb_rat()) {
            for r in [&a + &b, &a - &b, &a * &b, -&a] {
                prop_assert!(r.is_canonical());
            }
        }

        #[test]
        fn display_parse_roundtrip(a in arb_rat()) {
            let back: Rat = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn order_matches_bigrational(a in arb_rat(), b in arb_rat()) {
            prop_assert_eq!(a.cmp(&b), a.to_big().cmp(&b.to_big()));
        }
    }
}

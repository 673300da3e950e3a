//! Exact rational arithmetic localized at a prime.
//!
//! Everything downstream (Chern coefficients, lattice entries, homotopy
//! orders) is carried by [`Rational`], a reduced fraction over arbitrary
//! precision integers. The helpers here compute p-adic valuations,
//! p-components and factorials; nothing in the crate touches floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`factorial`].
pub const DEFAULT_FACTORIAL_BOUND: u32 = 64;

/// A rational prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        let small = u32::try_from(p).map_err(|_| Error::NotPrime(p))?;
        if is_prime(p) {
            Ok(Prime(small))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// The next prime strictly greater than `self`.
    pub fn next(self) -> Prime {
        let mut q = u64::from(self.0) + 1;
        while !is_prime(q) {
            q += 1;
        }
        Prime::new(q).expect("primes below 2^32 fit")
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Prime {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let p: u64 = s.trim().parse().map_err(|_| Error::Parse {
            input: s.to_string(),
            reason: "expected a positive integer".into(),
        })?;
        Prime::new(p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes `p` with `lo <= p <= hi`.
pub fn primes_between(lo: u64, hi: u64) -> Vec<Prime> {
    (lo..=hi)
        .filter(|&n| is_prime(n))
        .map(|n| Prime(n as u32))
        .collect()
}

/// Exponent of a prime in a rational number; `Infinite` only for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// A power `p^e` of a prime, used for group orders and exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PPower {
    pub prime: Prime,
    pub exponent: u32,
}

impl PPower {
    pub fn new(prime: Prime, exponent: u32) -> Self {
        PPower { prime, exponent }
    }

    pub fn one(prime: Prime) -> Self {
        PPower { prime, exponent: 0 }
    }

    pub fn value(&self) -> BigInt {
        num_traits::pow(self.prime.to_bigint(), self.exponent as usize)
    }

    /// Reads `n` as a power of `prime`; `None` if `n` has another prime factor.
    pub fn from_value(prime: Prime, n: &BigInt) -> Option<Self> {
        if !n.is_positive() {
            return None;
        }
        let (e, rest) = strip_prime(n, prime);
        rest.is_one().then_some(PPower::new(prime, e as u32))
    }
}

impl PartialOrd for PPower {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.prime == other.prime).then(|| self.exponent.cmp(&other.exponent))
    }
}

impl fmt::Display for PPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            0 => f.write_str("1"),
            1 => write!(f, "{}", self.prime),
            e => write!(f, "{}^{}", self.prime, e),
        }
    }
}

/// Exact fraction, always stored reduced with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den` in lowest terms.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// `base^exp` for a possibly negative exponent.
    pub fn pow(base: impl Into<BigInt>, exp: i32) -> Result<Self> {
        let base = base.into();
        let mag = num_traits::pow(base, exp.unsigned_abs() as usize);
        if exp >= 0 {
            Ok(Rational::integer(mag))
        } else {
            Rational::new(BigInt::one(), mag)
        }
    }

    /// True when the value lies in the localization at `p`.
    pub fn is_p_integral(&self, p: Prime) -> bool {
        !self.denom().is_multiple_of(&p.to_bigint())
    }

    /// The value divided by `p^valuation`; zero stays zero.
    pub fn unit_part(&self, p: Prime) -> Rational {
        match valuation(self, p) {
            Valuation::Infinite => Rational::zero(),
            Valuation::Finite(v) => {
                let scale = Rational::pow(p.to_bigint(), -(v as i32)).expect("nonzero base");
                self * &scale
            }
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::integer(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(n) => Ok(Rational::integer(n)),
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Splits `n = p^e * rest` with `p` not dividing `rest`. `n` must be nonzero.
fn strip_prime(n: &BigInt, p: Prime) -> (u64, BigInt) {
    let pb = p.to_bigint();
    let mut rest = n.clone();
    let mut e = 0u64;
    loop {
        let (q, r) = rest.div_rem(&pb);
        if !r.is_zero() {
            return (e, rest);
        }
        rest = q;
        e += 1;
    }
}

/// Reduced fraction `num/den` with positive denominator.
pub fn normalize(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    Rational::new(num, den)
}

/// Exponent `r` with `x = p^r * u`, `u` a unit at `p`.
pub fn valuation(x: &Rational, p: Prime) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let (up, _) = strip_prime(x.numer(), p);
    let (down, _) = strip_prime(x.denom(), p);
    Valuation::Finite(up as i64 - down as i64)
}

/// Valuation of an integer; convenience over [`valuation`].
pub fn valuation_int(k: &BigInt, p: Prime) -> Valuation {
    if k.is_zero() {
        Valuation::Infinite
    } else {
        Valuation::Finite(strip_prime(k, p).0 as i64)
    }
}

/// Largest power of `p` dividing `|k|`.
pub fn p_component(k: &BigInt, p: Prime) -> Result<BigInt> {
    if k.is_zero() {
        return Err(Error::UndefinedPComponent);
    }
    let (e, _) = strip_prime(k, p);
    Ok(num_traits::pow(p.to_bigint(), e as usize))
}

/// `gcd(|m|, |n|)`, with `gcd(0, n) = |n|`.
pub fn gcd_int(m: &BigInt, n: &BigInt) -> BigInt {
    m.gcd(n)
}

pub fn factorial(n: u32) -> Result<BigInt> {
    factorial_bounded(n, DEFAULT_FACTORIAL_BOUND)
}

pub fn factorial_bounded(n: u32, bound: u32) -> Result<BigInt> {
    if n > bound {
        return Err(Error::FactorialBound { n, bound });
    }
    Ok((1..=n).fold(BigInt::one(), |acc, k| acc * k))
}

// Expression grammar for audit-friendly data files:
//   expr    := ('+' | '-')? product ('/' product)?
//   product := factor (('*' | '·') factor)*
//   factor  := '(' expr ')' | uint ('!' | '^' '-'? uint)?
struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, reason: impl Into<String>) -> Error {
        Error::Parse {
            input: self.src.to_string(),
            reason: format!("{} at offset {}", reason.into(), self.pos),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn expr(&mut self) -> Result<Rational> {
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut value = self.product()?;
        if self.eat('/') {
            let den = self.product()?;
            value = value
                .checked_div(&den)
                .map_err(|_| self.err("zero denominator"))?;
        }
        Ok(if negative { -value } else { value })
    }

    fn product(&mut self) -> Result<Rational> {
        let mut acc = self.factor()?;
        while self.eat('*') || self.eat('·') {
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Rational> {
        if self.eat('(') {
            let inner = self.expr()?;
            if !self.eat(')') {
                return Err(self.err("expected `)`"));
            }
            return Ok(inner);
        }
        let base = self.uint()?;
        if self.eat('!') {
            let n = base
                .to_u32()
                .ok_or_else(|| self.err("factorial argument too large"))?;
            return factorial(n).map(Rational::integer);
        }
        if self.eat('^') {
            let negative = self.eat('-');
            let exp = self
                .uint()?
                .to_i32()
                .ok_or_else(|| self.err("exponent too large"))?;
            let exp = if negative { -exp } else { exp };
            if base.is_zero() && exp < 0 {
                return Err(self.err("zero to a negative power"));
            }
            return Rational::pow(base, exp);
        }
        Ok(Rational::integer(base))
    }
}

/// Parses a factored rational such as `-2^-6*3^-1*71` or `5/(32*11!)`.
pub fn parse_expr(s: &str) -> Result<Rational> {
    let mut parser = Parser {
        src: s,
        chars: s.chars().collect(),
        pos: 0,
    };
    let value = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parser.err("trailing input"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(6, -4).unwrap(), Rational::new(-3, 2).unwrap());
        let zero = normalize(0, 7).unwrap();
        assert_eq!(
            (zero.numer().clone(), zero.denom().clone()),
            (0.into(), 1.into())
        );
        let r = normalize(420318, -60).unwrap();
        assert_eq!(r.numer(), &BigInt::from(-70053));
        assert_eq!(r.denom(), &BigInt::from(10));
        assert_eq!(normalize(1, 0), Err(Error::DivisionByZero));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(
            valuation(&Rational::integer(75), p(5)),
            Valuation::Finite(2)
        );
        assert_eq!(valuation(&q("5/(32*11!)"), p(5)), Valuation::Finite(-1));
        assert_eq!(valuation(&Rational::zero(), p(7)), Valuation::Infinite);
    }

    #[test]
    fn p_component_examples() {
        assert_eq!(p_component(&50.into(), p(5)).unwrap(), BigInt::from(25));
        assert_eq!(p_component(&1463.into(), p(7)).unwrap(), BigInt::from(7));
        assert_eq!(p_component(&8.into(), p(5)).unwrap(), BigInt::from(1));
        assert_eq!(p_component(&(-50).into(), p(5)).unwrap(), BigInt::from(25));
        assert_eq!(
            p_component(&0.into(), p(5)),
            Err(Error::UndefinedPComponent)
        );
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_int(&25.into(), &325.into()), BigInt::from(25));
        assert_eq!(gcd_int(&0.into(), &12.into()), BigInt::from(12));
        assert_eq!(gcd_int(&7.into(), &7.into()), BigInt::from(7));
        assert_eq!(gcd_int(&(-14).into(), &21.into()), BigInt::from(7));
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(factorial(0).unwrap(), BigInt::from(1));
        assert_eq!(factorial(13).unwrap(), BigInt::from(6227020800u64));
        let f29 = factorial(29).unwrap();
        assert_eq!(f29.to_string(), "8841761993739701954543616000000");
        assert_eq!(f29.to_string().len(), 31);
        assert_eq!(
            factorial(65),
            Err(Error::FactorialBound { n: 65, bound: 64 })
        );
    }

    #[test]
    fn parses_factored_forms() {
        assert_eq!(q("2^-3*5*13"), Rational::new(65, 8).unwrap());
        assert_eq!(q("-2^-6*3^-1*71"), Rational::new(-71, 192).unwrap());
        assert_eq!(q("5/(32*11!)"), Rational::new(5, 32 * 39916800i64).unwrap());
        assert_eq!(q("5/32*11!"), q("5/(32*11!)"));
        assert_eq!(q("3·5"), Rational::integer(15));
        assert_eq!(q(" -7 "), Rational::integer(-7));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("2^".parse::<Rational>().is_err());
        assert!("3 4".parse::<Rational>().is_err());
    }

    #[test]
    fn primes() {
        assert!(Prime::new(2).is_ok());
        assert_eq!(Prime::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Prime::new(91), Err(Error::NotPrime(91)));
        assert_eq!(p(31).next(), p(37));
        let ps: Vec<u32> = primes_between(5, 31).into_iter().map(Prime::get).collect();
        assert_eq!(ps, vec![5, 7, 11, 13, 17, 19, 23, 29, 31]);
    }

    #[test]
    fn serde_roundtrip_keeps_value() {
        let x = q("-2^-2*3*5*2207*17977");
        let json = serde_json::to_string(&x).unwrap();
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(x, back);
        let from_int: Rational = serde_json::from_str("-12").unwrap();
        assert_eq!(from_int, Rational::integer(-12));
    }

    #[test]
    fn unit_part_strips_prime() {
        let x = q("2^-3*5^2*13");
        assert_eq!(x.unit_part(p(5)), q("2^-3*13"));
        assert!(q("9/8").is_p_integral(p(5)));
        assert!(!q("1/5").is_p_integral(p(5)));
    }
}

//! Exact arithmetic in the rationals and in real quadratic fields `Q(sqrt d)`.
//!
//! Every value is stored as `a + b*sqrt(d)` with `a, b` reduced rationals and
//! `d` squarefree. When `b = 0` the radicand is forced to `1`, so two values
//! are equal as reals exactly when they are structurally equal. The canonical
//! integer view `(p + q*sqrt(d)) / r` with `gcd(p, q, r) = 1` and `r > 0` is
//! available through [`ExactReal::parts`].
//!
//! Binary operators panic when the operands live in different quadratic
//! fields or on division by zero, like the integer types they wrap; the
//! `checked_*` methods report those cases as errors instead.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A real number that is rational or quadratic over `Q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactReal {
    a: BigRational,
    b: BigRational,
    d: u64,
}

/// Primitive integer polynomial `p x^2 + q x + r` with `p > 0` and its
/// discriminant `q^2 - 4 p r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly2 {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
    pub disc: BigInt,
}

impl IntPoly2 {
    /// Evaluates the polynomial exactly at `x`.
    pub fn eval(&self, x: &ExactReal) -> ExactReal {
        let p = ExactReal::from(self.p.clone());
        let q = ExactReal::from(self.q.clone());
        let r = ExactReal::from(self.r.clone());
        &(&(&p * x) * x) + &(&(&q * x) + &r)
    }
}

/// Splits `n = s^2 * d` with `d` squarefree.
///
/// Trial division runs only up to the cube root of what is left; a cofactor
/// without small prime factors has at most two prime factors, so it is either
/// squarefree or a perfect square.
pub fn squarefree_split(n: u64) -> (u64, u64) {
    assert!(n > 0, "squarefree_split of zero");
    let mut rest = n;
    let mut square = 1u64;
    let mut core = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p).saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            square *= p.pow(e / 2);
            if e % 2 == 1 {
                core *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        let s = rest.sqrt();
        if s * s == rest {
            square *= s;
        } else {
            core *= rest;
        }
    }
    (square, core)
}

/// [`squarefree_split`] for integers past `u64`. Small primes are divided
/// out until the cofactor is a perfect square; `None` when the squarefree
/// part cannot be certified or does not fit a `u64`.
pub fn squarefree_split_big(n: &BigInt) -> Option<(BigInt, u64)> {
    const BOUND: u32 = 1 << 20;
    let perfect_square = |m: &BigInt| {
        let s = m.sqrt();
        (&s * &s == *m).then_some(s)
    };
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut core = BigInt::one();
    if let Some(s) = perfect_square(&rest) {
        return Some((s, 1));
    }
    let mut p = 2u32;
    while p < BOUND {
        if (&rest % p).is_zero() {
            let mut e = 0;
            while (&rest % p).is_zero() {
                rest /= p;
                e += 1;
            }
            square *= BigInt::from(p).pow(e / 2);
            if e % 2 == 1 {
                core *= p;
            }
            if let Some(s) = perfect_square(&rest) {
                return Some((square * s, core.to_u64()?));
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // no factor below BOUND and not a square: squarefree if it has at most
    // two prime factors
    let b = BigInt::from(BOUND);
    if rest < &b * &b * &b {
        return Some((square, (core * rest).to_u64()?));
    }
    None
}

fn rat(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

fn big_sqrt_floor(n: &BigInt) -> BigInt {
    n.sqrt()
}

impl ExactReal {
    pub fn zero() -> Self {
        ExactReal {
            a: BigRational::zero(),
            b: BigRational::zero(),
            d: 1,
        }
    }

    pub fn one() -> Self {
        Self::from(1i64)
    }

    /// The rational `num / den`.
    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from(rat(num.into(), den)))
    }

    /// `(p + q*sqrt(n)) / r`, canonicalized. Square factors of `n` are pulled
    /// out and a perfect-square `n` collapses to a rational.
    pub fn surd(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        n: impl Into<BigInt>,
        r: impl Into<BigInt>,
    ) -> Result<Self> {
        let (p, q, n, r) = (p.into(), q.into(), n.into(), r.into());
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !n.is_positive() {
            return Err(Error::BadRadicand(n.to_string()));
        }
        let (s, d) = match n.to_u64() {
            Some(n64) => {
                let (s, d) = squarefree_split(n64);
                (BigInt::from(s), d)
            }
            None => squarefree_split_big(&n).ok_or_else(|| {
                Error::BadRadicand(format!("cannot extract the squarefree part of {n}"))
            })?,
        };
        let q = q * s;
        if d == 1 {
            return Ok(Self::from(rat(p + q, r)));
        }
        Ok(Self::from_parts_unchecked(rat(p, r.clone()), rat(q, r), d))
    }

    /// `sqrt(n)` for a positive integer `n`.
    pub fn sqrt_int(n: impl Into<BigInt>) -> Result<Self> {
        Self::surd(0, 1, n, 1)
    }

    fn from_parts_unchecked(a: BigRational, b: BigRational, d: u64) -> Self {
        if b.is_zero() || d == 1 {
            debug_assert!(d == 1 || b.is_zero());
            let a = if d == 1 { a + b } else { a };
            ExactReal {
                a,
                b: BigRational::zero(),
                d: 1,
            }
        } else {
            ExactReal { a, b, d }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.is_rational() && self.a.is_zero()
    }

    /// The squarefree radicand, `None` for rationals.
    pub fn radicand(&self) -> Option<u64> {
        (!self.is_rational()).then_some(self.d)
    }

    /// Rational part and coefficient of `sqrt(d)`.
    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_coeff(&self) -> &BigRational {
        &self.b
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    /// Canonical `(p, q, d, r)` with value `(p + q*sqrt(d)) / r`,
    /// `gcd(p, q, r) = 1` and `r > 0`. Rationals report `q = 0, d = 1`.
    pub fn parts(&self) -> (BigInt, BigInt, u64, BigInt) {
        let r = self.a.denom().lcm(self.b.denom());
        let p = self.a.numer() * (&r / self.a.denom());
        let q = self.b.numer() * (&r / self.b.denom());
        (p, q, self.d, r)
    }

    fn radicand_with(&self, other: &Self) -> Result<u64> {
        match (self.radicand(), other.radicand()) {
            (Some(x), Some(y)) if x != y => Err(Error::IncompatibleRadicand(x, y)),
            (Some(x), _) | (_, Some(x)) => Ok(x),
            (None, None) => Ok(1),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.radicand_with(other)?;
        Ok(Self::from_parts_unchecked(
            &self.a + &other.a,
            &self.b + &other.b,
            d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let d = self.radicand_with(other)?;
        Ok(Self::from_parts_unchecked(
            &self.a - &other.a,
            &self.b - &other.b,
            d,
        ))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.radicand_with(other)?;
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::from_parts_unchecked(a, b, d))
    }

    /// Field norm `a^2 - b^2 d`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d))
    }

    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::from_parts_unchecked(
            &self.a / &n,
            -(&self.b / &n),
            self.d,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.radicand_with(other)?;
        self.checked_mul(&other.checked_inv()?)
    }

    pub fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero")
    }

    /// Sign of the value: -1, 0 or 1, decided without floating point.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 with b^2 d
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact ordering; fails only for operands in different quadratic fields.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.signum().cmp(&0))
    }

    /// The unique integer `n` with `n <= x < n + 1`.
    pub fn floor(&self) -> BigInt {
        let (p, q, d, r) = self.parts();
        if q.is_zero() {
            return p.div_floor(&r);
        }
        let n = &q * &q * BigInt::from(d);
        let s = big_sqrt_floor(&n);
        // q*sqrt(d) lies strictly between consecutive integers
        let lower = if q.is_positive() { p + s } else { p - s - 1 };
        lower.div_floor(&r)
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Result<Self> {
        if self.is_rational() {
            return Err(Error::NotQuadratic);
        }
        Ok(ExactReal {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        })
    }

    /// Reduced quadratic irrational: `x > 1` and `-1 < x' < 0`.
    pub fn is_reduced(&self) -> Result<bool> {
        let c = self.conjugate()?;
        let one = Self::one();
        Ok(self > &one && c.is_negative() && (&c + &one).is_positive())
    }

    /// Primitive integer polynomial with positive leading coefficient
    /// vanishing at `x`.
    pub fn minimal_polynomial(&self) -> Result<IntPoly2> {
        if self.is_rational() {
            return Err(Error::NotQuadratic);
        }
        let (p, q, d, r) = self.parts();
        // r x - p = q sqrt(d)  =>  r^2 x^2 - 2 p r x + p^2 - q^2 d = 0
        let a2 = &r * &r;
        let a1 = BigInt::from(-2) * &p * &r;
        let a0 = &p * &p - &q * &q * BigInt::from(d);
        let g = a2.gcd(&a1).gcd(&a0);
        let (pp, qq, rr) = (a2 / &g, a1 / &g, a0 / &g);
        let disc = &qq * &qq - BigInt::from(4) * &pp * &rr;
        Ok(IntPoly2 {
            p: pp,
            q: qq,
            r: rr,
            disc,
        })
    }

    /// Nearest `f64`, computed so that cancellation in `p + q*sqrt(d)` does
    /// not lose relative precision.
    pub fn to_f64(&self) -> f64 {
        if self.is_rational() {
            return rational_to_f64(&self.a);
        }
        let (p, q, d, r) = self.parts();
        let rf = bigint_to_f64(&r);
        let qs = bigint_to_f64(&q) * (d as f64).sqrt();
        if p.is_zero() || p.is_positive() == q.is_positive() {
            return (bigint_to_f64(&p) + qs) / rf;
        }
        // p + q sqrt d = (p^2 - q^2 d) / (p - q sqrt d), and the denominator
        // has no cancellation
        let num = &p * &p - &q * &q * BigInt::from(d);
        bigint_to_f64(&num) / ((bigint_to_f64(&p) - qs) * rf)
    }

    /// Parses the CLI number grammar, see [`parse`].
    pub fn parse(text: &str) -> Result<Self> {
        parse(text)
    }

    /// Parses and rejects values that are not strictly positive.
    pub fn parse_positive(text: &str) -> Result<Self> {
        let x = parse(text)?;
        if !x.is_positive() {
            return Err(Error::NonPositiveValue(text.trim().to_string()));
        }
        Ok(x)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

fn sign_of(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(if x.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64()
        .unwrap_or_else(|| bigint_to_f64(x.numer()) / bigint_to_f64(x.denom()))
}

impl From<BigRational> for ExactReal {
    fn from(a: BigRational) -> Self {
        ExactReal {
            a,
            b: BigRational::zero(),
            d: 1,
        }
    }
}

impl From<BigInt> for ExactReal {
    fn from(n: BigInt) -> Self {
        Self::from(BigRational::from_integer(n))
    }
}

impl From<i64> for ExactReal {
    fn from(n: i64) -> Self {
        Self::from(BigInt::from(n))
    }
}

impl From<&BigInt> for ExactReal {
    fn from(n: &BigInt) -> Self {
        Self::from(n.clone())
    }
}

impl PartialOrd for ExactReal {
    /// `None` when the operands live in different quadratic fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl Neg for &ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        ExactReal {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }
}

impl Neg for ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        ExactReal {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&ExactReal> for &ExactReal {
            type Output = ExactReal;
            fn $method(self, rhs: &ExactReal) -> ExactReal {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}: {}", stringify!($method), e),
                }
            }
        }
        impl $tr<ExactReal> for ExactReal {
            type Output = ExactReal;
            fn $method(self, rhs: ExactReal) -> ExactReal {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&ExactReal> for ExactReal {
            type Output = ExactReal;
            fn $method(self, rhs: &ExactReal) -> ExactReal {
                (&self).$method(rhs)
            }
        }
        impl $tr<ExactReal> for &ExactReal {
            type Output = ExactReal;
            fn $method(self, rhs: ExactReal) -> ExactReal {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl fmt::Display for ExactReal {
    /// Shortest production of the number grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q, d, r) = self.parts();
        if q.is_zero() {
            return if r.is_one() {
                write!(f, "{p}")
            } else {
                write!(f, "{p}/{r}")
            };
        }
        let term = |q: &BigInt| -> String {
            if q.is_one() {
                format!("sqrt({d})")
            } else if *q == -BigInt::one() {
                format!("-sqrt({d})")
            } else {
                format!("{q}*sqrt({d})")
            }
        };
        let inner = if p.is_zero() {
            term(&q)
        } else if q.is_positive() {
            format!("{p}+{}", term(&q))
        } else {
            format!("{p}-{}", term(&-q.clone()))
        };
        if r.is_one() {
            write!(f, "{inner}")
        } else if p.is_zero() {
            write!(f, "{inner}/{r}")
        } else {
            write!(f, "({inner})/{r}")
        }
    }
}

impl fmt::Debug for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactReal({self})")
    }
}

impl FromStr for ExactReal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

/// Orders `x` and `y` by their float approximations `fx`, `fy` when those
/// are clearly apart, exactly otherwise. Panics on mixed radicands.
pub(crate) fn cmp_hinted(x: &ExactReal, fx: f64, y: &ExactReal, fy: f64) -> Ordering {
    if (fx - fy).abs() > 1e-9 * (1.0 + fx.abs().max(fy.abs())) {
        fx.partial_cmp(&fy).expect("finite")
    } else {
        x.partial_cmp(y).expect("one quadratic field")
    }
}

/// Parses `INT`, `INT/INT`, `sqrt(INT)`, `(INT ± INT*sqrt(INT))/INT` and
/// `INT ± INT*sqrt(INT)`. Whitespace is free, the `*` and a unit coefficient
/// before `sqrt` may be omitted, and a single term may carry a trailing
/// `/INT`.
pub fn parse(text: &str) -> Result<ExactReal> {
    let raw: Vec<char> = text.chars().collect();
    for (i, c) in raw.iter().enumerate() {
        if c.is_ascii_digit() {
            let next = raw[i + 1..].iter().find(|c| !c.is_whitespace());
            if raw.get(i + 1).is_some_and(|c| c.is_whitespace())
                && next.is_some_and(|c| c.is_ascii_digit())
            {
                return Err(Error::Syntax(format!(
                    "whitespace inside an integer in {text:?}"
                )));
            }
        }
    }
    let mut p = Parser {
        chars: raw.into_iter().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        text,
    };
    let value = p.number()?;
    if p.pos != p.chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Syntax(format!("{what} at offset {} in {:?}", self.pos, self.text))
    }

    fn peek(&self) -> Option<char> {
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

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn number(&mut self) -> Result<ExactReal> {
        let (value, terms) = if self.eat('(') {
            let v = self.sum()?;
            self.expect(')')?;
            (v.0, 1)
        } else {
            self.sum()?
        };
        if self.eat('/') {
            if terms > 1 {
                return Err(self.err("ambiguous division, parenthesize the numerator"));
            }
            let den = self.integer()?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(&value / &ExactReal::from(den));
        }
        Ok(value)
    }

    fn sum(&mut self) -> Result<(ExactReal, usize)> {
        let mut acc = self.term(false)?;
        let mut terms = 1;
        loop {
            let negate = if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else {
                break;
            };
            let t = self.term(negate)?;
            acc = acc.checked_add(&t)?;
            terms += 1;
        }
        Ok((acc, terms))
    }

    fn term(&mut self, negate: bool) -> Result<ExactReal> {
        let mut sign = if negate { -1 } else { 1 };
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            if c == '-' {
                sign = -sign;
            }
        }
        let coeff = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let n = self.unsigned()?;
            self.eat('*');
            if !self.at_sqrt() {
                return Ok(ExactReal::from(n * sign));
            }
            n
        } else {
            BigInt::one()
        };
        if !self.at_sqrt() {
            return Err(self.err("expected an integer or sqrt(...)"));
        }
        self.pos += 4;
        self.expect('(')?;
        let radicand = self.integer()?;
        self.expect(')')?;
        ExactReal::surd(0, coeff * sign, radicand, 1)
    }

    fn at_sqrt(&self) -> bool {
        self.chars[self.pos..].starts_with(&['s', 'q', 'r', 't'])
    }

    fn integer(&mut self) -> Result<BigInt> {
        let neg = self.eat('-');
        let n = self.unsigned()?;
        Ok(if neg { -n } else { n })
    }

    fn unsigned(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digit string"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(s: &str) -> ExactReal {
        parse(s).unwrap()
    }

    #[test]
    fn rational_addition() {
        assert_eq!(&x("1/2") + &x("1/3"), x("5/6"));
    }

    #[test]
    fn golden_ratio_square() {
        // (1 + sqrt5)^2 / 4 = (6 + 2 sqrt5) / 4
        let phi = x("(1+sqrt(5))/2");
        assert_eq!(&phi * &phi, x("(3+sqrt(5))/2"));
        assert_eq!(&phi * &phi, &phi + &ExactReal::one());
    }

    #[test]
    fn inverse_of_golden_conjugate() {
        let y = x("(-1+sqrt(5))/2");
        let inv = y.inv();
        assert_eq!(inv, x("(1+sqrt(5))/2"));
        assert_eq!(&inv * &y, ExactReal::one());
    }

    #[test]
    fn quadratic_cancels_to_rational() {
        let s = x("sqrt(2)");
        let r = &s * &s;
        assert!(r.is_rational());
        assert_eq!(r, ExactReal::from(2));
        assert_eq!((&s - &s).radicand(), None);
    }

    #[test]
    fn division_errors() {
        assert_eq!(
            x("3").checked_div(&ExactReal::zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(ExactReal::zero().checked_inv(), Err(Error::DivisionByZero));
        assert!(matches!(parse("1/0"), Err(Error::DivisionByZero)));
    }

    #[test]
    fn mixed_radicands_rejected() {
        let e = x("sqrt(2)").checked_add(&x("sqrt(3)"));
        assert_eq!(e, Err(Error::IncompatibleRadicand(2, 3)));
        assert_eq!(x("sqrt(2)").partial_cmp(&x("sqrt(3)")), None);
        assert!(x("sqrt(2)").try_cmp(&x("sqrt(3)")).is_err());
    }

    #[test]
    fn comparisons() {
        assert_eq!(x("sqrt(2)").try_cmp(&x("3/2")).unwrap(), Ordering::Less);
        assert_eq!(
            x("(1+sqrt(5))/2").try_cmp(&ExactReal::one()).unwrap(),
            Ordering::Greater
        );
        let lhs = x("(3+sqrt(5))/2");
        let rhs = &x("(1+sqrt(5))/2") + &ExactReal::one();
        assert_eq!(lhs.try_cmp(&rhs).unwrap(), Ordering::Equal);
    }

    #[test]
    fn floors() {
        assert_eq!(x("7/5").floor(), BigInt::from(1));
        assert_eq!(x("(1+sqrt(5))/2").floor(), BigInt::from(1));
        assert_eq!(x("(3+sqrt(13))/2").floor(), BigInt::from(3));
        assert_eq!(x("-7/5").floor(), BigInt::from(-2));
        assert_eq!(x("1-sqrt(2)").floor(), BigInt::from(-1));
        assert_eq!(x("-sqrt(2)").floor(), BigInt::from(-2));
        assert_eq!(x("(1-sqrt(5))/2").floor(), BigInt::from(-1));
        assert_eq!(x("4").floor(), BigInt::from(4));
    }

    #[test]
    fn minimal_polynomials() {
        let cases = [
            ("(1+sqrt(5))/2", (1, -1, -1, 5)),
            ("1+sqrt(2)", (1, -2, -1, 8)),
            ("(1+sqrt(3))/2", (2, -2, -1, 12)),
        ];
        for (s, (p, q, r, disc)) in cases {
            let m = x(s).minimal_polynomial().unwrap();
            assert_eq!(
                (m.p.clone(), m.q.clone(), m.r.clone(), m.disc.clone()),
                (
                    BigInt::from(p),
                    BigInt::from(q),
                    BigInt::from(r),
                    BigInt::from(disc)
                ),
                "{s}"
            );
            assert!(m.eval(&x(s)).is_zero());
        }
        assert_eq!(x("7/5").minimal_polynomial(), Err(Error::NotQuadratic));
    }

    #[test]
    fn conjugates_and_reduction() {
        let phi = x("(1+sqrt(5))/2");
        assert_eq!(phi.conjugate().unwrap(), x("(1-sqrt(5))/2"));
        assert!(phi.is_reduced().unwrap());
        assert!(!x("sqrt(2)").is_reduced().unwrap());
        assert!(x("1+sqrt(2)").is_reduced().unwrap());
        assert_eq!(x("2").conjugate(), Err(Error::NotQuadratic));
        assert_eq!(x("2").is_reduced(), Err(Error::NotQuadratic));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(x("7/5"), ExactReal::ratio(7, 5).unwrap());
        let g = x("(1+sqrt(5))/2");
        let (p, q, d, r) = g.parts();
        assert_eq!((p, q, d, r), (1.into(), 1.into(), 5, 2.into()));
        let h = x("(2+2*sqrt(8))/4");
        assert_eq!(h.parts(), (1.into(), 2.into(), 2, 2.into()));
        assert_eq!(x(" ( 1 + 2 sqrt( 8 ) ) / 3 "), x("(1+4*sqrt(2))/3"));
        assert_eq!(x("sqrt(9)"), ExactReal::from(3));
        assert_eq!(x("3 - sqrt(2)"), &ExactReal::from(3) - &x("sqrt(2)"));
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "",
            "abc",
            "1+",
            "sqrt(2",
            "(1+sqrt(2)",
            "1+sqrt(2)/2",
            "sqrt(0)",
            "sqrt(-3)",
            "1.5",
            "2 3",
        ] {
            assert!(parse(bad).is_err(), "{bad:?} should fail");
        }
        assert!(matches!(parse("sqrt(-3)"), Err(Error::BadRadicand(_))));
        assert!(matches!(
            ExactReal::parse_positive("1-sqrt(2)"),
            Err(Error::NonPositiveValue(_))
        ));
        assert!(matches!(
            ExactReal::parse_positive("0"),
            Err(Error::NonPositiveValue(_))
        ));
    }

    #[test]
    fn format_shortest() {
        for (s, want) in [
            ("7/5", "7/5"),
            ("3", "3"),
            ("sqrt(2)", "sqrt(2)"),
            ("(1+sqrt(5))/2", "(1+sqrt(5))/2"),
            ("1-sqrt(2)", "1-sqrt(2)"),
            ("(0-sqrt(5))/2", "-sqrt(5)/2"),
            ("3*sqrt(7)", "3*sqrt(7)"),
            ("(1-3*sqrt(7))/5", "(1-3*sqrt(7))/5"),
        ] {
            assert_eq!(x(s).to_string(), want);
            assert_eq!(x(want), x(s));
        }
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_split(8), (2, 2));
        assert_eq!(squarefree_split(12), (2, 3));
        assert_eq!(squarefree_split(1), (1, 1));
        assert_eq!(squarefree_split(49 * 3), (7, 3));
        assert_eq!(squarefree_split(1_000_003 * 1_000_003), (1_000_003, 1));
        assert_eq!(
            squarefree_split(1_000_003 * 999_983),
            (1, 1_000_003 * 999_983)
        );
        assert_eq!(squarefree_split(72), (6, 2));
        let big = BigInt::from(10u64).pow(30) * BigInt::from(7);
        assert_eq!(
            squarefree_split_big(&big),
            Some((BigInt::from(10u64).pow(15), 7))
        );
        let p = BigInt::from(1_000_000_007u64);
        assert_eq!(
            squarefree_split_big(&(&p * &p * 13 * 4)),
            Some((p.clone() * 2, 13))
        );
    }

    #[test]
    fn to_f64_without_cancellation() {
        let v = x("(1+sqrt(5))/2");
        assert!((v.to_f64() - 1.618_033_988_749_895).abs() < 1e-15);
        // 99 - 70 sqrt 2 is about 0.00505
        let small = x("99-70*sqrt(2)");
        let want = 1.0 / (99.0 + 70.0 * 2f64.sqrt());
        assert!(((small.to_f64() - want) / want).abs() < 1e-14);
    }
}

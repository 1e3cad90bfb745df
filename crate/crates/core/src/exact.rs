//! Exact arithmetic on finite ℚ-linear combinations of square roots of
//! squarefree integers.
//!
//! Every real quantity in the library (interval endpoints, lengths,
//! translations) is a [`SurdReal`]. The square roots of distinct squarefree
//! integers are linearly independent over ℚ, so two values are equal exactly
//! when their coefficient maps agree, and the sign of a nonzero value can be
//! found by refining a dyadic enclosure until it excludes zero.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = BigRational;

/// Radicands above this bound are rejected by the parser: squarefree
/// normalization is done by trial division.
pub const MAX_RADICAND: u64 = 1 << 40;

/// Starting precision, in fractional bits, of the sign oracle.
const SIGN_START_BITS: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseSurdError {
    #[error("malformed surd text at byte {pos}: {msg}")]
    Malformed { pos: usize, msg: &'static str },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("radicand {0} is too large to normalize")]
    RadicandTooLarge(u64),
}

/// Exact real number `Σ q_d·√d` over distinct squarefree `d ≥ 1`.
///
/// Terms are sorted by `d` and never carry a zero coefficient, so
/// structural equality and hashing are value equality.
#[derive(Clone, Eq, Default)]
pub struct SurdReal {
    terms: Vec<(u64, Rational)>,
}

impl PartialEq for SurdReal {
    // coefficients are in lowest terms, so numerators and denominators can
    // be compared directly
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((d, p), (e, q))| d == e && p.numer() == q.numer() && p.denom() == q.denom())
    }
}

impl std::hash::Hash for SurdReal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (d, q) in &self.terms {
            d.hash(state);
            q.numer().hash(state);
            q.denom().hash(state);
        }
    }
}

/// Rational shorthand used all over the crate and its tests.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Splits `n` into `(k, d)` with `n = k²·d` and `d` squarefree.
pub fn squarefree_split(n: u64) -> (u64, u64) {
    let mut k = 1u64;
    let mut d = n;
    let mut p = 2u64;
    while p * p <= d {
        while d.is_multiple_of(p * p) {
            d /= p * p;
            k *= p;
        }
        p += 1;
    }
    (k, d)
}

thread_local! {
    static ISQRT_CACHE: RefCell<HashMap<(u64, u32), BigInt>> = RefCell::new(HashMap::new());
}

/// `floor(√d · 2^bits)`.
fn scaled_isqrt(d: u64, bits: u32) -> BigInt {
    ISQRT_CACHE.with(|cache| {
        cache
            .borrow_mut()
            .entry((d, bits))
            .or_insert_with(|| (BigInt::from(d) << (2 * bits as usize)).sqrt())
            .clone()
    })
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// `(numerator, denominator)` when both fit in an `i64`.
fn small(q: &Rational) -> Option<(i64, i64)> {
    Some((q.numer().to_i64()?, q.denom().to_i64()?))
}

/// Builds `n/d` in lowest terms from a reduced `i128` pair, if it fits.
fn from_reduced(n: i128, d: i128) -> Option<Rational> {
    let n = i64::try_from(n).ok()?;
    let d = i64::try_from(d).ok()?;
    Some(Rational::new_raw(BigInt::from(n), BigInt::from(d)))
}

/// `p + q`, or `p - q` when `negate` is set. Word-sized operands skip the
/// big-integer gcd.
fn add_q(p: &Rational, q: &Rational, negate: bool) -> Rational {
    if let (Some((a, b)), Some((c, d))) = (small(p), small(q)) {
        let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
        let c = if negate { -c } else { c };
        let g = b.gcd(&d);
        let den = b / g * d;
        let num = a * (d / g) + c * (b / g);
        let h = num.gcd(&den);
        if let Some(r) = from_reduced(num / h, den / h) {
            return r;
        }
    }
    if negate {
        p - q
    } else {
        p + q
    }
}

fn mul_q(p: &Rational, q: &Rational) -> Rational {
    if let (Some((a, b)), Some((c, d))) = (small(p), small(q)) {
        if a == 0 || c == 0 {
            return Rational::zero();
        }
        let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
        let g1 = a.gcd(&d);
        let g2 = c.gcd(&b);
        if let Some(r) = from_reduced((a / g1) * (c / g2), (b / g2) * (d / g1)) {
            return r;
        }
    }
    p * q
}

/// Floating-point value of a coefficient; exact division for small ones.
fn q_f64(q: &Rational) -> Option<f64> {
    match small(q) {
        Some((n, d)) => Some(n as f64 / d as f64),
        None => q.to_f64(),
    }
}

impl SurdReal {
    pub fn zero() -> Self {
        SurdReal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            SurdReal {
                terms: vec![(1, q)],
            }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `q·√n` for any positive `n`; square factors of `n` are pulled out.
    pub fn term(q: Rational, n: u64) -> Self {
        if n == 0 || q.is_zero() {
            return Self::zero();
        }
        let (k, d) = squarefree_split(n);
        let q = q * Rational::from_integer(BigInt::from(k));
        SurdReal {
            terms: vec![(d, q)],
        }
    }

    /// `√n`.
    pub fn sqrt(n: u64) -> Self {
        Self::term(Rational::one(), n)
    }

    /// Builds a value from arbitrary `(radicand, coefficient)` pairs,
    /// normalizing radicands and merging repeated ones.
    pub fn from_terms<I: IntoIterator<Item = (u64, Rational)>>(terms: I) -> Self {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (n, q)| &acc + &Self::term(q, n))
    }

    pub fn terms(&self) -> &[(u64, Rational)] {
        &self.terms
    }

    /// Coefficient of `√d` (zero when absent).
    pub fn coeff(&self, d: u64) -> Rational {
        self.terms
            .iter()
            .find(|(e, _)| *e == d)
            .map(|(_, q)| q.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(1, q)] => Some(q.clone()),
            _ => None,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        SurdReal {
            terms: self.terms.iter().map(|(d, c)| (*d, mul_q(c, q))).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&Rational::from_integer(BigInt::from(n)))
    }

    pub fn half(&self) -> Self {
        self.scale(&rat(1, 2))
    }

    /// Dyadic enclosure `[lo, hi] · 2^-bits` of the value.
    pub fn enclosure(&self, bits: u32) -> (BigInt, BigInt) {
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (d, q) in &self.terms {
            let n = q.numer();
            let m = q.denom();
            if *d == 1 {
                let v = n << (bits as usize);
                lo += v.div_floor(m);
                hi += ceil_div(&v, m);
            } else {
                let s = scaled_isqrt(*d, bits);
                let s1 = &s + 1u32;
                if n.is_positive() {
                    lo += (n * &s).div_floor(m);
                    hi += ceil_div(&(n * &s1), m);
                } else {
                    lo += (n * &s1).div_floor(m);
                    hi += ceil_div(&(n * &s), m);
                }
            }
        }
        (lo, hi)
    }

    /// Exact sign: -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        if self.terms.is_empty() {
            return 0;
        }
        let first = self.terms[0].1.is_positive();
        if self.terms.iter().all(|(_, q)| q.is_positive() == first) {
            return if first { 1 } else { -1 };
        }
        if let Some(s) = self.float_sign() {
            return s;
        }
        let mut bits = SIGN_START_BITS;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
        }
    }

    /// Sign from a floating-point estimate, when the estimate is far enough
    /// from zero to be trusted. Each term is off by a few ulps at most, so
    /// a margin of `1e-12` times the sum of magnitudes is safe.
    fn float_sign(&self) -> Option<i8> {
        let mut sum = 0.0f64;
        let mut mag = 0.0f64;
        for (d, q) in &self.terms {
            let v = q_f64(q)? * (*d as f64).sqrt();
            if !v.is_finite() {
                return None;
            }
            sum += v;
            mag += v.abs();
        }
        let margin = mag * 1e-12;
        if sum > margin {
            Some(1)
        } else if sum < -margin {
            Some(-1)
        } else {
            None
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

    /// Rough floating-point value, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, q)| q.to_f64().unwrap_or(f64::NAN) * (*d as f64).sqrt())
            .sum()
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let flip = |q: &Rational| if negate_other { -q } else { q.clone() };
        while i < self.terms.len() || j < other.terms.len() {
            match (self.terms.get(i), other.terms.get(j)) {
                (Some((d, p)), Some((e, q))) if d == e => {
                    let s = add_q(p, q, negate_other);
                    if !s.is_zero() {
                        out.push((*d, s));
                    }
                    i += 1;
                    j += 1;
                }
                (Some((d, p)), Some((e, _))) if d < e => {
                    out.push((*d, p.clone()));
                    i += 1;
                }
                (Some((d, p)), None) => {
                    out.push((*d, p.clone()));
                    i += 1;
                }
                (_, Some((e, q))) => {
                    out.push((*e, flip(q)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        SurdReal { terms: out }
    }
}

impl From<Rational> for SurdReal {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for SurdReal {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Add<&SurdReal> for &SurdReal {
    type Output = SurdReal;
    fn add(self, rhs: &SurdReal) -> SurdReal {
        self.merge(rhs, false)
    }
}

impl Sub<&SurdReal> for &SurdReal {
    type Output = SurdReal;
    fn sub(self, rhs: &SurdReal) -> SurdReal {
        self.merge(rhs, true)
    }
}

impl Add for SurdReal {
    type Output = SurdReal;
    fn add(self, rhs: SurdReal) -> SurdReal {
        self.merge(&rhs, false)
    }
}

impl Sub for SurdReal {
    type Output = SurdReal;
    fn sub(self, rhs: SurdReal) -> SurdReal {
        self.merge(&rhs, true)
    }
}

impl Neg for &SurdReal {
    type Output = SurdReal;
    fn neg(self) -> SurdReal {
        SurdReal {
            terms: self.terms.iter().map(|(d, q)| (*d, -q)).collect(),
        }
    }
}

impl Neg for SurdReal {
    type Output = SurdReal;
    fn neg(self) -> SurdReal {
        -&self
    }
}

impl Ord for SurdReal {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        // same margin argument as `float_sign`, applied to the difference
        let mut diff = 0.0f64;
        let mut mag = 0.0f64;
        for (terms, sign) in [(&self.terms, 1.0), (&other.terms, -1.0)] {
            for (d, q) in terms {
                let v = q_f64(q).unwrap_or(f64::NAN) * (*d as f64).sqrt();
                diff += sign * v;
                mag += v.abs();
            }
        }
        if diff.is_finite() && mag.is_finite() {
            let margin = mag * 1e-12;
            if diff > margin {
                return Ordering::Greater;
            }
            if diff < -margin {
                return Ordering::Less;
            }
        }
        (self - other).signum().cmp(&0)
    }
}

impl PartialOrd for SurdReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SurdReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, q)) in self.terms.iter().enumerate() {
            let mag = q.abs();
            match (i, q.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *d == 1 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "sqrt({d})")?;
            } else {
                write!(f, "{mag}*sqrt({d})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SurdReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SurdReal({self})")
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &'static str) -> ParseSurdError {
        ParseSurdError::Malformed { pos: self.pos, msg }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        self.skip_ws();
        if self.bytes[self.pos..].starts_with(w.as_bytes()) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseSurdError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit run parses"))
    }

    fn radicand(&mut self) -> Result<u64, ParseSurdError> {
        if !self.eat(b'(') {
            return Err(self.err("expected '(' after sqrt"));
        }
        let n = self.uint()?;
        if !self.eat(b')') {
            return Err(self.err("expected ')'"));
        }
        let n: u64 = n
            .try_into()
            .map_err(|_| ParseSurdError::RadicandTooLarge(u64::MAX))?;
        if n > MAX_RADICAND {
            return Err(ParseSurdError::RadicandTooLarge(n));
        }
        Ok(n)
    }

    fn term(&mut self) -> Result<SurdReal, ParseSurdError> {
        let mut negative = false;
        loop {
            if self.eat(b'-') {
                negative = !negative;
            } else if !self.eat(b'+') {
                break;
            }
        }
        let value = if self.eat_word("sqrt") {
            SurdReal::sqrt(self.radicand()?)
        } else {
            let num = self.uint()?;
            let den = if self.eat(b'/') {
                self.uint()?
            } else {
                BigInt::one()
            };
            if den.is_zero() {
                return Err(ParseSurdError::ZeroDenominator);
            }
            let q = Rational::new(num, den);
            if self.eat(b'*') {
                if !self.eat_word("sqrt") {
                    return Err(self.err("expected sqrt after '*'"));
                }
                SurdReal::term(q, self.radicand()?)
            } else {
                SurdReal::from_rational(q)
            }
        };
        Ok(if negative { -value } else { value })
    }

    fn expr(&mut self) -> Result<SurdReal, ParseSurdError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                None => return Ok(acc),
                Some(b'+') | Some(b'-') => {
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(_) => return Err(self.err("expected '+' or '-'")),
            }
        }
    }
}

impl FromStr for SurdReal {
    type Err = ParseSurdError;

    /// Grammar: `term (('+'|'-') term)*` with
    /// `term = rat | rat '*' 'sqrt(' uint ')' | 'sqrt(' uint ')'` and
    /// `rat = int | int '/' uint`. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            bytes: s.as_bytes(),
            pos: 0,
        };
        p.expr()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> SurdReal {
        text.parse().unwrap()
    }

    #[test]
    fn add_cancels_to_rational() {
        assert_eq!(&s("sqrt(2)") + &s("1 - sqrt(2)"), SurdReal::one());
        let x = s("3 + 2*sqrt(5)");
        assert_eq!(&SurdReal::zero() + &x, x);
        assert_eq!(s("1/2*sqrt(3)") + s("1/3*sqrt(3)"), s("5/6*sqrt(3)"));
    }

    #[test]
    fn scale_examples() {
        assert_eq!(s("sqrt(2)").scale(&rat(2, 1)), s("2*sqrt(2)"));
        assert!(s("3 + sqrt(7)").scale(&rat(0, 1)).is_zero());
        assert_eq!(s("3 + 6*sqrt(5)").scale(&rat(1, 3)), s("1 + 2*sqrt(5)"));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(SurdReal::zero().signum(), 0);
        assert_eq!(s("sqrt(2) - 1").signum(), 1);
        assert_eq!(s("3 - 2*sqrt(2)").signum(), 1);
        assert_eq!(s("2*sqrt(2) - 3").signum(), -1);
        // 99/70 is a continued-fraction convergent of √2, so this is tiny.
        assert_eq!(s("99/70 - sqrt(2)").signum(), 1);
        assert_eq!(s("sqrt(2) + sqrt(3) - sqrt(10)").signum(), -1);
    }

    #[test]
    fn cmp_examples() {
        let x = s("1/3 + sqrt(6)");
        assert_eq!(x.cmp(&x), Ordering::Equal);
        assert_eq!(SurdReal::one().cmp(&SurdReal::sqrt(2)), Ordering::Less);
        assert_eq!(s("2*sqrt(2)").cmp(&SurdReal::from_int(3)), Ordering::Less);
    }

    #[test]
    fn parse_examples() {
        let x = s("1/2 + 3/4*sqrt(2)");
        assert_eq!(x.terms(), &[(1, rat(1, 2)), (2, rat(3, 4))]);
        assert_eq!(s("sqrt(8)").terms(), &[(2, rat(2, 1))]);
        assert_eq!(
            "1/0".parse::<SurdReal>(),
            Err(ParseSurdError::ZeroDenominator)
        );
        assert_eq!(s(" - sqrt(2) +2/4 "), s("1/2 - sqrt(2)"));
        assert_eq!(s("sqrt(12) + sqrt(3)"), s("3*sqrt(3)"));
        assert!("sqrt 2".parse::<SurdReal>().is_err());
        assert!("1 2".parse::<SurdReal>().is_err());
        assert!("".parse::<SurdReal>().is_err());
        assert!("2*3".parse::<SurdReal>().is_err());
    }

    #[test]
    fn format_is_canonical() {
        assert_eq!(s("sqrt(2) + 1/2").to_string(), "1/2 + sqrt(2)");
        assert_eq!(s("-sqrt(3) - 2").to_string(), "-2 - sqrt(3)");
        assert_eq!(s("-3/4*sqrt(5)").to_string(), "-3/4*sqrt(5)");
        assert_eq!(SurdReal::zero().to_string(), "0");
    }

    #[test]
    fn squarefree_split_works() {
        assert_eq!(squarefree_split(8), (2, 2));
        assert_eq!(squarefree_split(72), (6, 2));
        assert_eq!(squarefree_split(30), (1, 30));
        assert_eq!(squarefree_split(1), (1, 1));
    }
}

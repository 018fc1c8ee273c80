//! Exact interior-angle parameters.
//!
//! Angles are measured in multiples of π. A value is a rational part plus a
//! rational combination of formal irrational symbols; the symbols of one
//! [`IrrationalBasis`] are assumed to be linearly independent over ℚ together
//! with 1. Every rationality or integrality question downstream is therefore
//! decided by exact linear algebra, never by floating point.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary precision rational, always stored reduced with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AngleError {
    #[error("duplicate irrational symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("invalid symbol name `{0}`")]
    InvalidSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("cannot parse angle literal `{literal}`: {reason}")]
    Parse { literal: String, reason: String },
    #[error("angles over different irrational bases cannot be combined")]
    BasisMismatch,
    #[error("a polygon needs at least 3 angles, got {0}")]
    TooFewAngles(usize),
    #[error("angle {index} = {value} is outside (0, 2)")]
    OutOfRange { index: usize, value: String },
    #[error("angle {index} equals 1 (a straight angle is not a vertex)")]
    StraightAngle { index: usize },
    #[error("angle sum is {sum}, expected {expected}")]
    BadSum { sum: String, expected: usize },
    #[error("exactly one angle ({index}) is irrational; the integer angle sum makes that impossible")]
    SingleIrrational { index: usize },
}

/// Ordered list of formal irrational symbols α₁,…,α_m.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IrrationalBasis {
    symbols: Vec<String>,
}

impl IrrationalBasis {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self, AngleError> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        for (i, s) in symbols.iter().enumerate() {
            if !is_symbol_name(s) {
                return Err(AngleError::InvalidSymbol(s.clone()));
            }
            if symbols[..i].contains(s) {
                return Err(AngleError::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Self { symbols })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }
}

fn is_symbol_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `q₀ + Σ qₖ·αₖ` over a shared basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AngleValue {
    basis: Arc<IrrationalBasis>,
    coeffs: Vec<Rational>,
}

impl AngleValue {
    pub fn zero(basis: &Arc<IrrationalBasis>) -> Self {
        Self { basis: basis.clone(), coeffs: vec![Rational::zero(); basis.len() + 1] }
    }

    pub fn rational(basis: &Arc<IrrationalBasis>, q: Rational) -> Self {
        let mut v = Self::zero(basis);
        v.coeffs[0] = q;
        v
    }

    pub fn from_ratio(basis: &Arc<IrrationalBasis>, num: i64, den: i64) -> Self {
        Self::rational(basis, Rational::new(num.into(), den.into()))
    }

    /// The k-th basis symbol (0-based) with coefficient 1.
    pub fn symbol(basis: &Arc<IrrationalBasis>, k: usize) -> Self {
        let mut v = Self::zero(basis);
        v.coeffs[k + 1] = Rational::one();
        v
    }

    pub fn from_coeffs(basis: &Arc<IrrationalBasis>, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), basis.len() + 1, "coefficient vector does not match basis");
        Self { basis: basis.clone(), coeffs }
    }

    pub fn parse(basis: &Arc<IrrationalBasis>, literal: &str) -> Result<Self, AngleError> {
        parse_literal(basis, literal)
    }

    pub fn basis(&self) -> &Arc<IrrationalBasis> {
        &self.basis
    }

    /// Coefficient vector; entry 0 is the rational part.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn rational_part(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn irrational_coeffs(&self) -> &[Rational] {
        &self.coeffs[1..]
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.coeffs[0].is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { basis: self.basis.clone(), coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&Rational::from_integer(k.into()))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AngleError> {
        self.same_basis(other)?;
        Ok(Self {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AngleError> {
        self.checked_add(&-other)
    }

    fn same_basis(&self, other: &Self) -> Result<(), AngleError> {
        if Arc::ptr_eq(&self.basis, &other.basis) || self.basis == other.basis {
            Ok(())
        } else {
            Err(AngleError::BasisMismatch)
        }
    }

    /// Floating-point estimate given numeric stand-ins for the symbols.
    pub fn approx(&self, symbol_values: &[f64]) -> f64 {
        let mut x = self.coeffs[0].to_f64().unwrap_or(f64::NAN);
        for (c, v) in self.coeffs[1..].iter().zip(symbol_values) {
            x += c.to_f64().unwrap_or(f64::NAN) * v;
        }
        x
    }

    pub fn rotation_class(&self) -> RotationClass {
        RotationClass::from_angle(self)
    }
}

impl<'a> Add<&'a AngleValue> for &'a AngleValue {
    type Output = AngleValue;
    fn add(self, rhs: &'a AngleValue) -> AngleValue {
        self.checked_add(rhs).expect("angle basis mismatch")
    }
}

impl<'a> Sub<&'a AngleValue> for &'a AngleValue {
    type Output = AngleValue;
    fn sub(self, rhs: &'a AngleValue) -> AngleValue {
        self.checked_sub(rhs).expect("angle basis mismatch")
    }
}

impl Neg for &AngleValue {
    type Output = AngleValue;
    fn neg(self) -> AngleValue {
        AngleValue { basis: self.basis.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul<i64> for &AngleValue {
    type Output = AngleValue;
    fn mul(self, rhs: i64) -> AngleValue {
        self.scale_int(rhs)
    }
}

impl fmt::Display for AngleValue {
    /// Canonical literal, parseable by [`AngleValue::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(bool, String)> = Vec::new();
        if !self.coeffs[0].is_zero() {
            terms.push((self.coeffs[0].is_negative(), fmt_rational(&self.coeffs[0].abs())));
        }
        for (c, name) in self.coeffs[1..].iter().zip(self.basis.symbols()) {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = if mag.is_one() { name.clone() } else { format!("{}*{}", fmt_rational(&mag), name) };
            terms.push((c.is_negative(), body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (neg, body)) in terms.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// An [`AngleValue`] modulo 1: the class of the rotation by 2π·λ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RotationClass {
    value: AngleValue,
}

impl RotationClass {
    pub fn zero(basis: &Arc<IrrationalBasis>) -> Self {
        Self { value: AngleValue::zero(basis) }
    }

    pub fn from_angle(a: &AngleValue) -> Self {
        let mut value = a.clone();
        value.coeffs[0] = frac(&value.coeffs[0]);
        Self { value }
    }

    /// Canonical representative: rational part in [0, 1), symbol coefficients untouched.
    pub fn value(&self) -> &AngleValue {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_angle(&(&self.value + &other.value))
    }

    pub fn neg(&self) -> Self {
        Self::from_angle(&-&self.value)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn times(&self, k: i64) -> Self {
        Self::from_angle(&(&self.value * k))
    }

    pub fn order(&self) -> Order {
        class_order(self)
    }
}

impl fmt::Display for RotationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

fn frac(q: &Rational) -> Rational {
    q - q.floor()
}

/// Order of an element of the rotation-class group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

impl Order {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

pub fn is_rational_angle(a: &AngleValue) -> bool {
    a.is_rational()
}

pub fn rotation_class(a: &AngleValue) -> RotationClass {
    RotationClass::from_angle(a)
}

/// Smallest n ≥ 1 with n·c = 0; infinite as soon as a symbol coefficient is nonzero.
pub fn class_order(c: &RotationClass) -> Order {
    if !c.value.is_rational() {
        return Order::Infinite;
    }
    Order::Finite(c.value.coeffs[0].denom().clone())
}

/// Interior angles λ₁,…,λ_N of a nondegenerate simple polygon, in multiples of π.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleVector {
    basis: Arc<IrrationalBasis>,
    angles: Vec<AngleValue>,
}

impl AngleVector {
    pub fn new(basis: &Arc<IrrationalBasis>, angles: Vec<AngleValue>) -> Result<Self, AngleError> {
        let n = angles.len();
        if n < 3 {
            return Err(AngleError::TooFewAngles(n));
        }
        let mut sum = AngleValue::zero(basis);
        let two = Rational::from_integer(2.into());
        for (i, a) in angles.iter().enumerate() {
            sum = sum.checked_add(a)?;
            if a.is_rational() {
                let q = a.rational_part();
                if !q.is_positive() || *q >= two {
                    return Err(AngleError::OutOfRange { index: i, value: a.to_string() });
                }
                if q.is_one() {
                    return Err(AngleError::StraightAngle { index: i });
                }
            }
        }
        let irrational: Vec<usize> = (0..n).filter(|&i| !angles[i].is_rational()).collect();
        if irrational.len() == 1 {
            return Err(AngleError::SingleIrrational { index: irrational[0] });
        }
        let expected = AngleValue::rational(basis, Rational::from_integer(BigInt::from(n - 2)));
        if sum != expected {
            return Err(AngleError::BadSum { sum: sum.to_string(), expected: n - 2 });
        }
        Ok(Self { basis: basis.clone(), angles })
    }

    /// Parses one literal per angle over `basis`.
    pub fn parse<S: AsRef<str>>(basis: &Arc<IrrationalBasis>, literals: &[S]) -> Result<Self, AngleError> {
        let angles = literals
            .iter()
            .map(|l| AngleValue::parse(basis, l.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(basis, angles)
    }

    /// Convenience for all-rational vectors given as (numerator, denominator) pairs.
    pub fn rational(pairs: &[(i64, i64)]) -> Result<Self, AngleError> {
        let basis = Arc::new(IrrationalBasis::empty());
        let angles = pairs.iter().map(|&(p, q)| AngleValue::from_ratio(&basis, p, q)).collect();
        Self::new(&basis, angles)
    }

    pub fn basis(&self) -> &Arc<IrrationalBasis> {
        &self.basis
    }

    pub fn angles(&self) -> &[AngleValue] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.angles.iter().all(AngleValue::is_rational)
    }

    pub fn irrational_indices(&self) -> Vec<usize> {
        (0..self.angles.len()).filter(|&i| !self.angles[i].is_rational()).collect()
    }

    pub fn literals(&self) -> Vec<String> {
        self.angles.iter().map(ToString::to_string).collect()
    }
}

// Literal grammar: term (('+' | '-') term)*, with term = [coef '*'] symbol | number,
// coef and number being `p` or `p/q`.

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
}

fn tokenize(src: &str) -> Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '/' => {
                out.push(Token::Slash);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token::Num(s.parse().map_err(|_| format!("bad integer `{s}`"))?));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

fn parse_literal(basis: &Arc<IrrationalBasis>, literal: &str) -> Result<AngleValue, AngleError> {
    let err = |reason: String| AngleError::Parse { literal: literal.to_string(), reason };
    let tokens = tokenize(literal).map_err(err)?;
    if tokens.is_empty() {
        return Err(err("empty literal".into()));
    }
    let mut pos = 0;
    let mut acc = AngleValue::zero(basis);
    let mut first = true;
    while pos < tokens.len() {
        let mut sign = Rational::one();
        match tokens.get(pos) {
            Some(Token::Plus) if !first => pos += 1,
            Some(Token::Minus) => {
                sign = -sign;
                pos += 1
            }
            Some(_) if first => {}
            _ => return Err(err("expected `+` or `-` between terms".into())),
        }
        first = false;
        // optional coefficient
        let mut coef = Rational::one();
        let mut had_number = false;
        if let Some(Token::Num(n)) = tokens.get(pos) {
            coef = Rational::from_integer(n.clone());
            had_number = true;
            pos += 1;
            if let Some(Token::Slash) = tokens.get(pos) {
                pos += 1;
                match tokens.get(pos) {
                    Some(Token::Num(d)) if !d.is_zero() => {
                        coef = Rational::new(n.clone(), d.clone());
                        pos += 1;
                    }
                    Some(Token::Num(_)) => return Err(err("zero denominator".into())),
                    _ => return Err(err("expected denominator after `/`".into())),
                }
            }
        }
        let coef = coef * sign;
        match (had_number, tokens.get(pos)) {
            (true, Some(Token::Star)) => {
                pos += 1;
                match tokens.get(pos) {
                    Some(Token::Ident(name)) => {
                        let k = basis.index_of(name).ok_or_else(|| AngleError::UnknownSymbol(name.clone()))?;
                        acc.coeffs[k + 1] += coef;
                        pos += 1;
                    }
                    _ => return Err(err("expected symbol after `*`".into())),
                }
            }
            (false, Some(Token::Ident(name))) => {
                let k = basis.index_of(name).ok_or_else(|| AngleError::UnknownSymbol(name.clone()))?;
                acc.coeffs[k + 1] += coef;
                pos += 1;
            }
            (true, _) => acc.coeffs[0] += coef,
            (false, _) => return Err(err("expected number or symbol".into())),
        }
    }
    Ok(acc)
}

/// Least common multiple of the denominators of a list of rationals.
pub(crate) fn lcm_denominators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

//! Exact arithmetic in real quadratic fields ℚ(√d).
//!
//! A [`Surd`] is `a + b·√d` with rational `a`, `b` and square-free `d ≥ 2`.
//! Rationals are stored with `b = 0` and `d = 1`, so they mix freely with any
//! single field. Combining two different nonzero surd parts is an error:
//! each computation context carries at most one discriminant.
//!
//! [`PhaseFraction`] is a phase measured in units of 2π, reduced to `[0, 1)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("discriminant {0} is not square-free")]
    NotSquareFree(u64),
    #[error("cannot combine sqrt({0}) with sqrt({1}) in one field")]
    SurdMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative number")]
    NegativeRadicand,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// Shorthand for the rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Split `n = s²·d` with `d` square-free.
pub fn squarefree_decompose(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let (mut s, mut d, mut m) = (1u64, 1u64, n);
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
        p += 1;
    }
    (s, d * m)
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && squarefree_decompose(n).0 == 1
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    a: BigRational,
    b: BigRational,
    d: u64,
}

impl Surd {
    /// `a + b√d`. `d ∈ {0, 1}` folds the surd part into the rational part.
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self, ArithError> {
        match d {
            0 => Ok(Self::rational(a)),
            1 => Ok(Self::rational(a + b)),
            _ if !is_squarefree(d) => Err(ArithError::NotSquareFree(d)),
            _ => Ok(Self { a, b, d }.normalized()),
        }
    }

    pub fn rational(a: BigRational) -> Self {
        Self { a, b: BigRational::zero(), d: 1 }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::rational(rat(n, d))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    /// `√n` for a natural number, reduced to `s·√d`.
    pub fn sqrt_int(n: u64) -> Self {
        let (s, d) = squarefree_decompose(n);
        let s = BigRational::from_integer(BigInt::from(s));
        if d == 1 {
            Self::rational(s)
        } else {
            Self { a: BigRational::zero(), b: s, d }.normalized()
        }
    }

    /// `√q` for a nonnegative rational.
    pub fn sqrt_rational(q: &BigRational) -> Result<Self, ArithError> {
        if q.is_negative() {
            return Err(ArithError::NegativeRadicand);
        }
        let pr = (q.numer() * q.denom())
            .to_u64()
            .ok_or_else(|| ArithError::Parse(format!("radicand {q} too large")))?;
        let root = Self::sqrt_int(pr);
        Ok(root.scale(&BigRational::new(BigInt::one(), q.denom().clone())))
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.d = 1;
        }
        self
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    /// Discriminant of the surd part; 1 for rationals.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.a.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            a
        } else {
            a + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
        }
    }

    fn field(&self, other: &Self) -> Result<u64, ArithError> {
        match (self.d, other.d) {
            (1, d) | (d, 1) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(ArithError::SurdMismatch(x, y)),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        let d = self.field(other)?;
        Ok(Self { a: &self.a + &other.a, b: &self.b + &other.b, d }.normalized())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        let d = self.field(other)?;
        Ok(Self { a: &self.a - &other.a, b: &self.b - &other.b, d }.normalized())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        let d = self.field(other)?;
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self { a, b, d }.normalized())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_mul(&other.inv()?)
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d))
    }

    pub fn conj(&self) -> Self {
        Self { a: self.a.clone(), b: -self.b.clone(), d: self.d }.normalized()
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self { a: &self.a / &n, b: -&self.b / &n, d: self.d }.normalized())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self { a: &self.a * q, b: &self.b * q, d: self.d }.normalized()
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&rat(n, 1))
    }

    /// Exact sign in {−1, 0, 1}.
    pub fn signum(&self) -> i32 {
        sign_of(&self.a, &self.b, self.d)
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Largest integer `k` with `k ≤ self`.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        let approx = self.to_f64().floor();
        let mut k = BigInt::from(approx as i64);
        loop {
            let kk = Self::rational(BigRational::from_integer(k.clone()));
            if self.cmp(&kk) == Ordering::Less {
                k -= 1;
                continue;
            }
            let k1 = Self::rational(BigRational::from_integer(&k + 1));
            if self.cmp(&k1) != Ordering::Less {
                k += 1;
                continue;
            }
            return k;
        }
    }

    /// `self − floor(self)`, in `[0, 1)`.
    pub fn fract(&self) -> Self {
        let f = BigRational::from_integer(self.floor());
        Self { a: &self.a - f, b: self.b.clone(), d: self.d }.normalized()
    }
}

fn sign_rat(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_of(a: &BigRational, b: &BigRational, d: u64) -> i32 {
    let (sa, sb) = (sign_rat(a), sign_rat(b));
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    // opposite signs: compare a² with b²d
    let lhs = a * a;
    let rhs = b * b * BigRational::from_integer(BigInt::from(d));
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

/// Exact sign of `x − y`, valid even when `x` and `y` live in different fields.
fn cmp_exact(x: &Surd, y: &Surd) -> Ordering {
    let s = if let Ok(diff) = x.checked_sub(y) {
        diff.signum()
    } else {
        // p = (a_x − a_y) + b_x√d_x,  q = −b_y√d_y
        let p = Surd { a: &x.a - &y.a, b: x.b.clone(), d: x.d }.normalized();
        let c = -y.b.clone();
        let (sp, sq) = (p.signum(), sign_rat(&c));
        if sp == 0 || sq == 0 || sp == sq {
            if sp == 0 {
                sq
            } else {
                sp
            }
        } else {
            let p2 = p.checked_mul(&p).expect("same field");
            let q2 = Surd::rational(&c * &c * BigRational::from_integer(BigInt::from(y.d)));
            match p2.checked_sub(&q2).expect("rational difference").signum() {
                1 => sp,
                -1 => sq,
                _ => 0,
            }
        }
    };
    s.cmp(&0)
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_exact(self, other)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Surd> for &Surd {
            type Output = Surd;
            fn $m(self, rhs: &Surd) -> Surd {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Surd> for Surd {
            type Output = Surd;
            fn $m(self, rhs: Surd) -> Surd {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Surd> for Surd {
            type Output = Surd;
            fn $m(self, rhs: &Surd) -> Surd {
                (&self).$m(rhs)
            }
        }
        impl $tr<Surd> for &Surd {
            type Output = Surd;
            fn $m(self, rhs: Surd) -> Surd {
                self.$m(&rhs)
            }
        }
    };
}

// Operator forms panic on a surd mismatch; use the `checked_*` methods when
// operands may come from different fields.
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&Surd> for Surd {
    fn add_assign(&mut self, rhs: &Surd) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Surd> for Surd {
    fn sub_assign(&mut self, rhs: &Surd) {
        *self = &*self - rhs;
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { a: -self.a.clone(), b: -self.b.clone(), d: self.d }
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -&self
    }
}

impl From<i64> for Surd {
    fn from(n: i64) -> Self {
        Surd::int(n)
    }
}

impl From<BigRational> for Surd {
    fn from(q: BigRational) -> Self {
        Surd::rational(q)
    }
}

fn fmt_rat(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn fmt_surd_term(b: &BigRational, d: u64) -> String {
    if b.abs().is_one() {
        format!("sqrt({d})")
    } else {
        format!("{}*sqrt({d})", fmt_rat(&b.abs()))
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return f.write_str(&fmt_rat(&self.a));
        }
        let term = fmt_surd_term(&self.b, self.d);
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{term}")
            } else {
                f.write_str(&term)
            }
        } else {
            let op = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{} {op} {term}", fmt_rat(&self.a))
        }
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surd({self})")
    }
}

fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

fn parse_term(t: &str) -> Option<Surd> {
    let t = t.trim();
    let Some(pos) = t.find("sqrt(") else {
        return parse_rat(t).map(Surd::rational);
    };
    let close = pos + t[pos..].find(')')?;
    let n: u64 = t[pos + 5..close].trim().parse().ok()?;
    let root = Surd::sqrt_int(n);
    let before = t[..pos].trim();
    let after = t[close + 1..].trim();
    let mut coeff = match before {
        "" => BigRational::one(),
        "-" => -BigRational::one(),
        _ => parse_rat(before.strip_suffix('*')?)?,
    };
    if !after.is_empty() {
        let rest = after.strip_prefix('/')?;
        let den: BigInt = rest.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        coeff /= BigRational::from_integer(den);
    }
    Some(root.scale(&coeff))
}

impl FromStr for Surd {
    type Err = ArithError;

    /// Accepts `p/q`, `p/q + r/s*sqrt(n)`, `-sqrt(n)`, `sqrt(n)/k` and sums thereof.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ArithError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        let mut depth = 0;
        for i in 0..bytes.len() {
            match bytes[i] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && i > start && bytes[i - 1] != b'*' && bytes[i - 1] != b'/' => {
                    terms.push(&compact[start..i]);
                    start = i;
                }
                _ => {}
            }
        }
        terms.push(&compact[start..]);
        let mut acc = Surd::zero();
        for t in terms {
            let t = t.strip_prefix('+').unwrap_or(t);
            let v = parse_term(t).ok_or_else(err)?;
            acc = acc.checked_add(&v)?;
        }
        Ok(acc)
    }
}

impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Surd {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A phase `e^{2πi·v}` stored as `v ∈ [0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseFraction(Surd);

impl PhaseFraction {
    pub fn new(v: Surd) -> Self {
        Self(v.fract())
    }

    pub fn zero() -> Self {
        Self(Surd::zero())
    }

    pub fn from_rational(n: i64, d: i64) -> Self {
        Self::new(Surd::frac(n, d))
    }

    pub fn value(&self) -> &Surd {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_zero()
    }

    /// Representative in `(−1/2, 1/2]`.
    pub fn symmetric(&self) -> Surd {
        if self.0 > Surd::frac(1, 2) {
            &self.0 - Surd::one()
        } else {
            self.0.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    /// Order of the phase as a root of unity, if rational.
    pub fn order(&self) -> Option<u64> {
        self.0.as_rational().and_then(|q| q.denom().to_u64())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(Self::new(self.0.checked_add(&other.0)?))
    }

    pub fn mul_int(&self, n: i64) -> Self {
        Self::new(self.0.scale_int(n))
    }
}

impl Add for PhaseFraction {
    type Output = PhaseFraction;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.0 + rhs.0)
    }
}

impl Sub for PhaseFraction {
    type Output = PhaseFraction;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.0 - rhs.0)
    }
}

impl Neg for PhaseFraction {
    type Output = PhaseFraction;
    fn neg(self) -> Self {
        Self::new(-self.0)
    }
}

impl fmt::Display for PhaseFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for PhaseFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phase({})", self.0)
    }
}

impl Serialize for PhaseFraction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PhaseFraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Self::new(Surd::deserialize(d)?))
    }
}

//! Exact rationals and dense univariate polynomials in the dilation variable `n`.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or `"p"`; the result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Serde adapters that write rationals as `"p/q"` strings.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub mod rational_vec_str {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Exact binomial coefficient C(n, k); zero when k > n.
pub fn big_binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc = C(n, i) stays integral after each step
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Dense polynomial over [`Rational`]; `coeffs[i]` multiplies `n^i`.
///
/// Trailing zeros are never stored, so the zero polynomial is the empty list
/// and has no degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `n`.
    pub fn var() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// `a*n + b`
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::from_coeffs(vec![b, a])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn from_big_ints(coeffs: &[BigInt]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `n^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&int(x))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn derivative(&self) -> Poly {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let q = &rem[top] / &lead;
            let shift = top - dd;
            if !q.is_zero() {
                for (k, c) in divisor.coeffs.iter().enumerate() {
                    rem[shift + k] -= &q * c;
                }
            }
            quot[shift] = q;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) && rem.len() > dd {
                rem.pop();
            }
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("divisor is nonzero");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Human form, highest power first: `7/2*n^2 + 7/2*n + 1`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "n")?;
                    } else {
                        write!(f, "n^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        rational_vec_str::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Poly::from_coeffs(rational_vec_str::deserialize(d)?))
    }
}

fn add_coeffs(a: &[Rational], b: &[Rational], negate_b: bool) -> Poly {
    let len = a.len().max(b.len());
    let zero = Rational::zero();
    let coeffs = (0..len)
        .map(|k| {
            let x = a.get(k).unwrap_or(&zero);
            let y = b.get(k).unwrap_or(&zero);
            if negate_b {
                x - y
            } else {
                x + y
            }
        })
        .collect();
    Poly::from_coeffs(coeffs)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        add_coeffs(&self.coeffs, &rhs.coeffs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        add_coeffs(&self.coeffs, &rhs.coeffs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Integer coefficients of `prod_{j=0}^{d-1} (a*n + b - j)`, index = power of n.
pub(crate) fn falling_product(a: i64, b: i64, d: usize) -> Vec<BigInt> {
    let mut acc = Vec::with_capacity(d + 1);
    acc.push(BigInt::one());
    for j in 0..d as i64 {
        let c0 = b - j;
        acc.push(BigInt::zero());
        for k in (1..acc.len()).rev() {
            let (lo, hi) = acc.split_at_mut(k);
            hi[0] *= c0;
            hi[0] += &lo[k - 1] * a;
        }
        acc[0] *= c0;
    }
    acc
}

pub(crate) fn factorial(d: usize) -> BigInt {
    (1..=d).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `C(a*n + b, d)` as a polynomial in `n`, i.e. `(1/d!) prod_{j<d} (a*n + b - j)`.
pub fn binom_linear(a: i64, b: i64, d: usize) -> Poly {
    let num = falling_product(a, b, d);
    let fact = factorial(d);
    Poly::from_coeffs(
        num.into_iter()
            .map(|c| Rational::new(c, fact.clone()))
            .collect(),
    )
}

/// The unique polynomial of degree below `points.len()` through every point.
///
/// Newton divided differences, expanded back into the power basis.
pub fn lagrange_interpolate(points: &[(Rational, Rational)]) -> Result<Poly> {
    if points.is_empty() {
        return Err(Error::NoPoints);
    }
    let mut seen = HashSet::with_capacity(points.len());
    for (x, _) in points {
        if !seen.insert(x) {
            return Err(Error::DuplicateNode(x.clone()));
        }
    }
    let xs: Vec<&Rational> = points.iter().map(|(x, _)| x).collect();
    let mut table: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    let m = points.len();
    for level in 1..m {
        for k in (level..m).rev() {
            let diff = &table[k] - &table[k - 1];
            table[k] = diff / (xs[k] - xs[k - level]);
        }
    }
    // Horner over the Newton basis: c_0 + (n - x_0)(c_1 + (n - x_1)(...))
    let mut acc = Poly::constant(table[m - 1].clone());
    for k in (0..m - 1).rev() {
        let factor = Poly::linear(Rational::one(), -xs[k].clone());
        acc = &(&acc * &factor) + &Poly::constant(table[k].clone());
    }
    Ok(acc)
}

/// Integer-valued interpolation through `(0, y_0), ..., (m-1, y_{m-1})`.
pub(crate) fn interpolate_at_naturals(values: &[BigInt]) -> Result<Poly> {
    let points: Vec<_> = values
        .iter()
        .enumerate()
        .map(|(x, y)| (int(x as i64), Rational::from_integer(y.clone())))
        .collect();
    lagrange_interpolate(&points)
}

/// Least common multiple of the denominators.
pub(crate) fn common_denominator(values: &[Rational]) -> BigInt {
    values
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

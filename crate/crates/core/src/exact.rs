//! Exact coefficient field: rationals extended by one square root.
//!
//! A [`Scalar`] is `rat + irr·√D` for a squarefree `D > 1`. Values with
//! `irr = 0` are plain rationals and mix freely with any radicand; two values
//! with nonzero irrational parts must share the same `D`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Element of ℚ(√D).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    rat: BigRational,
    irr: BigRational,
    /// Radicand; 0 iff `irr` is zero.
    radicand: u32,
}

/// Checks that `d` is a valid radicand: squarefree and greater than one.
pub fn validate_radicand(d: u32) -> Result<()> {
    if d <= 1 {
        return Err(Error::InvalidInput(format!("radicand {d} must be a squarefree integer > 1")));
    }
    let mut f = 2u32;
    while f * f <= d {
        if d.is_multiple_of(f * f) {
            return Err(Error::InvalidInput(format!("radicand {d} is not squarefree")));
        }
        f += 1;
    }
    Ok(())
}

impl Scalar {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(rat: BigRational) -> Self {
        Scalar { rat, irr: BigRational::zero(), radicand: 0 }
    }

    /// `rat + irr·√d`. Fails for an invalid radicand when `irr ≠ 0`.
    pub fn with_root(rat: BigRational, irr: BigRational, d: u32) -> Result<Self> {
        if irr.is_zero() {
            return Ok(Self::from_rational(rat));
        }
        validate_radicand(d)?;
        Ok(Scalar { rat, irr, radicand: d })
    }

    /// `√d` itself.
    pub fn sqrt_of(d: u32) -> Result<Self> {
        Self::with_root(BigRational::zero(), BigRational::one(), d)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.irr
    }

    /// The radicand of the irrational part, if any.
    pub fn radicand(&self) -> Option<u32> {
        (self.radicand != 0).then_some(self.radicand)
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.irr.is_zero() && self.rat.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    fn common_radicand(&self, other: &Self) -> Result<u32> {
        match (self.radicand, other.radicand) {
            (0, d) | (d, 0) => Ok(d),
            (d, e) if d == e => Ok(d),
            (d, e) => Err(Error::FieldMismatch(d, e)),
        }
    }

    fn build(rat: BigRational, irr: BigRational, d: u32) -> Self {
        if irr.is_zero() {
            Self::from_rational(rat)
        } else {
            Scalar { rat, irr, radicand: d }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::build(&self.rat + &other.rat, &self.irr + &other.irr, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::build(&self.rat - &other.rat, &self.irr - &other.irr, d))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        if self.irr.is_zero() {
            return Ok(Self::build(&self.rat * &other.rat, &self.rat * &other.irr, d));
        }
        if other.irr.is_zero() {
            return Ok(Self::build(&self.rat * &other.rat, &self.irr * &other.rat, d));
        }
        let dd = BigRational::from_integer(BigInt::from(d));
        let rat = &self.rat * &other.rat + &self.irr * &other.irr * dd;
        let irr = &self.rat * &other.irr + &self.irr * &other.rat;
        Ok(Self::build(rat, irr, d))
    }

    /// `a − b√D`.
    pub fn conjugate(&self) -> Self {
        Self::build(self.rat.clone(), -self.irr.clone(), self.radicand)
    }

    /// Field norm `a² − D·b²`.
    pub fn norm(&self) -> BigRational {
        if self.irr.is_zero() {
            return &self.rat * &self.rat;
        }
        let dd = BigRational::from_integer(BigInt::from(self.radicand));
        &self.rat * &self.rat - &self.irr * &self.irr * dd
    }

    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(Self::build(c.rat / &n, c.irr / n, self.radicand))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.common_radicand(other)?;
        self.checked_mul(&other.checked_inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Sign of the real number `rat + irr·√D`.
    pub fn signum(&self) -> Ordering {
        let sa = sign(&self.rat);
        let sb = sign(&self.irr);
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        // opposite signs: compare a² with D·b²
        let dd = BigRational::from_integer(BigInt::from(self.radicand));
        let lhs = &self.rat * &self.rat;
        let rhs = &self.irr * &self.irr * dd;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Approximate value, for display only.
    pub fn to_f64(&self) -> f64 {
        let a = self.rat.to_f64().unwrap_or(f64::NAN);
        if self.irr.is_zero() {
            return a;
        }
        a + self.irr.to_f64().unwrap_or(f64::NAN) * f64::from(self.radicand).sqrt()
    }
}

fn sign(r: &BigRational) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.checked_sub(other).ok().map(|d| d.signum())
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

// Operator impls panic on mixed radicands; the checked_* methods report it.
macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                <&Scalar as $tr<&Scalar>>::$m(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                <&Scalar as $tr<&Scalar>>::$m(&self, rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::build(-self.rat, -self.irr, self.radicand)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

/// Operation selector for [`scalar_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
}

/// Field arithmetic with explicit error reporting. `Neg` ignores `y`.
pub fn scalar_arith(op: ArithOp, x: &Scalar, y: &Scalar) -> Result<Scalar> {
    match op {
        ArithOp::Add => x.checked_add(y),
        ArithOp::Sub => x.checked_sub(y),
        ArithOp::Mul => x.checked_mul(y),
        ArithOp::Div => x.checked_div(y),
        ArithOp::Neg => Ok(-x),
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Text grammar: `a/b`, `c/d*rD`, or `a/b+c/d*rD` (no whitespace).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            return f.write_str(&fmt_rat(&self.rat));
        }
        let irr = format!("{}*r{}", fmt_rat(&self.irr.abs()), self.radicand);
        if self.rat.is_zero() {
            if self.irr.is_negative() {
                write!(f, "-{irr}")
            } else {
                f.write_str(&irr)
            }
        } else {
            let op = if self.irr.is_negative() { '-' } else { '+' };
            write!(f, "{}{}{}", fmt_rat(&self.rat), op, irr)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rat(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

fn parse_irr(s: &str) -> Option<(BigRational, u32)> {
    let (c, d) = s.split_once("*r")?;
    let c = match c {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        c => parse_rat(c)?,
    };
    Some((c, d.parse().ok()?))
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("malformed scalar {s:?}"));
        if s.is_empty() || s.chars().any(char::is_whitespace) {
            return Err(bad());
        }
        if !s.contains("*r") {
            return parse_rat(s).map(Scalar::from_rational).ok_or_else(bad);
        }
        // split at the sign that starts the irrational term (not at position 0)
        let split = s
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (rat, irr) = match split {
            Some(i) if !s[..i].contains("*r") => (parse_rat(&s[..i]).ok_or_else(bad)?, &s[i..]),
            _ => (BigRational::zero(), s),
        };
        let (c, d) = parse_irr(irr).ok_or_else(bad)?;
        Scalar::with_root(rat, c, d)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Dense row-major matrix over [`Scalar`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Reduced row echelon form and pivot columns. Pivot is the first nonzero
    /// entry in each column.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].checked_inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let v = &m[(i, j)] - &(&f * &m[(r, j)]);
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }
}

/// Basis of the right null space of `m`, one vector per free column, with a 1
/// in that column and zeros in the other free columns.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); m.cols];
            v[f] = Scalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r[(row, f)];
            }
            v
        })
        .collect()
}

/// Basis (in reduced echelon form) of the span of `vectors`.
pub fn row_space_basis(vectors: &[Vec<Scalar>], dim: usize) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.iter().map(|v| {
        assert_eq!(v.len(), dim);
        v.clone()
    }).collect());
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

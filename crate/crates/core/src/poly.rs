//! Dense univariate polynomials over [`Scalar`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::ring::Ring;

/// Polynomial with ascending coefficients and no trailing zeros; the zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "RawPoly")]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

#[derive(Deserialize)]
struct RawPoly {
    coeffs: Vec<Scalar>,
}

impl From<RawPoly> for Poly {
    fn from(raw: RawPoly) -> Self {
        Poly::new(raw.coeffs)
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Scalar::one(), 1)
    }

    pub fn monomial(c: Scalar, n: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    /// `scale·x + shift`.
    pub fn linear(scale: Scalar, shift: Scalar) -> Self {
        Self::new(vec![shift, scale])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self ∘ g`, by Horner's scheme.
    pub fn compose(&self, g: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * g) + &Poly::constant(c.clone()))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::from_int(i as i64))
                .collect(),
        )
    }

    /// Antiderivative vanishing at `a`.
    pub fn primitive(&self, a: &Scalar) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Scalar::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / &Scalar::from_int(i as i64 + 1));
        }
        let mut f = Poly::new(coeffs);
        let fa = f.eval(a);
        if !fa.is_zero() {
            f.coeffs[0] = -fa;
            f = Poly::new(f.coeffs);
        }
        f
    }

    pub fn definite_integral(&self, iv: &Interval) -> Scalar {
        self.primitive(&iv.a).eval(&iv.b)
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv = divisor.leading().unwrap().checked_inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return (Poly::zero(), self.clone());
        };
        let mut quot = vec![Scalar::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&c * d);
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic polynomial with zero constant term in the class `μ∘self`,
    /// `deg μ = 1`. Constants map to zero.
    pub fn normalized(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(_) if self.is_constant() => Poly::zero(),
            Some(lc) => {
                let inv = lc.checked_inv().unwrap();
                let mut coeffs: Vec<Scalar> = self.coeffs.iter().map(|c| c * &inv).collect();
                coeffs[0] = Scalar::zero();
                Poly::new(coeffs)
            }
        }
    }

    /// Lexicographic comparison key on coefficients, highest power first.
    pub(crate) fn cmp_coeffs(&self, other: &Poly) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let key = |p: &Poly| p.degree().map_or(0, |d| d + 1);
        key(self).cmp(&key(other)).then_with(|| {
            for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                match a.partial_cmp(b).unwrap_or(Ordering::Equal) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl Ring for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                <&Poly as $tr<&Poly>>::$m(&self, &rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            // rational coefficients print their sign as the joining operator
            let negative = c.is_rational() && c.signum() == std::cmp::Ordering::Less;
            let mag = if negative { -c } else { c.clone() };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let coef = if mag.is_rational() { mag.to_string() } else { format!("({mag})") };
            match i {
                0 => f.write_str(&coef)?,
                _ if mag.is_one() => {}
                _ => write!(f, "{coef}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Closed interval `[a, b]`, `a ≠ b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInterval")]
pub struct Interval {
    pub a: Scalar,
    pub b: Scalar,
}

#[derive(Deserialize)]
struct RawInterval {
    a: Scalar,
    b: Scalar,
}

impl TryFrom<RawInterval> for Interval {
    type Error = Error;
    fn try_from(raw: RawInterval) -> Result<Self> {
        Interval::new(raw.a, raw.b)
    }
}

impl Interval {
    pub fn new(a: Scalar, b: Scalar) -> Result<Self> {
        if a == b {
            return Err(Error::DegenerateInterval);
        }
        Ok(Interval { a, b })
    }

    /// `[-1, 1]`.
    pub fn symmetric_unit() -> Self {
        Interval { a: Scalar::from_int(-1), b: Scalar::one() }
    }

    /// `[0, 1]`.
    pub fn unit() -> Self {
        Interval { a: Scalar::zero(), b: Scalar::one() }
    }

    /// `[-√3/2, √3/2]`, where `T₆ = -1` at both ends.
    pub fn chebyshev6() -> Self {
        let h = &Scalar::sqrt_of(3).unwrap() * &Scalar::from_frac(1, 2);
        Interval { a: -&h, b: h }
    }

    /// True when `f(a) = f(b)`.
    pub fn is_closed(&self, f: &Poly) -> bool {
        f.eval(&self.a) == f.eval(&self.b)
    }

    /// True when `f(a) = f(b) = 0`.
    pub fn in_p(&self, f: &Poly) -> bool {
        f.eval(&self.a).is_zero() && f.eval(&self.b).is_zero()
    }

    /// Image of the interval under the inverse of `x = tau(u)` for
    /// `tau = scale·u + shift`.
    pub fn pull_back(&self, scale: &Scalar, shift: &Scalar) -> Interval {
        let inv = scale.checked_inv().expect("nonzero scale");
        Interval { a: &(&self.a - shift) * &inv, b: &(&self.b - shift) * &inv }
    }
}

/// A pair `(P, Q)` of primitives in the space P of the interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPair {
    pub p: Poly,
    pub q: Poly,
    pub iv: Interval,
}

impl PcPair {
    pub fn new(p: Poly, q: Poly, iv: Interval) -> Result<Self> {
        if !iv.in_p(&p) {
            return Err(Error::NotInP("P"));
        }
        if !iv.in_p(&q) {
            return Err(Error::NotInP("Q"));
        }
        Ok(PcPair { p, q, iv })
    }

    /// Derivatives `(p, q) = (P', Q')`.
    pub fn derivatives(&self) -> (Poly, Poly) {
        (self.p.derivative(), self.q.derivative())
    }
}

pub fn poly_eval(f: &Poly, x: &Scalar) -> Scalar {
    f.eval(x)
}

pub fn poly_compose(f: &Poly, g: &Poly) -> Poly {
    f.compose(g)
}

pub fn primitive(f: &Poly, a: &Scalar) -> Poly {
    f.primitive(a)
}

pub fn definite_integral(f: &Poly, iv: &Interval) -> Scalar {
    f.definite_integral(iv)
}

/// Chebyshev polynomial of the first kind, `T_d(cos θ) = cos dθ`.
pub fn chebyshev(d: usize) -> Poly {
    let two_x = Poly::from_ints(&[0, 2]);
    let (mut prev, mut cur) = (Poly::one(), Poly::x());
    if d == 0 {
        return prev;
    }
    for _ in 1..d {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Returns `Q̃` with `Q̃∘W = Q`, or `None` if `Q` is not a polynomial in `W`.
pub fn in_subring(q: &Poly, w: &Poly) -> Result<Option<Poly>> {
    if w.is_constant() {
        return Err(Error::ConstantFactor);
    }
    let (Some(dq), Some(dw)) = (q.degree(), w.degree()) else {
        return Ok(Some(Poly::zero()));
    };
    if dq % dw != 0 {
        return Ok(None);
    }
    let mut digits = Vec::with_capacity(dq / dw + 1);
    let mut cur = q.clone();
    while !cur.is_zero() {
        let (quot, rem) = cur.div_rem(w);
        if !rem.is_constant() {
            return Ok(None);
        }
        digits.push(rem.coeff(0));
        cur = quot;
    }
    Ok(Some(Poly::new(digits)))
}

/// Which coefficient-support predicate to test in [`u_membership`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum USet {
    /// Each exponent is coprime to every prime in the set or a power of one of them.
    U,
    /// Every prime factor of each exponent lies in the set.
    U1,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_power_of(mut n: u64, r: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(r) {
        n /= r;
    }
    n == 1
}

/// Whether exponent `i` is admissible for the given set and primes.
pub fn exponent_admissible(i: u64, primes: &[u64], which: USet) -> bool {
    if i == 0 {
        return true;
    }
    match which {
        USet::U => {
            primes.iter().all(|&r| num_integer::gcd(i, r) == 1)
                || primes.iter().any(|&r| is_power_of(i, r))
        }
        USet::U1 => prime_factors(i).iter().all(|p| primes.contains(p)),
    }
}

pub fn u_membership(f: &Poly, primes: &[u64], which: USet) -> bool {
    f.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .all(|(i, _)| exponent_admissible(i as u64, primes, which))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    fn half_root3() -> Scalar {
        s("1/2*r3")
    }

    #[test]
    fn display_form() {
        assert_eq!(Poly::from_ints(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(Poly::from_ints(&[0, -3, 0, 2]).to_string(), "2*x^3 - 3*x");
        assert_eq!(Poly::from_ints(&[1, -1]).to_string(), "-x + 1");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn evaluation() {
        assert_eq!(chebyshev(2).eval(&half_root3()), s("1/2"));
        assert_eq!(Poly::zero().eval(&s("7/3")), Scalar::zero());
        assert_eq!(chebyshev(6).eval(&half_root3()), s("-1"));
    }

    #[test]
    fn composition() {
        assert_eq!(chebyshev(3).compose(&chebyshev(2)), Poly::from_ints(&[-1, 0, 18, 0, -48, 0, 32]));
        let f = Poly::from_ints(&[3, -1, 4]);
        assert_eq!(f.compose(&Poly::x()), f);
        let sq = Poly::from_ints(&[0, 0, 1]);
        let g = Poly::from_ints(&[0, -1, 0, 0, 0, 1]);
        assert_eq!(sq.compose(&g), Poly::from_ints(&[0, 0, 1, 0, 0, 0, -2, 0, 0, 0, 1]));
    }

    #[test]
    fn primitives() {
        assert_eq!(Poly::from_ints(&[0, 2]).primitive(&s("-1")), Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(Poly::zero().primitive(&s("3")), Poly::zero());
        assert_eq!(Poly::from_ints(&[-1, 0, 3]).primitive(&Scalar::zero()), Poly::from_ints(&[0, -1, 0, 1]));
    }

    #[test]
    fn integrals() {
        let x2 = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(x2.definite_integral(&Interval::symmetric_unit()), s("2/3"));
        let odd = Poly::from_ints(&[0, 3, 0, -5]);
        assert_eq!(odd.definite_integral(&Interval::symmetric_unit()), Scalar::zero());
        assert_eq!(x2.definite_integral(&Interval::chebyshev6()), s("1/4*r3"));
    }

    #[test]
    fn chebyshev_values() {
        assert_eq!(chebyshev(0), Poly::one());
        assert_eq!(chebyshev(2), Poly::from_ints(&[-1, 0, 2]));
        assert_eq!(chebyshev(6), Poly::from_ints(&[-1, 0, 18, 0, -48, 0, 32]));
    }

    #[test]
    fn subring_membership() {
        let q = Poly::from_ints(&[5, 0, -2, 0, 1]);
        let x2 = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(in_subring(&q, &x2).unwrap(), Some(Poly::from_ints(&[5, -2, 1])));
        assert_eq!(in_subring(&Poly::from_ints(&[0, 0, 0, 1]), &x2).unwrap(), None);
        assert_eq!(in_subring(&chebyshev(6), &chebyshev(2)).unwrap(), Some(chebyshev(3)));
        assert!(matches!(in_subring(&q, &Poly::one()), Err(Error::ConstantFactor)));
    }

    #[test]
    fn u_sets() {
        let two = [2];
        assert!(u_membership(&Poly::from_ints(&[0, 0, 0, 0, 1, 0, 0, 1]), &two, USet::U));
        assert!(!u_membership(&Poly::monomial(Scalar::one(), 6), &two, USet::U));
        assert!(u_membership(&Poly::from_ints(&[0, 0, 0, 0, 1, 0, 0, 0, 1]), &two, USet::U1));
        assert!(!u_membership(&Poly::monomial(Scalar::one(), 3), &two, USet::U1));
    }

    #[test]
    fn zero_degree_marker() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::from_ints(&[0, 0, 0]).degree(), None);
        assert_eq!(Poly::one().degree(), Some(0));
    }
}

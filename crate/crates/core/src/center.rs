//! Return-map coefficients of `y' = p(x)y³ + q(x)y²` along `[a, b]`.
//!
//! The forward map `y_a ↦ y_b = y_a + Σ v_k y_a^k` is computed from the flow
//! expansion `y(x) = Σ c_k(x) y_a^k`: `c₁ ≡ 1` and, for `k ≥ 2`,
//!
//! ```text
//! c_k = ∫_a^x ( p·Σ_{i+j+l=k} c_i c_j c_l + q·Σ_{i+j=k} c_i c_j )
//! ```
//!
//! with `v_k = c_k(b)`. Scaling one coefficient by a formal parameter (`ε` on
//! `q`, or `δ` on `p`) turns every `c_k` into a polynomial in that parameter
//! with polynomial coefficients, and splits `v_k` into strata `v_{k,j}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::poly::{Interval, Poly};
use crate::ring::Ring;

/// Word over `{1, 2}` selecting integrands for an iterated integral.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u8>);

impl MultiIndex {
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("empty multi-index".into()));
        }
        if let Some(bad) = entries.iter().find(|&&e| e != 1 && e != 2) {
            return Err(Error::InvalidInput(format!("multi-index entry {bad} not in {{1,2}}")));
        }
        Ok(MultiIndex(entries))
    }

    /// Parses a digit string such as `"1121"`.
    pub fn parse(word: &str) -> Result<Self> {
        let digits = word
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidInput(format!("malformed multi-index {word:?}")))?;
        Self::new(digits)
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.0 {
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// `∫_a^b f₁(t₁) ∫_a^{t₁} f₂(t₂) … ∫_a^{t_{s-1}} f_s(t_s)`, evaluated inside out.
pub fn nested_integral(integrands: &[&Poly], iv: &Interval) -> Scalar {
    let mut inner = Poly::one();
    for f in integrands.iter().rev() {
        inner = (*f * &inner).primitive(&iv.a);
    }
    inner.eval(&iv.b)
}

/// `I_α = ∫ h_{α₁} ∫ h_{α₂} … ∫ h_{α_s}` over the interval.
pub fn iterated_integral(alpha: &MultiIndex, h1: &Poly, h2: &Poly, iv: &Interval) -> Scalar {
    let hs: Vec<&Poly> = alpha.0.iter().map(|&e| if e == 1 { h1 } else { h2 }).collect();
    nested_integral(&hs, iv)
}

/// Polynomial in a formal parameter with [`Poly`] coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EpsPoly(Vec<Poly>);

impl EpsPoly {
    pub fn new(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        EpsPoly(coeffs)
    }

    pub fn constant(p: Poly) -> Self {
        Self::new(vec![p])
    }

    /// `p·ε`.
    pub fn linear(p: Poly) -> Self {
        Self::new(vec![Poly::zero(), p])
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.0
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let zero = Poly::zero();
        Self::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return Self::default();
        }
        let mut out = vec![Poly::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::new(out)
    }

    fn primitive(&self, a: &Scalar) -> Self {
        Self::new(self.0.iter().map(|p| p.primitive(a)).collect())
    }

    /// Evaluates every coefficient at `x`, giving a polynomial in the parameter.
    fn eval(&self, x: &Scalar) -> Poly {
        Poly::new(self.0.iter().map(|p| p.eval(x)).collect())
    }
}

/// Flow coefficients `v_k(param)` for `k = 2..=kmax` (index 0 holds `v₂`).
fn flow_series(p: &EpsPoly, q: &EpsPoly, iv: &Interval, kmax: usize) -> Vec<Poly> {
    // c[k], s2[k] = Σ_{i+j=k} c_i c_j; index 0 unused
    let mut c: Vec<EpsPoly> = vec![EpsPoly::default(), EpsPoly::constant(Poly::one())];
    let mut s2: Vec<EpsPoly> = vec![EpsPoly::default(); 2];
    let mut out = Vec::with_capacity(kmax.saturating_sub(1));
    for k in 2..=kmax {
        let mut sq = EpsPoly::default();
        for i in 1..k {
            sq = sq.add(&c[i].mul(&c[k - i]));
        }
        let mut cube = EpsPoly::default();
        for i in 1..k.saturating_sub(1) {
            cube = cube.add(&c[i].mul(&s2[k - i]));
        }
        s2.push(sq.clone());
        let integrand = p.mul(&cube).add(&q.mul(&sq));
        let ck = integrand.primitive(&iv.a);
        out.push(ck.eval(&iv.b));
        c.push(ck);
    }
    out
}

/// Forward return-map coefficients `v₂, …, v_K`.
pub fn poincare_coeffs(p: &Poly, q: &Poly, iv: &Interval, kmax: usize) -> Vec<Scalar> {
    flow_series(&EpsPoly::constant(p.clone()), &EpsPoly::constant(q.clone()), iv, kmax)
        .into_iter()
        .map(|v| v.coeff(0))
        .collect()
}

/// Truncated product of two series given as coefficient vectors indexed by power.
fn series_mul<T: Ring>(a: &[T], b: &[T], order: usize) -> Vec<T> {
    let mut out = vec![T::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

/// Reversion of `f(y) = y + Σ_{k≥2} v_k y^k`: returns `w` with
/// `g(y) = y + Σ w_k y^k` satisfying `g∘f = id` through the given order.
/// Both slices start at `k = 2`.
pub fn invert_series<T: Ring>(v: &[T]) -> Vec<T> {
    let order = v.len() + 1;
    let mut f = vec![T::zero(); order + 1];
    f[1] = T::one();
    for (k, c) in v.iter().enumerate() {
        f[k + 2] = c.clone();
    }
    // powers[k] = f^k truncated
    let mut powers: Vec<Vec<T>> = vec![Vec::new(), f.clone()];
    for k in 2..=order {
        let next = series_mul(&powers[k - 1], &f, order);
        powers.push(next);
    }
    let mut w: Vec<T> = Vec::with_capacity(v.len());
    for n in 2..=order {
        // [y^n] (f + Σ_{k=2}^{n} w_k f^k) = 0, and [y^n] f^n = 1
        let mut acc = f[n].clone();
        for k in 2..n {
            acc = acc.add(&w[k - 2].mul(&powers[k][n]));
        }
        w.push(acc.neg());
    }
    w
}

/// Which input carries the formal parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    /// `y' = p y³ + ε q y²`.
    EpsOnQ,
    /// `y' = δ p y³ + q y²`.
    DeltaOnP,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// The map `y(a) ↦ y(b)`.
    Forward,
    /// Its compositional inverse.
    Backward,
}

/// Which input plays the role of `h₁` in the printed combinations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Assignment {
    H1IsP,
    H1IsQ,
}

/// Stratified coefficients `v_{k,j}`: the coefficient of `param^j` in `v_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterTable {
    pub kmax: usize,
    pub param: Param,
    pub direction: Direction,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl CenterTable {
    /// Entry `(k, j)`; absent entries are zero.
    pub fn get(&self, k: usize, j: usize) -> Scalar {
        self.entries.get(&(k, j)).cloned().unwrap_or_default()
    }

    /// Nonzero entries in `(k, j)` order.
    pub fn nonzero(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn is_all_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `"k,j" → scalar` map, sorted by `(k, j)`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .entries
            .iter()
            .map(|((k, j), v)| (format!("{k},{j}"), serde_json::Value::String(v.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }
}

/// Stratified center table for one parameterization and direction.
pub fn parametric_table(
    p: &Poly,
    q: &Poly,
    iv: &Interval,
    kmax: usize,
    param: Param,
    direction: Direction,
) -> CenterTable {
    let (pe, qe) = match param {
        Param::EpsOnQ => (EpsPoly::constant(p.clone()), EpsPoly::linear(q.clone())),
        Param::DeltaOnP => (EpsPoly::linear(p.clone()), EpsPoly::constant(q.clone())),
    };
    let mut series = flow_series(&pe, &qe, iv, kmax);
    if direction == Direction::Backward {
        series = invert_series(&series);
    }
    let mut entries = BTreeMap::new();
    for (idx, v) in series.iter().enumerate() {
        for (j, c) in v.coeffs().iter().enumerate() {
            if !c.is_zero() {
                entries.insert((idx + 2, j), c.clone());
            }
        }
    }
    CenterTable { kmax, param, direction, entries }
}

const PRINTED_COMBINATIONS: [&[(i64, &str)]; 5] = [
    &[(-1, "1")],
    &[(2, "11"), (-1, "2")],
    &[(-6, "111"), (3, "12"), (2, "21")],
    &[(24, "1111"), (-12, "112"), (-8, "121"), (-6, "211"), (3, "22")],
    &[
        (-120, "11111"),
        (60, "1112"),
        (40, "1121"),
        (30, "1211"),
        (24, "2111"),
        (-15, "122"),
        (-12, "212"),
        (-8, "221"),
    ],
];

/// The classical closed forms of `v_k` as combinations of iterated integrals,
/// `2 ≤ k ≤ 6`, under the given reading of `h₁`.
pub fn printed_combination(k: usize, p: &Poly, q: &Poly, iv: &Interval, assignment: Assignment) -> Result<Scalar> {
    if !(2..=6).contains(&k) {
        return Err(Error::InvalidInput(format!("printed combination only for 2 <= k <= 6, got {k}")));
    }
    let (h1, h2) = match assignment {
        Assignment::H1IsP => (p, q),
        Assignment::H1IsQ => (q, p),
    };
    Ok(PRINTED_COMBINATIONS[k - 2]
        .iter()
        .map(|&(c, word)| {
            let alpha = MultiIndex::parse(word).expect("static word");
            &Scalar::from_int(c) * &iterated_integral(&alpha, h1, h2, iv)
        })
        .sum())
}

/// Second Melnikov expressions `D₆`, `D₇`, `D₈` for primitives `P`, `Q`
/// (with `p = P'`, `q = Q'`).
pub fn melnikov_d(k: usize, pp: &Poly, qq: &Poly, iv: &Interval) -> Result<Scalar> {
    let p = pp.derivative();
    let q2 = qq * qq;
    match k {
        6 => Ok(&(&p * &q2).definite_integral(iv) * &Scalar::from_frac(1, 2)),
        7 => Ok(&(&(pp * &p) * &q2).definite_integral(iv) * &Scalar::from_int(-2)),
        8 => {
            let [direct, first, second] = d8_terms(pp, qq, iv);
            Ok(&(&direct - &(&Scalar::from_int(320) * &first)) + &(&Scalar::from_int(185) * &second))
        }
        _ => Err(Error::InvalidInput(format!("Melnikov expression only for k in {{6,7,8}}, got {k}"))),
    }
}

/// The three integrals combined in `D₈`: `∫P³Qq`, `∫P²q(∫Pq)` and `∫Pq(∫P²q)`,
/// inner integrals taken from `a`.
pub fn d8_terms(pp: &Poly, qq: &Poly, iv: &Interval) -> [Scalar; 3] {
    let q = qq.derivative();
    let p2 = pp * pp;
    let direct = (&(&(&p2 * pp) * qq) * &q).definite_integral(iv);
    let pq = pp * &q;
    let p2q = &p2 * &q;
    [direct, nested_integral(&[&p2q, &pq], iv), nested_integral(&[&pq, &p2q], iv)]
}

/// Truncated infinitesimal-center order: the smallest `j` with a nonzero
/// entry `(k, j)`, `k ≤ kmax`. `None` when the whole table vanishes.
pub fn infinitesimal_order(p: &Poly, q: &Poly, iv: &Interval, kmax: usize, param: Param) -> Option<usize> {
    let t = parametric_table(p, q, iv, kmax, param, Direction::Forward);
    t.nonzero().map(|(&(_, j), _)| j).min()
}

/// Predicted linear-in-parameter column from the first-order variational
/// response of the return map.
///
/// Perturbing `q` around `y' = p y³` (whose flow is `y_a(1 − 2P y_a²)^{-1/2}`)
/// gives the response `y_a² ∫ q (1 − 2P y_a²)^{1/2}`; perturbing `p` around
/// `y' = q y²` gives `y_a³ ∫ p (1 − Q y_a)^{-1}`. Returns the coefficient of
/// the `i`-th power of the expansion variable (`y_a²` resp. `y_a`).
pub fn first_order_column_oracle(pp: &Poly, qq: &Poly, iv: &Interval, i: usize, param: Param) -> Scalar {
    match param {
        Param::DeltaOnP => {
            // (1 - Q u)^{-1} = Σ Q^n u^n
            let p = pp.derivative();
            (&qq.pow(i as u32) * &p).definite_integral(iv)
        }
        Param::EpsOnQ => {
            // s² = 1 − 2P u solved coefficientwise: s₀ = 1,
            // 2 s_n = c_n − Σ_{0<m<n} s_m s_{n−m}
            let q = qq.derivative();
            let c1 = pp.scale(&Scalar::from_int(-2));
            let half = Scalar::from_frac(1, 2);
            let mut s: Vec<Poly> = vec![Poly::one()];
            for n in 1..=i {
                let mut rhs = if n == 1 { c1.clone() } else { Poly::zero() };
                for m in 1..n {
                    rhs = &rhs - &(&s[m] * &s[n - m]);
                }
                s.push(rhs.scale(&half));
            }
            (&q * &s[i]).definite_integral(iv)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    fn ints(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn iterated_examples() {
        let iv = Interval::unit();
        let one = Poly::one();
        assert_eq!(iterated_integral(&MultiIndex::parse("11").unwrap(), &one, &one, &iv), s("1/2"));
        let two_x = ints(&[0, 2]);
        assert_eq!(iterated_integral(&MultiIndex::parse("12").unwrap(), &one, &two_x, &iv), s("1/3"));
        let z = Poly::zero();
        assert_eq!(iterated_integral(&MultiIndex::parse("2121").unwrap(), &z, &z, &iv), Scalar::zero());
        assert!(MultiIndex::parse("").is_err());
        assert!(MultiIndex::parse("13").is_err());
    }

    #[test]
    fn riccati_case() {
        let v = poincare_coeffs(&Poly::zero(), &Poly::one(), &Interval::unit(), 9);
        assert!(v.iter().all(|x| x.is_one()));
    }

    #[test]
    fn constant_coefficients() {
        let v = poincare_coeffs(&Poly::one(), &Poly::one(), &Interval::unit(), 6);
        assert_eq!(v, vec![s("1"), s("2"), s("7/2"), s("41/6"), s("53/4")]);
        let zero = poincare_coeffs(&Poly::zero(), &Poly::zero(), &Interval::unit(), 6);
        assert!(zero.iter().all(Scalar::is_zero));
    }

    #[test]
    fn reversion() {
        let c = s("3/7");
        assert_eq!(invert_series(std::slice::from_ref(&c)), vec![-&c]);
        let (a, b) = (s("2/3"), s("-5"));
        let w = invert_series(&[a.clone(), b.clone()]);
        assert_eq!(w[1], &(&Scalar::from_int(2) * &(&a * &a)) - &b);
        // y/(1 - cy) inverts to y/(1 + cy)
        let v: Vec<Scalar> = (1..8).map(|k| c.pow(k)).collect();
        let w = invert_series(&v);
        let neg = -&c;
        assert_eq!(w, (1..8).map(|k| neg.pow(k)).collect::<Vec<_>>());
    }

    #[test]
    fn printed_combination_values() {
        let iv = Interval::unit();
        let one = Poly::one();
        assert_eq!(printed_combination(4, &one, &one, &iv, Assignment::H1IsQ).unwrap(), s("3/2"));
        assert_eq!(printed_combination(2, &one, &Poly::zero(), &iv, Assignment::H1IsQ).unwrap(), Scalar::zero());
        assert_eq!(printed_combination(6, &one, &one, &iv, Assignment::H1IsQ).unwrap(), s("-5/12"));
        assert!(printed_combination(7, &one, &one, &iv, Assignment::H1IsQ).is_err());
        // and they are the backward coefficients at (1, 1)
        let w = invert_series(&poincare_coeffs(&one, &one, &iv, 6));
        assert_eq!(&w[2..], &[s("3/2"), s("-11/6"), s("-5/12")]);
    }

    #[test]
    fn table_examples() {
        let iv = Interval::symmetric_unit();
        let (pp, qq) = (ints(&[-1, 0, 1]), ints(&[0, -1, 0, 1]));
        let t = parametric_table(&pp.derivative(), &qq.derivative(), &iv, 8, Param::EpsOnQ, Direction::Forward);
        assert_eq!(t.get(4, 1), s("-8/15"));
        assert_eq!(t.to_json()["4,1"], "-8/15");

        let iv = Interval::unit();
        let (pp, qq) = (ints(&[0, -1, 1]), ints(&[0, 2, -3, 1]));
        let t = parametric_table(&pp.derivative(), &qq.derivative(), &iv, 8, Param::EpsOnQ, Direction::Forward);
        assert_eq!(t.get(5, 2), s("-1/140"));

        let iv = Interval::symmetric_unit();
        let (pp, qq) = (ints(&[1, 0, -2, 0, 1]), ints(&[0, 0, -1, 0, 1]));
        for param in [Param::EpsOnQ, Param::DeltaOnP] {
            for dir in [Direction::Forward, Direction::Backward] {
                let t = parametric_table(&pp.derivative(), &qq.derivative(), &iv, 10, param, dir);
                assert!(t.is_all_zero());
            }
        }
    }

    #[test]
    fn melnikov_examples() {
        let iv = Interval::unit();
        let (pp, qq) = (ints(&[0, -1, 1]), ints(&[0, 2, -3, 1]));
        assert_eq!(melnikov_d(6, &pp, &qq, &iv).unwrap(), s("-1/280"));
        for k in 6..=8 {
            assert!(melnikov_d(k, &pp, &Poly::zero(), &iv).unwrap().is_zero());
            let cc = melnikov_d(k, &ints(&[1, 0, -2, 0, 1]), &ints(&[0, 0, -1, 0, 1]), &Interval::symmetric_unit());
            assert!(cc.unwrap().is_zero());
        }
        assert!(melnikov_d(9, &pp, &qq, &iv).is_err());
    }

    #[test]
    fn infinitesimal_orders() {
        let iv = Interval::symmetric_unit();
        let (pp, qq) = (ints(&[1, 0, -2, 0, 1]), ints(&[0, 0, -1, 0, 1]));
        assert_eq!(infinitesimal_order(&pp.derivative(), &qq.derivative(), &iv, 12, Param::EpsOnQ), None);
        let (pp, qq) = (ints(&[-1, 0, 1]), ints(&[0, -1, 0, 1]));
        assert_eq!(infinitesimal_order(&pp.derivative(), &qq.derivative(), &iv, 8, Param::EpsOnQ), Some(1));
        assert_eq!(infinitesimal_order(&pp.derivative(), &Poly::zero(), &iv, 10, Param::EpsOnQ), None);
    }

    #[test]
    fn oracle_examples() {
        let iv = Interval::symmetric_unit();
        let (pp, qq) = (ints(&[-1, 0, 1]), ints(&[0, -1, 0, 1]));
        assert!(first_order_column_oracle(&pp, &qq, &iv, 0, Param::DeltaOnP).is_zero());
        assert_eq!(first_order_column_oracle(&pp, &qq, &iv, 1, Param::EpsOnQ), s("-8/15"));
        let (pp, qq) = (ints(&[0, -1, 1]), ints(&[0, 2, -3, 1]));
        assert_eq!(first_order_column_oracle(&pp, &qq, &Interval::unit(), 2, Param::DeltaOnP), s("-1/140"));
    }
}

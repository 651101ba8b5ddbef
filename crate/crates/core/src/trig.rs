//! Real trigonometric polynomials with exact Fourier coefficients, and
//! moments `∫₀^{2π} Qⁱ d(P^j)` over a full period.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::poly::Poly;

/// `a0 + Σ_k (cos_k cos kθ + sin_k sin kθ)`, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "RawTrig")]
pub struct TrigPoly {
    pub a0: Scalar,
    #[serde(rename = "cos")]
    cos: BTreeMap<u32, Scalar>,
    #[serde(rename = "sin")]
    sin: BTreeMap<u32, Scalar>,
}

#[derive(Deserialize)]
struct RawTrig {
    #[serde(default)]
    a0: Scalar,
    #[serde(default)]
    cos: BTreeMap<u32, Scalar>,
    #[serde(default)]
    sin: BTreeMap<u32, Scalar>,
}

impl From<RawTrig> for TrigPoly {
    fn from(raw: RawTrig) -> Self {
        let mut t = TrigPoly::constant(raw.a0);
        for (k, c) in raw.cos {
            t.add_cos(k as i64, &c);
        }
        for (k, c) in raw.sin {
            t.add_sin(k as i64, &c);
        }
        t
    }
}

fn bump(map: &mut BTreeMap<u32, Scalar>, k: u32, c: &Scalar) {
    let v = map.remove(&k).unwrap_or_default() + c;
    if !v.is_zero() {
        map.insert(k, v);
    }
}

impl TrigPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        TrigPoly { a0: c, ..Self::default() }
    }

    /// `c·cos(kθ)`.
    pub fn cos(k: u32, c: Scalar) -> Self {
        let mut t = Self::zero();
        t.add_cos(k as i64, &c);
        t
    }

    /// `c·sin(kθ)`.
    pub fn sin(k: u32, c: Scalar) -> Self {
        let mut t = Self::zero();
        t.add_sin(k as i64, &c);
        t
    }

    pub fn cos_coeffs(&self) -> &BTreeMap<u32, Scalar> {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &BTreeMap<u32, Scalar> {
        &self.sin
    }

    pub fn cos_coeff(&self, k: u32) -> Scalar {
        if k == 0 {
            return self.a0.clone();
        }
        self.cos.get(&k).cloned().unwrap_or_default()
    }

    pub fn sin_coeff(&self, k: u32) -> Scalar {
        self.sin.get(&k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.cos.is_empty() && self.sin.is_empty()
    }

    fn add_cos(&mut self, k: i64, c: &Scalar) {
        match k.unsigned_abs() as u32 {
            0 => self.a0 += c,
            k => bump(&mut self.cos, k, c),
        }
    }

    fn add_sin(&mut self, k: i64, c: &Scalar) {
        match k {
            0 => {}
            k if k > 0 => bump(&mut self.sin, k as u32, c),
            k => bump(&mut self.sin, k.unsigned_abs() as u32, &-c),
        }
    }

    /// Terms as `(is_sin, k, coeff)`, with the constant as a cosine of frequency 0.
    fn terms(&self) -> impl Iterator<Item = (bool, i64, &Scalar)> {
        std::iter::once((false, 0, &self.a0))
            .filter(|(_, _, c)| !c.is_zero())
            .chain(self.cos.iter().map(|(&k, c)| (false, k as i64, c)))
            .chain(self.sin.iter().map(|(&k, c)| (true, k as i64, c)))
    }

    pub fn add(&self, other: &TrigPoly) -> TrigPoly {
        let mut out = self.clone();
        for (is_sin, k, c) in other.terms() {
            if is_sin {
                out.add_sin(k, c);
            } else {
                out.add_cos(k, c);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> TrigPoly {
        let mut out = TrigPoly::zero();
        for (is_sin, k, x) in self.terms() {
            let v = x * c;
            if is_sin {
                out.add_sin(k, &v);
            } else {
                out.add_cos(k, &v);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> TrigPoly {
        let mut acc = TrigPoly::constant(Scalar::one());
        for _ in 0..e {
            acc = trig_mul(&acc, self);
        }
        acc
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.a0.is_zero() {
            parts.push(self.a0.to_string());
        }
        for (k, c) in &self.cos {
            parts.push(format!("({c})cos{k}t"));
        }
        for (k, c) in &self.sin {
            parts.push(format!("({c})sin{k}t"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Exact multiple of π.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PiScalar {
    pub pi_coeff: Scalar,
}

impl PiScalar {
    pub fn is_zero(&self) -> bool {
        self.pi_coeff.is_zero()
    }
}

impl fmt::Display for PiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*pi", self.pi_coeff)
    }
}

/// Product by the product-to-sum identities.
pub fn trig_mul(f: &TrigPoly, g: &TrigPoly) -> TrigPoly {
    let half = Scalar::from_frac(1, 2);
    let mut out = TrigPoly::zero();
    for (fs, m, a) in f.terms() {
        for (gs, n, b) in g.terms() {
            let c = &(a * b) * &half;
            match (fs, gs) {
                (false, false) => {
                    out.add_cos(m - n, &c);
                    out.add_cos(m + n, &c);
                }
                (true, true) => {
                    out.add_cos(m - n, &c);
                    out.add_cos(m + n, &-&c);
                }
                (true, false) => {
                    out.add_sin(m + n, &c);
                    out.add_sin(m - n, &c);
                }
                (false, true) => {
                    out.add_sin(n + m, &c);
                    out.add_sin(n - m, &c);
                }
            }
        }
    }
    out
}

/// Derivative in θ.
pub fn trig_diff(f: &TrigPoly) -> TrigPoly {
    let mut out = TrigPoly::zero();
    for (&k, c) in &f.cos {
        out.add_sin(k as i64, &(c * &Scalar::from_int(-(k as i64))));
    }
    for (&k, c) in &f.sin {
        out.add_cos(k as i64, &(c * &Scalar::from_int(k as i64)));
    }
    out
}

/// `∫₀^{2π} f dθ = 2π·a0`.
pub fn trig_integral(f: &TrigPoly) -> PiScalar {
    PiScalar { pi_coeff: &f.a0 * &Scalar::from_int(2) }
}

/// `∫₀^{2π} Qⁱ d(P^j)`.
pub fn trig_moment(p: &TrigPoly, q: &TrigPoly, i: u32, j: u32) -> PiScalar {
    if j == 0 {
        return PiScalar::default();
    }
    trig_integral(&trig_mul(&q.pow(i), &trig_diff(&p.pow(j))))
}

/// Frequencies `k ≥ 1` with a nonzero cosine or sine coefficient.
pub fn frequency_support(f: &TrigPoly) -> Vec<u32> {
    let mut ks: Vec<u32> = f.cos.keys().chain(f.sin.keys()).copied().collect();
    ks.sort_unstable();
    ks.dedup();
    ks
}

fn check_family_member(f: &TrigPoly, d: u32, other: u32, which: &'static str) -> Result<()> {
    for k in frequency_support(f) {
        if k % d != 0 {
            return Err(Error::InvalidInput(format!(
                "{which} has frequency {k}, not a multiple of {d}"
            )));
        }
        if (k / d).is_multiple_of(other) {
            return Err(Error::ExcludedIndex { which, index: k / d });
        }
    }
    Ok(())
}

/// Validates a pair `P = Σ (a_k cos k d₁θ + b_k sin k d₁θ)`,
/// `Q = Σ (c_l cos l d₂θ + f_l sin l d₂θ)` with `d₂ ∤ k`, `d₁ ∤ l` and
/// `gcd(d₁, d₂) = 1`. Inputs carry actual frequencies; the reported
/// index is the multiple `k` or `l`. Constant terms are unrestricted.
pub fn build_family(d1: u32, d2: u32, p: TrigPoly, q: TrigPoly) -> Result<(TrigPoly, TrigPoly)> {
    if d1 < 2 || d2 < 2 {
        return Err(Error::InvalidInput(format!("frequencies must exceed 1, got {d1}, {d2}")));
    }
    if num_integer::gcd(d1, d2) != 1 {
        return Err(Error::FrequenciesNotCoprime(d1, d2));
    }
    check_family_member(&p, d1, d2, "P")?;
    check_family_member(&q, d2, d1, "Q")?;
    Ok((p, q))
}

/// `Q + R(cos(d₂θ))`.
pub fn modify_family(q: &TrigPoly, d2: u32, r: &Poly) -> TrigPoly {
    let c = TrigPoly::cos(d2, Scalar::one());
    let composed = r
        .coeffs()
        .iter()
        .rev()
        .fold(TrigPoly::zero(), |acc, a| trig_mul(&acc, &c).add(&TrigPoly::constant(a.clone())));
    q.add(&composed)
}

/// Nonzero moment `∫ Qⁱ d(P^j)` certifying that `(P, Q)` fails the composition
/// condition, searched in order of `(i + j, i)`. `None` is inconclusive.
pub fn non_cc_certificate(p: &TrigPoly, q: &TrigPoly, i_max: u32, j_max: u32) -> Option<(u32, u32, PiScalar)> {
    let mut cells: Vec<(u32, u32)> = (1..=i_max).flat_map(|i| (1..=j_max).map(move |j| (i, j))).collect();
    cells.sort_by_key(|&(i, j)| (i + j, i));
    let qpows: Vec<TrigPoly> = (0..=i_max).map(|i| q.pow(i)).collect();
    let dps: Vec<TrigPoly> = (0..=j_max).map(|j| trig_diff(&p.pow(j))).collect();
    cells.into_iter().find_map(|(i, j)| {
        let v = trig_integral(&trig_mul(&qpows[i as usize], &dps[j as usize]));
        (!v.is_zero()).then_some((i, j, v))
    })
}

/// `∫ Qⁱ d(P^j)` for `Q = Σ_t x_t·terms[t]` as a polynomial in the symbols
/// `x_t`: maps each exponent vector to its π-coefficient.
pub fn moment_polynomial(p: &TrigPoly, terms: &[TrigPoly], i: u32, j: u32) -> BTreeMap<Vec<u32>, PiScalar> {
    let dp = trig_diff(&p.pow(j));
    let mut out = BTreeMap::new();
    for exps in compositions(i, terms.len()) {
        let mut prod = TrigPoly::constant(Scalar::one());
        for (t, &e) in terms.iter().zip(&exps) {
            prod = trig_mul(&prod, &t.pow(e));
        }
        let v = trig_integral(&trig_mul(&prod, &dp));
        if !v.is_zero() {
            let mult = Scalar::from_int(multinomial(i, &exps) as i64);
            out.insert(exps, PiScalar { pi_coeff: &v.pi_coeff * &mult });
        }
    }
    out
}

/// All exponent vectors of length `n` summing to `total`.
fn compositions(total: u32, n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn multinomial(n: u32, parts: &[u32]) -> u64 {
    let fact = |k: u32| (1..=k as u64).product::<u64>();
    parts.iter().fold(fact(n), |acc, &k| acc / fact(k))
}

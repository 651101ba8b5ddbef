//! Right `[a,b]`-factors, `[a,b]`-indecomposable factors, definiteness and
//! the composition condition.
//!
//! A right `[a,b]`-factor of `P` is a polynomial `W` with `W(a) = W(b)` and
//! `P = P̃∘W`. Two factors are equivalent when they differ by a degree-one
//! polynomial on the left; the representative kept here is monic with zero
//! constant term. In characteristic zero a right factor of a given degree is
//! unique up to this equivalence, so each divisor of `deg P` yields at most one
//! candidate, recovered from the top coefficients of `P`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::poly::{chebyshev, in_subring, Interval, Poly};

/// Normalized, pairwise non-equivalent right `[a,b]`-factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorSet {
    pub factors: Vec<Poly>,
    /// Number of `[a,b]`-indecomposable classes of the underlying polynomial.
    pub s: usize,
}

impl FactorSet {
    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().filter_map(Poly::degree).collect()
    }
}

fn check_closed(p: &Poly, iv: &Interval) -> Result<()> {
    if p.is_constant() || !iv.is_closed(p) {
        return Err(Error::NotClosed);
    }
    Ok(())
}

fn divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..=n).filter(move |m| n.is_multiple_of(*m))
}

/// The unique normalized degree-`m` polynomial `W` whose `(n/m)`-th power
/// agrees with `P / lc(P)` in degrees `n, …, n-m+1`.
fn approximate_root(p: &Poly, m: usize) -> Poly {
    let n = p.degree().expect("nonzero");
    let r = n / m;
    let inv_lc = p.leading().unwrap().checked_inv().unwrap();
    let r_inv = Scalar::from_frac(1, r as i64);
    let mut w = vec![Scalar::zero(); m + 1];
    w[m] = Scalar::one();
    for k in 1..m {
        let partial = Poly::new(w.clone()).pow(r as u32);
        let target = &p.coeff(n - k) * &inv_lc;
        w[m - k] = &(&target - &partial.coeff(n - k)) * &r_inv;
    }
    Poly::new(w)
}

fn sort_factors(factors: &mut [Poly]) {
    factors.sort_by(|a, b| a.cmp_coeffs(b));
}

fn candidate_factors(p: &Poly, iv: &Interval) -> Result<Vec<Poly>> {
    check_closed(p, iv)?;
    let n = p.degree().unwrap();
    let mut out = Vec::new();
    for m in divisors(n).filter(|&m| m > 1) {
        let w = approximate_root(p, m);
        if iv.is_closed(&w) && in_subring(p, &w)?.is_some() {
            out.push(w);
        }
    }
    sort_factors(&mut out);
    Ok(out)
}

fn minimal_elements(factors: &[Poly]) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for w in factors {
        let mut minimal = true;
        for v in factors {
            if v.degree() < w.degree() && in_subring(w, v)?.is_some() {
                minimal = false;
                break;
            }
        }
        if minimal {
            out.push(w.clone());
        }
    }
    Ok(out)
}

/// All right `[a,b]`-factors of `P`, including the class of `P` itself.
pub fn right_factors(p: &Poly, iv: &Interval) -> Result<FactorSet> {
    let factors = candidate_factors(p, iv)?;
    let s = minimal_elements(&factors)?.len();
    Ok(FactorSet { factors, s })
}

/// The `[a,b]`-indecomposable right factors of `P`, sorted by degree.
pub fn indecomposable_ab_factors(p: &Poly, iv: &Interval) -> Result<FactorSet> {
    let factors = minimal_elements(&candidate_factors(p, iv)?)?;
    let s = factors.len();
    Ok(FactorSet { factors, s })
}

/// `P` is definite iff it has exactly one `[a,b]`-indecomposable class.
pub fn is_definite(p: &Poly, iv: &Interval) -> Result<bool> {
    if !iv.in_p(p) {
        return Err(Error::NotInP("P"));
    }
    Ok(indecomposable_ab_factors(p, iv)?.s == 1)
}

/// Common right `[a,b]`-factor `W` with `P = P̃∘W`, `Q = Q̃∘W`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CcWitness {
    pub w: Poly,
    pub p_tilde: Poly,
    pub q_tilde: Poly,
}

/// Decides the composition condition for `(P, Q)` on the interval.
pub fn cc_check(p: &Poly, q: &Poly, iv: &Interval) -> Result<Option<CcWitness>> {
    check_closed(q, iv)?;
    for w in indecomposable_ab_factors(p, iv)?.factors {
        if let Some(q_tilde) = in_subring(q, &w)? {
            let p_tilde = in_subring(p, &w)?.expect("factor of P");
            return Ok(Some(CcWitness { w, p_tilde, q_tilde }));
        }
    }
    Ok(None)
}

/// Degree pattern of the indecomposable factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PatternTag {
    Single,
    ChebyshevLike,
    PowerLike,
    Triple,
    /// `s = 2` matching neither two-factor pattern, or `s > 3`.
    Unclassified,
}

impl fmt::Display for PatternTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PatternTag::Single => "single",
            PatternTag::ChebyshevLike => "chebyshev-like",
            PatternTag::PowerLike => "power-like",
            PatternTag::Triple => "triple",
            PatternTag::Unclassified => "unclassified",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub s: usize,
    pub factors: Vec<Poly>,
    pub factor_degrees: Vec<usize>,
    pub definite: bool,
    pub tag: PatternTag,
}

/// Shift `c` and scale parameter `σ = λ⁻²` for which `W` is equivalent to
/// `T_d(λ(x - c))`. Degree-2 factors fit every `σ` and report `None` for it.
/// Returns `None` when `W` has no such form.
fn chebyshev_shape(w: &Poly) -> Option<(Scalar, Option<Scalar>)> {
    let d = w.degree()?;
    let c = -&(&w.coeff(d - 1) / &Scalar::from_int(d as i64));
    let v = w.compose(&Poly::linear(Scalar::one(), c.clone()));
    if d < 3 {
        return Some((c, None));
    }
    let t = chebyshev(d);
    let top = Scalar::from_int(1i64 << (d - 1));
    // coefficient of u^{d-2k} in T_d(λu)/(2^{d-1}λ^d) is t_{d-2k}/2^{d-1}·σ^k
    let sigma = &v.coeff(d - 2) / &(&t.coeff(d - 2) / &top);
    if sigma.is_zero() {
        return None;
    }
    for i in 1..=d {
        let k = (d - i) / 2;
        let expected = if (d - i) % 2 == 0 {
            &(&t.coeff(i) / &top) * &sigma.pow(k as u32)
        } else {
            Scalar::zero()
        };
        if v.coeff(i) != expected {
            return None;
        }
    }
    Some((c, Some(sigma)))
}

fn common_chebyshev(a: &Poly, b: &Poly) -> bool {
    let (Some((ca, sa)), Some((cb, sb))) = (chebyshev_shape(a), chebyshev_shape(b)) else {
        return false;
    };
    if ca != cb {
        return false;
    }
    match (sa, sb) {
        (Some(x), Some(y)) => x == y,
        _ => true,
    }
}

fn two_factor_tag(ws: &[Poly], n: usize) -> PatternTag {
    let (d1, d2) = (ws[0].degree().unwrap(), ws[1].degree().unwrap());
    let coprime = num_integer::gcd(d1, d2) == 1;
    if coprime && d1 > 1 && d2 > 1 && n.is_multiple_of(d1 * d2) && common_chebyshev(&ws[0], &ws[1]) {
        return PatternTag::ChebyshevLike;
    }
    if coprime && (n.is_multiple_of(d1) || n.is_multiple_of(d2)) {
        return PatternTag::PowerLike;
    }
    PatternTag::Unclassified
}

pub fn structure_report(p: &Poly, iv: &Interval) -> Result<StructureReport> {
    let set = indecomposable_ab_factors(p, iv)?;
    let n = p.degree().unwrap();
    let tag = match set.s {
        1 => PatternTag::Single,
        2 => two_factor_tag(&set.factors, n),
        3 => PatternTag::Triple,
        _ => PatternTag::Unclassified,
    };
    Ok(StructureReport {
        s: set.s,
        factor_degrees: set.degrees(),
        definite: set.s == 1,
        factors: set.factors,
        tag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t6_plus_one() -> Poly {
        &chebyshev(6) + &Poly::one()
    }

    /// x²(x⁴−1)² = x¹⁰ − 2x⁶ + x²
    fn p10() -> Poly {
        Poly::from_ints(&[0, 0, 1, 0, 0, 0, -2, 0, 0, 0, 1])
    }

    #[test]
    fn right_factors_examples() {
        let iv = Interval::symmetric_unit();
        let x4 = Poly::monomial(Scalar::one(), 4);
        let set = right_factors(&x4, &iv).unwrap();
        assert_eq!(set.factors, vec![Poly::monomial(Scalar::one(), 2), x4]);

        let set = right_factors(&t6_plus_one(), &Interval::chebyshev6()).unwrap();
        assert_eq!(set.degrees(), vec![2, 3, 6]);

        let cubic = Poly::from_ints(&[0, -1, 0, 1]);
        assert_eq!(right_factors(&cubic, &iv).unwrap().factors, vec![cubic]);
    }

    #[test]
    fn not_closed_is_rejected() {
        let p = Poly::from_ints(&[0, 1, 1]);
        assert!(matches!(right_factors(&p, &Interval::unit()), Err(Error::NotClosed)));
    }

    #[test]
    fn indecomposable_examples() {
        let set = indecomposable_ab_factors(&t6_plus_one(), &Interval::chebyshev6()).unwrap();
        assert_eq!((set.s, set.degrees()), (2, vec![2, 3]));
        assert_eq!(set.factors[0], Poly::from_ints(&[0, 0, 1]));
        assert_eq!(set.factors[1], Poly::new(vec![Scalar::zero(), Scalar::from_frac(-3, 4), Scalar::zero(), Scalar::one()]));

        let set = indecomposable_ab_factors(&p10(), &Interval::symmetric_unit()).unwrap();
        assert_eq!(set.s, 2);
        assert_eq!(set.factors, vec![Poly::from_ints(&[0, 0, 1]), Poly::from_ints(&[0, -1, 0, 0, 0, 1])]);

        let set = indecomposable_ab_factors(&Poly::monomial(Scalar::one(), 4), &Interval::symmetric_unit()).unwrap();
        assert_eq!((set.s, set.factors), (1, vec![Poly::from_ints(&[0, 0, 1])]));
    }

    #[test]
    fn definiteness() {
        assert!(!is_definite(&t6_plus_one(), &Interval::chebyshev6()).unwrap());
        assert!(is_definite(&Poly::from_ints(&[-1, 0, 1]), &Interval::symmetric_unit()).unwrap());
        assert!(!is_definite(&p10(), &Interval::symmetric_unit()).unwrap());
        assert!(is_definite(&Poly::from_ints(&[0, 0, 1]), &Interval::symmetric_unit()).is_err());
    }

    #[test]
    fn cc_examples() {
        let iv = Interval::symmetric_unit();
        let p = Poly::from_ints(&[1, 0, -2, 0, 1]);
        let q = Poly::from_ints(&[0, 0, -1, 0, 1]);
        let w = cc_check(&p, &q, &iv).unwrap().unwrap();
        assert_eq!(w.w, Poly::from_ints(&[0, 0, 1]));
        assert_eq!(w.p_tilde, Poly::from_ints(&[1, -2, 1]));
        assert_eq!(w.q_tilde, Poly::from_ints(&[0, -1, 1]));

        let p = Poly::from_ints(&[0, 0, 1]);
        let q = Poly::from_ints(&[0, -1, 0, 1]);
        assert!(cc_check(&p, &q, &iv).unwrap().is_none());

        let iv6 = Interval::chebyshev6();
        let w = cc_check(&t6_plus_one(), &chebyshev(2), &iv6).unwrap().unwrap();
        assert_eq!(w.w.degree(), Some(2));
        assert_eq!(w.q_tilde.compose(&w.w), chebyshev(2));
    }

    #[test]
    fn structure_tags() {
        let r = structure_report(&t6_plus_one(), &Interval::chebyshev6()).unwrap();
        assert_eq!((r.s, r.tag, r.factor_degrees), (2, PatternTag::ChebyshevLike, vec![2, 3]));
        let r = structure_report(&p10(), &Interval::symmetric_unit()).unwrap();
        assert_eq!((r.s, r.tag, r.factor_degrees), (2, PatternTag::PowerLike, vec![2, 5]));
        let r = structure_report(&Poly::from_ints(&[-1, 0, 1]), &Interval::symmetric_unit()).unwrap();
        assert_eq!((r.s, r.tag), (1, PatternTag::Single));
    }

    #[test]
    fn even_chebyshev_on_unit_interval_is_definite() {
        // only the even-degree Chebyshev factors are closed on [-1, 1]; T₂ is minimal
        let r = structure_report(&chebyshev(30), &Interval::symmetric_unit()).unwrap();
        assert_eq!((r.s, r.factor_degrees), (1, vec![2]));
    }
}

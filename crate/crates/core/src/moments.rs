//! Polynomial moments `m_i(P,Q) = ∫_a^b Pⁱ Q'`, zero-moment subspaces and
//! composition sums.

use rayon::prelude::*;
use serde::Serialize;

use crate::center::{parametric_table, Direction, Param};
use crate::decomp::{cc_check, indecomposable_ab_factors, is_definite, CcWitness};
use crate::error::{Error, Result};
use crate::exact::{kernel_basis, row_space_basis, Matrix, Scalar};
use crate::poly::{Interval, Poly};

/// `∫_a^b x^k dx` for `k = 0, 1, …`, extended on demand.
#[derive(Clone, Debug)]
pub struct MonomialIntegrals {
    a_pows: Vec<Scalar>,
    b_pows: Vec<Scalar>,
    values: Vec<Scalar>,
}

impl MonomialIntegrals {
    pub fn new(iv: &Interval) -> Self {
        MonomialIntegrals {
            a_pows: vec![iv.a.clone()],
            b_pows: vec![iv.b.clone()],
            values: vec![&iv.b - &iv.a],
        }
    }

    fn extend_to(&mut self, k: usize) {
        while self.values.len() <= k {
            let n = self.values.len();
            let a = &self.a_pows[n - 1] * &self.a_pows[0];
            let b = &self.b_pows[n - 1] * &self.b_pows[0];
            self.values.push(&(&b - &a) / &Scalar::from_int(n as i64 + 1));
            self.a_pows.push(a);
            self.b_pows.push(b);
        }
    }

    pub fn integrate(&mut self, f: &Poly) -> Scalar {
        let Some(d) = f.degree() else {
            return Scalar::zero();
        };
        self.extend_to(d);
        self.integrate_ready(f)
    }

    /// Like [`integrate`](Self::integrate) but requires the table to cover `deg f`.
    fn integrate_ready(&self, f: &Poly) -> Scalar {
        f.coeffs()
            .iter()
            .zip(&self.values)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| c * v)
            .sum()
    }
}

/// `m_i(P,Q) = ∫_a^b Pⁱ(x) Q'(x) dx`.
pub fn moment(p: &Poly, q: &Poly, iv: &Interval, i: usize) -> Scalar {
    (&p.pow(i as u32) * &q.derivative()).definite_integral(iv)
}

/// `m_0 … m_n` of `(P, Q)`, sharing powers of `P`.
pub fn moments_upto(p: &Poly, q: &Poly, iv: &Interval, n: usize) -> Vec<Scalar> {
    let dq = q.derivative();
    let mut ints = MonomialIntegrals::new(iv);
    let mut pw = Poly::one();
    let mut out = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        out.push(ints.integrate(&(&pw * &dq)));
        pw = &pw * p;
    }
    out
}

/// Both families `m_i(P,Q)` and `m_j(Q,P)` vanish for all indices `≤ n`.
pub fn double_moments_vanish(p: &Poly, q: &Poly, iv: &Interval, n: usize) -> bool {
    moments_upto(p, q, iv, n).iter().all(Scalar::is_zero)
        && moments_upto(q, p, iv, n).iter().all(Scalar::is_zero)
}

/// Fixed basis `B_n = (x − a)(x − b)xⁿ`, `n = 0..=d−2`, of `{Q : deg Q ≤ d, Q(a) = Q(b) = 0}`.
pub fn p_space_basis(iv: &Interval, d: usize) -> Vec<Poly> {
    let base = &Poly::linear(Scalar::one(), -&iv.a) * &Poly::linear(Scalar::one(), -&iv.b);
    (0..d.saturating_sub(1))
        .map(|n| &base * &Poly::monomial(Scalar::one(), n))
        .collect()
}

/// Moment functionals `Q ↦ m_i(P,Q)`, `i = 0..=imax`, on the fixed basis.
#[derive(Clone, Debug)]
pub struct MomentMatrix {
    pub p: Poly,
    pub iv: Interval,
    pub d: usize,
    pub imax: usize,
    pub basis: Vec<Poly>,
    pub m: Matrix,
}

impl MomentMatrix {
    pub fn build(p: &Poly, iv: &Interval, d: usize, imax: usize) -> Self {
        Self::build_on(p, iv, d, imax, p_space_basis(iv, d))
    }

    /// Moment matrix on an arbitrary list of basis polynomials.
    pub fn build_on(p: &Poly, iv: &Interval, d: usize, imax: usize, basis: Vec<Poly>) -> Self {
        let derivs: Vec<Poly> = basis.iter().map(Poly::derivative).collect();
        let mut powers = Vec::with_capacity(imax + 1);
        let mut pw = Poly::one();
        for _ in 0..=imax {
            let next = &pw * p;
            powers.push(pw);
            pw = next;
        }
        let mut ints = MonomialIntegrals::new(iv);
        let top = powers.last().and_then(Poly::degree).unwrap_or(0) + d;
        ints.extend_to(top);
        let rows: Vec<Vec<Scalar>> = powers
            .par_iter()
            .map(|pw| derivs.iter().map(|b| ints.integrate_ready(&(pw * b))).collect())
            .collect();
        let m = if rows.is_empty() || basis.is_empty() {
            Matrix::zeros(rows.len(), basis.len())
        } else {
            Matrix::from_rows(rows)
        };
        MomentMatrix { p: p.clone(), iv: iv.clone(), d, imax, basis, m }
    }

    fn combine(&self, v: &[Scalar]) -> Poly {
        self.basis
            .iter()
            .zip(v)
            .fold(Poly::zero(), |acc, (b, c)| &acc + &b.scale(c))
    }

    /// Kernel of the matrix, as polynomials.
    pub fn kernel(&self) -> Vec<Poly> {
        kernel_basis(&self.m).iter().map(|v| self.combine(v)).collect()
    }
}

/// Extra rows used to certify that the kernel has stabilized.
pub const STABILIZATION_MARGIN: usize = 5;

fn check_in_p(p: &Poly, iv: &Interval) -> Result<()> {
    if !iv.in_p(p) {
        return Err(Error::NotInP("P"));
    }
    Ok(())
}

/// Basis of `Z(P)_d`: polynomials of degree `≤ d` vanishing at both endpoints
/// whose moments `m_i(P, ·)` vanish for `i ≤ imax` (default `2d`). Fails
/// unless the kernel is unchanged with [`STABILIZATION_MARGIN`] more moments.
pub fn zspace(p: &Poly, iv: &Interval, d: usize, imax: Option<usize>) -> Result<Vec<Poly>> {
    check_in_p(p, iv)?;
    if d < 2 {
        return Err(Error::InvalidInput(format!("zspace needs d >= 2, got {d}")));
    }
    let imax = imax.unwrap_or(2 * d);
    let more = imax + STABILIZATION_MARGIN;
    let full = MomentMatrix::build(p, iv, d, more);
    let head = Matrix::from_rows((0..=imax).map(|i| full.m.row(i).to_vec()).collect());
    let at_imax = full.basis.len() - head.rank();
    let kernel = full.kernel();
    if kernel.len() != at_imax {
        return Err(Error::KernelNotStabilized { imax, at_imax, more, at_more: kernel.len() });
    }
    Ok(kernel)
}

fn coeff_vector(f: &Poly, d: usize) -> Vec<Scalar> {
    (0..=d).map(|i| f.coeff(i)).collect()
}

fn from_vector(v: &[Scalar]) -> Poly {
    Poly::new(v.to_vec())
}

/// Echelon basis of `span(polys) ∩ {Q : Q(a) = Q(b) = 0}` inside degree `≤ d`.
fn restrict_to_p(polys: &[Poly], iv: &Interval, d: usize) -> Vec<Poly> {
    let span: Vec<Vec<Scalar>> = row_space_basis(
        &polys.iter().map(|f| coeff_vector(f, d)).collect::<Vec<_>>(),
        d + 1,
    );
    if span.is_empty() {
        return Vec::new();
    }
    let gens: Vec<Poly> = span.iter().map(|v| from_vector(v)).collect();
    let constraints = Matrix::from_rows(vec![
        gens.iter().map(|g| g.eval(&iv.a)).collect(),
        gens.iter().map(|g| g.eval(&iv.b)).collect(),
    ]);
    let combos: Vec<Vec<Scalar>> = kernel_basis(&constraints)
        .iter()
        .map(|c| {
            let f = gens.iter().zip(c).fold(Poly::zero(), |acc, (g, x)| &acc + &g.scale(x));
            coeff_vector(&f, d)
        })
        .collect();
    row_space_basis(&combos, d + 1).iter().map(|v| from_vector(v)).collect()
}

/// Basis of `{Σ_j S_j∘W_j : deg ≤ d}` intersected with the endpoint-zero space,
/// where `W_j` are the `[a,b]`-indecomposable factors of `P`.
pub fn composition_sum_space(p: &Poly, iv: &Interval, d: usize) -> Result<Vec<Poly>> {
    check_in_p(p, iv)?;
    let factors = indecomposable_ab_factors(p, iv)?.factors;
    let mut gens = vec![Poly::one()];
    for w in &factors {
        let dw = w.degree().unwrap();
        let mut pw = w.clone();
        for _ in 1..=d / dw {
            gens.push(pw.clone());
            pw = &pw * w;
        }
    }
    Ok(restrict_to_p(&gens, iv, d))
}

/// Whether two lists of polynomials of degree `≤ d` span the same space.
pub fn same_span(a: &[Poly], b: &[Poly], d: usize) -> bool {
    let va: Vec<Vec<Scalar>> = a.iter().map(|f| coeff_vector(f, d)).collect();
    let vb: Vec<Vec<Scalar>> = b.iter().map(|f| coeff_vector(f, d)).collect();
    let ra = row_space_basis(&va, d + 1);
    let rb = row_space_basis(&vb, d + 1);
    // reduced echelon bases are unique
    ra == rb
}

/// Whether `Z(P)_d` equals the composition-sum space.
pub fn yui_check(p: &Poly, iv: &Interval, d: usize, imax: Option<usize>) -> Result<bool> {
    let z = zspace(p, iv, d, imax)?;
    let c = composition_sum_space(p, iv, d)?;
    Ok(same_span(&z, &c, d))
}

/// `⌊(d+1)/2⌋ + ⌊(d+1)/3⌋ − ⌊(d+1)/6⌋`, the closed-form count for `Z(T₆)_d`.
#[allow(clippy::manual_div_ceil)]
pub fn z_dim_formula(d: usize) -> usize {
    (d + 1) / 2 + (d + 1) / 3 - (d + 1) / 6
}

/// `⌊d/2⌋ + ⌊d/3⌋ − ⌊d/6⌋`: the dimension of `{S₁∘T₂ + S₂∘T₃} ∩ 𝒫_d` counted
/// directly (polynomials in `T₂` and in `T₃` meet in polynomials in `T₆`, and
/// one endpoint condition remains).
pub fn z_dim_t6_counted(d: usize) -> usize {
    d / 2 + d / 3 - d / 6
}

/// `m_i(Q, P) = 0` for `i ≤ imax + margin`, i.e. `P ∈ Z(Q)`.
pub fn in_zero_space(p: &Poly, of: &Poly, iv: &Interval, imax: usize) -> bool {
    moments_upto(of, p, iv, imax + STABILIZATION_MARGIN).iter().all(Scalar::is_zero)
}

/// Flags for a candidate parametric center and the structural implication
/// "center without composition ⇒ both non-definite and mutual Z-membership".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureFlags {
    pub cc: Option<CcWitness>,
    pub kmax: usize,
    pub truncated_parametric_center: bool,
    pub nmax: usize,
    pub double_moments: bool,
    pub p_definite: bool,
    pub q_definite: bool,
    pub p_in_z_of_q: bool,
    pub q_in_z_of_p: bool,
    /// False only if a center without composition fails the implication.
    pub implication_holds: bool,
}

pub fn parametric_structure_report(p: &Poly, q: &Poly, iv: &Interval, kmax: usize, nmax: usize) -> Result<StructureFlags> {
    if !iv.in_p(p) {
        return Err(Error::NotInP("P"));
    }
    if !iv.in_p(q) {
        return Err(Error::NotInP("Q"));
    }
    let cc = cc_check(p, q, iv)?;
    let table = parametric_table(&p.derivative(), &q.derivative(), iv, kmax, Param::EpsOnQ, Direction::Forward);
    let truncated_parametric_center = table.is_all_zero();
    let imax = 2 * p.degree().max(q.degree()).unwrap_or(0);
    let p_definite = is_definite(p, iv)?;
    let q_definite = is_definite(q, iv)?;
    let p_in_z_of_q = in_zero_space(p, q, iv, imax);
    let q_in_z_of_p = in_zero_space(q, p, iv, imax);
    let implication_holds = !truncated_parametric_center
        || cc.is_some()
        || (!p_definite && !q_definite && p_in_z_of_q && q_in_z_of_p);
    Ok(StructureFlags {
        cc,
        kmax,
        truncated_parametric_center,
        nmax,
        double_moments: double_moments_vanish(p, q, iv, nmax),
        p_definite,
        q_definite,
        p_in_z_of_q,
        q_in_z_of_p,
        implication_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::chebyshev;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    fn t6p() -> Poly {
        &chebyshev(6) + &Poly::one()
    }

    #[test]
    fn moment_examples() {
        let iv = Interval::symmetric_unit();
        let (p, q) = (Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[0, -1, 0, 1]));
        assert!(moment(&p, &q, &iv, 0).is_zero());
        assert_eq!(moment(&p, &q, &iv, 1), s("8/15"));
        let (p, q) = (Poly::from_ints(&[0, -1, 1]), Poly::from_ints(&[0, 2, -3, 1]));
        assert_eq!(moment(&q, &p, &Interval::unit(), 2), s("-1/140"));
        assert_eq!(moments_upto(&q, &p, &Interval::unit(), 2)[2], s("-1/140"));
    }

    #[test]
    fn double_moment_examples() {
        let iv = Interval::symmetric_unit();
        let (p, q) = (Poly::from_ints(&[1, 0, -2, 0, 1]), Poly::from_ints(&[0, 0, -1, 0, 1]));
        assert!(double_moments_vanish(&p, &q, &iv, 20));
        let (p, q) = (Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[0, -1, 0, 1]));
        assert!(!double_moments_vanish(&p, &q, &iv, 5));
        assert!(double_moments_vanish(&t6p(), &chebyshev(3), &Interval::chebyshev6(), 15));
    }

    #[test]
    fn zspace_examples() {
        assert_eq!(zspace(&t6p(), &Interval::chebyshev6(), 6, None).unwrap().len(), 4);
        let iv = Interval::symmetric_unit();
        let z = zspace(&Poly::from_ints(&[-1, 0, 1]), &iv, 4, None).unwrap();
        assert!(same_span(&z, &[Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[-1, 0, 0, 0, 1])], 4));
        let z = zspace(&Poly::from_ints(&[0, -1, 0, 1]), &iv, 2, None).unwrap();
        assert!(z.len() <= 1);
        assert!(matches!(zspace(&Poly::from_ints(&[0, 1]), &iv, 4, None), Err(Error::NotInP(_))));
    }

    #[test]
    fn composition_sums() {
        let c = composition_sum_space(&t6p(), &Interval::chebyshev6(), 6).unwrap();
        assert_eq!(c.len(), 4);
        let iv = Interval::symmetric_unit();
        let c = composition_sum_space(&Poly::from_ints(&[-1, 0, 1]), &iv, 4).unwrap();
        assert!(same_span(&c, &[Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[-1, 0, 0, 0, 1])], 4));
        // single factor x³ − x with d < 6: only its first power fits
        let c = composition_sum_space(&Poly::from_ints(&[0, -1, 0, 1]), &iv, 5).unwrap();
        assert!(same_span(&c, &[Poly::from_ints(&[0, -1, 0, 1])], 5));
    }

    #[test]
    fn yui_examples() {
        assert!(yui_check(&t6p(), &Interval::chebyshev6(), 8, None).unwrap());
        assert!(yui_check(&Poly::from_ints(&[-1, 0, 1]), &Interval::symmetric_unit(), 8, None).unwrap());
    }

    #[test]
    fn dimension_formula() {
        assert_eq!(z_dim_formula(6), 4);
        assert_eq!(z_dim_formula(10), 7);
        // ⌊1/2⌋ + ⌊1/3⌋ − ⌊1/6⌋
        assert_eq!(z_dim_formula(0), 0);
    }

    #[test]
    fn structure_reports() {
        let iv = Interval::symmetric_unit();
        let r = parametric_structure_report(
            &Poly::from_ints(&[1, 0, -2, 0, 1]),
            &Poly::from_ints(&[0, 0, -1, 0, 1]),
            &iv,
            10,
            20,
        )
        .unwrap();
        assert!(r.cc.is_some() && r.truncated_parametric_center && r.double_moments && r.implication_holds);

        let r = parametric_structure_report(&Poly::from_ints(&[-1, 0, 1]), &Poly::from_ints(&[0, -1, 0, 1]), &iv, 8, 20).unwrap();
        assert!(r.cc.is_none() && !r.truncated_parametric_center);

        // 1 + T₆ = 2T₃², so the pair composes through T₃
        let r = parametric_structure_report(&t6p(), &chebyshev(3), &Interval::chebyshev6(), 8, 15).unwrap();
        assert_eq!(r.cc.as_ref().and_then(|w| w.w.degree()), Some(3));
        assert!(r.double_moments && !r.p_definite && r.implication_holds);
    }
}

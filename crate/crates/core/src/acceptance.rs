//! Seeded end-to-end verification suites. Each criterion reports pass/fail
//! plus detail lines; the CLI `verify` command and the `acceptance` test
//! target both drive these.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;

use crate::center::{
    d8_terms, first_order_column_oracle, invert_series, melnikov_d, printed_combination, parametric_table,
    poincare_coeffs, Assignment, Direction, Param,
};
use crate::decomp::{cc_check, indecomposable_ab_factors};
use crate::exact::{kernel_basis, Matrix, Scalar};
use crate::moments::{
    composition_sum_space, double_moments_vanish, moment, moments_upto, parametric_structure_report,
    yui_check, z_dim_formula, z_dim_t6_counted, zspace, MomentMatrix, STABILIZATION_MARGIN,
};
use crate::poly::{chebyshev, exponent_admissible, in_subring, Interval, Poly, USet};
use crate::sample::{self, SampleRng};
use crate::trig::{moment_polynomial, modify_family, non_cc_certificate, trig_moment, TrigPoly};

/// Result of one criterion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
    pub seconds: f64,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<4} {} ({:.1}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.seconds
        )
    }
}

/// A named group of criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Center,
    Moments,
    Decomp,
    Trig,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "center" => Ok(Suite::Center),
            "moments" => Ok(Suite::Moments),
            "decomp" => Ok(Suite::Decomp),
            "trig" => Ok(Suite::Trig),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite {s:?} (center|moments|decomp|trig|all)")),
        }
    }
}

type Check = fn(u64) -> (bool, Vec<String>);

const CRITERIA: [(&str, &str, Suite, Check); 10] = [
    ("A1", "stratification support", Suite::Center, a1_support),
    ("A2", "moment-column laws", Suite::Center, a2_columns),
    ("A3", "printed series match", Suite::Center, a3_printed_series),
    ("A4", "Melnikov expressions", Suite::Center, a4_melnikov),
    ("A5", "T6 moments and zero spaces", Suite::Moments, a5_t6),
    ("A6", "factor enumeration", Suite::Decomp, a6_factors),
    ("A7", "composition checker", Suite::Decomp, a7_cc),
    ("A8", "trigonometric family", Suite::Trig, a8_trig_family),
    ("A9", "modified-family linearity", Suite::Trig, a9_modified),
    ("A10", "U(R)-definiteness instances", Suite::Moments, a10_u_sets),
];

/// Criterion ids belonging to a suite.
pub fn criteria_in(suite: Suite) -> Vec<&'static str> {
    CRITERIA
        .iter()
        .filter(|c| suite == Suite::All || c.2 == suite)
        .map(|c| c.0)
        .collect()
}

/// Runs one criterion by id (`"A1"` … `"A10"`).
pub fn run_criterion(id: &str, seed: u64) -> Option<Outcome> {
    let (idx, &(id, title, _, check)) = CRITERIA.iter().enumerate().find(|(_, c)| c.0 == id)?;
    let start = Instant::now();
    let (passed, details) = check(seed.wrapping_mul(1_000_003).wrapping_add(idx as u64));
    Some(Outcome { id, title, passed, details, seconds: start.elapsed().as_secs_f64() })
}

pub fn run_suite(suite: Suite, seed: u64) -> Vec<Outcome> {
    criteria_in(suite).into_iter().filter_map(|id| run_criterion(id, seed)).collect()
}

fn rng(seed: u64) -> SampleRng {
    sample::rng(seed)
}

/// Random pairs `(P, Q)` in the endpoint-zero space of a random interval.
fn random_p_pairs(rng: &mut SampleRng, n: usize, max_deg: usize) -> Vec<(Poly, Poly, Interval)> {
    (0..n)
        .map(|_| {
            let iv = sample::interval(rng);
            let dp = rand::Rng::gen_range(rng, 2..=max_deg);
            let dq = rand::Rng::gen_range(rng, 2..=max_deg);
            (sample::p_space_poly(rng, &iv, dp), sample::p_space_poly(rng, &iv, dq), iv)
        })
        .collect()
}

/// `binom(1/2, i)` as an exact rational.
fn binom_half(i: usize) -> Scalar {
    let mut acc = Scalar::one();
    for t in 0..i {
        acc = &(&acc * &Scalar::from_frac(1 - 2 * t as i64, 2)) / &Scalar::from_int(t as i64 + 1);
    }
    acc
}

fn count_failures(results: &[Option<String>], details: &mut Vec<String>) -> bool {
    let failures: Vec<&String> = results.iter().flatten().collect();
    for f in failures.iter().take(5) {
        details.push(format!("failure: {f}"));
    }
    failures.is_empty()
}

fn a1_support(seed: u64) -> (bool, Vec<String>) {
    const K: usize = 10;
    let pairs = random_p_pairs(&mut rng(seed), 200, 6);
    let results: Vec<Option<String>> = pairs
        .par_iter()
        .enumerate()
        .map(|(n, (pp, qq, iv))| {
            let (p, q) = (pp.derivative(), qq.derivative());
            let eps = parametric_table(&p, &q, iv, K, Param::EpsOnQ, Direction::Forward);
            for (&(k, j), _) in eps.nonzero() {
                if (k + j) % 2 != 1 || j < 1 || j + 3 > k {
                    return Some(format!("sample {n}: eps entry ({k},{j}) nonzero"));
                }
            }
            let delta = parametric_table(&p, &q, iv, K, Param::DeltaOnP, Direction::Forward);
            for (&(k, j), _) in delta.nonzero() {
                if j + 1 > k / 2 {
                    return Some(format!("sample {n}: delta entry ({k},{j}) beyond l(k)"));
                }
            }
            if eps.is_all_zero() {
                let ok = parametric_structure_report(pp, qq, iv, K, 20).map(|r| r.implication_holds);
                if !matches!(ok, Ok(true)) {
                    return Some(format!("sample {n}: structural implication violated"));
                }
            }
            None
        })
        .collect();
    let mut details = vec![format!("200 random pairs, deg <= 6, K = {K}, eps and delta tables")];
    let ok = count_failures(&results, &mut details);
    (ok, details)
}

fn a2_columns(seed: u64) -> (bool, Vec<String>) {
    const K: usize = 10;
    // same samples as A1
    let pairs = random_p_pairs(&mut rng(seed.wrapping_sub(1)), 200, 6);
    let results: Vec<Option<String>> = pairs
        .par_iter()
        .enumerate()
        .map(|(n, (pp, qq, iv))| {
            let (p, q) = (pp.derivative(), qq.derivative());
            let eps = parametric_table(&p, &q, iv, K, Param::EpsOnQ, Direction::Forward);
            let delta = parametric_table(&p, &q, iv, K, Param::DeltaOnP, Direction::Forward);
            for i in 0..=3 {
                let sign = Scalar::from_int(-2).pow(i as u32);
                let predicted = &(&sign * &binom_half(i)) * &moment(pp, qq, iv, i);
                let oracle = first_order_column_oracle(pp, qq, iv, i, Param::EpsOnQ);
                let entry = eps.get(2 * i + 2, 1);
                if entry != predicted || entry != oracle {
                    return Some(format!("sample {n}: eps ({},1) = {entry}, law {predicted}, oracle {oracle}", 2 * i + 2));
                }
            }
            for k in 4..=K {
                let m = moment(qq, pp, iv, k - 3);
                if eps.get(k, k - 3) != m {
                    return Some(format!("sample {n}: eps ({k},{}) != m_{}(Q,P)", k - 3, k - 3));
                }
            }
            for i in 0..=K - 3 {
                let m = moment(qq, pp, iv, i);
                let oracle = first_order_column_oracle(pp, qq, iv, i, Param::DeltaOnP);
                if delta.get(i + 3, 1) != m || m != oracle {
                    return Some(format!("sample {n}: delta ({},1) != m_{i}(Q,P)", i + 3));
                }
            }
            None
        })
        .collect();
    let mut details = vec![format!(
        "200 pairs: eps (2i+2,1) for i <= 3, eps (k,k-3) for 4 <= k <= {K}, delta (i+3,1) for i <= {}, against moments and the variational oracle",
        K - 3
    )];
    let ok = count_failures(&results, &mut details);
    (ok, details)
}

fn a3_printed_series(seed: u64) -> (bool, Vec<String>) {
    let mut r = rng(seed);
    let samples: Vec<(Poly, Poly, Interval)> = (0..50)
        .map(|_| {
            let iv = sample::interval(&mut r);
            let dp = rand::Rng::gen_range(&mut r, 0..=4);
            let dq = rand::Rng::gen_range(&mut r, 0..=4);
            (sample::poly(&mut r, dp), sample::poly(&mut r, dq), iv)
        })
        .collect();
    // matches[direction][assignment]
    let tallies: Vec<[[bool; 2]; 2]> = samples
        .par_iter()
        .map(|(p, q, iv)| {
            let fwd = poincare_coeffs(p, q, iv, 6);
            let bwd = invert_series(&fwd);
            let mut m = [[true; 2]; 2];
            for k in 2..=6 {
                for (ai, asg) in [Assignment::H1IsP, Assignment::H1IsQ].into_iter().enumerate() {
                    let printed = printed_combination(k, p, q, iv, asg).unwrap();
                    m[0][ai] &= fwd[k - 2] == printed;
                    m[1][ai] &= bwd[k - 2] == printed;
                }
            }
            m
        })
        .collect();
    let count = |d: usize, a: usize| tallies.iter().filter(|m| m[d][a]).count();
    let mut details = vec!["50 random (p,q), deg <= 4, k = 2..6".to_string()];
    for (d, dn) in ["forward", "backward"].iter().enumerate() {
        for (a, an) in ["h1=p", "h1=q"].iter().enumerate() {
            details.push(format!("{dn} x {an}: {}/50 samples match for every k", count(d, a)));
        }
    }
    let anchor = invert_series(&poincare_coeffs(&Poly::one(), &Poly::one(), &Interval::unit(), 6));
    let anchor_ok = anchor[2..] == [Scalar::from_frac(3, 2), Scalar::from_frac(-11, 6), Scalar::from_frac(-5, 12)];
    details.push(format!("anchor p=q=1 on [0,1]: w4..w6 = {:?}", &anchor[2..]));
    (count(1, 1) == 50 && anchor_ok, details)
}

/// `Q = S₁∘T₂ + S₂∘T₃` with odd `S₂`, pinned to vanish at `±√3/2`.
fn t6_family_q(r: &mut SampleRng, d: usize) -> Poly {
    let iv = Interval::chebyshev6();
    loop {
        let d1 = rand::Rng::gen_range(r, 1..=d / 2);
        let s1 = sample::poly(r, d1);
        let odd_max = d / 3;
        let s2 = Poly::new(
            (0..=odd_max)
                .map(|i| if i % 2 == 1 { sample::scalar(r) } else { Scalar::zero() })
                .collect(),
        );
        let q = &s1.compose(&chebyshev(2)) + &s2.compose(&chebyshev(3));
        let q = sample::pin_to_zero(&q, &iv);
        if !q.is_constant() {
            return q;
        }
    }
}

fn t6_plus_one() -> Poly {
    &chebyshev(6) + &Poly::one()
}

/// `x²(x⁴ − 1)²`.
fn p10() -> Poly {
    Poly::from_ints(&[0, 0, 1, 0, 0, 0, -2, 0, 0, 0, 1])
}

/// Constructed composition pairs `(P̃∘W, Q̃∘W)` pinned into the endpoint-zero space.
fn cc_pairs(r: &mut SampleRng, n: usize) -> Vec<(Poly, Poly, Interval, Poly)> {
    (0..n)
        .map(|_| {
            let iv = sample::interval(r);
            let dw = rand::Rng::gen_range(r, 2..=3);
            let w = sample::closed_poly(r, &iv, dw);
            let dp = rand::Rng::gen_range(r, 1..=3);
            let dq = rand::Rng::gen_range(r, 1..=3);
            let p = sample::pin_to_zero(&sample::poly(r, dp).compose(&w), &iv);
            let q = sample::pin_to_zero(&sample::poly(r, dq).compose(&w), &iv);
            (p, q, iv, w)
        })
        .collect()
}

fn a4_melnikov(seed: u64) -> (bool, Vec<String>) {
    let mut r = rng(seed);
    let mut details = Vec::new();

    let pairs = random_p_pairs(&mut r, 100, 6);
    let first: Vec<Option<String>> = pairs
        .par_iter()
        .enumerate()
        .map(|(n, (pp, qq, iv))| {
            let t = parametric_table(&pp.derivative(), &qq.derivative(), iv, 5, Param::EpsOnQ, Direction::Forward);
            let d6 = melnikov_d(6, pp, qq, iv).unwrap();
            (t.get(5, 2) != &Scalar::from_int(2) * &d6).then(|| format!("sample {n}: entry(5,2) != 2 D6"))
        })
        .collect();
    details.push("(i) entry(5,2) = 2 D6 on 100 random pairs".into());
    let ok_i = count_failures(&first, &mut details);

    let ccs = cc_pairs(&mut r, 20);
    let second: Vec<Option<String>> = ccs
        .par_iter()
        .enumerate()
        .map(|(n, (pp, qq, iv, _))| {
            (6..=8)
                .find(|&k| !melnikov_d(k, pp, qq, iv).unwrap().is_zero())
                .map(|k| format!("CC pair {n}: D{k} != 0"))
        })
        .collect();
    details.push("(ii) D6 = D7 = D8 = 0 on 20 constructed CC pairs".into());
    let ok_ii = count_failures(&second, &mut details);

    // (iii) normalization fit on moment-vanishing T6-family samples; findings only
    let p = t6_plus_one();
    let iv = Interval::chebyshev6();
    let qs: Vec<Poly> = (0..20).map(|_| t6_family_q(&mut r, 9)).collect();
    let rows: Vec<(Scalar, Scalar, Scalar, Scalar, [Scalar; 3])> = qs
        .par_iter()
        .map(|q| {
            let t = parametric_table(&p.derivative(), &q.derivative(), &iv, 9, Param::EpsOnQ, Direction::Forward);
            let d7 = melnikov_d(7, &p, q, &iv).unwrap();
            (t.get(7, 2), d7, t.get(9, 2), melnikov_d(8, &p, q, &iv).unwrap(), d8_terms(&p, q, &iv))
        })
        .collect();
    for (label, pick) in [("c7: entry(7,2) vs D7", 0usize), ("c9: entry(9,2) vs D8", 1)] {
        let pts: Vec<(Scalar, Scalar)> = rows
            .iter()
            .map(|r| if pick == 0 { (r.0.clone(), r.1.clone()) } else { (r.2.clone(), r.3.clone()) })
            .collect();
        details.push(fit_report(label, &pts));
    }
    details.push(three_term_fit(&rows.iter().map(|r| (r.2.clone(), r.4.clone())).collect::<Vec<_>>()));
    (ok_i && ok_ii, details)
}

/// Solves `entry(9,2) = x·∫P³Qq + y·∫P²q(∫Pq) + z·∫Pq(∫P²q)` over all samples.
fn three_term_fit(pts: &[(Scalar, [Scalar; 3])]) -> String {
    let a = Matrix::from_rows(pts.iter().map(|(_, t)| t.to_vec()).collect());
    let ab = Matrix::from_rows(
        pts.iter()
            .map(|(e, t)| t.iter().cloned().chain(std::iter::once(e.clone())).collect())
            .collect(),
    );
    let (rank, rank_ab) = (a.rank(), ab.rank());
    if rank != rank_ab {
        return format!("(iii) entry(9,2) is not a combination of the three D8 integrals (rank {rank} vs {rank_ab})");
    }
    let (r, pivots) = ab.rref();
    let mut coef = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
    for (row, &c) in pivots.iter().enumerate() {
        if c < 3 {
            coef[c] = r[(row, 3)].clone();
        }
    }
    let note = if rank < 3 { "; one solution of a rank-deficient system, the nested terms cancel in sum here" } else { "" };
    format!(
        "(iii) entry(9,2) = ({})*int P^3Qq + ({})*int P^2q(int Pq) + ({})*int Pq(int P^2q) on all samples (rank {rank}{note})",
        coef[0], coef[1], coef[2]
    )
}

/// Fits `entry = c·D` from the first sample with `D ≠ 0` and reports residuals.
fn fit_report(label: &str, pts: &[(Scalar, Scalar)]) -> String {
    let nonzero_d = pts.iter().filter(|(_, d)| !d.is_zero()).count();
    let nonzero_e = pts.iter().filter(|(e, _)| !e.is_zero()).count();
    let Some((e0, d0)) = pts.iter().find(|(_, d)| !d.is_zero()) else {
        return format!(
            "(iii) {label}: D vanishes on all {} samples, entry nonzero on {nonzero_e}; constant undetermined",
            pts.len()
        );
    };
    let c = e0 / d0;
    let residual = pts.iter().filter(|(e, d)| *e != &c * d).count();
    format!(
        "(iii) {label}: fitted c = {c} (~{:.6}); {residual}/{} samples with nonzero residual; D nonzero on {nonzero_d}, entry nonzero on {nonzero_e}",
        c.to_f64(),
        pts.len()
    )
}

fn a5_t6(seed: u64) -> (bool, Vec<String>) {
    let mut r = rng(seed);
    let p = t6_plus_one();
    let iv = Interval::chebyshev6();
    let mut details = Vec::new();

    let qs: Vec<Poly> = (0..30).map(|_| t6_family_q(&mut r, 12)).collect();
    let part_a: Vec<Option<String>> = qs
        .par_iter()
        .enumerate()
        .map(|(n, q)| {
            if !moments_upto(&p, q, &iv, 15).iter().all(Scalar::is_zero) {
                return Some(format!("sample {n}: nonzero m_i(P,Q), i <= 15"));
            }
            match parametric_structure_report(&p, q, &iv, 8, 15) {
                Ok(rep) if rep.implication_holds => None,
                _ => Some(format!("sample {n}: structural implication violated")),
            }
        })
        .collect();
    details.push("(a) 30 random Q = S1(T2) + S2(T3): m_i(1+T6, Q) = 0 for i <= 15".into());
    let ok_a = count_failures(&part_a, &mut details);

    let dims: Vec<(usize, Result<usize, String>)> = (6..=12usize)
        .into_par_iter()
        .map(|d| (d, zspace(&p, &iv, d, None).map(|b| b.len()).map_err(|e| e.to_string())))
        .collect();
    let mut ok_b = true;
    for (d, dim) in &dims {
        let formula = z_dim_formula(*d);
        let counted = z_dim_t6_counted(*d);
        match dim {
            Ok(dim) if *dim == formula => details.push(format!("(b) d={d}: dim Z = {dim} = formula")),
            Ok(dim) if *dim == counted && dim.abs_diff(formula) == 1 => details.push(format!(
                "(b) d={d}: dim Z = {dim}, formula gives {formula}; off by one, matches floor(d/2)+floor(d/3)-floor(d/6)"
            )),
            Ok(dim) => {
                ok_b = false;
                details.push(format!("(b) d={d}: dim Z = {dim}, formula {formula}, counted {counted}"));
            }
            Err(e) => {
                ok_b = false;
                details.push(format!("(b) d={d}: {e}"));
            }
        }
    }

    let cases: Vec<(&str, Poly, Interval, usize)> = (2..=12)
        .flat_map(|d| {
            [
                ("1+T6", t6_plus_one(), Interval::chebyshev6(), d),
                ("x^2(x^4-1)^2", p10(), Interval::symmetric_unit(), d),
            ]
        })
        .collect();
    let part_c: Vec<Option<String>> = cases
        .par_iter()
        .map(|(name, p, iv, d)| match yui_check(p, iv, *d, None) {
            Ok(true) => None,
            Ok(false) => Some(format!("{name}, d={d}: zero space differs from composition sums")),
            Err(e) => Some(format!("{name}, d={d}: {e}")),
        })
        .collect();
    details.push("(c) zero space = composition sums for d = 2..12, P = 1+T6 and x^2(x^4-1)^2".into());
    let ok_c = count_failures(&part_c, &mut details);
    (ok_a && ok_b && ok_c, details)
}

fn a6_factors(seed: u64) -> (bool, Vec<String>) {
    let mut r = rng(seed);
    let mut details = Vec::new();
    let t6 = indecomposable_ab_factors(&t6_plus_one(), &Interval::chebyshev6()).unwrap();
    let ok_t6 = t6.s == 2 && t6.degrees() == [2, 3];
    details.push(format!("1+T6: s = {}, degrees {:?}", t6.s, t6.degrees()));
    let f10 = indecomposable_ab_factors(&p10(), &Interval::symmetric_unit()).unwrap();
    let ok_10 = f10.s == 2 && f10.factors == [Poly::from_ints(&[0, 0, 1]), Poly::from_ints(&[0, -1, 0, 0, 0, 1])];
    details.push(format!("x^2(x^4-1)^2: s = {}, factors {:?}", f10.s, f10.factors));

    let samples: Vec<(Poly, Interval)> = (0..100)
        .map(|_| {
            let iv = sample::interval(&mut r);
            let d = rand::Rng::gen_range(&mut r, 2..=5);
            (sample::dense_p_space_poly(&mut r, &iv, d), iv)
        })
        .collect();
    let s_values: Vec<usize> = samples
        .par_iter()
        .map(|(p, iv)| indecomposable_ab_factors(p, iv).unwrap().s)
        .collect();
    let mut hist = BTreeMap::new();
    for s in &s_values {
        *hist.entry(*s).or_insert(0) += 1;
    }
    details.push(format!("100 random dense P of degree <= 5: s histogram {hist:?}"));
    let ok_random = s_values.iter().all(|&s| s == 1);
    let bound = t6.s <= 3 && f10.s <= 3 && s_values.iter().all(|&s| s <= 3);
    (ok_t6 && ok_10 && ok_random && bound, details)
}

fn a7_cc(seed: u64) -> (bool, Vec<String>) {
    let mut r = rng(seed);
    let pairs = cc_pairs(&mut r, 30);
    let results: Vec<Option<String>> = pairs
        .par_iter()
        .enumerate()
        .map(|(n, (p, q, iv, w))| {
            let Some(wit) = cc_check(p, q, iv).unwrap() else {
                return Some(format!("pair {n}: composition through {w} not detected"));
            };
            if wit.p_tilde.compose(&wit.w) != *p || wit.q_tilde.compose(&wit.w) != *q || !iv.is_closed(&wit.w) {
                return Some(format!("pair {n}: witness does not recompose"));
            }
            if cc_check(q, p, iv).unwrap().is_none() {
                return Some(format!("pair {n}: asymmetric detection"));
            }
            // x⁷ corrected by a linear term so the perturbed Q stays closed
            let x7 = Poly::monomial(Scalar::one(), 7);
            let slope = &(&x7.eval(&iv.b) - &x7.eval(&iv.a)) / &(&iv.b - &iv.a);
            let bumped = sample::pin_to_zero(&(q + &(&x7 - &Poly::linear(slope, Scalar::zero()))), iv);
            if cc_check(p, &bumped, iv).unwrap().is_some() || cc_check(&bumped, p, iv).unwrap().is_some() {
                return Some(format!("pair {n}: perturbed pair accepted"));
            }
            for f in [p, q, &bumped] {
                if indecomposable_ab_factors(f, iv).unwrap().s > 3 {
                    return Some(format!("pair {n}: more than three indecomposable factors"));
                }
            }
            match parametric_structure_report(p, q, iv, 8, 10) {
                Ok(rep) if rep.implication_holds && rep.cc.is_some() => None,
                _ => Some(format!("pair {n}: inconsistent structure report")),
            }
        })
        .collect();
    let mut details = vec!["30 constructed pairs with random W (deg 2-3), perturbation Q + x^7 - (slope)x".to_string()];
    let ok = count_failures(&results, &mut details);
    (ok, details)
}

fn trig_terms() -> [TrigPoly; 3] {
    [
        TrigPoly::sin(2, Scalar::one()),
        TrigPoly::cos(2, Scalar::one()),
        TrigPoly::cos(6, Scalar::one()),
    ]
}

fn both_families_vanish(p: &TrigPoly, q: &TrigPoly, imax: u32) -> bool {
    (0..=imax).all(|i| trig_moment(p, q, i, 1).is_zero() && trig_moment(q, p, i, 1).is_zero())
}

fn a8_trig_family(seed: u64) -> (bool, Vec<String>) {
    let mut r = rng(seed);
    let mut details = Vec::new();
    let p3 = TrigPoly::cos(3, Scalar::one());

    // families (d1, d2) = (3, 2): P on frequencies 3k with k odd, Q on 2l with 3 ∤ l
    let mut ok_family = true;
    for _ in 0..5 {
        let p = sample::trig_with_frequencies(&mut r, &[3, 9]);
        let q = sample::trig_with_frequencies(&mut r, &[2, 4, 8]);
        let (p, q) = crate::trig::build_family(3, 2, p, q).expect("admissible by construction");
        ok_family &= both_families_vanish(&p, &q, 12);
    }
    details.push(format!("5 random (3,2)-family pairs: both moment families vanish for i <= 12: {ok_family}"));

    let mut ok_mod = true;
    for _ in 0..5 {
        let [s2, c2, c6] = trig_terms();
        let q = s2
            .scale(&sample::scalar(&mut r))
            .add(&c2.scale(&sample::scalar(&mut r)))
            .add(&c6.scale(&sample::scalar(&mut r)));
        ok_mod &= both_families_vanish(&p3, &q, 12);
    }
    details.push(format!("5 random Q = a sin2t + b cos2t + c cos6t with P = cos3t: vanish for i <= 12: {ok_mod}"));

    let cert = non_cc_certificate(&p3, &TrigPoly::sin(2, Scalar::one()), 6, 6);
    let ok_cert = matches!(&cert, Some((3, 2, v)) if v.pi_coeff == Scalar::from_frac(3, 4));
    details.push(format!("certificate for (1,0,0): {:?}", cert.map(|(i, j, v)| (i, j, v.to_string()))));

    let root3 = Scalar::sqrt_of(3).unwrap();
    let q = TrigPoly::sin(2, root3).add(&TrigPoly::cos(2, Scalar::one()));
    let at_locus = trig_moment(&p3, &q, 3, 2);
    details.push(format!("(3,2) integral at (a,b) = (r3, 1): {at_locus}"));

    let poly = moment_polynomial(&p3, &trig_terms(), 3, 2);
    let rendered: Vec<String> = poly
        .iter()
        .map(|(e, v)| format!("({})*pi*a^{}*b^{}*c^{}", v.pi_coeff, e[0], e[1], e[2]))
        .collect();
    details.push(format!("(3,2) integral as a polynomial in (a,b,c): {}", rendered.join(" + ")));
    (ok_family && ok_mod && ok_cert && at_locus.is_zero(), details)
}

fn a9_modified(seed: u64) -> (bool, Vec<String>) {
    let mut r = rng(seed);
    let p3 = TrigPoly::cos(3, Scalar::one());
    let cases: Vec<(TrigPoly, Poly)> = (0..20)
        .map(|_| {
            let q = sample::trig_with_frequencies(&mut r, &[2, 4, 8]);
            let d = rand::Rng::gen_range(&mut r, 0..=3);
            (q, sample::poly(&mut r, d))
        })
        .collect();
    let results: Vec<Option<String>> = cases
        .par_iter()
        .enumerate()
        .map(|(n, (q, rr))| {
            let qt = modify_family(q, 2, rr);
            (!both_families_vanish(&p3, &qt, 10)).then(|| format!("case {n}: nonzero moment"))
        })
        .collect();
    let mut details = vec!["20 random R (deg <= 3), Q on frequencies {2,4,8}, P = cos3t, i <= 10".to_string()];
    let ok = count_failures(&results, &mut details);
    (ok, details)
}

/// Random element of `U({2})` of degree `≤ 12` vanishing at `±1`.
fn random_u_poly(r: &mut SampleRng, even: bool) -> Poly {
    let iv = Interval::symmetric_unit();
    loop {
        let exps: Vec<usize> = if even { vec![2, 4, 8] } else { vec![1, 2, 3, 4, 5, 7, 8, 9, 11] };
        let mut coeffs = vec![Scalar::zero(); 13];
        for &e in &exps {
            if rand::Rng::gen_bool(r, 0.7) {
                coeffs[e] = sample::scalar(r);
            }
        }
        if !even {
            // fix the odd part at x = 1 through the x coefficient
            let odd: Scalar = (3..13).step_by(2).map(|e| coeffs[e].clone()).sum();
            coeffs[1] = -odd;
        }
        let even_sum: Scalar = (2..13).step_by(2).map(|e| coeffs[e].clone()).sum();
        coeffs[0] = -even_sum;
        let p = Poly::new(coeffs);
        if p.degree().is_some_and(|d| d >= 2) && iv.in_p(&p) {
            return p;
        }
    }
}

fn a10_u_sets(seed: u64) -> (bool, Vec<String>) {
    let mut r = rng(seed);
    let iv = Interval::symmetric_unit();
    let primes = [2u64];
    let ps: Vec<Poly> = (0..10).map(|n| random_u_poly(&mut r, n % 2 == 1)).collect();
    let mixes: Vec<Vec<Scalar>> = (0..10).map(|_| (0..5).map(|_| sample::scalar(&mut r)).collect()).collect();

    // U₁({2})-supported polynomials of degree ≤ 12 vanishing at ±1
    let support: Vec<usize> = (0..=12).filter(|&i| exponent_admissible(i as u64, &primes, USet::U1)).collect();
    let monos: Vec<Poly> = support.iter().map(|&i| Poly::monomial(Scalar::one(), i)).collect();
    let constraint = Matrix::from_rows(vec![
        monos.iter().map(|m| m.eval(&iv.a)).collect(),
        monos.iter().map(|m| m.eval(&iv.b)).collect(),
    ]);
    let u1_basis: Vec<Poly> = kernel_basis(&constraint)
        .iter()
        .map(|v| monos.iter().zip(v).fold(Poly::zero(), |acc, (m, c)| &acc + &m.scale(c)))
        .collect();

    let results: Vec<(Option<String>, usize)> = ps
        .par_iter()
        .zip(mixes.par_iter())
        .enumerate()
        .map(|(n, (p, mix))| {
            if !crate::poly::u_membership(p, &primes, USet::U) {
                return (Some(format!("sample {n}: P not in U")), 0);
            }
            let imax = 24;
            let mm = MomentMatrix::build_on(p, &iv, 12, imax + STABILIZATION_MARGIN, u1_basis.clone());
            let kernel = mm.kernel();
            let head = Matrix::from_rows((0..=imax).map(|i| mm.m.row(i).to_vec()).collect());
            if u1_basis.len() - head.rank() != kernel.len() {
                return (Some(format!("sample {n}: kernel not stabilized")), kernel.len());
            }
            let combo = kernel.iter().zip(mix).fold(Poly::zero(), |acc, (k, c)| &acc + &k.scale(c));
            let mut members = kernel.clone();
            if !combo.is_zero() {
                members.push(combo);
            }
            for q in &members {
                match cc_check(p, q, &iv) {
                    Ok(Some(w)) if in_subring(q, &w.w).ok().flatten().is_some() => {}
                    _ => return (Some(format!("sample {n}: kernel element {q} without composition")), kernel.len()),
                }
                if !double_moments_vanish(p, q, &iv, 12) {
                    return (Some(format!("sample {n}: kernel element fails m_j(Q,P) = 0")), kernel.len());
                }
            }
            (None, kernel.len())
        })
        .collect();
    let dims: Vec<usize> = results.iter().map(|r| r.1).collect();
    let mut details = vec![format!(
        "10 random P in U({{2}}) of degree <= 12 on [-1,1] (odd samples even in x); U1 space dim {}; kernel dims {dims:?}",
        u1_basis.len()
    )];
    let failures: Vec<Option<String>> = results.into_iter().map(|r| r.0).collect();
    let ok = count_failures(&failures, &mut details);
    (ok, details)
}

/// Composition-sum space dimension of `1 + T₆` in degree `d`, for reports.
pub fn t6_composition_dim(d: usize) -> usize {
    composition_sum_space(&t6_plus_one(), &Interval::chebyshev6(), d).map_or(0, |b| b.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_of_one_half() {
        assert_eq!(binom_half(0), Scalar::one());
        assert_eq!(binom_half(1), Scalar::from_frac(1, 2));
        assert_eq!(binom_half(2), Scalar::from_frac(-1, 8));
        assert_eq!(binom_half(3), Scalar::from_frac(1, 16));
    }

    #[test]
    fn suite_membership() {
        assert_eq!(criteria_in(Suite::Trig), vec!["A8", "A9"]);
        assert_eq!(criteria_in(Suite::All).len(), 10);
        assert!(run_criterion("A11", 0).is_none());
    }
}

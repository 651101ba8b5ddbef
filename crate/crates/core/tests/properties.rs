use abel_lab::center::{invert_series, parametric_table, poincare_coeffs, Direction, Param};
use abel_lab::decomp::{cc_check, indecomposable_ab_factors};
use abel_lab::moments::moment;
use abel_lab::poly::{chebyshev, in_subring};
use abel_lab::sample;
use abel_lab::trig::{trig_diff, trig_integral, trig_mul, TrigPoly};
use abel_lab::{kernel_basis, Interval, Matrix, Poly, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// Elements of Q(√2).
fn quad() -> impl Strategy<Value = Scalar> {
    (rat(), rat()).prop_map(|(r, i)| Scalar::with_root(r, i, 2).unwrap())
}

fn small() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::from_frac(n, d))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small(), 0..=max_deg + 1).prop_map(Poly::new)
}

fn interval() -> impl Strategy<Value = Interval> {
    (small(), small())
        .prop_filter("distinct endpoints", |(a, b)| a < b)
        .prop_map(|(a, b)| Interval::new(a, b).unwrap())
}

fn p_pair(max_deg: usize) -> impl Strategy<Value = (Poly, Poly, Interval)> {
    (any::<u64>(), 2..=max_deg, 2..=max_deg).prop_map(|(seed, dp, dq)| {
        let mut r = sample::rng(seed);
        let iv = sample::interval(&mut r);
        (sample::p_space_poly(&mut r, &iv, dp), sample::p_space_poly(&mut r, &iv, dq), iv)
    })
}

fn trig() -> impl Strategy<Value = TrigPoly> {
    (small(), prop::collection::vec((1u32..=6, small(), small()), 0..4)).prop_map(|(a0, terms)| {
        terms.into_iter().fold(TrigPoly::constant(a0), |acc, (k, c, s)| {
            acc.add(&TrigPoly::cos(k, c)).add(&TrigPoly::sin(k, s))
        })
    })
}

/// Membership of `q` in `span{1, W, …, W^m}` by exact linear solve.
fn subring_oracle(q: &Poly, w: &Poly) -> bool {
    let (Some(dq), Some(dw)) = (q.degree(), w.degree()) else { return true };
    if dq % dw != 0 {
        return false;
    }
    let n = dq + 1;
    let column = |f: &Poly| (0..n).map(|i| f.coeff(i)).collect::<Vec<_>>();
    let mut cols: Vec<Vec<Scalar>> = (0..=dq / dw).map(|k| column(&w.pow(k as u32))).collect();
    let transpose = |cols: &[Vec<Scalar>]| Matrix::from_rows((0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect());
    let base = transpose(&cols).rank();
    cols.push(column(q));
    transpose(&cols).rank() == base
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in quad(), b in quad(), c in quad()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.checked_inv().unwrap()).is_one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
        prop_assert_eq!(a.norm(), (&a * &a.conjugate()).rational_part().clone());
    }

    #[test]
    fn scalar_text_round_trip(a in quad()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn kernel_dimension_and_rank(rows in prop::collection::vec(prop::collection::vec(small(), 4), 1..5)) {
        let m = Matrix::from_rows(rows);
        let k = kernel_basis(&m);
        prop_assert_eq!(k.len() + m.rank(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn primitive_inverts_derivative(f in poly(6), a in small()) {
        let pf = f.primitive(&a);
        prop_assert_eq!(pf.derivative(), f);
        prop_assert!(pf.eval(&a).is_zero());
    }

    #[test]
    fn integral_is_additive(f in poly(6), a in small(), b in small(), c in small()) {
        let int = |x: &Scalar, y: &Scalar| {
            let big = f.primitive(x);
            big.eval(y)
        };
        prop_assert_eq!(&int(&a, &b) + &int(&b, &c), int(&a, &c));
    }

    #[test]
    fn composition_is_associative(f in poly(3), g in poly(3), h in poly(2)) {
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
    }

    #[test]
    fn chebyshev_semigroup(m in 1usize..6, n in 1usize..6) {
        prop_assert_eq!(chebyshev(m).compose(&chebyshev(n)), chebyshev(m * n));
    }

    #[test]
    fn subring_membership_matches_linear_solve(r in poly(3), w in poly(3), noise in poly(5)) {
        prop_assume!(!w.is_constant());
        let q = r.compose(&w);
        let found = in_subring(&q, &w).unwrap();
        prop_assert_eq!(found.as_ref().map(|t| t.compose(&w)), Some(q.clone()));
        let q2 = &q + &noise;
        let got = in_subring(&q2, &w).unwrap();
        prop_assert_eq!(got.is_some(), subring_oracle(&q2, &w));
        if let Some(t) = got {
            prop_assert_eq!(t.compose(&w), q2);
        }
    }

    #[test]
    fn moments_are_affine_invariant((p, q, iv) in p_pair(5), s in small(), t in small(), i in 0usize..4) {
        prop_assume!(!s.is_zero());
        let tau = Poly::linear(s.clone(), t.clone());
        let pulled = iv.pull_back(&s, &t);
        prop_assert_eq!(moment(&p.compose(&tau), &q.compose(&tau), &pulled, i), moment(&p, &q, &iv, i));
    }

    #[test]
    fn moments_are_linear_in_q((p, q1, iv) in p_pair(5), q2 in poly(5), c in small(), i in 0usize..4) {
        let lhs = moment(&p, &(&q1 + &q2.scale(&c)), &iv, i);
        prop_assert_eq!(lhs, &moment(&p, &q1, &iv, i) + &(&c * &moment(&p, &q2, &iv, i)));
    }

    #[test]
    fn first_moment_is_antisymmetric((p, q, iv) in p_pair(5)) {
        prop_assert_eq!(moment(&p, &q, &iv, 1), -&moment(&q, &p, &iv, 1));
    }

    #[test]
    fn eps_and_delta_tables_agree((pp, qq, iv) in p_pair(4)) {
        let (p, q) = (pp.derivative(), qq.derivative());
        let eps = parametric_table(&p, &q, &iv, 8, Param::EpsOnQ, Direction::Forward);
        let delta = parametric_table(&p, &q, &iv, 8, Param::DeltaOnP, Direction::Forward);
        for k in 2..=8usize {
            for j in 0..k {
                if (k + j) % 2 == 1 {
                    prop_assert_eq!(eps.get(k, j), delta.get(k, (k - 1 - j) / 2));
                }
            }
        }
    }

    #[test]
    fn series_reversion_is_an_involution(p in poly(2), q in poly(2), iv in interval()) {
        let v = poincare_coeffs(&p, &q, &iv, 6);
        prop_assert_eq!(invert_series(&invert_series(&v)), v);
    }

    #[test]
    fn factor_count_is_bounded((p, _, iv) in p_pair(6)) {
        let f = indecomposable_ab_factors(&p, &iv).unwrap();
        prop_assert!(f.s >= 1 && f.s <= 3);
        for w in &f.factors {
            prop_assert!(iv.is_closed(w));
            prop_assert!(in_subring(&p, w).unwrap().is_some());
        }
    }

    #[test]
    fn cc_witness_recomposes(seed in any::<u64>()) {
        let mut r = sample::rng(seed);
        let iv = sample::interval(&mut r);
        let w = sample::closed_poly(&mut r, &iv, 2);
        let p = sample::pin_to_zero(&sample::poly(&mut r, 2).compose(&w), &iv);
        let q = sample::pin_to_zero(&sample::poly(&mut r, 1).compose(&w), &iv);
        let wit = cc_check(&p, &q, &iv).unwrap().expect("composite pair");
        prop_assert_eq!(wit.p_tilde.compose(&wit.w), p);
        prop_assert_eq!(wit.q_tilde.compose(&wit.w), q);
    }

    #[test]
    fn trig_stokes_and_parts(f in trig(), g in trig()) {
        prop_assert!(trig_integral(&trig_diff(&f)).is_zero());
        let lhs = trig_integral(&trig_mul(&f, &trig_diff(&g))).pi_coeff;
        let rhs = trig_integral(&trig_mul(&trig_diff(&f), &g)).pi_coeff;
        prop_assert_eq!(lhs, -&rhs);
        prop_assert_eq!(trig_mul(&f, &g), trig_mul(&g, &f));
    }
}

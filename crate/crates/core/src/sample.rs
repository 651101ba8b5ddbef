//! Seeded random instances for the property and acceptance suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::Scalar;
use crate::poly::{Interval, Poly};
use crate::trig::TrigPoly;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational `n/d` with `|n| ≤ 5`, `1 ≤ d ≤ 3`.
pub fn scalar<R: Rng>(rng: &mut R) -> Scalar {
    Scalar::from_frac(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let s = scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Polynomial of degree exactly `deg` (nonzero leading coefficient).
pub fn poly<R: Rng>(rng: &mut R, deg: usize) -> Poly {
    let mut coeffs: Vec<Scalar> = (0..deg).map(|_| scalar(rng)).collect();
    coeffs.push(nonzero_scalar(rng));
    Poly::new(coeffs)
}

/// Polynomial of degree `deg` with every coefficient nonzero.
pub fn dense_poly<R: Rng>(rng: &mut R, deg: usize) -> Poly {
    Poly::new((0..=deg).map(|_| nonzero_scalar(rng)).collect())
}

/// Interval with distinct small rational endpoints, `a < b`.
pub fn interval<R: Rng>(rng: &mut R) -> Interval {
    loop {
        let (a, b) = (scalar(rng), scalar(rng));
        if a < b {
            return Interval::new(a, b).unwrap();
        }
    }
}

/// `(x − a)(x − b)·R(x)`, a random element of the endpoint-zero space of degree `deg ≥ 2`.
pub fn p_space_poly<R: Rng>(rng: &mut R, iv: &Interval, deg: usize) -> Poly {
    let base = &Poly::linear(Scalar::one(), -&iv.a) * &Poly::linear(Scalar::one(), -&iv.b);
    &base * &poly(rng, deg - 2)
}

/// Same as [`p_space_poly`] with a cofactor whose coefficients are all nonzero.
pub fn dense_p_space_poly<R: Rng>(rng: &mut R, iv: &Interval, deg: usize) -> Poly {
    let base = &Poly::linear(Scalar::one(), -&iv.a) * &Poly::linear(Scalar::one(), -&iv.b);
    &base * &dense_poly(rng, deg - 2)
}

/// Random `W` of degree `deg ≥ 2` with `W(a) = W(b)`.
pub fn closed_poly<R: Rng>(rng: &mut R, iv: &Interval, deg: usize) -> Poly {
    loop {
        let u = poly(rng, deg);
        let slope = &(&u.eval(&iv.b) - &u.eval(&iv.a)) / &(&iv.b - &iv.a);
        let w = &u - &Poly::linear(slope, Scalar::zero());
        if w.degree() == Some(deg) {
            return w;
        }
    }
}

/// `f − f(a)`, which lies in the endpoint-zero space when `f(a) = f(b)`.
pub fn pin_to_zero(f: &Poly, iv: &Interval) -> Poly {
    f - &Poly::constant(f.eval(&iv.a))
}

/// Random affine map `scale·u + shift` with nonzero scale.
pub fn affine<R: Rng>(rng: &mut R) -> (Scalar, Scalar) {
    (nonzero_scalar(rng), scalar(rng))
}

/// Trigonometric polynomial with the given frequencies, random coefficients.
pub fn trig_with_frequencies<R: Rng>(rng: &mut R, freqs: &[u32]) -> TrigPoly {
    freqs.iter().fold(TrigPoly::zero(), |acc, &k| {
        acc.add(&TrigPoly::cos(k, scalar(rng))).add(&TrigPoly::sin(k, scalar(rng)))
    })
}

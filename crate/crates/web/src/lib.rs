//! WebAssembly bindings for the browser demo. Every export takes plain
//! strings (scalars in the text grammar, polynomials as comma-separated
//! ascending coefficients) and returns a JSON string, or an error message.

use abel_lab::center::{infinitesimal_order, parametric_table, Direction, Param};
use abel_lab::decomp::{cc_check, structure_report};
use abel_lab::trig::{moment_polynomial, non_cc_certificate, trig_moment, TrigPoly};
use abel_lab::{Interval, Poly, Scalar};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

const MAX_KMAX: u32 = 14;
const FAMILY_IMAX: u32 = 12;

fn scalar(field: &str, text: &str) -> Result<Scalar, String> {
    text.trim().parse().map_err(|e| format!("{field}: {e}"))
}

fn poly(field: &str, text: &str) -> Result<Poly, String> {
    let coeffs = text
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| scalar(field, t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::new(coeffs))
}

fn interval(a: &str, b: &str) -> Result<Interval, String> {
    Interval::new(scalar("a", a)?, scalar("b", b)?).map_err(|e| format!("interval: {e}"))
}

/// All inputs must share one quadratic field, or arithmetic would mix radicands.
fn same_field<'a>(scalars: impl IntoIterator<Item = (&'a str, &'a Scalar)>) -> Result<(), String> {
    let mut seen: Option<u32> = None;
    for (field, s) in scalars {
        if let Some(r) = s.radicand() {
            match seen {
                Some(d) if d != r => return Err(format!("{field}: mixes r{r} with r{d}")),
                _ => seen = Some(r),
            }
        }
    }
    Ok(())
}

fn with_fields<'a>(polys: &'a [(&'a str, &'a Poly)], iv: &'a Interval) -> Vec<(&'a str, &'a Scalar)> {
    polys
        .iter()
        .flat_map(|(n, p)| p.coeffs().iter().map(move |c| (*n, c)))
        .chain([("a", &iv.a), ("b", &iv.b)])
        .collect()
}

fn to_string(v: Value) -> String {
    serde_json::to_string(&v).expect("serializable")
}

/// Stratified return-map table of `y' = p y³ + ε q y²` (or `δ` on `p`)
/// for primitives `P`, `Q` vanishing at `a` and `b`, plus a composition check.
#[wasm_bindgen]
pub fn center_table(p: &str, q: &str, a: &str, b: &str, kmax: u32, param: &str) -> Result<String, String> {
    let (pp, qq, iv) = (poly("P", p)?, poly("Q", q)?, interval(a, b)?);
    same_field(with_fields(&[("P", &pp), ("Q", &qq)], &iv))?;
    for (name, f) in [("P", &pp), ("Q", &qq)] {
        if !iv.in_p(f) {
            return Err(format!("{name}: must vanish at both endpoints"));
        }
    }
    if !(2..=MAX_KMAX).contains(&kmax) {
        return Err(format!("kmax: must lie in 2..={MAX_KMAX}"));
    }
    let param = match param {
        "eps" => Param::EpsOnQ,
        "delta" => Param::DeltaOnP,
        other => return Err(format!("param: expected eps or delta, got {other:?}")),
    };
    let (dp, dq) = (pp.derivative(), qq.derivative());
    let table = parametric_table(&dp, &dq, &iv, kmax as usize, param, Direction::Forward);
    let order = infinitesimal_order(&dp, &dq, &iv, kmax as usize, param);
    let cc = if pp.is_constant() { None } else { cc_check(&pp, &qq, &iv).map_err(|e| e.to_string())? };
    Ok(to_string(json!({
        "entries": table.to_json(),
        "order": order,
        "cc": cc.map(|w| json!({ "w": w.w.to_string(), "p_tilde": w.p_tilde.to_string(), "q_tilde": w.q_tilde.to_string() })),
    })))
}

/// Indecomposable `[a,b]`-factors of `P` and their degree pattern.
#[wasm_bindgen]
pub fn factor_structure(p: &str, a: &str, b: &str) -> Result<String, String> {
    let (pp, iv) = (poly("P", p)?, interval(a, b)?);
    same_field(with_fields(&[("P", &pp)], &iv))?;
    if pp.is_constant() || !iv.in_p(&pp) {
        return Err("P: must be non-constant and vanish at both endpoints".into());
    }
    let rep = structure_report(&pp, &iv).map_err(|e| e.to_string())?;
    Ok(to_string(json!({
        "s": rep.s,
        "factors": rep.factors.iter().map(Poly::to_string).collect::<Vec<_>>(),
        "degrees": rep.factor_degrees,
        "definite": rep.definite,
        "pattern": rep.tag.to_string(),
    })))
}

/// Moments of `P = cos 3θ` against `Q = α sin 2θ + β cos 2θ + γ cos 6θ`:
/// both first-order families, the `(3,2)` integral and a certificate search.
#[wasm_bindgen]
pub fn trig_explorer(alpha: &str, beta: &str, gamma: &str) -> Result<String, String> {
    let coef = [scalar("alpha", alpha)?, scalar("beta", beta)?, scalar("gamma", gamma)?];
    same_field([("alpha", &coef[0]), ("beta", &coef[1]), ("gamma", &coef[2])])?;
    let terms = [
        TrigPoly::sin(2, Scalar::one()),
        TrigPoly::cos(2, Scalar::one()),
        TrigPoly::cos(6, Scalar::one()),
    ];
    let q = terms.iter().zip(&coef).fold(TrigPoly::zero(), |acc, (t, c)| acc.add(&t.scale(c)));
    let p = TrigPoly::cos(3, Scalar::one());
    let vanish = (0..=FAMILY_IMAX).all(|i| trig_moment(&p, &q, i, 1).is_zero() && trig_moment(&q, &p, i, 1).is_zero());
    let value = trig_moment(&p, &q, 3, 2);
    let identity: Vec<String> = moment_polynomial(&p, &terms, 3, 2)
        .iter()
        .map(|(e, v)| format!("({})·α^{}β^{}γ^{}", v.pi_coeff, e[0], e[1], e[2]))
        .collect();
    let cert = non_cc_certificate(&p, &q, 6, 6);
    Ok(to_string(json!({
        "families_vanish": vanish,
        "imax": FAMILY_IMAX,
        "value_3_2": value.pi_coeff.to_string(),
        "identity_3_2": identity.join(" + ") + " (times π)",
        "certificate": cert.map(|(i, j, v)| json!({ "i": i, "j": j, "pi_coeff": v.pi_coeff.to_string() })),
    })))
}

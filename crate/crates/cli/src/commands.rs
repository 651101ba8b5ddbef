use std::fmt::Write as _;

use abel_lab::acceptance::{run_suite, Suite};
use abel_lab::center::{
    infinitesimal_order, invert_series, iterated_integral, melnikov_d, printed_combination, parametric_table,
    poincare_coeffs, Assignment, Direction, MultiIndex, Param,
};
use abel_lab::decomp::{cc_check, is_definite, structure_report};
use abel_lab::moments::{composition_sum_space, moments_upto, parametric_structure_report, same_span, zspace};
use abel_lab::trig::{build_family, modify_family, non_cc_certificate, trig_moment, PiScalar, TrigPoly};
use abel_lab::{Interval, Poly, Scalar};
use serde_json::{json, Map, Value};

use crate::input::{invalid, CliError, Doc};
use crate::{Cli, Command, DirectionArg, ParamArg};

/// Rendered command result.
pub struct Output {
    pub json: Value,
    pub text: String,
    /// Set when the command ran but reports a failure (exit code 1).
    pub failed: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, failed: false }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            format!("{}\n", serde_json::to_string_pretty(&self.json).expect("serializable"))
        } else {
            self.text.clone()
        }
    }
}

type Res = Result<Output, CliError>;

pub fn run(cli: &Cli) -> Res {
    match cli.command {
        Command::Verify => return verify(cli),
        _ if cli.kmax < 2 => return Err(CliError::Invalid(format!("`--kmax` must be at least 2, got {}", cli.kmax))),
        _ => {}
    }
    let doc = Doc::load(cli.input.as_deref())?;
    match cli.command {
        Command::CenterTable => center_table(cli, &doc),
        Command::Iterated => iterated(cli, &doc),
        Command::Melnikov => melnikov(&doc),
        Command::Moments => moments(cli, &doc),
        Command::Zspace => zspace_cmd(cli, &doc),
        Command::Factors => factors(&doc),
        Command::Cc => cc(&doc),
        Command::Definite => definite(&doc),
        Command::Report => report(cli, &doc),
        Command::TrigMoment => trig_moment_cmd(cli, &doc),
        Command::TrigFamily => trig_family(cli, &doc),
        Command::Verify => unreachable!(),
    }
}

fn s(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

fn poly_json(p: &Poly) -> Value {
    serde_json::to_value(p).expect("serializable")
}

fn pi_json(v: &PiScalar) -> Value {
    json!({ "pi_coeff": v.pi_coeff.to_string() })
}

fn param(cli: &Cli) -> Param {
    match cli.param {
        ParamArg::Eps => Param::EpsOnQ,
        ParamArg::Delta => Param::DeltaOnP,
    }
}

fn direction(cli: &Cli) -> Direction {
    match cli.direction {
        DirectionArg::Forward => Direction::Forward,
        DirectionArg::Backward => Direction::Backward,
    }
}

fn nonconstant_p(doc: &Doc) -> Result<(Poly, Interval), CliError> {
    let (p, iv) = (doc.poly("P")?, doc.interval()?);
    if p.is_constant() {
        return Err(invalid("P", "must be non-constant"));
    }
    if !iv.in_p(&p) {
        return Err(invalid("P", "must vanish at both interval endpoints"));
    }
    Ok((p, iv))
}

fn center_table(cli: &Cli, doc: &Doc) -> Res {
    let (p, q, iv) = doc.coefficients()?;
    let table = parametric_table(&p, &q, &iv, cli.kmax, param(cli), direction(cli));
    let mut text = format!(
        "K = {}, param = {:?}, direction = {:?}, {} nonzero entries\n",
        cli.kmax,
        cli.param,
        cli.direction,
        table.nonzero().count()
    )
    .to_lowercase();
    for ((k, j), v) in table.nonzero() {
        let _ = writeln!(text, "v[{k},{j}] = {v}");
    }
    if direction(cli) == Direction::Forward {
        match infinitesimal_order(&p, &q, &iv, cli.kmax, param(cli)) {
            Some(l) => {
                let _ = writeln!(text, "infinitesimal order: {l}");
            }
            None => {
                let _ = writeln!(text, "infinitesimal order: all entries vanish up to K = {}", cli.kmax);
            }
        }
    }
    Ok(Output::ok(table.to_json(), text))
}

/// All words over {1, 2} of length `1..=max_len`, shortlex.
fn all_words(max_len: usize) -> Vec<String> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for bits in 0..(1u32 << len) {
            out.push((0..len).rev().map(|b| if bits >> b & 1 == 0 { '1' } else { '2' }).collect());
        }
    }
    out
}

const DEFAULT_WORD_LENGTH: usize = 4;

fn iterated(cli: &Cli, doc: &Doc) -> Res {
    let (p, q, iv) = doc.coefficients()?;
    let words = doc.words()?.unwrap_or_else(|| all_words(DEFAULT_WORD_LENGTH));
    let mut integrals = Map::new();
    let mut text = String::from("iterated integrals (h1 = p, h2 = q):\n");
    for w in &words {
        let alpha = MultiIndex::parse(w).map_err(|e| invalid("words", e))?;
        let v = iterated_integral(&alpha, &p, &q, &iv);
        let _ = writeln!(text, "I_{w} = {v}");
        integrals.insert(w.clone(), s(&v));
    }
    let kmax = cli.kmax;
    let forward = poincare_coeffs(&p, &q, &iv, kmax);
    let backward = invert_series(&forward);
    let series = |v: &[Scalar]| -> Map<String, Value> {
        v.iter().enumerate().map(|(i, c)| ((i + 2).to_string(), s(c))).collect()
    };
    let mut printed = Map::new();
    text.push_str("k  forward  backward  printed(h1=q)\n");
    for k in 2..=kmax {
        let pr = (k <= 6).then(|| printed_combination(k, &p, &q, &iv, Assignment::H1IsQ)).transpose()?;
        let _ = writeln!(
            text,
            "{k}  {}  {}  {}",
            forward[k - 2],
            backward[k - 2],
            pr.as_ref().map_or("-".to_string(), Scalar::to_string)
        );
        if let Some(pr) = pr {
            printed.insert(k.to_string(), s(&pr));
        }
    }
    let json = json!({
        "iterated": integrals,
        "forward": series(&forward),
        "backward": series(&backward),
        "printed_h1_q": printed,
    });
    Ok(Output::ok(json, text))
}

fn melnikov(doc: &Doc) -> Res {
    let (pp, qq, iv) = doc.p_pair()?;
    let table = parametric_table(&pp.derivative(), &qq.derivative(), &iv, 9, Param::EpsOnQ, Direction::Forward);
    let mut json = Map::new();
    let mut text = String::new();
    for k in 6..=8 {
        let d = melnikov_d(k, &pp, &qq, &iv)?;
        let _ = writeln!(text, "D{k} = {d}");
        json.insert(format!("D{k}"), s(&d));
    }
    for k in [5, 7, 9] {
        let e = table.get(k, 2);
        let _ = writeln!(text, "entry({k},2) = {e}");
        json.insert(format!("{k},2"), s(&e));
    }
    Ok(Output::ok(Value::Object(json), text))
}

fn default_imax(cli: &Cli, polys: &[&Poly]) -> usize {
    cli.imax.unwrap_or_else(|| 2 * polys.iter().filter_map(|p| p.degree()).max().unwrap_or(0))
}

fn moments(cli: &Cli, doc: &Doc) -> Res {
    let (p, q, iv) = doc.p_pair()?;
    let imax = default_imax(cli, &[&p, &q]);
    let pq = moments_upto(&p, &q, &iv, imax);
    let qp = moments_upto(&q, &p, &iv, imax);
    let both = pq.iter().chain(&qp).all(Scalar::is_zero);
    let mut text = format!("i  m_i(P,Q)  m_i(Q,P)   (i <= {imax})\n");
    for i in 0..=imax {
        let _ = writeln!(text, "{i}  {}  {}", pq[i], qp[i]);
    }
    let _ = writeln!(text, "both families vanish: {both}");
    let json = json!({
        "imax": imax,
        "m(P,Q)": pq.iter().map(s).collect::<Vec<_>>(),
        "m(Q,P)": qp.iter().map(s).collect::<Vec<_>>(),
        "both_vanish": both,
    });
    Ok(Output::ok(json, text))
}

fn zspace_cmd(cli: &Cli, doc: &Doc) -> Res {
    let d = cli.degree.ok_or_else(|| CliError::Invalid("`--degree` is required for zspace".into()))?;
    let (p, iv) = nonconstant_p(doc)?;
    let imax = cli.imax.unwrap_or(2 * d);
    let basis = zspace(&p, &iv, d, Some(imax))?;
    let sums = composition_sum_space(&p, &iv, d)?;
    let matches = same_span(&basis, &sums, d);
    let mut text = format!("dim Z(P)_{d} = {} (I_max = {imax}, stabilized)\n", basis.len());
    for b in &basis {
        let _ = writeln!(text, "  {b}");
    }
    let _ = writeln!(text, "composition sums: dimension {}, same span: {matches}", sums.len());
    let json = json!({
        "degree": d,
        "imax": imax,
        "dimension": basis.len(),
        "basis": basis.iter().map(poly_json).collect::<Vec<_>>(),
        "composition_sum_dimension": sums.len(),
        "equals_composition_sums": matches,
    });
    Ok(Output::ok(json, text))
}

fn factors(doc: &Doc) -> Res {
    let (p, iv) = nonconstant_p(doc)?;
    let rep = structure_report(&p, &iv)?;
    let mut text = format!("s = {}, definite = {}, pattern = {}\n", rep.s, rep.definite, rep.tag);
    for w in &rep.factors {
        let _ = writeln!(text, "  W = {w}");
    }
    Ok(Output::ok(serde_json::to_value(&rep).expect("serializable"), text))
}

fn definite(doc: &Doc) -> Res {
    let (p, iv) = nonconstant_p(doc)?;
    let def = is_definite(&p, &iv)?;
    Ok(Output::ok(json!({ "definite": def }), format!("definite: {def}\n")))
}

fn cc(doc: &Doc) -> Res {
    let (p, q, iv) = doc.p_pair()?;
    if p.is_constant() {
        return Err(invalid("P", "must be non-constant"));
    }
    let wit = cc_check(&p, &q, &iv)?;
    let text = match &wit {
        Some(w) => format!("witness W = {}\n  P = ({})∘W\n  Q = ({})∘W\n", w.w, w.p_tilde, w.q_tilde),
        None => "no common [a,b]-factor: composition condition fails\n".to_string(),
    };
    Ok(Output::ok(json!({ "cc": wit }), text))
}

fn report(cli: &Cli, doc: &Doc) -> Res {
    let (p, q, iv) = doc.p_pair()?;
    if p.is_constant() || q.is_constant() {
        return Err(invalid(if p.is_constant() { "P" } else { "Q" }, "must be non-constant"));
    }
    let flags = parametric_structure_report(&p, &q, &iv, cli.kmax, cli.nmax)?;
    let value = serde_json::to_value(&flags).expect("serializable");
    let mut text = String::new();
    if let Value::Object(m) = &value {
        for (k, v) in m {
            let shown = match v {
                Value::Null => "none".to_string(),
                Value::Object(_) => flags.cc.as_ref().map_or(String::new(), |w| format!("witness W = {}", w.w)),
                other => other.to_string(),
            };
            let _ = writeln!(text, "{k}: {shown}");
        }
    }
    Ok(Output { failed: !flags.implication_holds, ..Output::ok(value, text) })
}

const CERTIFICATE_BOUND: u32 = 6;

fn moment_families(p: &TrigPoly, q: &TrigPoly, imax: u32) -> (Vec<PiScalar>, Vec<PiScalar>) {
    ((0..=imax).map(|i| trig_moment(p, q, i, 1)).collect(), (0..=imax).map(|i| trig_moment(q, p, i, 1)).collect())
}

fn families_report(p: &TrigPoly, q: &TrigPoly, imax: u32, json: &mut Map<String, Value>, text: &mut String) {
    let (a, b) = moment_families(p, q, imax);
    let vanish = a.iter().chain(&b).all(PiScalar::is_zero);
    let _ = writeln!(text, "i  int Q^i dP  int P^i dQ   (i <= {imax})");
    for i in 0..=imax as usize {
        let _ = writeln!(text, "{i}  {}  {}", a[i], b[i]);
    }
    let _ = writeln!(text, "both families vanish: {vanish}");
    let cert = non_cc_certificate(p, q, CERTIFICATE_BOUND, CERTIFICATE_BOUND);
    match &cert {
        Some((i, j, v)) => {
            let _ = writeln!(text, "non-composition certificate: int Q^{i} d(P^{j}) = {v}");
        }
        None => {
            let _ = writeln!(text, "no certificate with i, j <= {CERTIFICATE_BOUND} (inconclusive)");
        }
    }
    json.insert("imax".into(), json!(imax));
    json.insert("Q^i dP".into(), Value::Array(a.iter().map(pi_json).collect()));
    json.insert("P^i dQ".into(), Value::Array(b.iter().map(pi_json).collect()));
    json.insert("both_vanish".into(), json!(vanish));
    json.insert(
        "certificate".into(),
        cert.map_or(Value::Null, |(i, j, v)| json!({ "i": i, "j": j, "pi_coeff": v.pi_coeff.to_string() })),
    );
}

fn trig_imax(cli: &Cli) -> Result<u32, CliError> {
    u32::try_from(cli.imax.unwrap_or(12)).map_err(|_| CliError::Invalid("`--imax` is too large".into()))
}

fn trig_moment_cmd(cli: &Cli, doc: &Doc) -> Res {
    let (p, q) = (doc.trig("P")?, doc.trig("Q")?);
    match (doc.uint("i")?, doc.uint("j")?) {
        (Some(i), Some(j)) => {
            let v = trig_moment(&p, &q, i, j);
            let json = json!({ "i": i, "j": j, "pi_coeff": v.pi_coeff.to_string() });
            Ok(Output::ok(json, format!("int Q^{i} d(P^{j}) = {v}\n")))
        }
        (None, None) => {
            let mut json = Map::new();
            let mut text = String::new();
            families_report(&p, &q, trig_imax(cli)?, &mut json, &mut text);
            Ok(Output::ok(Value::Object(json), text))
        }
        (Some(_), None) => Err(invalid("j", "missing (give both i and j, or neither)")),
        (None, Some(_)) => Err(invalid("i", "missing (give both i and j, or neither)")),
    }
}

fn trig_family(cli: &Cli, doc: &Doc) -> Res {
    let d1 = doc.uint("d1")?.ok_or_else(|| invalid("d1", "missing"))?;
    let d2 = doc.uint("d2")?.ok_or_else(|| invalid("d2", "missing"))?;
    let (p, mut q) = build_family(d1, d2, doc.trig("P")?, doc.trig("Q")?)?;
    let mut text = format!("valid ({d1},{d2}) family\n");
    if doc.has("R") {
        let r = doc.poly("R")?;
        q = modify_family(&q, d2, &r);
        let _ = writeln!(text, "modified: Q + R(cos {d2}t) with R = {r}");
    }
    let mut json = Map::new();
    json.insert("d1".into(), json!(d1));
    json.insert("d2".into(), json!(d2));
    json.insert("Q".into(), serde_json::to_value(&q).expect("serializable"));
    families_report(&p, &q, trig_imax(cli)?, &mut json, &mut text);
    Ok(Output::ok(Value::Object(json), text))
}

fn verify(cli: &Cli) -> Res {
    let suite: Suite = cli.suite.parse().map_err(|e| CliError::Invalid(format!("`--suite`: {e}")))?;
    let outcomes = run_suite(suite, cli.seed);
    let mut text = String::new();
    let mut rows = Vec::new();
    for o in &outcomes {
        let _ = writeln!(text, "{} {:<4} {}", if o.passed { "PASS" } else { "FAIL" }, o.id, o.title);
        for d in &o.details {
            let _ = writeln!(text, "       {d}");
        }
        rows.push(json!({ "id": o.id, "title": o.title, "passed": o.passed, "details": o.details }));
    }
    let failed = outcomes.iter().any(|o| !o.passed);
    let _ = writeln!(
        text,
        "{}/{} criteria passed (seed {})",
        outcomes.iter().filter(|o| o.passed).count(),
        outcomes.len(),
        cli.seed
    );
    Ok(Output { json: json!({ "seed": cli.seed, "criteria": rows }), text, failed })
}

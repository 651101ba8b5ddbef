//! Input documents: one JSON object per job, scalars in the text grammar.

use std::cell::Cell;
use std::fmt;
use std::path::Path;

use abel_lab::exact::validate_radicand;
use abel_lab::trig::TrigPoly;
use abel_lab::{Interval, Poly, Scalar};
use serde::de::DeserializeOwned;
use serde_json::{Map, Value};

/// Failure classes mapped onto process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input; exit code 2.
    Invalid(String),
    /// Well-formed input the computation could not complete; exit code 1.
    Compute(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Compute(m) => write!(f, "computation failed: {m}"),
        }
    }
}

impl From<abel_lab::Error> for CliError {
    fn from(e: abel_lab::Error) -> Self {
        use abel_lab::Error as E;
        match e {
            E::KernelNotStabilized { .. } | E::ZeroDivisor | E::ConstantFactor => CliError::Compute(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

pub fn invalid(field: &str, msg: impl fmt::Display) -> CliError {
    CliError::Invalid(format!("field `{field}`: {msg}"))
}

/// A parsed input file. Every scalar must live in one field `Q(√D)`; the
/// radicand comes from the optional top-level `"D"` or the first irrational
/// scalar seen.
pub struct Doc {
    root: Map<String, Value>,
    radicand: Cell<Option<u32>>,
}

impl Doc {
    pub fn load(path: Option<&Path>) -> Result<Doc, CliError> {
        let path = path.ok_or_else(|| CliError::Invalid("`--input` is required for this command".into()))?;
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("`--input` {}: {e}", path.display())))?;
        Doc::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Doc, CliError> {
        let value: Value = serde_json::from_str(text).map_err(|e| invalid("input", e))?;
        let Value::Object(root) = value else {
            return Err(invalid("input", "expected a JSON object"));
        };
        let doc = Doc { root, radicand: Cell::new(None) };
        if let Some(d) = doc.root.get("D") {
            let d = d
                .as_u64()
                .and_then(|d| u32::try_from(d).ok())
                .ok_or_else(|| invalid("D", "expected a non-negative integer"))?;
            validate_radicand(d).map_err(|e| invalid("D", e))?;
            doc.radicand.set(Some(d));
        }
        Ok(doc)
    }

    pub fn has(&self, field: &str) -> bool {
        self.root.contains_key(field)
    }

    fn get<T: DeserializeOwned>(&self, field: &str) -> Result<T, CliError> {
        let v = self.root.get(field).ok_or_else(|| invalid(field, "missing"))?;
        serde_json::from_value(v.clone()).map_err(|e| invalid(field, e))
    }

    fn check_field<'a>(&self, field: &str, scalars: impl IntoIterator<Item = &'a Scalar>) -> Result<(), CliError> {
        for s in scalars {
            let Some(r) = s.radicand() else { continue };
            match self.radicand.get() {
                None => self.radicand.set(Some(r)),
                Some(d) if d == r => {}
                Some(d) => return Err(invalid(field, format!("scalar {s} uses r{r} but the input field is Q(r{d})"))),
            }
        }
        Ok(())
    }

    pub fn poly(&self, field: &str) -> Result<Poly, CliError> {
        let p: Poly = self.get(field)?;
        self.check_field(field, p.coeffs())?;
        Ok(p)
    }

    pub fn interval(&self) -> Result<Interval, CliError> {
        let iv: Interval = self.get("interval")?;
        self.check_field("interval", [&iv.a, &iv.b])?;
        Ok(iv)
    }

    pub fn trig(&self, field: &str) -> Result<TrigPoly, CliError> {
        let t: TrigPoly = self.get(field)?;
        let scalars = std::iter::once(&t.a0).chain(t.cos_coeffs().values()).chain(t.sin_coeffs().values());
        self.check_field(field, scalars)?;
        Ok(t)
    }

    pub fn uint(&self, field: &str) -> Result<Option<u32>, CliError> {
        match self.root.get(field) {
            None => Ok(None),
            Some(v) => v
                .as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .map(Some)
                .ok_or_else(|| invalid(field, "expected a non-negative integer")),
        }
    }

    pub fn words(&self) -> Result<Option<Vec<String>>, CliError> {
        if !self.has("words") {
            return Ok(None);
        }
        self.get("words").map(Some)
    }

    /// Primitives `P`, `Q` and the interval, both required to vanish at the endpoints.
    pub fn p_pair(&self) -> Result<(Poly, Poly, Interval), CliError> {
        let (p, q, iv) = (self.poly("P")?, self.poly("Q")?, self.interval()?);
        for (name, f) in [("P", &p), ("Q", &q)] {
            if !iv.in_p(f) {
                return Err(invalid(name, "must vanish at both interval endpoints"));
            }
        }
        Ok((p, q, iv))
    }

    /// Coefficient functions `p`, `q` of the equation: taken verbatim from
    /// fields `p`, `q` when present, otherwise the derivatives of `P`, `Q`.
    pub fn coefficients(&self) -> Result<(Poly, Poly, Interval), CliError> {
        let iv = self.interval()?;
        if self.has("p") || self.has("q") {
            return Ok((self.poly("p")?, self.poly("q")?, iv));
        }
        Ok((self.poly("P")?.derivative(), self.poly("Q")?.derivative(), iv))
    }
}

//! JSON schemas for forms, pencils and integer systems, and JSON renderings
//! of the reports.
//!
//! Indices in files are 1-based; field elements are written as their repr
//! integers. Integer coefficients of systems are decimal strings (plain JSON
//! integers are accepted too).

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bound::{to_decimal, BoundReport, ThresholdRow, LargeQCertificate, MinimalPrimePower, DECIMAL_DIGITS};
use crate::canonical::{canonicalize, FormType, Tail};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::form::QuadraticForm;
use crate::hensel::{IntegerQuadraticSystem, PadicVector};
use crate::minors::matrix_rank;
use crate::pencil::{MinimizationReport, Pencil, RankSpectrum, SingularZeroReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub p: u64,
    pub e: u32,
}

/// `{"field"?, "n"?, "coeffs": [[i, j, repr], ...]}`; `field` and `n` may be
/// omitted inside a pencil.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub coeffs: Vec<(usize, usize, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilJson {
    pub field: FieldJson,
    pub n: usize,
    pub forms: Vec<FormJson>,
}

/// An integer written either as a JSON number or a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntLit {
    Num(i64),
    Str(String),
}

impl IntLit {
    fn to_bigint(&self, at: &str) -> Result<BigInt> {
        match self {
            IntLit::Num(v) => Ok(BigInt::from(*v)),
            IntLit::Str(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("{at}: {s:?} is not a decimal integer"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemJson {
    pub p: u64,
    pub n: usize,
    pub forms: Vec<Vec<(usize, usize, IntLit)>>,
    pub zero: Vec<IntLit>,
    pub precision: u32,
}

/// A parsed lifting request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftRequest {
    pub system: IntegerQuadraticSystem,
    pub zero: Vec<BigInt>,
    pub precision: u32,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| {
            let msg = e.to_string();
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            let msg = msg.strip_suffix(&suffix).unwrap_or(&msg);
            Error::Invalid(format!("line {} column {}: {msg}", e.line(), e.column()))
        })
}

fn field_from(j: &FieldJson) -> Result<Field> {
    Field::new(j.p, j.e).map_err(|e| Error::Invalid(format!("field: {e}")))
}

fn form_from(f: &Field, n: usize, coeffs: &[(usize, usize, u64)], at: &str) -> Result<QuadraticForm> {
    let mut terms = Vec::with_capacity(coeffs.len());
    for (k, &(i, j, c)) in coeffs.iter().enumerate() {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::Invalid(format!("{at}.coeffs[{k}]: index ({i}, {j}) outside 1..={n}")));
        }
        if i > j {
            return Err(Error::Invalid(format!("{at}.coeffs[{k}]: expected i <= j, got ({i}, {j})")));
        }
        let e = f.elem(c).map_err(|_| Error::Invalid(format!("{at}.coeffs[{k}]: repr {c} outside 0..{}", f.q())))?;
        terms.push((i - 1, j - 1, e));
    }
    QuadraticForm::from_terms(f, n, &terms)
}

/// Parses a standalone form file, which must name its field and `n`.
pub fn parse_form(text: &str) -> Result<QuadraticForm> {
    let j: FormJson = parse_json(text)?;
    let fj = j.field.as_ref().ok_or_else(|| Error::Invalid("form: missing field \"field\"".into()))?;
    let n = j.n.ok_or_else(|| Error::Invalid("form: missing field \"n\"".into()))?;
    form_from(&field_from(fj)?, n, &j.coeffs, "form")
}

pub fn parse_pencil(text: &str) -> Result<Pencil> {
    let j: PencilJson = parse_json(text)?;
    let f = field_from(&j.field)?;
    if j.forms.is_empty() {
        return Err(Error::Invalid("forms: at least one form is required".into()));
    }
    let mut forms = Vec::with_capacity(j.forms.len());
    for (k, fj) in j.forms.iter().enumerate() {
        let at = format!("forms[{k}]");
        if let Some(n) = fj.n {
            if n != j.n {
                return Err(Error::Invalid(format!("{at}.n: {n} differs from pencil n = {}", j.n)));
            }
        }
        if let Some(ff) = &fj.field {
            if ff != &j.field {
                return Err(Error::Invalid(format!("{at}.field: differs from the pencil field")));
            }
        }
        forms.push(form_from(&f, j.n, &fj.coeffs, &at)?);
    }
    Pencil::new(forms)
}

pub fn parse_system(text: &str) -> Result<LiftRequest> {
    let j: SystemJson = parse_json(text)?;
    let mut forms = Vec::with_capacity(j.forms.len());
    for (k, terms) in j.forms.iter().enumerate() {
        let mut out = Vec::with_capacity(terms.len());
        for (t, (i, jj, c)) in terms.iter().enumerate() {
            let at = format!("forms[{k}][{t}]");
            if *i == 0 || *jj == 0 || *i > j.n || *jj > j.n || i > jj {
                return Err(Error::Invalid(format!("{at}: index ({i}, {jj}) must satisfy 1 <= i <= j <= {}", j.n)));
            }
            out.push((i - 1, jj - 1, c.to_bigint(&at)?));
        }
        forms.push(out);
    }
    if j.zero.len() != j.n {
        return Err(Error::Invalid(format!("zero: expected {} coordinates, got {}", j.n, j.zero.len())));
    }
    let zero = j
        .zero
        .iter()
        .enumerate()
        .map(|(k, c)| c.to_bigint(&format!("zero[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    let system = IntegerQuadraticSystem::new(j.p, j.n, forms).map_err(|e| Error::Invalid(format!("system: {e}")))?;
    Ok(LiftRequest { system, zero, precision: j.precision })
}

pub fn field_json(f: &Field) -> FieldJson {
    FieldJson { p: f.p() as u64, e: f.e() }
}

fn coeffs_json(q: &QuadraticForm) -> Vec<(usize, usize, u64)> {
    q.terms().map(|(i, j, c)| (i + 1, j + 1, c.0 as u64)).collect()
}

/// Standalone form file content.
pub fn form_json(q: &QuadraticForm) -> FormJson {
    FormJson { field: Some(field_json(q.field())), n: Some(q.n()), coeffs: coeffs_json(q) }
}

pub fn pencil_json(p: &Pencil) -> PencilJson {
    PencilJson {
        field: field_json(p.field()),
        n: p.n(),
        forms: p.forms().iter().map(|q| FormJson { field: None, n: None, coeffs: coeffs_json(q) }).collect(),
    }
}

pub fn system_json(req: &LiftRequest) -> SystemJson {
    SystemJson {
        p: req.system.p,
        n: req.system.n,
        forms: req
            .system
            .forms
            .iter()
            .map(|m| m.iter().map(|(&(i, j), a)| (i + 1, j + 1, IntLit::Str(a.to_string()))).collect())
            .collect(),
        zero: req.zero.iter().map(|c| IntLit::Str(c.to_string())).collect(),
        precision: req.precision,
    }
}

/// `{"num", "den", "decimal"}`.
pub fn rational_json(x: &BigRational) -> Value {
    json!({
        "num": x.numer().to_string(),
        "den": x.denom().to_string(),
        "decimal": to_decimal(x, DECIMAL_DIGITS),
    })
}

pub fn bound_report_json(rep: &BoundReport) -> Value {
    let s1_terms: Vec<Value> = rep
        .sigma1_terms
        .iter()
        .map(|t| {
            json!({
                "sum": "sigma1",
                "t": t.t,
                "bracket": t.bracket,
                "coefficient": rational_json(&t.coefficient),
                "q_exponent": t.exponent,
                "value": rational_json(&t.value(rep.q)),
            })
        })
        .collect();
    let s2_terms: Vec<Value> = rep
        .sigma2_terms
        .iter()
        .map(|t| {
            json!({
                "sum": "sigma2",
                "rho": t.rho,
                "t": t.t,
                "coefficient": rational_json(&t.coefficient),
                "q_exponent": t.exponent,
                "value": rational_json(&t.value(rep.q)),
            })
        })
        .collect();
    json!({
        "r": rep.r,
        "n": rep.n,
        "q": rep.q,
        "sigma1": rational_json(&rep.sigma1),
        "sigma2": rational_json(&rep.sigma2),
        "total": rational_json(&rep.total()),
        "q_exceeds_n": rep.q_exceeds_n,
        "n_at_least_4r_plus_1": rep.n_at_least_4r_plus_1,
        "sum_below_one": rep.sum_below_one,
        "admissible": rep.admissible,
        "terms": s1_terms.into_iter().chain(s2_terms).collect::<Vec<_>>(),
    })
}

pub fn minimal_q_json(m: &MinimalPrimePower) -> Value {
    json!({
        "r": m.r,
        "n": m.n,
        "q0": m.q0,
        "start": m.start,
        "linear_coefficient": rational_json(&m.linear_coefficient),
        "candidates_tested": m.candidates_tested,
        "window": [m.q0 + 1, 2 * m.q0],
        "window_checked": m.window_checked,
        "window_failures": m.window_failures,
    })
}

pub fn thresholds_json(rows: &[ThresholdRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|row| {
                json!({
                    "r": row.r,
                    "n": row.n,
                    "computed": row.computed,
                    "reference": row.reference,
                    "deviation": rational_json(&row.deviation),
                    "reference_is_prime": row.reference_is_prime,
                    "linear_coefficient": rational_json(&row.search.linear_coefficient),
                    "window_failures": row.search.window_failures,
                })
            })
            .collect(),
    )
}

pub fn large_q_json(c: &LargeQCertificate) -> Value {
    json!({
        "r": c.r,
        "n": c.n,
        "q": c.q,
        "gate": c.gate,
        "q_exceeds_n": c.q_exceeds_n,
        "certified": c.certified,
        "sigma1_bound": c.sigma1_bound.as_ref().map(rational_json),
        "sigma2_bound": c.sigma2_bound.as_ref().map(rational_json),
        "c_r_upper": rational_json(&c.c_r_upper),
        "steps": c.steps.iter().map(|b| json!({
            "name": b.name,
            "side": if b.upper { "upper" } else { "lower" },
            "value": rational_json(&b.value),
        })).collect::<Vec<_>>(),
    })
}

fn elems(v: &[Elem]) -> Vec<u32> {
    v.iter().map(|e| e.0).collect()
}

pub fn tail_json(t: Tail) -> Value {
    match t {
        Tail::Empty => json!({"kind": "Empty"}),
        Tail::Square(c) => json!({"kind": "Square", "coefficient": c.0}),
        Tail::Irreducible(mu) => json!({"kind": "Irreducible", "mu": mu.0}),
    }
}

pub fn form_type_name(t: FormType) -> &'static str {
    match t {
        FormType::Zero => "Zero",
        FormType::OddRank => "OddRank",
        FormType::EvenSplit => "EvenSplit",
        FormType::EvenNonSplit => "EvenNonSplit",
    }
}

/// Rank, matrix rank and canonical data of a form.
pub fn rank_report_json(q: &QuadraticForm) -> Value {
    let c = canonicalize(q);
    let transform: Vec<Vec<u32>> = c.transform.to_rows().iter().map(|r| elems(r)).collect();
    json!({
        "field": field_json(q.field()),
        "n": q.n(),
        "rank": c.rank,
        "matrix_rank": matrix_rank(q),
        "hyperbolic_planes": c.m,
        "tail": tail_json(c.tail),
        "type": form_type_name(c.type_tag),
        "transform": transform,
        "canonical": form_json(&c.shape(q.field(), q.n())),
    })
}

pub fn spectrum_json(s: &RankSpectrum) -> Value {
    let by_type: Vec<Value> = s
        .by_type
        .iter()
        .map(|(&(rank, ty), &count)| json!({"rank": rank, "type": form_type_name(ty), "count": count}))
        .collect();
    json!({
        "q": s.q,
        "r": s.r,
        "n": s.n,
        "vector_counts": s.vector_counts.iter().map(|(r, c)| json!({"rank": r, "count": c})).collect::<Vec<_>>(),
        "projective_counts": s.projective_counts().iter().map(|(r, c)| json!({"rank": r, "count": c})).collect::<Vec<_>>(),
        "zero_combination_count": s.zero_combination_count,
        "by_type": by_type,
    })
}

pub fn singular_report_json(s: &SingularZeroReport) -> Value {
    json!({
        "zeros": s.total_zeros,
        "nonsingular": s.nonsingular,
        "singular_nonzero": s.singular,
        "by_singular_form": s.by_form.iter().map(|(k, v)| json!({"u_basis": k, "count": v})).collect::<Vec<_>>(),
    })
}

pub fn minimization_json(m: &MinimizationReport) -> Value {
    json!({
        "minimized": m.minimized,
        "subspaces_checked": m.subspaces_checked,
        "witness": m.witness.as_ref().map(|w| json!({
            "s": w.s,
            "w": w.w,
            "basis": w.basis.iter().map(|b| elems(b)).collect::<Vec<_>>(),
            "vanishing_combinations": w.vanishing.iter().map(|b| elems(b)).collect::<Vec<_>>(),
        })),
    })
}

pub fn padic_json(v: &PadicVector) -> Value {
    json!({
        "p": v.p,
        "precision": v.precision,
        "modulus": v.modulus().to_string(),
        "coords": v.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

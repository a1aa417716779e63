//! JSON encodings.
//!
//! - `LaurentPoly`: `{"t": {"<exp>": "<decimal>"}}`
//! - `LaurentMatrix`: `{"n": n, "entries": [[poly, ...], ...]}`
//! - `IntMatrix`: `{"n": n, "entries": [[int, ...], ...]}`
//! - `TruncMatrix`: `{"n": n, "precision": N, "entries": [[{"s": ["c0", ...]}, ...], ...]}`
//! - `GradedElement`: `{"degree": k, "matrix": [[int, ...], ...]}`
//! - gamma elements: a `LaurentMatrix` object with an optional `"word"`
//! - `KernelElement`: `{"n": n, "degree": d, "terms": [{"pair": [i, j], "W": graded, "witness": word?}]}`
//! - witness libraries: `{"n": n, "max_degree": K, "degrees": [{"degree": k, "witnesses": [{"word", "element"}]}]}`
//!
//! Integers are written as JSON numbers of any size; decimals inside
//! polynomials and series are strings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::braid::{Bindings, BraidWord};
use crate::density::{ApproximationResult, WitnessLibrary};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, TruncSeries};
use crate::linalg::{IntMatrix, LaurentMatrix, Matrix, TruncMatrix};
use crate::liealg::{GradedElement, KernelElement, KernelTerm};
use crate::search::{SearchConfig, SearchHit, SearchReport};

/// Serde adapter writing an `IntMatrix` as nested arrays of integers.
pub mod int_matrix {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::linalg::IntMatrix;

    pub fn serialize<S: Serializer>(m: &IntMatrix, s: S) -> Result<S::Ok, S::Error> {
        super::int_rows(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IntMatrix, D::Error> {
        let rows: Vec<Vec<serde_json::Number>> = Vec::deserialize(d)?;
        let rows = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| x.as_str().parse::<BigInt>().map_err(|_| D::Error::custom(format!("{x} is not an integer"))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(D::Error::custom("matrix must be square"));
        }
        IntMatrix::from_rows(rows).map_err(D::Error::custom)
    }
}

fn int_number(x: &BigInt) -> serde_json::Number {
    x.to_string().parse().expect("integer literal")
}

fn int_rows(m: &IntMatrix) -> Vec<Vec<serde_json::Number>> {
    m.to_rows().iter().map(|r| r.iter().map(int_number).collect()).collect()
}

fn bad(what: &str) -> Error {
    Error::Json(format!("expected {what}"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Json(format!("missing field `{key}`")))
}

fn usize_field(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?.as_u64().map(|x| x as usize).ok_or_else(|| bad(&format!("`{key}` to be a non-negative integer")))
}

fn decimal(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => s.trim().parse().map_err(|_| bad("a decimal integer string")),
        Value::Number(n) => n.as_str().parse().map_err(|_| bad("an integer")),
        _ => Err(bad("an integer")),
    }
}

pub fn poly_to_json(p: &LaurentPoly) -> Value {
    let terms: BTreeMap<String, Value> = p.terms().map(|(e, c)| (e.to_string(), Value::String(c.to_string()))).collect();
    json!({ "t": terms })
}

pub fn poly_from_json(v: &Value) -> Result<LaurentPoly> {
    let terms = field(v, "t")?.as_object().ok_or_else(|| bad("`t` to be an object"))?;
    let parsed = terms
        .iter()
        .map(|(e, c)| {
            let e: i64 = e.trim().parse().map_err(|_| bad("integer exponents"))?;
            Ok((e, decimal(c)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentPoly::from_terms(parsed))
}

fn rows_of(v: &Value) -> Result<(usize, Vec<&Vec<Value>>)> {
    let n = usize_field(v, "n")?;
    let entries = field(v, "entries")?.as_array().ok_or_else(|| bad("`entries` to be an array"))?;
    let rows: Vec<&Vec<Value>> =
        entries.iter().map(|r| r.as_array().ok_or_else(|| bad("rows to be arrays"))).collect::<Result<_>>()?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Json(format!("`entries` is not {n}x{n}")));
    }
    Ok((n, rows))
}

fn matrix_from<T: crate::linalg::Scalar>(v: &Value, entry: impl Fn(&Value) -> Result<T>) -> Result<Matrix<T>> {
    let (_, rows) = rows_of(v)?;
    let rows = rows.iter().map(|r| r.iter().map(&entry).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

pub fn laurent_matrix_to_json(m: &LaurentMatrix) -> Value {
    let rows: Vec<Vec<Value>> = m.to_rows().iter().map(|r| r.iter().map(poly_to_json).collect()).collect();
    json!({ "n": m.rows(), "entries": rows })
}

pub fn laurent_matrix_from_json(v: &Value) -> Result<LaurentMatrix> {
    matrix_from(v, poly_from_json)
}

pub fn int_matrix_to_json(m: &IntMatrix) -> Value {
    json!({ "n": m.rows(), "entries": int_rows(m) })
}

pub fn int_matrix_from_json(v: &Value) -> Result<IntMatrix> {
    matrix_from(v, decimal)
}

pub fn trunc_matrix_to_json(m: &TruncMatrix) -> Value {
    let n = m.rows();
    let rows: Vec<Vec<Value>> = (0..n)
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let s: Vec<String> = m.entry(i, j).coeffs().iter().map(BigInt::to_string).collect();
                    json!({ "s": s })
                })
                .collect()
        })
        .collect();
    json!({ "n": n, "precision": m.precision(), "entries": rows })
}

pub fn trunc_matrix_from_json(v: &Value) -> Result<TruncMatrix> {
    let precision = usize_field(v, "precision")?;
    let (n, rows) = rows_of(v)?;
    let mut coeffs = vec![IntMatrix::zeros(n, n); precision];
    for (i, row) in rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let s = field(e, "s")?.as_array().ok_or_else(|| bad("`s` to be an array"))?;
            if s.len() > precision {
                return Err(Error::Json(format!("entry ({i}, {j}) has more than {precision} coefficients")));
            }
            for (k, c) in s.iter().enumerate() {
                coeffs[k][(i, j)] = decimal(c)?;
            }
        }
    }
    TruncMatrix::from_coefficients(coeffs)
}

/// A series as `{"s": [...]}`.
pub fn series_to_json(s: &TruncSeries) -> Value {
    let c: Vec<String> = s.coeffs().iter().map(BigInt::to_string).collect();
    json!({ "s": c })
}

/// A matrix with an optional provenance word.
#[derive(Clone, Debug)]
pub struct GammaDocument {
    pub matrix: LaurentMatrix,
    pub word: Option<BraidWord>,
}

pub fn gamma_to_json(matrix: &LaurentMatrix, word: Option<&BraidWord>) -> Value {
    let mut v = laurent_matrix_to_json(matrix);
    if let Some(w) = word {
        v["word"] = Value::String(w.to_string());
    }
    v
}

pub fn gamma_from_json(v: &Value, bindings: &Bindings) -> Result<GammaDocument> {
    let matrix = laurent_matrix_from_json(v)?;
    let word = match v.get("word") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(bindings.parse(s, matrix.rows())?),
        Some(_) => return Err(bad("`word` to be a string")),
    };
    Ok(GammaDocument { matrix, word })
}

pub fn graded_to_json(g: &GradedElement) -> Value {
    serde_json::to_value(g).expect("graded elements serialize")
}

pub fn graded_from_json(v: &Value) -> Result<GradedElement> {
    Ok(GradedElement::deserialize(v)?)
}

pub fn kernel_to_json(a: &KernelElement) -> Value {
    let terms: Vec<Value> = a
        .terms()
        .iter()
        .map(|t| {
            let mut o = json!({ "pair": [t.pair.0, t.pair.1], "W": graded_to_json(&t.w) });
            if let Some(w) = &t.witness {
                o["witness"] = Value::String(w.to_string());
            }
            o
        })
        .collect();
    json!({ "n": a.n(), "degree": a.degree(), "terms": terms })
}

pub fn kernel_from_json(v: &Value, bindings: &Bindings) -> Result<KernelElement> {
    let degree = usize_field(v, "degree")? as u32;
    let terms_v = field(v, "terms")?.as_array().ok_or_else(|| bad("`terms` to be an array"))?;
    let mut terms = Vec::with_capacity(terms_v.len());
    let mut n = v.get("n").and_then(Value::as_u64).map(|x| x as usize);
    for t in terms_v {
        let pair: (usize, usize) = serde_json::from_value(field(t, "pair")?.clone())?;
        let w = graded_from_json(field(t, "W")?)?;
        let n_here = *n.get_or_insert(w.n());
        terms.push(match t.get("witness") {
            None | Some(Value::Null) => KernelTerm::new(pair, w),
            Some(Value::String(s)) => KernelTerm::with_witness(pair, w, bindings.parse(s, n_here)?),
            Some(_) => return Err(bad("`witness` to be a string")),
        });
    }
    let n = n.ok_or_else(|| Error::Json("empty kernel element needs `n`".into()))?;
    KernelElement::new(n, degree, terms)
}

#[derive(Serialize, Deserialize)]
struct StoredWitness {
    word: String,
    element: GradedElement,
}

#[derive(Serialize, Deserialize)]
struct StoredDegree {
    degree: u32,
    witnesses: Vec<StoredWitness>,
}

#[derive(Serialize, Deserialize)]
struct StoredLibrary {
    n: usize,
    max_degree: u32,
    degrees: Vec<StoredDegree>,
}

pub fn library_to_json(lib: &WitnessLibrary) -> Value {
    let doc = StoredLibrary {
        n: lib.n(),
        max_degree: lib.max_degree(),
        degrees: (1..=lib.max_degree())
            .map(|k| StoredDegree {
                degree: k,
                witnesses: lib
                    .witnesses(k)
                    .iter()
                    .map(|w| StoredWitness { word: w.word.to_string(), element: w.element.clone() })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("libraries serialize")
}

/// Reloads a library; coefficients are recomputed unless `trust` is set.
pub fn library_from_json(v: &Value, trust: bool) -> Result<WitnessLibrary> {
    let doc = StoredLibrary::deserialize(v)?;
    if doc.degrees.len() != doc.max_degree as usize
        || doc.degrees.iter().enumerate().any(|(i, d)| d.degree != i as u32 + 1)
    {
        return Err(Error::Json("degrees must run 1..=max_degree in order".into()));
    }
    let degrees: Vec<Vec<(String, GradedElement)>> =
        doc.degrees.into_iter().map(|d| d.witnesses.into_iter().map(|w| (w.word, w.element)).collect()).collect();
    WitnessLibrary::load(doc.n, &degrees, trust)
}

#[derive(Serialize, Deserialize)]
struct StoredConfig {
    n: usize,
    target_depth: u32,
    pool: Vec<String>,
    #[serde(default = "one_one")]
    nesting: (u32, u32),
    #[serde(default = "one")]
    max_product_len: usize,
    #[serde(default)]
    precision: Option<usize>,
    #[serde(default)]
    result_cap: Option<usize>,
    #[serde(default)]
    budget: Option<u64>,
}

fn one_one() -> (u32, u32) {
    (1, 1)
}

fn one() -> usize {
    1
}

pub fn search_config_to_json(cfg: &SearchConfig) -> Value {
    let doc = StoredConfig {
        n: cfg.n,
        target_depth: cfg.target_depth,
        pool: cfg.pool.iter().map(BraidWord::to_string).collect(),
        nesting: (cfg.min_nesting, cfg.max_nesting),
        max_product_len: cfg.max_product_len,
        precision: Some(cfg.precision),
        result_cap: (cfg.result_cap != usize::MAX).then_some(cfg.result_cap),
        budget: Some(cfg.budget),
    };
    serde_json::to_value(doc).expect("configs serialize")
}

pub fn search_config_from_json(v: &Value, bindings: &Bindings) -> Result<SearchConfig> {
    let doc = StoredConfig::deserialize(v)?;
    let pool = doc.pool.iter().map(|s| bindings.parse(s, doc.n)).collect::<Result<Vec<_>>>()?;
    let mut cfg = SearchConfig::new(doc.n, doc.target_depth, pool);
    cfg.min_nesting = doc.nesting.0;
    cfg.max_nesting = doc.nesting.1;
    cfg.max_product_len = doc.max_product_len;
    if let Some(p) = doc.precision {
        cfg.precision = p;
    }
    if let Some(c) = doc.result_cap {
        cfg.result_cap = c;
    }
    if let Some(b) = doc.budget {
        cfg.budget = b;
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn hit_to_json(h: &SearchHit) -> Value {
    json!({
        "word": h.word.to_string(),
        "depth": h.depth,
        "coefficient": graded_to_json(&h.coefficient),
        "index": h.index,
        "exact_depth": h.exact_depth,
    })
}

pub fn search_report_to_json(r: &SearchReport) -> Value {
    json!({
        "hits": r.hits.iter().map(hit_to_json).collect::<Vec<_>>(),
        "evaluated": r.evaluated,
        "budget_exhausted": r.budget_exhausted,
    })
}

pub fn approximation_to_json(r: &ApproximationResult) -> Value {
    let steps: Vec<Value> = r
        .steps
        .iter()
        .map(|s| {
            json!({
                "degree": s.degree,
                "coefficients": s.coefficients.iter().map(int_number).collect::<Vec<_>>(),
                "residual_depth": s.residual_depth,
                "dag_size": s.dag_size,
            })
        })
        .collect();
    json!({
        "word": r.word.to_string(),
        "literal_length": r.word.literal_length().to_string(),
        "achieved_depth": r.achieved_depth,
        "exact_checked": r.exact_checked,
        "steps": steps,
    })
}

//! JSON exchange formats: scalar literals, algebra specifications (with
//! optional Hopf blocks) and Rota-Baxter operators.
//!
//! Scalar literals:
//!
//! ```text
//! {"rat": [num, den]}
//! {"cyc": {"d": d, "coeffs": [[num, den], ...]}}     φ(d) power-basis coefficients
//! {"lau": {"<exponent>": [num, den], ...}}            sparse, in v = q^(1/2)
//! {"rf":  {"num": [[num, den], ...], "den": [...]}}   dense in v, constant term first
//! ```
//!
//! Integers are JSON numbers when they fit in 64 bits and decimal strings
//! otherwise. Every scalar is written in its smallest ring, so a rational
//! constant inside a cyclotomic algebra is written as `{"rat": ...}`.
//!
//! An algebra specification names everything by basis label:
//!
//! ```text
//! {
//!   "ring": {"kind": "rational" | "cyclotomic" (with "d") | "laurent" | "ratfun"},
//!   "basis": ["1", "x", ...],
//!   "unit": [[label, scalar], ...],
//!   "mult": [[left, right, [[label, scalar], ...]], ...],      zero products omitted
//!   "coproduct": [[label, [[left, right, scalar], ...]], ...],  optional
//!   "counit": [[label, scalar], ...],                           optional
//!   "antipode": [[label, [[label, scalar], ...]], ...]          optional
//! }
//! ```
//!
//! The three Hopf blocks must appear together or not at all.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::algebra::{AlgebraError, Basis, Element, FiniteDimAlgebra, StructureConstants};
use crate::hopf::{HopfAlgebra, HopfError};
use crate::linalg::{LinalgError, Matrix};
use crate::rota_baxter::{LinearOperator, RbError};
use crate::scalar::{Cyclotomic, LaurentPoly, Rational, RationalFunction, Scalar, ScalarError, ScalarRing, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("JSON error at line {line}, column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },
    #[error("malformed scalar literal {literal}: {msg}")]
    Literal { literal: String, msg: String },
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("Hopf blocks must be given together; missing {0:?}")]
    IncompleteHopf(&'static str),
    #[error("operator document: {0}")]
    Operator(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Rb(#[from] RbError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        DocumentError::Json {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        }
    }
}

fn encode_int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(k) => json!(k),
        None => Value::String(n.to_string()),
    }
}

fn encode_rational(r: &Rational) -> Value {
    json!([encode_int(r.numer()), encode_int(r.denom())])
}

fn encode_poly(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(encode_rational).collect())
}

/// The JSON literal for a scalar.
pub fn encode_scalar(s: &Scalar) -> Value {
    match s {
        Scalar::Rat(r) => json!({ "rat": encode_rational(r) }),
        Scalar::Cyc(c) => {
            let degree = c.field().degree();
            let mut coeffs: Vec<Value> = c.coeffs().iter().map(encode_rational).collect();
            coeffs.resize(degree, json!([0, 1]));
            json!({ "cyc": { "d": c.field().order(), "coeffs": coeffs } })
        }
        Scalar::Lau(p) => {
            let terms: Map<String, Value> = p
                .terms()
                .iter()
                .map(|(e, c)| (e.to_string(), encode_rational(c)))
                .collect();
            json!({ "lau": terms })
        }
        Scalar::Rf(f) => json!({ "rf": { "num": encode_poly(f.numerator()), "den": encode_poly(f.denominator()) } }),
    }
}

fn literal_error(v: &Value, msg: impl Into<String>) -> DocumentError {
    DocumentError::Literal {
        literal: v.to_string(),
        msg: msg.into(),
    }
}

fn decode_int(v: &Value) -> Result<BigInt, DocumentError> {
    match v {
        Value::Number(n) => {
            if let Some(k) = n.as_i64() {
                Ok(BigInt::from(k))
            } else if let Some(k) = n.as_u64() {
                Ok(BigInt::from(k))
            } else {
                Err(literal_error(v, "integers must not be fractional"))
            }
        }
        Value::String(s) => s.parse().map_err(|_| literal_error(v, "not an integer")),
        _ => Err(literal_error(v, "expected an integer")),
    }
}

fn decode_rational(v: &Value) -> Result<Rational, DocumentError> {
    match v.as_array().map(Vec::as_slice) {
        Some([n, d]) => {
            let (n, d) = (decode_int(n)?, decode_int(d)?);
            if d.is_zero() {
                return Err(literal_error(v, "zero denominator"));
            }
            Ok(Rational::new(n, d))
        }
        _ => Err(literal_error(v, "expected [numerator, denominator]")),
    }
}

fn decode_poly(v: &Value) -> Result<UniPoly, DocumentError> {
    let items = v
        .as_array()
        .ok_or_else(|| literal_error(v, "expected a coefficient list"))?;
    Ok(UniPoly::from_coeffs(
        items.iter().map(decode_rational).collect::<Result<_, _>>()?,
    ))
}

/// Parses a literal and checks it belongs to `ring`.
///
/// A bare JSON integer is accepted as shorthand for a rational literal.
pub fn decode_scalar(ring: &ScalarRing, v: &Value) -> Result<Scalar, DocumentError> {
    if v.is_i64() || v.is_u64() {
        return decode_rational(&json!([v, 1])).map(Scalar::from);
    }
    let obj = v
        .as_object()
        .filter(|o| o.len() == 1)
        .ok_or_else(|| literal_error(v, "expected a one-key object"))?;
    let (tag, body) = obj.iter().next().expect("one key");
    let s = match tag.as_str() {
        "rat" => Scalar::from(decode_rational(body)?),
        "cyc" => {
            let d = body
                .get("d")
                .and_then(Value::as_u64)
                .ok_or_else(|| literal_error(v, "missing order d"))?;
            let field = match ring {
                ScalarRing::Cyclotomic(f) if u64::from(f.order()) == d => f.clone(),
                _ => {
                    return Err(literal_error(
                        v,
                        format!("cyclotomic literal of order {d} outside {ring}"),
                    ))
                }
            };
            let coeffs = body
                .get("coeffs")
                .and_then(Value::as_array)
                .ok_or_else(|| literal_error(v, "missing coeffs"))?;
            if coeffs.len() != field.degree() {
                return Err(literal_error(v, format!("expected {} coefficients", field.degree())));
            }
            let coeffs = coeffs.iter().map(decode_rational).collect::<Result<_, _>>()?;
            Scalar::from_cyclotomic(Cyclotomic::from_coeffs(&field, coeffs))
        }
        "lau" => {
            let terms = body
                .as_object()
                .ok_or_else(|| literal_error(v, "expected an exponent map"))?;
            let terms = terms
                .iter()
                .map(|(e, c)| {
                    let e: i32 = e.parse().map_err(|_| literal_error(v, format!("bad exponent {e:?}")))?;
                    Ok((e, decode_rational(c)?))
                })
                .collect::<Result<Vec<_>, DocumentError>>()?;
            Scalar::from_laurent(LaurentPoly::from_terms(terms))
        }
        "rf" => {
            let num = decode_poly(body.get("num").ok_or_else(|| literal_error(v, "missing num"))?)?;
            let den = decode_poly(body.get("den").ok_or_else(|| literal_error(v, "missing den"))?)?;
            Scalar::from_ratfun(RationalFunction::new(num, den)?)
        }
        other => return Err(literal_error(v, format!("unknown tag {other:?}"))),
    };
    ring.check(&s)?;
    Ok(s)
}

/// Line-oriented layout: each key of the top-level object on its own line,
/// and each element of an array-valued key on its own line in compact form.
fn compact_lines(doc: &Value) -> String {
    let compact = |v: &Value| serde_json::to_string(v).expect("values serialize");
    let obj = doc.as_object().expect("documents are objects");
    let mut out = String::from("{\n");
    for (n, (key, value)) in obj.iter().enumerate() {
        out.push_str(&format!("  {}: ", compact(&Value::String(key.clone()))));
        match value.as_array() {
            Some(items) if !items.is_empty() && items.iter().any(|i| i.is_array() || i.is_object()) => {
                out.push_str("[\n");
                for (m, item) in items.iter().enumerate() {
                    let sep = if m + 1 < items.len() { "," } else { "" };
                    out.push_str(&format!("    {}{sep}\n", compact(item)));
                }
                out.push_str("  ]");
            }
            _ => out.push_str(&compact(value)),
        }
        out.push_str(if n + 1 < obj.len() { ",\n" } else { "\n" });
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RingSpec {
    Rational,
    Cyclotomic { d: u32 },
    Laurent,
    Ratfun,
}

impl RingSpec {
    pub fn from_ring(ring: &ScalarRing) -> Self {
        match ring {
            ScalarRing::Rational => RingSpec::Rational,
            ScalarRing::Cyclotomic(f) => RingSpec::Cyclotomic { d: f.order() },
            ScalarRing::Laurent => RingSpec::Laurent,
            ScalarRing::RationalFunction => RingSpec::Ratfun,
        }
    }

    pub fn to_ring(&self) -> ScalarRing {
        match self {
            RingSpec::Rational => ScalarRing::Rational,
            RingSpec::Cyclotomic { d } => ScalarRing::cyclotomic(*d),
            RingSpec::Laurent => ScalarRing::Laurent,
            RingSpec::Ratfun => ScalarRing::RationalFunction,
        }
    }
}

type Terms = Vec<(String, Value)>;
/// `(label, [(left, right, scalar)])` per basis element.
type CoproductTerms = Vec<(String, Vec<(String, String, Value)>)>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpecDocument {
    pub ring: RingSpec,
    pub basis: Vec<String>,
    pub unit: Terms,
    pub mult: Vec<(String, String, Terms)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coproduct: Option<CoproductTerms>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Terms>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<(String, Terms)>>,
}

fn labelled(basis: &Basis, terms: impl IntoIterator<Item = (usize, Scalar)>) -> Terms {
    terms
        .into_iter()
        .map(|(k, s)| (basis.label(k).to_string(), encode_scalar(&s)))
        .collect()
}

impl AlgebraSpecDocument {
    pub fn from_algebra(alg: &FiniteDimAlgebra) -> Self {
        let basis = alg.basis();
        let n = alg.dim();
        let mut mult = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let terms = alg.constants().get(i, j);
                if !terms.is_empty() {
                    mult.push((
                        basis.label(i).to_string(),
                        basis.label(j).to_string(),
                        labelled(basis, terms.iter().cloned()),
                    ));
                }
            }
        }
        AlgebraSpecDocument {
            ring: RingSpec::from_ring(alg.ring()),
            basis: basis.labels().to_vec(),
            unit: labelled(basis, alg.unit().sparse()),
            mult,
            coproduct: None,
            counit: None,
            antipode: None,
        }
    }

    pub fn from_hopf(h: &HopfAlgebra) -> Self {
        let mut doc = AlgebraSpecDocument::from_algebra(h.algebra());
        let basis = h.algebra().basis();
        let n = h.dim();
        let label = |k: usize| basis.label(k).to_string();
        doc.coproduct = Some(
            (0..n)
                .map(|k| {
                    let terms = h
                        .coproduct_terms(k)
                        .map(|(a, b, c)| (label(a), label(b), encode_scalar(c)))
                        .collect();
                    (label(k), terms)
                })
                .collect(),
        );
        doc.counit = Some(labelled(
            basis,
            h.counit().iter().cloned().enumerate().filter(|(_, s)| !s.is_zero()),
        ));
        doc.antipode = Some(
            (0..n)
                .map(|k| (label(k), labelled(basis, Element::new(h.antipode().column(k)).sparse())))
                .collect(),
        );
        doc
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    /// JSON with one top-level key per line and one entry per line inside
    /// the list-valued blocks, plus a trailing newline.
    pub fn to_json(&self) -> String {
        compact_lines(&serde_json::to_value(self).expect("documents serialize"))
    }

    fn index(&self, basis: &Basis, label: &str) -> Result<usize, DocumentError> {
        basis
            .index_of(label)
            .ok_or_else(|| DocumentError::UnknownLabel(label.to_string()))
    }

    fn element(&self, basis: &Basis, ring: &ScalarRing, terms: &Terms) -> Result<Vec<(usize, Scalar)>, DocumentError> {
        terms
            .iter()
            .map(|(l, v)| Ok((self.index(basis, l)?, decode_scalar(ring, v)?)))
            .collect()
    }

    /// The algebra, without associativity or unit checks.
    pub fn to_algebra(&self) -> Result<FiniteDimAlgebra, DocumentError> {
        let ring = self.ring.to_ring();
        let basis = Basis::new(self.basis.iter().cloned())?;
        let n = basis.len();
        let mut sc = StructureConstants::zero(n);
        let mut seen = BTreeMap::new();
        for (l, r, terms) in &self.mult {
            let (i, j) = (self.index(&basis, l)?, self.index(&basis, r)?);
            if seen.insert((i, j), ()).is_some() {
                return Err(DocumentError::Literal {
                    literal: format!("[{l:?}, {r:?}, ...]"),
                    msg: "product given twice".into(),
                });
            }
            sc.set(i, j, self.element(&basis, &ring, terms)?)?;
        }
        let unit = Element::from_sparse(n, &self.element(&basis, &ring, &self.unit)?);
        Ok(FiniteDimAlgebra::new(basis, sc, unit, ring)?)
    }

    pub fn has_hopf(&self) -> bool {
        self.coproduct.is_some() || self.counit.is_some() || self.antipode.is_some()
    }

    /// The Hopf algebra when all three Hopf blocks are present, without
    /// axiom checks.
    pub fn to_hopf(&self) -> Result<Option<HopfAlgebra>, DocumentError> {
        if !self.has_hopf() {
            return Ok(None);
        }
        let coproduct = self
            .coproduct
            .as_ref()
            .ok_or(DocumentError::IncompleteHopf("coproduct"))?;
        let counit = self.counit.as_ref().ok_or(DocumentError::IncompleteHopf("counit"))?;
        let antipode = self
            .antipode
            .as_ref()
            .ok_or(DocumentError::IncompleteHopf("antipode"))?;
        let alg = self.to_algebra()?;
        let ring = alg.ring().clone();
        let basis = alg.basis().clone();
        let n = alg.dim();
        let mut delta = vec![Vec::new(); n];
        for (k, terms) in coproduct {
            let k = self.index(&basis, k)?;
            for (a, b, v) in terms {
                delta[k].push((self.index(&basis, a)?, self.index(&basis, b)?, decode_scalar(&ring, v)?));
            }
        }
        let mut eps = vec![Scalar::zero(); n];
        for (k, s) in self.element(&basis, &ring, counit)? {
            eps[k] = &eps[k] + &s;
        }
        let mut columns = vec![vec![Scalar::zero(); n]; n];
        for (k, terms) in antipode {
            let k = self.index(&basis, k)?;
            for (r, s) in self.element(&basis, &ring, terms)? {
                columns[k][r] = &columns[k][r] + &s;
            }
        }
        let s = Matrix::from_columns(&ring, n, &columns)?;
        Ok(Some(HopfAlgebra::new(alg, delta, eps, s)?))
    }
}

/// `{"dim": n, "weight": scalar, "matrix": [...]}` where `matrix[j]` is the
/// column `P(e_j)`, i.e. the matrix is stored column-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDocument {
    pub dim: usize,
    pub weight: Value,
    pub matrix: Vec<Vec<Value>>,
}

impl OperatorDocument {
    pub fn new(op: &LinearOperator, weight: &Scalar) -> Self {
        let n = op.dim();
        OperatorDocument {
            dim: n,
            weight: encode_scalar(weight),
            matrix: (0..n)
                .map(|j| op.matrix().column(j).iter().map(encode_scalar).collect())
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        compact_lines(&serde_json::to_value(self).expect("documents serialize"))
    }

    /// The operator and weight, with scalars read in `ring`.
    pub fn to_operator(&self, ring: &ScalarRing) -> Result<(LinearOperator, Scalar), DocumentError> {
        let n = self.dim;
        if n == 0 || self.matrix.len() != n || self.matrix.iter().any(|c| c.len() != n) {
            return Err(DocumentError::Operator(format!(
                "matrix must have {n} columns of length {n}"
            )));
        }
        let columns = self
            .matrix
            .iter()
            .map(|c| c.iter().map(|v| decode_scalar(ring, v)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let op = LinearOperator::new(Matrix::from_columns(ring, n, &columns)?)?;
        Ok((op, decode_scalar(ring, &self.weight)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip(ring: &ScalarRing, s: Scalar) {
        let v = encode_scalar(&s);
        assert_eq!(decode_scalar(ring, &v).unwrap(), s, "{v}");
    }

    #[test]
    fn scalar_literals_round_trip() {
        let cyc = ScalarRing::cyclotomic(5);
        let z = cyc.root_of_unity().unwrap();
        round_trip(&cyc, &z.pow(3) + &Scalar::ratio(-2, 7));
        round_trip(&ScalarRing::Rational, Scalar::ratio(3, -4));
        let lau = &Scalar::v_pow(-3) - &Scalar::ratio(1, 2);
        round_trip(&ScalarRing::Laurent, lau.clone());
        let rf = ScalarRing::RationalFunction
            .invert(&(&Scalar::v() + &Scalar::v_pow(-1)))
            .unwrap();
        round_trip(&ScalarRing::RationalFunction, rf);
        let big: BigInt = BigInt::from(10).pow(30);
        round_trip(&ScalarRing::Rational, Scalar::from(Rational::new(big, BigInt::from(7))));
    }

    #[test]
    fn literal_shapes() {
        assert_eq!(encode_scalar(&Scalar::ratio(-1, 3)), json!({"rat": [-1, 3]}));
        assert_eq!(encode_scalar(&Scalar::v_pow(-1)), json!({"lau": {"-1": [1, 1]}}));
        let z3 = ScalarRing::cyclotomic(3).root_of_unity().unwrap();
        assert_eq!(encode_scalar(&z3), json!({"cyc": {"d": 3, "coeffs": [[0, 1], [1, 1]]}}));
    }

    #[test]
    fn literal_errors() {
        let r = ScalarRing::Rational;
        assert!(decode_scalar(&r, &json!({"rat": [1, 0]})).is_err());
        assert!(decode_scalar(&r, &json!({"rat": [1]})).is_err());
        assert!(decode_scalar(&r, &json!({"lau": {"1": [1, 1]}})).is_err());
        assert!(decode_scalar(&r, &json!({"cyc": {"d": 3, "coeffs": [[1, 1], [0, 1]]}})).is_err());
        let c3 = ScalarRing::cyclotomic(3);
        assert!(decode_scalar(&c3, &json!({"cyc": {"d": 3, "coeffs": [[1, 1]]}})).is_err());
        assert!(decode_scalar(&r, &json!({"real": 1.5})).is_err());
        assert_eq!(decode_scalar(&r, &json!({"rat": ["12", 4]})).unwrap(), Scalar::int(3));
    }

    #[test]
    fn json_errors_carry_position() {
        let e = AlgebraSpecDocument::parse("{\n  \"ring\": ").unwrap_err();
        assert!(matches!(e, DocumentError::Json { line: 2, .. }), "{e:?}");
    }
}

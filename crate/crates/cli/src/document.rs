//! JSON algebra documents.
//!
//! ```json
//! {
//!   "field": "Q",
//!   "dim": 4,
//!   "basis": ["e1", "e2", "e3", "e4"],
//!   "brackets": [{"i": "e1", "j": "e2", "terms": [{"k": "e3", "c": "1"}]}],
//!   "omega": "e1^e3 + e2^e4"
//! }
//! ```
//!
//! Indices are 0-based integers or basis names; coefficients are integers or
//! strings in the field syntax. `eta` takes a 1-form. An optional `lattice`
//! block carries `k`, the ordered `ideal`, the derivation `blocks` and the
//! `candidate` matrix (rows, over Q(√(k²−4))).

use lefschetz_core::exterior::KForm;
use lefschetz_core::field::{FieldSpec, Scalar};
use lefschetz_core::lattice::{alpha_field, Block, DerivationBlockSpec, LatticeError};
use lefschetz_core::liealg::{default_names, BracketEntry, LieAlgebra, LieError};
use lefschetz_core::linalg::{Matrix, Vector};
use lefschetz_core::symcon::{verify_contact, verify_symplectic, ContactStructure, SymconError, SymplecticStructure};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("brackets: Jacobi identity fails on ({}, {}, {}) with defect {defect}", .triple.0, .triple.1, .triple.2)]
    Jacobi { triple: (String, String, String), defect: String },
    #[error("{path}: {source}")]
    Lie { path: String, source: LieError },
    #[error("{path}: {source}")]
    Structure { path: String, source: SymconError },
    #[error("lattice: {0}")]
    Lattice(#[from] LatticeError),
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError::Schema { path: path.into(), message: message.into() }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum Index {
    Pos(usize),
    Name(String),
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub k: Index,
    pub c: Coeff,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BracketDoc {
    pub i: Index,
    pub j: Index,
    pub terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum BlockDoc {
    Nilpotent(Vec<Vec<Coeff>>),
    Scaled { m: i64, n: Vec<Vec<Coeff>> },
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub k: i64,
    pub ideal: Vec<Index>,
    pub blocks: Vec<BlockDoc>,
    pub candidate: Vec<Vec<Coeff>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub field: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeDoc>,
}

#[derive(Clone, Debug)]
pub struct LatticeInput {
    pub ideal: Vec<Vector>,
    pub spec: DerivationBlockSpec,
    pub candidate: Matrix,
}

#[derive(Clone, Debug)]
pub struct Parsed {
    pub algebra: LieAlgebra,
    pub symplectic: Option<SymplecticStructure>,
    pub contact: Option<ContactStructure>,
    pub lattice: Option<LatticeInput>,
}

fn resolve(names: &[String], idx: &Index, path: &str) -> Result<usize, DocumentError> {
    match idx {
        Index::Pos(i) if *i < names.len() => Ok(*i),
        Index::Pos(i) => Err(schema(path, format!("index {i} out of range for dimension {}", names.len()))),
        Index::Name(n) => names.iter().position(|x| x == n).ok_or_else(|| schema(path, format!("unknown basis element `{n}`"))),
    }
}

fn scalar(field: &FieldSpec, c: &Coeff, path: &str) -> Result<Scalar, DocumentError> {
    match c {
        Coeff::Int(n) => Ok(field.from_int(*n)),
        Coeff::Text(t) => field.parse(t).map_err(|e| schema(path, e.to_string())),
    }
}

fn matrix(field: &FieldSpec, rows: &[Vec<Coeff>], path: &str) -> Result<Matrix, DocumentError> {
    let width = rows.first().map_or(0, Vec::len);
    let mut out = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(schema(format!("{path}[{r}]"), format!("expected {width} entries, got {}", row.len())));
        }
        let v = row.iter().enumerate().map(|(c, x)| scalar(field, x, &format!("{path}[{r}][{c}]"))).collect::<Result<Vec<_>, _>>()?;
        out.push(v);
    }
    if out.is_empty() {
        return Err(schema(path, "empty matrix"));
    }
    Ok(Matrix::from_rows(field, out))
}

pub fn parse_document(text: &str) -> Result<Parsed, DocumentError> {
    parse_document_with(text, None)
}

/// Parses with an optional field overriding the document's `field`.
pub fn parse_document_with(text: &str, field: Option<&FieldSpec>) -> Result<Parsed, DocumentError> {
    let doc: Document = serde_json::from_str(text)?;
    build(&doc, field)
}

pub fn build(doc: &Document, field: Option<&FieldSpec>) -> Result<Parsed, DocumentError> {
    let field = match field {
        Some(f) => f.clone(),
        None => FieldSpec::from_text(&doc.field).map_err(|e| schema("field", e.to_string()))?,
    };
    if doc.dim == 0 {
        return Err(schema("dim", "dimension must be positive"));
    }
    let names = match &doc.basis {
        Some(b) if b.len() != doc.dim => return Err(schema("basis", format!("{} names for dimension {}", b.len(), doc.dim))),
        Some(b) => b.clone(),
        None => default_names(doc.dim),
    };
    let mut entries = Vec::with_capacity(doc.brackets.len());
    for (n, b) in doc.brackets.iter().enumerate() {
        let p = format!("brackets[{n}]");
        let i = resolve(&names, &b.i, &format!("{p}.i"))?;
        let j = resolve(&names, &b.j, &format!("{p}.j"))?;
        let mut terms = Vec::with_capacity(b.terms.len());
        for (t, term) in b.terms.iter().enumerate() {
            let tp = format!("{p}.terms[{t}]");
            terms.push((resolve(&names, &term.k, &format!("{tp}.k"))?, scalar(&field, &term.c, &format!("{tp}.c"))?));
        }
        entries.push(BracketEntry::new(i, j, terms));
    }
    let algebra = LieAlgebra::new(&field, names, entries).map_err(|source| match source {
        LieError::JacobiViolation(d) => DocumentError::Jacobi { triple: d.names, defect: d.defect },
        source => DocumentError::Lie { path: "brackets".into(), source },
    })?;

    let form = |text: &str, degree: usize, path: &str| -> Result<KForm, DocumentError> {
        algebra.parse_form(text, Some(degree)).map_err(|e| schema(path, e.to_string()))
    };
    let symplectic = match &doc.omega {
        Some(t) => Some(
            verify_symplectic(&algebra, &form(t, 2, "omega")?)
                .map_err(|source| DocumentError::Structure { path: "omega".into(), source })?,
        ),
        None => None,
    };
    let contact = match &doc.eta {
        Some(t) => {
            Some(verify_contact(&algebra, &form(t, 1, "eta")?).map_err(|source| DocumentError::Structure { path: "eta".into(), source })?)
        }
        None => None,
    };
    let lattice = match &doc.lattice {
        Some(l) => Some(build_lattice(&algebra, l)?),
        None => None,
    };
    Ok(Parsed { algebra, symplectic, contact, lattice })
}

fn build_lattice(g: &LieAlgebra, l: &LatticeDoc) -> Result<LatticeInput, DocumentError> {
    let q = FieldSpec::Rationals;
    let ideal = l
        .ideal
        .iter()
        .enumerate()
        .map(|(n, i)| resolve(g.names(), i, &format!("lattice.ideal[{n}]")).map(|i| g.unit(i)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut blocks = Vec::with_capacity(l.blocks.len());
    for (n, b) in l.blocks.iter().enumerate() {
        let p = format!("lattice.blocks[{n}]");
        blocks.push(match b {
            BlockDoc::Nilpotent(rows) => Block::Nilpotent(matrix(&q, rows, &p)?),
            BlockDoc::Scaled { m, n } => Block::Scaled { m: *m, n: matrix(&q, n, &format!("{p}.n"))? },
        });
    }
    let spec = DerivationBlockSpec::new(l.k, blocks)?;
    let (w, _) = alpha_field(l.k)?;
    let candidate = matrix(&w, &l.candidate, "lattice.candidate")?;
    Ok(LatticeInput { ideal, spec, candidate })
}

fn index_of(g: &LieAlgebra, i: usize) -> Index {
    Index::Name(g.names()[i].clone())
}

fn coeff(x: &Scalar) -> Coeff {
    Coeff::Text(x.to_string())
}

/// The document describing `g` with optional ω and η.
pub fn emit(g: &LieAlgebra, omega: Option<&KForm>, eta: Option<&KForm>) -> Document {
    let brackets = g
        .brackets()
        .map(|((i, j), v)| BracketDoc {
            i: index_of(g, i),
            j: index_of(g, j),
            terms: v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| TermDoc { k: index_of(g, k), c: coeff(c) }).collect(),
        })
        .collect();
    Document {
        field: g.field().to_string(),
        dim: g.dim(),
        basis: Some(g.names().to_vec()),
        brackets,
        omega: omega.map(|w| w.render(g.names())),
        eta: eta.map(|e| e.render(g.names())),
        lattice: None,
    }
}

pub fn to_json(doc: &Document) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    const H3: &str = r#"{"field": "Q", "dim": 3, "basis": ["x", "y", "z"],
        "brackets": [{"i": "x", "j": "y", "terms": [{"k": "z", "c": 1}]}], "eta": "z"}"#;

    #[test]
    fn minimal_h3() {
        let p = parse_document(H3).unwrap();
        let expected = LieAlgebra::from_text(&FieldSpec::Rationals, &["x", "y", "z"], &[(0, 1, &[(2, "1")])]).unwrap();
        assert_eq!(p.algebra, expected);
        assert!(p.contact.is_some());
        assert!(p.algebra.is_heisenberg());
    }

    #[test]
    fn integer_indices_and_defaults() {
        let p = parse_document(r#"{"field": "Q", "dim": 3, "brackets": [{"i": 0, "j": 1, "terms": [{"k": 2, "c": "2/3"}]}]}"#).unwrap();
        assert_eq!(p.algebra.names(), &["e1", "e2", "e3"]);
        assert_eq!(p.algebra.bracket(0, 1)[2], FieldSpec::Rationals.from_ratio(2, 3));
    }

    #[test]
    fn errors_carry_paths() {
        let e = parse_document(r#"{"field": "Q", "dim": 2, "brackets": [{"i": 0, "j": 1, "terms": [{"k": 5, "c": 1}]}]}"#).unwrap_err();
        assert_eq!(e.to_string(), "brackets[0].terms[0].k: index 5 out of range for dimension 2");
        let e = parse_document(r#"{"field": "Q", "dim": 2, "brackets": [{"i": 0, "j": 1, "terms": [{"k": 1, "c": "1/"}]}]}"#).unwrap_err();
        assert!(e.to_string().starts_with("brackets[0].terms[0].c:"), "{e}");
        let e = parse_document(r#"{"field": "Q", "dim": 2, "bogus": 1}"#).unwrap_err();
        assert!(matches!(e, DocumentError::Syntax(_)));
        assert!(e.to_string().contains("line 1"), "{e}");
        let e = parse_document(r#"{"field": "Q(sqrt4)", "dim": 2}"#).unwrap_err();
        assert!(e.to_string().starts_with("field:"), "{e}");
    }

    #[test]
    fn jacobi_failure_is_reported() {
        let text = r#"{"field": "Q", "dim": 3, "brackets": [
            {"i": 0, "j": 1, "terms": [{"k": 1, "c": 1}]},
            {"i": 0, "j": 2, "terms": [{"k": 2, "c": 1}]},
            {"i": 1, "j": 2, "terms": [{"k": 0, "c": 1}]}]}"#;
        let e = parse_document(text).unwrap_err();
        assert!(matches!(e, DocumentError::Jacobi { .. }), "{e}");
        assert!(e.to_string().starts_with("brackets: Jacobi identity fails on (e1, e2, e3)"), "{e}");
    }

    #[test]
    fn round_trip() {
        let p = parse_document(H3).unwrap();
        let c = p.contact.unwrap();
        let text = to_json(&emit(&p.algebra, None, Some(&c.eta)));
        let q = parse_document(&text).unwrap();
        assert_eq!(q.algebra, p.algebra);
        assert_eq!(q.contact.unwrap().eta, c.eta);
        assert_eq!(to_json(&emit(&q.algebra, None, Some(&c.eta))), text);
    }

    #[test]
    fn quadratic_coefficients() {
        let text = r#"{"field": "Q(sqrt5)", "dim": 2, "basis": ["a", "b"],
            "brackets": [{"i": "a", "j": "b", "terms": [{"k": "b", "c": "1/2 + 1/2*r"}]}]}"#;
        let p = parse_document(text).unwrap();
        assert_eq!(p.algebra.field(), &FieldSpec::quadratic(5).unwrap());
        assert!(!p.algebra.is_unimodular());
    }
}

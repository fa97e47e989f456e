//! The on-disk document format.
//!
//! One JSON document per file, discriminated by `kind`, with every rational
//! written as a canonical string (`"3"`, `"-1/2"`, `"0"`) - exactness rules
//! out native floats. The digest of a document is the SHA-256 of its
//! canonical (compact) serialization, so reports can bind to the exact
//! inputs they were computed from regardless of on-disk whitespace.

use crate::algebra::{AlgebraPresentation, Element, HomPair};
use crate::decomp::SingularFamily;
use crate::extension::ExtensionLayout;
use crate::mat::RatMatrix;
use crate::rat::{format_rat, parse_rat, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("json parse error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format_version {found:?} (want \"1\")")]
    Version { found: String },
    #[error("expected a {expected} document, found {found}")]
    Kind {
        expected: &'static str,
        found: &'static str,
    },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentFile {
    pub format_version: String,
    #[serde(flatten)]
    pub body: DocumentBody,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DocumentBody {
    Algebra(AlgebraDoc),
    HomPair(HomPairDoc),
    Element(ElementDoc),
    Certificate(CertificateDoc),
    Report(ReportDoc),
}

impl DocumentBody {
    pub fn kind(&self) -> &'static str {
        match self {
            DocumentBody::Algebra(_) => "algebra",
            DocumentBody::HomPair(_) => "hompair",
            DocumentBody::Element(_) => "element",
            DocumentBody::Certificate(_) => "certificate",
            DocumentBody::Report(_) => "report",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub n: usize,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<String>,
    pub forms: Vec<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub layout: Option<LayoutDoc>,
}

/// Index bookkeeping written alongside extended presentations so downstream
/// commands can address the U/V/t/W blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutDoc {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub t: usize,
    pub w: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomPairDoc {
    pub source_n: usize,
    pub source_m: usize,
    pub target_n: usize,
    pub target_m: usize,
    pub f: Vec<Vec<String>>,
    pub psi: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementDoc {
    pub n: usize,
    pub m: usize,
    pub v: Vec<String>,
    pub w: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub m: usize,
    pub members: Vec<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub algebra_digest: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub report: serde_json::Value,
}

pub fn parse_document(text: &str) -> Result<DocumentFile, DocError> {
    let doc: DocumentFile = serde_json::from_str(text).map_err(|e| DocError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if doc.format_version != FORMAT_VERSION {
        return Err(DocError::Version {
            found: doc.format_version,
        });
    }
    Ok(doc)
}

/// Pretty serialization for files; ends with a newline.
pub fn serialize_document(doc: &DocumentFile) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// Compact canonical serialization, the digest input.
pub fn canonical_json(doc: &DocumentFile) -> String {
    serde_json::to_string(doc).expect("documents serialize")
}

/// SHA-256 of the canonical serialization, as lowercase hex.
pub fn document_digest(doc: &DocumentFile) -> String {
    let hash = Sha256::digest(canonical_json(doc).as_bytes());
    let mut out = String::with_capacity(64);
    for byte in hash {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

fn wrap(body: DocumentBody) -> DocumentFile {
    DocumentFile {
        format_version: FORMAT_VERSION.to_owned(),
        body,
    }
}

fn matrix_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| format_rat(m.at(i, j))).collect())
        .collect()
}

fn vector_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

pub fn algebra_document(p: &AlgebraPresentation, layout: Option<&ExtensionLayout>) -> DocumentFile {
    wrap(DocumentBody::Algebra(AlgebraDoc {
        n: p.n(),
        m: p.m(),
        label: p.label.clone(),
        forms: p.forms().iter().map(matrix_strings).collect(),
        layout: layout.map(|l| LayoutDoc {
            u: l.u_indices.clone(),
            v: l.v_indices.clone(),
            t: l.t_index,
            w: l.w_indices.clone(),
        }),
    }))
}

pub fn hompair_document(
    source: (usize, usize),
    target: (usize, usize),
    h: &HomPair,
) -> DocumentFile {
    wrap(DocumentBody::HomPair(HomPairDoc {
        source_n: source.0,
        source_m: source.1,
        target_n: target.0,
        target_m: target.1,
        f: matrix_strings(&h.f),
        psi: matrix_strings(&h.psi),
    }))
}

pub fn element_document(n: usize, m: usize, e: &Element) -> DocumentFile {
    wrap(DocumentBody::Element(ElementDoc {
        n,
        m,
        v: vector_strings(&e.v),
        w: vector_strings(&e.w),
    }))
}

pub fn certificate_document(
    m: usize,
    family: &SingularFamily,
    algebra_digest: Option<String>,
) -> DocumentFile {
    wrap(DocumentBody::Certificate(CertificateDoc {
        m,
        members: family.members.iter().map(matrix_strings).collect(),
        algebra_digest,
    }))
}

pub fn report_document(report: serde_json::Value) -> DocumentFile {
    wrap(DocumentBody::Report(ReportDoc { report }))
}

fn rat_at(s: &str, path: impl Fn() -> String) -> Result<Rat, DocError> {
    parse_rat(s).map_err(|e| DocError::Field {
        path: path(),
        message: e.to_string(),
    })
}

fn matrix_from_strings(
    rows: &[Vec<String>],
    want_rows: usize,
    want_cols: usize,
    path: &str,
) -> Result<RatMatrix, DocError> {
    if rows.len() != want_rows {
        return Err(DocError::Field {
            path: path.to_owned(),
            message: format!("expected {want_rows} rows, found {}", rows.len()),
        });
    }
    let mut out = Vec::with_capacity(want_rows);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != want_cols {
            return Err(DocError::Field {
                path: format!("{path}[{i}]"),
                message: format!("expected {want_cols} entries, found {}", row.len()),
            });
        }
        let mut parsed = Vec::with_capacity(want_cols);
        for (j, s) in row.iter().enumerate() {
            parsed.push(rat_at(s, || format!("{path}[{i}][{j}]"))?);
        }
        out.push(parsed);
    }
    Ok(RatMatrix::from_rows(out))
}

fn vector_from_strings(v: &[String], want: usize, path: &str) -> Result<Vec<Rat>, DocError> {
    if v.len() != want {
        return Err(DocError::Field {
            path: path.to_owned(),
            message: format!("expected {want} entries, found {}", v.len()),
        });
    }
    v.iter()
        .enumerate()
        .map(|(i, s)| rat_at(s, || format!("{path}[{i}]")))
        .collect()
}

/// Decodes an algebra document into a presentation plus its optional layout
/// block (left raw; [`layout_from_doc`] rebuilds the full layout).
pub fn decode_algebra(
    doc: &DocumentFile,
) -> Result<(AlgebraPresentation, Option<LayoutDoc>), DocError> {
    let DocumentBody::Algebra(a) = &doc.body else {
        return Err(DocError::Kind {
            expected: "algebra",
            found: doc.body.kind(),
        });
    };
    if a.forms.len() != a.m {
        return Err(DocError::Field {
            path: "forms".into(),
            message: format!("expected {} forms, found {}", a.m, a.forms.len()),
        });
    }
    let mut forms = Vec::with_capacity(a.m);
    for (k, f) in a.forms.iter().enumerate() {
        forms.push(matrix_from_strings(f, a.n, a.n, &format!("forms[{k}]"))?);
    }
    let mut p = AlgebraPresentation::new(a.n, a.m, forms).map_err(|e| DocError::Field {
        path: "forms".into(),
        message: e.to_string(),
    })?;
    if let Some(label) = &a.label {
        p = p.with_label(label.clone());
    }
    Ok((p, a.layout.clone()))
}

/// Rebuilds a full [`ExtensionLayout`] from its document block by recovering
/// the base presentation as the quotient by the recorded `U + t` ideal.
pub fn layout_from_doc(
    extended: &AlgebraPresentation,
    layout: &LayoutDoc,
) -> Result<ExtensionLayout, DocError> {
    let bad = |message: String| DocError::Field {
        path: "layout".into(),
        message,
    };
    let u_basis: Vec<Vec<Rat>> = layout
        .u
        .iter()
        .map(|&i| {
            if i >= extended.n() {
                return Err(bad(format!("u index {i} out of range")));
            }
            let mut v = vec![Rat::zero(); extended.n()];
            v[i] = num_traits::One::one();
            Ok(v)
        })
        .collect::<Result<_, _>>()?;
    if layout.t >= extended.m() {
        return Err(bad(format!("t index {} out of range", layout.t)));
    }
    let mut t = vec![Rat::zero(); extended.m()];
    t[layout.t] = num_traits::One::one();
    let base = extended
        .quotient_by_graded_ideal(&u_basis, &[t])
        .map_err(|e| bad(format!("recorded U + t span is not an ideal: {e}")))?;
    let full = ExtensionLayout {
        base,
        u_indices: layout.u.clone(),
        v_indices: layout.v.clone(),
        t_index: layout.t,
        w_indices: layout.w.clone(),
    };
    full.conforms(extended).map_err(|e| bad(e.to_string()))?;
    Ok(full)
}

pub fn decode_hompair(doc: &DocumentFile) -> Result<(HomPairDoc, HomPair), DocError> {
    let DocumentBody::HomPair(h) = &doc.body else {
        return Err(DocError::Kind {
            expected: "hompair",
            found: doc.body.kind(),
        });
    };
    let f = matrix_from_strings(&h.f, h.target_n, h.source_n, "f")?;
    let psi = matrix_from_strings(&h.psi, h.target_m, h.source_m, "psi")?;
    Ok((h.clone(), HomPair { f, psi }))
}

pub fn decode_element(doc: &DocumentFile) -> Result<(usize, usize, Element), DocError> {
    let DocumentBody::Element(e) = &doc.body else {
        return Err(DocError::Kind {
            expected: "element",
            found: doc.body.kind(),
        });
    };
    let v = vector_from_strings(&e.v, e.n, "v")?;
    let w = vector_from_strings(&e.w, e.m, "w")?;
    Ok((e.n, e.m, Element::new(v, w)))
}

pub fn decode_certificate(
    doc: &DocumentFile,
) -> Result<(SingularFamily, Option<String>), DocError> {
    let DocumentBody::Certificate(c) = &doc.body else {
        return Err(DocError::Kind {
            expected: "certificate",
            found: doc.body.kind(),
        });
    };
    let mut members = Vec::with_capacity(c.members.len());
    for (i, mtx) in c.members.iter().enumerate() {
        members.push(matrix_from_strings(
            mtx,
            c.m,
            c.m,
            &format!("members[{i}]"),
        )?);
    }
    Ok((SingularFamily { members }, c.algebra_digest.clone()))
}

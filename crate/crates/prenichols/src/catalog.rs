//! Bundled data: braiding matrices, presentations, named elements, basis
//! specs, product forms, representations, step identities and the
//! forced-relation instances.
//!
//! Everything is stored as TOML data files in the expression grammar plus the
//! braiding-matrix exponent format, embedded at compile time and also
//! loadable from paths. Expressions may reference named elements of the same
//! entry with `@name`; references are substituted textually (parenthesized)
//! before parsing.

use std::collections::BTreeMap;

use serde::Deserialize;
use thiserror::Error;

use crate::braiding::{BraidingError, BraidingMatrix, MultiDegree};
use crate::freealg::{parse_expression, parse_scalar, ExprError, FreeElement};
use crate::quotient::{BasisSpec, Height, Presentation, ProductForm, QuotientError};
use crate::repcheck::MatrixRep;
use crate::scalar::Cyclotomic;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry '{0}'")]
    UnknownEntry(String),
    #[error("catalog file is not valid TOML: {0}")]
    Toml(String),
    #[error("validation failure in '{entry}': {message}")]
    Validation { entry: String, message: String },
    #[error("expression error in '{entry}' ({context}): {source}")]
    Expr {
        entry: String,
        context: String,
        source: ExprError,
    },
    #[error(transparent)]
    Braiding(#[from] BraidingError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

/// Expected outcome kinds for step identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepExpect {
    Zero,
    Nonzero,
    /// the two sides are not proportional for any scalar
    NotProportional,
}

/// A derived identity from the proofs, checked by the zero (or
/// proportionality) test in a named algebra of the entry.
#[derive(Debug, Clone)]
pub struct StepIdentity {
    pub id: String,
    pub algebra: String,
    pub expr: String,
    /// second side, only for proportionality checks
    pub rhs: Option<String>,
    pub expect: StepExpect,
    pub note: String,
    /// echelon-zone override for heavyweight degrees
    pub word_bound: Option<usize>,
}

/// A primitivity claim in a named algebra of the entry.
#[derive(Debug, Clone)]
pub struct PrimitiveCheck {
    pub id: String,
    pub algebra: String,
    pub expr: String,
    pub expect: bool,
}

/// A forced-relation check bundled with an entry.
#[derive(Debug, Clone)]
pub struct VerdictCheck {
    pub id: String,
    pub relation: String,
    pub lower: Vec<String>,
    pub expect: String,
    pub conditional: bool,
}

pub struct CatalogEntry {
    pub name: String,
    pub braiding: BraidingMatrix,
    pub elements: BTreeMap<String, FreeElement>,
    pub presentations: BTreeMap<String, Presentation>,
    pub basis_specs: BTreeMap<String, BasisSpec>,
    pub product_forms: BTreeMap<String, ProductForm>,
    pub representation: Option<MatrixRep>,
    pub rep_nonzero_expected: bool,
    pub rep_note: String,
    pub steps: Vec<StepIdentity>,
    pub primitives: Vec<PrimitiveCheck>,
    pub verdicts: Vec<VerdictCheck>,
    /// element sources, kept for `@` resolution in later expressions
    raw_element_src: BTreeMap<String, String>,
}

impl CatalogEntry {
    fn new_empty(name: String, braiding: BraidingMatrix) -> Self {
        CatalogEntry {
            name,
            braiding,
            elements: BTreeMap::new(),
            presentations: BTreeMap::new(),
            basis_specs: BTreeMap::new(),
            product_forms: BTreeMap::new(),
            representation: None,
            rep_nonzero_expected: false,
            rep_note: String::new(),
            steps: Vec::new(),
            primitives: Vec::new(),
            verdicts: Vec::new(),
            raw_element_src: BTreeMap::new(),
        }
    }

    pub fn presentation(&self, name: &str) -> Result<&Presentation, CatalogError> {
        self.presentations.get(name).ok_or_else(|| CatalogError::Validation {
            entry: self.name.clone(),
            message: format!("no presentation named '{}'", name),
        })
    }

    /// Parse an expression in this entry's context (with `@` references).
    pub fn parse(&self, expr: &str) -> Result<FreeElement, CatalogError> {
        let resolved = resolve_refs(expr, &self.raw_element_src).map_err(|message| {
            CatalogError::Validation {
                entry: self.name.clone(),
                message,
            }
        })?;
        parse_expression(&resolved, &self.braiding).map_err(|e| CatalogError::Expr {
            entry: self.name.clone(),
            context: expr.to_string(),
            source: e,
        })
    }
}

/// Substitute `@name` references with the parenthesized element source.
fn resolve_refs(expr: &str, elements: &BTreeMap<String, String>) -> Result<String, String> {
    let bytes = expr.as_bytes();
    let mut out = String::with_capacity(expr.len());
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'@' {
            let start = i + 1;
            let mut end = start;
            while end < bytes.len()
                && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_')
            {
                end += 1;
            }
            let name = &expr[start..end];
            match elements.get(name) {
                Some(src) => {
                    out.push('(');
                    out.push_str(src);
                    out.push(')');
                }
                None => return Err(format!("unknown element reference '@{}'", name)),
            }
            i = end;
        } else {
            out.push(bytes[i] as char);
            i += 1;
        }
    }
    Ok(out)
}

// ---- raw file schema -------------------------------------------------------

#[derive(Deserialize)]
struct EntryFile {
    name: String,
    conductor: u64,
    rank: usize,
    q: Vec<Vec<i64>>,
    #[serde(default)]
    elements: BTreeMap<String, String>,
    #[serde(default)]
    element_degrees: BTreeMap<String, Vec<u32>>,
    #[serde(default)]
    presentations: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    basis_specs: Vec<BasisSpecFile>,
    #[serde(default)]
    product_forms: Vec<ProductFormFile>,
    representation: Option<RepresentationFile>,
    #[serde(default)]
    steps: Vec<StepFile>,
    #[serde(default)]
    primitives: Vec<PrimitiveFile>,
    #[serde(default)]
    verdicts: Vec<VerdictFile>,
}

#[derive(Deserialize)]
struct BasisSpecFile {
    name: String,
    /// entries `[label, degree, height]`; height 0 means unbounded
    generators: Vec<(String, Vec<u32>, u32)>,
}

#[derive(Deserialize)]
struct ProductFormFile {
    name: String,
    #[serde(default)]
    numerator: Vec<Vec<u32>>,
    #[serde(default)]
    denominator: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
struct RepresentationFile {
    dimension: usize,
    matrices: Vec<Vec<Vec<String>>>,
    /// whether evaluating the named elements is expected to certify
    /// nonvanishing (the bundled matrices do not: see the entry notes)
    #[serde(default)]
    nonzero_expected: bool,
    #[serde(default)]
    note: String,
}

#[derive(Deserialize)]
struct StepFile {
    id: String,
    algebra: String,
    expr: String,
    rhs: Option<String>,
    expect: String,
    #[serde(default)]
    note: String,
    word_bound: Option<usize>,
}

#[derive(Deserialize)]
struct PrimitiveFile {
    id: String,
    algebra: String,
    expr: String,
    expect: bool,
}

#[derive(Deserialize)]
struct VerdictFile {
    id: String,
    relation: String,
    #[serde(default)]
    lower: Vec<String>,
    expect: String,
    #[serde(default)]
    conditional: bool,
}

/// One machine-checkable instance of a defining-relation lemma.
#[derive(Debug, Clone)]
pub struct LemmaInstance {
    pub id: String,
    pub note: String,
    pub braiding: BraidingMatrix,
    pub relation: String,
    pub lower: Vec<String>,
    pub expect: String,
    pub conditional: bool,
    pub word_bound: Option<usize>,
}

#[derive(Deserialize)]
struct LemmaFile {
    #[serde(default)]
    instances: Vec<LemmaInstanceFile>,
}

#[derive(Deserialize)]
struct LemmaInstanceFile {
    id: String,
    #[serde(default)]
    note: String,
    conductor: u64,
    rank: usize,
    q: Vec<Vec<i64>>,
    relation: String,
    #[serde(default)]
    lower: Vec<String>,
    expect: String,
    #[serde(default)]
    conditional: bool,
    word_bound: Option<usize>,
}

pub const ENTRY_NAMES: [&str; 3] = ["g23-a", "g23-a-twist", "g23-b"];

fn embedded_entry(name: &str) -> Option<&'static str> {
    match name {
        "g23-a" => Some(include_str!("../catalog/g23-a.toml")),
        "g23-a-twist" => Some(include_str!("../catalog/g23-a-twist.toml")),
        "g23-b" => Some(include_str!("../catalog/g23-b.toml")),
        _ => None,
    }
}

/// Load and fully validate one bundled entry.
pub fn load_entry(name: &str) -> Result<CatalogEntry, CatalogError> {
    let text =
        embedded_entry(name).ok_or_else(|| CatalogError::UnknownEntry(name.to_string()))?;
    load_entry_from_str(text)
}

/// Load an entry from file text (used by the CLI for external files).
pub fn load_entry_from_str(text: &str) -> Result<CatalogEntry, CatalogError> {
    let file: EntryFile =
        toml::from_str(text).map_err(|e| CatalogError::Toml(e.to_string()))?;
    let entry_name = file.name.clone();
    let fail = |message: String| CatalogError::Validation {
        entry: entry_name.clone(),
        message,
    };
    if file.q.len() != file.rank {
        return Err(fail(format!(
            "rank {} does not match {} matrix rows",
            file.rank,
            file.q.len()
        )));
    }
    let braiding = BraidingMatrix::new(file.conductor, file.q)?;
    // Lemma 2.5 scope: vertex labels 1 are rejected at catalog load.
    if braiding.has_one_on_diagonal() {
        return Err(fail("a diagonal entry equals 1".into()));
    }
    let mut entry = CatalogEntry::new_empty(file.name.clone(), braiding.clone());
    entry.raw_element_src = file.elements.clone();

    for (name, src) in &file.elements {
        let resolved = resolve_refs(src, &file.elements)
            .map_err(|message| fail(message))?;
        let elem = parse_expression(&resolved, &braiding).map_err(|e| CatalogError::Expr {
            entry: entry.name.clone(),
            context: format!("element {}", name),
            source: e,
        })?;
        if let Some(expected) = file.element_degrees.get(name) {
            let d = elem.degree().ok_or_else(|| {
                fail(format!("element {} is not homogeneous", name))
            })?;
            if d != MultiDegree(expected.clone()) {
                return Err(fail(format!(
                    "element {} has degree {} but the catalog declares {:?}",
                    name, d, expected
                )));
            }
        }
        entry.elements.insert(name.clone(), elem);
    }
    for (pname, rel_srcs) in &file.presentations {
        let mut relations = Vec::new();
        for src in rel_srcs {
            let resolved =
                resolve_refs(src, &file.elements).map_err(|message| fail(message))?;
            let elem =
                parse_expression(&resolved, &braiding).map_err(|e| CatalogError::Expr {
                    entry: entry.name.clone(),
                    context: format!("presentation {}", pname),
                    source: e,
                })?;
            relations.push(elem);
        }
        let pres = Presentation::new(
            format!("{}:{}", file.name, pname),
            braiding.clone(),
            relations,
        )?;
        entry.presentations.insert(pname.clone(), pres);
    }
    for spec in &file.basis_specs {
        let generators = spec
            .generators
            .iter()
            .map(|(label, deg, height)| {
                let h = match height {
                    0 => Ok(Height::Infinite),
                    2 => Ok(Height::Two),
                    other => Err(fail(format!(
                        "basis generator {} has unsupported height {}",
                        label, other
                    ))),
                }?;
                // labelled generators must match their named element's degree
                if let Some(elem) = entry.elements.get(label) {
                    let d = elem.degree().expect("elements are homogeneous");
                    if d.0 != *deg {
                        return Err(fail(format!(
                            "basis generator {} has degree {} but declares {:?}",
                            label, d, deg
                        )));
                    }
                }
                Ok((MultiDegree(deg.clone()), h))
            })
            .collect::<Result<Vec<_>, _>>()?;
        entry
            .basis_specs
            .insert(spec.name.clone(), BasisSpec { generators });
    }
    for form in &file.product_forms {
        entry.product_forms.insert(
            form.name.clone(),
            ProductForm::new(
                form.numerator.iter().map(|v| MultiDegree(v.clone())).collect(),
                form.denominator.iter().map(|v| MultiDegree(v.clone())).collect(),
            ),
        );
    }
    if let Some(rep) = &file.representation {
        let mut matrices = Vec::new();
        for (gen, rows) in rep.matrices.iter().enumerate() {
            let mut matrix = Vec::new();
            for row in rows {
                let parsed: Result<Vec<Cyclotomic>, _> = row
                    .iter()
                    .map(|s| {
                        parse_scalar(s).map_err(|e| CatalogError::Expr {
                            entry: entry.name.clone(),
                            context: format!("representation of generator {}", gen + 1),
                            source: e,
                        })
                    })
                    .collect();
                matrix.push(parsed?);
            }
            matrices.push(matrix);
        }
        entry.representation = Some(
            MatrixRep::new(rep.dimension, matrices).map_err(|e| fail(e.to_string()))?,
        );
        entry.rep_nonzero_expected = rep.nonzero_expected;
        entry.rep_note = rep.note.clone();
    }
    for s in &file.steps {
        let expect = match s.expect.as_str() {
            "zero" => StepExpect::Zero,
            "nonzero" => StepExpect::Nonzero,
            "not-proportional" => StepExpect::NotProportional,
            other => return Err(fail(format!("unknown step expectation '{}'", other))),
        };
        entry.steps.push(StepIdentity {
            id: s.id.clone(),
            algebra: s.algebra.clone(),
            expr: s.expr.clone(),
            rhs: s.rhs.clone(),
            expect,
            note: s.note.clone(),
            word_bound: s.word_bound,
        });
    }
    for p in &file.primitives {
        entry.primitives.push(PrimitiveCheck {
            id: p.id.clone(),
            algebra: p.algebra.clone(),
            expr: p.expr.clone(),
            expect: p.expect,
        });
    }
    for v in &file.verdicts {
        entry.verdicts.push(VerdictCheck {
            id: v.id.clone(),
            relation: v.relation.clone(),
            lower: v.lower.clone(),
            expect: v.expect.clone(),
            conditional: v.conditional,
        });
    }
    Ok(entry)
}

/// All bundled forced-relation lemma instances.
pub fn lemma_instances() -> Result<Vec<LemmaInstance>, CatalogError> {
    let text = include_str!("../catalog/lemmas.toml");
    let file: LemmaFile = toml::from_str(text).map_err(|e| CatalogError::Toml(e.to_string()))?;
    let mut out = Vec::new();
    for inst in file.instances {
        if inst.q.len() != inst.rank {
            return Err(CatalogError::Validation {
                entry: inst.id.clone(),
                message: "rank does not match matrix rows".into(),
            });
        }
        let braiding = BraidingMatrix::new(inst.conductor, inst.q)?;
        // instance matrices may not carry label 1 either
        if braiding.has_one_on_diagonal() {
            return Err(CatalogError::Validation {
                entry: inst.id.clone(),
                message: "a diagonal entry equals 1".into(),
            });
        }
        // expressions must parse
        parse_expression(&inst.relation, &braiding).map_err(|e| CatalogError::Expr {
            entry: inst.id.clone(),
            context: "relation".into(),
            source: e,
        })?;
        for (k, l) in inst.lower.iter().enumerate() {
            parse_expression(l, &braiding).map_err(|e| CatalogError::Expr {
                entry: inst.id.clone(),
                context: format!("lower[{}]", k),
                source: e,
            })?;
        }
        out.push(LemmaInstance {
            id: inst.id,
            note: inst.note,
            braiding,
            relation: inst.relation,
            lower: inst.lower,
            expect: inst.expect,
            conditional: inst.conditional,
            word_bound: inst.word_bound,
        });
    }
    Ok(out)
}

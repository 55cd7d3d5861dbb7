//! JSON input documents.
//!
//! Phases are written as exponent strings `"p/q"` (or an integer) in
//! `[0, 1)`; cochain values are listed with the first argument varying
//! slowest. Group elements are indices into the group's table, with the
//! identity at 0.
//!
//! ```json
//! {
//!   "group": { "standard": { "family": "cyclic", "n": 4 } },
//!   "omega": { "cyclic_class": { "p": 2 } },
//!   "symmetrize_omega": true,
//!   "subgroup": "diagonal",
//!   "theta": "solve"
//! }
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{standard_group, FiniteGroup, GroupError, PairEmbedding};
use crate::phases::{
    cohomology_group, cyclic_three_cocycle, symmetrize_in_class, Cochain, Obstruction, Phase, PhaseError,
    SolverConfig, SymmetrizeOutcome,
};
use crate::trace_engine::{solve_admissible_theta, MultiPointDatum, ThetaOutcome, TraceError};
use crate::transgression::DefectDatum;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IoError {
    #[error("malformed document: {0}")]
    Json(String),
    #[error("{field}: {source}")]
    Exponent { field: String, source: PhaseError },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("invalid document: {0}")]
    Invalid(String),
    #[error("no admissible theta: {0:?}")]
    ThetaObstructed(Obstruction),
    #[error("omega has no symmetric representative in its class")]
    NotSymmetrizable,
    #[error(transparent)]
    Phase(#[from] PhaseError),
    #[error(transparent)]
    Trace(#[from] TraceError),
}

impl IoError {
    /// Errors in the document itself, as opposed to failures of the
    /// computations it asks for.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, IoError::Json(_) | IoError::Exponent { .. } | IoError::Group(_) | IoError::Invalid(_))
    }

    pub fn is_budget_exceeded(&self) -> bool {
        match self {
            IoError::Phase(p) => matches!(p, PhaseError::BudgetExceeded { .. }),
            IoError::Trace(t) => t.is_budget_exceeded(),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    /// `n` is ignored for `s3`.
    Standard {
        family: String,
        #[serde(default)]
        n: usize,
    },
    Table(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum OmegaSpec {
    Trivial,
    Values(Vec<String>),
    /// `w(a, b, c) = p a (b + c - [b + c]) / n^2` on `Z/n`.
    CyclicClass { p: usize },
    /// `k` times the computed generator of `H^3` (first invariant factor).
    GeneratorPower { k: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ThetaSpec {
    Trivial,
    Values(Vec<String>),
    #[default]
    Solve,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SubgroupSpec {
    Diagonal,
    Trivial,
    /// All elements `(a, b)` of a subgroup of `G x G`.
    Pairs(Vec<(usize, usize)>),
    /// The subgroup of `G x G` generated by these pairs.
    GeneratedBy(Vec<(usize, usize)>),
    /// An abstract group `H` with `iota(h) = map[h]`.
    Embedding { table: Vec<Vec<usize>>, map: Vec<(usize, usize)> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumDocument {
    pub group: GroupSpec,
    pub omega: OmegaSpec,
    #[serde(default)]
    pub symmetrize_omega: bool,
    pub subgroup: SubgroupSpec,
    #[serde(default)]
    pub theta: ThetaSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefectSpec {
    pub subgroup: SubgroupSpec,
    #[serde(default)]
    pub theta: ThetaSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiPointDocument {
    pub group: GroupSpec,
    #[serde(default = "trivial_omega")]
    pub omega: OmegaSpec,
    pub defects: Vec<DefectSpec>,
}

fn trivial_omega() -> OmegaSpec {
    OmegaSpec::Trivial
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CenterDocument {
    pub group: GroupSpec,
    pub omega: OmegaSpec,
    #[serde(default)]
    pub symmetrize_omega: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohomologyDocument {
    pub group: GroupSpec,
    pub degree: usize,
}

/// A group with a cochain on it, for the cohomology and symmetrize commands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainDocument {
    pub group: GroupSpec,
    pub degree: usize,
    #[serde(default)]
    pub values: Option<Vec<String>>,
    #[serde(default)]
    pub cyclic_class: Option<usize>,
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
}

/// sha256 over the canonical JSON of a parsed document and any extra
/// settings that affect the result.
pub fn document_fingerprint<D: Serialize>(doc: &D, settings: &str) -> String {
    use sha2::{Digest, Sha256};
    let mut h = Sha256::new();
    h.update(serde_json::to_vec(doc).expect("documents serialize"));
    h.update([0u8]);
    h.update(settings.as_bytes());
    hex::encode(h.finalize())
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup, IoError> {
    match spec {
        GroupSpec::Standard { family, n } => Ok(standard_group(family, *n)?),
        GroupSpec::Table(rows) => table_group(rows),
    }
}

fn table_group(rows: &[Vec<usize>]) -> Result<FiniteGroup, IoError> {
    let g = FiniteGroup::from_table(rows)?;
    if g.table_rows() != rows {
        return Err(IoError::Invalid("the identity must be element 0".into()));
    }
    Ok(g)
}

pub fn parse_values(field: &str, g: &FiniteGroup, degree: usize, values: &[String]) -> Result<Cochain, IoError> {
    let phases = values
        .iter()
        .enumerate()
        .map(|(i, s)| {
            Phase::parse_exponent(s).map_err(|source| IoError::Exponent { field: format!("{field}[{i}]"), source })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Cochain::from_values(g, degree, phases).map_err(|source| IoError::Exponent { field: field.into(), source })
}

pub fn cochain_strings(c: &Cochain) -> Vec<String> {
    c.values().iter().map(Phase::to_string).collect()
}

fn cyclic_order(spec: &GroupSpec, g: &FiniteGroup) -> Result<usize, IoError> {
    if let GroupSpec::Standard { family, n } = spec {
        if family == "cyclic" {
            return Ok(*n);
        }
    }
    let n = g.order();
    if n > 1 && (0..n).all(|a| g.mul(a, 1) == (a + 1) % n) {
        Ok(n)
    } else {
        Err(IoError::Invalid("cyclic_class needs Z/n labelled so that a * 1 = a + 1".into()))
    }
}

pub fn build_omega(
    spec: &OmegaSpec,
    group_spec: &GroupSpec,
    g: &FiniteGroup,
    solver: &SolverConfig,
) -> Result<Cochain, IoError> {
    match spec {
        OmegaSpec::Trivial => Ok(Cochain::unit(g, 3)),
        OmegaSpec::Values(v) => parse_values("omega", g, 3, v),
        OmegaSpec::CyclicClass { p } => {
            Ok(cyclic_three_cocycle(cyclic_order(group_spec, g)?, *p))
        }
        OmegaSpec::GeneratorPower { k } => {
            let rep = cohomology_group(g, 3, solver)?;
            let Some(gen) = rep.representatives.first() else {
                return Ok(Cochain::unit(g, 3));
            };
            Ok(Cochain::from_fn(g, 3, |t| gen.get(t).pow(*k)))
        }
    }
}

pub fn build_embedding(spec: &SubgroupSpec, g: &FiniteGroup) -> Result<PairEmbedding, IoError> {
    let n = g.order();
    let pair_index = |&(a, b): &(usize, usize)| -> Result<usize, IoError> {
        if a >= n || b >= n {
            return Err(IoError::Invalid(format!("pair ({a}, {b}) out of range")));
        }
        Ok(a * n + b)
    };
    match spec {
        SubgroupSpec::Diagonal => Ok(PairEmbedding::diagonal(g)),
        SubgroupSpec::Trivial => Ok(PairEmbedding::trivial()),
        SubgroupSpec::Pairs(ps) => {
            let mut el = ps.iter().map(pair_index).collect::<Result<Vec<_>, _>>()?;
            el.sort_unstable();
            el.dedup();
            Ok(PairEmbedding::from_pair_subgroup(g, &el)?)
        }
        SubgroupSpec::GeneratedBy(ps) => {
            let gens = ps.iter().map(pair_index).collect::<Result<Vec<_>, _>>()?;
            let el = g.direct_product(g).closure(&gens);
            Ok(PairEmbedding::from_pair_subgroup(g, &el)?)
        }
        SubgroupSpec::Embedding { table, map } => {
            let h = table_group(table)?;
            Ok(PairEmbedding::new(h, map.clone(), g)?)
        }
    }
}

fn build_theta(
    spec: &ThetaSpec,
    g: &FiniteGroup,
    omega: &Cochain,
    emb: &PairEmbedding,
    solver: &SolverConfig,
) -> Result<Cochain, IoError> {
    match spec {
        ThetaSpec::Trivial => Ok(Cochain::unit(emb.subgroup(), 2)),
        ThetaSpec::Values(v) => parse_values("theta", emb.subgroup(), 2, v),
        ThetaSpec::Solve => match solve_admissible_theta(g, omega, emb, solver)? {
            ThetaOutcome::Solved { theta, .. } => Ok(theta),
            ThetaOutcome::Obstructed(o) => Err(IoError::ThetaObstructed(o)),
        },
    }
}

/// The group, omega (symmetrized if requested) and embedding of a datum
/// document, without theta.
pub fn resolve_parts(
    doc: &DatumDocument,
    solver: &SolverConfig,
) -> Result<(FiniteGroup, Cochain, PairEmbedding), IoError> {
    let g = build_group(&doc.group)?;
    let mut omega = build_omega(&doc.omega, &doc.group, &g, solver)?;
    if doc.symmetrize_omega {
        omega = symmetrized(&omega, solver)?;
    }
    let emb = build_embedding(&doc.subgroup, &g)?;
    Ok((g, omega, emb))
}

pub fn resolve_center(doc: &CenterDocument, solver: &SolverConfig) -> Result<(FiniteGroup, Cochain), IoError> {
    let g = build_group(&doc.group)?;
    let mut omega = build_omega(&doc.omega, &doc.group, &g, solver)?;
    if doc.symmetrize_omega {
        omega = symmetrized(&omega, solver)?;
    }
    Ok((g, omega))
}

fn symmetrized(omega: &Cochain, solver: &SolverConfig) -> Result<Cochain, IoError> {
    match symmetrize_in_class(omega, solver)? {
        SymmetrizeOutcome::Symmetric { symmetric, .. } => Ok(symmetric),
        _ => Err(IoError::NotSymmetrizable),
    }
}

/// Builds the datum with certificates computed but not enforced.
pub fn resolve_datum(doc: &DatumDocument, solver: &SolverConfig) -> Result<DefectDatum, IoError> {
    let (g, omega, emb) = resolve_parts(doc, solver)?;
    let theta = build_theta(&doc.theta, &g, &omega, &emb, solver)?;
    DefectDatum::new(g, omega, emb, theta).map_err(|e| IoError::Invalid(e.to_string()))
}

pub fn resolve_multi_point(doc: &MultiPointDocument, solver: &SolverConfig) -> Result<MultiPointDatum, IoError> {
    let g = build_group(&doc.group)?;
    let omega = build_omega(&doc.omega, &doc.group, &g, solver)?;
    let defects = doc
        .defects
        .iter()
        .map(|d| {
            let emb = build_embedding(&d.subgroup, &g)?;
            let theta = build_theta(&d.theta, &g, &omega, &emb, solver)?;
            Ok((emb, theta))
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(MultiPointDatum::new(g, &omega, defects)?)
}

pub fn resolve_cochain(doc: &CochainDocument) -> Result<Cochain, IoError> {
    let g = build_group(&doc.group)?;
    match (&doc.values, doc.cyclic_class) {
        (Some(v), None) => parse_values("values", &g, doc.degree, v),
        (None, Some(p)) if doc.degree == 3 => Ok(cyclic_three_cocycle(cyclic_order(&doc.group, &g)?, p)),
        (None, None) => Ok(Cochain::unit(&g, doc.degree)),
        _ => Err(IoError::Invalid("give either values or cyclic_class (degree 3)".into())),
    }
}

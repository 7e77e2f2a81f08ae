//! JSON interchange for digroups, representations and short exact sequences.
//!
//! Scalars are canonical strings (`"3"`, `"-1/2"`), matrices are row-major
//! nested arrays, and operator families are maps keyed by `"g,α"` with both
//! parts written as indices. Maps are ordered, so writing the same object twice
//! gives byte-identical output.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::digroup::{Digroup, Element, FiniteGroup, GAction};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Vector};
use crate::ext::{CocycleFamily, ShortExactSeq};
use crate::reps::Representation;

pub type MatrixJson = Vec<Vec<String>>;
pub type FamilyJson = BTreeMap<String, MatrixJson>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Table { order: usize, mul: Vec<Vec<usize>> },
    Cyclic { cyclic: usize },
    Symmetric { symmetric: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    /// Only `"trivial"` is accepted.
    Named(String),
    /// `table[g][α] = g∙α`.
    Table(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DigroupFile {
    pub group: GroupSpec,
    pub halo_size: usize,
    pub action: ActionSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub digroup: DigroupFile,
    #[serde(default = "default_field")]
    pub field: String,
    pub dim: usize,
    pub lambda: FamilyJson,
    pub rho: FamilyJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SesFile {
    pub representation: RepFile,
    /// Basis of the subrepresentation, one vector per entry.
    pub subspace: Vec<Vec<String>>,
}

fn default_field() -> String {
    Field::Rational.to_string()
}

/// How strictly a file is ingested.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LoadOptions {
    /// Reinterpret scalars in this field instead of the one named in the file.
    pub field: Option<Field>,
    /// Reject objects violating their axioms. With `false`, structural
    /// problems (shapes, missing keys) are still errors but axiom failures are
    /// left for the caller to report.
    pub validate: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            field: None,
            validate: true,
        }
    }
}

pub fn element_key(x: Element) -> String {
    format!("{},{}", x.g, x.alpha)
}

pub fn matrix_to_json(m: &Matrix) -> MatrixJson {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(|s| s.to_canonical_string()).collect())
        .collect()
}

pub fn vector_to_json(v: &[crate::exactla::Scalar]) -> Vec<String> {
    v.iter().map(|s| s.to_canonical_string()).collect()
}

pub fn matrix_from_json(field: Field, rows: usize, cols: usize, m: &MatrixJson, what: &str) -> Result<Matrix> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(Error::Format(format!("{what}: expected a {rows}x{cols} matrix")));
    }
    let data = m.iter().flatten().map(|s| field.parse(s)).collect::<Result<Vec<_>>>()?;
    Matrix::new(field, rows, cols, data)
}

pub fn vector_from_json(field: Field, len: usize, v: &[String], what: &str) -> Result<Vector> {
    if v.len() != len {
        return Err(Error::Format(format!(
            "{what}: expected {len} entries, found {}",
            v.len()
        )));
    }
    v.iter().map(|s| field.parse(s)).collect()
}

/// Keyed by `"g,α"`.
pub fn family_to_json(d: &Digroup, family: &[Matrix]) -> FamilyJson {
    d.elements()
        .zip(family)
        .map(|(x, m)| (element_key(x), matrix_to_json(m)))
        .collect()
}

fn family_from_json(d: &Digroup, field: Field, dim: usize, map: &FamilyJson, what: &str) -> Result<Vec<Matrix>> {
    if map.len() != d.size() {
        return Err(Error::Format(format!(
            "{what}: expected {} entries (one per element), found {}",
            d.size(),
            map.len()
        )));
    }
    d.elements()
        .map(|x| {
            let key = element_key(x);
            let m = map
                .get(&key)
                .ok_or_else(|| Error::Format(format!("{what}: missing entry \"{key}\"")))?;
            matrix_from_json(field, dim, dim, m, &format!("{what}[{key}]"))
        })
        .collect()
}

pub fn cocycle_to_json(d: &Digroup, theta: &CocycleFamily) -> FamilyJson {
    family_to_json(d, &theta.theta)
}

impl DigroupFile {
    /// Describes `d`, naming the group `cyclic` or `symmetric` when its table
    /// is literally the one those constructors build.
    pub fn describe(d: &Digroup) -> Self {
        let group = d.group();
        let n = group.order();
        let table = group.table().to_vec();
        let same = |g: Result<FiniteGroup>| g.map(|g| g.table() == table.as_slice()).unwrap_or(false);
        let group_spec = if same(FiniteGroup::cyclic(n)) {
            GroupSpec::Cyclic { cyclic: n }
        } else if n == 6 && same(FiniteGroup::symmetric(3)) {
            GroupSpec::Symmetric { symmetric: 3 }
        } else if n == 2 && same(FiniteGroup::symmetric(2)) {
            GroupSpec::Symmetric { symmetric: 2 }
        } else {
            GroupSpec::Table { order: n, mul: table }
        };
        let action = if d.action().is_trivial() {
            ActionSpec::Named("trivial".into())
        } else {
            ActionSpec::Table(d.action().table().to_vec())
        };
        DigroupFile {
            group: group_spec,
            halo_size: d.halo_size(),
            action,
        }
    }

    pub fn build(&self, validate: bool) -> Result<Digroup> {
        let group = match &self.group {
            GroupSpec::Cyclic { cyclic } => FiniteGroup::cyclic(*cyclic)?,
            GroupSpec::Symmetric { symmetric } => FiniteGroup::symmetric(*symmetric)?,
            GroupSpec::Table { order, mul } => {
                if mul.len() != *order || mul.iter().any(|r| r.len() != *order) {
                    return Err(Error::Format(format!("group table must be {order}x{order}")));
                }
                if validate {
                    FiniteGroup::from_table(mul.clone())?
                } else {
                    FiniteGroup::unchecked(mul.clone())?
                }
            }
        };
        let action = match &self.action {
            ActionSpec::Named(name) if name == "trivial" => GAction::trivial(group, self.halo_size)?,
            ActionSpec::Named(name) => return Err(Error::Format(format!("unknown action {name:?}"))),
            ActionSpec::Table(t) => {
                if validate {
                    GAction::new(group, self.halo_size, t.clone())?
                } else {
                    GAction::unchecked(group, self.halo_size, t.clone())?
                }
            }
        };
        Ok(Digroup::new(action))
    }
}

impl RepFile {
    pub fn describe(r: &Representation) -> Self {
        let d = r.digroup();
        RepFile {
            digroup: DigroupFile::describe(d),
            field: r.field().to_string(),
            dim: r.dim(),
            lambda: family_to_json(d, r.lambdas()),
            rho: family_to_json(d, r.rhos()),
        }
    }

    pub fn build(&self, opts: LoadOptions) -> Result<Representation> {
        let field = match opts.field {
            Some(f) => f,
            None => self.field.parse()?,
        };
        let d = Arc::new(self.digroup.build(opts.validate)?);
        let lambda = family_from_json(&d, field, self.dim, &self.lambda, "lambda")?;
        let rho = family_from_json(&d, field, self.dim, &self.rho, "rho")?;
        if opts.validate {
            Representation::new(d, field, self.dim, lambda, rho)
        } else {
            Representation::unchecked(d, field, self.dim, lambda, rho)
        }
    }
}

impl SesFile {
    pub fn describe(v: &Representation, basis: &[Vector]) -> Self {
        SesFile {
            representation: RepFile::describe(v),
            subspace: basis.iter().map(|b| vector_to_json(b)).collect(),
        }
    }

    /// The ambient representation and the subspace basis, unvalidated as a
    /// sequence; [`ShortExactSeq::from_subspace`] checks stability.
    pub fn build(&self, opts: LoadOptions) -> Result<(Representation, Vec<Vector>)> {
        let v = self.representation.build(opts)?;
        let basis = self
            .subspace
            .iter()
            .enumerate()
            .map(|(i, b)| vector_from_json(v.field(), v.dim(), b, &format!("subspace[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        Ok((v, basis))
    }

    pub fn build_sequence(&self, opts: LoadOptions) -> Result<ShortExactSeq> {
        let (v, basis) = self.build(opts)?;
        ShortExactSeq::from_subspace(&v, &basis)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn representation_to_json(r: &Representation) -> Result<String> {
    to_json_string(&RepFile::describe(r))
}

pub fn representation_from_json(text: &str, opts: LoadOptions) -> Result<Representation> {
    let file: RepFile = serde_json::from_str(text)?;
    file.build(opts)
}

pub fn digroup_to_json(d: &Digroup) -> Result<String> {
    to_json_string(&DigroupFile::describe(d))
}

pub fn digroup_from_json(text: &str, validate: bool) -> Result<Digroup> {
    let file: DigroupFile = serde_json::from_str(text)?;
    file.build(validate)
}

pub fn ses_to_json(v: &Representation, basis: &[Vector]) -> Result<String> {
    to_json_string(&SesFile::describe(v, basis))
}

pub fn ses_from_json(text: &str, opts: LoadOptions) -> Result<(Representation, Vec<Vector>)> {
    let file: SesFile = serde_json::from_str(text)?;
    file.build(opts)
}

/// True for errors caused by unreadable input rather than by mathematics.
pub fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Json(_) | Error::Format(_) | Error::ParseScalar(_) | Error::NotPrime(_) | Error::Dimension(_)
    )
}

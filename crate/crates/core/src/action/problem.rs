//! Problem descriptions and their JSON encoding.
//!
//! ```json
//! {"kind":"free_group","generators":["a","b"],"degree":3,
//!  "images":{"a":[1,0,2],"b":[1,2,0]},"subgroup":[[1,0,2]]}
//! {"kind":"free_product","factors":[{"name":"C2","table":[[0,1],[1,0]]}],
//!  "degree":2,"images":[[[0,1],[1,0]]],"subgroup":[]}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fingrp::{validate_factor_hom, CayleyGroup, GroupError, Permutation};
use crate::words::{Alphabet, FreeProduct};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProblemError {
    #[error("schema error at {field}: {reason}")]
    Schema { field: String, reason: String },
    #[error("{field} is not a homomorphism: images of {a}*{b} disagree")]
    NotAHomomorphism { field: String, a: usize, b: usize },
    #[error("the subgroup generators do not generate a subgroup of the image group")]
    NotASubgroup,
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl ProblemError {
    pub(crate) fn schema(field: impl Into<String>, reason: impl Into<String>) -> Self {
        ProblemError::Schema {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// The offending field for schema and homomorphism errors.
    pub fn field(&self) -> Option<&str> {
        match self {
            ProblemError::Schema { field, .. } | ProblemError::NotAHomomorphism { field, .. } => {
                Some(field)
            }
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedFactor {
    pub name: String,
    pub group: CayleyGroup,
}

/// A subgroup `H = φ⁻¹(S)` of a free group, with `φ` given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGroupProblem {
    pub alphabet: Alphabet,
    pub degree: usize,
    pub images: Vec<Permutation>,
    pub subgroup: Vec<Permutation>,
}

/// A subgroup `H = φ⁻¹(S)` of a free product, with `φ` given per factor element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeProductProblem {
    pub factors: Vec<NamedFactor>,
    pub degree: usize,
    pub images: Vec<Vec<Permutation>>,
    pub subgroup: Vec<Permutation>,
}

impl FreeProductProblem {
    pub fn free_product(&self) -> FreeProduct {
        FreeProduct::new(self.factors.iter().map(|f| f.group.clone()).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Problem {
    FreeGroup(FreeGroupProblem),
    FreeProduct(FreeProductProblem),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawProblem {
    FreeGroup {
        generators: Vec<String>,
        degree: usize,
        images: BTreeMap<String, Vec<usize>>,
        subgroup: Vec<Vec<usize>>,
    },
    FreeProduct {
        factors: Vec<RawFactor>,
        degree: usize,
        images: Vec<Vec<Vec<usize>>>,
        subgroup: Vec<Vec<usize>>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFactor {
    name: String,
    table: Vec<Vec<usize>>,
}

fn perm(field: String, images: Vec<usize>, degree: usize) -> Result<Permutation, ProblemError> {
    if images.len() != degree {
        return Err(ProblemError::schema(
            field,
            format!("expected {degree} entries, found {}", images.len()),
        ));
    }
    Permutation::new(images).map_err(|_| ProblemError::schema(field, "not a bijection"))
}

fn subgroup(raw: Vec<Vec<usize>>, degree: usize) -> Result<Vec<Permutation>, ProblemError> {
    raw.into_iter()
        .enumerate()
        .map(|(k, p)| perm(format!("subgroup[{k}]"), p, degree))
        .collect()
}

impl Problem {
    /// Parses and validates a problem, including the homomorphism property of
    /// each factor's images.
    pub fn from_json(text: &str) -> Result<Problem, ProblemError> {
        let raw: RawProblem = serde_json::from_str(text)
            .map_err(|e| ProblemError::schema("<document>", e.to_string()))?;
        match raw {
            RawProblem::FreeGroup {
                generators,
                degree,
                mut images,
                subgroup: sub,
            } => {
                let alphabet = Alphabet::new(generators.clone())
                    .map_err(|e| ProblemError::schema("generators", e.to_string()))?;
                let mut perms = Vec::with_capacity(generators.len());
                for name in &generators {
                    let field = format!("images.{name}");
                    let raw = images
                        .remove(name)
                        .ok_or_else(|| ProblemError::schema(field.clone(), "missing image"))?;
                    perms.push(perm(field, raw, degree)?);
                }
                if let Some(extra) = images.keys().next() {
                    return Err(ProblemError::schema(
                        format!("images.{extra}"),
                        "not a declared generator",
                    ));
                }
                Ok(Problem::FreeGroup(FreeGroupProblem {
                    alphabet,
                    degree,
                    images: perms,
                    subgroup: subgroup(sub, degree)?,
                }))
            }
            RawProblem::FreeProduct {
                factors,
                degree,
                images,
                subgroup: sub,
            } => {
                if images.len() != factors.len() {
                    return Err(ProblemError::schema(
                        "images",
                        format!(
                            "expected {} factor image lists, found {}",
                            factors.len(),
                            images.len()
                        ),
                    ));
                }
                let mut named = Vec::with_capacity(factors.len());
                for (a, f) in factors.into_iter().enumerate() {
                    let group = CayleyGroup::new(f.table).map_err(|e| {
                        ProblemError::schema(format!("factors[{a}].table"), e.to_string())
                    })?;
                    named.push(NamedFactor {
                        name: f.name,
                        group,
                    });
                }
                let mut all = Vec::with_capacity(images.len());
                for (a, per_factor) in images.into_iter().enumerate() {
                    let order = named[a].group.order();
                    if per_factor.len() != order {
                        return Err(ProblemError::schema(
                            format!("images[{a}]"),
                            format!("expected {order} images, found {}", per_factor.len()),
                        ));
                    }
                    let perms = per_factor
                        .into_iter()
                        .enumerate()
                        .map(|(k, p)| perm(format!("images[{a}][{k}]"), p, degree))
                        .collect::<Result<Vec<_>, _>>()?;
                    all.push(perms);
                }
                let problem = FreeProductProblem {
                    factors: named,
                    degree,
                    images: all,
                    subgroup: subgroup(sub, degree)?,
                };
                problem.validate_homs()?;
                Ok(Problem::FreeProduct(problem))
            }
        }
    }

    pub fn to_json(&self) -> String {
        let raw = match self {
            Problem::FreeGroup(p) => RawProblem::FreeGroup {
                generators: p.alphabet.names().to_vec(),
                degree: p.degree,
                images: p
                    .alphabet
                    .names()
                    .iter()
                    .zip(&p.images)
                    .map(|(n, im)| (n.clone(), im.images().to_vec()))
                    .collect(),
                subgroup: p.subgroup.iter().map(|s| s.images().to_vec()).collect(),
            },
            Problem::FreeProduct(p) => RawProblem::FreeProduct {
                factors: p
                    .factors
                    .iter()
                    .map(|f| RawFactor {
                        name: f.name.clone(),
                        table: f.group.table().to_vec(),
                    })
                    .collect(),
                degree: p.degree,
                images: p
                    .images
                    .iter()
                    .map(|per| per.iter().map(|im| im.images().to_vec()).collect())
                    .collect(),
                subgroup: p.subgroup.iter().map(|s| s.images().to_vec()).collect(),
            },
        };
        serde_json::to_string(&raw).expect("problem serializes")
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Problem::FreeGroup(_) => "free_group",
            Problem::FreeProduct(_) => "free_product",
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Problem::FreeGroup(p) => p.degree,
            Problem::FreeProduct(p) => p.degree,
        }
    }
}

impl FreeProductProblem {
    pub(crate) fn validate_homs(&self) -> Result<(), ProblemError> {
        for (a, (f, images)) in self.factors.iter().zip(&self.images).enumerate() {
            match validate_factor_hom(&f.group, images) {
                Ok(()) => {}
                Err(GroupError::NotAHomomorphism { a: x, b: y }) => {
                    return Err(ProblemError::NotAHomomorphism {
                        field: format!("images[{a}]"),
                        a: x,
                        b: y,
                    })
                }
                Err(e) => return Err(ProblemError::schema(format!("images[{a}]"), e.to_string())),
            }
        }
        Ok(())
    }
}

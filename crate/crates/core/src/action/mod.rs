//! The coset space `Σ = H\G` with the right action `ρ`.
//!
//! A subgroup is never given by generator words. Instead a problem supplies
//! a homomorphism `φ` from the free group (or free product) onto a finite
//! permutation group `Q`, together with a subgroup `S ≤ Q`, and
//! `H = φ⁻¹(S)`. Right cosets of `H` correspond to right cosets of `S` in
//! `Q`, and `Hw ↦ Hwg` becomes `Sx ↦ S·x·φ(g)`.

mod problem;

use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

pub use problem::{FreeGroupProblem, FreeProductProblem, NamedFactor, Problem, ProblemError};

use crate::fingrp::{self, Caps, CosetTable, GroupError, PermGroup, Permutation, Subgroup};
use crate::group::Group;
use crate::words::{Alphabet, FreeGroup, FreeProduct, FreeWord, ProductWord, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("operation requires a {expected} problem")]
    WrongKind { expected: &'static str },
    #[error("unknown generator index {0}")]
    UnknownGenerator(usize),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Clone, Debug)]
enum Ambient {
    Free {
        alphabet: Alphabet,
        group: FreeGroup,
    },
    Product {
        names: Vec<String>,
        product: FreeProduct,
    },
}

#[derive(Clone, Debug)]
enum Actions {
    /// per generator: action of `x` and of `x⁻¹`
    Free {
        forward: Vec<Permutation>,
        backward: Vec<Permutation>,
    },
    /// per factor, per element
    Product(Vec<Vec<Permutation>>),
}

/// The finite set of right cosets of `H`, numbered so that coset 0 is `H`.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    ambient: Ambient,
    actions: Actions,
    q: PermGroup,
    s: Subgroup,
    cosets: CosetTable,
}

/// Builds `Σ` for a validated problem, with `Q` the closure of the images.
pub fn build_coset_space(p: &Problem, caps: &Caps) -> Result<CosetSpace, ProblemError> {
    let degree = p.degree();
    let (ambient, images_flat) = match p {
        Problem::FreeGroup(fg) => (
            Ambient::Free {
                alphabet: fg.alphabet.clone(),
                group: FreeGroup,
            },
            fg.images.clone(),
        ),
        Problem::FreeProduct(fp) => {
            for (a, f) in fp.factors.iter().enumerate() {
                if f.group.order() > caps.max_factor_order {
                    return Err(GroupError::CapExceeded {
                        what: "factor group",
                        size: f.group.order(),
                        cap: caps.max_factor_order,
                    }
                    .into());
                }
                if fp.images.get(a).map(Vec::len) != Some(f.group.order()) {
                    return Err(ProblemError::schema(
                        format!("images[{a}]"),
                        "wrong number of images",
                    ));
                }
            }
            fp.validate_homs()?;
            let names = fp.factors.iter().map(|f| f.name.clone()).collect();
            (
                Ambient::Product {
                    names,
                    product: fp.free_product(),
                },
                fp.images
                    .iter()
                    .flatten()
                    .filter(|p| !p.is_identity())
                    .cloned()
                    .collect(),
            )
        }
    };
    let subgroup_gens = match p {
        Problem::FreeGroup(fg) => &fg.subgroup,
        Problem::FreeProduct(fp) => &fp.subgroup,
    };
    let q = fingrp::closure(degree, &images_flat, caps.max_group_order)?;
    let s = match Subgroup::generated(&q, subgroup_gens, caps.max_group_order) {
        Ok(s) => s,
        Err(GroupError::NotASubgroup) => return Err(ProblemError::NotASubgroup),
        Err(e) => return Err(e.into()),
    };
    let cosets = fingrp::right_cosets(&q, &s).map_err(|_| ProblemError::NotASubgroup)?;
    if cosets.len() > caps.max_index {
        return Err(GroupError::CapExceeded {
            what: "index",
            size: cosets.len(),
            cap: caps.max_index,
        }
        .into());
    }
    let act = |g: &Permutation| -> Permutation {
        let images = (0..cosets.len())
            .map(|c| {
                let x = q.element(cosets.rep(c));
                let xg = q.index_of(&x.compose(g)).expect("Q is closed");
                cosets.coset_of(xg)
            })
            .collect();
        Permutation::new(images).expect("right multiplication permutes cosets")
    };
    let actions = match p {
        Problem::FreeGroup(fg) => {
            let forward: Vec<Permutation> = fg.images.iter().map(act).collect();
            let backward = forward.iter().map(Permutation::inverse).collect();
            Actions::Free { forward, backward }
        }
        Problem::FreeProduct(fp) => Actions::Product(
            fp.images
                .iter()
                .map(|per| per.iter().map(act).collect())
                .collect(),
        ),
    };
    Ok(CosetSpace {
        ambient,
        actions,
        q,
        s,
        cosets,
    })
}

impl CosetSpace {
    /// `|Σ|`, the index of `H`.
    pub fn size(&self) -> usize {
        self.cosets.len()
    }

    pub fn kind(&self) -> &'static str {
        match self.ambient {
            Ambient::Free { .. } => "free_group",
            Ambient::Product { .. } => "free_product",
        }
    }

    pub fn image_group(&self) -> &PermGroup {
        &self.q
    }

    pub fn image_subgroup(&self) -> &Subgroup {
        &self.s
    }

    /// The canonical element `x ∈ Q` with coset `Sx`.
    pub fn coset_rep(&self, coset: usize) -> &Permutation {
        self.q.element(self.cosets.rep(coset))
    }

    pub fn alphabet(&self) -> Result<&Alphabet, ActionError> {
        match &self.ambient {
            Ambient::Free { alphabet, .. } => Ok(alphabet),
            _ => Err(ActionError::WrongKind {
                expected: "free_group",
            }),
        }
    }

    pub fn free_product(&self) -> Result<&FreeProduct, ActionError> {
        match &self.ambient {
            Ambient::Product { product, .. } => Ok(product),
            _ => Err(ActionError::WrongKind {
                expected: "free_product",
            }),
        }
    }

    pub fn factor_names(&self) -> Result<&[String], ActionError> {
        match &self.ambient {
            Ambient::Product { names, .. } => Ok(names),
            _ => Err(ActionError::WrongKind {
                expected: "free_product",
            }),
        }
    }

    /// Action of the generator `g` (or its inverse) on `Σ`.
    pub fn generator_action(&self, g: usize, inverse: bool) -> Result<&Permutation, ActionError> {
        match &self.actions {
            Actions::Free { forward, backward } => {
                let table = if inverse { backward } else { forward };
                table.get(g).ok_or(ActionError::UnknownGenerator(g))
            }
            _ => Err(ActionError::WrongKind {
                expected: "free_group",
            }),
        }
    }

    /// Action of element `k` of factor `alpha` on `Σ`.
    pub fn factor_action(&self, alpha: usize, k: usize) -> Result<&Permutation, ActionError> {
        match &self.actions {
            Actions::Product(per) => {
                let count = per.len();
                let elems = per.get(alpha).ok_or(WordError::FactorOutOfRange {
                    factor: alpha,
                    count,
                })?;
                elems
                    .get(k)
                    .ok_or(ActionError::Word(WordError::ElementOutOfRange {
                        factor: alpha,
                        elem: k,
                        order: elems.len(),
                    }))
            }
            _ => Err(ActionError::WrongKind {
                expected: "free_product",
            }),
        }
    }

    /// All action permutations of factor `alpha`, indexed by element.
    pub fn factor_actions(&self, alpha: usize) -> Result<&[Permutation], ActionError> {
        self.factor_action(alpha, 0)?;
        match &self.actions {
            Actions::Product(per) => Ok(&per[alpha]),
            _ => unreachable!(),
        }
    }

    pub fn core_test(&self) -> CoreTest<'_> {
        CoreTest { space: self }
    }
}

/// Words of a free group or free product acting on a [`CosetSpace`].
pub trait CosetWord: Clone + Eq + Hash + Debug {
    type Ambient: Group<Elem = Self>;

    fn ambient(cs: &CosetSpace) -> Result<&Self::Ambient, ActionError>;

    /// The coset `coset · self`.
    fn act(&self, cs: &CosetSpace, coset: usize) -> Result<usize, ActionError>;

    fn render(&self, cs: &CosetSpace) -> String;
}

impl CosetWord for FreeWord {
    type Ambient = FreeGroup;

    fn ambient(cs: &CosetSpace) -> Result<&FreeGroup, ActionError> {
        match &cs.ambient {
            Ambient::Free { group, .. } => Ok(group),
            _ => Err(ActionError::WrongKind {
                expected: "free_group",
            }),
        }
    }

    fn act(&self, cs: &CosetSpace, coset: usize) -> Result<usize, ActionError> {
        self.letters().iter().try_fold(coset, |c, l| {
            Ok(cs.generator_action(l.generator, l.inverse)?.apply(c))
        })
    }

    fn render(&self, cs: &CosetSpace) -> String {
        match cs.alphabet() {
            Ok(a) => a.render(self),
            Err(_) => format!("{self:?}"),
        }
    }
}

impl CosetWord for ProductWord {
    type Ambient = FreeProduct;

    fn ambient(cs: &CosetSpace) -> Result<&FreeProduct, ActionError> {
        cs.free_product()
    }

    fn act(&self, cs: &CosetSpace, coset: usize) -> Result<usize, ActionError> {
        self.syllables().iter().try_fold(coset, |c, s| {
            Ok(cs.factor_action(s.factor, s.elem)?.apply(c))
        })
    }

    fn render(&self, _cs: &CosetSpace) -> String {
        self.to_string()
    }
}

/// `ρ(w)`: the left-to-right product of the per-letter actions.
pub fn rho_of_word<W: CosetWord>(cs: &CosetSpace, w: &W) -> Result<Permutation, ActionError> {
    let images = (0..cs.size())
        .map(|c| w.act(cs, c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Permutation::new(images).expect("actions are bijections"))
}

/// `w ∈ H`, i.e. `Hw = H`.
pub fn in_subgroup<W: CosetWord>(cs: &CosetSpace, w: &W) -> Result<bool, ActionError> {
    Ok(w.act(cs, 0)? == 0)
}

/// Membership in the core `H_G = ker ρ`.
#[derive(Clone, Copy, Debug)]
pub struct CoreTest<'a> {
    space: &'a CosetSpace,
}

impl CoreTest<'_> {
    pub fn contains<W: CosetWord>(&self, w: &W) -> Result<bool, ActionError> {
        Ok(rho_of_word(self.space, w)?.is_identity())
    }
}

pub fn in_core<W: CosetWord>(ct: &CoreTest<'_>, w: &W) -> Result<bool, ActionError> {
    ct.contains(w)
}

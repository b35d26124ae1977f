//! Subgroups of a free product `G = ∗G_α` of finite groups.
//!
//! Starting from the coset space of `H`, the module computes syllable
//! lengths, a Kurosh system (transversals `T_α` and double-coset
//! representatives satisfying axioms (i)–(v)), the tables
//!
//! ```text
//! y[i][α][x] = T_α[i]·x·T_α[i·x]⁻¹      z[i][α] = T_α[i]·T_α₀[i]⁻¹
//! ```
//!
//! and from those the decomposition `H = ∗(uG_αu⁻¹ ∩ H) ∗ F(Z)`. The map
//! `Ψ: G → K ≀ ρ(G)` built from homomorphisms on the factors and an
//! assignment on `Z` is used to check that decomposition on finite targets.

mod decompose;
mod metrics;
mod psi;
mod rewrite;
mod system;
mod verify;
mod yz;

use thiserror::Error;

use crate::action::ActionError;
use crate::fingrp::GroupError;
use crate::wreath::WreathError;

pub use decompose::{
    check_decomposition, decompose, CountsJson, DecompositionJson, FactorJson, FiniteFactor,
    FreeBasisJson, FreeGenerator, KuroshDecomposition,
};
pub use metrics::{syllable_metrics, DoubleCosets, SyllableMetrics};
pub use psi::{build_psi, build_psi_identity, Psi, PsiFamily};
pub use rewrite::{evaluate_kurosh_tokens, kurosh_rewrite, render_kurosh_tokens, KuroshToken};
pub use system::{
    build_kurosh_system, check_kurosh_axioms, DoubleCosetRep, KuroshSystem, SystemJson,
};
pub use verify::{verify_identity_instantiation, verify_kurosh_universal};
pub use yz::{check_yz, yz_elements, YZTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KuroshError {
    #[error("alpha0 = {alpha0} is not a factor index (the product has {count} factors)")]
    Alpha0OutOfRange { alpha0: usize, count: usize },
    #[error("internal error: induction order violated at factor {alpha}, coset {coset}")]
    InternalInductionOrder { alpha: usize, coset: usize },
    #[error("internal error: y at coset {coset}, factor {alpha}, element {elem} is not in its conjugated factor")]
    FactorElementNotLocated {
        coset: usize,
        alpha: usize,
        elem: usize,
    },
    #[error("psi_u for factor {factor} is not a homomorphism at elements ({a}, {b})")]
    NotAHomomorphism { factor: usize, a: usize, b: usize },
    #[error("Psi on factor {alpha} is not a homomorphism at elements ({a}, {b})")]
    PsiNotHomomorphism { alpha: usize, a: usize, b: usize },
    #[error("invalid homomorphism family: {0}")]
    FamilyShape(String),
    #[error("word is not in the subgroup")]
    NotInSubgroup,
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Wreath(#[from] WreathError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl From<crate::words::WordError> for KuroshError {
    fn from(e: crate::words::WordError) -> Self {
        KuroshError::Action(ActionError::Word(e))
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::action::{build_coset_space, CosetSpace, FreeProductProblem, NamedFactor, Problem};
    use crate::fingrp::{Caps, CayleyGroup, Permutation};

    pub fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    pub fn space(
        groups: Vec<CayleyGroup>,
        degree: usize,
        images: Vec<Vec<Permutation>>,
        subgroup: Vec<Permutation>,
    ) -> CosetSpace {
        let factors = groups
            .into_iter()
            .enumerate()
            .map(|(k, group)| NamedFactor {
                name: format!("G{k}"),
                group,
            })
            .collect();
        let p = Problem::FreeProduct(FreeProductProblem {
            factors,
            degree,
            images,
            subgroup,
        });
        build_coset_space(&p, &Caps::default()).unwrap()
    }

    /// C2 ∗ C2 → C2, both generators to the swap; `H` is the sign kernel.
    pub fn sign_kernel() -> CosetSpace {
        let s = cyc(2, &[&[0, 1]]);
        let id = Permutation::identity(2);
        space(
            vec![CayleyGroup::cyclic(2), CayleyGroup::cyclic(2)],
            2,
            vec![vec![id.clone(), s.clone()], vec![id, s]],
            vec![],
        )
    }

    /// C2 ∗ C3 → S₃ with `s ↦ (0 1)`, `t ↦ (0 1 2)`.
    pub fn c2_c3(subgroup: Vec<Permutation>) -> CosetSpace {
        let id = Permutation::identity(3);
        let t = cyc(3, &[&[0, 1, 2]]);
        space(
            vec![CayleyGroup::cyclic(2), CayleyGroup::cyclic(3)],
            3,
            vec![
                vec![id.clone(), cyc(3, &[&[0, 1]])],
                vec![id, t.clone(), t.pow(2)],
            ],
            subgroup,
        )
    }

    /// Three factors C2 ∗ C2 ∗ C2 → S₃ by three transpositions, `H` trivial image.
    pub fn three_factors() -> CosetSpace {
        let id = Permutation::identity(3);
        space(
            vec![
                CayleyGroup::cyclic(2),
                CayleyGroup::cyclic(2),
                CayleyGroup::cyclic(2),
            ],
            3,
            vec![
                vec![id.clone(), cyc(3, &[&[0, 1]])],
                vec![id.clone(), cyc(3, &[&[1, 2]])],
                vec![id, cyc(3, &[&[0, 2]])],
            ],
            vec![],
        )
    }
}

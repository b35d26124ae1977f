//! Permutational wreath products `A ≀ P = A^Σ ⋊ P` over an arbitrary base group.
//!
//! An element is a pair `(f, p)` with `f: Σ → A` stored as a vector indexed by
//! coset and `p` a permutation of `Σ`. `P` acts on the functions by
//! `(ᵖf)(s) = f(s·p)`, so that
//!
//! ```text
//! (f, p)(f', p') = (s ↦ f(s)·f'(s·p), p·p')
//! (f, p)⁻¹      = (s ↦ f(s·p⁻¹)⁻¹,    p⁻¹)
//! ```
//!
//! The same code serves symbolic bases (free-group and free-product words)
//! and finite bases (permutations, Cayley-table elements).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{ActionError, CosetSpace, CosetWord};
use crate::fingrp::Permutation;
pub use crate::group::Group;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WreathError {
    #[error("wreath elements over coset spaces of sizes {0} and {1}")]
    DomainMismatch(usize, usize),
    #[error("permutation part does not fix point {0}")]
    PointNotFixed(usize),
    #[error("transversal entry {0} does not lie in its coset")]
    InvalidTransversal(usize),
    #[error(transparent)]
    Action(#[from] ActionError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement<E> {
    pub f: Vec<E>,
    pub p: Permutation,
}

/// Wire form: `{"f": [base element per coset], "p": [one-line permutation]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WreathJson {
    pub f: Vec<String>,
    pub p: Vec<usize>,
}

impl<E> WreathElement<E> {
    pub fn degree(&self) -> usize {
        self.p.degree()
    }

    pub fn to_json(&self, render: impl Fn(&E) -> String) -> WreathJson {
        WreathJson {
            f: self.f.iter().map(render).collect(),
            p: self.p.images().to_vec(),
        }
    }
}

pub fn w_identity<G: Group>(base: &G, degree: usize) -> WreathElement<G::Elem> {
    WreathElement {
        f: vec![base.identity(); degree],
        p: Permutation::identity(degree),
    }
}

/// `(1, p)`.
pub fn pure_permutation<G: Group>(base: &G, p: Permutation) -> WreathElement<G::Elem> {
    WreathElement {
        f: vec![base.identity(); p.degree()],
        p,
    }
}

pub fn w_multiply<G: Group>(
    base: &G,
    a: &WreathElement<G::Elem>,
    b: &WreathElement<G::Elem>,
) -> Result<WreathElement<G::Elem>, WreathError> {
    if a.degree() != b.degree() || a.f.len() != a.degree() || b.f.len() != b.degree() {
        return Err(WreathError::DomainMismatch(a.f.len(), b.f.len()));
    }
    let f = (0..a.degree())
        .map(|s| base.multiply(&a.f[s], &b.f[a.p.apply(s)]))
        .collect();
    Ok(WreathElement {
        f,
        p: a.p.compose(&b.p),
    })
}

pub fn w_invert<G: Group>(base: &G, a: &WreathElement<G::Elem>) -> WreathElement<G::Elem> {
    let p_inv = a.p.inverse();
    let f = (0..a.degree())
        .map(|s| base.invert(&a.f[p_inv.apply(s)]))
        .collect();
    WreathElement { f, p: p_inv }
}

/// Left-to-right product of a sequence of wreath elements over `degree` points.
pub fn w_product<'a, G: Group>(
    base: &G,
    degree: usize,
    elems: impl IntoIterator<Item = &'a WreathElement<G::Elem>>,
) -> Result<WreathElement<G::Elem>, WreathError>
where
    G::Elem: 'a,
{
    elems
        .into_iter()
        .try_fold(w_identity(base, degree), |acc, e| w_multiply(base, &acc, e))
}

/// `δ_a`: the constant function `a` with trivial permutation part.
pub fn diagonal<G: Group>(a: &G::Elem, degree: usize) -> WreathElement<G::Elem> {
    WreathElement {
        f: vec![a.clone(); degree],
        p: Permutation::identity(degree),
    }
}

/// `α ≀ P`: apply a base homomorphism coordinatewise.
pub fn map_base<A, B>(alpha: impl Fn(&A) -> B, a: &WreathElement<A>) -> WreathElement<B> {
    WreathElement {
        f: a.f.iter().map(alpha).collect(),
        p: a.p.clone(),
    }
}

/// `π_{A,i}`: the coordinate at `i`, defined only when `p` fixes `i`.
pub fn project_i<E: Clone>(a: &WreathElement<E>, i: usize) -> Result<E, WreathError> {
    if i >= a.degree() || a.p.apply(i) != i {
        return Err(WreathError::PointNotFixed(i));
    }
    Ok(a.f[i].clone())
}

/// The coset-0 coordinate of `e₁e₂⋯eₙ`, accumulated as
/// `f₁(0)·f₂(0·p₁)·…·fₙ(0·p₁⋯pₙ₋₁)` without forming the full product.
pub fn cocycle_expand<'a, G: Group>(
    base: &G,
    elems: impl IntoIterator<Item = &'a WreathElement<G::Elem>>,
) -> Result<G::Elem, WreathError>
where
    G::Elem: 'a,
{
    let mut coset = 0;
    let mut acc = base.identity();
    let mut degree = None;
    for e in elems {
        match degree {
            None => degree = Some(e.degree()),
            Some(d) if d != e.degree() => return Err(WreathError::DomainMismatch(d, e.degree())),
            _ => {}
        }
        if coset >= e.f.len() {
            return Err(WreathError::DomainMismatch(e.f.len(), coset + 1));
        }
        acc = base.multiply(&acc, &e.f[coset]);
        coset = e.p.apply(coset);
    }
    Ok(acc)
}

/// Checks that `transversal[i]` lies in coset `i` and that `transversal[0] = 1`.
pub fn check_transversal<W: CosetWord>(
    cs: &CosetSpace,
    transversal: &[W],
) -> Result<(), WreathError> {
    let group = W::ambient(cs)?;
    if transversal.len() != cs.size() {
        return Err(WreathError::InvalidTransversal(
            transversal.len().min(cs.size()),
        ));
    }
    if !group.is_identity(&transversal[0]) {
        return Err(WreathError::InvalidTransversal(0));
    }
    for (i, t) in transversal.iter().enumerate() {
        if t.act(cs, 0)? != i {
            return Err(WreathError::InvalidTransversal(i));
        }
    }
    Ok(())
}

/// The standard embedding `g ↦ (f_g, ρ(g))` with `f_g(i) = T[i]·g·T[i·ρ(g)]⁻¹`.
pub fn standard_embed<W: CosetWord>(
    cs: &CosetSpace,
    transversal: &[W],
    g: &W,
) -> Result<WreathElement<W>, WreathError> {
    check_transversal(cs, transversal)?;
    standard_embed_unchecked(cs, transversal, g)
}

pub(crate) fn standard_embed_unchecked<W: CosetWord>(
    cs: &CosetSpace,
    transversal: &[W],
    g: &W,
) -> Result<WreathElement<W>, WreathError> {
    let group = W::ambient(cs)?;
    let p = crate::action::rho_of_word(cs, g)?;
    let f = (0..cs.size())
        .map(|i| {
            let left = group.multiply(&transversal[i], g);
            group.multiply(&left, &group.invert(&transversal[p.apply(i)]))
        })
        .collect();
    Ok(WreathElement { f, p })
}

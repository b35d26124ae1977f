//! The map `Ψ: ∗G_α → K ≀ ρ(G)` determined by homomorphisms `ψ_u` on the
//! finite factors of `H` and an assignment `ψ` on `Z`.
//!
//! On `x ∈ G_α`, `Ψ(x) = (f_x, ρ(x))` with
//!
//! ```text
//! f_x(H_i) = ψ(z[i][α])⁻¹ · ψ_u(y[i][α][x]) · ψ(z[j][α]),   H_j = H_i·x,
//! ```
//!
//! where `u` represents `H_iG_α`. The construction is generic over the base
//! group so that the same code, with `K = G` and every `ψ` an inclusion,
//! produces the symbolic map `Ψ̃`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::action::CosetSpace;
use crate::fingrp::{self, Caps, GroupError, PermGroup, Permutation};
use crate::group::Group;
use crate::sample::SampleRng;
use crate::words::{FreeProduct, ProductWord};
use crate::wreath::{cocycle_expand, w_multiply, w_product, WreathElement};

use super::decompose::KuroshDecomposition;
use super::system::KuroshSystem;
use super::yz::YZTable;
use super::KuroshError;

/// `Ψ` restricted to the factors; `images[α][x] = Ψ(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Psi<E> {
    degree: usize,
    images: Vec<Vec<WreathElement<E>>>,
}

impl<E: Clone + Eq + std::hash::Hash + std::fmt::Debug> Psi<E> {
    pub fn factor_image(&self, alpha: usize, x: usize) -> &WreathElement<E> {
        &self.images[alpha][x]
    }

    /// `Ψ(w)` as the product of the images of its syllables.
    pub fn apply<G: Group<Elem = E>>(&self, base: &G, w: &ProductWord) -> WreathElement<E> {
        w_product(
            base,
            self.degree,
            w.syllables().iter().map(|s| &self.images[s.factor][s.elem]),
        )
        .expect("images share one degree")
    }

    /// The coset-0 coordinate of `Ψ(w)`, accumulated without forming the product.
    pub fn coset0<G: Group<Elem = E>>(&self, base: &G, w: &ProductWord) -> E {
        if w.is_identity() {
            return base.identity();
        }
        cocycle_expand(
            base,
            w.syllables().iter().map(|s| &self.images[s.factor][s.elem]),
        )
        .expect("images share one degree")
    }
}

/// Input data for `Ψ` over a permutation group `K`.
#[derive(Clone, Debug)]
pub struct PsiFamily {
    pub k: PermGroup,
    /// one entry per nontrivial factor, in decomposition order; each maps the
    /// factor's stabilizer (in its ascending order) into `K`
    pub factor_homs: Vec<Vec<Permutation>>,
    /// `ψ(z)` per free basis element
    pub free: Vec<Permutation>,
}

impl PsiFamily {
    /// Everything sent to the identity of `K`.
    pub fn trivial(dec: &KuroshDecomposition, k: PermGroup) -> PsiFamily {
        let id = Permutation::identity(k.degree());
        PsiFamily {
            factor_homs: dec
                .nontrivial_factors()
                .map(|f| vec![id.clone(); f.order()])
                .collect(),
            free: vec![id; dec.free_rank()],
            k,
        }
    }

    /// `ψ_u` drawn uniformly from all homomorphisms of each factor into `K`
    /// (via [`fingrp::enumerate_homs`] on the stabilizer's table) and `ψ`
    /// drawn uniformly from `K`.
    pub fn random(
        rng: &mut SampleRng,
        fp: &FreeProduct,
        dec: &KuroshDecomposition,
        k: PermGroup,
        caps: &Caps,
    ) -> Result<PsiFamily, KuroshError> {
        let mut factor_homs = Vec::new();
        for f in dec.nontrivial_factors() {
            let table = fp.factor(f.alpha).induced(&f.stabilizer)?;
            let homs = fingrp::enumerate_homs(&table, &k, caps.hom_limit, caps)?;
            let hom = homs.choose(rng).expect("the trivial homomorphism exists");
            factor_homs.push(hom.iter().map(|&e| k.element(e).clone()).collect());
        }
        let free = (0..dec.free_rank())
            .map(|_| k.element(rng.gen_range(0..k.order())).clone())
            .collect();
        Ok(PsiFamily {
            k,
            factor_homs,
            free,
        })
    }
}

/// Shared construction of `Ψ` over any base group.
fn assemble<G: Group>(
    cs: &CosetSpace,
    ks: &KuroshSystem,
    yz: &YZTable,
    dec: &KuroshDecomposition,
    base: &G,
    factor_value: impl Fn(usize, usize) -> G::Elem,
    free_value: impl Fn(usize) -> G::Elem,
) -> Result<Psi<G::Elem>, KuroshError> {
    let fp = cs.free_product()?;
    let n = cs.size();
    let psi_z = |w: &ProductWord| -> Result<G::Elem, KuroshError> {
        if w.is_identity() {
            return Ok(base.identity());
        }
        dec.free_index(w)
            .map(&free_value)
            .ok_or_else(|| KuroshError::FamilyShape(format!("{w} is not in Z")))
    };
    let mut images = Vec::with_capacity(fp.factors().len());
    for alpha in 0..fp.factors().len() {
        let action = cs.factor_actions(alpha)?;
        let mut row = Vec::with_capacity(action.len());
        for x in 0..action.len() {
            let mut f = Vec::with_capacity(n);
            for i in 0..n {
                let j = action[x].apply(i);
                let (pos, c) = dec.locate(fp, ks, i, alpha, x, yz.y(i, alpha, x))?;
                let middle = if c == 0 {
                    base.identity()
                } else {
                    factor_value(pos, c)
                };
                let left = base.invert(&psi_z(yz.z(i, alpha))?);
                let value = base.multiply(&base.multiply(&left, &middle), &psi_z(yz.z(j, alpha))?);
                f.push(value);
            }
            row.push(WreathElement {
                f,
                p: action[x].clone(),
            });
        }
        for a in 0..row.len() {
            for b in 0..row.len() {
                let ab = fp.factor(alpha).mul(a, b);
                if w_multiply(base, &row[a], &row[b])? != row[ab] {
                    return Err(KuroshError::PsiNotHomomorphism { alpha, a, b });
                }
            }
        }
        images.push(row);
    }
    Ok(Psi { degree: n, images })
}

/// `Ψ` over `K` after validating the family: one homomorphism per nontrivial
/// factor (checked on every pair of the stabilizer) and one value per element of `Z`.
pub fn build_psi(
    cs: &CosetSpace,
    ks: &KuroshSystem,
    yz: &YZTable,
    dec: &KuroshDecomposition,
    family: &PsiFamily,
) -> Result<Psi<Permutation>, KuroshError> {
    let fp = cs.free_product()?;
    let k = &family.k;
    let nontrivial: Vec<usize> = (0..dec.factors.len())
        .filter(|&p| !dec.factors[p].is_trivial())
        .collect();
    if family.factor_homs.len() != nontrivial.len() {
        return Err(KuroshError::FamilyShape(format!(
            "{} factor homomorphisms for {} nontrivial factors",
            family.factor_homs.len(),
            nontrivial.len()
        )));
    }
    if family.free.len() != dec.free_rank() {
        return Err(KuroshError::FamilyShape(format!(
            "{} free values for |Z| = {}",
            family.free.len(),
            dec.free_rank()
        )));
    }
    if let Some(p) = family
        .factor_homs
        .iter()
        .flatten()
        .chain(&family.free)
        .find(|p| !k.contains(p))
    {
        return Err(KuroshError::FamilyShape(format!("{p} is not in K")));
    }
    let mut slot = vec![usize::MAX; dec.factors.len()];
    for (m, &pos) in nontrivial.iter().enumerate() {
        slot[pos] = m;
        let f = &dec.factors[pos];
        let table = fp.factor(f.alpha).induced(&f.stabilizer)?;
        fingrp::validate_factor_hom(&table, &family.factor_homs[m]).map_err(|e| match e {
            GroupError::NotAHomomorphism { a, b } => KuroshError::NotAHomomorphism {
                factor: m,
                a: f.stabilizer[a],
                b: f.stabilizer[b],
            },
            other => KuroshError::FamilyShape(format!("factor {m}: {other}")),
        })?;
    }
    assemble(
        cs,
        ks,
        yz,
        dec,
        k,
        |pos, c| {
            let f = &dec.factors[pos];
            let at = f
                .stabilizer
                .binary_search(&c)
                .expect("located in the stabilizer");
            family.factor_homs[slot[pos]][at].clone()
        },
        |z| family.free[z].clone(),
    )
}

/// `Ψ̃` over `G` itself, with `ψ_u` the inclusion `u·c·u⁻¹` and `ψ(z) = z`.
pub fn build_psi_identity(
    cs: &CosetSpace,
    ks: &KuroshSystem,
    yz: &YZTable,
    dec: &KuroshDecomposition,
) -> Result<Psi<ProductWord>, KuroshError> {
    let fp = cs.free_product()?;
    assemble(
        cs,
        ks,
        yz,
        dec,
        fp,
        |pos, c| dec.factors[pos].conjugate(fp, c),
        |z| dec.free_basis[z].word.clone(),
    )
}

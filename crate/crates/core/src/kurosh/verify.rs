//! Replays the extension computations for the Kurosh decomposition on a
//! concrete finite target `K`.

use crate::action::{rho_of_word, CosetSpace};
use crate::fingrp::{self, Caps, Permutation};
use crate::report::CheckList;
use crate::sample::{self, RandomWord};
use crate::words::ProductWord;
use crate::wreath::{project_i, standard_embed, w_multiply};

use super::decompose::KuroshDecomposition;
use super::psi::{build_psi, build_psi_identity, PsiFamily};
use super::system::KuroshSystem;
use super::yz::YZTable;
use super::KuroshError;

const MAX_SYLLABLES: usize = 8;

/// Checks, for `Ψ` built from `family`:
///
/// 1. the coset-0 coordinate of `Ψ(u)` is `ψ(z[Hu][α])` for every entry `u = α(Hu)`;
/// 2. `π_K Ψ(h) = ψ_u(h)` for every element `h` of every nontrivial factor;
/// 3. `π_K Ψ(z) = ψ(z)` for every `z ∈ Z`;
/// 4. `Ψ(wv) = Ψ(w)Ψ(v)` and the permutation part of `Ψ(w)` is `ρ(w)`, on `samples` pairs;
/// 5. naturality in `K`: with `K' = K × K`, `ψ' = (ψ, ψ₂)` for a second
///    random family `ψ₂`, and `γ: K' → K` the first projection,
///    `γ(π_{K'} Ψ'(h)) = π_K Ψ(h)` on `samples` elements `h ∈ H`.
///
/// Items 1–3 are exhaustive.
#[allow(clippy::too_many_arguments)]
pub fn verify_kurosh_universal(
    cs: &CosetSpace,
    ks: &KuroshSystem,
    yz: &YZTable,
    dec: &KuroshDecomposition,
    family: &PsiFamily,
    samples: usize,
    seed: u64,
    caps: &Caps,
) -> Result<CheckList, KuroshError> {
    let fp = cs.free_product()?;
    let k = &family.k;
    let psi = build_psi(cs, ks, yz, dec, family)?;
    let psi_of_z = |w: &ProductWord| match dec.free_index(w) {
        Some(idx) => family.free[idx].clone(),
        None => Permutation::identity(k.degree()),
    };
    let mut checks = CheckList::new();

    let mut failure = None;
    'outer: for alpha in 0..fp.factors().len() {
        for i in 0..cs.size() {
            let u = ks.t(alpha, i);
            let got = psi.coset0(k, u);
            let want = psi_of_z(yz.z(i, alpha));
            if got != want {
                failure = Some(format!(
                    "u = T_{alpha}[{i}] = {u}: coordinate {got}, psi(z) = {want}"
                ));
                break 'outer;
            }
        }
    }
    checks.record(
        "Psi(u) at H equals psi(z[Hu][alpha]) for every transversal entry",
        failure,
    );

    let mut failure = None;
    'outer: for (m, f) in dec.nontrivial_factors().enumerate() {
        for (at, &c) in f.stabilizer.iter().enumerate() {
            let h = f.conjugate(fp, c);
            let got = project_i(&psi.apply(k, &h), 0);
            if got.as_ref() != Ok(&family.factor_homs[m][at]) {
                failure = Some(format!(
                    "factor {m}, h = {h}: {got:?}, psi_u(h) = {}",
                    family.factor_homs[m][at]
                ));
                break 'outer;
            }
        }
    }
    checks.record("pi_K Psi(h) = psi_u(h) on every factor element", failure);

    let failure = dec.free_basis.iter().enumerate().find_map(|(idx, z)| {
        let got = project_i(&psi.apply(k, &z.word), 0);
        (got.as_ref() != Ok(&family.free[idx])).then(|| {
            format!(
                "z{idx} = {}: {got:?}, psi(z) = {}",
                z.word, family.free[idx]
            )
        })
    });
    checks.record("pi_K Psi(z) = psi(z) for every z in Z", failure);

    let mut rng = sample::rng(seed);
    let mut hom_failure = None;
    let mut rho_failure = None;
    for _ in 0..samples {
        let w = ProductWord::random(cs, &mut rng, MAX_SYLLABLES);
        let v = ProductWord::random(cs, &mut rng, MAX_SYLLABLES);
        let wv = fp.mul(&w, &v);
        let lhs = psi.apply(k, &wv);
        if hom_failure.is_none() && lhs != w_multiply(k, &psi.apply(k, &w), &psi.apply(k, &v))? {
            hom_failure = Some(format!("w = {w}, v = {v}"));
        }
        if rho_failure.is_none() && lhs.p != rho_of_word(cs, &wv)? {
            rho_failure = Some(format!("w = {wv}"));
        }
    }
    checks.record(
        format!("homomorphism: Psi(wv) = Psi(w) Psi(v) on {samples} sampled pairs"),
        hom_failure,
    );
    checks.record("projection: theta(Psi(w)) = rho(w)", rho_failure);

    let d = k.degree();
    let second = PsiFamily::random(&mut rng, fp, dec, k.clone(), caps)?;
    let id = Permutation::identity(d);
    let gens: Vec<Permutation> = k
        .generators()
        .iter()
        .flat_map(|g| [g.direct_sum(&id), id.direct_sum(g)])
        .collect();
    let k2 = fingrp::closure(2 * d, &gens, k.order().saturating_mul(k.order()))?;
    let paired = PsiFamily {
        k: k2.clone(),
        factor_homs: family
            .factor_homs
            .iter()
            .zip(&second.factor_homs)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.direct_sum(y)).collect())
            .collect(),
        free: family
            .free
            .iter()
            .zip(&second.free)
            .map(|(x, y)| x.direct_sum(y))
            .collect(),
    };
    let psi2 = build_psi(cs, ks, yz, dec, &paired)?;
    let mut failure = None;
    for _ in 0..samples {
        let h = sample::random_subgroup_element(
            cs,
            ks.transversal(ks.alpha0()),
            &mut rng,
            MAX_SYLLABLES,
        );
        let big = project_i(&psi2.apply(&k2, &h), 0)?;
        let small = project_i(&psi.apply(k, &h), 0)?;
        if big.restrict(0, d).as_ref() != Some(&small) {
            failure = Some(format!(
                "h = {h}: gamma gives {:?}, expected {small}",
                big.restrict(0, d)
            ));
            break;
        }
    }
    checks.record(
        format!("naturality: gamma pi_K' Psi'(h) = pi_K Psi(h) on {samples} sampled h in H"),
        failure,
    );

    Ok(checks)
}

/// Checks for `Ψ̃` (base `G`, inclusions as `ψ_u`, `ψ(z) = z`): on every
/// factor element it equals the standard embedding with transversal `T_α₀`,
/// and the coset-0 coordinate of `Ψ̃(h)` is `h` on `samples` elements `h ∈ H`.
pub fn verify_identity_instantiation(
    cs: &CosetSpace,
    ks: &KuroshSystem,
    yz: &YZTable,
    dec: &KuroshDecomposition,
    samples: usize,
    seed: u64,
) -> Result<CheckList, KuroshError> {
    let fp = cs.free_product()?;
    let psi = build_psi_identity(cs, ks, yz, dec)?;
    let t0 = ks.transversal(ks.alpha0());
    let mut checks = CheckList::new();

    let mut failure = None;
    'outer: for alpha in 0..fp.factors().len() {
        for x in 0..fp.factor(alpha).order() {
            let expected = standard_embed(cs, t0, &ProductWord::syllable(alpha, x))?;
            if psi.factor_image(alpha, x) != &expected {
                failure = Some(format!("factor {alpha}, element {x}"));
                break 'outer;
            }
        }
    }
    checks.record(
        "Psi~ is the standard embedding with transversal T_alpha0",
        failure,
    );

    let mut rng = sample::rng(seed);
    let mut failure = None;
    for _ in 0..samples {
        let h = sample::random_subgroup_element(cs, t0, &mut rng, MAX_SYLLABLES);
        let got = psi.coset0(fp, &h);
        if got != h {
            failure = Some(format!("h = {h}: coordinate {got}"));
            break;
        }
    }
    checks.record(
        format!("Psi~(h) at H equals h on {samples} sampled h in H"),
        failure,
    );
    Ok(checks)
}

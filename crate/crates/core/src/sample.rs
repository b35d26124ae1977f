//! Seeded sampling of words, subgroup elements and whole problems.
//!
//! All randomness comes from [`rng`], a ChaCha8 stream (`rand_chacha`)
//! seeded with `ChaCha8Rng::seed_from_u64(seed)`. Integers are drawn with
//! `rand`'s `gen_range`, so identical seeds give identical samples.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{
    CosetSpace, CosetWord, FreeGroupProblem, FreeProductProblem, NamedFactor, Problem,
};
use crate::fingrp::{self, Caps, CayleyGroup, PermGroup, Permutation};
use crate::group::Group;
use crate::words::{Alphabet, FactorElement, FreeProduct, FreeWord, Letter, ProductWord};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A reduced word of length uniform in `0..=max_len` over `rank` generators.
pub fn random_free_word(rng: &mut SampleRng, rank: usize, max_len: usize) -> FreeWord {
    if rank == 0 {
        return FreeWord::identity();
    }
    let len = rng.gen_range(0..=max_len);
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5));
        if letters.last() != Some(&l.inverted()) {
            letters.push(l);
        }
    }
    FreeWord::from_letters(letters)
}

/// A normal-form word with syllable length uniform in `0..=max_syllables`
/// (shorter if the product has fewer than two nontrivial factors).
pub fn random_product_word(
    rng: &mut SampleRng,
    product: &FreeProduct,
    max_syllables: usize,
) -> ProductWord {
    let nontrivial: Vec<usize> = (0..product.factors().len())
        .filter(|&a| product.factor(a).order() > 1)
        .collect();
    if nontrivial.is_empty() {
        return ProductWord::identity();
    }
    let len = rng.gen_range(0..=max_syllables);
    let mut items = Vec::with_capacity(len);
    let mut last: Option<usize> = None;
    for _ in 0..len {
        let choices: Vec<usize> = nontrivial
            .iter()
            .copied()
            .filter(|&a| Some(a) != last)
            .collect();
        let Some(&alpha) = choices.choose(rng) else {
            break;
        };
        let elem = rng.gen_range(1..product.factor(alpha).order());
        items.push(FactorElement::new(alpha, elem));
        last = Some(alpha);
    }
    product.word_from(items).expect("indices in range")
}

/// Words that can be drawn at random for a given coset space.
pub trait RandomWord: CosetWord {
    fn random(cs: &CosetSpace, rng: &mut SampleRng, max_len: usize) -> Self;
}

impl RandomWord for FreeWord {
    fn random(cs: &CosetSpace, rng: &mut SampleRng, max_len: usize) -> Self {
        let rank = cs.alphabet().map(Alphabet::len).unwrap_or(0);
        random_free_word(rng, rank, max_len)
    }
}

impl RandomWord for ProductWord {
    fn random(cs: &CosetSpace, rng: &mut SampleRng, max_len: usize) -> Self {
        match cs.free_product() {
            Ok(fp) => random_product_word(rng, fp, max_len),
            Err(_) => ProductWord::identity(),
        }
    }
}

/// A random element of `H`: a random word `w` followed by the inverse of the
/// transversal entry of its coset.
pub fn random_subgroup_element<W: RandomWord>(
    cs: &CosetSpace,
    transversal: &[W],
    rng: &mut SampleRng,
    max_len: usize,
) -> W {
    let group = W::ambient(cs).expect("word kind matches the coset space");
    let w = W::random(cs, rng, max_len);
    let c = w.act(cs, 0).expect("valid word");
    group.multiply(&w, &group.invert(&transversal[c]))
}

/// A random element of the core: a random word raised to the order of its action.
pub fn random_core_element<W: RandomWord>(
    cs: &CosetSpace,
    rng: &mut SampleRng,
    max_len: usize,
) -> W {
    let group = W::ambient(cs).expect("word kind matches the coset space");
    let w = W::random(cs, rng, max_len);
    let order = crate::action::rho_of_word(cs, &w)
        .expect("valid word")
        .order();
    let mut acc = group.identity();
    for _ in 0..order {
        acc = group.multiply(&acc, &w);
    }
    acc
}

/// A random subgroup of `q` generated by up to `max_gens` random elements.
fn random_subgroup_gens(rng: &mut SampleRng, q: &PermGroup, max_gens: usize) -> Vec<Permutation> {
    let count = rng.gen_range(0..=max_gens);
    (0..count)
        .map(|_| q.element(rng.gen_range(0..q.order())).clone())
        .collect()
}

fn random_perm(rng: &mut SampleRng, degree: usize) -> Permutation {
    let mut images: Vec<usize> = (0..degree).collect();
    images.shuffle(rng);
    Permutation::new(images).expect("shuffle is a bijection")
}

/// A free-group problem with `1..=max_rank` generators on `1..=max_degree` points.
pub fn random_free_group_problem(
    rng: &mut SampleRng,
    max_rank: usize,
    max_degree: usize,
) -> Problem {
    let rank = rng.gen_range(1..=max_rank);
    let degree = rng.gen_range(1..=max_degree);
    let names: Vec<String> = (0..rank)
        .map(|k| ((b'a' + k as u8) as char).to_string())
        .collect();
    let images: Vec<Permutation> = (0..rank).map(|_| random_perm(rng, degree)).collect();
    let q = fingrp::closure(degree, &images, usize::MAX).expect("no cap");
    let subgroup = random_subgroup_gens(rng, &q, 2);
    Problem::FreeGroup(FreeGroupProblem {
        alphabet: Alphabet::new(names).expect("distinct names"),
        degree,
        images,
        subgroup,
    })
}

/// The small groups used for random free products: C2, C3, C4 and the Klein group.
pub fn small_groups() -> Vec<(&'static str, CayleyGroup)> {
    vec![
        ("C2", CayleyGroup::cyclic(2)),
        ("C3", CayleyGroup::cyclic(3)),
        ("C4", CayleyGroup::cyclic(4)),
        ("V4", CayleyGroup::klein_four()),
    ]
}

/// A free product of `factors` groups of order at most 4, mapped into
/// `Sym(d)` for `d` in `2..=max_degree` by random homomorphisms.
pub fn random_free_product_problem(
    rng: &mut SampleRng,
    factors: usize,
    max_degree: usize,
) -> Problem {
    let degree = rng.gen_range(2..=max_degree.max(2));
    let sym = PermGroup::symmetric(degree);
    let pool = small_groups();
    let mut named = Vec::with_capacity(factors);
    let mut images = Vec::with_capacity(factors);
    for _ in 0..factors {
        let (name, group) = pool.choose(rng).expect("nonempty pool").clone();
        let homs = fingrp::enumerate_homs(&group, &sym, usize::MAX, &Caps::default())
            .expect("within caps");
        let hom = homs.choose(rng).expect("trivial hom exists");
        images.push(
            hom.iter()
                .map(|&k| sym.element(k).clone())
                .collect::<Vec<_>>(),
        );
        named.push(NamedFactor {
            name: name.to_string(),
            group,
        });
    }
    let gens: Vec<Permutation> = images.iter().flatten().cloned().collect();
    let q = fingrp::closure(degree, &gens, usize::MAX).expect("no cap");
    let subgroup = random_subgroup_gens(rng, &q, 2);
    Problem::FreeProduct(FreeProductProblem {
        factors: named,
        degree,
        images,
        subgroup,
    })
}

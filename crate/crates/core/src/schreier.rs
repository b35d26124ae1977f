//! Schreier transversals, the Nielsen–Schreier basis of `H ≤ F`, rewriting of
//! subgroup elements over that basis, and a checker for the extension property
//! of the basis through the wreath product `K ≀ ρ(F)`.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::action::{rho_of_word, ActionError, CosetSpace, CosetWord};
use crate::fingrp::{PermGroup, Permutation};
use crate::report::CheckList;
use crate::sample::{self, RandomWord};
use crate::words::{Alphabet, FreeWord, Letter};
use crate::wreath::{self, project_i, w_invert, w_multiply, WreathElement, WreathError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchreierError {
    #[error("word is not in the subgroup")]
    NotInSubgroup,
    #[error("basis words for provenances {0:?} and {1:?} coincide")]
    DuplicateBasisWord((usize, usize), (usize, usize)),
    #[error("expected {expected} values, found {found}")]
    AssignmentLength { expected: usize, found: usize },
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Wreath(#[from] WreathError),
}

/// A prefix-closed right transversal; `reps[i]` represents coset `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierTransversal {
    reps: Vec<FreeWord>,
}

impl SchreierTransversal {
    pub fn reps(&self) -> &[FreeWord] {
        &self.reps
    }

    pub fn rep(&self, coset: usize) -> &FreeWord {
        &self.reps[coset]
    }

    /// Whether every prefix of every representative is itself a representative.
    pub fn is_prefix_closed(&self) -> bool {
        let set: std::collections::HashSet<&FreeWord> = self.reps.iter().collect();
        self.reps
            .iter()
            .all(|r| (0..r.len()).all(|k| set.contains(&r.prefix(k))))
    }
}

/// Breadth-first search from `H` over the letters `x₁ < … < xₙ < x₁⁻¹ < … < xₙ⁻¹`.
///
/// Each coset receives the shortlex-least word reaching it; the result is
/// prefix-closed and every representative is a shortest word in its coset.
pub fn build_transversal(cs: &CosetSpace) -> Result<SchreierTransversal, SchreierError> {
    let rank = cs.alphabet()?.len();
    let letters: Vec<Letter> = (0..rank)
        .map(|g| Letter::new(g, false))
        .chain((0..rank).map(|g| Letter::new(g, true)))
        .collect();
    let mut reps: Vec<Option<FreeWord>> = vec![None; cs.size()];
    reps[0] = Some(FreeWord::identity());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        let word = reps[c].clone().expect("queued cosets have reps");
        for &l in &letters {
            let d = cs.generator_action(l.generator, l.inverse)?.apply(c);
            if reps[d].is_none() {
                reps[d] = Some(word.mul(&FreeWord::letter(l)));
                queue.push_back(d);
            }
        }
    }
    let reps = reps
        .into_iter()
        .map(|r| r.expect("the action of F on cosets is transitive"))
        .collect();
    Ok(SchreierTransversal { reps })
}

/// `b = T[coset]·x·T[coset·x]⁻¹` for the generator `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub word: FreeWord,
    pub coset: usize,
    pub generator: usize,
}

#[derive(Clone, Debug)]
pub struct SchreierBasis {
    elements: Vec<BasisElement>,
    // [coset][generator] -> basis index, None when the product is trivial
    lookup: Vec<Vec<Option<usize>>>,
    by_word: HashMap<FreeWord, usize>,
}

impl SchreierBasis {
    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn rank(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, coset: usize, generator: usize) -> Option<usize> {
        self.lookup[coset][generator]
    }

    pub fn index_of_word(&self, w: &FreeWord) -> Option<usize> {
        self.by_word.get(w).copied()
    }
}

/// All nontrivial `T[t]·x·T[t·x]⁻¹`, ordered by coset and then generator.
pub fn schreier_basis(
    cs: &CosetSpace,
    t: &SchreierTransversal,
) -> Result<SchreierBasis, SchreierError> {
    let rank = cs.alphabet()?.len();
    let mut elements = Vec::new();
    let mut lookup = vec![vec![None; rank]; cs.size()];
    let mut by_word: HashMap<FreeWord, usize> = HashMap::new();
    for coset in 0..cs.size() {
        for x in 0..rank {
            let target = cs.generator_action(x, false)?.apply(coset);
            let word = t
                .rep(coset)
                .mul(&FreeWord::generator(x))
                .mul(&t.rep(target).inverse());
            if word.is_identity() {
                continue;
            }
            if let Some(&prev) = by_word.get(&word) {
                let p = &elements[prev] as &BasisElement;
                return Err(SchreierError::DuplicateBasisWord(
                    (p.coset, p.generator),
                    (coset, x),
                ));
            }
            by_word.insert(word.clone(), elements.len());
            lookup[coset][x] = Some(elements.len());
            elements.push(BasisElement {
                word,
                coset,
                generator: x,
            });
        }
    }
    Ok(SchreierBasis {
        elements,
        lookup,
        by_word,
    })
}

/// A basis element or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisToken {
    pub index: usize,
    pub inverse: bool,
}

/// Rewrites `h ∈ H` as a word over `B ∪ B⁻¹` by walking its cosets.
pub fn schreier_rewrite(
    cs: &CosetSpace,
    b: &SchreierBasis,
    h: &FreeWord,
) -> Result<Vec<BasisToken>, SchreierError> {
    if h.act(cs, 0)? != 0 {
        return Err(SchreierError::NotInSubgroup);
    }
    let mut coset = 0;
    let mut tokens = Vec::new();
    for l in h.letters() {
        let next = cs.generator_action(l.generator, l.inverse)?.apply(coset);
        // for x⁻¹ at coset c the factor is (T[c·x⁻¹]·x·T[c]⁻¹)⁻¹
        let (from, inverse) = if l.inverse {
            (next, true)
        } else {
            (coset, false)
        };
        if let Some(index) = b.index_of(from, l.generator) {
            tokens.push(BasisToken { index, inverse });
        }
        coset = next;
    }
    Ok(tokens)
}

pub fn evaluate_tokens(b: &SchreierBasis, tokens: &[BasisToken]) -> FreeWord {
    tokens.iter().fold(FreeWord::identity(), |acc, tok| {
        let w = &b.elements[tok.index].word;
        if tok.inverse {
            acc.mul(&w.inverse())
        } else {
            acc.mul(w)
        }
    })
}

pub fn render_tokens(tokens: &[BasisToken]) -> String {
    if tokens.is_empty() {
        return "1".to_string();
    }
    tokens
        .iter()
        .map(|t| {
            if t.inverse {
                format!("b{}^-1", t.index)
            } else {
                format!("b{}", t.index)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// For every basis element with provenance `(t, x)`, walks the unreduced
/// product `T[t]·x·T[t·x]⁻¹` letter by letter and checks that each step
/// `t_{i-1}·x_i·t_i⁻¹` is trivial except at the position of `x`, where it is `b`.
pub fn check_provenance_walks(
    cs: &CosetSpace,
    t: &SchreierTransversal,
    b: &SchreierBasis,
) -> CheckList {
    let mut checks = CheckList::new();
    let mut failure = None;
    'outer: for (k, e) in b.elements.iter().enumerate() {
        let target = match cs.generator_action(e.generator, false) {
            Ok(p) => p.apply(e.coset),
            Err(err) => {
                failure = Some(err.to_string());
                break;
            }
        };
        let mut letters: Vec<Letter> = t.rep(e.coset).letters().to_vec();
        let key = letters.len();
        letters.push(Letter::new(e.generator, false));
        letters.extend_from_slice(t.rep(target).inverse().letters());
        let mut coset = 0;
        for (i, l) in letters.iter().enumerate() {
            let next = cs
                .generator_action(l.generator, l.inverse)
                .expect("generator checked above")
                .apply(coset);
            let step = t
                .rep(coset)
                .mul(&FreeWord::letter(*l))
                .mul(&t.rep(next).inverse());
            let expected = if i == key {
                e.word.clone()
            } else {
                FreeWord::identity()
            };
            if step != expected {
                failure = Some(format!("basis element b{k}, position {i}"));
                break 'outer;
            }
            coset = next;
        }
    }
    checks.record(
        "schreier walk: t(i-1) x(i) t(i)^-1 trivial off the provenance letter",
        failure,
    );
    checks
}

/// `τ(x) = (α∘f_x, ρ(x))` for every generator, where `f_x` is the standard
/// embedding of `x` and `α` is extended to `B ∪ {1}` by `α(1) = 1`.
pub struct TauTable {
    forward: Vec<WreathElement<Permutation>>,
    backward: Vec<WreathElement<Permutation>>,
    degree: usize,
    k: PermGroup,
}

impl TauTable {
    pub fn build(
        cs: &CosetSpace,
        t: &SchreierTransversal,
        b: &SchreierBasis,
        k: &PermGroup,
        alpha: &[Permutation],
    ) -> Result<TauTable, SchreierError> {
        if alpha.len() != b.rank() {
            return Err(SchreierError::AssignmentLength {
                expected: b.rank(),
                found: alpha.len(),
            });
        }
        let rank = cs.alphabet()?.len();
        let id = Permutation::identity(k.degree());
        let mut forward = Vec::with_capacity(rank);
        for x in 0..rank {
            let fx = wreath::standard_embed(cs, t.reps(), &FreeWord::generator(x))?;
            // every coordinate of f_x lies in B ∪ {1}
            let mapped = wreath::map_base(
                |w: &FreeWord| match b.index_of_word(w) {
                    Some(i) => alpha[i].clone(),
                    None => {
                        debug_assert!(w.is_identity(), "f_x coordinate outside B ∪ {{1}}");
                        id.clone()
                    }
                },
                &fx,
            );
            forward.push(mapped);
        }
        let backward = forward.iter().map(|e| w_invert(k, e)).collect();
        Ok(TauTable {
            forward,
            backward,
            degree: cs.size(),
            k: k.clone(),
        })
    }

    pub fn generator(&self, x: usize) -> &WreathElement<Permutation> {
        &self.forward[x]
    }

    /// `τ(w)` as the product of the letter images.
    pub fn apply(&self, w: &FreeWord) -> WreathElement<Permutation> {
        let mut acc = wreath::w_identity(&self.k, self.degree);
        for l in w.letters() {
            let e = if l.inverse {
                &self.backward[l.generator]
            } else {
                &self.forward[l.generator]
            };
            acc = w_multiply(&self.k, &acc, e).expect("same coset space");
        }
        acc
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisEntryJson {
    pub word: String,
    pub coset: usize,
    pub generator: String,
}

/// `{"basis": [...], "rank": k, "checks": [...]}`
#[derive(Clone, Debug, Serialize)]
pub struct NsReport {
    pub basis: Vec<BasisEntryJson>,
    pub rank: usize,
    pub checks: CheckList,
}

pub fn basis_json(alphabet: &Alphabet, b: &SchreierBasis) -> Vec<BasisEntryJson> {
    b.elements
        .iter()
        .map(|e| BasisEntryJson {
            word: alphabet.render(&e.word),
            coset: e.coset,
            generator: alphabet.name(e.generator).to_string(),
        })
        .collect()
}

/// Replays the extension argument for the basis `B` and the assignment
/// `alpha: B → K`:
///
/// 1. `π_K τ(b) = α(b)` for every `b ∈ B` (exhaustive);
/// 2. `τ(wv) = τ(w)τ(v)` on `samples` random pairs;
/// 3. the permutation part of `τ(w)` is `ρ(w)` on the same samples and on every generator.
pub fn verify_ns_universal(
    cs: &CosetSpace,
    t: &SchreierTransversal,
    b: &SchreierBasis,
    k: &PermGroup,
    alpha: &[Permutation],
    samples: usize,
    seed: u64,
) -> Result<NsReport, SchreierError> {
    let alphabet = cs.alphabet()?;
    let tau = TauTable::build(cs, t, b, k, alpha)?;
    let mut checks = CheckList::new();

    let mut failure = None;
    for (i, e) in b.elements.iter().enumerate() {
        let image = project_i(&tau.apply(&e.word), 0);
        if image.as_ref() != Ok(&alpha[i]) {
            failure = Some(format!(
                "b{i} = {}: projection {:?}, assigned {}",
                alphabet.render(&e.word),
                image,
                alpha[i]
            ));
            break;
        }
    }
    checks.record(
        "extension: pi_K tau(b) = alpha(b) for every basis element",
        failure,
    );

    let mut rng = sample::rng(seed);
    let mut hom_failure = None;
    let mut rho_failure = None;
    for x in 0..alphabet.len() {
        let w = FreeWord::generator(x);
        if tau.generator(x).p != rho_of_word(cs, &w)? {
            rho_failure.get_or_insert_with(|| format!("generator {}", alphabet.name(x)));
        }
    }
    for _ in 0..samples {
        let w = FreeWord::random(cs, &mut rng, 8);
        let v = FreeWord::random(cs, &mut rng, 8);
        let lhs = tau.apply(&w.mul(&v));
        let rhs = w_multiply(k, &tau.apply(&w), &tau.apply(&v))?;
        if lhs != rhs && hom_failure.is_none() {
            hom_failure = Some(format!(
                "w = {}, v = {}",
                alphabet.render(&w),
                alphabet.render(&v)
            ));
        }
        if lhs.p != rho_of_word(cs, &w.mul(&v))? && rho_failure.is_none() {
            rho_failure = Some(format!("w = {}", alphabet.render(&w.mul(&v))));
        }
    }
    checks.record(
        format!("homomorphism: tau(wv) = tau(w) tau(v) on {samples} sampled pairs"),
        hom_failure,
    );
    checks.record("projection: theta(tau(w)) = rho(w)", rho_failure);

    Ok(NsReport {
        basis: basis_json(alphabet, b),
        rank: b.rank(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{build_coset_space, in_subgroup, FreeGroupProblem, Problem};
    use crate::fingrp::{closure, Caps};

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn space(
        names: &[&str],
        degree: usize,
        images: Vec<Permutation>,
        sub: Vec<Permutation>,
    ) -> CosetSpace {
        let p = Problem::FreeGroup(FreeGroupProblem {
            alphabet: Alphabet::new(names.iter().copied()).unwrap(),
            degree,
            images,
            subgroup: sub,
        });
        build_coset_space(&p, &Caps::default()).unwrap()
    }

    fn index_two() -> CosetSpace {
        space(&["a"], 2, vec![cyc(2, &[&[0, 1]])], vec![])
    }

    fn s3_trivial() -> CosetSpace {
        space(
            &["a", "b"],
            3,
            vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])],
            vec![],
        )
    }

    #[test]
    fn transversal_examples() {
        let whole = space(
            &["a"],
            2,
            vec![cyc(2, &[&[0, 1]])],
            vec![cyc(2, &[&[0, 1]])],
        );
        assert_eq!(
            build_transversal(&whole).unwrap().reps(),
            &[FreeWord::identity()]
        );

        let cs = index_two();
        let t = build_transversal(&cs).unwrap();
        let ab = cs.alphabet().unwrap();
        let rendered: Vec<String> = t.reps().iter().map(|w| ab.render(w)).collect();
        assert_eq!(rendered, ["1", "a"]);

        let cs = s3_trivial();
        let t = build_transversal(&cs).unwrap();
        assert_eq!(t.reps().len(), 6);
        assert!(t.is_prefix_closed());
        // a, b, b^-1 reach every element of S3 within two letters
        assert_eq!(t.reps().iter().map(FreeWord::len).max(), Some(2));
        for (i, r) in t.reps().iter().enumerate() {
            assert_eq!(r.act(&cs, 0).unwrap(), i);
        }
    }

    /// Shortest words per coset by exhaustive enumeration of all reduced words.
    #[test]
    fn transversal_reps_are_geodesic() {
        let cs = s3_trivial();
        let t = build_transversal(&cs).unwrap();
        let mut best = vec![usize::MAX; cs.size()];
        let mut frontier = vec![FreeWord::identity()];
        for len in 0..=4 {
            for w in &frontier {
                let c = w.act(&cs, 0).unwrap();
                best[c] = best[c].min(len);
            }
            frontier = frontier
                .iter()
                .flat_map(|w| {
                    (0..2).flat_map(move |g| {
                        [false, true]
                            .into_iter()
                            .map(move |inv| w.mul(&FreeWord::letter(Letter::new(g, inv))))
                    })
                })
                .filter(|w| w.len() == len + 1)
                .collect();
        }
        for (i, r) in t.reps().iter().enumerate() {
            assert_eq!(r.len(), best[i]);
        }
    }

    #[test]
    fn basis_examples() {
        let whole = space(
            &["a", "b"],
            2,
            vec![cyc(2, &[&[0, 1]]), Permutation::identity(2)],
            vec![cyc(2, &[&[0, 1]])],
        );
        let t = build_transversal(&whole).unwrap();
        let b = schreier_basis(&whole, &t).unwrap();
        assert_eq!(
            b.elements()
                .iter()
                .map(|e| e.word.clone())
                .collect::<Vec<_>>(),
            vec![FreeWord::generator(0), FreeWord::generator(1)]
        );

        let cs = index_two();
        let t = build_transversal(&cs).unwrap();
        let b = schreier_basis(&cs, &t).unwrap();
        assert_eq!(b.rank(), 1);
        assert_eq!(cs.alphabet().unwrap().render(&b.elements()[0].word), "a a");
        assert_eq!((b.elements()[0].coset, b.elements()[0].generator), (1, 0));

        let cs = s3_trivial();
        let t = build_transversal(&cs).unwrap();
        let b = schreier_basis(&cs, &t).unwrap();
        assert_eq!(b.rank(), 7);
        for e in b.elements() {
            assert!(in_subgroup(&cs, &e.word).unwrap());
        }
        assert!(check_provenance_walks(&cs, &t, &b).all_passed());
    }

    #[test]
    fn rewrite_examples() {
        let cs = index_two();
        let t = build_transversal(&cs).unwrap();
        let b = schreier_basis(&cs, &t).unwrap();
        let ab = cs.alphabet().unwrap().clone();
        assert!(schreier_rewrite(&cs, &b, &FreeWord::identity())
            .unwrap()
            .is_empty());
        let tokens = schreier_rewrite(&cs, &b, &ab.parse("a a a a").unwrap()).unwrap();
        assert_eq!(
            tokens,
            vec![
                BasisToken {
                    index: 0,
                    inverse: false
                };
                2
            ]
        );
        assert_eq!(render_tokens(&tokens), "b0 b0");
        let tokens = schreier_rewrite(&cs, &b, &ab.parse("a^-1 a^-1").unwrap()).unwrap();
        assert_eq!(
            tokens,
            vec![BasisToken {
                index: 0,
                inverse: true
            }]
        );
        assert_eq!(
            schreier_rewrite(&cs, &b, &ab.parse("a").unwrap()),
            Err(SchreierError::NotInSubgroup)
        );
    }

    #[test]
    fn rewrite_round_trips() {
        let cs = s3_trivial();
        let t = build_transversal(&cs).unwrap();
        let b = schreier_basis(&cs, &t).unwrap();
        let mut rng = sample::rng(11);
        for _ in 0..100 {
            let h = sample::random_subgroup_element(&cs, t.reps(), &mut rng, 10);
            let tokens = schreier_rewrite(&cs, &b, &h).unwrap();
            assert_eq!(evaluate_tokens(&b, &tokens), h);
        }
    }

    #[test]
    fn universal_index_two_by_hand() {
        let cs = index_two();
        let t = build_transversal(&cs).unwrap();
        let b = schreier_basis(&cs, &t).unwrap();
        let k = closure(2, &[cyc(2, &[&[0, 1]])], 10).unwrap();
        let alpha = vec![cyc(2, &[&[0, 1]])];
        let tau = TauTable::build(&cs, &t, &b, &k, &alpha).unwrap();
        // tau(a) = ([id, (0 1)], (0 1))
        assert_eq!(
            tau.generator(0).f,
            vec![Permutation::identity(2), cyc(2, &[&[0, 1]])]
        );
        assert_eq!(tau.generator(0).p, cyc(2, &[&[0, 1]]));
        let aa = FreeWord::generator(0).pow(2);
        assert_eq!(project_i(&tau.apply(&aa), 0), Ok(cyc(2, &[&[0, 1]])));
        let report = verify_ns_universal(&cs, &t, &b, &k, &alpha, 50, 0).unwrap();
        assert!(report.checks.all_passed(), "{}", report.checks.to_text());
    }

    #[test]
    fn universal_with_constant_identity() {
        let cs = s3_trivial();
        let t = build_transversal(&cs).unwrap();
        let b = schreier_basis(&cs, &t).unwrap();
        let k = PermGroup::symmetric(3);
        let alpha = vec![Permutation::identity(3); b.rank()];
        let report = verify_ns_universal(&cs, &t, &b, &k, &alpha, 50, 1).unwrap();
        assert!(report.checks.all_passed());
        assert_eq!(
            verify_ns_universal(&cs, &t, &b, &k, &alpha[1..], 5, 1).unwrap_err(),
            SchreierError::AssignmentLength {
                expected: 7,
                found: 6
            }
        );
    }
}

use proptest::prelude::*;

use wreathkit::action::{
    build_coset_space, in_core, in_subgroup, rho_of_word, CosetSpace, CosetWord,
};
use wreathkit::fingrp::{self, Caps, CayleyGroup, PermGroup, Permutation};
use wreathkit::group::Group;
use wreathkit::kurosh;
use wreathkit::sample;
use wreathkit::schreier;
use wreathkit::words::{FactorElement, FreeGroup, FreeProduct, FreeWord, Letter, ProductWord};
use wreathkit::wreath::{
    map_base, project_i, standard_embed, w_identity, w_invert, w_multiply, WreathElement,
};

fn free_word() -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((0usize..3, any::<bool>()), 0..12)
        .prop_map(|ls| FreeWord::from_letters(ls.into_iter().map(|(g, inv)| Letter::new(g, inv))))
}

fn product() -> FreeProduct {
    FreeProduct::new(vec![
        CayleyGroup::cyclic(2),
        CayleyGroup::cyclic(3),
        CayleyGroup::klein_four(),
    ])
}

fn product_word() -> impl Strategy<Value = ProductWord> {
    prop::collection::vec((0usize..3, 0usize..4), 0..10).prop_map(|items| {
        let fp = product();
        let items = items
            .into_iter()
            .map(|(a, k)| FactorElement::new(a, k % fp.factor(a).order()));
        fp.word_from(items).unwrap()
    })
}

fn s3() -> PermGroup {
    PermGroup::symmetric(3)
}

/// Elements of `S3 ≀ Sym(3)`, coordinates and permutation as indices into `S3`.
fn wreath_s3() -> impl Strategy<Value = WreathElement<Permutation>> {
    (prop::collection::vec(0usize..6, 3), 0usize..6).prop_map(|(f, p)| {
        let g = s3();
        WreathElement {
            f: f.into_iter().map(|k| g.element(k).clone()).collect(),
            p: g.element(p).clone(),
        }
    })
}

fn is_reduced(w: &FreeWord) -> bool {
    w.letters().windows(2).all(|p| p[0] != p[1].inverted())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn free_group_axioms(a in free_word(), b in free_word(), c in free_word()) {
        let g = FreeGroup;
        prop_assert_eq!(g.multiply(&g.multiply(&a, &b), &c), g.multiply(&a, &g.multiply(&b, &c)));
        prop_assert_eq!(g.multiply(&a, &g.identity()), a.clone());
        prop_assert_eq!(g.multiply(&g.identity(), &a), a.clone());
        prop_assert!(g.multiply(&a, &g.invert(&a)).is_identity());
        prop_assert!(is_reduced(&a.mul(&b)));
        prop_assert_eq!(FreeWord::from_letters(a.letters().to_vec()), a.clone());
        prop_assert!(a.mul(&b).len() <= a.len() + b.len());
        prop_assert_eq!(a.inverse().len(), a.len());
    }

    #[test]
    fn free_product_axioms(a in product_word(), b in product_word(), c in product_word()) {
        let fp = product();
        prop_assert_eq!(fp.mul(&fp.mul(&a, &b), &c), fp.mul(&a, &fp.mul(&b, &c)));
        prop_assert_eq!(fp.mul(&a, &ProductWord::identity()), a.clone());
        prop_assert!(fp.mul(&a, &fp.inverse(&a)).is_identity());
        prop_assert!(fp.mul(&fp.inverse(&a), &a).is_identity());
        let ab = fp.normalize_product(&a, &b).unwrap();
        prop_assert_eq!(fp.word_from(ab.syllables().iter().copied()).unwrap(), ab.clone());
        prop_assert!(ab.syllables().windows(2).all(|p| p[0].factor != p[1].factor));
        prop_assert!(ab.syllable_length() <= a.syllable_length() + b.syllable_length());
        prop_assert_eq!(fp.inverse(&a).syllable_length(), a.syllable_length());
    }

    #[test]
    fn wreath_axioms(a in wreath_s3(), b in wreath_s3(), c in wreath_s3()) {
        let k = s3();
        let ab = w_multiply(&k, &a, &b).unwrap();
        let bc = w_multiply(&k, &b, &c).unwrap();
        prop_assert_eq!(w_multiply(&k, &ab, &c).unwrap(), w_multiply(&k, &a, &bc).unwrap());
        let id = w_identity(&k, 3);
        prop_assert_eq!(w_multiply(&k, &a, &id).unwrap(), a.clone());
        prop_assert_eq!(w_multiply(&k, &a, &w_invert(&k, &a)).unwrap(), id.clone());
        prop_assert_eq!(w_multiply(&k, &w_invert(&k, &a), &a).unwrap(), id);
    }
}

fn space(seed: u64, free: bool) -> CosetSpace {
    let mut rng = sample::rng(seed);
    let p = if free {
        sample::random_free_group_problem(&mut rng, 3, 5)
    } else {
        sample::random_free_product_problem(&mut rng, 2, 5)
    };
    build_coset_space(&p, &Caps::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// `φ(g⁻¹) = φ(g)⁻¹` coordinatewise: `f_{g⁻¹}(s) = f_g(s·ρ(g)⁻¹)⁻¹`.
    #[test]
    fn embedding_inverse_identity(seed in any::<u64>(), wseed in any::<u64>()) {
        let cs = space(seed, true);
        let t = schreier::build_transversal(&cs).unwrap();
        let mut rng = sample::rng(wseed);
        let g: FreeWord = sample::random_free_word(&mut rng, cs.alphabet().unwrap().len(), 10);
        let direct = standard_embed(&cs, t.reps(), &g.inverse()).unwrap();
        let inverted = w_invert(&FreeGroup, &standard_embed(&cs, t.reps(), &g).unwrap());
        prop_assert_eq!(direct, inverted);
    }

    /// For `r` whose action fixes coset `i`, the `i`-th coordinate is `T[i]·r·T[i]⁻¹`.
    #[test]
    fn projection_at_fixed_points(seed in any::<u64>(), wseed in any::<u64>()) {
        let cs = space(seed, true);
        let t = schreier::build_transversal(&cs).unwrap();
        let mut rng = sample::rng(wseed);
        let r: FreeWord = sample::random_free_word(&mut rng, cs.alphabet().unwrap().len(), 10);
        let e = standard_embed(&cs, t.reps(), &r).unwrap();
        let rho = rho_of_word(&cs, &r).unwrap();
        for i in 0..cs.size() {
            if rho.apply(i) == i {
                let expected = t.rep(i).mul(&r).mul(&t.rep(i).inverse());
                prop_assert_eq!(project_i(&e, i).unwrap(), expected);
            } else {
                prop_assert!(project_i(&e, i).is_err());
            }
        }
    }

    /// Core elements embed with trivial permutation part, so every projection is defined.
    #[test]
    fn core_elements_embed_diagonally(seed in any::<u64>(), wseed in any::<u64>()) {
        let cs = space(seed, true);
        let t = schreier::build_transversal(&cs).unwrap();
        let mut rng = sample::rng(wseed);
        let w: FreeWord = sample::random_core_element(&cs, &mut rng, 6);
        prop_assert!(in_core(&cs.core_test(), &w).unwrap());
        prop_assert!(in_subgroup(&cs, &w).unwrap());
        let e = standard_embed(&cs, t.reps(), &w).unwrap();
        prop_assert!(e.p.is_identity());
        for i in 0..cs.size() {
            prop_assert!(project_i(&e, i).is_ok());
        }
    }

    #[test]
    fn subgroup_predicate_is_closed(seed in any::<u64>(), wseed in any::<u64>()) {
        let cs = space(seed, false);
        let m = kurosh::syllable_metrics(&cs).unwrap();
        let ks = kurosh::build_kurosh_system(&cs, &m, 0).unwrap();
        let mut rng = sample::rng(wseed);
        let fp = cs.free_product().unwrap();
        let a: ProductWord = sample::random_subgroup_element(&cs, ks.transversal(0), &mut rng, 6);
        let b: ProductWord = sample::random_subgroup_element(&cs, ks.transversal(0), &mut rng, 6);
        prop_assert!(in_subgroup(&cs, &fp.mul(&a, &b)).unwrap());
        prop_assert!(in_subgroup(&cs, &fp.inverse(&a)).unwrap());
        let core: ProductWord = sample::random_core_element(&cs, &mut rng, 6);
        prop_assert!(in_subgroup(&cs, &core).unwrap());
    }

    #[test]
    fn coset_action_is_transitive_and_lagrange_holds(seed in any::<u64>()) {
        let cs = space(seed, seed % 2 == 0);
        prop_assert_eq!(cs.image_group().order() % cs.image_subgroup().order(), 0);
        prop_assert_eq!(cs.size(), cs.image_group().order() / cs.image_subgroup().order());
        let actions: Vec<Permutation> = match cs.alphabet() {
            Ok(ab) => (0..ab.len()).map(|g| cs.generator_action(g, false).unwrap().clone()).collect(),
            Err(_) => (0..2).flat_map(|a| cs.factor_actions(a).unwrap().to_vec()).collect(),
        };
        prop_assert_eq!(fingrp::orbit(&actions, 0).len(), cs.size());
    }

    #[test]
    fn kurosh_rewrite_round_trips(seed in any::<u64>(), wseed in any::<u64>()) {
        let cs = space(seed, false);
        let m = kurosh::syllable_metrics(&cs).unwrap();
        let ks = kurosh::build_kurosh_system(&cs, &m, 0).unwrap();
        let yz = kurosh::yz_elements(&cs, &ks).unwrap();
        let dec = kurosh::decompose(&cs, &ks, &yz).unwrap();
        let mut rng = sample::rng(wseed);
        let h: ProductWord = sample::random_subgroup_element(&cs, ks.transversal(0), &mut rng, 10);
        let tokens = kurosh::kurosh_rewrite(&cs, &ks, &yz, &dec, &h).unwrap();
        prop_assert_eq!(kurosh::evaluate_kurosh_tokens(cs.free_product().unwrap(), &dec, &tokens), h);
    }
}

/// Every element of `C ≀ Sym(k)` for a small Cayley group `C`.
fn all_wreath(c: &CayleyGroup, k: usize) -> Vec<WreathElement<usize>> {
    let perms = PermGroup::symmetric(k);
    let mut out = Vec::new();
    let total = c.order().pow(k as u32);
    for p in perms.elements() {
        for code in 0..total {
            let f = (0..k)
                .map(|s| (code / c.order().pow(s as u32)) % c.order())
                .collect();
            out.push(WreathElement { f, p: p.clone() });
        }
    }
    out
}

/// `α ≀ P` is injective (surjective) exactly when `α` is, checked on C2 bases with `|Σ| ≤ 3`.
#[test]
fn base_maps_preserve_injectivity_and_surjectivity() {
    let c2 = CayleyGroup::cyclic(2);
    let c4 = CayleyGroup::cyclic(4);
    // (source, target, map, injective, surjective)
    let cases: Vec<(&CayleyGroup, &CayleyGroup, Vec<usize>, bool, bool)> = vec![
        (&c2, &c2, vec![0, 1], true, true),
        (&c2, &c2, vec![0, 0], false, false),
        (&c2, &c4, vec![0, 2], true, false),
        (&c4, &c2, vec![0, 1, 0, 1], false, true),
    ];
    for (src, dst, alpha, inj, surj) in cases {
        for a in 0..src.order() {
            for b in 0..src.order() {
                assert_eq!(alpha[src.mul(a, b)], dst.mul(alpha[a], alpha[b]));
            }
        }
        for k in 1..=3 {
            let domain = all_wreath(src, k);
            let images: std::collections::HashSet<WreathElement<usize>> = domain
                .iter()
                .map(|e| map_base(|x: &usize| alpha[*x], e))
                .collect();
            assert_eq!(images.len() == domain.len(), inj, "injectivity, k = {k}");
            assert_eq!(
                images.len() == all_wreath(dst, k).len(),
                surj,
                "surjectivity, k = {k}"
            );
            // and the image map is a homomorphism
            for x in domain.iter().take(12) {
                for y in domain.iter().take(12) {
                    let xy = w_multiply(src, x, y).unwrap();
                    let lhs = map_base(|v: &usize| alpha[*v], &xy);
                    let rhs = w_multiply(
                        dst,
                        &map_base(|v: &usize| alpha[*v], x),
                        &map_base(|v: &usize| alpha[*v], y),
                    )
                    .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn embedding_is_a_homomorphism_on_product_words() {
    let cs = space(17, false);
    let m = kurosh::syllable_metrics(&cs).unwrap();
    let ks = kurosh::build_kurosh_system(&cs, &m, 0).unwrap();
    let fp = cs.free_product().unwrap();
    let t = ks.transversal(0);
    let mut rng = sample::rng(4);
    for _ in 0..100 {
        let w = sample::random_product_word(&mut rng, fp, 6);
        let v = sample::random_product_word(&mut rng, fp, 6);
        let lhs = standard_embed(&cs, t, &fp.mul(&w, &v)).unwrap();
        let rhs = w_multiply(
            fp,
            &standard_embed(&cs, t, &w).unwrap(),
            &standard_embed(&cs, t, &v).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(
            w.act(&cs, 0).unwrap(),
            rho_of_word(&cs, &w).unwrap().apply(0)
        );
    }
}

//! A free basis of a finite-index subgroup of a free group, rewriting over it,
//! and the extension check through `K ≀ ρ(F)`.

use wreathkit::action::{build_coset_space, FreeGroupProblem, Problem};
use wreathkit::fingrp::{Caps, PermGroup, Permutation};
use wreathkit::sample;
use wreathkit::schreier::{
    build_transversal, evaluate_tokens, render_tokens, schreier_basis, schreier_rewrite,
    verify_ns_universal,
};
use wreathkit::words::Alphabet;

fn main() {
    let problem = Problem::FreeGroup(FreeGroupProblem {
        alphabet: Alphabet::new(["a", "b"]).unwrap(),
        degree: 3,
        images: vec![
            Permutation::from_cycles(3, &[&[0, 1]]).unwrap(),
            Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
        ],
        subgroup: vec![],
    });
    let cs = build_coset_space(&problem, &Caps::default()).unwrap();
    let ab = cs.alphabet().unwrap().clone();
    let t = build_transversal(&cs).unwrap();
    let b = schreier_basis(&cs, &t).unwrap();
    println!(
        "index {}, rank {} = {}*(2-1)+1",
        cs.size(),
        b.rank(),
        cs.size()
    );
    for (k, e) in b.elements().iter().enumerate() {
        println!("  b{k} = {}", ab.render(&e.word));
    }

    let mut rng = sample::rng(3);
    let h = sample::random_subgroup_element(&cs, t.reps(), &mut rng, 10);
    let tokens = schreier_rewrite(&cs, &b, &h).unwrap();
    println!("{} = {}", ab.render(&h), render_tokens(&tokens));
    assert_eq!(evaluate_tokens(&b, &tokens), h);

    let k = PermGroup::symmetric(3);
    let alpha: Vec<Permutation> = (0..b.rank())
        .map(|i| k.element(i % k.order()).clone())
        .collect();
    let report = verify_ns_universal(&cs, &t, &b, &k, &alpha, 100, 0).unwrap();
    print!("{}", report.checks.to_text());
}

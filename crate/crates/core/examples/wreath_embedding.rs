//! The standard embedding of a free group into `H ≀ ρ(F)` and its coset-0 projection.

use wreathkit::action::{build_coset_space, FreeGroupProblem, Problem};
use wreathkit::fingrp::{Caps, Permutation};
use wreathkit::sample;
use wreathkit::schreier::build_transversal;
use wreathkit::words::{Alphabet, FreeGroup};
use wreathkit::wreath::{project_i, standard_embed, w_multiply};

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

    let g = ab.parse("a b").unwrap();
    let e = standard_embed(&cs, t.reps(), &g).unwrap();
    println!("phi(a b): p = {}", e.p);
    for (i, f) in e.f.iter().enumerate() {
        println!("  f({}) = {}", ab.render(t.rep(i)), ab.render(f));
    }

    let mut rng = sample::rng(1);
    let h = sample::random_subgroup_element(&cs, t.reps(), &mut rng, 8);
    let ph = standard_embed(&cs, t.reps(), &h).unwrap();
    println!(
        "h = {}  projects to {}",
        ab.render(&h),
        ab.render(&project_i(&ph, 0).unwrap())
    );

    let prod = w_multiply(&FreeGroup, &e, &ph).unwrap();
    let direct = standard_embed(&cs, t.reps(), &g.mul(&h)).unwrap();
    println!("phi(g) phi(h) = phi(g h): {}", prod == direct);
}

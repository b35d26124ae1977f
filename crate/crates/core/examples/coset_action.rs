//! The right cosets of a finite-index subgroup and the action on them.

use wreathkit::action::{
    build_coset_space, in_core, in_subgroup, rho_of_word, FreeGroupProblem, Problem,
};
use wreathkit::fingrp::{Caps, Permutation};
use wreathkit::words::Alphabet;

fn main() {
    // H = preimage of <(0 1)> under a -> (0 1), b -> (0 1 2); index 3
    let problem = Problem::FreeGroup(FreeGroupProblem {
        alphabet: Alphabet::new(["a", "b"]).unwrap(),
        degree: 3,
        images: vec![
            Permutation::from_cycles(3, &[&[0, 1]]).unwrap(),
            Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
        ],
        subgroup: vec![Permutation::from_cycles(3, &[&[0, 1]]).unwrap()],
    });
    println!("{}", problem.to_json());
    let cs = build_coset_space(&problem, &Caps::default()).unwrap();
    println!(
        "|Q| = {}, |S| = {}, index {}",
        cs.image_group().order(),
        cs.image_subgroup().order(),
        cs.size()
    );

    let ab = cs.alphabet().unwrap().clone();
    for text in ["a", "b", "b a b^-1", "b b b", "a b a b a b"] {
        let w = ab.parse(text).unwrap();
        println!(
            "{text:<12} rho = {}  in H: {}  in core: {}",
            rho_of_word(&cs, &w).unwrap(),
            in_subgroup(&cs, &w).unwrap(),
            in_core(&cs.core_test(), &w).unwrap()
        );
    }
}

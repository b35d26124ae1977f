//! The map Psi into `K ≀ ρ(G)` for seeded homomorphism families, and its
//! identity instantiation.

use wreathkit::action::build_coset_space;
use wreathkit::fingrp::{Caps, PermGroup};
use wreathkit::kurosh::{
    build_kurosh_system, decompose, syllable_metrics, verify_identity_instantiation,
    verify_kurosh_universal, yz_elements, PsiFamily,
};
use wreathkit::sample;

fn main() {
    let caps = Caps::default();
    let mut rng = sample::rng(2024);
    // draw until the index is at least 3
    let cs = loop {
        let problem = sample::random_free_product_problem(&mut rng, 2, 4);
        let cs = build_coset_space(&problem, &caps).unwrap();
        if cs.size() >= 3 {
            println!("{}", problem.to_json());
            break cs;
        }
    };
    let fp = cs.free_product().unwrap().clone();
    let ks = build_kurosh_system(&cs, &syllable_metrics(&cs).unwrap(), 0).unwrap();
    let yz = yz_elements(&cs, &ks).unwrap();
    let dec = decompose(&cs, &ks, &yz).unwrap();
    println!(
        "index {}, {} finite factors, free rank {}",
        dec.index,
        dec.nontrivial_factors().count(),
        dec.free_rank()
    );

    for seed in 0..3 {
        let family =
            PsiFamily::random(&mut rng, &fp, &dec, PermGroup::symmetric(3), &caps).unwrap();
        let checks =
            verify_kurosh_universal(&cs, &ks, &yz, &dec, &family, 100, seed, &caps).unwrap();
        println!(
            "seed {seed}: {} of {} checks passed",
            checks.len() - checks.failures().count(),
            checks.len()
        );
    }
    print!(
        "{}",
        verify_identity_instantiation(&cs, &ks, &yz, &dec, 100, 0)
            .unwrap()
            .to_text()
    );
}

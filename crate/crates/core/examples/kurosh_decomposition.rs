//! Kurosh system, decomposition and rewriting for a subgroup of C2 * C3.

use wreathkit::action::{build_coset_space, FreeProductProblem, NamedFactor, Problem};
use wreathkit::fingrp::{Caps, CayleyGroup, Permutation};
use wreathkit::kurosh::{
    build_kurosh_system, check_kurosh_axioms, decompose, evaluate_kurosh_tokens, kurosh_rewrite,
    render_kurosh_tokens, syllable_metrics, yz_elements,
};
use wreathkit::sample;

fn main() {
    // s -> (0 1), t -> (0 1 2); H is the preimage of <(0 1)>, index 3
    let id = Permutation::identity(3);
    let t = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
    let problem = Problem::FreeProduct(FreeProductProblem {
        factors: vec![
            NamedFactor {
                name: "C2".into(),
                group: CayleyGroup::cyclic(2),
            },
            NamedFactor {
                name: "C3".into(),
                group: CayleyGroup::cyclic(3),
            },
        ],
        degree: 3,
        images: vec![
            vec![id.clone(), Permutation::from_cycles(3, &[&[0, 1]]).unwrap()],
            vec![id, t.clone(), t.pow(2)],
        ],
        subgroup: vec![Permutation::from_cycles(3, &[&[0, 1]]).unwrap()],
    });
    let cs = build_coset_space(&problem, &Caps::default()).unwrap();
    let fp = cs.free_product().unwrap().clone();

    let m = syllable_metrics(&cs).unwrap();
    let ks = build_kurosh_system(&cs, &m, 0).unwrap();
    for a in 0..2 {
        let entries: Vec<String> = ks.transversal(a).iter().map(ToString::to_string).collect();
        println!("T_{a} = [{}]", entries.join(", "));
    }
    print!("{}", check_kurosh_axioms(&cs, &ks).unwrap().to_text());

    let yz = yz_elements(&cs, &ks).unwrap();
    let dec = decompose(&cs, &ks, &yz).unwrap();
    print!("{}", dec.to_text(cs.factor_names().unwrap()));
    println!(
        "chi(H) = {} = 3 chi(G) = {}",
        dec.euler_characteristic(),
        dec.expected_euler_characteristic()
    );

    let mut rng = sample::rng(5);
    for _ in 0..3 {
        let h = sample::random_subgroup_element(&cs, ks.transversal(0), &mut rng, 6);
        let tokens = kurosh_rewrite(&cs, &ks, &yz, &dec, &h).unwrap();
        println!("{h} = {}", render_kurosh_tokens(&dec, &tokens));
        assert_eq!(evaluate_kurosh_tokens(&fp, &dec, &tokens), h);
    }
}

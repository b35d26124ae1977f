//! Permutations, closures, Cayley tables and homomorphism enumeration.

use wreathkit::fingrp::{
    closure, enumerate_homs, orbit, stabilizer, Caps, CayleyGroup, PermGroup, Permutation,
};

fn main() {
    let s = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
    let t = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
    // composition is left to right: (s t)(i) = t(s(i))
    println!(
        "s = {s}, t = {t}, st = {}, order(st) = {}",
        s.compose(&t),
        s.compose(&t).order()
    );

    let g = closure(4, &[s.clone(), t], 1000).unwrap();
    println!("<s, t> has order {}", g.order());

    let d4 = closure(
        4,
        &[
            Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
            Permutation::from_cycles(4, &[&[1, 3]]).unwrap(),
        ],
        100,
    )
    .unwrap();
    println!("dihedral group of the square: order {}", d4.order());
    println!(
        "orbit of 0: {:?}, stabilizer size {}",
        orbit(d4.elements(), 0),
        stabilizer(d4.elements(), 0).len()
    );

    let c4 = CayleyGroup::cyclic(4);
    let s3 = PermGroup::symmetric(3);
    let homs = enumerate_homs(&c4, &s3, usize::MAX, &Caps::default()).unwrap();
    println!("{} homomorphisms C4 -> S3", homs.len());
    for h in &homs {
        let images: Vec<String> = h.iter().map(|&k| s3.element(k).to_string()).collect();
        println!("  {}", images.join(" "));
    }
    let v4 = CayleyGroup::klein_four();
    let n = enumerate_homs(&v4, &s3, usize::MAX, &Caps::default())
        .unwrap()
        .len();
    println!("{n} homomorphisms V4 -> S3");
}

//! Reduced words in a free group and normal forms in a free product.

use wreathkit::fingrp::CayleyGroup;
use wreathkit::words::{Alphabet, FreeProduct};

fn main() {
    let ab = Alphabet::new(["a", "b"]).unwrap();
    let w = ab.parse("a b b^-1 a").unwrap();
    let v = ab.parse("a^-1 b").unwrap();
    println!("a b b^-1 a reduces to {}", ab.render(&w));
    println!(
        "({}) ({}) = {}",
        ab.render(&w),
        ab.render(&v),
        ab.render(&w.mul(&v))
    );
    println!(
        "inverse of {} is {}",
        ab.render(&w),
        ab.render(&w.inverse())
    );
    println!("({})^3 = {}", ab.render(&v), ab.render(&v.pow(3)));

    // C2 * C3: syllables from the same factor merge, identities vanish
    let fp = FreeProduct::new(vec![CayleyGroup::cyclic(2), CayleyGroup::cyclic(3)]);
    let s = fp.parse("f0.1 f1.1").unwrap();
    let t = fp.parse("f1.2 f0.1").unwrap();
    println!("(f0.1 f1.1)(f1.2 f0.1) = {}", fp.mul(&s, &t));
    let u = fp.parse("f0.1 f1.1 f1.1 f0.1").unwrap();
    println!(
        "f0.1 f1.1 f1.1 f0.1 = {} with {} syllables",
        u,
        u.syllable_length()
    );
}

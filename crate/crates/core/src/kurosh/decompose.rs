//! The decomposition `H = ∗(uG_αu⁻¹ ∩ H) ∗ F(Z)`.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_rational::Ratio;
use serde::Serialize;

use crate::action::{in_subgroup, CosetSpace};
use crate::fingrp;
use crate::report::CheckList;
use crate::words::{FreeProduct, ProductWord};

use super::system::KuroshSystem;
use super::yz::YZTable;
use super::KuroshError;

/// `uG_αu⁻¹ ∩ H` for one double coset `HuG_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFactor {
    pub alpha: usize,
    pub dc: usize,
    pub u: ProductWord,
    pub u_coset: usize,
    /// elements of `G_α` fixing `Hu`, ascending (so the identity comes first)
    pub stabilizer: Vec<usize>,
    /// `u·x·u⁻¹` for the non-identity `x` in the stabilizer
    pub generators: Vec<ProductWord>,
}

impl FiniteFactor {
    pub fn order(&self) -> usize {
        self.stabilizer.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.stabilizer.len() == 1
    }

    /// `u·x·u⁻¹` for `x` in the stabilizer.
    pub fn conjugate(&self, fp: &FreeProduct, x: usize) -> ProductWord {
        fp.mul(
            &fp.mul(&self.u, &ProductWord::syllable(self.alpha, x)),
            &fp.inverse(&self.u),
        )
    }
}

/// A basis element of the free part.
///
/// Several `(coset, α)` can produce the same word: when `u = α(HuG_α) ≠ 1`
/// ends in `β`, `z[Hu][α] = z[Hu][β]`. The word is listed once, with every
/// provenance kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGenerator {
    pub word: ProductWord,
    pub coset: usize,
    pub alpha: usize,
    pub provenance: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KuroshDecomposition {
    pub alpha0: usize,
    pub index: usize,
    pub factor_orders: Vec<usize>,
    /// every double coset of every factor, trivial ones included, ordered by `(α, double coset)`
    pub factors: Vec<FiniteFactor>,
    pub free_basis: Vec<FreeGenerator>,
    /// `m_α`, the number of double cosets `HgG_α`
    pub double_cosets: Vec<usize>,
    factor_pos: HashMap<(usize, usize), usize>,
    free_pos: HashMap<ProductWord, usize>,
}

impl KuroshDecomposition {
    pub fn nontrivial_factors(&self) -> impl Iterator<Item = &FiniteFactor> {
        self.factors.iter().filter(|f| !f.is_trivial())
    }

    /// Position in [`KuroshDecomposition::factors`] of the factor at double coset `dc` of `alpha`.
    pub fn factor_position(&self, alpha: usize, dc: usize) -> usize {
        self.factor_pos[&(alpha, dc)]
    }

    pub fn free_index(&self, word: &ProductWord) -> Option<usize> {
        self.free_pos.get(word).copied()
    }

    pub fn free_rank(&self) -> usize {
        self.free_basis.len()
    }

    /// `1 − n + Σ_α (n − m_α)`.
    pub fn expected_free_rank(&self) -> i64 {
        let n = self.index as i64;
        1 - n
            + self
                .double_cosets
                .iter()
                .map(|&m| n - m as i64)
                .sum::<i64>()
    }

    /// `χ(H) = Σ 1/|F_j| − (k − 1) − r` over the `k` nontrivial factors and free rank `r`.
    pub fn euler_characteristic(&self) -> Ratio<i64> {
        let k = self.nontrivial_factors().count() as i64;
        let sum: Ratio<i64> = self
            .nontrivial_factors()
            .map(|f| Ratio::new(1, f.order() as i64))
            .sum();
        sum - Ratio::from_integer(k - 1) - Ratio::from_integer(self.free_rank() as i64)
    }

    /// `n·χ(G)` with `χ(G) = Σ_α 1/|G_α| − (|A| − 1)`.
    pub fn expected_euler_characteristic(&self) -> Ratio<i64> {
        let a = self.factor_orders.len() as i64;
        let chi: Ratio<i64> = self
            .factor_orders
            .iter()
            .map(|&o| Ratio::new(1, o as i64))
            .sum::<Ratio<i64>>()
            - Ratio::from_integer(a - 1);
        chi * Ratio::from_integer(self.index as i64)
    }

    /// Locates `y` (an element of the factor at `H_iG_α`) as `u·c·u⁻¹`,
    /// returning the factor position and `c`.
    pub fn locate(
        &self,
        fp: &FreeProduct,
        ks: &KuroshSystem,
        coset: usize,
        alpha: usize,
        x: usize,
        y: &ProductWord,
    ) -> Result<(usize, usize), KuroshError> {
        let pos = self.factor_position(alpha, ks.dc_of(alpha, coset));
        let f = &self.factors[pos];
        let q = fp.mul(&fp.mul(&fp.inverse(&f.u), y), &f.u);
        let c = match q.syllables() {
            [] => 0,
            [s] if s.factor == alpha => s.elem,
            _ => {
                return Err(KuroshError::FactorElementNotLocated {
                    coset,
                    alpha,
                    elem: x,
                })
            }
        };
        if f.stabilizer.binary_search(&c).is_err() {
            return Err(KuroshError::FactorElementNotLocated {
                coset,
                alpha,
                elem: x,
            });
        }
        Ok((pos, c))
    }

    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            alpha0: self.alpha0,
            factors: self
                .nontrivial_factors()
                .map(|f| FactorJson {
                    alpha: f.alpha,
                    u: f.u.to_string(),
                    order: f.order(),
                    generators: f.generators.iter().map(ToString::to_string).collect(),
                })
                .collect(),
            free_basis: self
                .free_basis
                .iter()
                .map(|z| FreeBasisJson {
                    word: z.word.to_string(),
                    coset: z.coset,
                    alpha: z.alpha,
                })
                .collect(),
            counts: CountsJson {
                index: self.index,
                double_cosets: self.double_cosets.clone(),
                free_rank: self.free_rank(),
            },
        }
    }

    /// Stable text rendering: index, nontrivial factors, free basis and `|Z|`.
    pub fn to_text(&self, factor_names: &[String]) -> String {
        let mut out = String::new();
        writeln!(out, "index          {}", self.index).unwrap();
        writeln!(out, "alpha0         {}", self.alpha0).unwrap();
        writeln!(out, "double cosets  {:?}", self.double_cosets).unwrap();
        let nontrivial: Vec<&FiniteFactor> = self.nontrivial_factors().collect();
        writeln!(out, "finite factors {}", nontrivial.len()).unwrap();
        for f in nontrivial {
            let name = factor_names.get(f.alpha).map_or("?", String::as_str);
            let gens: Vec<String> = f.generators.iter().map(ToString::to_string).collect();
            writeln!(
                out,
                "  {name} (factor {}) at u = {}, order {}: {}",
                f.alpha,
                f.u,
                f.order(),
                gens.join(", ")
            )
            .unwrap();
        }
        writeln!(out, "free rank |Z|  {}", self.free_rank()).unwrap();
        for (k, z) in self.free_basis.iter().enumerate() {
            writeln!(
                out,
                "  z{k} = {}  (coset {}, factor {})",
                z.word, z.coset, z.alpha
            )
            .unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorJson {
    pub alpha: usize,
    pub u: String,
    pub order: usize,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FreeBasisJson {
    pub word: String,
    pub coset: usize,
    pub alpha: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountsJson {
    pub index: usize,
    pub double_cosets: Vec<usize>,
    pub free_rank: usize,
}

/// `{"alpha0", "factors": [...], "free_basis": [...], "counts": {...}}`; trivial factors are omitted.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionJson {
    pub alpha0: usize,
    pub factors: Vec<FactorJson>,
    pub free_basis: Vec<FreeBasisJson>,
    pub counts: CountsJson,
}

pub fn decompose(
    cs: &CosetSpace,
    ks: &KuroshSystem,
    yz: &YZTable,
) -> Result<KuroshDecomposition, KuroshError> {
    let fp = cs.free_product()?;
    let count = fp.factors().len();
    let mut factors = Vec::new();
    let mut factor_pos = HashMap::new();
    for alpha in 0..count {
        let action = cs.factor_actions(alpha)?;
        for (dc, r) in ks.reps(alpha).iter().enumerate() {
            let stabilizer = fingrp::stabilizer(action, r.coset);
            let mut f = FiniteFactor {
                alpha,
                dc,
                u: r.rep.clone(),
                u_coset: r.coset,
                stabilizer,
                generators: Vec::new(),
            };
            f.generators = f.stabilizer[1..]
                .iter()
                .map(|&x| f.conjugate(fp, x))
                .collect();
            factor_pos.insert((alpha, dc), factors.len());
            factors.push(f);
        }
    }

    let mut free_basis: Vec<FreeGenerator> = Vec::new();
    let mut free_pos = HashMap::new();
    for i in 0..cs.size() {
        for alpha in 0..count {
            let z = yz.z(i, alpha);
            if z.is_identity() {
                continue;
            }
            match free_pos.get(z) {
                Some(&k) => {
                    let g: &mut FreeGenerator = &mut free_basis[k];
                    g.provenance.push((i, alpha));
                }
                None => {
                    free_pos.insert(z.clone(), free_basis.len());
                    free_basis.push(FreeGenerator {
                        word: z.clone(),
                        coset: i,
                        alpha,
                        provenance: vec![(i, alpha)],
                    });
                }
            }
        }
    }

    Ok(KuroshDecomposition {
        alpha0: ks.alpha0(),
        index: cs.size(),
        factor_orders: fp.factors().iter().map(|g| g.order()).collect(),
        double_cosets: (0..count).map(|a| ks.reps(a).len()).collect(),
        factors,
        free_basis,
        factor_pos,
        free_pos,
    })
}

/// Consistency of a decomposition with its system and tables:
/// generators in `H` and equal to the matching `y`, orbit–stabilizer counts,
/// repeated `z` words explained by a representative ending in the other
/// factor, the free-rank formula and the Euler characteristic.
pub fn check_decomposition(
    cs: &CosetSpace,
    ks: &KuroshSystem,
    yz: &YZTable,
    dec: &KuroshDecomposition,
) -> Result<CheckList, KuroshError> {
    let mut checks = CheckList::new();

    let mut failure = None;
    'outer: for f in &dec.factors {
        for (&x, g) in f.stabilizer[1..].iter().zip(&f.generators) {
            if !in_subgroup(cs, g)? || g != yz.y(f.u_coset, f.alpha, x) {
                failure = Some(format!("factor {} at u = {}: generator {g}", f.alpha, f.u));
                break 'outer;
            }
        }
    }
    checks.record(
        "factor generators u x u^-1 lie in H and equal y[Hu][x]",
        failure,
    );

    let failure = (0..dec.factor_orders.len()).find_map(|alpha| {
        let fs: Vec<&FiniteFactor> = dec.factors.iter().filter(|f| f.alpha == alpha).collect();
        let total: usize = fs.iter().map(|f| ks.reps(alpha)[f.dc].members.len()).sum();
        let bad_total =
            (total != dec.index).then(|| format!("factor {alpha}: orbits cover {total} cosets"));
        bad_total.or_else(|| {
            fs.iter().find_map(|f| {
                let orbit = ks.reps(alpha)[f.dc].members.len();
                (orbit * f.order() != dec.factor_orders[alpha]).then(|| {
                    format!(
                        "factor {alpha} at u = {}: orbit {orbit}, stabilizer {}",
                        f.u,
                        f.order()
                    )
                })
            })
        })
    });
    checks.record(
        "orbit sizes sum to the index and |stabilizer| = |G_alpha| / orbit",
        failure,
    );

    let failure = dec.free_basis.iter().find_map(|z| {
        let (i0, a0) = z.provenance[0];
        z.provenance[1..]
            .iter()
            .find(|&&(i, _)| i != i0)
            .map(|&(i, a)| format!("{} arises from ({i0}, {a0}) and ({i}, {a})", z.word))
    });
    checks.record("repeated z words come from a single coset", failure);

    let expected = dec.expected_free_rank();
    checks.record(
        "|Z| = 1 - n + sum (n - m_alpha)",
        (dec.free_rank() as i64 != expected)
            .then(|| format!("|Z| = {}, formula gives {expected}", dec.free_rank())),
    );
    let (chi, expected) = (
        dec.euler_characteristic(),
        dec.expected_euler_characteristic(),
    );
    checks.record(
        "Euler characteristic chi(H) = n chi(G)",
        (chi != expected).then(|| format!("chi(H) = {chi}, n chi(G) = {expected}")),
    );
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{build_kurosh_system, syllable_metrics, yz_elements};
    use super::*;
    use crate::fingrp::{CayleyGroup, Permutation};

    fn dec(cs: &CosetSpace, alpha0: usize) -> (KuroshSystem, YZTable, KuroshDecomposition) {
        let ks = build_kurosh_system(cs, &syllable_metrics(cs).unwrap(), alpha0).unwrap();
        let yz = yz_elements(cs, &ks).unwrap();
        let d = decompose(cs, &ks, &yz).unwrap();
        (ks, yz, d)
    }

    /// Double cosets `H\G/G_α` recounted from the coset graph by union–find.
    fn recount_double_cosets(cs: &CosetSpace, alpha: usize) -> usize {
        let mut parent: Vec<usize> = (0..cs.size()).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for perm in cs.factor_actions(alpha).unwrap() {
            for c in 0..cs.size() {
                let (a, b) = (find(&mut parent, c), find(&mut parent, perm.apply(c)));
                parent[a] = b;
            }
        }
        (0..cs.size())
            .filter(|&c| find(&mut parent, c) == c)
            .count()
    }

    #[test]
    fn sign_kernel_decomposition() {
        let cs = sign_kernel();
        let (ks, yz, d) = dec(&cs, 0);
        assert_eq!(d.nontrivial_factors().count(), 0);
        let z: Vec<String> = d.free_basis.iter().map(|z| z.word.to_string()).collect();
        assert_eq!(z, ["f1.1 f0.1"]);
        assert_eq!(d.free_rank(), 1);
        assert!(check_decomposition(&cs, &ks, &yz, &d).unwrap().all_passed());
        let json = serde_json::to_string(&d.to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"alpha0":0,"factors":[],"free_basis":[{"word":"f1.1 f0.1","coset":1,"alpha":1}],"counts":{"index":2,"double_cosets":[1,1],"free_rank":1}}"#
        );
    }

    #[test]
    fn c2_c3_trivial_subgroup() {
        let cs = c2_c3(vec![]);
        let (ks, yz, d) = dec(&cs, 0);
        assert_eq!(d.index, 6);
        assert_eq!(d.nontrivial_factors().count(), 0);
        assert_eq!(d.free_rank(), 2);
        assert_eq!(d.expected_free_rank(), 1 - 6 + (6 - 3) + (6 - 2));
        assert_eq!(d.euler_characteristic(), Ratio::from_integer(-1));
        assert_eq!(
            d.expected_euler_characteristic(),
            Ratio::new(-1, 6) * Ratio::from_integer(6)
        );
        assert!(check_decomposition(&cs, &ks, &yz, &d).unwrap().all_passed());
    }

    #[test]
    fn c2_c3_index_three() {
        let cs = c2_c3(vec![cyc(3, &[&[0, 1]])]);
        let (ks, yz, d) = dec(&cs, 0);
        let fs: Vec<&FiniteFactor> = d.nontrivial_factors().collect();
        assert_eq!(fs.len(), 1);
        assert_eq!((fs[0].alpha, fs[0].order()), (0, 2));
        assert!(fs[0].u.is_identity());
        assert_eq!(fs[0].generators[0].to_string(), "f0.1");
        assert_eq!(d.free_rank(), 1);
        assert_eq!(d.euler_characteristic(), Ratio::new(-1, 2));
        assert_eq!(d.expected_euler_characteristic(), Ratio::new(-1, 2));
        assert!(check_decomposition(&cs, &ks, &yz, &d).unwrap().all_passed());
    }

    #[test]
    fn index_one_gives_the_factors() {
        let cs = c2_c3(vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])]);
        let (_, _, d) = dec(&cs, 0);
        let orders: Vec<usize> = d.nontrivial_factors().map(FiniteFactor::order).collect();
        assert_eq!(orders, [2, 3]);
        assert!(d.nontrivial_factors().all(|f| f.u.is_identity()));
        assert!(d.free_basis.is_empty());
    }

    #[test]
    fn counts_match_recount() {
        for cs in [
            sign_kernel(),
            c2_c3(vec![]),
            c2_c3(vec![cyc(3, &[&[0, 1]])]),
            c2_c3(vec![cyc(3, &[&[0, 1, 2]])]),
            three_factors(),
        ] {
            let count = cs.free_product().unwrap().factors().len();
            for alpha0 in 0..count {
                let (ks, yz, d) = dec(&cs, alpha0);
                let m: Vec<usize> = (0..count).map(|a| recount_double_cosets(&cs, a)).collect();
                assert_eq!(d.double_cosets, m);
                let checks = check_decomposition(&cs, &ks, &yz, &d).unwrap();
                assert!(checks.all_passed(), "{}", checks.to_text());
            }
        }
    }

    #[test]
    fn repeated_z_words_share_a_coset() {
        // C2*C2*C2 -> S3 by (0 1), (0 1), (1 2) with alpha0 = 1: some representative of factor 2
        // ends in factor 0, so z[Hu][2] = z[Hu][0] is a nontrivial word with two provenances
        let id = Permutation::identity(3);
        let cs = space(
            vec![CayleyGroup::cyclic(2); 3],
            3,
            vec![
                vec![id.clone(), cyc(3, &[&[0, 1]])],
                vec![id.clone(), cyc(3, &[&[0, 1]])],
                vec![id, cyc(3, &[&[1, 2]])],
            ],
            vec![],
        );
        let (ks, yz, d) = dec(&cs, 1);
        assert!(d.free_basis.iter().any(|z| z.provenance.len() > 1));
        assert_eq!(d.free_rank() as i64, d.expected_free_rank());
        assert!(check_decomposition(&cs, &ks, &yz, &d).unwrap().all_passed());
    }
}

//! Kurosh systems: transversals `T_α` and double-coset representatives.

use serde::Serialize;

use crate::action::{CosetSpace, CosetWord};
use crate::report::CheckList;
use crate::words::{FreeProduct, ProductWord};

use super::metrics::{syllable_metrics, SyllableMetrics};
use super::KuroshError;

/// The representative `α(HgG_α)` of one double coset together with its member cosets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCosetRep {
    pub rep: ProductWord,
    /// the coset `Hg` of the representative
    pub coset: usize,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KuroshSystem {
    alpha0: usize,
    transversals: Vec<Vec<ProductWord>>,
    reps: Vec<Vec<DoubleCosetRep>>,
    dc_of: Vec<Vec<usize>>,
}

impl KuroshSystem {
    pub fn alpha0(&self) -> usize {
        self.alpha0
    }

    pub fn factor_count(&self) -> usize {
        self.transversals.len()
    }

    pub fn index(&self) -> usize {
        self.transversals.first().map_or(0, Vec::len)
    }

    /// `T_α`, indexed by coset.
    pub fn transversal(&self, alpha: usize) -> &[ProductWord] {
        &self.transversals[alpha]
    }

    /// `α(H_i)`.
    pub fn t(&self, alpha: usize, coset: usize) -> &ProductWord {
        &self.transversals[alpha][coset]
    }

    /// `D_α`, one entry per double coset `HgG_α`.
    pub fn reps(&self, alpha: usize) -> &[DoubleCosetRep] {
        &self.reps[alpha]
    }

    /// The double coset `H_iG_α` as an index into [`KuroshSystem::reps`].
    pub fn dc_of(&self, alpha: usize, coset: usize) -> usize {
        self.dc_of[alpha][coset]
    }

    /// A copy with one transversal entry replaced; meant for fault injection.
    pub fn with_entry(&self, alpha: usize, coset: usize, word: ProductWord) -> KuroshSystem {
        let mut out = self.clone();
        out.transversals[alpha][coset] = word;
        out
    }

    /// A copy with one double-coset representative replaced; meant for fault injection.
    pub fn with_rep(
        &self,
        alpha: usize,
        dc: usize,
        word: ProductWord,
        coset: usize,
    ) -> KuroshSystem {
        let mut out = self.clone();
        out.reps[alpha][dc].rep = word;
        out.reps[alpha][dc].coset = coset;
        out
    }

    pub fn to_json(&self) -> SystemJson {
        SystemJson {
            alpha0: self.alpha0,
            transversals: self
                .transversals
                .iter()
                .map(|t| t.iter().map(ToString::to_string).collect())
                .collect(),
            double_cosets: self
                .reps
                .iter()
                .map(|d| {
                    d.iter()
                        .map(|r| DoubleCosetJson {
                            rep: r.rep.to_string(),
                            coset: r.coset,
                            members: r.members.clone(),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DoubleCosetJson {
    pub rep: String,
    pub coset: usize,
    pub members: Vec<usize>,
}

/// `{"alpha0": 0, "transversals": [[word per coset] per factor], "double_cosets": [[...] per factor]}`
#[derive(Clone, Debug, Serialize)]
pub struct SystemJson {
    pub alpha0: usize,
    pub transversals: Vec<Vec<String>>,
    pub double_cosets: Vec<Vec<DoubleCosetJson>>,
}

fn least_mover(
    cs: &CosetSpace,
    alpha: usize,
    from: usize,
    to: usize,
) -> Result<usize, KuroshError> {
    let action = cs.factor_actions(alpha)?;
    action
        .iter()
        .position(|p| p.apply(from) == to)
        .ok_or(KuroshError::InternalInductionOrder { alpha, coset: to })
}

/// Builds a Kurosh system by induction on the length of the double cosets.
///
/// Pairs `(double coset, α)` are handled in increasing `ℓ(HgG_α)`. The double
/// coset of `H` gets representative 1. Any other double coset takes the
/// canonical geodesic `g` of its shortlex-least minimal member coset; `g` ends
/// in some `β ≠ α` (otherwise dropping the last syllable would stay in the
/// double coset with a shorter word), and `β(Hg)` was fixed at an earlier
/// length, so it becomes the representative. Remaining members `H_i` get
/// `rep·c` for the least `c ∈ G_α` carrying the representative's coset to `H_i`.
pub fn build_kurosh_system(
    cs: &CosetSpace,
    m: &SyllableMetrics,
    alpha0: usize,
) -> Result<KuroshSystem, KuroshError> {
    let fp = cs.free_product()?;
    let count = fp.factors().len();
    if alpha0 >= count {
        return Err(KuroshError::Alpha0OutOfRange { alpha0, count });
    }
    let n = cs.size();
    let mut t: Vec<Vec<Option<ProductWord>>> = vec![vec![None; n]; count];
    let mut reps: Vec<Vec<Option<DoubleCosetRep>>> = m
        .double_cosets
        .iter()
        .map(|d| vec![None; d.len()])
        .collect();

    let mut order: Vec<(usize, usize, usize)> = (0..count)
        .flat_map(|a| (0..m.double_cosets[a].len()).map(move |d| (a, d)))
        .map(|(a, d)| (m.dc_len[a][d], a, d))
        .collect();
    order.sort_unstable();

    for (len, alpha, d) in order {
        let members = m.double_cosets[alpha].members(d);
        let (rep, rep_coset) = if len == 0 {
            if !members.contains(&0) {
                return Err(KuroshError::InternalInductionOrder {
                    alpha,
                    coset: members[0],
                });
            }
            (ProductWord::identity(), 0)
        } else {
            let mc = members
                .iter()
                .copied()
                .filter(|&c| m.coset_len[c] == len)
                .min_by(|&a, &b| m.geodesic[a].shortlex_cmp(&m.geodesic[b]))
                .expect("dc_len is attained");
            let beta = match m.geodesic[mc].last_factor() {
                Some(b) if b != alpha => b,
                _ => return Err(KuroshError::InternalInductionOrder { alpha, coset: mc }),
            };
            let u = t[beta][mc]
                .clone()
                .ok_or(KuroshError::InternalInductionOrder { alpha, coset: mc })?;
            (u, mc)
        };
        for &i in members {
            let c = least_mover(cs, alpha, rep_coset, i)?;
            t[alpha][i] = Some(fp.mul(&rep, &ProductWord::syllable(alpha, c)));
        }
        reps[alpha][d] = Some(DoubleCosetRep {
            rep,
            coset: rep_coset,
            members: members.to_vec(),
        });
    }

    let transversals = t
        .into_iter()
        .enumerate()
        .map(|(alpha, row)| {
            row.into_iter()
                .enumerate()
                .map(|(coset, w)| w.ok_or(KuroshError::InternalInductionOrder { alpha, coset }))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let reps = reps
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|r| r.expect("every pair processed"))
                .collect()
        })
        .collect();
    let dc_of = m
        .double_cosets
        .iter()
        .map(|d| (0..n).map(|c| d.dc_of(c)).collect())
        .collect();
    Ok(KuroshSystem {
        alpha0,
        transversals,
        reps,
        dc_of,
    })
}

/// `g⁻¹·w` is 1 or a single syllable from factor `alpha`.
fn in_left_coset(fp: &FreeProduct, g: &ProductWord, w: &ProductWord, alpha: usize) -> bool {
    let q = fp.mul(&fp.inverse(g), w);
    q.syllable_length() == 0 || (q.syllable_length() == 1 && q.last_factor() == Some(alpha))
}

/// Records the first failure produced by `probe` over all `(α, item)` pairs.
fn first_failure<T>(
    items: impl IntoIterator<Item = T>,
    mut probe: impl FnMut(T) -> Option<String>,
) -> Option<String> {
    items.into_iter().find_map(&mut probe)
}

/// Exhaustive check of axioms (i)–(v), `α(H) = 1`, and of the data being
/// well formed (entries in their cosets, double cosets matching the `G_α` orbits).
pub fn check_kurosh_axioms(cs: &CosetSpace, ks: &KuroshSystem) -> Result<CheckList, KuroshError> {
    let fp = cs.free_product()?;
    let m = syllable_metrics(cs)?;
    let count = fp.factors().len();
    let n = cs.size();
    let mut checks = CheckList::new();
    if ks.factor_count() != count || ks.transversals.iter().any(|t| t.len() != n) {
        checks.fail(
            "shape",
            format!("expected {count} transversals of {n} entries"),
        );
        return Ok(checks);
    }
    let pairs = || (0..count).flat_map(|a| (0..n).map(move |i| (a, i)));
    let dcs = || (0..count).flat_map(|a| (0..ks.reps[a].len()).map(move |d| (a, d)));

    checks.record(
        "alpha(H) = 1 for every factor",
        first_failure(0..count, |a| {
            (!ks.t(a, 0).is_identity()).then(|| format!("factor {a}: {}", ks.t(a, 0)))
        }),
    );
    checks.record(
        "transversal entries are normal words in their cosets",
        first_failure(pairs(), |(a, i)| {
            let w = ks.t(a, i);
            if fp.check(w).is_err() {
                return Some(format!("factor {a}, coset {i}: {w} is not a valid word"));
            }
            match w.act(cs, 0) {
                Ok(c) if c == i => None,
                Ok(c) => Some(format!("factor {a}, coset {i}: {w} lies in coset {c}")),
                Err(e) => Some(format!("factor {a}, coset {i}: {e}")),
            }
        }),
    );
    checks.record(
        "double cosets are the orbits of G_alpha and contain their representatives",
        first_failure(0..count, |a| {
            if ks.reps[a].len() != m.double_cosets[a].len() {
                return Some(format!(
                    "factor {a}: {} double cosets, expected {}",
                    ks.reps[a].len(),
                    m.double_cosets[a].len()
                ));
            }
            ks.reps[a].iter().enumerate().find_map(|(d, r)| {
                if r.members != m.double_cosets[a].members(d) {
                    return Some(format!(
                        "factor {a}, double coset {d}: members {:?}",
                        r.members
                    ));
                }
                if r.members.iter().any(|&i| ks.dc_of(a, i) != d) {
                    return Some(format!("factor {a}, double coset {d}: inconsistent lookup"));
                }
                match r.rep.act(cs, 0) {
                    Ok(c) if c == r.coset && r.members.contains(&c) => None,
                    _ => Some(format!(
                        "factor {a}, double coset {d}: representative {} outside it",
                        r.rep
                    )),
                }
            })
        }),
    );
    checks.record(
        "(i) alpha(HgG_alpha) = alpha(Hg)",
        first_failure(dcs(), |(a, d)| {
            let r = &ks.reps[a][d];
            (ks.t(a, r.coset) != &r.rep).then(|| {
                format!(
                    "factor {a}, double coset {d}: rep {} but T[{}] = {}",
                    r.rep,
                    r.coset,
                    ks.t(a, r.coset)
                )
            })
        }),
    );
    checks.record(
        "(ii) each representative is 1 or ends in a syllable outside its factor",
        first_failure(dcs(), |(a, d)| {
            let r = &ks.reps[a][d];
            (r.rep.last_factor() == Some(a))
                .then(|| format!("factor {a}, double coset {d}: {}", r.rep))
        }),
    );
    checks.record(
        "(iii) alpha(H_i) lies in gG_alpha for the representative g of H_iG_alpha",
        first_failure(pairs(), |(a, i)| {
            let r = &ks.reps[a][ks.dc_of(a, i)];
            (!in_left_coset(fp, &r.rep, ks.t(a, i), a)).then(|| {
                format!(
                    "factor {a}, coset {i}: {} not in {} G_{a}",
                    ks.t(a, i),
                    r.rep
                )
            })
        }),
    );
    checks.record(
        "(iv) a representative ending in G_beta equals beta(Hg)",
        first_failure(dcs(), |(a, d)| {
            let r = &ks.reps[a][d];
            let beta = r.rep.last_factor()?;
            (ks.t(beta, r.coset) != &r.rep).then(|| {
                format!(
                    "factor {a}, double coset {d}: rep {} but T_{beta}[{}] = {}",
                    r.rep,
                    r.coset,
                    ks.t(beta, r.coset)
                )
            })
        }),
    );
    checks.record(
        "(v) representatives have the syllable length of their double coset",
        first_failure(dcs(), |(a, d)| {
            let r = &ks.reps[a][d];
            (r.rep.syllable_length() != m.dc_len[a][d]).then(|| {
                format!(
                    "factor {a}, double coset {d}: {} has length {}, expected {}",
                    r.rep,
                    r.rep.syllable_length(),
                    m.dc_len[a][d]
                )
            })
        }),
    );
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::fingrp::{CayleyGroup, Permutation};

    fn system(cs: &CosetSpace, alpha0: usize) -> KuroshSystem {
        build_kurosh_system(cs, &syllable_metrics(cs).unwrap(), alpha0).unwrap()
    }

    #[test]
    fn metrics_examples() {
        let cs = sign_kernel();
        let m = syllable_metrics(&cs).unwrap();
        assert_eq!(m.coset_len, [0, 1]);
        assert_eq!(m.geodesic[1].to_string(), "f0.1");

        let cs = c2_c3(vec![]);
        let m = syllable_metrics(&cs).unwrap();
        assert_eq!(m.coset_len[0], 0);
        for (i, g) in m.geodesic.iter().enumerate() {
            assert!(m.coset_len[i] <= 3);
            assert_eq!(g.syllable_length(), m.coset_len[i]);
            assert_eq!(g.act(&cs, 0).unwrap(), i);
        }
    }

    /// Minimal syllable lengths by enumerating every normal word of length at most 4.
    #[test]
    fn metrics_match_enumeration() {
        let cs = c2_c3(vec![]);
        let fp = cs.free_product().unwrap().clone();
        let m = syllable_metrics(&cs).unwrap();
        let mut best = vec![usize::MAX; cs.size()];
        let mut layer = vec![ProductWord::identity()];
        for len in 0..=4 {
            for w in &layer {
                let c = w.act(&cs, 0).unwrap();
                best[c] = best[c].min(len);
            }
            layer = layer
                .iter()
                .flat_map(|w| {
                    let fp = &fp;
                    (0..2).flat_map(move |a| {
                        (1..fp.factor(a).order())
                            .map(move |k| fp.mul(w, &ProductWord::syllable(a, k)))
                    })
                })
                .filter(|w| w.syllable_length() == len + 1)
                .collect();
        }
        assert_eq!(m.coset_len, best);
    }

    #[test]
    fn index_one_system() {
        let cs = c2_c3(vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])]);
        let ks = system(&cs, 0);
        assert_eq!(ks.index(), 1);
        for a in 0..2 {
            assert_eq!(ks.transversal(a), &[ProductWord::identity()]);
            assert!(ks.reps(a).iter().all(|r| r.rep.is_identity()));
        }
        assert!(check_kurosh_axioms(&cs, &ks).unwrap().all_passed());
    }

    #[test]
    fn sign_kernel_system() {
        let cs = sign_kernel();
        let ks = system(&cs, 0);
        let t0: Vec<String> = ks.transversal(0).iter().map(ToString::to_string).collect();
        let t1: Vec<String> = ks.transversal(1).iter().map(ToString::to_string).collect();
        assert_eq!(t0, ["1", "f0.1"]);
        assert_eq!(t1, ["1", "f1.1"]);
        assert_eq!(ks.reps(0).len(), 1);
        assert!(ks.reps(0)[0].rep.is_identity() && ks.reps(1)[0].rep.is_identity());
    }

    #[test]
    fn axioms_hold_on_examples() {
        for cs in [
            sign_kernel(),
            c2_c3(vec![]),
            c2_c3(vec![cyc(3, &[&[0, 1]])]),
            c2_c3(vec![cyc(3, &[&[0, 1, 2]])]),
            three_factors(),
        ] {
            for alpha0 in 0..cs.free_product().unwrap().factors().len() {
                let checks = check_kurosh_axioms(&cs, &system(&cs, alpha0)).unwrap();
                assert!(checks.all_passed(), "{}", checks.to_text());
            }
        }
    }

    #[test]
    fn longer_representatives_exist() {
        // with H = <(0 1)> in C2*C3 -> S3 the C2 double cosets need a rep of length 1
        let cs = c2_c3(vec![cyc(3, &[&[0, 1]])]);
        let ks = system(&cs, 0);
        assert!(ks.reps(0).iter().any(|r| r.rep.syllable_length() == 1));
        assert!(check_kurosh_axioms(&cs, &ks).unwrap().all_passed());
    }

    #[test]
    fn swapped_entries_are_reported() {
        let cs = c2_c3(vec![]);
        let ks = system(&cs, 0);
        let (a, b) = (ks.t(1, 1).clone(), ks.t(1, 2).clone());
        let bad = ks.with_entry(1, 1, b).with_entry(1, 2, a);
        let checks = check_kurosh_axioms(&cs, &bad).unwrap();
        assert!(
            !checks
                .find("transversal entries are normal words in their cosets")
                .unwrap()
                .pass
        );
    }

    #[test]
    fn other_coset_representative_breaks_iii() {
        // replace T_1[i] by h·T_1[i] for some nontrivial h in H: same coset, wrong left coset of G_1
        let cs = c2_c3(vec![cyc(3, &[&[0, 1]])]);
        let ks = system(&cs, 0);
        let fp = cs.free_product().unwrap();
        let h = ProductWord::syllable(0, 1);
        let i = (1..ks.index())
            .find(|&i| !ks.t(1, i).is_identity())
            .unwrap();
        let bad = ks.with_entry(1, i, fp.mul(&h, ks.t(1, i)));
        let checks = check_kurosh_axioms(&cs, &bad).unwrap();
        assert!(
            checks
                .find("transversal entries are normal words in their cosets")
                .unwrap()
                .pass
        );
        assert!(
            !checks
                .find("(iii) alpha(H_i) lies in gG_alpha for the representative g of H_iG_alpha")
                .unwrap()
                .pass
        );
    }

    #[test]
    fn bad_representatives_are_reported() {
        let cs = c2_c3(vec![cyc(3, &[&[0, 1]])]);
        let ks = system(&cs, 0);
        let (d, r) = ks
            .reps(0)
            .iter()
            .enumerate()
            .find(|(_, r)| !r.rep.is_identity())
            .unwrap();
        // append an element of G_0 stabilizing nothing in particular: breaks (ii)
        let fp = cs.free_product().unwrap();
        let longer = fp.mul(&r.rep, &ProductWord::syllable(0, 1));
        let c = longer.act(&cs, 0).unwrap();
        let checks = check_kurosh_axioms(&cs, &ks.with_rep(0, d, longer, c)).unwrap();
        assert!(
            !checks
                .find("(ii) each representative is 1 or ends in a syllable outside its factor")
                .unwrap()
                .pass
        );
    }

    #[test]
    fn alpha0_out_of_range() {
        let cs = sign_kernel();
        let m = syllable_metrics(&cs).unwrap();
        assert_eq!(
            build_kurosh_system(&cs, &m, 2),
            Err(KuroshError::Alpha0OutOfRange {
                alpha0: 2,
                count: 2
            })
        );
    }

    #[test]
    fn trivial_factor_is_harmless() {
        let id = Permutation::identity(2);
        let s = cyc(2, &[&[0, 1]]);
        let cs = space(
            vec![CayleyGroup::cyclic(1), CayleyGroup::cyclic(2)],
            2,
            vec![vec![id.clone()], vec![id, s]],
            vec![],
        );
        let ks = system(&cs, 0);
        assert!(check_kurosh_axioms(&cs, &ks).unwrap().all_passed());
    }
}

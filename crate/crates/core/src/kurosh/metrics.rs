//! Syllable lengths of cosets and double cosets.

use std::collections::VecDeque;

use crate::action::CosetSpace;
use crate::fingrp;
use crate::words::ProductWord;

use super::KuroshError;

/// The double cosets `H\G/G_α` for one factor, as orbits of `G_α` on `Σ`.
///
/// Double cosets are numbered by their smallest member coset, so double coset 0
/// always contains `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCosets {
    dc_of: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl DoubleCosets {
    pub fn compute(cs: &CosetSpace, alpha: usize) -> Result<DoubleCosets, KuroshError> {
        let action = cs.factor_actions(alpha)?;
        let mut dc_of = vec![usize::MAX; cs.size()];
        let mut members = Vec::new();
        for c in 0..cs.size() {
            if dc_of[c] != usize::MAX {
                continue;
            }
            let mut orbit = fingrp::orbit(action, c);
            orbit.sort_unstable();
            for &m in &orbit {
                dc_of[m] = members.len();
            }
            members.push(orbit);
        }
        Ok(DoubleCosets { dc_of, members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dc_of(&self, coset: usize) -> usize {
        self.dc_of[coset]
    }

    pub fn members(&self, dc: usize) -> &[usize] {
        &self.members[dc]
    }
}

/// Minimal syllable lengths and canonical geodesics.
#[derive(Clone, Debug)]
pub struct SyllableMetrics {
    /// `ℓ(H_i)` per coset
    pub coset_len: Vec<usize>,
    /// shortlex-least word of length `ℓ(H_i)` in each coset
    pub geodesic: Vec<ProductWord>,
    pub double_cosets: Vec<DoubleCosets>,
    /// `ℓ(HgG_α)` per factor and double coset
    pub dc_len: Vec<Vec<usize>>,
}

/// Breadth-first search over states `(coset, last factor)`.
///
/// A step multiplies by a nontrivial element of a factor other than the last
/// one, so every path spells a normal-form word and its length is the
/// syllable length. States are expanded in shortlex order of their words
/// (factor index first, then element index), so the first state found for a
/// coset carries that coset's canonical geodesic.
pub fn syllable_metrics(cs: &CosetSpace) -> Result<SyllableMetrics, KuroshError> {
    let fp = cs.free_product()?;
    let factors = fp.factors().len();
    let state =
        |coset: usize, last: Option<usize>| coset * (factors + 1) + last.map_or(0, |a| a + 1);
    let mut seen = vec![false; cs.size() * (factors + 1)];
    let mut coset_len = vec![usize::MAX; cs.size()];
    let mut geodesic = vec![ProductWord::identity(); cs.size()];
    let mut queue: VecDeque<(usize, Option<usize>, ProductWord)> = VecDeque::new();
    seen[state(0, None)] = true;
    coset_len[0] = 0;
    queue.push_back((0, None, ProductWord::identity()));
    while let Some((c, last, word)) = queue.pop_front() {
        for beta in (0..factors).filter(|&b| Some(b) != last) {
            for k in 1..fp.factor(beta).order() {
                let d = cs.factor_action(beta, k)?.apply(c);
                let s = state(d, Some(beta));
                if seen[s] {
                    continue;
                }
                seen[s] = true;
                let next = fp.mul(&word, &ProductWord::syllable(beta, k));
                if coset_len[d] == usize::MAX {
                    coset_len[d] = next.syllable_length();
                    geodesic[d] = next.clone();
                }
                queue.push_back((d, Some(beta), next));
            }
        }
    }
    debug_assert!(
        coset_len.iter().all(|&l| l != usize::MAX),
        "action is transitive"
    );
    let double_cosets = (0..factors)
        .map(|a| DoubleCosets::compute(cs, a))
        .collect::<Result<Vec<_>, _>>()?;
    let dc_len = double_cosets
        .iter()
        .map(|dcs| {
            (0..dcs.len())
                .map(|d| {
                    dcs.members(d)
                        .iter()
                        .map(|&m| coset_len[m])
                        .min()
                        .expect("nonempty orbit")
                })
                .collect()
        })
        .collect();
    Ok(SyllableMetrics {
        coset_len,
        geodesic,
        double_cosets,
        dc_len,
    })
}

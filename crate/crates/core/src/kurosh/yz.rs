//! The elements `y[i][α][x]` and `z[i][α]` of `H`.

use crate::action::{in_subgroup, CosetSpace};
use crate::report::CheckList;
use crate::words::ProductWord;

use super::system::KuroshSystem;
use super::KuroshError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YZTable {
    /// `y[i][α][x] = T_α[i]·x·T_α[i·x]⁻¹`
    y: Vec<Vec<Vec<ProductWord>>>,
    /// `z[i][α] = T_α[i]·T_α₀[i]⁻¹`
    z: Vec<Vec<ProductWord>>,
}

impl YZTable {
    pub fn y(&self, coset: usize, alpha: usize, x: usize) -> &ProductWord {
        &self.y[coset][alpha][x]
    }

    pub fn z(&self, coset: usize, alpha: usize) -> &ProductWord {
        &self.z[coset][alpha]
    }
}

pub fn yz_elements(cs: &CosetSpace, ks: &KuroshSystem) -> Result<YZTable, KuroshError> {
    let fp = cs.free_product()?;
    let n = cs.size();
    let count = fp.factors().len();
    let mut y = Vec::with_capacity(n);
    let mut z = Vec::with_capacity(n);
    for i in 0..n {
        let mut yi = Vec::with_capacity(count);
        for alpha in 0..count {
            let action = cs.factor_actions(alpha)?;
            let row = (0..fp.factor(alpha).order())
                .map(|x| {
                    let j = action[x].apply(i);
                    let left = fp.mul(ks.t(alpha, i), &ProductWord::syllable(alpha, x));
                    fp.mul(&left, &fp.inverse(ks.t(alpha, j)))
                })
                .collect();
            yi.push(row);
        }
        y.push(yi);
        let t0 = fp.inverse(ks.t(ks.alpha0(), i));
        z.push(
            (0..count)
                .map(|alpha| fp.mul(ks.t(alpha, i), &t0))
                .collect(),
        );
    }
    Ok(YZTable { y, z })
}

/// Membership of every entry, the normalizations `z[0][α] = 1 = z[i][α₀]`,
/// and the identities
///
/// * `y[i][α][x₁]·y[j][α][x₂] = y[i][α][x₁x₂]` with `H_j = H_i·x₁`;
/// * `y[Hu][α][x] = u·x·u⁻¹` when `u = α(HuG_α)` and `x` stabilizes `Hu`;
/// * `z[Hu][α] = z[Hu][β]` when `u = α(HuG_α) ≠ 1` ends in `β`;
///
/// all checked exhaustively.
pub fn check_yz(
    cs: &CosetSpace,
    ks: &KuroshSystem,
    yz: &YZTable,
) -> Result<CheckList, KuroshError> {
    let fp = cs.free_product()?;
    let n = cs.size();
    let count = fp.factors().len();
    let mut checks = CheckList::new();

    let mut failure = None;
    'outer: for i in 0..n {
        for alpha in 0..count {
            if !in_subgroup(cs, yz.z(i, alpha))? {
                failure = Some(format!("z[{i}][{alpha}] = {}", yz.z(i, alpha)));
                break 'outer;
            }
            for x in 0..fp.factor(alpha).order() {
                if !in_subgroup(cs, yz.y(i, alpha, x))? {
                    failure = Some(format!("y[{i}][{alpha}][{x}] = {}", yz.y(i, alpha, x)));
                    break 'outer;
                }
            }
        }
    }
    checks.record("every y and z lies in H", failure);

    let failure = (0..count)
        .find(|&a| !yz.z(0, a).is_identity())
        .map(|a| format!("z[0][{a}] = {}", yz.z(0, a)))
        .or_else(|| {
            (0..n)
                .find(|&i| !yz.z(i, ks.alpha0()).is_identity())
                .map(|i| format!("z[{i}][{}] = {}", ks.alpha0(), yz.z(i, ks.alpha0())))
        });
    checks.record("z[0][alpha] = 1 and z[i][alpha0] = 1", failure);

    let mut failure = None;
    'outer: for alpha in 0..count {
        let g = fp.factor(alpha);
        let action = cs.factor_actions(alpha)?;
        for i in 0..n {
            for x1 in 0..g.order() {
                let j = action[x1].apply(i);
                for x2 in 0..g.order() {
                    let lhs = fp.mul(yz.y(i, alpha, x1), yz.y(j, alpha, x2));
                    if &lhs != yz.y(i, alpha, g.mul(x1, x2)) {
                        failure = Some(format!("coset {i}, factor {alpha}, elements ({x1}, {x2})"));
                        break 'outer;
                    }
                }
            }
        }
    }
    checks.record("y[i][x1] y[i x1][x2] = y[i][x1 x2]", failure);

    let mut failure = None;
    'outer: for alpha in 0..count {
        let action = cs.factor_actions(alpha)?;
        for r in ks.reps(alpha) {
            for x in (0..action.len()).filter(|&x| action[x].apply(r.coset) == r.coset) {
                let conj = fp.mul(
                    &fp.mul(&r.rep, &ProductWord::syllable(alpha, x)),
                    &fp.inverse(&r.rep),
                );
                if &conj != yz.y(r.coset, alpha, x) {
                    failure = Some(format!("factor {alpha}, u = {}, x = {x}", r.rep));
                    break 'outer;
                }
            }
        }
    }
    checks.record("y[Hu][x] = u x u^-1 for x stabilizing Hu", failure);

    let mut failure = None;
    'outer: for alpha in 0..count {
        for r in ks.reps(alpha) {
            if let Some(beta) = r.rep.last_factor() {
                if yz.z(r.coset, alpha) != yz.z(r.coset, beta) {
                    failure = Some(format!("factor {alpha}, u = {}, beta = {beta}", r.rep));
                    break 'outer;
                }
            }
        }
    }
    checks.record("z[Hu][alpha] = z[Hu][beta] when u ends in beta", failure);

    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{build_kurosh_system, syllable_metrics};
    use super::*;

    fn table(cs: &CosetSpace, alpha0: usize) -> (KuroshSystem, YZTable) {
        let ks = build_kurosh_system(cs, &syllable_metrics(cs).unwrap(), alpha0).unwrap();
        let yz = yz_elements(cs, &ks).unwrap();
        (ks, yz)
    }

    #[test]
    fn sign_kernel_by_hand() {
        let cs = sign_kernel();
        let (_, yz) = table(&cs, 0);
        assert_eq!(yz.z(1, 1).to_string(), "f1.1 f0.1");
        assert!(yz.z(1, 0).is_identity());
        // s·s·1⁻¹ = 1
        assert!(yz.y(1, 0, 1).is_identity());
        for a in 0..2 {
            assert!(yz.z(0, a).is_identity());
        }
    }

    #[test]
    fn identities_hold_exhaustively() {
        for cs in [
            sign_kernel(),
            c2_c3(vec![]),
            c2_c3(vec![cyc(3, &[&[0, 1]])]),
            three_factors(),
        ] {
            for alpha0 in 0..cs.free_product().unwrap().factors().len() {
                let (ks, yz) = table(&cs, alpha0);
                let checks = check_yz(&cs, &ks, &yz).unwrap();
                assert!(checks.all_passed(), "{}", checks.to_text());
            }
        }
    }
}

//! Rewriting elements of `H` over the factors `uG_αu⁻¹ ∩ H` and the free basis `Z`.

use serde::Serialize;

use crate::action::{CosetSpace, CosetWord};
use crate::words::{FreeProduct, ProductWord};

use super::decompose::KuroshDecomposition;
use super::system::KuroshSystem;
use super::yz::YZTable;
use super::KuroshError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KuroshToken {
    /// `z` or `z⁻¹` for the free basis element at `index`
    Free { index: usize, inverse: bool },
    /// `u·elem·u⁻¹` in the factor at position `factor` of the decomposition
    Factor { factor: usize, elem: usize },
}

fn push(fp: &FreeProduct, dec: &KuroshDecomposition, out: &mut Vec<KuroshToken>, t: KuroshToken) {
    match (out.last().copied(), t) {
        (
            Some(KuroshToken::Free {
                index: a,
                inverse: ia,
            }),
            KuroshToken::Free {
                index: b,
                inverse: ib,
            },
        ) if a == b && ia != ib => {
            out.pop();
        }
        (
            Some(KuroshToken::Factor { factor: a, elem: x }),
            KuroshToken::Factor { factor: b, elem: y },
        ) if a == b => {
            let merged = fp.factor(dec.factors[a].alpha).mul(x, y);
            out.pop();
            if merged != 0 {
                out.push(KuroshToken::Factor {
                    factor: a,
                    elem: merged,
                });
            }
        }
        _ => out.push(t),
    }
}

/// Walks `h` syllable by syllable. A syllable `x ∈ G_α` read at coset `H_i`
/// contributes `z[i][α]⁻¹ · y[i][α][x] · z[i·x][α]`; identity pieces are
/// dropped and adjacent inverse or same-factor tokens are merged.
pub fn kurosh_rewrite(
    cs: &CosetSpace,
    ks: &KuroshSystem,
    yz: &YZTable,
    dec: &KuroshDecomposition,
    h: &ProductWord,
) -> Result<Vec<KuroshToken>, KuroshError> {
    let fp = cs.free_product()?;
    fp.check(h)?;
    if h.act(cs, 0)? != 0 {
        return Err(KuroshError::NotInSubgroup);
    }
    let free = |w: &ProductWord, inverse: bool| -> Result<Option<KuroshToken>, KuroshError> {
        if w.is_identity() {
            return Ok(None);
        }
        let index = dec
            .free_index(w)
            .ok_or_else(|| KuroshError::FamilyShape(format!("{w} is not in Z")))?;
        Ok(Some(KuroshToken::Free { index, inverse }))
    };
    let mut out = Vec::new();
    let mut i = 0;
    for s in h.syllables() {
        let (alpha, x) = (s.factor, s.elem);
        let j = cs.factor_action(alpha, x)?.apply(i);
        if let Some(t) = free(yz.z(i, alpha), true)? {
            push(fp, dec, &mut out, t);
        }
        let (pos, c) = dec.locate(fp, ks, i, alpha, x, yz.y(i, alpha, x))?;
        if c != 0 {
            push(
                fp,
                dec,
                &mut out,
                KuroshToken::Factor {
                    factor: pos,
                    elem: c,
                },
            );
        }
        if let Some(t) = free(yz.z(j, alpha), false)? {
            push(fp, dec, &mut out, t);
        }
        i = j;
    }
    Ok(out)
}

pub fn evaluate_kurosh_tokens(
    fp: &FreeProduct,
    dec: &KuroshDecomposition,
    tokens: &[KuroshToken],
) -> ProductWord {
    tokens.iter().fold(ProductWord::identity(), |acc, t| {
        let piece = match *t {
            KuroshToken::Free {
                index,
                inverse: false,
            } => dec.free_basis[index].word.clone(),
            KuroshToken::Free {
                index,
                inverse: true,
            } => fp.inverse(&dec.free_basis[index].word),
            KuroshToken::Factor { factor, elem } => dec.factors[factor].conjugate(fp, elem),
        };
        fp.mul(&acc, &piece)
    })
}

/// `z0 z1^-1 [f0.1]^(1)`: free tokens as `z<k>`, factor tokens as
/// `[u]^(x)` meaning `u·x·u⁻¹` with `x` written as `f<α>.<x>`; `1` when empty.
pub fn render_kurosh_tokens(dec: &KuroshDecomposition, tokens: &[KuroshToken]) -> String {
    if tokens.is_empty() {
        return "1".to_string();
    }
    tokens
        .iter()
        .map(|t| match *t {
            KuroshToken::Free {
                index,
                inverse: false,
            } => format!("z{index}"),
            KuroshToken::Free {
                index,
                inverse: true,
            } => format!("z{index}^-1"),
            KuroshToken::Factor { factor, elem } => {
                let f = &dec.factors[factor];
                format!("[{}]^(f{}.{elem})", f.u, f.alpha)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

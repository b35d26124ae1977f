//! Reduced words in free groups and alternating normal forms in free products
//! of finite groups.
//!
//! Both word types are kept in normal form at all times. The textual syntax
//! is whitespace-separated tokens: `g` / `g^-1` for free words and `f<a>.<k>`
//! (factor `a`, element `k >= 1`) for free-product words. The identity is
//! written `1` in both.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::fingrp::CayleyGroup;
use crate::group::Group;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid generator name {0:?}")]
    InvalidGeneratorName(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("malformed token {0:?}")]
    MalformedToken(String),
    #[error("factor index {factor} out of range ({count} factors)")]
    FactorOutOfRange { factor: usize, count: usize },
    #[error("element {elem} out of range for factor {factor} of order {order}")]
    ElementOutOfRange {
        factor: usize,
        elem: usize,
        order: usize,
    },
}

/// A letter of `X ∪ X⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inverted(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

/// All positive letters (in generator order) precede all inverse letters.
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.inverse, self.generator).cmp(&(other.inverse, other.generator))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A freely reduced word over `X ∪ X⁻¹`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        FreeWord(vec![l])
    }

    pub fn generator(g: usize) -> Self {
        FreeWord(vec![Letter::new(g, false)])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Reduced form of the concatenation `self · other`.
    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let cancel = self
            .0
            .iter()
            .rev()
            .zip(other.0.iter())
            .take_while(|(a, b)| a.inverted() == **b)
            .count();
        let mut out = Vec::with_capacity(self.len() + other.len() - 2 * cancel);
        out.extend_from_slice(&self.0[..self.len() - cancel]);
        out.extend_from_slice(&other.0[cancel..]);
        FreeWord(out)
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn pow(&self, exp: i64) -> FreeWord {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        (0..exp.unsigned_abs()).fold(FreeWord::identity(), |acc, _| acc.mul(&base))
    }

    /// The prefix of length `len`.
    pub fn prefix(&self, len: usize) -> FreeWord {
        FreeWord(self.0[..len].to_vec())
    }

    /// Shorter words first, then lexicographic in the letter order.
    pub fn shortlex_cmp(&self, other: &FreeWord) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// The free group, as a context for the [`Group`] trait.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeGroup;

impl Group for FreeGroup {
    type Elem = FreeWord;

    fn identity(&self) -> FreeWord {
        FreeWord::identity()
    }

    fn multiply(&self, a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.mul(b)
    }

    fn invert(&self, a: &FreeWord) -> FreeWord {
        a.inverse()
    }

    fn is_identity(&self, a: &FreeWord) -> bool {
        a.is_identity()
    }
}

/// Names of the free generators, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, WordError> {
        let mut out: Vec<String> = Vec::new();
        for name in names {
            let name = name.into();
            if name.is_empty()
                || name == "1"
                || name.contains('^')
                || name.chars().any(char::is_whitespace)
            {
                return Err(WordError::InvalidGeneratorName(name));
            }
            if out.contains(&name) {
                return Err(WordError::DuplicateGenerator(name));
            }
            out.push(name);
        }
        Ok(Alphabet { names: out })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Parses a free word; the result is reduced.
    pub fn parse(&self, text: &str) -> Result<FreeWord, WordError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens == ["1"] {
            return Ok(FreeWord::identity());
        }
        let mut letters = Vec::with_capacity(tokens.len());
        for tok in tokens {
            let (name, inverse) = match tok.split_once('^') {
                None => (tok, false),
                Some((name, "-1")) => (name, true),
                Some(_) => return Err(WordError::MalformedToken(tok.to_string())),
            };
            let g = self
                .position(name)
                .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
            letters.push(Letter::new(g, inverse));
        }
        Ok(FreeWord::from_letters(letters))
    }

    pub fn render(&self, w: &FreeWord) -> String {
        if w.is_identity() {
            return "1".to_string();
        }
        let tokens: Vec<String> = w
            .letters()
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("{}^-1", self.names[l.generator])
                } else {
                    self.names[l.generator].clone()
                }
            })
            .collect();
        tokens.join(" ")
    }

    pub fn render_letter(&self, l: Letter) -> String {
        self.render(&FreeWord::letter(l))
    }
}

/// A nontrivial element `elem` of factor `factor`, i.e. one syllable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorElement {
    pub factor: usize,
    pub elem: usize,
}

impl FactorElement {
    pub fn new(factor: usize, elem: usize) -> Self {
        FactorElement { factor, elem }
    }
}

/// An element of a free product in alternating normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ProductWord(Vec<FactorElement>);

impl ProductWord {
    pub fn identity() -> Self {
        ProductWord(Vec::new())
    }

    /// The one-syllable word for `elem` of `factor` (identity when `elem == 0`).
    pub fn syllable(factor: usize, elem: usize) -> Self {
        if elem == 0 {
            ProductWord::identity()
        } else {
            ProductWord(vec![FactorElement::new(factor, elem)])
        }
    }

    pub fn syllables(&self) -> &[FactorElement] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Syllable length and the factor of the final syllable.
    pub fn syllable_info(&self) -> (usize, Option<usize>) {
        (self.0.len(), self.0.last().map(|s| s.factor))
    }

    pub fn syllable_length(&self) -> usize {
        self.0.len()
    }

    pub fn last_factor(&self) -> Option<usize> {
        self.0.last().map(|s| s.factor)
    }

    /// Shorter words first, then lexicographic by (factor, element).
    pub fn shortlex_cmp(&self, other: &ProductWord) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for ProductWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, s) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "f{}.{}", s.factor, s.elem)?;
        }
        Ok(())
    }
}

/// The free product of finitely many finite groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeProduct {
    factors: Vec<CayleyGroup>,
}

impl FreeProduct {
    pub fn new(factors: Vec<CayleyGroup>) -> Self {
        FreeProduct { factors }
    }

    pub fn factors(&self) -> &[CayleyGroup] {
        &self.factors
    }

    pub fn factor(&self, alpha: usize) -> &CayleyGroup {
        &self.factors[alpha]
    }

    pub fn check(&self, w: &ProductWord) -> Result<(), WordError> {
        w.0.iter()
            .try_for_each(|s| self.check_syllable(s.factor, s.elem))
    }

    fn check_syllable(&self, factor: usize, elem: usize) -> Result<(), WordError> {
        let g = self
            .factors
            .get(factor)
            .ok_or(WordError::FactorOutOfRange {
                factor,
                count: self.factors.len(),
            })?;
        if elem >= g.order() {
            return Err(WordError::ElementOutOfRange {
                factor,
                elem,
                order: g.order(),
            });
        }
        Ok(())
    }

    /// Normal form of an arbitrary sequence of factor elements.
    pub fn word_from(
        &self,
        items: impl IntoIterator<Item = FactorElement>,
    ) -> Result<ProductWord, WordError> {
        let mut out = Vec::new();
        for s in items {
            self.check_syllable(s.factor, s.elem)?;
            self.push(&mut out, s);
        }
        Ok(ProductWord(out))
    }

    fn push(&self, stack: &mut Vec<FactorElement>, s: FactorElement) {
        if s.elem == 0 {
            return;
        }
        match stack.last_mut() {
            Some(top) if top.factor == s.factor => {
                let merged = self.factors[s.factor].mul(top.elem, s.elem);
                if merged == 0 {
                    stack.pop();
                } else {
                    top.elem = merged;
                }
            }
            _ => stack.push(s),
        }
    }

    /// Normal form of `a · b`.
    pub fn normalize_product(
        &self,
        a: &ProductWord,
        b: &ProductWord,
    ) -> Result<ProductWord, WordError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    /// `a · b` for words already known to be valid for this product.
    pub fn mul(&self, a: &ProductWord, b: &ProductWord) -> ProductWord {
        let mut out = a.0.clone();
        for &s in &b.0 {
            self.push(&mut out, s);
        }
        ProductWord(out)
    }

    pub fn invert_product(&self, a: &ProductWord) -> Result<ProductWord, WordError> {
        self.check(a)?;
        Ok(self.inverse(a))
    }

    pub fn inverse(&self, a: &ProductWord) -> ProductWord {
        ProductWord(
            a.0.iter()
                .rev()
                .map(|s| FactorElement::new(s.factor, self.factors[s.factor].inv(s.elem)))
                .collect(),
        )
    }

    pub fn parse(&self, text: &str) -> Result<ProductWord, WordError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens == ["1"] {
            return Ok(ProductWord::identity());
        }
        let mut items = Vec::with_capacity(tokens.len());
        for tok in tokens {
            let malformed = || WordError::MalformedToken(tok.to_string());
            let rest = tok.strip_prefix('f').ok_or_else(malformed)?;
            let (a, k) = rest.split_once('.').ok_or_else(malformed)?;
            let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
            if !digits(a) || !digits(k) {
                return Err(malformed());
            }
            let factor: usize = a.parse().map_err(|_| malformed())?;
            let elem: usize = k.parse().map_err(|_| malformed())?;
            if elem == 0 {
                return Err(malformed());
            }
            items.push(FactorElement::new(factor, elem));
        }
        self.word_from(items)
    }
}

impl Group for FreeProduct {
    type Elem = ProductWord;

    fn identity(&self) -> ProductWord {
        ProductWord::identity()
    }

    fn multiply(&self, a: &ProductWord, b: &ProductWord) -> ProductWord {
        self.mul(a, b)
    }

    fn invert(&self, a: &ProductWord) -> ProductWord {
        self.inverse(a)
    }

    fn is_identity(&self, a: &ProductWord) -> bool {
        a.is_identity()
    }
}

//! The minimal group interface shared by every base of a wreath product.

use std::fmt::Debug;
use std::hash::Hash;

/// A group whose elements are values of `Self::Elem`.
///
/// The implementing type is the context needed to multiply (a Cayley table,
/// a list of factors, ...); the elements themselves are plain data.
/// Implementations must satisfy the group axioms.
pub trait Group {
    type Elem: Clone + Eq + Hash + Debug;

    fn identity(&self) -> Self::Elem;

    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn invert(&self, a: &Self::Elem) -> Self::Elem;

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }

    /// Left-to-right product of a sequence.
    fn product<'a, I>(&self, elems: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        elems
            .into_iter()
            .fold(self.identity(), |acc, e| self.multiply(&acc, e))
    }
}

//! Permutations in one-line notation, composed left-to-right.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// A permutation of `{0, .., degree-1}`; `images[i]` is the image of `i`.
///
/// Products are read left-to-right: `a * b` applies `a` first, then `b`.
/// The derived ordering is lexicographic on the one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if im >= n || seen[im] {
                return Err(GroupError::NotAPermutation(images));
            }
            seen[im] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree).collect())
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]` for `(0 1 2)`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                if p >= degree || next >= degree || touched[p] {
                    return Err(GroupError::NotAPermutation(images));
                }
                touched[p] = true;
                images[p] = next;
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.0[point]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation(self.0.iter().map(|&p| other.0[p]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Permutation(inv)
    }

    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            exp >>= 1;
        }
        acc
    }

    /// Smallest `k >= 1` with `self^k = 1`.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut order = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.0[p];
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    /// The permutation of `{0..a+b}` acting as `self` on the first block and `other` on the second.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let shift = self.degree();
        let mut images = self.0.clone();
        images.extend(other.0.iter().map(|&p| p + shift));
        Permutation(images)
    }

    /// Restriction to the invariant block `start..start+len`, renumbered from 0.
    pub fn restrict(&self, start: usize, len: usize) -> Option<Permutation> {
        let images: Option<Vec<usize>> = self.0[start..start + len]
            .iter()
            .map(|&p| p.checked_sub(start).filter(|&q| q < len))
            .collect();
        images.map(Permutation)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::new(images).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_left_to_right() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2, 1 -a-> 0 -b-> 1, 2 -a-> 2 -b-> 0
        assert_eq!(a.compose(&b).images(), &[2, 1, 0]);
        assert_eq!(b.compose(&a).images(), &[0, 2, 1]);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert!(Permutation::new(vec![]).is_ok());
    }

    #[test]
    fn inverse_and_order() {
        let c = Permutation::from_cycles(5, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert!(c.compose(&c.inverse()).is_identity());
        assert_eq!(c.order(), 6);
        assert!(c.pow(6).is_identity());
        assert!(!c.pow(3).is_identity());
    }

    #[test]
    fn direct_sum_restricts_back() {
        let a = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[0, 2]]).unwrap();
        let s = a.direct_sum(&b);
        assert_eq!(s.restrict(0, 2), Some(a));
        assert_eq!(s.restrict(2, 3), Some(b));
    }
}

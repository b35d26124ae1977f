//! Finite groups given by a full multiplication table.

use super::GroupError;

/// A finite group on `0..order` with `table[a][b] = a * b` and `0` the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyGroup {
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

impl CayleyGroup {
    /// Validates the table: square, latin, `0` a two-sided identity, associative.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidTable(format!(
                    "row {a} has length {}, expected {n}",
                    row.len()
                )));
            }
            if !is_bijection(row.iter().copied(), n) {
                return Err(GroupError::InvalidTable(format!(
                    "row {a} is not a permutation"
                )));
            }
        }
        for b in 0..n {
            if !is_bijection(table.iter().map(|row| row[b]), n) {
                return Err(GroupError::InvalidTable(format!(
                    "column {b} is not a permutation"
                )));
            }
        }
        for k in 0..n {
            if table[0][k] != k || table[k][0] != k {
                return Err(GroupError::InvalidTable(format!(
                    "element 0 is not an identity at {k}"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::InvalidTable(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a][b] == 0)
                    .expect("latin row contains 0")
            })
            .collect();
        Ok(CayleyGroup { table, inverses })
    }

    /// The cyclic group of order `n`, element `k` standing for `t^k`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        CayleyGroup::new(table).expect("cyclic table is valid")
    }

    /// Klein four-group with elements `0, a, b, ab`.
    pub fn klein_four() -> Self {
        let table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        CayleyGroup::new(table).expect("xor table is valid")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// The multiplication table of a closed subset, re-indexed in the order given.
    ///
    /// `elements[0]` must be the identity.
    pub fn induced(&self, elements: &[usize]) -> Result<CayleyGroup, GroupError> {
        let pos = |x: usize| elements.iter().position(|&e| e == x);
        let mut table = Vec::with_capacity(elements.len());
        for &a in elements {
            let row: Option<Vec<usize>> = elements.iter().map(|&b| pos(self.mul(a, b))).collect();
            table.push(row.ok_or(GroupError::NotASubgroup)?);
        }
        CayleyGroup::new(table)
    }
}

fn is_bijection(values: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = vec![false; n];
    for v in values {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

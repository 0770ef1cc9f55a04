use crate::error::{input_err, Result};

/// A finite group given by its multiplication table on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|x| *x >= n)) {
            return input_err("multiplication table must be square with entries in range");
        }
        let Some(identity) = (0..n).find(|e| (0..n).all(|x| table[*e][x] == x && table[x][*e] == x)) else {
            return input_err("no identity element");
        };
        let mut inverse = vec![0; n];
        for x in 0..n {
            match (0..n).find(|y| table[x][*y] == identity && table[*y][x] == identity) {
                Some(y) => inverse[x] = y,
                None => return input_err(format!("element {x} has no inverse")),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return input_err(format!("associativity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, inverse, identity })
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    /// `Z/n` with element `i` the class of `i`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new(table).expect("cyclic group")
    }

    /// The symmetric group on three letters, elements listed as permutations
    /// in lexicographic order, composed as functions `(στ)(i) = σ(τ(i))`.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
        let table = perms
            .iter()
            .map(|s| perms.iter().map(|t| index([s[t[0]], s[t[1]], s[t[2]]])).collect())
            .collect();
        FiniteGroup::new(table).expect("symmetric group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// `h⁻¹ x h`.
    pub fn conj(&self, x: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), x), h)
    }

    pub fn product(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.identity, |acc, x| self.mul(acc, *x))
    }

    /// Conjugacy classes, each sorted, ordered by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for x in 0..self.order() {
            if seen[x] {
                continue;
            }
            let mut cls: Vec<usize> = (0..self.order()).map(|h| self.conj(x, h)).collect();
            cls.sort_unstable();
            cls.dedup();
            for y in &cls {
                seen[*y] = true;
            }
            out.push(cls);
        }
        out
    }

    /// Index into [`Self::conjugacy_classes`] for every element.
    pub fn class_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.order()];
        for (i, cls) in self.conjugacy_classes().iter().enumerate() {
            for x in cls {
                idx[*x] = i;
            }
        }
        idx
    }

    pub fn centralizer(&self, y: usize) -> Vec<usize> {
        (0..self.order()).filter(|g| self.mul(*g, y) == self.mul(y, *g)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups() {
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.conjugacy_classes().len(), 3);
        assert_eq!(s3.centralizer(s3.identity()).len(), 6);
        assert_eq!(s3.centralizer(1).len(), 2);
        assert_eq!(s3.centralizer(3).len(), 3);
        assert_eq!(FiniteGroup::cyclic(3).conjugacy_classes().len(), 3);
    }

    #[test]
    fn rejects_non_groups() {
        assert!(FiniteGroup::new(vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(FiniteGroup::new(vec![vec![0, 1], vec![1, 1]]).is_err());
    }
}

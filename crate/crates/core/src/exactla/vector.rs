use num::{Signed, Zero};
use std::fmt;

use super::rational::{format_q, Q};

/// Sparse column vector: strictly increasing indices, no stored zeros.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Q::from_integer(1.into()))] }
    }

    /// Builds from arbitrary pairs, summing duplicates and dropping zeros.
    pub fn from_pairs(mut pairs: Vec<(usize, Q)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Q)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w += v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Q]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Q)> {
        self.entries.iter()
    }

    pub fn get(&self, i: usize) -> Q {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    /// Smallest index with a nonzero entry.
    pub fn leading(&self) -> Option<(usize, &Q)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// `self += a * other`.
    pub fn axpy(&mut self, a: &Q, other: &SparseVec) {
        if a.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut x, mut y) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (x.peek(), y.peek()) {
                (Some((i, u)), Some((j, v))) => {
                    if i < j {
                        out.push((*i, u.clone()));
                        x.next();
                    } else if j < i {
                        out.push((*j, a * v));
                        y.next();
                    } else {
                        let s = u + a * v;
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        x.next();
                        y.next();
                    }
                }
                (Some((i, u)), None) => {
                    out.push((*i, u.clone()));
                    x.next();
                }
                (None, Some((j, v))) => {
                    out.push((*j, a * v));
                    y.next();
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn scaled(&self, a: &Q) -> SparseVec {
        if a.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * a)).collect() }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect() }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.axpy(&Q::from_integer(1.into()), other);
        out
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.axpy(&Q::from_integer((-1).into()), other);
        out
    }

    /// Keeps entries whose index satisfies `keep`, relabelled through `map`.
    pub fn filter_map_indices(&self, mut f: impl FnMut(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_pairs(
            self.entries.iter().filter_map(|(i, v)| f(*i).map(|j| (j, v.clone()))).collect(),
        )
    }

    /// Shifts every index by `offset`.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect() }
    }

    pub fn dot(&self, other: &SparseVec) -> Q {
        let mut acc = Q::zero();
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, u)), Some((j, v))) = (a.peek(), b.peek()) {
            if i < j {
                a.next();
            } else if j < i {
                b.next();
            } else {
                acc += u * v;
                a.next();
                b.next();
            }
        }
        acc
    }

    /// Largest absolute numerator; a cheap measure of coefficient growth.
    pub fn height(&self) -> Q {
        self.entries.iter().map(|(_, v)| v.abs()).fold(Q::zero(), |m, v| if v > m { v } else { m })
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(i, v)| (i, format_q(v)))).finish()
    }
}

impl FromIterator<(usize, Q)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Q)>>(iter: T) -> Self {
        SparseVec::from_pairs(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rational::q;

    #[test]
    fn axpy_cancels() {
        let mut a = SparseVec::from_pairs(vec![(0, q(1)), (3, q(2))]);
        let b = SparseVec::from_pairs(vec![(3, q(1)), (5, q(1))]);
        a.axpy(&q(-2), &b);
        assert_eq!(a, SparseVec::from_pairs(vec![(0, q(1)), (5, q(-2))]));
    }

    #[test]
    fn duplicates_merge() {
        let v = SparseVec::from_pairs(vec![(2, q(1)), (2, q(-1)), (1, q(4))]);
        assert_eq!(v.nnz(), 1);
        assert_eq!(v.get(1), q(4));
    }
}

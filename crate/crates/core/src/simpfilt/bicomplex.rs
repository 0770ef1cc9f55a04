use std::collections::BTreeMap;
use std::sync::Arc;

use crate::chain::{ChainComplex, ChainMap};
use crate::error::{dim_err, input_err, Result};
use crate::exactla::{offsets, sign, SparseMatrix};

use super::filtered::FilteredComplex;
use super::simplicial::SimplicialChainObject;

/// A first-quadrant-in-columns double complex: columns `C_{*,n}` for
/// `0 ≤ n ≤ N` and horizontal chain maps `h_n: C_{*,n} → C_{*,n−1}` with
/// `h_{n−1} h_n = 0`.
///
/// Horizontal and vertical differentials commute here; the sign that makes
/// them anticommute is applied during totalization (vertical differential on
/// column `n` times `(−1)^n`).
#[derive(Clone, Debug)]
pub struct Bicomplex {
    columns: Vec<Arc<ChainComplex>>,
    horizontal: Vec<ChainMap>,
}

impl Bicomplex {
    /// `horizontal[n − 1]` is `h_n` for `n = 1..=N`.
    pub fn new(columns: Vec<Arc<ChainComplex>>, horizontal: Vec<ChainMap>) -> Result<Self> {
        if columns.is_empty() {
            return dim_err("a bicomplex needs at least one column");
        }
        if horizontal.len() + 1 != columns.len() {
            return dim_err(format!("{} columns need {} horizontal maps", columns.len(), columns.len() - 1));
        }
        for (i, h) in horizontal.iter().enumerate() {
            if **h.source() != *columns[i + 1] || **h.target() != *columns[i] {
                return dim_err(format!("horizontal map {} has wrong source or target", i + 1));
            }
        }
        for n in 2..columns.len() {
            if !horizontal[n - 1].then(&horizontal[n - 2])?.is_zero() {
                return input_err(format!("h_{} h_{n} ≠ 0", n - 1));
            }
        }
        Ok(Bicomplex { columns, horizontal })
    }

    pub fn single(column: Arc<ChainComplex>) -> Self {
        Bicomplex { columns: vec![column], horizontal: Vec::new() }
    }

    /// Index of the last column.
    pub fn top(&self) -> usize {
        self.columns.len() - 1
    }

    pub fn column(&self, n: usize) -> &Arc<ChainComplex> {
        &self.columns[n]
    }

    pub fn columns(&self) -> &[Arc<ChainComplex>] {
        &self.columns
    }

    /// `h_n` for `n ≥ 1`.
    pub fn horizontal(&self, n: usize) -> &ChainMap {
        &self.horizontal[n - 1]
    }

    /// `dim C_{k,n}`.
    pub fn cell_dim(&self, k: i64, n: usize) -> usize {
        self.columns.get(n).map_or(0, |c| c.dim(k))
    }

    /// Keeps columns `0..=top`.
    pub fn truncate(&self, top: usize) -> Bicomplex {
        let top = top.min(self.top());
        Bicomplex { columns: self.columns[..=top].to_vec(), horizontal: self.horizontal[..top].to_vec() }
    }

    /// Range of total degrees that can be nonzero.
    pub fn total_range(&self) -> (i64, i64) {
        let nonempty: Vec<(usize, &Arc<ChainComplex>)> =
            self.columns.iter().enumerate().filter(|(_, c)| !c.is_empty()).collect();
        let lo = nonempty.iter().map(|(n, c)| c.lo() + *n as i64).min();
        let hi = nonempty.iter().map(|(n, c)| c.hi() + *n as i64).max();
        match (lo, hi) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => (0, -1),
        }
    }

    /// Offset of the block `C_{m−n, n}` inside `Tot_m`, for every column.
    pub fn tot_offsets(&self, m: i64) -> Vec<usize> {
        let sizes: Vec<usize> = (0..=self.top()).map(|n| self.cell_dim(m - n as i64, n)).collect();
        offsets(&sizes)
    }

    pub fn tot_dim(&self, m: i64) -> usize {
        (0..=self.top()).map(|n| self.cell_dim(m - n as i64, n)).sum()
    }

    /// `Tot_m = ⊕_n C_{m−n, n}` with basis concatenated over ascending `n`,
    /// and its filtration by column index.
    pub fn totalize(&self) -> FilteredComplex {
        let (lo, hi) = self.total_range();
        if lo > hi {
            return FilteredComplex::new(Arc::new(ChainComplex::zero()), BTreeMap::new()).expect("empty");
        }
        let dims: Vec<usize> = (lo..=hi).map(|m| self.tot_dim(m)).collect();
        let diffs: Vec<SparseMatrix> = (lo + 1..=hi).map(|m| self.tot_differential(m)).collect();
        let tot = ChainComplex::from_diffs(lo, dims, diffs).expect("totalization squares to zero");
        let levels = (lo..=hi)
            .map(|m| {
                let lv: Vec<i64> = (0..=self.top())
                    .flat_map(|n| std::iter::repeat(n as i64).take(self.cell_dim(m - n as i64, n)))
                    .collect();
                (m, lv)
            })
            .collect();
        FilteredComplex::new(Arc::new(tot), levels).expect("columns give a filtration by subcomplexes")
    }

    /// The differential `Tot_m → Tot_{m−1}`.
    pub fn tot_differential(&self, m: i64) -> SparseMatrix {
        let top = self.top();
        let row_dims: Vec<usize> = (0..=top).map(|n| self.cell_dim(m - 1 - n as i64, n)).collect();
        let col_dims: Vec<usize> = (0..=top).map(|n| self.cell_dim(m - n as i64, n)).collect();
        let vert: Vec<SparseMatrix> =
            (0..=top).map(|n| self.columns[n].d(m - n as i64).scaled(&sign(n as i64))).collect();
        let horiz: Vec<SparseMatrix> = (1..=top).map(|n| self.horizontal(n).at(m - n as i64)).collect();
        let blocks: Vec<Vec<Option<&SparseMatrix>>> = (0..=top)
            .map(|r| {
                (0..=top)
                    .map(|c| {
                        if r == c {
                            Some(&vert[c])
                        } else if r + 1 == c {
                            Some(&horiz[c - 1])
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        SparseMatrix::block(&row_dims, &col_dims, &blocks).expect("bicomplex blocks")
    }
}

/// Horizontal differential `Σ (−1)^i ∂_i` on each level.
pub fn alternating_sum(x: &SimplicialChainObject) -> Bicomplex {
    let horizontal = (1..=x.top())
        .map(|n| {
            let mut acc = ChainMap::zero(x.object(n).clone(), x.object(n - 1).clone());
            for i in 0..=n {
                let f = x.face(n, i);
                acc = if i % 2 == 0 { acc.add(f) } else { acc.sub(f) }.expect("same source and target");
            }
            acc
        })
        .collect();
    Bicomplex::new(x.objects().to_vec(), horizontal).expect("simplicial identities give h∘h = 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::mapping_cone;

    fn circle() -> Arc<ChainComplex> {
        Arc::new(ChainComplex::from_diffs(0, vec![1, 1], vec![SparseMatrix::zeros(1, 1)]).unwrap())
    }

    #[test]
    fn constant_object_alternates() {
        let c = circle();
        let b = alternating_sum(&SimplicialChainObject::constant(c.clone(), 3));
        assert!(b.horizontal(1).is_zero());
        assert_eq!(*b.horizontal(2), ChainMap::identity(c.clone()));
        assert!(b.horizontal(3).is_zero());
    }

    #[test]
    fn one_column_is_the_column() {
        let c = circle();
        let b = alternating_sum(&SimplicialChainObject::constant_column(c.clone()));
        assert_eq!(**b.totalize().total(), *c);
    }

    #[test]
    fn two_columns_give_the_cone() {
        let c = circle();
        let two = Arc::new(c.direct_sum(&c));
        let mut comps = BTreeMap::new();
        comps.insert(0, SparseMatrix::from_rows_i64(&[vec![1, 1]]));
        comps.insert(1, SparseMatrix::from_rows_i64(&[vec![1, 0]]));
        let h = ChainMap::new(two.clone(), c.clone(), comps).unwrap();
        let b = Bicomplex::new(vec![c, two], vec![h.clone()]).unwrap();
        assert_eq!(**b.totalize().total(), *mapping_cone(&h).complex);
    }
}

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::chain::ChainComplex;
use crate::error::{dim_err, input_err, Result};
use crate::exactla::{SparseMatrix, SparseVec, Subspace};

/// A complex with an increasing filtration adapted to its basis: every basis
/// vector carries a level, and `F_p` is spanned by the basis vectors of
/// level `≤ p`. The differential never raises the level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    total: Arc<ChainComplex>,
    levels: BTreeMap<i64, Vec<i64>>,
}

/// `F_b / F_a` as an explicit complex on the basis vectors with level in
/// `(a, b]`, with the indices it keeps in each total degree.
#[derive(Clone, Debug)]
pub struct FiltrationQuotient {
    pub complex: Arc<ChainComplex>,
    pub kept: BTreeMap<i64, Vec<usize>>,
    pub levels: BTreeMap<i64, Vec<i64>>,
}

impl FiltrationQuotient {
    /// Image of a vector of the ambient complex (lower levels are dropped;
    /// higher levels must be absent).
    pub fn project(&self, m: i64, v: &SparseVec) -> SparseVec {
        let kept = self.kept.get(&m).map(Vec::as_slice).unwrap_or(&[]);
        v.filter_map_indices(|i| kept.binary_search(&i).ok())
    }

    /// The same vector written in ambient coordinates.
    pub fn lift(&self, m: i64, v: &SparseVec) -> SparseVec {
        let kept = &self.kept[&m];
        v.filter_map_indices(|i| Some(kept[i]))
    }

    /// The quotient as a filtered complex with the inherited levels.
    pub fn filtered(&self) -> FilteredComplex {
        FilteredComplex::new(self.complex.clone(), self.levels.clone()).expect("inherited filtration")
    }
}

impl FilteredComplex {
    /// `levels[m][i]` is the level of basis vector `i` in degree `m`.
    pub fn new(total: Arc<ChainComplex>, levels: BTreeMap<i64, Vec<i64>>) -> Result<Self> {
        let mut lv = BTreeMap::new();
        for m in total.degrees() {
            let l = levels.get(&m).cloned().unwrap_or_default();
            if l.len() != total.dim(m) {
                return dim_err(format!("degree {m} has {} levels for dimension {}", l.len(), total.dim(m)));
            }
            lv.insert(m, l);
        }
        let f = FilteredComplex { total, levels: lv };
        for m in f.total.degrees() {
            let d = f.total.d(m);
            for (j, col) in d.columns().iter().enumerate() {
                let lj = f.levels[&m][j];
                if col.iter().any(|(i, _)| f.levels[&(m - 1)][*i] > lj) {
                    return input_err(format!("differential raises the filtration level in degree {m}"));
                }
            }
        }
        Ok(f)
    }

    pub fn total(&self) -> &Arc<ChainComplex> {
        &self.total
    }

    pub fn levels(&self, m: i64) -> &[i64] {
        self.levels.get(&m).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn all_levels(&self) -> &BTreeMap<i64, Vec<i64>> {
        &self.levels
    }

    /// Smallest and largest level present, if any.
    pub fn level_range(&self) -> Option<(i64, i64)> {
        let all = self.levels.values().flatten();
        Some((*all.clone().min()?, *all.max()?))
    }

    /// `F_p` in degree `m`.
    pub fn stage(&self, p: i64, m: i64) -> Subspace {
        let idx = self.levels(m).iter().enumerate().filter(|(_, l)| **l <= p).map(|(i, _)| i);
        Subspace::coordinate(self.total.dim(m), idx)
    }

    /// `F_b / F_a` on the basis vectors with level in `(a, b]`.
    pub fn quotient(&self, a: i64, b: i64) -> FiltrationQuotient {
        let keep = |m: i64| -> Vec<usize> {
            self.levels(m).iter().enumerate().filter(|(_, l)| a < **l && **l <= b).map(|(i, _)| i).collect()
        };
        let (lo, hi) = (self.total.lo(), self.total.hi());
        let kept: BTreeMap<i64, Vec<usize>> = (lo..=hi).map(|m| (m, keep(m))).collect();
        let empty = Vec::new();
        let get = |m: i64| kept.get(&m).unwrap_or(&empty);
        let dims = (lo..=hi).map(|m| get(m).len()).collect();
        let diffs: Vec<SparseMatrix> = (lo + 1..=hi).map(|m| self.total.d(m).submatrix(get(m - 1), get(m))).collect();
        let levels = kept
            .iter()
            .map(|(m, idx)| (*m, idx.iter().map(|i| self.levels[m][*i]).collect()))
            .collect();
        let complex = if lo > hi {
            ChainComplex::zero()
        } else {
            ChainComplex::from_diffs(lo, dims, diffs).expect("quotient of subcomplexes")
        };
        FiltrationQuotient { complex: Arc::new(complex), kept, levels }
    }

    /// `Gr^l_n = F_n / F_{n−l}` for `1 ≤ l ≤ n + 1`.
    pub fn gr_subquotient(&self, l: i64, n: i64) -> Result<FiltrationQuotient> {
        if l < 1 || l > n + 1 {
            return input_err(format!("Gr^{l}_{n} needs 1 ≤ l ≤ n + 1"));
        }
        Ok(self.quotient(n - l, n))
    }

    /// The same complex with levels relabelled by `f`; fails if the result is
    /// not a filtration.
    pub fn relevel(&self, f: impl Fn(i64) -> i64) -> Result<FilteredComplex> {
        let levels = self.levels.iter().map(|(m, l)| (*m, l.iter().map(|x| f(*x)).collect())).collect();
        FilteredComplex::new(self.total.clone(), levels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{suspend, ChainMap};
    use crate::simpfilt::{alternating_sum, Bicomplex, SimplicialChainObject};

    fn circle() -> Arc<ChainComplex> {
        Arc::new(ChainComplex::from_diffs(0, vec![1, 1], vec![SparseMatrix::zeros(1, 1)]).unwrap())
    }

    #[test]
    fn gr_one_is_suspended_column() {
        let c = circle();
        let b = alternating_sum(&SimplicialChainObject::constant(c.clone(), 3));
        let f = b.totalize();
        for n in 0..=3 {
            let g = f.gr_subquotient(1, n).unwrap();
            assert_eq!(*g.complex, suspend(&c, n));
        }
        assert!(f.gr_subquotient(0, 1).is_err());
        assert!(f.gr_subquotient(3, 1).is_err());
        assert_eq!(*f.gr_subquotient(3, 2).unwrap().complex, **b.truncate(2).totalize().total());
    }

    #[test]
    fn gr_two_dims() {
        let c = circle();
        let b = Bicomplex::new(vec![c.clone(), c.clone(), c.clone()], vec![ChainMap::zero(c.clone(), c.clone()); 2]).unwrap();
        let g = b.totalize().gr_subquotient(2, 2).unwrap();
        for m in 0..=4 {
            assert_eq!(g.complex.dim(m), c.dim(m - 1) + c.dim(m - 2));
        }
    }
}

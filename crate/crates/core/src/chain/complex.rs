use std::collections::BTreeMap;

use crate::error::{dim_err, input_err, Result};
use crate::exactla::{kernel, subquotient_basis, SparseMatrix, SparseVec, Subquotient, Subspace};

/// A bounded chain complex of finite-dimensional rational vector spaces.
///
/// Degrees run over `lo ..= lo + dims.len() - 1`; every other degree is zero.
/// `d(n)` maps degree `n` to degree `n - 1`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct ChainComplex {
    lo: i64,
    dims: Vec<usize>,
    diffs: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// Builds a complex from per-degree dimensions starting at `lo` and the
    /// differentials keyed by source degree. Missing differentials are zero.
    /// Rejects wrong shapes and `d ∘ d ≠ 0`.
    pub fn new(lo: i64, dims: Vec<usize>, differentials: BTreeMap<i64, SparseMatrix>) -> Result<Self> {
        let hi = lo + dims.len() as i64 - 1;
        let dim = |n: i64| if n < lo || n > hi { 0 } else { dims[(n - lo) as usize] };
        for (n, m) in &differentials {
            if m.shape() != (dim(n - 1), dim(*n)) && !(m.is_zero() && (dim(n - 1) == 0 || dim(*n) == 0)) {
                return dim_err(format!("d_{n} has shape {:?}, expected {:?}", m.shape(), (dim(n - 1), dim(*n))));
            }
        }
        let diffs: Vec<SparseMatrix> = (lo..=hi)
            .map(|n| match differentials.get(&n) {
                Some(m) if m.shape() == (dim(n - 1), dim(n)) => m.clone(),
                _ => SparseMatrix::zeros(dim(n - 1), dim(n)),
            })
            .collect();
        let c = ChainComplex { lo, dims, diffs };
        for n in lo + 1..=hi {
            if !c.d(n - 1).compose(&c.d(n)).is_zero() {
                return input_err(format!("d_{} ∘ d_{} ≠ 0", n - 1, n));
            }
        }
        Ok(c.trimmed())
    }

    /// Drops zero-dimensional degrees at both ends so equal complexes compare
    /// equal.
    fn trimmed(self) -> Self {
        let Some(first) = self.dims.iter().position(|d| *d > 0) else {
            return ChainComplex::zero();
        };
        let last = self.dims.iter().rposition(|d| *d > 0).expect("nonempty");
        let mut diffs: Vec<SparseMatrix> = self.diffs[first..=last].to_vec();
        diffs[0] = SparseMatrix::zeros(0, self.dims[first]);
        ChainComplex { lo: self.lo + first as i64, dims: self.dims[first..=last].to_vec(), diffs }
    }

    /// Builds from a contiguous list of differentials `d_{lo+1}, …, d_hi`.
    pub fn from_diffs(lo: i64, dims: Vec<usize>, diffs: Vec<SparseMatrix>) -> Result<Self> {
        let map = diffs.into_iter().enumerate().map(|(i, m)| (lo + 1 + i as i64, m)).collect();
        ChainComplex::new(lo, dims, map)
    }

    pub fn zero() -> Self {
        ChainComplex { lo: 0, dims: Vec::new(), diffs: Vec::new() }
    }

    /// `Q^dim` concentrated in one degree.
    pub fn concentrated(degree: i64, dim: usize) -> Self {
        ChainComplex { lo: degree, dims: vec![dim], diffs: vec![SparseMatrix::zeros(0, dim)] }.trimmed()
    }

    /// Lowest degree of the stored range (may carry dimension zero).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest degree of the stored range.
    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|d| *d == 0)
    }

    /// Degrees with nonzero dimension.
    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        (self.lo..=self.hi()).filter(move |n| self.dim(*n) > 0)
    }

    pub fn dim(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// The differential out of degree `n`.
    pub fn d(&self, n: i64) -> SparseMatrix {
        if n < self.lo || n > self.hi() {
            SparseMatrix::zeros(self.dim(n - 1), self.dim(n))
        } else {
            self.diffs[(n - self.lo) as usize].clone()
        }
    }

    pub fn d_ref(&self, n: i64) -> Option<&SparseMatrix> {
        if n < self.lo || n > self.hi() {
            None
        } else {
            Some(&self.diffs[(n - self.lo) as usize])
        }
    }

    /// Degree range covering both complexes.
    pub fn joint_range(&self, other: &ChainComplex) -> (i64, i64) {
        (self.lo.min(other.lo), self.hi().max(other.hi()))
    }

    pub fn homology(&self, n: i64) -> Homology {
        Homology::of(&self.d(n), &self.d(n + 1), n)
    }

    pub fn betti(&self, n: i64) -> usize {
        self.homology(n).dim()
    }

    /// Homology dimensions over the stored range.
    pub fn betti_numbers(&self) -> BTreeMap<i64, usize> {
        (self.lo..=self.hi()).map(|n| (n, self.betti(n))).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        (self.lo..=self.hi()).all(|n| self.betti(n) == 0)
    }

    /// The subcomplex of degrees `≤ top` (closed under `d`).
    pub fn truncate_above(&self, top: i64) -> ChainComplex {
        if top < self.lo {
            return ChainComplex::zero();
        }
        let keep = ((top - self.lo + 1) as usize).min(self.dims.len());
        ChainComplex { lo: self.lo, dims: self.dims[..keep].to_vec(), diffs: self.diffs[..keep].to_vec() }.trimmed()
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let (lo, hi) = self.joint_range(other);
        let dims: Vec<usize> = (lo..=hi).map(|n| self.dim(n) + other.dim(n)).collect();
        let diffs = (lo..=hi).map(|n| SparseMatrix::direct_sum(&self.d(n), &other.d(n))).collect();
        ChainComplex { lo, dims, diffs }.trimmed()
    }
}

/// `H_n = ker d_n / im d_{n+1}` with representatives and projection.
#[derive(Clone, Debug)]
pub struct Homology {
    degree: i64,
    sq: Subquotient,
}

impl Homology {
    /// Homology at a spot given the outgoing and incoming differentials.
    pub fn of(d_out: &SparseMatrix, d_in: &SparseMatrix, degree: i64) -> Homology {
        let cycles = kernel(d_out);
        let boundaries = Subspace::column_space(d_in);
        let sq = subquotient_basis(&cycles, &boundaries).expect("boundaries are cycles");
        Homology { degree, sq }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.sq.dim()
    }

    /// Cycles whose classes form a basis.
    pub fn representatives(&self) -> &[SparseVec] {
        self.sq.lifts()
    }

    /// Class coordinates of a cycle; `None` for non-cycles.
    pub fn class_of(&self, v: &SparseVec) -> Option<SparseVec> {
        self.sq.project(v)
    }

    pub fn is_boundary(&self, v: &SparseVec) -> bool {
        self.sq.is_trivial(v)
    }

    pub fn subquotient(&self) -> &Subquotient {
        &self.sq
    }
}

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{dim_err, Result};
use crate::exactla::{offsets, sign, solve_linear, SparseMatrix, SparseVec, Q};

use super::complex::{ChainComplex, Homology};
use super::map::{ChainHomotopy, ChainMap, GradedMap};
use super::ops::suspend;

/// The complex `Hom(C, D)_n = ∏_k Hom(C_k, D_{k+n})` with differential
/// `φ ↦ d∘φ − (−1)^n φ∘d`.
///
/// An element of degree `n` is vectorized block by block over ascending `k`,
/// each block row-major: entry `(r, c)` of block `k` sits at
/// `offset_k + r * dim C_k + c`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    source: Arc<ChainComplex>,
    target: Arc<ChainComplex>,
}

#[derive(Clone, Debug)]
struct Block {
    k: i64,
    rows: usize,
    cols: usize,
    offset: usize,
}

impl HomComplex {
    pub fn new(source: Arc<ChainComplex>, target: Arc<ChainComplex>) -> Self {
        HomComplex { source, target }
    }

    pub fn source(&self) -> &Arc<ChainComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChainComplex> {
        &self.target
    }

    /// Degrees where the Hom complex can be nonzero.
    pub fn range(&self) -> (i64, i64) {
        (self.target.lo() - self.source.hi(), self.target.hi() - self.source.lo())
    }

    fn blocks(&self, n: i64) -> Vec<Block> {
        let ks: Vec<i64> = self.source.degrees().filter(|k| self.target.dim(k + n) > 0).collect();
        let sizes: Vec<usize> = ks.iter().map(|k| self.target.dim(k + n) * self.source.dim(*k)).collect();
        let offs = offsets(&sizes);
        ks.iter()
            .zip(offs)
            .map(|(k, offset)| Block { k: *k, rows: self.target.dim(k + n), cols: self.source.dim(*k), offset })
            .collect()
    }

    pub fn dim(&self, n: i64) -> usize {
        self.blocks(n).iter().map(|b| b.rows * b.cols).sum()
    }

    /// The basis of `Hom_n` in vector order: `(k, r, c)` is the elementary map
    /// sending basis vector `c` of `C_k` to basis vector `r` of `D_{k+n}`.
    pub fn basis_labels(&self, n: i64) -> Vec<(i64, usize, usize)> {
        self.blocks(n)
            .iter()
            .flat_map(|b| (0..b.rows).flat_map(move |r| (0..b.cols).map(move |c| (b.k, r, c))))
            .collect()
    }

    pub fn vectorize(&self, phi: &GradedMap) -> Result<SparseVec> {
        if phi.source() != &self.source || phi.target() != &self.target {
            return dim_err("graded map does not live in this Hom complex");
        }
        let n = phi.degree();
        let mut pairs = Vec::new();
        for b in self.blocks(n) {
            let m = phi.at(b.k);
            for (r, c, v) in m.triplets() {
                pairs.push((b.offset + r * b.cols + c, v));
            }
        }
        Ok(SparseVec::from_pairs(pairs))
    }

    pub fn devectorize(&self, n: i64, v: &SparseVec) -> GradedMap {
        let blocks = self.blocks(n);
        let mut trip: BTreeMap<i64, Vec<(usize, usize, Q)>> = BTreeMap::new();
        for (i, a) in v.iter() {
            let b = blocks.iter().rev().find(|b| b.offset <= *i).expect("index inside some block");
            let local = i - b.offset;
            trip.entry(b.k).or_default().push((local / b.cols, local % b.cols, a.clone()));
        }
        let comps = trip
            .into_iter()
            .map(|(k, t)| {
                let rows = self.target.dim(k + n);
                let cols = self.source.dim(k);
                (k, SparseMatrix::from_triplets(rows, cols, t).expect("in range"))
            })
            .collect();
        GradedMap::new(self.source.clone(), self.target.clone(), n, comps).expect("shapes agree")
    }

    /// Matrix of the differential `Hom_n → Hom_{n−1}`.
    pub fn delta(&self, n: i64) -> SparseMatrix {
        let src = self.blocks(n);
        let dst = self.blocks(n - 1);
        let dst_of = |k: i64| dst.iter().find(|b| b.k == k);
        let eps = sign(n);
        let mut columns = Vec::with_capacity(self.dim(n));
        for b in &src {
            let dd = self.target.d(b.k + n);
            let dc = self.source.d(b.k + 1);
            for r in 0..b.rows {
                for c in 0..b.cols {
                    let mut pairs = Vec::new();
                    if let Some(t) = dst_of(b.k) {
                        for (r2, v) in dd.col(r).iter() {
                            pairs.push((t.offset + r2 * t.cols + c, v.clone()));
                        }
                    }
                    if let Some(t) = dst_of(b.k + 1) {
                        // Row c of d^C_{k+1}.
                        for c2 in 0..t.cols {
                            let v = dc.get(c, c2);
                            if v != Q::from_integer(0.into()) {
                                pairs.push((t.offset + r * t.cols + c2, -(&eps * v)));
                            }
                        }
                    }
                    columns.push(SparseVec::from_pairs(pairs));
                }
            }
        }
        SparseMatrix::from_columns(self.dim(n - 1), columns)
    }

    fn block(&self, n: i64, k: i64) -> Option<Block> {
        self.blocks(n).into_iter().find(|b| b.k == k)
    }

    /// Matrix of `φ ↦ φ ∘ a` from `Hom_n(C, D)` to `Hom_{n+e}(C', D)`, where
    /// `a: C' → C` has degree `e` and `dst = Hom(C', D)`.
    pub fn precompose_matrix(&self, a: &GradedMap, n: i64, dst: &HomComplex) -> SparseMatrix {
        let e = a.degree();
        let dst_blocks = dst.blocks(n + e);
        let mut columns = Vec::with_capacity(self.dim(n));
        for b in self.blocks(n) {
            let k2 = b.k - e;
            let t = dst_blocks.iter().find(|t| t.k == k2);
            let at = t.map(|_| a.at(k2).transpose());
            for r in 0..b.rows {
                for c in 0..b.cols {
                    let col = match (t, &at) {
                        (Some(t), Some(at)) => at.col(c).iter().map(|(c2, v)| (t.offset + r * t.cols + c2, v.clone())).collect(),
                        _ => SparseVec::new(),
                    };
                    columns.push(col);
                }
            }
        }
        SparseMatrix::from_columns(dst.dim(n + e), columns)
    }

    /// Matrix of `φ ↦ b ∘ φ` from `Hom_n(C, D)` to `Hom_{n+e}(C, D')`, where
    /// `b: D → D'` has degree `e` and `dst = Hom(C, D')`.
    pub fn postcompose_matrix(&self, b: &GradedMap, n: i64, dst: &HomComplex) -> SparseMatrix {
        let e = b.degree();
        let mut columns = Vec::with_capacity(self.dim(n));
        for blk in self.blocks(n) {
            let t = dst.block(n + e, blk.k);
            let bm = t.as_ref().map(|_| b.at(blk.k + n));
            for r in 0..blk.rows {
                for c in 0..blk.cols {
                    let col = match (&t, &bm) {
                        (Some(t), Some(bm)) => bm.col(r).iter().map(|(r2, v)| (t.offset + r2 * t.cols + c, v.clone())).collect(),
                        _ => SparseVec::new(),
                    };
                    columns.push(col);
                }
            }
        }
        SparseMatrix::from_columns(dst.dim(n + e), columns)
    }

    pub fn homology(&self, n: i64) -> Homology {
        Homology::of(&self.delta(n), &self.delta(n + 1), n)
    }

    /// The Hom complex as a [`ChainComplex`] over its possible range.
    pub fn to_complex(&self) -> ChainComplex {
        let (lo, hi) = self.range();
        if lo > hi {
            return ChainComplex::zero();
        }
        let dims = (lo..=hi).map(|n| self.dim(n)).collect();
        let diffs = (lo + 1..=hi).map(|n| self.delta(n)).collect();
        ChainComplex::from_diffs(lo, dims, diffs).expect("hom differential squares to zero")
    }
}

/// Degree-`shift` homology of `Hom(C, D)`, i.e. homotopy classes of chain
/// maps `Σ^shift C → D`, with a basis of representative cycles.
#[derive(Clone, Debug)]
pub struct HomotopyClassSpace {
    hom: HomComplex,
    shift: i64,
    homology: Homology,
    representatives: Vec<GradedMap>,
}

impl HomotopyClassSpace {
    pub fn source(&self) -> &Arc<ChainComplex> {
        self.hom.source()
    }

    pub fn target(&self) -> &Arc<ChainComplex> {
        self.hom.target()
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn dim(&self) -> usize {
        self.homology.dim()
    }

    pub fn representatives(&self) -> &[GradedMap] {
        &self.representatives
    }

    /// Coordinates of the class of a cycle, `None` if `phi` is not a cycle of
    /// the right degree.
    pub fn class_of(&self, phi: &GradedMap) -> Option<SparseVec> {
        if phi.degree() != self.shift {
            return None;
        }
        self.homology.class_of(&self.hom.vectorize(phi).ok()?)
    }

    pub fn hom(&self) -> &HomComplex {
        &self.hom
    }
}

pub fn homotopy_classes(c: Arc<ChainComplex>, d: Arc<ChainComplex>, shift: i64) -> HomotopyClassSpace {
    let hom = HomComplex::new(c, d);
    let homology = hom.homology(shift);
    let representatives = homology.representatives().iter().map(|v| hom.devectorize(shift, v)).collect();
    HomotopyClassSpace { hom, shift, homology, representatives }
}

/// A degree `+1` map `s` with `δs = phi`, if one exists. `phi` is any cycle
/// of the Hom complex.
pub fn null_witness(phi: &GradedMap) -> Option<GradedMap> {
    let hom = HomComplex::new(phi.source().clone(), phi.target().clone());
    let n = phi.degree();
    let b = hom.vectorize(phi).expect("same complexes");
    let s = solve_linear(&hom.delta(n + 1), &b).expect("consistent shapes")?;
    Some(hom.devectorize(n + 1, &s))
}

/// The chain map `Σ^j C → D` carried by a degree-`j` cycle of `Hom(C, D)`.
pub fn cycle_to_chain_map(phi: &GradedMap) -> Result<ChainMap> {
    let j = phi.degree();
    let source = Arc::new(suspend(phi.source(), j));
    let comps = phi.components().iter().map(|(n, m)| (n + j, m.clone())).collect();
    ChainMap::new(source, phi.target().clone(), comps)
}

/// A homotopy from `f` to zero, if one exists.
pub fn nullhomotopy(f: &ChainMap) -> Option<ChainHomotopy> {
    let s = null_witness(f.graded())?;
    let zero = ChainMap::zero(f.source().clone(), f.target().clone());
    Some(ChainHomotopy::new(f.clone(), zero, s).expect("solution of the homotopy equation"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::q;

    fn interval() -> Arc<ChainComplex> {
        Arc::new(ChainComplex::from_diffs(0, vec![1, 1], vec![SparseMatrix::from_rows_i64(&[vec![1]])]).unwrap())
    }

    #[test]
    fn delta_matches_graded_boundary() {
        let c = interval();
        let d = Arc::new(ChainComplex::from_diffs(0, vec![2, 1], vec![SparseMatrix::from_rows_i64(&[vec![1], vec![-1]])]).unwrap());
        let hom = HomComplex::new(c.clone(), d.clone());
        let (lo, hi) = hom.range();
        for n in lo..=hi {
            for i in 0..hom.dim(n) {
                let phi = hom.devectorize(n, &SparseVec::unit(i));
                assert_eq!(hom.vectorize(&phi).unwrap(), SparseVec::unit(i));
                let lhs = hom.delta(n).mul_vec(&SparseVec::unit(i));
                let rhs = hom.vectorize(&phi.boundary()).unwrap();
                assert_eq!(lhs, rhs, "degree {n}, basis {i}");
            }
        }
    }

    #[test]
    fn composition_matrices_match_composition() {
        let c = interval();
        let d = Arc::new(ChainComplex::from_diffs(0, vec![2, 1], vec![SparseMatrix::from_rows_i64(&[vec![1], vec![-1]])]).unwrap());
        let mut comps = BTreeMap::new();
        comps.insert(1, SparseMatrix::from_rows_i64(&[vec![2], vec![-1]]));
        let a = GradedMap::new(c.clone(), d.clone(), -1, comps).unwrap();
        let src = HomComplex::new(d.clone(), d.clone());
        let pre_dst = HomComplex::new(c.clone(), d.clone());
        let post_dst = HomComplex::new(c.clone(), d.clone());
        let from_c = HomComplex::new(c.clone(), c.clone());
        for n in -2..=2 {
            let pre = src.precompose_matrix(&a, n, &pre_dst);
            for i in 0..src.dim(n) {
                let phi = src.devectorize(n, &SparseVec::unit(i));
                let want = pre_dst.vectorize(&a.then(&phi).unwrap()).unwrap();
                assert_eq!(pre.mul_vec(&SparseVec::unit(i)), want);
            }
            let post = from_c.postcompose_matrix(&a, n, &post_dst);
            for i in 0..from_c.dim(n) {
                let phi = from_c.devectorize(n, &SparseVec::unit(i));
                let want = post_dst.vectorize(&phi.then(&a).unwrap()).unwrap();
                assert_eq!(post.mul_vec(&SparseVec::unit(i)), want);
            }
        }
    }

    #[test]
    fn scalars_and_contractible_source() {
        let pt = Arc::new(ChainComplex::concentrated(0, 1));
        assert_eq!(homotopy_classes(pt.clone(), pt.clone(), 0).dim(), 1);
        let c = interval();
        for s in -3..=3 {
            assert_eq!(homotopy_classes(c.clone(), pt.clone(), s).dim(), 0);
        }
    }

    #[test]
    fn nullhomotopy_cases() {
        let c = interval();
        let id = ChainMap::identity(c.clone());
        let h = nullhomotopy(&id).expect("acyclic");
        assert_eq!(h.at(0), SparseMatrix::scalar(1, &q(1)));
        let pt = Arc::new(ChainComplex::concentrated(0, 1));
        assert!(nullhomotopy(&ChainMap::identity(pt.clone())).is_none());
        let z = ChainMap::zero(pt.clone(), pt);
        assert!(nullhomotopy(&z).unwrap().s().is_zero());
    }
}

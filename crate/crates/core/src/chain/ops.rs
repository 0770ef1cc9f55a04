use std::collections::BTreeMap;
use std::sync::Arc;

use crate::exactla::{offsets, sign, SparseMatrix, SparseVec};

use super::complex::ChainComplex;
use super::map::{ChainMap, GradedMap};

/// `(Σ^k C)_n = C_{n−k}` with differential `(−1)^k d`.
pub fn suspend(c: &ChainComplex, k: i64) -> ChainComplex {
    if c.dims().is_empty() {
        return ChainComplex::zero();
    }
    let eps = sign(k);
    let diffs = (c.lo() + 1..=c.hi()).map(|n| c.d(n).scaled(&eps)).collect();
    ChainComplex::from_diffs(c.lo() + k, c.dims().to_vec(), diffs).expect("suspension of a complex")
}

/// `(Σ^k φ)_n = φ_{n−k}` between the suspended complexes.
pub fn suspend_map(phi: &GradedMap, k: i64) -> GradedMap {
    let source = Arc::new(suspend(phi.source(), k));
    let target = Arc::new(suspend(phi.target(), k));
    let comps = phi.components().iter().map(|(n, m)| (n + k, m.clone())).collect();
    GradedMap::new(source, target, phi.degree(), comps).expect("shapes preserved")
}

pub fn suspend_chain_map(f: &ChainMap, k: i64) -> ChainMap {
    ChainMap::from_graded(suspend_map(f.graded(), k)).expect("suspension preserves chain maps")
}

/// Mapping cone of `f: C → D` together with the maps `D → cone → ΣC`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: Arc<ChainComplex>,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

/// `cone_n = D_n ⊕ C_{n−1}` with differential `[[d^D, f], [0, −d^C]]`.
pub fn mapping_cone(f: &ChainMap) -> Cone {
    let c = f.source();
    let d = f.target();
    let (lo, hi) = (d.lo().min(c.lo() + 1), d.hi().max(c.hi() + 1));
    let dims: Vec<usize> = (lo..=hi).map(|n| d.dim(n) + c.dim(n - 1)).collect();
    let diffs: Vec<SparseMatrix> = (lo + 1..=hi)
        .map(|n| {
            let dd = d.d(n);
            let fc = f.at(n - 1);
            let dc = c.d(n - 1).neg();
            SparseMatrix::block(
                &[d.dim(n - 1), c.dim(n - 2)],
                &[d.dim(n), c.dim(n - 1)],
                &[vec![Some(&dd), Some(&fc)], vec![None, Some(&dc)]],
            )
            .expect("cone blocks")
        })
        .collect();
    let cone = Arc::new(ChainComplex::from_diffs(lo, dims, diffs).expect("cone differential squares to zero"));
    let sc = Arc::new(suspend(c, 1));
    let mut inc = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for n in lo..=hi {
        let (a, b) = (d.dim(n), c.dim(n - 1));
        let i = SparseMatrix::block(&[a, b], &[a], &[vec![Some(&SparseMatrix::identity(a))], vec![None]]).unwrap();
        let p = SparseMatrix::block(&[b], &[a, b], &[vec![None, Some(&SparseMatrix::identity(b))]]).unwrap();
        inc.insert(n, i);
        proj.insert(n, p);
    }
    let inclusion = ChainMap::new(d.clone(), cone.clone(), inc).expect("inclusion into the cone");
    let projection = ChainMap::new(cone.clone(), sc, proj).expect("projection onto the suspension");
    Cone { complex: cone, inclusion, projection }
}

/// Tensor product with the Koszul sign on `1 ⊗ d`.
///
/// The basis of `(C⊗D)_n` runs over ascending `p`, and within a summand
/// `C_p ⊗ D_{n−p}` the pair `(i, j)` sits at `i * dim D_{n−p} + j`.
pub fn tensor(c: &ChainComplex, d: &ChainComplex) -> ChainComplex {
    if c.is_empty() || d.is_empty() {
        return ChainComplex::zero();
    }
    let (lo, hi) = (c.lo() + d.lo(), c.hi() + d.hi());
    let summands = |n: i64| -> Vec<(i64, usize, usize)> {
        let ps: Vec<i64> = c.degrees().filter(|p| d.dim(n - p) > 0).collect();
        let sizes: Vec<usize> = ps.iter().map(|p| c.dim(*p) * d.dim(n - p)).collect();
        ps.into_iter().zip(offsets(&sizes)).map(|(p, o)| (p, o, d.dim(n - p))).collect()
    };
    let dim = |n: i64| summands(n).iter().map(|(p, _, w)| c.dim(*p) * w).sum::<usize>();
    let dims: Vec<usize> = (lo..=hi).map(dim).collect();
    let diffs = (lo + 1..=hi)
        .map(|n| {
            let src = summands(n);
            let dst = summands(n - 1);
            let find = |p: i64| dst.iter().find(|(pp, _, _)| *pp == p).map(|(_, o, w)| (*o, *w));
            let mut columns = Vec::new();
            for (p, _, w) in &src {
                let eps = sign(*p);
                for i in 0..c.dim(*p) {
                    for j in 0..*w {
                        let mut pairs = Vec::new();
                        if let Some((o, w2)) = find(p - 1) {
                            for (i2, v) in c.d(*p).col(i).iter() {
                                pairs.push((o + i2 * w2 + j, v.clone()));
                            }
                        }
                        if let Some((o, w2)) = find(*p) {
                            for (j2, v) in d.d(n - p).col(j).iter() {
                                pairs.push((o + i * w2 + j2, &eps * v));
                            }
                        }
                        columns.push(SparseVec::from_pairs(pairs));
                    }
                }
            }
            SparseMatrix::from_columns(dim(n - 1), columns)
        })
        .collect();
    ChainComplex::from_diffs(lo, dims, diffs).expect("Koszul sign gives d∘d = 0")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> ChainComplex {
        ChainComplex::from_diffs(0, vec![1, 1], vec![SparseMatrix::zeros(1, 1)]).unwrap()
    }

    #[test]
    fn suspension_shifts() {
        let c = ChainComplex::concentrated(0, 1);
        assert_eq!(suspend(&c, 0), c);
        assert_eq!(suspend(&c, 1).dim(1), 1);
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = Arc::new(circle());
        assert!(mapping_cone(&ChainMap::identity(c)).complex.is_acyclic());
    }

    #[test]
    fn cone_of_zero_splits() {
        let c = Arc::new(circle());
        let cone = mapping_cone(&ChainMap::zero(c.clone(), c.clone()));
        for n in -1..=3 {
            assert_eq!(cone.complex.betti(n), c.betti(n) + c.betti(n - 1));
        }
    }

    #[test]
    fn kunneth_torus() {
        let t = tensor(&circle(), &circle());
        assert_eq!((t.betti(0), t.betti(1), t.betti(2)), (1, 2, 1));
        let unit = ChainComplex::concentrated(0, 1);
        let x = ChainComplex::from_diffs(0, vec![2, 1], vec![SparseMatrix::from_rows_i64(&[vec![1], vec![2]])]).unwrap();
        assert_eq!(tensor(&unit, &x), x);
    }
}

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{dim_err, input_err, Result};
use crate::exactla::{q, sign, SparseMatrix, SparseVec};

use super::complex::ChainComplex;

/// A family of linear maps `C_n → D_{n+degree}`, with no compatibility with
/// the differentials assumed. Missing components are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: Arc<ChainComplex>,
    target: Arc<ChainComplex>,
    degree: i64,
    comps: BTreeMap<i64, SparseMatrix>,
}

impl GradedMap {
    pub fn new(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        degree: i64,
        comps: BTreeMap<i64, SparseMatrix>,
    ) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for (n, m) in comps {
            let want = (target.dim(n + degree), source.dim(n));
            if m.shape() != want {
                if m.is_zero() && (want.0 == 0 || want.1 == 0) {
                    continue;
                }
                return dim_err(format!("component {n} has shape {:?}, expected {want:?}", m.shape()));
            }
            if !m.is_zero() {
                kept.insert(n, m);
            }
        }
        Ok(GradedMap { source, target, degree, comps: kept })
    }

    pub fn zero(source: Arc<ChainComplex>, target: Arc<ChainComplex>, degree: i64) -> Self {
        GradedMap { source, target, degree, comps: BTreeMap::new() }
    }

    pub fn identity(c: Arc<ChainComplex>) -> Self {
        let comps = c.degrees().map(|n| (n, SparseMatrix::identity(c.dim(n)))).collect();
        GradedMap { source: c.clone(), target: c, degree: 0, comps }
    }

    pub fn source(&self) -> &Arc<ChainComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChainComplex> {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Component out of source degree `n`.
    pub fn at(&self, n: i64) -> SparseMatrix {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.target.dim(n + self.degree), self.source.dim(n)))
    }

    pub fn components(&self) -> &BTreeMap<i64, SparseMatrix> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn apply(&self, n: i64, v: &SparseVec) -> SparseVec {
        self.comps.get(&n).map_or_else(SparseVec::new, |m| m.mul_vec(v))
    }

    fn check_same(&self, other: &GradedMap) -> Result<()> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return dim_err("graded maps with different source, target or degree");
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        self.check_same(other)?;
        let mut comps = self.comps.clone();
        for (n, m) in &other.comps {
            let sum = self.at(*n).plus(m);
            comps.insert(*n, sum);
        }
        GradedMap::new(self.source.clone(), self.target.clone(), self.degree, comps)
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap> {
        self.add(&other.scaled(-1))
    }

    pub fn scaled(&self, a: i64) -> GradedMap {
        let comps = self.comps.iter().map(|(n, m)| (*n, m.scaled(&q(a)))).collect();
        GradedMap::new(self.source.clone(), self.target.clone(), self.degree, comps).expect("same shapes")
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GradedMap) -> Result<GradedMap> {
        if *self.target != *other.source {
            return dim_err("composition of graded maps with mismatched middle complex");
        }
        let comps = self
            .comps
            .iter()
            .map(|(n, m)| (*n, other.at(n + self.degree).compose(m)))
            .collect();
        GradedMap::new(self.source.clone(), other.target.clone(), self.degree + other.degree, comps)
    }

    /// The boundary `d ∘ φ − (−1)^k φ ∘ d` in the Hom complex.
    pub fn boundary(&self) -> GradedMap {
        let k = self.degree;
        let (lo, hi) = self.source.joint_range(&self.source);
        let comps = (lo..=hi)
            .map(|n| {
                let left = self.target.d(n + k).compose(&self.at(n));
                let right = self.at(n - 1).compose(&self.source.d(n)).scaled(&sign(k));
                (n, left.minus(&right))
            })
            .collect();
        GradedMap::new(self.source.clone(), self.target.clone(), k - 1, comps).expect("shapes agree")
    }

    pub fn is_cycle(&self) -> bool {
        self.boundary().is_zero()
    }
}

/// A degree-zero map commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap(GradedMap);

impl ChainMap {
    pub fn new(source: Arc<ChainComplex>, target: Arc<ChainComplex>, comps: BTreeMap<i64, SparseMatrix>) -> Result<Self> {
        ChainMap::from_graded(GradedMap::new(source, target, 0, comps)?)
    }

    pub fn from_graded(g: GradedMap) -> Result<Self> {
        if g.degree != 0 {
            return input_err(format!("chain map must have degree 0, got {}", g.degree));
        }
        let (lo, hi) = g.source.joint_range(&g.target);
        for n in lo..=hi + 1 {
            let a = g.at(n - 1).compose(&g.source.d(n));
            let b = g.target.d(n).compose(&g.at(n));
            if a != b {
                return input_err(format!("chain map square fails in degree {n}"));
            }
        }
        Ok(ChainMap(g))
    }

    pub fn zero(source: Arc<ChainComplex>, target: Arc<ChainComplex>) -> Self {
        ChainMap(GradedMap::zero(source, target, 0))
    }

    pub fn identity(c: Arc<ChainComplex>) -> Self {
        ChainMap(GradedMap::identity(c))
    }

    pub fn graded(&self) -> &GradedMap {
        &self.0
    }

    pub fn source(&self) -> &Arc<ChainComplex> {
        self.0.source()
    }

    pub fn target(&self) -> &Arc<ChainComplex> {
        self.0.target()
    }

    pub fn at(&self, n: i64) -> SparseMatrix {
        self.0.at(n)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap> {
        Ok(ChainMap(self.0.then(&other.0)?))
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        Ok(ChainMap(self.0.sub(&other.0)?))
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        Ok(ChainMap(self.0.add(&other.0)?))
    }

    /// Matrix of the induced map `H_n(source) → H_n(target)` in the bases of
    /// representatives chosen by [`ChainComplex::homology`].
    pub fn induced_on_homology(&self, n: i64) -> SparseMatrix {
        let hs = self.source().homology(n);
        let ht = self.target().homology(n);
        let f = self.at(n);
        let cols = hs
            .representatives()
            .iter()
            .map(|z| ht.class_of(&f.mul_vec(z)).expect("image of a cycle is a cycle"))
            .collect();
        SparseMatrix::from_columns(ht.dim(), cols)
    }

    pub fn is_quasi_iso(&self) -> bool {
        let (lo, hi) = self.source().joint_range(self.target());
        (lo..=hi).all(|n| {
            let m = self.induced_on_homology(n);
            m.rows() == m.cols() && crate::exactla::rank(&m) == m.rows()
        })
    }
}

/// `from − to = d s + s d` with `s_n: C_n → D_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainHomotopy {
    from: ChainMap,
    to: ChainMap,
    s: GradedMap,
}

impl ChainHomotopy {
    pub fn new(from: ChainMap, to: ChainMap, s: GradedMap) -> Result<Self> {
        if s.degree() != 1 || s.source() != from.source() || s.target() != from.target() {
            return input_err("homotopy must be a degree 1 map between the same complexes");
        }
        let diff = from.sub(&to)?;
        if s.boundary() != *diff.graded() {
            return input_err("homotopy identity fails");
        }
        Ok(ChainHomotopy { from, to, s })
    }

    pub fn from_map(&self) -> &ChainMap {
        &self.from
    }

    pub fn to_map(&self) -> &ChainMap {
        &self.to
    }

    pub fn s(&self) -> &GradedMap {
        &self.s
    }

    pub fn at(&self, n: i64) -> SparseMatrix {
        self.s.at(n)
    }
}

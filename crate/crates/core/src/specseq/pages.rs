use std::collections::BTreeMap;

use crate::chain::ChainMap;
use crate::error::{input_err, Result};
use crate::exactla::{kernel, subquotient_basis, SparseMatrix, SparseVec, Subquotient, Subspace};
use crate::simpfilt::FilteredComplex;

use super::probe::{ProbeComplex, Variance};

/// `E^r` of the spectral sequence of a bounded filtered complex, indexed
/// homologically by filtration `p` and complementary degree `q`: the cell
/// `(p, q)` lives in total degree `p + q`, and `d^r: (p, q) → (p − r, q + r − 1)`.
#[derive(Clone, Debug)]
pub struct Page {
    pub r: usize,
    cells: BTreeMap<(i64, i64), Subquotient>,
    diffs: BTreeMap<(i64, i64), SparseMatrix>,
}

impl Page {
    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.cells.get(&(p, q)).map_or(0, Subquotient::dim)
    }

    pub fn cell(&self, p: i64, q: i64) -> Option<&Subquotient> {
        self.cells.get(&(p, q))
    }

    /// Nonzero cells.
    pub fn cells(&self) -> impl Iterator<Item = ((i64, i64), usize)> + '_ {
        self.cells.iter().filter(|(_, s)| s.dim() > 0).map(|(k, s)| (*k, s.dim()))
    }

    /// `d^r` out of cell `(p, q)`, as a `dim(p − r, q + r − 1) × dim(p, q)` matrix.
    pub fn d(&self, p: i64, q: i64) -> SparseMatrix {
        let r = self.r as i64;
        self.diffs
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.dim(p - r, q + r - 1), self.dim(p, q)))
    }

    /// Coordinates in cell `(p, q)` of a total-degree vector lying in `Z^r_p`.
    pub fn project(&self, p: i64, q: i64, v: &SparseVec) -> Option<SparseVec> {
        match self.cells.get(&(p, q)) {
            Some(sq) => sq.project(v),
            None => v.is_zero().then(SparseVec::new),
        }
    }

    /// Whether `v ∈ Z^r_p` represents zero in `E^r_{p,q}`; `None` when `v`
    /// does not lie in `Z^r_p`.
    pub fn represents_zero(&self, p: i64, q: i64, v: &SparseVec) -> Option<bool> {
        self.project(p, q, v).map(|x| x.is_zero())
    }

    /// `Σ_p dim E^r_{p, n − p}`.
    pub fn total_dim(&self, n: i64) -> usize {
        self.cells.iter().filter(|((p, q), _)| p + q == n).map(|(_, s)| s.dim()).sum()
    }
}

/// The spectral sequence of a filtered complex after applying a probe.
#[derive(Clone, Debug)]
pub struct SpectralSequence {
    pub filtered: FilteredComplex,
    pub variance: Variance,
    pub pages: Vec<Page>,
}

/// One report row: `E_r^{s,t}` has dimension `dim`. Covariant reports use
/// `(s, t) = (p, q)`; contravariant reports use `(s, t) = (−p, q)`, so that
/// `d_r` has bidegree `(r, r − 1)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PageRow {
    pub r: usize,
    pub s: i64,
    pub t: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AbutmentReport {
    /// `(total degree, Σ dim E_∞, dim H)` wherever the two differ.
    pub mismatches: Vec<(i64, usize, usize)>,
}

impl AbutmentReport {
    pub fn is_ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn select(levels: &[i64], pred: impl Fn(i64) -> bool) -> Vec<usize> {
    levels.iter().enumerate().filter(|(_, l)| pred(**l)).map(|(i, _)| i).collect()
}

/// `Z^r_p` in degree `n`: `x ∈ F_p` with `dx ∈ F_{p−r}`.
fn z(f: &FilteredComplex, r: i64, p: i64, n: i64) -> Subspace {
    let dim = f.total().dim(n);
    let cols = select(f.levels(n), |l| l <= p);
    let rows = select(f.levels(n - 1), |l| l > p - r);
    let a = f.total().d(n).submatrix(&rows, &cols);
    let vs = kernel(&a).basis().iter().map(|v| v.filter_map_indices(|i| Some(cols[i]))).collect::<Vec<_>>();
    Subspace::span(dim, vs)
}

/// `E^r_p` in degree `n`: `Z^r_p / (Z^{r−1}_{p−1} + d Z^{r−1}_{p+r−1})`.
fn cell(f: &FilteredComplex, r: i64, p: i64, n: i64) -> Subquotient {
    let dim = f.total().dim(n);
    let num = z(f, r, p, n);
    let lower = z(f, r - 1, p - 1, n);
    let d = f.total().d(n + 1);
    let bnd = z(f, r - 1, p + r - 1, n + 1).basis().iter().map(|x| d.mul_vec(x)).collect::<Vec<_>>();
    let den = lower.sum(&Subspace::span(dim, bnd));
    subquotient_basis(&num, &den).expect("boundaries and lower cycles lie in Z^r_p")
}

/// Computes `E^r` directly from the filtration.
pub fn page(f: &FilteredComplex, r: usize) -> Page {
    let mut cells = BTreeMap::new();
    let Some((lo, hi)) = f.level_range() else {
        return Page { r, cells, diffs: BTreeMap::new() };
    };
    let ri = r as i64;
    for n in f.total().degrees() {
        for p in lo..=hi {
            cells.insert((p, n - p), cell(f, ri, p, n));
        }
    }
    let mut diffs = BTreeMap::new();
    for ((p, q), sq) in cells.iter().filter(|(_, s)| s.dim() > 0) {
        let n = p + q;
        let target = cells.get(&(p - ri, q + ri - 1));
        let d = f.total().d(n);
        let cols = sq
            .lifts()
            .iter()
            .map(|x| {
                let y = d.mul_vec(x);
                match target {
                    Some(t) => t.project(&y).expect("d maps Z^r_p into Z^r_{p−r}"),
                    None => SparseVec::new(),
                }
            })
            .collect();
        let rows = target.map_or(0, Subquotient::dim);
        diffs.insert((*p, *q), SparseMatrix::from_columns(rows, cols));
    }
    Page { r, cells, diffs }
}

/// Coordinates in `E^r_{p,q}` of a vector of total degree `p + q`, computing
/// only that cell; `None` when the vector is not in `Z^r_p`.
pub fn class_on_page(f: &FilteredComplex, r: usize, p: i64, q: i64, v: &SparseVec) -> Option<SparseVec> {
    cell(f, r as i64, p, p + q).project(v)
}

/// A page index past which every bounded filtration has stabilized.
pub fn stable_index(f: &FilteredComplex) -> usize {
    f.level_range().map_or(1, |(lo, hi)| (hi - lo + 1).max(1) as usize)
}

/// `E_1` through `E_{r_max}` of the probed filtration.
pub fn pages(filt: &FilteredComplex, probe: &ProbeComplex, r_max: usize) -> SpectralSequence {
    let filtered = probe.apply(filt);
    let pages = (1..=r_max).map(|r| page(&filtered, r)).collect();
    SpectralSequence { filtered, variance: probe.variance, pages }
}

impl SpectralSequence {
    pub fn page(&self, r: usize) -> Option<&Page> {
        self.pages.iter().find(|p| p.r == r)
    }

    /// `E_∞`, the page at which the filtration forces stabilization.
    pub fn e_infinity(&self) -> Page {
        let r = stable_index(&self.filtered);
        match self.page(r) {
            Some(p) => p.clone(),
            None => page(&self.filtered, r),
        }
    }

    pub fn rows(&self) -> Vec<PageRow> {
        let mut out = Vec::new();
        for pg in &self.pages {
            for ((p, q), dim) in pg.cells() {
                let s = if self.variance == Variance::Covariant { p } else { -p };
                out.push(PageRow { r: pg.r, s, t: q, dim });
            }
        }
        out
    }
}

/// Compares `Σ_p dim E_∞` with the homology of the probed total complex in
/// every degree.
pub fn abutment_check(ss: &SpectralSequence) -> AbutmentReport {
    let einf = ss.e_infinity();
    let total = ss.filtered.total();
    let mismatches = total
        .degrees()
        .filter_map(|n| {
            let (a, b) = (einf.total_dim(n), total.betti(n));
            (a != b).then_some((n, a, b))
        })
        .collect();
    AbutmentReport { mismatches }
}

/// Whether `f` maps every basis vector of level `l` into `F_l`.
pub fn preserves_filtration(f: &ChainMap, source: &FilteredComplex, target: &FilteredComplex) -> bool {
    f.source() == source.total()
        && f.target() == target.total()
        && source.total().degrees().all(|n| {
            let m = f.at(n);
            m.columns()
                .iter()
                .enumerate()
                .all(|(j, col)| col.iter().all(|(i, _)| target.levels(n)[*i] <= source.levels(n)[j]))
        })
}

/// The maps `E^r(C) → E^r(D)` induced by a filtration-preserving chain map of
/// the probed complexes, one table per computed page, keyed by cell.
pub fn induced_page_maps(
    f: &ChainMap,
    ss_c: &SpectralSequence,
    ss_d: &SpectralSequence,
) -> Result<Vec<BTreeMap<(i64, i64), SparseMatrix>>> {
    if !preserves_filtration(f, &ss_c.filtered, &ss_d.filtered) {
        return input_err("map does not preserve the filtration");
    }
    let mut out = Vec::new();
    for (pc, pd) in ss_c.pages.iter().zip(&ss_d.pages) {
        let mut table = BTreeMap::new();
        for ((p, q), sq) in &pc.cells {
            let fm = f.at(p + q);
            let cols = sq
                .lifts()
                .iter()
                .map(|x| pd.project(*p, *q, &fm.mul_vec(x)).expect("filtration-preserving maps keep Z^r_p"))
                .collect();
            table.insert((*p, *q), SparseMatrix::from_columns(pd.dim(*p, *q), cols));
        }
        out.push(table);
    }
    Ok(out)
}

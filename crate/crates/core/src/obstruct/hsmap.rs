use std::collections::BTreeMap;

use crate::chain::{nullhomotopy, ChainHomotopy, ChainMap, GradedMap};
use crate::error::{dim_err, input_err, Error, Result};
use crate::exactla::SparseMatrix;
use crate::simpfilt::{Bicomplex, FiltrationQuotient};

/// Column-wise chain maps `f_c: C_{*,c} → D_{*,c}` between two bicomplexes,
/// commuting with the horizontal maps only up to the recorded homotopies
/// `s_c` with `f_{c−1} h^C_c − h^D_c f_c = d s_c + s_c d`.
#[derive(Clone, Debug)]
pub struct HomotopySimplicialMap {
    source: Bicomplex,
    target: Bicomplex,
    f: Vec<ChainMap>,
    witnesses: Vec<ChainHomotopy>,
}

/// A homotopy `f_{n−1} ∘ d^C − d^D ∘ f_n ≃ 0` for one square, or `None` when
/// the square does not commute up to homotopy.
pub fn solve_stage1(f_n: &ChainMap, f_n1: &ChainMap, d_c: &ChainMap, d_d: &ChainMap) -> Result<Option<ChainHomotopy>> {
    let left = d_c.then(f_n1)?;
    let right = f_n.then(d_d)?;
    let diff = left.sub(&right)?;
    Ok(nullhomotopy(&diff).map(|h| {
        ChainHomotopy::new(left, right, h.s().clone()).expect("witness of the difference")
    }))
}

impl HomotopySimplicialMap {
    /// `witnesses[c − 1]` is the degree `+1` map `s_c` for `c = 1..=N`.
    pub fn new(source: Bicomplex, target: Bicomplex, f: Vec<ChainMap>, witnesses: Vec<GradedMap>) -> Result<Self> {
        Self::check_shapes(&source, &target, &f)?;
        if witnesses.len() != source.top() {
            return dim_err(format!("{} witnesses needed, got {}", source.top(), witnesses.len()));
        }
        let mut ws = Vec::with_capacity(witnesses.len());
        for (i, s) in witnesses.into_iter().enumerate() {
            let c = i + 1;
            let left = source.horizontal(c).then(&f[c - 1])?;
            let right = f[c].then(target.horizontal(c))?;
            let h = ChainHomotopy::new(left, right, s).map_err(|e| match e {
                Error::Input(m) => Error::Input(format!("witness at column {c}: {m}")),
                other => other,
            })?;
            ws.push(h);
        }
        Ok(HomotopySimplicialMap { source, target, f, witnesses: ws })
    }

    /// Solves every stage-1 square with the canonical solution.
    pub fn with_solved_witnesses(source: Bicomplex, target: Bicomplex, f: Vec<ChainMap>) -> Result<Self> {
        Self::check_shapes(&source, &target, &f)?;
        let mut ws = Vec::new();
        for c in 1..=source.top() {
            match solve_stage1(&f[c], &f[c - 1], source.horizontal(c), target.horizontal(c))? {
                Some(h) => ws.push(h),
                None => {
                    return Err(Error::Precondition(format!("square at column {c} does not commute up to homotopy")))
                }
            }
        }
        Ok(HomotopySimplicialMap { source, target, f, witnesses: ws })
    }

    /// A strict map: every square commutes and all witnesses are zero.
    pub fn strict(source: Bicomplex, target: Bicomplex, f: Vec<ChainMap>) -> Result<Self> {
        let ws = (1..=source.top())
            .map(|c| GradedMap::zero(source.column(c).clone(), target.column(c - 1).clone(), 1))
            .collect();
        Self::new(source, target, f, ws)
    }

    fn check_shapes(source: &Bicomplex, target: &Bicomplex, f: &[ChainMap]) -> Result<()> {
        if source.top() != target.top() || f.len() != source.top() + 1 {
            return dim_err("source, target and column maps must have the same number of columns");
        }
        for (c, fc) in f.iter().enumerate() {
            if fc.source() != source.column(c) || fc.target() != target.column(c) {
                return dim_err(format!("column map {c} has wrong source or target"));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Bicomplex {
        &self.source
    }

    pub fn target(&self) -> &Bicomplex {
        &self.target
    }

    pub fn top(&self) -> usize {
        self.source.top()
    }

    pub fn f(&self, c: usize) -> &ChainMap {
        &self.f[c]
    }

    /// The stage-1 witness at column `c ≥ 1`.
    pub fn witness(&self, c: usize) -> &ChainHomotopy {
        &self.witnesses[c - 1]
    }

    pub fn is_degreewise_quasi_iso(&self) -> bool {
        self.f.iter().all(ChainMap::is_quasi_iso)
    }

    /// The filtration quotient `F_b / F_a` of both totalizations.
    pub fn windows(&self, a: i64, b: i64) -> (FiltrationQuotient, FiltrationQuotient) {
        (self.source.totalize().quotient(a, b), self.target.totalize().quotient(a, b))
    }

    /// Assembles a filtration-preserving map on the Tot window of columns
    /// `lo..=hi` from `f` and corrections `g[(q, c)]: C_{*,c} → D_{*,c−q}`
    /// of degree `q`.
    pub fn assemble(&self, lo: usize, hi: usize, g: &BTreeMap<(usize, usize), GradedMap>) -> Result<ChainMap> {
        let (wc, wd) = self.windows(lo as i64 - 1, hi as i64);
        let mut comps = BTreeMap::new();
        let (mlo, mhi) = wc.complex.joint_range(&wd.complex);
        for m in mlo..=mhi {
            let cols: Vec<usize> = (lo..=hi).map(|c| self.source.cell_dim(m - c as i64, c)).collect();
            let rows: Vec<usize> = (lo..=hi).map(|c| self.target.cell_dim(m - c as i64, c)).collect();
            let mut owned: BTreeMap<(usize, usize), SparseMatrix> = BTreeMap::new();
            for c in lo..=hi {
                let k = m - c as i64;
                owned.insert((c - lo, c - lo), self.f[c].at(k));
                for ((q, cc), gq) in g {
                    if *cc == c && c >= lo + q {
                        owned.insert((c - q - lo, c - lo), gq.at(k));
                    }
                }
            }
            let blocks: Vec<Vec<Option<&SparseMatrix>>> = (0..rows.len())
                .map(|r| (0..cols.len()).map(|c| owned.get(&(r, c))).collect())
                .collect();
            comps.insert(m, SparseMatrix::block(&rows, &cols, &blocks)?);
        }
        ChainMap::new(wc.complex.clone(), wd.complex.clone(), comps)
    }
}

/// The map on `F_n / F_{n−2}` (columns `n−1, n`) given on `Tot_{k+n}` by
/// `(x₁, x₂) ↦ (f x₁ + (−1)^{n−1} s x₂, f x₂)`.
///
/// The sign makes the block matrix a chain map for the totalization sign
/// convention used here.
pub fn gr2_map(map: &HomotopySimplicialMap, n: usize) -> Result<ChainMap> {
    if n < 1 || n > map.top() {
        return input_err(format!("the two-column window needs 1 ≤ n ≤ {}", map.top()));
    }
    let s = map.witness(n).s().scaled(if n % 2 == 1 { 1 } else { -1 });
    let g = BTreeMap::from([((1, n), s)]);
    map.assemble(n - 1, n, &g)
}

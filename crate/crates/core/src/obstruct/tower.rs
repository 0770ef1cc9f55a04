use std::collections::BTreeMap;
use std::sync::Arc;

use crate::chain::{
    mapping_cone, suspend, suspend_chain_map, ChainComplex, ChainMap, GradedMap, HomComplex,
};
use crate::error::{dim_err, input_err, Result};
use crate::exactla::{Solver, SparseMatrix, SparseVec};
use crate::simpfilt::Bicomplex;

/// Complexes `C_n` with maps `d_n: C_n → C_{n−1}` whose consecutive
/// composites vanish up to the recorded homotopies `h_n`
/// (`d h_n + h_n d = d_{n−1} d_n`, with `h_n: C_n → C_{n−2}` of degree `+1`).
#[derive(Clone, Debug)]
pub struct HomotopyChainObject {
    objects: Vec<Arc<ChainComplex>>,
    maps: Vec<ChainMap>,
    homotopies: Vec<GradedMap>,
}

impl HomotopyChainObject {
    /// `maps[n − 1] = d_n` for `n ≥ 1` and `homotopies[n − 2] = h_n` for `n ≥ 2`.
    pub fn new(objects: Vec<Arc<ChainComplex>>, maps: Vec<ChainMap>, homotopies: Vec<GradedMap>) -> Result<Self> {
        if objects.is_empty() || maps.len() + 1 != objects.len() || homotopies.len() + 2 != objects.len().max(2) {
            return dim_err("need N maps and N − 1 homotopies for N + 1 objects");
        }
        for (i, d) in maps.iter().enumerate() {
            if d.source() != &objects[i + 1] || d.target() != &objects[i] {
                return dim_err(format!("d_{} has wrong source or target", i + 1));
            }
        }
        for (i, h) in homotopies.iter().enumerate() {
            let n = i + 2;
            if h.degree() != 1 || h.source() != &objects[n] || h.target() != &objects[n - 2] {
                return dim_err(format!("h_{n} must be a degree 1 map C_{n} → C_{}", n - 2));
            }
            let dd = maps[n - 1].then(&maps[n - 2])?;
            if h.boundary() != *dd.graded() {
                return input_err(format!("h_{n} is not a nullhomotopy of d_{} d_{n}", n - 1));
            }
        }
        Ok(HomotopyChainObject { objects, maps, homotopies })
    }

    /// The columns of a bicomplex with zero homotopies.
    pub fn from_bicomplex(b: &Bicomplex) -> Self {
        let maps: Vec<ChainMap> = (1..=b.top()).map(|n| b.horizontal(n).clone()).collect();
        let homotopies = (2..=b.top())
            .map(|n| GradedMap::zero(b.column(n).clone(), b.column(n - 2).clone(), 1))
            .collect();
        HomotopyChainObject { objects: b.columns().to_vec(), maps, homotopies }
    }

    pub fn top(&self) -> usize {
        self.objects.len() - 1
    }

    pub fn object(&self, n: usize) -> &Arc<ChainComplex> {
        &self.objects[n]
    }

    pub fn d(&self, n: usize) -> &ChainMap {
        &self.maps[n - 1]
    }

    pub fn h(&self, n: usize) -> &GradedMap {
        &self.homotopies[n - 2]
    }
}

/// One stage `T_k = cone(α_k: Σ^{k−1} C_k → T_{k−1})` with its triangle
/// `T_{k−1} → T_k → Σ^k C_k`.
#[derive(Clone, Debug)]
pub struct TowerStage {
    pub index: usize,
    pub object: Arc<ChainComplex>,
    pub attaching: Option<ChainMap>,
    pub inclusion: Option<ChainMap>,
    pub projection: Option<ChainMap>,
}

/// `φ_n = α_{n−1} ∘ Σ^{n−2} d_n: Σ^{n−2} C_n → T_{n−2}` and whether it is
/// nullhomotopic.
#[derive(Clone, Debug)]
pub struct TowerBracket {
    pub n: usize,
    pub phi: ChainMap,
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerVerdict {
    Totalizable(Arc<ChainComplex>),
    Obstructed { n: usize },
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub stages: Vec<TowerStage>,
    pub brackets: Vec<TowerBracket>,
    pub verdict: TowerVerdict,
}

/// Nullhomotopy of `phi: Σ^{n−2} C_n → T_{n−2}` whose component into the
/// summand `Σ^{n−3} C_{n−2}` of `T_{n−2}` is `(−1)^n h_n`, if one exists.
fn constrained_nullhomotopy(
    phi: &ChainMap,
    x: &HomotopyChainObject,
    n: usize,
    lower_dim: &dyn Fn(i64) -> usize,
) -> Option<GradedMap> {
    let src = phi.source().clone();
    let tgt = phi.target().clone();
    let hom = HomComplex::new(src.clone(), tgt.clone());
    let h = x.h(n).scaled(if n % 2 == 0 { 1 } else { -1 });
    let shift = n as i64 - 2;
    let mut comps = BTreeMap::new();
    for m in src.degrees() {
        let low = lower_dim(m + 1);
        let top = h.at(m - shift);
        let zeros = SparseMatrix::zeros(low, src.dim(m));
        comps.insert(m, SparseMatrix::vstack(&[&zeros, &top]).ok()?);
    }
    let fixed = GradedMap::new(src.clone(), tgt.clone(), 1, comps).ok()?;
    let fixed_vec = hom.vectorize(&fixed).ok()?;
    let delta = hom.delta(1);
    let target_vec = hom.vectorize(phi.graded()).ok()?;
    let rhs = target_vec.sub(&delta.mul_vec(&fixed_vec));
    // Free coordinates: entries whose row lies in the lower part of T_{n−2}.
    let free: Vec<usize> = (0..hom.dim(1))
        .filter(|i| {
            let g = hom.devectorize(1, &SparseVec::unit(*i));
            let (m, mat) = g.components().iter().next().expect("unit has one entry");
            let row = mat.triplets()[0].0;
            row < lower_dim(m + 1)
        })
        .collect();
    let rows: Vec<usize> = (0..delta.rows()).collect();
    let y = Solver::new(&delta.submatrix(&rows, &free)).solve(&rhs)?;
    let v = fixed_vec.add(&y.filter_map_indices(|i| Some(free[i])));
    Some(hom.devectorize(1, &v))
}

fn free_nullhomotopy(phi: &ChainMap) -> Option<GradedMap> {
    crate::chain::null_witness(phi.graded())
}

/// Builds `T_0 = C_0`, `T_1 = cone(d_1)`, and `T_n = cone(α_n)` while the
/// brackets `φ_n` vanish. The nullhomotopy defining `α_n` keeps the recorded
/// `h_n` as its top component when possible, so each verdict is relative to
/// the data fixed at earlier stages.
pub fn bn_totalization_tower(x: &HomotopyChainObject) -> Tower {
    let mut stages = vec![TowerStage {
        index: 0,
        object: x.object(0).clone(),
        attaching: None,
        inclusion: None,
        projection: None,
    }];
    let mut brackets = Vec::new();
    if x.top() >= 1 {
        let cone = mapping_cone(x.d(1));
        stages.push(TowerStage {
            index: 1,
            object: cone.complex.clone(),
            attaching: Some(x.d(1).clone()),
            inclusion: Some(cone.inclusion),
            projection: Some(cone.projection),
        });
    }
    for n in 2..=x.top() {
        let prev = stages[n - 1].attaching.clone().expect("stage n−1 has an attaching map");
        let t_nm2 = stages[n - 2].object.clone();
        let sd = suspend_chain_map(x.d(n), n as i64 - 2);
        let phi = sd.then(&prev).expect("composable");
        let lower: Arc<ChainComplex> =
            if n >= 3 { stages[n - 3].object.clone() } else { Arc::new(ChainComplex::zero()) };
        let lower_dim = move |m: i64| lower.dim(m);
        let h = constrained_nullhomotopy(&phi, x, n, &lower_dim).or_else(|| free_nullhomotopy(&phi));
        let vanishes = h.is_some();
        brackets.push(TowerBracket { n, phi: phi.clone(), vanishes });
        let Some(h) = h else {
            return Tower { stages, brackets, verdict: TowerVerdict::Obstructed { n } };
        };
        let src = Arc::new(suspend(x.object(n), n as i64 - 1));
        let t_nm1 = stages[n - 1].object.clone();
        let mut comps = BTreeMap::new();
        for m in src.degrees() {
            let top = h.at(m - 1).neg();
            let bottom = x.d(n).at(m - n as i64 + 1);
            comps.insert(m, SparseMatrix::vstack(&[&top, &bottom]).expect("same column count"));
        }
        debug_assert_eq!(t_nm2.total_dim() + x.object(n - 1).total_dim(), t_nm1.total_dim());
        let alpha = ChainMap::new(src, t_nm1, comps).expect("attaching map is a chain map");
        let cone = mapping_cone(&alpha);
        stages.push(TowerStage {
            index: n,
            object: cone.complex.clone(),
            attaching: Some(alpha),
            inclusion: Some(cone.inclusion),
            projection: Some(cone.projection),
        });
    }
    let last = stages.last().expect("nonempty").object.clone();
    Tower { stages, brackets, verdict: TowerVerdict::Totalizable(last) }
}

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::chain::{ChainComplex, ChainMap, HomComplex};
use crate::error::Result;
use crate::simpfilt::FilteredComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    /// `[S, −]`: maps out of the probe.
    Covariant,
    /// `[−, S]`: maps into the probe.
    Contravariant,
}

/// A bounded complex `S` used to turn a filtered complex into the filtered
/// Hom complex whose homology computes `[S, −]` or `[−, S]`.
#[derive(Clone, Debug)]
pub struct ProbeComplex {
    pub s: Arc<ChainComplex>,
    pub variance: Variance,
}

impl ProbeComplex {
    pub fn new(s: Arc<ChainComplex>, variance: Variance) -> Self {
        ProbeComplex { s, variance }
    }

    /// `[Q, −]` with `Q` in degree 0; applying it changes nothing.
    pub fn unit() -> Self {
        ProbeComplex::new(Arc::new(ChainComplex::concentrated(0, 1)), Variance::Covariant)
    }

    fn hom(&self, c: &Arc<ChainComplex>) -> HomComplex {
        match self.variance {
            Variance::Covariant => HomComplex::new(self.s.clone(), c.clone()),
            Variance::Contravariant => HomComplex::new(c.clone(), self.s.clone()),
        }
    }

    /// The filtered Hom complex. Covariantly an elementary map inherits the
    /// level of its target basis vector. Contravariantly it gets minus the
    /// level of its source basis vector, so maps vanishing on `F_{p−1}` form
    /// the increasing stage `−p`.
    pub fn apply(&self, filt: &FilteredComplex) -> FilteredComplex {
        let hom = self.hom(filt.total());
        let total = Arc::new(hom.to_complex());
        let mut levels = BTreeMap::new();
        for n in total.degrees() {
            let lv = hom
                .basis_labels(n)
                .into_iter()
                .map(|(k, r, c)| match self.variance {
                    Variance::Covariant => filt.levels(k + n)[r],
                    Variance::Contravariant => -filt.levels(k)[c],
                })
                .collect();
            levels.insert(n, lv);
        }
        FilteredComplex::new(total, levels).expect("probing preserves the filtration")
    }

    /// The map of probed complexes induced by `f: C → D`. Covariantly it
    /// runs `Hom(S, C) → Hom(S, D)`, contravariantly `Hom(D, S) → Hom(C, S)`.
    pub fn apply_map(&self, f: &ChainMap) -> Result<ChainMap> {
        let (src, dst) = match self.variance {
            Variance::Covariant => (self.hom(f.source()), self.hom(f.target())),
            Variance::Contravariant => (self.hom(f.target()), self.hom(f.source())),
        };
        let (sc, dc) = (Arc::new(src.to_complex()), Arc::new(dst.to_complex()));
        let mut comps = BTreeMap::new();
        for n in sc.degrees() {
            let m = match self.variance {
                Variance::Covariant => src.postcompose_matrix(f.graded(), n, &dst),
                Variance::Contravariant => src.precompose_matrix(f.graded(), n, &dst),
            };
            if m.rows() > 0 {
                comps.insert(n, m);
            }
        }
        ChainMap::new(sc, dc, comps)
    }
}

//! A three-column pair with degreewise quasi-isomorphisms whose first bracket
//! does not vanish.
//!
//! Source columns: `w` (degree 1), nothing, `x` (degree 0), all horizontal
//! maps zero. Target columns: `w`, the acyclic `z ↦ y` (degrees 1, 0), and `x`,
//! with horizontal maps `x ↦ y` and `z ↦ w`. The map is the identity on the
//! outer columns. The square at column 2 commutes only up to the homotopy
//! `x ↦ z`, and composing it with `z ↦ w` gives a map `x ↦ w` that no
//! re-choice can kill. `examples/surrogate_search.rs` rediscovers this
//! instance.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::chain::{ChainComplex, ChainMap};
use crate::exactla::SparseMatrix;
use crate::obstruct::HomotopySimplicialMap;
use crate::simpfilt::Bicomplex;

fn single(degree: i64) -> Arc<ChainComplex> {
    Arc::new(ChainComplex::concentrated(degree, 1))
}

fn map(source: &Arc<ChainComplex>, target: &Arc<ChainComplex>, comps: &[(i64, &[&[i64]])]) -> ChainMap {
    let comps: BTreeMap<i64, SparseMatrix> =
        comps.iter().map(|(n, rows)| (*n, SparseMatrix::from_rows_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()))).collect();
    ChainMap::new(source.clone(), target.clone(), comps).expect("fixture map is a chain map")
}

pub fn surrogate_source() -> Bicomplex {
    let c0 = single(1);
    let c1 = Arc::new(ChainComplex::zero());
    let c2 = single(0);
    let h1 = ChainMap::zero(c1.clone(), c0.clone());
    let h2 = ChainMap::zero(c2.clone(), c1.clone());
    Bicomplex::new(vec![c0, c1, c2], vec![h1, h2]).expect("fixture bicomplex")
}

pub fn surrogate_target() -> Bicomplex {
    let d0 = single(1);
    let d1 = Arc::new(
        ChainComplex::from_diffs(0, vec![1, 1], vec![SparseMatrix::from_rows_i64(&[vec![1]])]).expect("z ↦ y"),
    );
    let d2 = single(0);
    let h1 = map(&d1, &d0, &[(1, &[&[1]])]);
    let h2 = map(&d2, &d1, &[(0, &[&[1]])]);
    Bicomplex::new(vec![d0, d1, d2], vec![h1, h2]).expect("fixture bicomplex")
}

/// The surrogate pair with its solved stage-1 witnesses.
pub fn surrogate_counterexample() -> HomotopySimplicialMap {
    let c = surrogate_source();
    let d = surrogate_target();
    let f = vec![
        ChainMap::identity(c.column(0).clone()),
        ChainMap::zero(c.column(1).clone(), d.column(1).clone()),
        ChainMap::identity(c.column(2).clone()),
    ];
    HomotopySimplicialMap::with_solved_witnesses(c, d, f).expect("squares commute up to homotopy")
}

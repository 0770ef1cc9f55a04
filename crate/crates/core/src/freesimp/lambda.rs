use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use crate::chain::{ChainComplex, ChainMap};
use crate::error::Result;
use crate::exactla::{q, SparseMatrix, SparseVec};
use crate::groupcyc::{CyclicSetTrunc, LambdaComplex, Selection};

/// The λ-complex of a finite cyclic set whose cells carry names of type `C`.
#[derive(Clone, Debug)]
pub struct LambdaWindow<C> {
    pub cells: Vec<Vec<C>>,
    pub index: Vec<HashMap<C, usize>>,
    pub lambda: LambdaComplex,
    complex: Arc<ChainComplex>,
}

impl<C: Clone + Eq + Hash> LambdaWindow<C> {
    pub fn new(cells: Vec<Vec<C>>, set: &CyclicSetTrunc) -> Self {
        let lambda = set.lambda(&Selection::all(set));
        let index = cells.iter().map(|c| c.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect()).collect();
        let complex = Arc::new(lambda.complex.clone());
        LambdaWindow { cells, index, lambda, complex }
    }

    pub fn complex(&self) -> &Arc<ChainComplex> {
        &self.complex
    }

    /// The class of a named cell of degree `k`, or `None` if it is not listed.
    pub fn class_of(&self, k: usize, cell: &C) -> Option<SparseVec> {
        let i = *self.index.get(k)?.get(cell)?;
        Some(match self.lambda.projection[k][i] {
            Some((o, s)) => SparseVec::unit(o).scaled(&q(s)),
            None => SparseVec::new(),
        })
    }

    /// The chain map induced by a cell map that commutes with the structure
    /// maps. Panics if an image cell is not listed in `target`.
    pub fn induced<D: Clone + Eq + Hash>(&self, target: &LambdaWindow<D>, f: impl Fn(&C) -> D) -> Result<ChainMap> {
        let comps = self
            .lambda
            .representatives
            .iter()
            .enumerate()
            .map(|(k, reps)| {
                let cols = reps
                    .iter()
                    .map(|x| target.class_of(k, &f(&self.cells[k][*x])).expect("image cell lies in the window"))
                    .collect();
                (k as i64, SparseMatrix::from_columns(target.complex.dim(k as i64), cols))
            })
            .collect();
        ChainMap::new(self.complex.clone(), target.complex.clone(), comps)
    }
}

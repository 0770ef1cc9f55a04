//! Incremental column reduction.
//!
//! Vectors are inserted one at a time and reduced against the pivots found so
//! far (pivot = smallest nonzero index of a reduced vector, normalized to 1).
//! Each pivot remembers how it was combined from the inserted vectors, which
//! yields kernels, canonical solutions and quotient coordinates with a single
//! mechanism.

use num::One;

use super::rational::Q;
use super::vector::SparseVec;

/// Result of inserting a vector into a [`Reducer`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insertion {
    /// The vector was independent of everything inserted before.
    Pivot,
    /// The vector was dependent; the payload is a nonzero relation
    /// `Σ c_i v_i = 0` over inserted indices.
    Dependent(SparseVec),
}

#[derive(Clone, Debug)]
pub struct Reducer {
    ambient: usize,
    track: bool,
    pivot_at: Vec<Option<usize>>,
    reduced: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    pivot_inputs: Vec<usize>,
    inserted: usize,
}

impl Reducer {
    /// `track` controls whether combinations over inserted vectors are kept;
    /// rank-only callers can skip the bookkeeping.
    pub fn new(ambient: usize, track: bool) -> Self {
        Reducer {
            ambient,
            track,
            pivot_at: vec![None; ambient],
            reduced: Vec::new(),
            combos: Vec::new(),
            pivot_inputs: Vec::new(),
            inserted: 0,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.reduced.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Indices (in insertion order) of the vectors that became pivots.
    pub fn pivot_inputs(&self) -> &[usize] {
        &self.pivot_inputs
    }

    /// Reduces `v` against the current pivots. Returns the residual `r` and a
    /// combination `c` over inserted vectors with `v = r + Σ c_i v_i`. `c` is
    /// empty when tracking is off.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut r = v.clone();
        let mut c = SparseVec::new();
        let mut skip = 0usize;
        // `skip` walks past leading entries without a pivot; everything
        // before it is final.
        loop {
            let next = r.iter().skip(skip).next().map(|(i, a)| (*i, a.clone()));
            let Some((i, a)) = next else { break };
            match self.pivot_at[i] {
                Some(p) => {
                    let neg = -a.clone();
                    r.axpy(&neg, &self.reduced[p]);
                    if self.track {
                        c.axpy(&a, &self.combos[p]);
                    }
                }
                None => skip += 1,
            }
        }
        (r, c)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    pub fn insert(&mut self, v: &SparseVec) -> Insertion {
        let k = self.inserted;
        self.inserted += 1;
        let (r, c) = self.reduce(v);
        let mut combo = if self.track { SparseVec::unit(k).sub(&c) } else { SparseVec::new() };
        if r.is_zero() {
            return Insertion::Dependent(combo);
        }
        let (i, lead) = r.leading().map(|(i, a)| (i, a.clone())).expect("nonzero");
        let inv = Q::one() / lead;
        let r = r.scaled(&inv);
        if self.track {
            combo = combo.scaled(&inv);
        }
        self.pivot_at[i] = Some(self.reduced.len());
        self.reduced.push(r);
        self.combos.push(combo);
        self.pivot_inputs.push(k);
        Insertion::Pivot
    }

    /// Combination over inserted vectors that produces `v`, if `v` is in the
    /// span.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        debug_assert!(self.track);
        let (r, c) = self.reduce(v);
        r.is_zero().then_some(c)
    }
}

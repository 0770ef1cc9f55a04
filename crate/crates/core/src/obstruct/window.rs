//! The linear system for filtration-preserving extensions over a window of
//! columns.
//!
//! A map `g = Σ_q g_q` of totalizations with `g_0 = f` and
//! `g_{q,c}: C_{*,c} → D_{*,c−q}` of internal degree `q` is a chain map iff
//! for every `q ≥ 1`
//!
//! `δ g_{q,c} = (−1)^{c−q} (g_{q−1,c−1} h^C_c − h^D_{c−q+1} g_{q−1,c})`
//!
//! in `Hom(C_{*,c}, D_{*,c−q})`. All unknowns are vectorized and solved
//! jointly.

use std::collections::BTreeMap;

use crate::chain::{GradedMap, HomComplex};
use crate::exactla::{kernel, offsets, q as rat, Solver, SparseMatrix, SparseVec};

use super::hsmap::HomotopySimplicialMap;

pub(crate) type Key = (usize, usize);

pub(crate) struct WindowSystem<'a> {
    map: &'a HomotopySimplicialMap,
    keys: Vec<Key>,
    offsets: Vec<usize>,
    homs: BTreeMap<Key, HomComplex>,
    matrix: SparseMatrix,
    rhs: SparseVec,
}

fn eps(c: usize, q: usize) -> i64 {
    if (c - q) % 2 == 0 {
        1
    } else {
        -1
    }
}

impl<'a> WindowSystem<'a> {
    /// Unknowns and equations for `1 ≤ q ≤ max_q` and columns in `lo..=hi`.
    pub(crate) fn new(map: &'a HomotopySimplicialMap, lo: usize, hi: usize, max_q: usize) -> Self {
        let (src, tgt) = (map.source(), map.target());
        let mut keys = Vec::new();
        for q in 1..=max_q {
            for c in lo + q..=hi {
                keys.push((q, c));
            }
        }
        let homs: BTreeMap<Key, HomComplex> = keys
            .iter()
            .map(|&(q, c)| ((q, c), HomComplex::new(src.column(c).clone(), tgt.column(c - q).clone())))
            .collect();
        let var_dims: Vec<usize> = keys.iter().map(|&(q, c)| homs[&(q, c)].dim(q as i64)).collect();
        let eq_dims: Vec<usize> = keys.iter().map(|&(q, c)| homs[&(q, c)].dim(q as i64 - 1)).collect();
        let var_off = offsets(&var_dims);
        let index: BTreeMap<Key, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();

        let mut blocks: BTreeMap<(usize, usize), SparseMatrix> = BTreeMap::new();
        let mut rhs_parts: Vec<SparseVec> = Vec::new();
        for (row, &(q, c)) in keys.iter().enumerate() {
            let hom = &homs[&(q, c)];
            let e = eps(c, q);
            blocks.insert((row, row), hom.delta(q as i64));
            if q == 1 {
                let lhs = src.horizontal(c).then(map.f(c - 1)).expect("composable");
                let rhs = map.f(c).then(tgt.horizontal(c)).expect("composable");
                let phi = lhs.sub(&rhs).expect("same shapes").graded().scaled(e);
                rhs_parts.push(hom.vectorize(&phi).expect("same Hom complex"));
            } else {
                rhs_parts.push(SparseVec::new());
                let a = index[&(q - 1, c - 1)];
                let pre = homs[&(q - 1, c - 1)].precompose_matrix(src.horizontal(c).graded(), q as i64 - 1, hom);
                blocks.insert((row, a), pre.scaled(&rat(-e)));
                let b = index[&(q - 1, c)];
                let post = homs[&(q - 1, c)].postcompose_matrix(tgt.horizontal(c - q + 1).graded(), q as i64 - 1, hom);
                blocks.insert((row, b), post.scaled(&rat(e)));
            }
        }
        let grid: Vec<Vec<Option<&SparseMatrix>>> = (0..keys.len())
            .map(|r| (0..keys.len()).map(|c| blocks.get(&(r, c))).collect())
            .collect();
        let matrix = SparseMatrix::block(&eq_dims, &var_dims, &grid).expect("window blocks");
        let eq_off = offsets(&eq_dims);
        let eq_off = &eq_off;
        let rhs = SparseVec::from_pairs(
            rhs_parts
                .iter()
                .enumerate()
                .flat_map(|(i, v)| v.iter().map(move |(j, x)| (eq_off[i] + j, x.clone())))
                .collect(),
        );
        WindowSystem { map, keys, offsets: var_off, homs, matrix, rhs }
    }

    fn slot(&self, key: Key) -> Option<(usize, usize)> {
        let i = self.keys.iter().position(|k| *k == key)?;
        Some((self.offsets[i], self.homs[&key].dim(key.0 as i64)))
    }

    pub(crate) fn unknowns(&self) -> usize {
        self.matrix.cols()
    }

    /// The block of a solution vector belonging to one unknown.
    pub(crate) fn component(&self, x: &SparseVec, key: Key) -> SparseVec {
        let (off, len) = self.slot(key).expect("known unknown");
        x.filter_map_indices(|i| (i >= off && i < off + len).then(|| i - off))
    }

    pub(crate) fn embed(&self, key: Key, v: &SparseVec) -> SparseVec {
        let (off, _) = self.slot(key).expect("known unknown");
        v.shifted(off)
    }

    pub(crate) fn decode(&self, x: &SparseVec) -> BTreeMap<Key, GradedMap> {
        self.keys
            .iter()
            .map(|&k| (k, self.homs[&k].devectorize(k.0 as i64, &self.component(x, k))))
            .collect()
    }

    /// Some solution, preferring one whose first-order part is the recorded
    /// stage-1 witnesses (`g_{1,c} = (−1)^{c−1} s_c`).
    pub(crate) fn solve(&self) -> Option<SparseVec> {
        let mut fixed = SparseVec::new();
        let mut fixed_slots = Vec::new();
        for &(q, c) in &self.keys {
            if q == 1 {
                let s = self.map.witness(c).s().scaled(eps(c, 1));
                fixed = fixed.add(&self.embed((q, c), &self.homs[&(q, c)].vectorize(&s).expect("same Hom")));
                fixed_slots.push(self.slot((q, c)).expect("slot"));
            }
        }
        let is_fixed = |i: usize| fixed_slots.iter().any(|(o, l)| i >= *o && i < o + l);
        let free: Vec<usize> = (0..self.unknowns()).filter(|i| !is_fixed(*i)).collect();
        let all_rows: Vec<usize> = (0..self.matrix.rows()).collect();
        let a_free = self.matrix.submatrix(&all_rows, &free);
        let b = self.rhs.sub(&self.matrix.mul_vec(&fixed));
        if let Some(y) = Solver::new(&a_free).solve(&b) {
            return Some(fixed.add(&y.filter_map_indices(|i| Some(free[i]))));
        }
        Solver::new(&self.matrix).solve(&self.rhs)
    }

    pub(crate) fn kernel(&self) -> Vec<SparseVec> {
        kernel(&self.matrix).basis().to_vec()
    }

    /// Matrix of the degree `k − 1` map `(−1)^{c−k} (g_{k−1,c−1} h^C_c −
    /// h^D_{c−k+1} g_{k−1,c})` in `Hom(C_{*,c}, D_{*,c−k})`, as a function of the
    /// window unknowns. Requires both order `k − 1` unknowns in the window.
    pub(crate) fn next_order_matrix(&self, k: usize, c: usize) -> (HomComplex, SparseMatrix) {
        let src = self.map.source();
        let tgt = self.map.target();
        let hom = HomComplex::new(src.column(c).clone(), tgt.column(c - k).clone());
        let e = eps(c, k);
        let pre = self.homs[&(k - 1, c - 1)].precompose_matrix(src.horizontal(c).graded(), k as i64 - 1, &hom);
        let post = self.homs[&(k - 1, c)].postcompose_matrix(tgt.horizontal(c - k + 1).graded(), k as i64 - 1, &hom);
        let rows = hom.dim(k as i64 - 1);
        let mut columns = vec![SparseVec::new(); self.unknowns()];
        let (pa, _) = self.slot((k - 1, c - 1)).expect("slot");
        for (j, col) in pre.columns().iter().enumerate() {
            columns[pa + j] = col.scaled(&rat(e));
        }
        let (pb, _) = self.slot((k - 1, c)).expect("slot");
        for (j, col) in post.columns().iter().enumerate() {
            columns[pb + j] = columns[pb + j].sub(&col.scaled(&rat(e)));
        }
        (hom, SparseMatrix::from_columns(rows, columns))
    }
}

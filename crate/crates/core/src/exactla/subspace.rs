use super::matrix::SparseMatrix;
use super::rational::Q;
use super::reduce::{Insertion, Reducer};
use super::vector::SparseVec;
use crate::error::{dim_err, input_err, Result};

/// A linear subspace of `Q^ambient`, held as a list of independent columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: (0..ambient).map(SparseVec::unit).collect() }
    }

    /// Span of the given vectors; keeps the first independent subfamily.
    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut red = Reducer::new(ambient, false);
        let basis = vectors
            .into_iter()
            .filter(|v| {
                debug_assert!(v.max_index().map_or(true, |i| i < ambient));
                red.insert(v) == Insertion::Pivot
            })
            .collect();
        Subspace { ambient, basis }
    }

    /// Span of the coordinate vectors `e_i` for the listed indices.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Subspace { ambient, basis: indices.into_iter().map(SparseVec::unit).collect() }
    }

    pub fn column_space(a: &SparseMatrix) -> Self {
        Subspace::span(a.rows(), a.columns().iter().cloned())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.ambient, self.basis.clone())
    }

    fn reducer(&self) -> Reducer {
        let mut red = Reducer::new(self.ambient, true);
        for b in &self.basis {
            red.insert(b);
        }
        red
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reducer().contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        let red = self.reducer();
        other.basis.iter().all(|v| red.contains(v))
    }

    /// Coordinates of `v` in this subspace's basis, if `v` lies in it.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        self.reducer().express(v)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.ambient, self.basis.iter().chain(other.basis.iter()).cloned())
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x ∈ U ∩ W  ⇔  x = U a = W b; kernel of [U | -W] gives (a, b).
        let u = self.basis_matrix();
        let w = other.basis_matrix().neg();
        let stacked = SparseMatrix::hstack(&[&u, &w]).expect("same ambient");
        let (_, ker, _) = rank_kernel_image(&stacked);
        let n = self.dim();
        Subspace::span(
            self.ambient,
            ker.basis.iter().map(|k| u.mul_vec(&k.filter_map_indices(|i| (i < n).then_some(i)))),
        )
    }

    /// Image of this subspace under `a`.
    pub fn image_under(&self, a: &SparseMatrix) -> Subspace {
        Subspace::span(a.rows(), self.basis.iter().map(|v| a.mul_vec(v)))
    }
}

/// Exact rank, kernel and image of a matrix.
///
/// The image basis consists of the pivot columns of `a` itself; the kernel
/// basis comes from the dependencies found while reducing the columns in
/// order, so both are determined by the pivot order.
pub fn rank_kernel_image(a: &SparseMatrix) -> (usize, Subspace, Subspace) {
    let mut red = Reducer::new(a.rows(), true);
    let mut kernel = Vec::new();
    let mut image = Vec::new();
    for c in a.columns() {
        match red.insert(c) {
            Insertion::Pivot => image.push(c.clone()),
            Insertion::Dependent(rel) => kernel.push(rel),
        }
    }
    (red.rank(), Subspace { ambient: a.cols(), basis: kernel }, Subspace { ambient: a.rows(), basis: image })
}

pub fn rank(a: &SparseMatrix) -> usize {
    let mut red = Reducer::new(a.rows(), false);
    for c in a.columns() {
        red.insert(c);
    }
    red.rank()
}

pub fn kernel(a: &SparseMatrix) -> Subspace {
    rank_kernel_image(a).1
}

/// Reusable solver for `A x = b` with a fixed `A`.
#[derive(Clone, Debug)]
pub struct Solver {
    red: Reducer,
    cols: usize,
}

impl Solver {
    pub fn new(a: &SparseMatrix) -> Self {
        let mut red = Reducer::new(a.rows(), true);
        for c in a.columns() {
            red.insert(c);
        }
        Solver { red, cols: a.cols() }
    }

    pub fn rows(&self) -> usize {
        self.red.ambient()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.red.rank()
    }

    /// Canonical (pivot-determined) solution, or `None` if `b ∉ im A`.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        self.red.express(b)
    }

    pub fn in_image(&self, b: &SparseVec) -> bool {
        self.red.contains(b)
    }
}

/// Solves `A x = b` exactly. Returns `Ok(None)` when `b` is not in the image.
pub fn solve_linear(a: &SparseMatrix, b: &SparseVec) -> Result<Option<SparseVec>> {
    if b.max_index().map_or(false, |i| i >= a.rows()) {
        return dim_err(format!("right-hand side does not fit {} rows", a.rows()));
    }
    Ok(Solver::new(a).solve(b))
}

/// Dense-vector convenience wrapper around [`solve_linear`].
pub fn solve_linear_dense(a: &SparseMatrix, b: &[Q]) -> Result<Option<Vec<Q>>> {
    if b.len() != a.rows() {
        return dim_err(format!("right-hand side has {} entries, matrix has {} rows", b.len(), a.rows()));
    }
    Ok(solve_linear(a, &SparseVec::from_dense(b))?.map(|x| x.to_dense(a.cols())))
}

/// The quotient `W / U` of nested subspaces, with a lift basis and exact
/// projection onto quotient coordinates.
#[derive(Clone, Debug)]
pub struct Subquotient {
    numer: Subspace,
    denom: Subspace,
    lifts: Vec<SparseVec>,
    red: Reducer,
}

impl Subquotient {
    pub fn dim(&self) -> usize {
        self.lifts.len()
    }

    pub fn ambient(&self) -> usize {
        self.numer.ambient
    }

    /// Vectors of `W` whose classes form a basis of `W / U`.
    pub fn lifts(&self) -> &[SparseVec] {
        &self.lifts
    }

    pub fn numerator(&self) -> &Subspace {
        &self.numer
    }

    pub fn denominator(&self) -> &Subspace {
        &self.denom
    }

    /// Quotient coordinates of `v`; `None` if `v ∉ W`.
    pub fn project(&self, v: &SparseVec) -> Option<SparseVec> {
        let u = self.denom.dim();
        let c = self.red.express(v)?;
        Some(c.filter_map_indices(|i| i.checked_sub(u)))
    }

    /// True if `v ∈ U`.
    pub fn is_trivial(&self, v: &SparseVec) -> bool {
        self.project(v).map_or(false, |c| c.is_zero())
    }

    /// Matrix of the projection restricted to the given vectors (one column
    /// per vector). Fails if some vector is not in `W`.
    pub fn projection_matrix(&self, vectors: &[SparseVec]) -> Result<SparseMatrix> {
        let cols = vectors
            .iter()
            .map(|v| self.project(v).ok_or_else(|| crate::Error::Input("vector outside numerator".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrix::from_columns(self.dim(), cols))
    }

    /// Element of `W` representing the given quotient coordinates.
    pub fn lift(&self, coords: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in coords.iter() {
            out.axpy(a, &self.lifts[*i]);
        }
        out
    }
}

/// Computes `W / U`; requires `U ⊆ W`.
pub fn subquotient_basis(w: &Subspace, u: &Subspace) -> Result<Subquotient> {
    if w.ambient != u.ambient {
        return dim_err(format!("ambient {} vs {}", w.ambient, u.ambient));
    }
    let mut red = Reducer::new(w.ambient, false);
    for b in &u.basis {
        red.insert(b);
    }
    let mut lifts = Vec::new();
    for b in &w.basis {
        if red.insert(b) == Insertion::Pivot {
            lifts.push(b.clone());
        }
    }
    if red.rank() != w.dim() {
        return input_err("denominator is not contained in numerator");
    }
    let mut tracked = Reducer::new(w.ambient, true);
    for b in u.basis.iter().chain(lifts.iter()) {
        tracked.insert(b);
    }
    Ok(Subquotient { numer: w.clone(), denom: u.clone(), lifts, red: tracked })
}

use std::collections::HashMap;
use std::hash::Hash;

use crate::chain::ChainComplex;
use crate::error::{input_err, Error, Result};
use crate::exactla::{q, SparseMatrix, SparseVec};

/// A cyclic set truncated at degree `top`: cells are numbered per degree and
/// every structure map is stored as a table of cell indices.
#[derive(Clone, Debug)]
pub struct CyclicSetTrunc {
    top: usize,
    counts: Vec<usize>,
    faces: Vec<Vec<Vec<usize>>>,
    degeneracies: Vec<Vec<Vec<usize>>>,
    cyclic: Vec<Vec<usize>>,
    extra: Vec<Vec<usize>>,
}

/// The cyclic bar construction on the given tuples: `cells[n]` lists the
/// `(n + 1)`-tuples kept in degree `n`. Faces multiply neighbours
/// (`∂_n` multiplies last into first), degeneracies insert the unit after
/// position `j`, `t` rotates the last entry to the front, and the extra
/// degeneracy inserts the unit in front. Fails if the tuples are not closed
/// under these maps.
pub fn cyclic_bar<T: Clone + Eq + Hash>(
    top: usize,
    cells: &[Vec<Vec<T>>],
    mul: impl Fn(&T, &T) -> T,
    unit: &T,
) -> Result<CyclicSetTrunc> {
    let face = |n: usize, i: usize, g: &Vec<T>| {
        let mut h: Vec<T> = Vec::with_capacity(n);
        if i < n {
            h.extend_from_slice(&g[..i]);
            h.push(mul(&g[i], &g[i + 1]));
            h.extend_from_slice(&g[i + 2..]);
        } else {
            h.push(mul(&g[n], &g[0]));
            h.extend_from_slice(&g[1..n]);
        }
        h
    };
    let degeneracy = |_: usize, j: usize, g: &Vec<T>| {
        let mut h = g.clone();
        h.insert(j + 1, unit.clone());
        h
    };
    let cyclic = |n: usize, g: &Vec<T>| {
        let mut h = Vec::with_capacity(n + 1);
        h.push(g[n].clone());
        h.extend_from_slice(&g[..n]);
        h
    };
    CyclicSetTrunc::from_maps(top, cells, face, degeneracy, cyclic)
}

impl CyclicSetTrunc {
    /// Tabulates structure maps given on named cells: `face(n, i, x)` is
    /// `∂_i` on a degree `n` cell, `degeneracy(n, j, x)` is `s_j`, and
    /// `cyclic(n, x)` is `t_n`. The extra degeneracy is `t s_n`. Fails if a
    /// map leaves the listed cells.
    pub fn from_maps<C: Clone + Eq + Hash>(
        top: usize,
        cells: &[Vec<C>],
        face: impl Fn(usize, usize, &C) -> C,
        degeneracy: impl Fn(usize, usize, &C) -> C,
        cyclic: impl Fn(usize, &C) -> C,
    ) -> Result<Self> {
        if cells.len() != top + 1 {
            return input_err("need cell lists for degrees 0..=top");
        }
        let index: Vec<HashMap<&C, usize>> =
            cells.iter().map(|c| c.iter().enumerate().map(|(i, x)| (x, i)).collect()).collect();
        let look = |n: usize, x: &C| -> Result<usize> {
            index[n].get(x).copied().ok_or_else(|| Error::Input(format!("degree {n} is not closed under the structure maps")))
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=top {
            let fs = (0..=n)
                .map(|i| cells[n].iter().map(|g| look(n - 1, &face(n, i, g))).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            faces.push(fs);
        }
        let degeneracies = (0..top)
            .map(|n| {
                (0..=n)
                    .map(|j| cells[n].iter().map(|g| look(n + 1, &degeneracy(n, j, g))).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let cyclic = (0..=top)
            .map(|n| cells[n].iter().map(|g| look(n, &cyclic(n, g))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        let extra = (0..top)
            .map(|n| degeneracies[n][n].iter().map(|x| cyclic[n + 1][*x]).collect())
            .collect();
        let counts = cells.iter().map(Vec::len).collect();
        Ok(CyclicSetTrunc { top, counts, faces, degeneracies, cyclic, extra })
    }
}

/// Cells kept in each degree, sorted. Must be closed under all structure
/// maps (for example a union of components).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection(pub Vec<Vec<usize>>);

impl Selection {
    pub fn all(x: &CyclicSetTrunc) -> Self {
        Selection(x.counts.iter().map(|c| (0..*c).collect()).collect())
    }

    /// Cells whose label equals `value`.
    pub fn labelled(labels: &[Vec<usize>], value: usize) -> Self {
        Selection(
            labels
                .iter()
                .map(|l| l.iter().enumerate().filter(|(_, v)| **v == value).map(|(i, _)| i).collect())
                .collect(),
        )
    }

    pub fn dim(&self, n: usize) -> usize {
        self.0.get(n).map_or(0, Vec::len)
    }

    pub fn position(&self, n: usize, cell: usize) -> usize {
        self.0[n].binary_search(&cell).expect("selection is closed under the structure maps")
    }
}

/// The λ-complex `C_n / (1 − (−1)^n t)`: one basis vector per `t`-orbit that
/// survives (an orbit of size `m` dies when `n·m` is odd).
#[derive(Clone, Debug)]
pub struct LambdaComplex {
    pub complex: ChainComplex,
    /// `(orbit index, sign)` of every selected cell, `None` on dead orbits.
    pub projection: Vec<Vec<Option<(usize, i64)>>>,
    /// Per degree, the cell representing each basis element with sign `+1`.
    pub representatives: Vec<Vec<usize>>,
}

impl CyclicSetTrunc {
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn count(&self, n: usize) -> usize {
        self.counts[n]
    }

    pub fn face(&self, n: usize, i: usize, cell: usize) -> usize {
        self.faces[n][i][cell]
    }

    pub fn degeneracy(&self, n: usize, j: usize, cell: usize) -> usize {
        self.degeneracies[n][j][cell]
    }

    pub fn cyclic_op(&self, n: usize, cell: usize) -> usize {
        self.cyclic[n][cell]
    }

    /// Checks the simplicial identities, `t^{n+1} = 1` and the cyclic
    /// compatibilities `∂_i t = t ∂_{i−1}`, `∂_0 t = ∂_n`, `s_i t = t s_{i−1}`,
    /// `s_0 t = t² s_n`.
    pub fn verify(&self) -> Result<()> {
        let fail = |m: String| Err(Error::SimplicialIdentity(m));
        let f = |n: usize, i: usize, x: usize| self.faces[n][i][x];
        let s = |n: usize, j: usize, x: usize| self.degeneracies[n][j][x];
        let t = |n: usize, x: usize| self.cyclic[n][x];
        for n in 0..=self.top {
            for x in 0..self.counts[n] {
                let mut y = x;
                for _ in 0..=n {
                    y = t(n, y);
                }
                if y != x {
                    return fail(format!("t^{} ≠ 1 in degree {n}", n + 1));
                }
                if n >= 1 {
                    for i in 1..=n {
                        if f(n, i, t(n, x)) != t(n - 1, f(n, i - 1, x)) {
                            return fail(format!("∂_{i} t ≠ t ∂_{} in degree {n}", i - 1));
                        }
                    }
                    if f(n, 0, t(n, x)) != f(n, n, x) {
                        return fail(format!("∂_0 t ≠ ∂_n in degree {n}"));
                    }
                }
                if n >= 2 {
                    for j in 1..=n {
                        for i in 0..j {
                            if f(n - 1, i, f(n, j, x)) != f(n - 1, j - 1, f(n, i, x)) {
                                return fail(format!("∂_{i} ∂_{j} in degree {n}"));
                            }
                        }
                    }
                }
                if n < self.top {
                    let sx: Vec<usize> = (0..=n).map(|j| s(n, j, x)).collect();
                    for j in 0..=n {
                        for i in 0..=n + 1 {
                            let lhs = f(n + 1, i, sx[j]);
                            let ok = match i {
                                _ if i == j || i == j + 1 => lhs == x,
                                _ if i < j => lhs == s(n - 1, j - 1, f(n, i, x)),
                                _ => lhs == s(n - 1, j, f(n, i - 1, x)),
                            };
                            if !ok {
                                return fail(format!("∂_{i} s_{j} in degree {n}"));
                            }
                        }
                    }
                    if n + 1 < self.top {
                        for j in 0..=n {
                            for i in 0..=j {
                                if s(n + 1, i, sx[j]) != s(n + 1, j + 1, sx[i]) {
                                    return fail(format!("s_{i} s_{j} in degree {n}"));
                                }
                            }
                        }
                    }
                    for i in 1..=n {
                        if s(n, i, t(n, x)) != t(n + 1, s(n, i - 1, x)) {
                            return fail(format!("s_{i} t ≠ t s_{} in degree {n}", i - 1));
                        }
                    }
                    if s(n, 0, t(n, x)) != t(n + 1, t(n + 1, s(n, n, x))) {
                        return fail(format!("s_0 t ≠ t² s_n in degree {n}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// The chain complex `Σ (−1)^i ∂_i` on the selected cells in degrees
    /// `0..=top`. Its homology is exact in degrees below `top`.
    pub fn hochschild(&self, sel: &Selection) -> ChainComplex {
        let dims: Vec<usize> = (0..=self.top).map(|n| sel.dim(n)).collect();
        let diffs = (1..=self.top)
            .map(|n| {
                let cols = sel.0[n]
                    .iter()
                    .map(|x| {
                        SparseVec::from_pairs(
                            (0..=n)
                                .map(|i| (sel.position(n - 1, self.faces[n][i][*x]), q(if i % 2 == 0 { 1 } else { -1 })))
                                .collect(),
                        )
                    })
                    .collect();
                SparseMatrix::from_columns(dims[n - 1], cols)
            })
            .collect();
        ChainComplex::from_diffs(0, dims, diffs).expect("alternating face sums square to zero")
    }

    /// The λ-complex on the selected cells.
    pub fn lambda(&self, sel: &Selection) -> LambdaComplex {
        let mut projection = Vec::new();
        let mut dims = Vec::new();
        for n in 0..=self.top {
            let cells = &sel.0[n];
            let mut proj: Vec<Option<(usize, i64)>> = vec![None; cells.len()];
            let mut done = vec![false; cells.len()];
            let mut count = 0;
            for start in 0..cells.len() {
                if done[start] {
                    continue;
                }
                let mut orbit = vec![cells[start]];
                loop {
                    let y = self.cyclic[n][*orbit.last().expect("nonempty")];
                    if y == cells[start] {
                        break;
                    }
                    orbit.push(y);
                }
                let alive = !(n % 2 == 1 && orbit.len() % 2 == 1);
                for (j, y) in orbit.iter().enumerate() {
                    let p = sel.position(n, *y);
                    done[p] = true;
                    // [t^j x] = (−1)^{nj} [x].
                    proj[p] = alive.then_some((count, if (n * j) % 2 == 0 { 1 } else { -1 }));
                }
                if alive {
                    count += 1;
                }
            }
            dims.push(count);
            projection.push(proj);
        }
        let representatives: Vec<Vec<usize>> = (0..=self.top)
            .map(|n| {
                let mut reps: Vec<Option<usize>> = vec![None; dims[n]];
                for (p, pr) in projection[n].iter().enumerate() {
                    if let Some((o, 1)) = pr {
                        reps[*o].get_or_insert(sel.0[n][p]);
                    }
                }
                reps.into_iter().map(|x| x.expect("every orbit has a positive member")).collect()
            })
            .collect();
        let diffs = (1..=self.top)
            .map(|n| {
                let cols = representatives[n]
                    .iter()
                    .map(|&x| {
                        let mut v = SparseVec::new();
                        for i in 0..=n {
                            let y = sel.position(n - 1, self.faces[n][i][x]);
                            if let Some((o, sg)) = projection[n - 1][y] {
                                let e = if i % 2 == 0 { sg } else { -sg };
                                v.axpy(&q(e), &SparseVec::unit(o));
                            }
                        }
                        v
                    })
                    .collect();
                SparseMatrix::from_columns(dims[n - 1], cols)
            })
            .collect();
        let complex = ChainComplex::from_diffs(0, dims, diffs).expect("b descends to the λ-quotient");
        LambdaComplex { complex, projection, representatives }
    }

    /// `B = (1 − τ) s N: C_n → C_{n+1}` on the selected cells, with the signed
    /// rotation `τ = (−1)^n t`, `N = Σ_j τ^j` and the extra degeneracy `s`.
    pub fn connes_b(&self, sel: &Selection, n: usize) -> SparseMatrix {
        assert!(n < self.top, "B leaves the truncation");
        let sn = |k: usize| if k % 2 == 0 { 1 } else { -1 };
        let cols = sel.0[n]
            .iter()
            .map(|x| {
                let mut v = SparseVec::new();
                let mut y = *x;
                let mut sign_y = 1;
                for _ in 0..=n {
                    let z = self.extra[n][y];
                    v.axpy(&q(sign_y), &SparseVec::unit(sel.position(n + 1, z)));
                    let tz = self.cyclic[n + 1][z];
                    v.axpy(&q(-sign_y * sn(n + 1)), &SparseVec::unit(sel.position(n + 1, tz)));
                    y = self.cyclic[n][y];
                    sign_y *= sn(n);
                }
                v
            })
            .collect();
        SparseMatrix::from_columns(sel.dim(n + 1), cols)
    }
}

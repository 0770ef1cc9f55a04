use std::collections::BTreeMap;
use std::sync::Arc;

use num::ToPrimitive;

use crate::chain::{ChainComplex, ChainMap};
use crate::error::Result;
use crate::exactla::SparseMatrix;
use crate::groupcyc::{cyclic_bar, CyclicSetTrunc};
use crate::obstruct::HomotopySimplicialMap;
use crate::simpfilt::{alternating_sum, SimplicialChainObject};

use super::gamma::{abelianize, gamma_truncation, AbelianTrunc};
use super::lambda::LambdaWindow;
use super::window::{tuples_within, WindowParams};

type Vector = Vec<i64>;

fn add(a: &[i64], b: &[i64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Integer vectors of `Z^rank` with `ℓ¹` norm exactly `len`.
fn vectors_of_norm(rank: usize, len: usize) -> Vec<Vector> {
    if rank == 0 {
        return if len == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in -(len as i64)..=len as i64 {
        for mut rest in vectors_of_norm(rank - 1, len - first.unsigned_abs() as usize) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn apply(a: &SparseMatrix, v: &[i64]) -> Vector {
    let mut out = vec![0; a.rows()];
    for (i, j, x) in a.triplets() {
        out[i] += x.to_integer().to_i64().expect("small integer matrix") * v[j];
    }
    out
}

/// Sum of the last `k` entries of a tuple `(x, a_1, …, a_k)`.
fn bar_sum(c: &[Vector]) -> Vector {
    c[1..].iter().fold(vec![0; c[0].len()], |acc, a| add(&acc, a))
}

/// The centralizer-coordinate cyclic set `∐_x B(A, x)` of an abelian group:
/// cells `(x; a_1, …, a_k)`, faces of the nerve of `A` with `x` fixed, and
/// `t(x; a_1, …, a_k) = (x; x − Σa, a_1, …, a_{k−1})`.
fn centralizer_set(cells: &[Vec<Vec<Vector>>], top: usize) -> Result<CyclicSetTrunc> {
    let face = |k: usize, i: usize, c: &Vec<Vector>| {
        let mut h = c.clone();
        if i == 0 {
            h.remove(1);
        } else if i == k {
            h.remove(k);
        } else {
            let merged = add(&c[i], &c[i + 1]);
            h[i] = merged;
            h.remove(i + 1);
        }
        h
    };
    let degeneracy = |_: usize, j: usize, c: &Vec<Vector>| {
        let mut h = c.clone();
        h.insert(j + 1, vec![0; c[0].len()]);
        h
    };
    let cyclic = |k: usize, c: &Vec<Vector>| {
        let mut h = c.clone();
        if k > 0 {
            h.insert(1, sub(&c[0], &bar_sum(c)));
            h.pop();
        }
        h
    };
    CyclicSetTrunc::from_maps(top, cells, face, degeneracy, cyclic)
}

/// The abelianized analogue of the windowed pair: the D-side is the window of
/// the λ-complex of `Q[A_n]`, the C-side the λ-complex of the centralizer
/// coordinates, and the comparison map is `(x; a) ↦ (x − Σa, a)`.
#[derive(Clone, Debug)]
pub struct AbelianWindowPair {
    pub params: WindowParams,
    pub abelian: AbelianTrunc,
    pub c_object: SimplicialChainObject,
    pub d_object: SimplicialChainObject,
    pub map: HomotopySimplicialMap,
}

pub fn build_abelian_pair(params: WindowParams) -> Result<AbelianWindowPair> {
    let WindowParams { m, top, window, cyclic_top } = params;
    let a = abelianize(&gamma_truncation(m, top)?);
    let mut c_windows = Vec::new();
    let mut d_windows = Vec::new();
    for n in 0..=top {
        let r = a.rank(n);
        let vectors: Vec<Vec<Vector>> = (0..=window).map(|l| vectors_of_norm(r, l)).collect();
        let d_cells: Vec<Vec<Vec<Vector>>> = (0..=cyclic_top)
            .map(|k| {
                let mut c = tuples_within(k + 1, window, &vectors);
                c.sort();
                c
            })
            .collect();
        let c_cells: Vec<Vec<Vec<Vector>>> = d_cells
            .iter()
            .map(|cs| {
                let mut c: Vec<Vec<Vector>> = cs.iter().map(|g| to_centralizer(g)).collect();
                c.sort();
                c
            })
            .collect();
        let d_set = cyclic_bar(cyclic_top, &d_cells, |x, y| add(x, y), &vec![0; r])?;
        let c_set = centralizer_set(&c_cells, cyclic_top)?;
        c_set.verify()?;
        d_windows.push(LambdaWindow::new(d_cells, &d_set));
        c_windows.push(LambdaWindow::new(c_cells, &c_set));
    }
    let mut c_faces = vec![Vec::new()];
    let mut d_faces = vec![Vec::new()];
    for n in 1..=top {
        let mut cf = Vec::new();
        let mut df = Vec::new();
        for i in 0..=n {
            let f = a.face(n, i);
            let on_cell = |c: &Vec<Vector>| c.iter().map(|v| apply(f, v)).collect::<Vec<Vector>>();
            cf.push(c_windows[n].induced(&c_windows[n - 1], on_cell)?);
            df.push(d_windows[n].induced(&d_windows[n - 1], on_cell)?);
        }
        c_faces.push(cf);
        d_faces.push(df);
    }
    let phi: Vec<ChainMap> =
        (0..=top).map(|n| c_windows[n].induced(&d_windows[n], |c| from_centralizer(c))).collect::<Result<_>>()?;
    let objects = |ws: &[LambdaWindow<Vec<Vector>>]| ws.iter().map(|w| w.complex().clone()).collect::<Vec<Arc<ChainComplex>>>();
    let c_object = SimplicialChainObject::new(objects(&c_windows), c_faces, None)?;
    let d_object = SimplicialChainObject::new(objects(&d_windows), d_faces, None)?;
    let map = HomotopySimplicialMap::strict(alternating_sum(&c_object), alternating_sum(&d_object), phi)?;
    Ok(AbelianWindowPair { params, abelian: a, c_object, d_object, map })
}

/// `(g_0, …, g_k) ↦ (g_0 + … + g_k; g_1, …, g_k)`.
fn to_centralizer(g: &[Vector]) -> Vec<Vector> {
    let x = g.iter().skip(1).fold(g[0].clone(), |acc, v| add(&acc, v));
    std::iter::once(x).chain(g[1..].iter().cloned()).collect()
}

/// `(x; a_1, …, a_k) ↦ (x − Σa, a_1, …, a_k)`.
fn from_centralizer(c: &[Vector]) -> Vec<Vector> {
    std::iter::once(sub(&c[0], &bar_sum(c))).chain(c[1..].iter().cloned()).collect()
}

impl AbelianWindowPair {
    /// The induced map of windowed total complexes.
    pub fn tot_map(&self) -> Result<ChainMap> {
        self.map.assemble(0, self.params.top, &BTreeMap::new())
    }

    /// Whether `φ ∂_i = ∂_i φ` holds as an exact matrix identity for every
    /// face and level.
    pub fn squares_commute(&self) -> bool {
        (1..=self.params.top).all(|n| {
            (0..=n).all(|i| {
                let left = self.c_object.face(n, i).then(self.map.f(n - 1)).expect("composable");
                let right = self.map.f(n).then(self.d_object.face(n, i)).expect("composable");
                left == right
            })
        })
    }
}


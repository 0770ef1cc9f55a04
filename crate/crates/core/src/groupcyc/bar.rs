use std::collections::BTreeMap;
use std::sync::Arc;

use crate::chain::{ChainComplex, ChainMap};
use crate::exactla::{q, SparseMatrix, SparseVec};

use super::cyclic::{cyclic_bar, CyclicSetTrunc, LambdaComplex, Selection};
use super::finite::FiniteGroup;

/// `N^cy(G)` truncated at degree `top`, with each cell labelled by the
/// conjugacy class of the product of its entries.
#[derive(Clone, Debug)]
pub struct Ncy {
    pub group: FiniteGroup,
    pub set: CyclicSetTrunc,
    pub tuples: Vec<Vec<Vec<usize>>>,
    pub labels: Vec<Vec<usize>>,
}

fn all_tuples(order: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..order).map(move |g| {
                    let mut u = t.clone();
                    u.push(g);
                    u
                })
            })
            .collect();
    }
    out
}

pub fn ncy_truncated(g: &FiniteGroup, top: usize) -> Ncy {
    let tuples: Vec<Vec<Vec<usize>>> = (0..=top).map(|n| all_tuples(g.order(), n + 1)).collect();
    let set = cyclic_bar(top, &tuples, |a, b| g.mul(*a, *b), &g.identity()).expect("full tuples are closed");
    let cls = g.class_index();
    let labels = tuples.iter().map(|ts| ts.iter().map(|t| cls[g.product(t)]).collect()).collect();
    Ncy { group: g.clone(), set, tuples, labels }
}

impl Ncy {
    pub fn component(&self, class: usize) -> Selection {
        Selection::labelled(&self.labels, class)
    }

    pub fn hochschild(&self) -> ChainComplex {
        self.set.hochschild(&Selection::all(&self.set))
    }

    pub fn lambda(&self) -> LambdaComplex {
        self.set.lambda(&Selection::all(&self.set))
    }

    fn cell_index(&self, t: &[usize]) -> usize {
        // Tuples are enumerated lexicographically with the first entry most significant.
        t.iter().fold(0, |acc, x| acc * self.group.order() + x)
    }

    /// The chain map on a component induced by conjugating every entry by `h`.
    pub fn conjugation_map(&self, class: usize, h: usize) -> ChainMap {
        let sel = self.component(class);
        let c = Arc::new(self.set.hochschild(&sel));
        let g = &self.group;
        let comps = (0..=self.set.top())
            .map(|n| {
                let cols = sel.0[n]
                    .iter()
                    .map(|x| {
                        let t: Vec<usize> = self.tuples[n][*x].iter().map(|a| g.conj(*a, h)).collect();
                        let y = self.cell_index(&t);
                        SparseVec::unit(sel.0[n].binary_search(&y).expect("conjugation preserves components"))
                    })
                    .collect();
                (n as i64, SparseMatrix::from_columns(sel.dim(n), cols))
            })
            .collect();
        ChainMap::new(c.clone(), c, comps).expect("conjugation is simplicial")
    }
}

/// Hochschild, cyclic and Connes data of `Q[G]` in degrees below `top`.
#[derive(Clone, Debug)]
pub struct CyclicHomology {
    pub ncy: Ncy,
    pub hochschild: ChainComplex,
    pub lambda: LambdaComplex,
    pub hh: Vec<usize>,
    pub hc: Vec<usize>,
}

impl CyclicHomology {
    /// `B: C_n → C_{n+1}` on all cells.
    pub fn connes_b(&self, n: usize) -> SparseMatrix {
        self.ncy.set.connes_b(&Selection::all(&self.ncy.set), n)
    }
}

/// `HH_n` and `HC_n` of `Q[G]` for `n < top`.
pub fn cyclic_homology(g: &FiniteGroup, top: usize) -> CyclicHomology {
    let ncy = ncy_truncated(g, top);
    let hochschild = ncy.hochschild();
    let lambda = ncy.lambda();
    // Both complexes split over conjugacy classes; ranks are computed blockwise.
    let mut hh = vec![0; top];
    let mut hc = vec![0; top];
    for class in 0..g.conjugacy_classes().len() {
        let sel = ncy.component(class);
        let hcomp = ncy.set.hochschild(&sel);
        let lcomp = ncy.set.lambda(&sel).complex;
        for n in 0..top {
            hh[n] += hcomp.betti(n as i64);
            hc[n] += lcomp.betti(n as i64);
        }
    }
    CyclicHomology { ncy, hochschild, lambda, hh, hc }
}

/// Normalized-free nerve chains of a subgroup `H ⊆ G` (cells `[h_1, …, h_n]`,
/// `∂_0` drops `h_1`, `∂_i` multiplies `h_i h_{i+1}`, `∂_n` drops `h_n`), in
/// degrees `0..=top`, together with the cell lists.
pub fn nerve(g: &FiniteGroup, subgroup: &[usize], top: usize) -> (ChainComplex, Vec<Vec<Vec<usize>>>) {
    let cells: Vec<Vec<Vec<usize>>> = (0..=top)
        .map(|n| all_tuples(subgroup.len(), n).into_iter().map(|t| t.iter().map(|i| subgroup[*i]).collect()).collect())
        .collect();
    let index: Vec<BTreeMap<&Vec<usize>, usize>> =
        cells.iter().map(|c| c.iter().enumerate().map(|(i, x)| (x, i)).collect()).collect();
    let dims: Vec<usize> = cells.iter().map(Vec::len).collect();
    let diffs = (1..=top)
        .map(|n| {
            let cols = cells[n]
                .iter()
                .map(|c| {
                    let mut v = SparseVec::new();
                    for i in 0..=n {
                        let f: Vec<usize> = if i == 0 {
                            c[1..].to_vec()
                        } else if i == n {
                            c[..n - 1].to_vec()
                        } else {
                            let mut f = c[..i - 1].to_vec();
                            f.push(g.mul(c[i - 1], c[i]));
                            f.extend_from_slice(&c[i + 1..]);
                            f
                        };
                        v.axpy(&q(if i % 2 == 0 { 1 } else { -1 }), &SparseVec::unit(index[n - 1][&f]));
                    }
                    v
                })
                .collect();
            SparseMatrix::from_columns(dims[n - 1], cols)
        })
        .collect();
    (ChainComplex::from_diffs(0, dims, diffs).expect("nerve chains"), cells)
}

/// `(g_0, …, g_n) ↦ (g_1⋯g_n g_0; [g_1, …, g_n])`.
pub fn ncy_to_pair(g: &FiniteGroup, cell: &[usize]) -> (usize, Vec<usize>) {
    let rest = cell[1..].to_vec();
    (g.mul(g.product(&rest), cell[0]), rest)
}

/// Inverse of [`ncy_to_pair`]: `g_0 = (g_1⋯g_n)⁻¹ x`.
pub fn pair_to_ncy(g: &FiniteGroup, x: usize, bar: &[usize]) -> Vec<usize> {
    let mut out = vec![g.mul(g.inv(g.product(bar)), x)];
    out.extend_from_slice(bar);
    out
}

/// The maps comparing the nerve of the centralizer of `y` with the component
/// of `y` in `N^cy(G)`.
#[derive(Clone, Debug)]
pub struct BurgheleaMaps {
    pub y: usize,
    pub class: usize,
    pub centralizer: Vec<usize>,
    /// `(g, g⁻¹ y g)` for one representative `g` (the least element) of each
    /// right coset `C_y g`.
    pub orbit_map: Vec<(usize, usize)>,
    /// Per degree, the cell of `N^cy(G)` hit by each nerve cell.
    pub inclusion: Vec<Vec<usize>>,
    /// The induced chain map from nerve chains to the Hochschild chains of
    /// the component.
    pub chain_map: ChainMap,
}

pub fn burghelea_maps(ncy: &Ncy, y: usize) -> BurgheleaMaps {
    let g = &ncy.group;
    let centralizer = g.centralizer(y);
    let mut orbit_map = Vec::new();
    let mut covered = vec![false; g.order()];
    for r in 0..g.order() {
        if covered[r] {
            continue;
        }
        for c in &centralizer {
            covered[g.mul(*c, r)] = true;
        }
        orbit_map.push((r, g.conj(y, r)));
    }
    let top = ncy.set.top();
    let (bc, cells) = nerve(g, &centralizer, top);
    let class = g.class_index()[y];
    let sel = ncy.component(class);
    let inclusion: Vec<Vec<usize>> = cells
        .iter()
        .map(|cs| cs.iter().map(|c| ncy.cell_index(&pair_to_ncy(g, y, c))).collect())
        .collect();
    let target = Arc::new(ncy.set.hochschild(&sel));
    let comps = inclusion
        .iter()
        .enumerate()
        .map(|(n, inc)| {
            let cols = inc
                .iter()
                .map(|x| SparseVec::unit(sel.0[n].binary_search(x).expect("image lies in the component of y")))
                .collect();
            (n as i64, SparseMatrix::from_columns(sel.dim(n), cols))
        })
        .collect();
    let chain_map = ChainMap::new(Arc::new(bc), target, comps).expect("the inclusion is simplicial");
    BurgheleaMaps { y, class, centralizer, orbit_map, inclusion, chain_map }
}

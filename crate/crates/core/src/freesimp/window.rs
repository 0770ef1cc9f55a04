use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::chain::{ChainComplex, ChainMap, GradedMap};
use crate::error::{input_err, Error, Result};
use crate::exactla::{SparseMatrix, SparseVec};
use crate::groupcyc::{cyclic_bar, wtcc_small_model, words_of_length, ConjClassRep, FreeWord};
use crate::obstruct::{solve_stage1, HomotopySimplicialMap};
use crate::simpfilt::{alternating_sum, Bicomplex, SimplicialChainObject};
use crate::specseq::class_on_page;

use super::gamma::{gamma_truncation, FreeSimplicialGroupTrunc};
use super::lambda::LambdaWindow;

/// Sizes of a windowed example.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowParams {
    pub m: usize,
    /// Last simplicial degree.
    pub top: usize,
    /// Maximal total letter count of a cell.
    pub window: usize,
    /// Last cyclic degree kept in each column (1 or 2).
    pub cyclic_top: usize,
}

impl WindowParams {
    pub fn new(m: usize, top: usize, window: usize) -> Self {
        WindowParams { m, top, window, cyclic_top: 2 }
    }
}

/// The letter-count window of the λ-complex of `Q[Γ_n]`.
#[derive(Clone, Debug)]
pub struct CyclicWindow {
    pub rank: usize,
    pub window: LambdaWindow<Vec<FreeWord>>,
}

/// All tuples of `entries` items, item `i` drawn from `items[len_i]`, with
/// `Σ len_i ≤ budget`.
pub(crate) fn tuples_within<T: Clone>(entries: usize, budget: usize, items: &[Vec<T>]) -> Vec<Vec<T>> {
    if entries == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for len in 0..=budget.min(items.len() - 1) {
        for w in &items[len] {
            for mut rest in tuples_within(entries - 1, budget - len, items) {
                rest.insert(0, w.clone());
                out.push(rest);
            }
        }
    }
    out
}

impl CyclicWindow {
    pub fn new(rank: usize, window: usize, cyclic_top: usize) -> Result<Self> {
        let words: Vec<Vec<FreeWord>> = (0..=window).map(|l| words_of_length(rank, l)).collect();
        let mut cells: Vec<Vec<Vec<FreeWord>>> =
            (0..=cyclic_top).map(|k| tuples_within(k + 1, window, &words)).collect();
        for c in &mut cells {
            c.sort();
        }
        let set = cyclic_bar(cyclic_top, &cells, FreeWord::mul, &FreeWord::identity(rank))?;
        Ok(CyclicWindow { rank, window: LambdaWindow::new(cells, &set) })
    }

    pub fn complex(&self) -> &Arc<ChainComplex> {
        self.window.complex()
    }

    /// Class of a cell in the λ-complex, as a vector.
    pub fn class_of(&self, cell: &[FreeWord]) -> SparseVec {
        self.window.class_of(cell.len() - 1, &cell.to_vec()).expect("cell lies in the window")
    }
}

/// The small-model column for `Γ_n`: the point and the nontrivial classes in
/// degree 0, `H_1` of the classifying space in degree 1, `u` in degree 2.
#[derive(Clone, Debug)]
pub struct SmallColumn {
    pub rank: usize,
    pub classes: Vec<ConjClassRep>,
    pub position: HashMap<FreeWord, usize>,
    pub complex: Arc<ChainComplex>,
}

impl SmallColumn {
    fn new(rank: usize, window: usize, cyclic_top: usize) -> Self {
        let classes = crate::groupcyc::classes_up_to(rank, window);
        let position = classes.iter().enumerate().map(|(i, c)| (c.rep.clone(), i + 1)).collect();
        let complex = Arc::new(wtcc_small_model(&classes, rank, cyclic_top));
        SmallColumn { rank, classes, position, complex }
    }

    /// Basis index in degree 0 of the class of `w` (0 for the identity).
    fn class_index(&self, w: &FreeWord) -> usize {
        if w.is_identity() {
            0
        } else {
            self.position[&w.canonical().0]
        }
    }
}

/// The C-window and D-window of the example, the degreewise comparison map
/// with its stage-1 witnesses, and the window parameters.
#[derive(Clone, Debug)]
pub struct WindowedBicomplexPair {
    pub params: WindowParams,
    pub gamma: FreeSimplicialGroupTrunc,
    pub c_columns: Vec<SmallColumn>,
    pub d_columns: Vec<CyclicWindow>,
    pub c_object: SimplicialChainObject,
    pub d_object: SimplicialChainObject,
    pub map: HomotopySimplicialMap,
    /// `face_witnesses[n][i]` is the degree `+1` map `s` with
    /// `φ ∂_i − ∂_i φ = d s + s d` on column `n`.
    pub face_witnesses: Vec<Vec<GradedMap>>,
}

fn c_face(g: &FreeSimplicialGroupTrunc, src: &SmallColumn, dst: &SmallColumn, n: usize, i: usize, cyclic_top: usize) -> Result<ChainMap> {
    let mut comps = BTreeMap::new();
    for k in 0..=cyclic_top {
        let cols: Vec<SparseVec> = if k == 0 {
            std::iter::once(SparseVec::unit(0))
                .chain(src.classes.iter().map(|cl| SparseVec::unit(dst.class_index(&g.face(n, i, &cl.rep)))))
                .collect()
        } else if k % 2 == 0 {
            vec![SparseVec::unit(0)]
        } else {
            (0..src.rank).map(|j| g.face_on_generator(n, i, j).map_or_else(SparseVec::new, SparseVec::unit)).collect()
        };
        comps.insert(k as i64, SparseMatrix::from_columns(dst.complex.dim(k as i64), cols));
    }
    ChainMap::new(src.complex.clone(), dst.complex.clone(), comps)
}

fn phi_column(small: &SmallColumn, win: &CyclicWindow, cyclic_top: usize) -> Result<ChainMap> {
    let r = small.rank;
    let one = FreeWord::identity(r);
    let mut comps = BTreeMap::new();
    for k in 0..=cyclic_top {
        let cols: Vec<SparseVec> = if k == 0 {
            std::iter::once(win.class_of(&[one.clone()]))
                .chain(small.classes.iter().map(|cl| win.class_of(&[cl.rep.clone()])))
                .collect()
        } else if k % 2 == 0 {
            vec![win.class_of(&vec![one.clone(); k + 1])]
        } else {
            (0..r)
                .map(|j| {
                    let x = FreeWord::generator(r, j);
                    win.class_of(&[x.inverse(), x])
                })
                .collect()
        };
        comps.insert(k as i64, SparseMatrix::from_columns(win.complex().dim(k as i64), cols));
    }
    ChainMap::new(small.complex.clone(), win.complex().clone(), comps)
}

/// `s` with `φ ∂_i − ∂_i φ = d s` on the class generators: `y = ∂_i x` is
/// moved to its canonical representative `y^h` by the cell `(h⁻¹y, h)`.
fn face_witness(g: &FreeSimplicialGroupTrunc, src: &SmallColumn, win: &CyclicWindow, n: usize, i: usize) -> GradedMap {
    let dims = src.complex.dim(0);
    let cols: Vec<SparseVec> = std::iter::once(SparseVec::new())
        .chain(src.classes.iter().map(|cl| {
            let y = g.face(n, i, &cl.rep);
            if y.is_identity() {
                return SparseVec::new();
            }
            let (_, h) = y.canonical();
            win.class_of(&[h.inverse().mul(&y), h])
        }))
        .collect();
    debug_assert_eq!(cols.len(), dims);
    let mut comps = BTreeMap::new();
    comps.insert(0, SparseMatrix::from_columns(win.complex().dim(1), cols));
    GradedMap::new(src.complex.clone(), win.complex().clone(), 1, comps)
        .expect("witness shapes")
}

/// Builds the windowed pair for `Γ(m)` in simplicial degrees `0..=N`.
pub fn build_example_bicomplexes(params: WindowParams) -> Result<WindowedBicomplexPair> {
    let WindowParams { m, top, window, cyclic_top } = params;
    if !(1..=2).contains(&cyclic_top) {
        return input_err("the cyclic truncation must be 1 or 2");
    }
    if window < 2 {
        return Err(Error::Precondition(format!(
            "window {window} is too small to contain the tracked class, which needs 2 letters"
        )));
    }
    let g = gamma_truncation(m, top)?;
    let c_columns: Vec<SmallColumn> = (0..=top).map(|n| SmallColumn::new(g.rank(n), window, cyclic_top)).collect();
    let d_columns: Vec<CyclicWindow> =
        (0..=top).map(|n| CyclicWindow::new(g.rank(n), window, cyclic_top)).collect::<Result<_>>()?;
    let mut c_faces = vec![Vec::new()];
    let mut d_faces = vec![Vec::new()];
    for n in 1..=top {
        let mut cf = Vec::new();
        let mut df = Vec::new();
        for i in 0..=n {
            cf.push(c_face(&g, &c_columns[n], &c_columns[n - 1], n, i, cyclic_top)?);
            df.push(d_columns[n].window.induced(&d_columns[n - 1].window, |c: &Vec<FreeWord>| {
                c.iter().map(|w| g.face(n, i, w)).collect()
            })?);
        }
        c_faces.push(cf);
        d_faces.push(df);
    }
    let c_obj: Vec<Arc<ChainComplex>> = c_columns.iter().map(|c| c.complex.clone()).collect();
    let d_obj: Vec<Arc<ChainComplex>> = d_columns.iter().map(|d| d.complex().clone()).collect();
    let phi: Vec<ChainMap> =
        (0..=top).map(|n| phi_column(&c_columns[n], &d_columns[n], cyclic_top)).collect::<Result<_>>()?;
    let face_witnesses: Vec<Vec<GradedMap>> = (0..=top)
        .map(|n| if n == 0 { Vec::new() } else { (0..=n).map(|i| face_witness(&g, &c_columns[n], &d_columns[n - 1], n, i)).collect() })
        .collect();
    let c_object = SimplicialChainObject::new(c_obj, c_faces, None)?;
    let d_object = SimplicialChainObject::new(d_obj, d_faces, None)?;
    let source = alternating_sum(&c_object);
    let target = alternating_sum(&d_object);
    let witnesses = (1..=top)
        .map(|n| {
            let mut acc = GradedMap::zero(source.column(n).clone(), target.column(n - 1).clone(), 1);
            for (i, s) in face_witnesses[n].iter().enumerate() {
                acc = if i % 2 == 0 { acc.add(s) } else { acc.sub(s) }?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let map = HomotopySimplicialMap::new(source, target, phi, witnesses)?;
    Ok(WindowedBicomplexPair { params, gamma: g, c_columns, d_columns, c_object, d_object, map, face_witnesses })
}

/// Where the tracked class sits in the column-filtration spectral sequence:
/// whether it is nonzero on each page, and the page and source cell of the
/// differential that kills it.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ClassFate {
    pub cell: (i64, i64),
    /// `alive[r − 1]` for pages `1..=r_max`.
    pub alive: Vec<bool>,
    pub killed_on_page: Option<usize>,
    pub killed_from: Option<(i64, i64)>,
}

impl ClassFate {
    pub fn survives_to(&self, r: usize) -> bool {
        self.alive.get(r - 1).copied().unwrap_or(false)
    }
}

/// Follows a cycle of column `column`, internal degree `internal`, given by
/// `vector` in that column, through pages `1..=r_max`.
pub fn track_class(b: &Bicomplex, column: usize, internal: i64, vector: &SparseVec, r_max: usize) -> Result<ClassFate> {
    let (p, q) = (column as i64, internal);
    let filt = b.totalize();
    let v = vector.shifted(b.tot_offsets(p + q)[column]);
    let mut alive = Vec::new();
    for r in 1..=r_max {
        match class_on_page(&filt, r, p, q, &v) {
            Some(x) => alive.push(!x.is_zero()),
            None => return Err(Error::Precondition(format!("the tracked class does not survive to page {r}"))),
        }
    }
    let killed_on_page = alive.windows(2).position(|w| w[0] && !w[1]).map(|i| i + 1);
    let killed_from = killed_on_page.map(|r| (p + r as i64, q - r as i64 + 1));
    Ok(ClassFate { cell: (p, q), alive, killed_on_page, killed_from })
}

impl WindowedBicomplexPair {
    /// Fate of the tracked class in the C-window and in the D-window.
    pub fn tracked_fates(&self, r_max: usize) -> Result<(ClassFate, ClassFate)> {
        let n = self.params.m - 1;
        let c = track_class(self.map.source(), n, 1, &SparseVec::unit(0), r_max)?;
        let iota = FreeWord::generator(self.d_columns[n].rank, 0);
        let v = self.d_columns[n].class_of(&[iota.inverse(), iota]);
        let d = track_class(self.map.target(), n, 1, &v, r_max)?;
        Ok((c, d))
    }

    /// Checks every per-face stage-1 witness and returns the number of faces
    /// that commute strictly.
    pub fn check_face_witnesses(&self) -> Result<usize> {
        let mut strict = 0;
        for n in 1..=self.params.top {
            for i in 0..=n {
                let fc = self.c_object.face(n, i);
                let fd = self.d_object.face(n, i);
                let left = fc.then(self.map.f(n - 1))?;
                let right = self.map.f(n).then(fd)?;
                crate::chain::ChainHomotopy::new(left.clone(), right.clone(), self.face_witnesses[n][i].clone())?;
                if left == right {
                    strict += 1;
                }
                if solve_stage1(self.map.f(n), self.map.f(n - 1), fc, fd)?.is_none() {
                    return Err(Error::Precondition(format!("face {i} at level {n} has no stage-1 witness")));
                }
            }
        }
        Ok(strict)
    }
}

/// The verdicts at one window size.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct WindowVerdict {
    pub window: usize,
    pub c_fate: ClassFate,
    pub d_fate: ClassFate,
}

impl WindowVerdict {
    /// The class survives to `E³` on the C-side and dies by `d²` on the D-side.
    pub fn separates(&self) -> bool {
        self.c_fate.survives_to(3) && self.d_fate.survives_to(2) && self.d_fate.killed_on_page == Some(2)
    }
}

pub fn window_verdict(m: usize, top: usize, window: usize) -> Result<WindowVerdict> {
    let pair = build_example_bicomplexes(WindowParams::new(m, top, window))?;
    let (c_fate, d_fate) = pair.tracked_fates(3)?;
    Ok(WindowVerdict { window, c_fate, d_fate })
}

/// The smallest window in `2..=max_window` whose verdicts separate the two
/// sides, with the verdicts of every window tried.
pub fn minimal_window(m: usize, top: usize, max_window: usize) -> Result<(Option<usize>, Vec<WindowVerdict>)> {
    let mut tried = Vec::new();
    for window in 2..=max_window {
        let v = window_verdict(m, top, window)?;
        let hit = v.separates();
        tried.push(v);
        if hit {
            return Ok((Some(window), tried));
        }
    }
    Ok((None, tried))
}

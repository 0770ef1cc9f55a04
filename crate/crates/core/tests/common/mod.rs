//! Random and planted inputs shared by the integration tests.
//!
//! Planted bicomplexes are direct sums of small pieces whose spectral
//! sequence is known by construction, written in a random basis: every
//! bigraded cell is conjugated by a random product of unit lower and upper
//! triangular integer matrices.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use simptot::chain::{ChainComplex, ChainMap, GradedMap};
use simptot::exactla::{q, solve_linear, SparseMatrix, SparseVec, Q};
use simptot::obstruct::HomotopySimplicialMap;
use simptot::simpfilt::Bicomplex;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn m(rows: &[&[i64]]) -> SparseMatrix {
    SparseMatrix::from_rows_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

pub fn single(degree: i64) -> Arc<ChainComplex> {
    Arc::new(ChainComplex::concentrated(degree, 1))
}

pub fn chain(s: &Arc<ChainComplex>, t: &Arc<ChainComplex>, comps: Vec<(i64, SparseMatrix)>) -> ChainMap {
    ChainMap::new(s.clone(), t.clone(), comps.into_iter().collect()).unwrap()
}

/// A random unit lower triangular matrix and its inverse.
fn unit_lower(n: usize, rng: &mut ChaCha8Rng) -> (Vec<Vec<Q>>, Vec<Vec<Q>>) {
    let mut l = vec![vec![q(0); n]; n];
    for i in 0..n {
        l[i][i] = q(1);
        for j in 0..i {
            l[i][j] = q(rng.gen_range(-2..=2));
        }
    }
    // Forward substitution, one column of the inverse at a time.
    let mut inv = vec![vec![q(0); n]; n];
    for c in 0..n {
        for i in 0..n {
            let mut x = if i == c { q(1) } else { q(0) };
            for j in 0..i {
                x -= &l[i][j] * &inv[j][c];
            }
            inv[i][c] = x;
        }
    }
    (l, inv)
}

fn dense(a: &[Vec<Q>]) -> SparseMatrix {
    let n = a.len();
    let t = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| (i, j, a[i][j].clone()));
    SparseMatrix::from_triplets(n, n, t).unwrap()
}

/// A random invertible matrix `P` with its inverse.
pub fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> (SparseMatrix, SparseMatrix) {
    let (l1, l1i) = unit_lower(n, rng);
    let (l2, l2i) = unit_lower(n, rng);
    let p = dense(&l1).compose(&dense(&l2).transpose());
    let pinv = dense(&l2i).transpose().compose(&dense(&l1i));
    (p, pinv)
}

/// A summand of a planted bicomplex, placed by column `p` and internal
/// degree `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    /// One generator that survives to `E_∞`.
    Point { p: usize, q: i64 },
    /// `a ↦ b` inside one column; gone on `E_1`.
    Vertical { p: usize, q: i64 },
    /// A zig-zag from `(p, q)` to `(p − r, q + r − 1)`: both ends live on
    /// `E_1, …, E_r` and `d_r` connects them.
    Staircase { p: usize, q: i64, r: usize },
}

#[derive(Clone, Debug)]
pub struct Planted {
    pub top: usize,
    pub pieces: Vec<Piece>,
    /// Generators of each cell, as `(piece, role)`.
    pub cells: BTreeMap<(usize, i64), Vec<(usize, usize)>>,
    /// Change of basis `P` and `P⁻¹` per cell.
    pub bases: BTreeMap<(usize, i64), (SparseMatrix, SparseMatrix)>,
    /// Coefficients of each piece's vertical then horizontal arrows.
    pub coefficients: Vec<Vec<i64>>,
    pub bicomplex: Bicomplex,
}

/// Generators of one piece as `(role, cell)`, followed by its structure maps
/// as `(source role, target role, coefficient)` for vertical and horizontal
/// maps.
type PieceShape = (Vec<(usize, (usize, i64))>, Vec<(usize, usize)>, Vec<(usize, usize)>);

fn shape(piece: &Piece) -> PieceShape {
    match *piece {
        Piece::Point { p, q } => (vec![(0, (p, q))], vec![], vec![]),
        Piece::Vertical { p, q } => (vec![(0, (p, q)), (1, (p, q - 1))], vec![(0, 1)], vec![]),
        Piece::Staircase { p, q, r } => {
            // Roles: 0 = x at (p, q); 2i − 1 = u_i and 2i = w_i for i < r;
            // 2r − 1 = z at (p − r, q + r − 1).
            let mut gens = vec![(0, (p, q))];
            let mut vertical = Vec::new();
            let mut horizontal = vec![(0, 1)];
            for i in 1..r {
                gens.push((2 * i - 1, (p - i, q + i as i64 - 1)));
                gens.push((2 * i, (p - i, q + i as i64)));
                vertical.push((2 * i, 2 * i - 1));
                horizontal.push((2 * i, 2 * i + 1));
            }
            gens.push((2 * r - 1, (p - r, q + r as i64 - 1)));
            (gens, vertical, horizontal)
        }
    }
}

fn nonzero(rng: &mut ChaCha8Rng) -> i64 {
    let x = rng.gen_range(1..=2);
    if rng.gen_bool(0.5) {
        x
    } else {
        -x
    }
}

pub fn random_pieces(top: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Piece> {
    (0..count)
        .map(|_| {
            let p = rng.gen_range(0..=top);
            let q = rng.gen_range(0..=2);
            match rng.gen_range(0..3) {
                0 => Piece::Point { p, q },
                1 => Piece::Vertical { p, q: q + 1 },
                _ if p == 0 => Piece::Point { p, q },
                _ => Piece::Staircase { p, q, r: rng.gen_range(1..=p) },
            }
        })
        .collect()
}

/// Builds the bicomplex of `pieces` in a random basis.
pub fn planted(top: usize, pieces: Vec<Piece>, rng: &mut ChaCha8Rng) -> Planted {
    let coefficients = pieces
        .iter()
        .map(|p| {
            let (_, v, h) = shape(p);
            (0..v.len() + h.len()).map(|_| nonzero(rng)).collect()
        })
        .collect();
    planted_with(top, pieces, coefficients, rng)
}

/// The pieces of `source` with index in `kept`, with the same coefficients
/// and a fresh random basis.
pub fn sub_planted(source: &Planted, kept: &[usize], rng: &mut ChaCha8Rng) -> Planted {
    let pieces = kept.iter().map(|k| source.pieces[*k]).collect();
    let coefficients = kept.iter().map(|k| source.coefficients[*k].clone()).collect();
    planted_with(source.top, pieces, coefficients, rng)
}

fn planted_with(top: usize, pieces: Vec<Piece>, coefficients: Vec<Vec<i64>>, rng: &mut ChaCha8Rng) -> Planted {
    let mut cells: BTreeMap<(usize, i64), Vec<(usize, usize)>> = BTreeMap::new();
    for p in 0..=top {
        cells.insert((p, 0), Vec::new());
    }
    let shapes: Vec<PieceShape> = pieces.iter().map(shape).collect();
    for (k, (gens, _, _)) in shapes.iter().enumerate() {
        for (role, cell) in gens {
            cells.entry(*cell).or_default().push((k, *role));
        }
    }
    let index = |cell: &(usize, i64), gen: (usize, usize)| cells[cell].iter().position(|g| *g == gen).unwrap();
    let cell_of = |k: usize, role: usize| shapes[k].0.iter().find(|(r, _)| *r == role).unwrap().1;
    let mut bases = BTreeMap::new();
    for (cell, gens) in &cells {
        bases.insert(*cell, random_invertible(gens.len(), rng));
    }
    let dim = |cell: &(usize, i64)| cells.get(cell).map_or(0, Vec::len);
    // Raw vertical and horizontal maps keyed by source cell.
    let mut vertical: BTreeMap<(usize, i64), Vec<(usize, usize, Q)>> = BTreeMap::new();
    let mut horizontal: BTreeMap<(usize, i64), Vec<(usize, usize, Q)>> = BTreeMap::new();
    for (k, (_, vs, hs)) in shapes.iter().enumerate() {
        let mut coef = coefficients[k].iter().map(|c| q(*c));
        for (src, dst) in vs {
            let (a, b) = (cell_of(k, *src), cell_of(k, *dst));
            vertical.entry(a).or_default().push((index(&b, (k, *dst)), index(&a, (k, *src)), coef.next().unwrap()));
        }
        for (src, dst) in hs {
            let (a, b) = (cell_of(k, *src), cell_of(k, *dst));
            horizontal.entry(a).or_default().push((index(&b, (k, *dst)), index(&a, (k, *src)), coef.next().unwrap()));
        }
    }
    let conj = |raw: SparseMatrix, src: &(usize, i64), dst: &(usize, i64)| -> SparseMatrix {
        let (pd, _) = &bases[dst];
        let (_, ps_inv) = &bases[src];
        pd.compose(&raw).compose(ps_inv)
    };
    let qmax = cells.keys().map(|(_, q)| *q).max().unwrap_or(0);
    let mut columns = Vec::new();
    for p in 0..=top {
        let dims: Vec<usize> = (0..=qmax).map(|q| dim(&(p, q))).collect();
        let mut diffs = BTreeMap::new();
        for q in 1..=qmax {
            let (src, dst) = ((p, q), (p, q - 1));
            if dim(&src) == 0 || dim(&dst) == 0 {
                continue;
            }
            let raw = SparseMatrix::from_triplets(dim(&dst), dim(&src), vertical.get(&src).cloned().unwrap_or_default()).unwrap();
            diffs.insert(q, conj(raw, &src, &dst));
        }
        columns.push(Arc::new(ChainComplex::new(0, dims, diffs).unwrap()));
    }
    let mut hmaps = Vec::new();
    for p in 1..=top {
        let mut comps = BTreeMap::new();
        for q in 0..=qmax {
            let (src, dst) = ((p, q), (p - 1, q));
            if dim(&src) == 0 || dim(&dst) == 0 {
                continue;
            }
            let raw =
                SparseMatrix::from_triplets(dim(&dst), dim(&src), horizontal.get(&src).cloned().unwrap_or_default()).unwrap();
            comps.insert(q, conj(raw, &src, &dst));
        }
        hmaps.push(ChainMap::new(columns[p].clone(), columns[p - 1].clone(), comps).unwrap());
    }
    let bicomplex = Bicomplex::new(columns, hmaps).unwrap();
    Planted { top, pieces, cells, bases, coefficients, bicomplex }
}

pub fn random_planted(seed: u64, max_top: usize, max_pieces: usize) -> Planted {
    let mut r = rng(seed);
    let top = r.gen_range(1..=max_top);
    let count = r.gen_range(1..=max_pieces);
    let pieces = random_pieces(top, count, &mut r);
    planted(top, pieces, &mut r)
}

impl Planted {
    /// `dim E_r` at `(p, q)` predicted by the pieces.
    pub fn expected_page_dim(&self, r: usize, p: i64, q: i64) -> usize {
        self.pieces
            .iter()
            .map(|piece| match *piece {
                Piece::Point { p: a, q: b } => usize::from((a as i64, b) == (p, q)),
                Piece::Vertical { .. } => 0,
                Piece::Staircase { p: a, q: b, r: len } => {
                    if r > len {
                        0
                    } else {
                        usize::from((a as i64, b) == (p, q)) + usize::from((a as i64 - len as i64, b + len as i64 - 1) == (p, q))
                    }
                }
            })
            .sum()
    }

    /// `dim H_m(Tot)` predicted by the pieces.
    pub fn expected_tot_betti(&self, m: i64) -> usize {
        self.pieces.iter().filter(|piece| matches!(piece, Piece::Point { p, q } if *p as i64 + q == m)).count()
    }

    /// The map onto `target`, whose pieces are those of `self` with index in
    /// `kept` (in order), scaling piece `k` by `scale[k]`.
    pub fn projection(&self, target: &Planted, kept: &[usize], scale: &[i64]) -> Vec<ChainMap> {
        let b = &self.bicomplex;
        let t = &target.bicomplex;
        (0..=self.top)
            .map(|p| {
                let mut comps = BTreeMap::new();
                for q in b.column(p).degrees() {
                    let cell = (p, q);
                    let (Some(src), Some(dst)) = (self.cells.get(&cell), target.cells.get(&cell)) else {
                        continue;
                    };
                    if src.is_empty() || dst.is_empty() {
                        continue;
                    }
                    let mut trip = Vec::new();
                    for (j, (k, role)) in src.iter().enumerate() {
                        if let Some(pos) = kept.iter().position(|x| x == k) {
                            let i = dst.iter().position(|g| *g == (pos, *role)).unwrap();
                            trip.push((i, j, q_of(scale[*k])));
                        }
                    }
                    let raw = SparseMatrix::from_triplets(dst.len(), src.len(), trip).unwrap();
                    comps.insert(q, target.bases[&cell].0.compose(&raw).compose(&self.bases[&cell].1));
                }
                ChainMap::new(b.column(p).clone(), t.column(p).clone(), comps).unwrap()
            })
            .collect()
    }
}

fn q_of(x: i64) -> Q {
    q(x)
}

/// A random graded map of degree `deg` with small integer entries.
pub fn random_graded(s: &Arc<ChainComplex>, t: &Arc<ChainComplex>, deg: i64, rng: &mut ChaCha8Rng) -> GradedMap {
    let mut comps = BTreeMap::new();
    for n in s.degrees() {
        let (r, c) = (t.dim(n + deg), s.dim(n));
        if r == 0 || c == 0 {
            continue;
        }
        let trip: Vec<(usize, usize, Q)> =
            (0..r).flat_map(|i| (0..c).map(move |j| (i, j))).map(|(i, j)| (i, j, q(rng.gen_range(-1..=1)))).collect();
        comps.insert(n, SparseMatrix::from_triplets(r, c, trip).unwrap());
    }
    GradedMap::new(s.clone(), t.clone(), deg, comps).unwrap()
}

/// `f + dσ + σd` for a random degree `+1` map `σ`.
pub fn perturb(f: &ChainMap, rng: &mut ChaCha8Rng) -> ChainMap {
    let sigma = random_graded(f.source(), f.target(), 1, rng);
    ChainMap::from_graded(f.graded().add(&sigma.boundary()).unwrap()).unwrap()
}

fn block_diag_graded(a: &GradedMap, b: &GradedMap, s: &Arc<ChainComplex>, t: &Arc<ChainComplex>) -> GradedMap {
    let mut comps = BTreeMap::new();
    for n in s.degrees() {
        comps.insert(n, SparseMatrix::direct_sum(&a.at(n), &b.at(n)));
    }
    GradedMap::new(s.clone(), t.clone(), a.degree(), comps).unwrap()
}

pub fn direct_sum_bicomplex(a: &Bicomplex, b: &Bicomplex) -> Bicomplex {
    let cols: Vec<Arc<ChainComplex>> =
        (0..=a.top()).map(|n| Arc::new(a.column(n).direct_sum(b.column(n)))).collect();
    let hs = (1..=a.top())
        .map(|n| {
            let g = block_diag_graded(a.horizontal(n).graded(), b.horizontal(n).graded(), &cols[n], &cols[n - 1]);
            ChainMap::from_graded(g).unwrap()
        })
        .collect();
    Bicomplex::new(cols, hs).unwrap()
}

/// The block sum of two maps with the same number of columns.
pub fn direct_sum_map(a: &HomotopySimplicialMap, b: &HomotopySimplicialMap) -> HomotopySimplicialMap {
    let c = direct_sum_bicomplex(a.source(), b.source());
    let d = direct_sum_bicomplex(a.target(), b.target());
    let f = (0..=a.top())
        .map(|n| ChainMap::from_graded(block_diag_graded(a.f(n).graded(), b.f(n).graded(), c.column(n), d.column(n))).unwrap())
        .collect();
    let ws = (1..=a.top())
        .map(|n| block_diag_graded(a.witness(n).s(), b.witness(n).s(), c.column(n), d.column(n - 1)))
        .collect();
    HomotopySimplicialMap::new(c, d, f, ws).unwrap()
}

/// Appends a zero column to both sides.
pub fn pad_column(map: &HomotopySimplicialMap) -> HomotopySimplicialMap {
    let pad = |b: &Bicomplex| {
        let mut cols = b.columns().to_vec();
        let mut hs: Vec<ChainMap> = (1..=b.top()).map(|n| b.horizontal(n).clone()).collect();
        let zero = Arc::new(ChainComplex::zero());
        hs.push(ChainMap::zero(zero.clone(), cols[b.top()].clone()));
        cols.push(zero);
        Bicomplex::new(cols, hs).unwrap()
    };
    let (c, d) = (pad(map.source()), pad(map.target()));
    let mut f: Vec<ChainMap> = (0..=map.top()).map(|n| map.f(n).clone()).collect();
    f.push(ChainMap::zero(c.column(map.top() + 1).clone(), d.column(map.top() + 1).clone()));
    let mut ws: Vec<GradedMap> = (1..=map.top()).map(|n| map.witness(n).s().clone()).collect();
    ws.push(GradedMap::zero(c.column(map.top() + 1).clone(), d.column(map.top()).clone(), 1));
    HomotopySimplicialMap::new(c, d, f, ws).unwrap()
}

/// The linear system for a filtration-preserving chain map
/// `Tot(C) → Tot(D)` whose diagonal blocks are the column maps: unknowns
/// are the entries of the blocks from column `j` to column `i < j`.
pub struct ExtensionSystem {
    pub matrix: SparseMatrix,
    pub rhs: SparseVec,
}

impl ExtensionSystem {
    pub fn new(map: &HomotopySimplicialMap) -> Self {
        let (c, d) = (map.source(), map.target());
        let top = map.top();
        let (clo, chi) = c.total_range();
        let (dlo, dhi) = d.total_range();
        let (lo, hi) = (clo.min(dlo), chi.max(dhi));
        let tc = |m: i64| c.tot_dim(m);
        let td = |m: i64| d.tot_dim(m);
        // Equation (m, x, y): entry (x, y) of d^D_m G_m − G_{m−1} d^C_m.
        let mut eq_off = BTreeMap::new();
        let mut total = 0;
        for m in lo..=hi + 1 {
            eq_off.insert(m, total);
            total += td(m - 1) * tc(m);
        }
        let eq = |m: i64, x: usize, y: usize| eq_off[&m] + x * tc(m) + y;
        let dd = |m: i64| if m > hi || m <= lo { SparseMatrix::zeros(td(m - 1), td(m)) } else { d.tot_differential(m) };
        let dc = |m: i64| if m > hi || m <= lo { SparseMatrix::zeros(tc(m - 1), tc(m)) } else { c.tot_differential(m) };
        // The fixed diagonal part.
        let fixed = |m: i64| -> SparseMatrix {
            let rows: Vec<usize> = (0..=top).map(|n| d.cell_dim(m - n as i64, n)).collect();
            let cols: Vec<usize> = (0..=top).map(|n| c.cell_dim(m - n as i64, n)).collect();
            let diag: Vec<SparseMatrix> = (0..=top).map(|n| map.f(n).at(m - n as i64)).collect();
            let blocks: Vec<Vec<Option<&SparseMatrix>>> =
                (0..=top).map(|i| (0..=top).map(|j| if i == j { Some(&diag[i]) } else { None }).collect()).collect();
            SparseMatrix::block(&rows, &cols, &blocks).unwrap()
        };
        let mut rhs = SparseVec::new();
        for m in lo..=hi + 1 {
            let res = dd(m).compose(&fixed(m)).minus(&fixed(m - 1).compose(&dc(m)));
            for (x, y, v) in res.triplets() {
                rhs.axpy(&-v, &SparseVec::unit(eq(m, x, y)));
            }
        }
        let mut columns = Vec::new();
        for m in lo..=hi {
            let (offc, offd) = (c.tot_offsets(m), d.tot_offsets(m));
            let (dm, dcm) = (dd(m), dc(m + 1));
            for j in 0..=top {
                for i in 0..j {
                    for r in 0..d.cell_dim(m - i as i64, i) {
                        for s in 0..c.cell_dim(m - j as i64, j) {
                            let (row, col) = (offd[i] + r, offc[j] + s);
                            let mut v = SparseVec::new();
                            for (x, a) in dm.col(row).iter() {
                                v.axpy(a, &SparseVec::unit(eq(m, *x, col)));
                            }
                            for y in 0..tc(m + 1) {
                                let a = dcm.get(col, y);
                                if a != q(0) {
                                    v.axpy(&-a, &SparseVec::unit(eq(m + 1, row, y)));
                                }
                            }
                            columns.push(v);
                        }
                    }
                }
            }
        }
        ExtensionSystem { matrix: SparseMatrix::from_columns(total, columns), rhs }
    }

    pub fn unknowns(&self) -> usize {
        self.matrix.cols()
    }

    pub fn solvable(&self) -> bool {
        solve_linear(&self.matrix, &self.rhs).unwrap().is_some()
    }

    /// Tries every assignment with entries in `{−1, 0, 1}`.
    pub fn exhaustive(&self) -> bool {
        let n = self.unknowns();
        let mut x = vec![-1i64; n];
        loop {
            let v = SparseVec::from_pairs(x.iter().enumerate().map(|(i, a)| (i, q(*a))).collect());
            if self.matrix.mul_vec(&v) == self.rhs {
                return true;
            }
            let mut k = 0;
            while k < n && x[k] == 1 {
                x[k] = -1;
                k += 1;
            }
            if k == n {
                return false;
            }
            x[k] += 1;
        }
    }
}

/// The map whose first bracket falls into its indeterminacy.
pub fn absorbed() -> HomotopySimplicialMap {
    let c0 = single(1);
    let c1 = single(1);
    let c2 = single(0);
    let hc1 = chain(&c1, &c0, vec![(1, m(&[&[1]]))]);
    let hc2 = ChainMap::zero(c2.clone(), c1.clone());
    let c = Bicomplex::new(vec![c0.clone(), c1.clone(), c2.clone()], vec![hc1, hc2]).unwrap();
    let d1 = Arc::new(ChainComplex::from_diffs(0, vec![1, 2], vec![m(&[&[1, 0]])]).unwrap());
    let hd1 = chain(&d1, &c0, vec![(1, m(&[&[1, 1]]))]);
    let hd2 = chain(&c2, &d1, vec![(0, m(&[&[1]]))]);
    let d = Bicomplex::new(vec![c0.clone(), d1.clone(), c2.clone()], vec![hd1, hd2]).unwrap();
    let f1 = chain(&c1, &d1, vec![(1, m(&[&[0], &[1]]))]);
    let f = vec![ChainMap::identity(c0), f1, ChainMap::identity(c2)];
    HomotopySimplicialMap::with_solved_witnesses(c, d, f).unwrap()
}

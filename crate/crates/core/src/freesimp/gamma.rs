use std::collections::HashMap;

use crate::chain::ChainComplex;
use crate::error::{input_err, Error, Result};
use crate::exactla::{q, SparseMatrix, SparseVec};
use crate::groupcyc::FreeWord;

/// A monotone surjection `[n] ↠ [m−1]`, stored as its values `α(0), …, α(n)`.
/// It names the free generator `s_α(ι)` in degree `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurjectionGenerator {
    pub values: Vec<usize>,
}

impl SurjectionGenerator {
    pub fn degree(&self) -> usize {
        self.values.len() - 1
    }

    pub fn is_valid(&self, m: usize) -> bool {
        self.values.first() == Some(&0)
            && self.values.last() == Some(&(m - 1))
            && self.values.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
    }

    /// `α ∘ δ_i`, or `None` when it is no longer surjective.
    pub fn face(&self, i: usize, m: usize) -> Option<SurjectionGenerator> {
        let mut v = self.values.clone();
        v.remove(i);
        let g = SurjectionGenerator { values: v };
        g.is_valid(m).then_some(g)
    }

    /// `α ∘ σ_j`.
    pub fn degeneracy(&self, j: usize) -> SurjectionGenerator {
        let mut v = self.values.clone();
        v.insert(j, self.values[j]);
        SurjectionGenerator { values: v }
    }
}

/// All monotone surjections `[n] ↠ [m−1]`, in lexicographic order.
pub fn surjections(n: usize, m: usize) -> Vec<SurjectionGenerator> {
    let mut out = Vec::new();
    let mut cur = vec![0];
    fn go(cur: &mut Vec<usize>, n: usize, m: usize, out: &mut Vec<SurjectionGenerator>) {
        if cur.len() == n + 1 {
            if *cur.last().expect("nonempty") == m - 1 {
                out.push(SurjectionGenerator { values: cur.clone() });
            }
            return;
        }
        let last = *cur.last().expect("nonempty");
        for next in [last, last + 1] {
            if next < m {
                cur.push(next);
                go(cur, n, m, out);
                cur.pop();
            }
        }
    }
    go(&mut cur, n, m, &mut out);
    out
}

/// `Γ(m)` in simplicial degrees `0..=N`: degree `n` is free on the monotone
/// surjections `[n] ↠ [m−1]`, and structure maps are given on generators.
#[derive(Clone, Debug)]
pub struct FreeSimplicialGroupTrunc {
    m: usize,
    generators: Vec<Vec<SurjectionGenerator>>,
    /// `faces[n][i][g]`: image of generator `g` under `∂_i`, `None` for the
    /// identity element.
    faces: Vec<Vec<Vec<Option<usize>>>>,
    /// `degeneracies[n][j][g]` for `n < N`.
    degeneracies: Vec<Vec<Vec<usize>>>,
}

pub fn gamma_truncation(m: usize, top: usize) -> Result<FreeSimplicialGroupTrunc> {
    if m < 2 || m % 2 == 1 {
        return input_err(format!("m must be even and at least 2, got {m}"));
    }
    if top < m {
        return input_err(format!("truncation {top} must be at least m = {m}"));
    }
    let generators: Vec<Vec<SurjectionGenerator>> = (0..=top).map(|n| surjections(n, m)).collect();
    let index: Vec<HashMap<&SurjectionGenerator, usize>> =
        generators.iter().map(|gs| gs.iter().enumerate().map(|(i, g)| (g, i)).collect()).collect();
    let faces = (0..=top)
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            (0..=n)
                .map(|i| generators[n].iter().map(|g| g.face(i, m).map(|f| index[n - 1][&f])).collect())
                .collect()
        })
        .collect();
    let degeneracies = (0..top)
        .map(|n| (0..=n).map(|j| generators[n].iter().map(|g| index[n + 1][&g.degeneracy(j)]).collect()).collect())
        .collect();
    let g = FreeSimplicialGroupTrunc { m, generators, faces, degeneracies };
    g.verify()?;
    Ok(g)
}

impl FreeSimplicialGroupTrunc {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn top(&self) -> usize {
        self.generators.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.generators[n].len()
    }

    pub fn generators(&self, n: usize) -> &[SurjectionGenerator] {
        &self.generators[n]
    }

    pub fn face_on_generator(&self, n: usize, i: usize, g: usize) -> Option<usize> {
        self.faces[n][i][g]
    }

    pub fn degeneracy_on_generator(&self, n: usize, j: usize, g: usize) -> usize {
        self.degeneracies[n][j][g]
    }

    fn apply(&self, w: &FreeWord, target_rank: usize, image: impl Fn(usize) -> Option<usize>) -> FreeWord {
        let letters = w.letters().iter().filter_map(|l| {
            let g = l.unsigned_abs() as usize - 1;
            image(g).map(|h| if *l > 0 { h as i32 + 1 } else { -(h as i32 + 1) })
        });
        FreeWord::new(target_rank, letters).expect("image generators are in range")
    }

    /// `∂_i: Γ_n → Γ_{n−1}` on a word.
    pub fn face(&self, n: usize, i: usize, w: &FreeWord) -> FreeWord {
        self.apply(w, self.rank(n - 1), |g| self.faces[n][i][g])
    }

    /// `s_j: Γ_n → Γ_{n+1}` on a word.
    pub fn degeneracy(&self, n: usize, j: usize, w: &FreeWord) -> FreeWord {
        self.apply(w, self.rank(n + 1), |g| Some(self.degeneracies[n][j][g]))
    }

    /// Checks every simplicial identity on every generator.
    pub fn verify(&self) -> Result<()> {
        let top = self.top();
        let fail = |msg: String| Err(Error::SimplicialIdentity(msg));
        let f = |n: usize, i: usize, g: Option<usize>| g.and_then(|g| self.faces[n][i][g]);
        let s = |n: usize, j: usize, g: Option<usize>| g.map(|g| self.degeneracies[n][j][g]);
        for n in 2..=top {
            for j in 1..=n {
                for i in 0..j {
                    for g in 0..self.rank(n) {
                        if f(n - 1, i, f(n, j, Some(g))) != f(n - 1, j - 1, f(n, i, Some(g))) {
                            return fail(format!("∂_{i}∂_{j} at degree {n}, generator {g}"));
                        }
                    }
                }
            }
        }
        for n in 0..top {
            for j in 0..=n {
                for g in 0..self.rank(n) {
                    let sg = Some(self.degeneracies[n][j][g]);
                    for i in 0..=n + 1 {
                        let lhs = f(n + 1, i, sg);
                        let rhs = if i < j {
                            s(n - 1, j - 1, f(n, i, Some(g)))
                        } else if i == j || i == j + 1 {
                            Some(g)
                        } else {
                            s(n - 1, j, f(n, i - 1, Some(g)))
                        };
                        if lhs != rhs {
                            return fail(format!("∂_{i}s_{j} at degree {n}, generator {g}"));
                        }
                    }
                    if n + 1 < top {
                        for i in 0..=j {
                            if s(n + 1, i, sg) != s(n + 1, j + 1, Some(self.degeneracies[n][i][g])) {
                                return fail(format!("s_{i}s_{j} at degree {n}, generator {g}"));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The degreewise abelianization `A(m)`: free abelian of the same ranks,
/// with structure maps the abelianized integer matrices.
#[derive(Clone, Debug)]
pub struct AbelianTrunc {
    ranks: Vec<usize>,
    faces: Vec<Vec<SparseMatrix>>,
    degeneracies: Vec<Vec<SparseMatrix>>,
}

fn generator_matrix(rows: usize, images: impl Iterator<Item = Option<usize>>) -> SparseMatrix {
    SparseMatrix::from_columns(rows, images.map(|g| g.map_or_else(SparseVec::new, SparseVec::unit)).collect())
}

pub fn abelianize(g: &FreeSimplicialGroupTrunc) -> AbelianTrunc {
    let top = g.top();
    let ranks: Vec<usize> = (0..=top).map(|n| g.rank(n)).collect();
    let faces = (0..=top)
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            (0..=n).map(|i| generator_matrix(ranks[n - 1], g.faces[n][i].iter().copied())).collect()
        })
        .collect();
    let degeneracies = (0..top)
        .map(|n| (0..=n).map(|j| generator_matrix(ranks[n + 1], g.degeneracies[n][j].iter().map(|x| Some(*x)))).collect())
        .collect();
    AbelianTrunc { ranks, faces, degeneracies }
}

/// Exponent sums of a word.
pub fn abelianize_word(w: &FreeWord) -> SparseVec {
    let mut v = SparseVec::new();
    for l in w.letters() {
        v.axpy(&q(l.signum() as i64), &SparseVec::unit(l.unsigned_abs() as usize - 1));
    }
    v
}

impl AbelianTrunc {
    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    pub fn face(&self, n: usize, i: usize) -> &SparseMatrix {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, j: usize) -> &SparseMatrix {
        &self.degeneracies[n][j]
    }

    /// `A_n ⊗ Q` with differential `Σ (−1)^i ∂_i`.
    pub fn alternating_complex(&self) -> ChainComplex {
        let diffs = (1..=self.top())
            .map(|n| {
                let mut acc = SparseMatrix::zeros(self.ranks[n - 1], self.ranks[n]);
                for (i, f) in self.faces[n].iter().enumerate() {
                    acc = if i % 2 == 0 { acc.plus(f) } else { acc.minus(f) };
                }
                acc
            })
            .collect();
        ChainComplex::from_diffs(0, self.ranks.clone(), diffs).expect("simplicial identities give d² = 0")
    }
}

use std::cmp::Ordering;
use std::fmt;

use crate::error::{input_err, Error, Result};

/// A freely reduced word in the free group on `rank` generators. Letter
/// `g + 1` is generator `g`, letter `−(g + 1)` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<i32>,
}

/// Sort key of a letter: `a < A < b < B < …`.
fn letter_key(l: i32) -> u32 {
    let g = l.unsigned_abs() - 1;
    2 * g + u32::from(l < 0)
}

fn cmp_letters(a: &[i32], b: &[i32]) -> Ordering {
    a.iter().map(|l| letter_key(*l)).cmp(b.iter().map(|l| letter_key(*l)))
}

impl FreeWord {
    /// Reduces the given letters.
    pub fn new(rank: usize, letters: impl IntoIterator<Item = i32>) -> Result<Self> {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            if l == 0 || l.unsigned_abs() as usize > rank {
                return input_err(format!("letter {l} outside a free group of rank {rank}"));
            }
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Ok(FreeWord { rank, letters: out })
    }

    fn raw(rank: usize, letters: Vec<i32>) -> Self {
        FreeWord::new(rank, letters).expect("letters in range")
    }

    pub fn identity(rank: usize) -> Self {
        FreeWord { rank, letters: Vec::new() }
    }

    pub fn generator(rank: usize, g: usize) -> Self {
        FreeWord::raw(rank, vec![g as i32 + 1])
    }

    /// Parses `a`, `B`, … (lowercase generators, uppercase inverses) or `1`
    /// for the identity.
    pub fn parse(rank: usize, s: &str) -> Result<Self> {
        if s == "1" || s.is_empty() {
            return Ok(FreeWord::identity(rank));
        }
        let letters = s
            .chars()
            .map(|c| match c {
                'a'..='z' => Ok(c as i32 - 'a' as i32 + 1),
                'A'..='Z' => Ok(-(c as i32 - 'A' as i32 + 1)),
                _ => Err(Error::Parse(format!("unexpected character {c:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        FreeWord::new(rank, letters)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord { rank: self.rank, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn mul(&self, other: &FreeWord) -> Self {
        FreeWord::raw(self.rank.max(other.rank), self.letters.iter().chain(&other.letters).copied().collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(FreeWord::identity(self.rank), |acc, _| acc.mul(self))
    }

    /// `h⁻¹ · self · h`.
    pub fn conjugate_by(&self, h: &FreeWord) -> Self {
        h.inverse().mul(self).mul(h)
    }

    /// Writes `self = p · core · p⁻¹` with `core` cyclically reduced; returns
    /// `(p, core)`, so `core = self^p`.
    pub fn cyclic_reduction(&self) -> (FreeWord, FreeWord) {
        let w = &self.letters;
        let mut i = 0;
        while w.len() >= 2 * (i + 1) && w[i] == -w[w.len() - 1 - i] {
            i += 1;
        }
        (FreeWord::raw(self.rank, w[..i].to_vec()), FreeWord::raw(self.rank, w[i..w.len() - i].to_vec()))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.letters.len() < 2 || self.letters[0] != -self.letters[self.letters.len() - 1]
    }

    /// The least rotation of the cyclic reduction and a conjugator `h` with
    /// `self^h` equal to it.
    pub fn canonical(&self) -> (FreeWord, FreeWord) {
        let (p, core) = self.cyclic_reduction();
        let c = &core.letters;
        let mut best = 0;
        for i in 1..c.len() {
            let rot_i = c[i..].iter().chain(&c[..i]).copied().collect::<Vec<_>>();
            let rot_b = c[best..].iter().chain(&c[..best]).copied().collect::<Vec<_>>();
            if cmp_letters(&rot_i, &rot_b) == Ordering::Less {
                best = i;
            }
        }
        let x = FreeWord::raw(self.rank, c[..best].to_vec());
        let rep = FreeWord::raw(self.rank, c[best..].iter().chain(&c[..best]).copied().collect());
        (rep, p.mul(&x))
    }

    /// Comparison in the order used for canonical representatives: shorter
    /// first, then letterwise with `a < A < b < B < …`.
    pub fn shortlex_cmp(&self, other: &FreeWord) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| cmp_letters(&self.letters, &other.letters))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            let g = (l.unsigned_abs() - 1) as u8;
            let c = if *l > 0 { b'a' + g } else { b'A' + g };
            write!(f, "{}", c as char)?;
        }
        Ok(())
    }
}

/// `u^h = v`, checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugatorWitness {
    pub source: FreeWord,
    pub target: FreeWord,
    pub conjugator: FreeWord,
}

impl ConjugatorWitness {
    pub fn new(source: FreeWord, target: FreeWord, conjugator: FreeWord) -> Result<Self> {
        if source.conjugate_by(&conjugator) != target {
            return input_err(format!("{source}^{conjugator} ≠ {target}"));
        }
        Ok(ConjugatorWitness { source, target, conjugator })
    }
}

/// The conjugacy class of a word: canonical representative, primitive root of
/// the representative and the exponent with `rep = root^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConjClassRep {
    pub rep: FreeWord,
    pub root: FreeWord,
    pub k: usize,
}

#[derive(Clone, Debug)]
pub struct ConjugacyReport {
    pub u: FreeWord,
    pub v: FreeWord,
    pub rep_u: FreeWord,
    pub rep_v: FreeWord,
    pub conjugate: bool,
    pub witness: Option<ConjugatorWitness>,
}

/// Decides conjugacy by comparing canonical representatives. The witness
/// conjugator is `h_u · h_v⁻¹` where `u^{h_u} = v^{h_v}` is the common
/// representative.
pub fn free_reduce_and_conjugacy(u: &FreeWord, v: &FreeWord) -> ConjugacyReport {
    let (rep_u, hu) = u.canonical();
    let (rep_v, hv) = v.canonical();
    let conjugate = rep_u == rep_v;
    let witness = conjugate.then(|| {
        ConjugatorWitness::new(u.clone(), v.clone(), hu.mul(&hv.inverse())).expect("conjugator from canonical forms")
    });
    ConjugacyReport { u: u.clone(), v: v.clone(), rep_u, rep_v, conjugate, witness }
}

/// `y = x^k` with `x` not a proper power. The root of a cyclically reduced
/// word is its shortest period; in general it is conjugated back from there.
pub fn primitive_root(y: &FreeWord) -> Result<(FreeWord, usize)> {
    if y.is_identity() {
        return input_err("the identity has no primitive root; its centralizer is the whole group");
    }
    let (p, core) = y.cyclic_reduction();
    let c = core.letters();
    let n = c.len();
    let d = (1..=n).find(|d| n % d == 0 && (0..n).all(|i| c[i] == c[i % d])).expect("n is a period");
    let x = FreeWord::raw(y.rank, c[..d].to_vec());
    Ok((p.mul(&x).mul(&p.inverse()), n / d))
}

/// Class data for a nontrivial word.
pub fn conj_class(y: &FreeWord) -> Result<ConjClassRep> {
    let (rep, _) = y.canonical();
    let (root, k) = primitive_root(&rep)?;
    Ok(ConjClassRep { rep, root, k })
}

/// All reduced words of exactly the given length, in shortlex order.
pub fn words_of_length(rank: usize, len: usize) -> Vec<FreeWord> {
    let letters: Vec<i32> = (0..rank as i32).flat_map(|g| [g + 1, -(g + 1)]).collect();
    let mut out = vec![Vec::<i32>::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &out {
            for l in &letters {
                if w.last() != Some(&-l) {
                    let mut x = w.clone();
                    x.push(*l);
                    next.push(x);
                }
            }
        }
        out = next;
    }
    out.into_iter().map(|l| FreeWord { rank, letters: l }).collect()
}

/// Nontrivial conjugacy classes whose cyclically reduced length is at most
/// `max_len`, by increasing length then representative.
pub fn classes_up_to(rank: usize, max_len: usize) -> Vec<ConjClassRep> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for w in words_of_length(rank, len) {
            if w.is_cyclically_reduced() && w.canonical().0 == w {
                out.push(conj_class(&w).expect("nontrivial"));
            }
        }
    }
    out
}

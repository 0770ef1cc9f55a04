use std::sync::Arc;

use crate::chain::{ChainComplex, ChainMap};
use crate::error::{dim_err, Error, Result};

/// A simplicial object in chain complexes, truncated at simplicial level `N`.
///
/// `faces[n][i]` is `∂_i: C_n → C_{n−1}` (so `faces[0]` is empty) and, when
/// present, `degeneracies[n][j]` is `s_j: C_n → C_{n+1}` for `n < N`.
#[derive(Clone, Debug)]
pub struct SimplicialChainObject {
    objects: Vec<Arc<ChainComplex>>,
    faces: Vec<Vec<ChainMap>>,
    degeneracies: Option<Vec<Vec<ChainMap>>>,
}

fn identity_err<T>(msg: String) -> Result<T> {
    Err(Error::SimplicialIdentity(msg))
}

fn same(a: &ChainMap, b: &ChainMap) -> bool {
    (a.source().lo().min(a.target().lo())..=a.source().hi().max(a.target().hi())).all(|n| a.at(n) == b.at(n))
}

fn compose(first: &ChainMap, second: &ChainMap) -> ChainMap {
    first.then(second).expect("composable simplicial structure maps")
}

impl SimplicialChainObject {
    pub fn new(
        objects: Vec<Arc<ChainComplex>>,
        faces: Vec<Vec<ChainMap>>,
        degeneracies: Option<Vec<Vec<ChainMap>>>,
    ) -> Result<Self> {
        if objects.is_empty() {
            return dim_err("a simplicial object needs at least level 0");
        }
        let top = objects.len() - 1;
        if faces.len() != objects.len() || !faces[0].is_empty() {
            return dim_err("faces must be listed for every level, none at level 0");
        }
        for n in 1..=top {
            if faces[n].len() != n + 1 {
                return dim_err(format!("level {n} needs {} faces, got {}", n + 1, faces[n].len()));
            }
            for (i, f) in faces[n].iter().enumerate() {
                if **f.source() != *objects[n] || **f.target() != *objects[n - 1] {
                    return dim_err(format!("face {i} at level {n} has wrong source or target"));
                }
            }
        }
        if let Some(deg) = &degeneracies {
            if deg.len() != top {
                return dim_err(format!("degeneracies needed for levels 0..{top}"));
            }
            for (n, row) in deg.iter().enumerate() {
                if row.len() != n + 1 {
                    return dim_err(format!("level {n} needs {} degeneracies", n + 1));
                }
                for (j, s) in row.iter().enumerate() {
                    if **s.source() != *objects[n] || **s.target() != *objects[n + 1] {
                        return dim_err(format!("degeneracy {j} at level {n} has wrong source or target"));
                    }
                }
            }
        }
        let x = SimplicialChainObject { objects, faces, degeneracies };
        x.check_identities()?;
        Ok(x)
    }

    /// The object with a single level.
    pub fn constant_column(c: Arc<ChainComplex>) -> Self {
        SimplicialChainObject { objects: vec![c], faces: vec![Vec::new()], degeneracies: Some(Vec::new()) }
    }

    /// `N` levels of the constant simplicial object on `c`: every face and
    /// degeneracy is the identity.
    pub fn constant(c: Arc<ChainComplex>, top: usize) -> Self {
        let id = ChainMap::identity(c.clone());
        SimplicialChainObject {
            objects: vec![c; top + 1],
            faces: (0..=top).map(|n| if n == 0 { Vec::new() } else { vec![id.clone(); n + 1] }).collect(),
            degeneracies: Some((0..top).map(|n| vec![id.clone(); n + 1]).collect()),
        }
    }

    pub fn top(&self) -> usize {
        self.objects.len() - 1
    }

    pub fn object(&self, n: usize) -> &Arc<ChainComplex> {
        &self.objects[n]
    }

    pub fn objects(&self) -> &[Arc<ChainComplex>] {
        &self.objects
    }

    pub fn face(&self, n: usize, i: usize) -> &ChainMap {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, j: usize) -> Option<&ChainMap> {
        self.degeneracies.as_ref().map(|d| &d[n][j])
    }

    pub fn has_degeneracies(&self) -> bool {
        self.degeneracies.is_some()
    }

    fn check_identities(&self) -> Result<()> {
        let top = self.top();
        // ∂_i ∂_j = ∂_{j−1} ∂_i for i < j.
        for n in 2..=top {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = compose(&self.faces[n][j], &self.faces[n - 1][i]);
                    let rhs = compose(&self.faces[n][i], &self.faces[n - 1][j - 1]);
                    if !same(&lhs, &rhs) {
                        return identity_err(format!("d_{i} d_{j} ≠ d_{} d_{i} at level {n}", j - 1));
                    }
                }
            }
        }
        let Some(deg) = &self.degeneracies else { return Ok(()) };
        for n in 0..top {
            let id = ChainMap::identity(self.objects[n].clone());
            for j in 0..=n {
                let s = &deg[n][j];
                for i in 0..=n + 1 {
                    let lhs = compose(s, &self.faces[n + 1][i]);
                    let ok = if i < j {
                        same(&lhs, &compose(&self.faces[n][i], &deg[n - 1][j - 1]))
                    } else if i == j || i == j + 1 {
                        same(&lhs, &id)
                    } else {
                        same(&lhs, &compose(&self.faces[n][i - 1], &deg[n - 1][j]))
                    };
                    if !ok {
                        return identity_err(format!("face {i} after degeneracy {j} at level {n}"));
                    }
                }
            }
            // s_i s_j = s_{j+1} s_i for i ≤ j.
            if n + 1 < top {
                for j in 0..=n {
                    for i in 0..=j {
                        let lhs = compose(&deg[n][j], &deg[n + 1][i]);
                        let rhs = compose(&deg[n][i], &deg[n + 1][j + 1]);
                        if !same(&lhs, &rhs) {
                            return identity_err(format!("s_{i} s_{j} ≠ s_{} s_{i} at level {n}", j + 1));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

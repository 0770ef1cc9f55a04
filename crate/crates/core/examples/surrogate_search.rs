//! Exhaustive search for three-column pairs with degreewise
//! quasi-isomorphisms whose first bracket does not vanish.
//!
//! Columns range over the zero complex, `Q` in degree 0 or 1, and the acyclic
//! `Q → Q`; horizontal and column maps have entries in `{0, 1}`. Prints the
//! number of hits, the smallest one, and whether it matches the built-in
//! surrogate.
//!
//! Usage: `cargo run --release --example surrogate_search`

use std::collections::BTreeMap;
use std::sync::Arc;

use simptot::chain::{ChainComplex, ChainMap};
use simptot::exactla::{q, SparseMatrix};
use simptot::freesimp::surrogate_counterexample;
use simptot::io::{to_canonical_string, Document};
use simptot::obstruct::{toda_bracket, HomotopySimplicialMap};
use simptot::simpfilt::Bicomplex;

fn catalog() -> Vec<Arc<ChainComplex>> {
    let acyclic = ChainComplex::from_diffs(0, vec![1, 1], vec![SparseMatrix::identity(1)]).expect("Q → Q");
    vec![ChainComplex::zero(), ChainComplex::concentrated(0, 1), ChainComplex::concentrated(1, 1), acyclic]
        .into_iter()
        .map(Arc::new)
        .collect()
}

/// All chain maps `s → t` whose matrices have entries in `{0, 1}`.
fn maps(s: &Arc<ChainComplex>, t: &Arc<ChainComplex>) -> Vec<ChainMap> {
    let degrees: Vec<i64> = (0..=1).filter(|n| s.dim(*n) == 1 && t.dim(*n) == 1).collect();
    let mut out = Vec::new();
    for bits in 0..1u32 << degrees.len() {
        let comps: BTreeMap<i64, SparseMatrix> = degrees
            .iter()
            .enumerate()
            .filter(|(k, _)| bits >> k & 1 == 1)
            .map(|(_, n)| (*n, SparseMatrix::scalar(1, &q(1))))
            .collect();
        if let Ok(f) = ChainMap::new(s.clone(), t.clone(), comps) {
            out.push(f);
        }
    }
    out
}

fn bicomplexes(cols: &[Arc<ChainComplex>]) -> Vec<Bicomplex> {
    let mut out = Vec::new();
    for h1 in maps(&cols[1], &cols[0]) {
        for h2 in maps(&cols[2], &cols[1]) {
            if let Ok(b) = Bicomplex::new(cols.to_vec(), vec![h1.clone(), h2]) {
                out.push(b);
            }
        }
    }
    out
}

fn total_dim(b: &Bicomplex) -> usize {
    b.columns().iter().map(|c| c.total_dim()).sum()
}

fn main() {
    let cat = catalog();
    let triples: Vec<Vec<Arc<ChainComplex>>> = (0..cat.len().pow(3))
        .map(|k| vec![cat[k % 4].clone(), cat[k / 4 % 4].clone(), cat[k / 16].clone()])
        .collect();
    let mut hits: Vec<HomotopySimplicialMap> = Vec::new();
    let mut examined = 0usize;
    for cc in &triples {
        for dc in &triples {
            if (0..3).any(|c| (0..=1).any(|n| cc[c].betti(n) != dc[c].betti(n))) {
                continue;
            }
            let f_choices: Vec<Vec<ChainMap>> =
                (0..3).map(|c| maps(&cc[c], &dc[c]).into_iter().filter(ChainMap::is_quasi_iso).collect()).collect();
            for c in bicomplexes(cc) {
                for d in bicomplexes(dc) {
                    for f0 in &f_choices[0] {
                        for f1 in &f_choices[1] {
                            for f2 in &f_choices[2] {
                                examined += 1;
                                let f = vec![f0.clone(), f1.clone(), f2.clone()];
                                let Ok(m) = HomotopySimplicialMap::with_solved_witnesses(c.clone(), d.clone(), f) else {
                                    continue;
                                };
                                if toda_bracket(&m, 2, 0).map_or(false, |t| !t.vanishes()) {
                                    hits.push(m);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    println!("examined {examined} maps, {} with a nonvanishing first bracket", hits.len());
    let Some(best) = hits.iter().min_by_key(|m| (total_dim(m.source()) + total_dim(m.target()), total_dim(m.target())))
    else {
        return;
    };
    let size = total_dim(best.source()) + total_dim(best.target());
    println!("smallest hit has total dimension {size}:");
    print!("{}", to_canonical_string(&Document::HomotopyMap(best.clone())));
    let known = to_canonical_string(&Document::HomotopyMap(surrogate_counterexample()));
    let same = hits.iter().any(|m| to_canonical_string(&Document::HomotopyMap(m.clone())) == known);
    println!("built-in surrogate found: {same}");
}

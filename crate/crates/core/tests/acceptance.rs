//! The acceptance suite: twelve criteria, each printed as one pass/fail line
//! with its running time and budget.

mod common;

use std::collections::BTreeMap;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use rand::Rng;
use simptot::chain::{ChainComplex, ChainMap, GradedMap};
use simptot::exactla::{rank, SparseMatrix};
use simptot::freesimp::{
    build_abelian_pair, gamma_truncation, minimal_window, surrogate_counterexample, window_verdict, WindowParams,
};
use simptot::groupcyc::{classes_up_to, cyclic_homology, nerve, wtcc_small_model, FiniteGroup, FreeWord};
use simptot::io::{read_document, to_canonical_string, Document};
use simptot::obstruct::{
    bn_totalization_tower, extend_full, gr2_map, solve_stage1, toda_bracket, HomotopyChainObject, HomotopySimplicialMap,
    TowerVerdict,
};
use simptot::specseq::{abutment_check, induced_page_maps, pages, ProbeComplex};

use common::*;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn c1_semisimple_cyclic_homology() -> Outcome {
    for (name, g, classes) in [("Z/2", FiniteGroup::cyclic(2), 2), ("Z/3", FiniteGroup::cyclic(3), 3)] {
        let hc = cyclic_homology(&g, 5).hc;
        // Semisimple algebra: HC_n = HH_0 for even n and 0 for odd n.
        let expected = vec![classes, 0, classes, 0, classes];
        ensure!(hc == expected, "{name}: HC = {hc:?}, expected {expected:?}");
    }
    Ok("HC(Z/2) = (2,0,2,0,2), HC(Z/3) = (3,0,3,0,3)".into())
}

fn c2_component_decomposition() -> Outcome {
    let groups = [("Z/2", FiniteGroup::cyclic(2)), ("Z/3", FiniteGroup::cyclic(3)), ("S3", FiniteGroup::symmetric3())];
    for (name, g) in groups {
        let ch = cyclic_homology(&g, 4);
        let mut sum = vec![0; 4];
        for (k, class) in g.conjugacy_classes().iter().enumerate() {
            let comp = ch.ncy.set.hochschild(&ch.ncy.component(k));
            let (bc, _) = nerve(&g, &g.centralizer(class[0]), 4);
            for n in 0..4 {
                let (a, b) = (comp.betti(n as i64), bc.betti(n as i64));
                ensure!(a == b, "{name}, class of {}: component {a} vs centralizer {b} in degree {n}", class[0]);
                // A finite group has the rational homology of a point.
                ensure!(b == usize::from(n == 0), "{name}: centralizer homology {b} in degree {n}");
                sum[n] += a;
            }
        }
        ensure!(sum == ch.hh, "{name}: component sum {sum:?} vs HH {:?}", ch.hh);
    }
    Ok("Z/2, Z/3, S3 for n <= 3".into())
}

fn c3_hc1_of_integers() -> Outcome {
    let model = wtcc_small_model(&classes_up_to(1, 3), 1, 3);
    ensure!(model.betti(1) == 1, "HC_1 has dimension {}", model.betti(1));
    Ok("dim HC_1 = 1".into())
}

fn c4_planted_squares() -> Outcome {
    for seed in 0..100 {
        let mut r = rng(1000 + seed);
        let pieces = random_pieces(1, 2 + seed as usize % 4, &mut r);
        let p = planted(1, pieces, &mut r);
        let b = p.bicomplex.clone();
        let f: Vec<ChainMap> = (0..=1).map(|n| perturb(&ChainMap::identity(b.column(n).clone()), &mut r)).collect();
        let Some(w) = solve_stage1(&f[1], &f[0], b.horizontal(1), b.horizontal(1)).map_err(|e| e.to_string())? else {
            return Err(format!("seed {seed}: stage 1 unsolved"));
        };
        let map = HomotopySimplicialMap::new(b.clone(), b.clone(), f.clone(), vec![w.s().clone()])
            .map_err(|e| format!("seed {seed}: {e}"))?;
        let g = gr2_map(&map, 1).map_err(|e| format!("seed {seed}: {e}"))?;
        let (lo, hi) = b.total_range();
        for m in lo..=hi + 1 {
            let left = b.tot_differential(m).compose(&g.at(m));
            let right = g.at(m - 1).compose(&b.tot_differential(m));
            ensure!(left == right, "seed {seed}: not a chain map in degree {m}");
        }
        for m in lo..=hi {
            let (off, gm) = (b.tot_offsets(m), g.at(m));
            let (d0, d1) = (b.cell_dim(m, 0), b.cell_dim(m - 1, 1));
            let block = |r0: usize, nr: usize, c0: usize, nc: usize| {
                gm.submatrix(&(r0..r0 + nr).collect::<Vec<_>>(), &(c0..c0 + nc).collect::<Vec<_>>())
            };
            ensure!(block(off[0], d0, off[0], d0) == f[0].at(m), "seed {seed}: column 0 block in degree {m}");
            ensure!(block(off[1], d1, off[1], d1) == f[1].at(m - 1), "seed {seed}: column 1 block in degree {m}");
            ensure!(block(off[1], d1, off[0], d0).is_zero(), "seed {seed}: filtration not preserved in degree {m}");
        }
    }
    Ok("100 squares".into())
}

fn required_brackets_vanish(map: &HomotopySimplicialMap) -> bool {
    let top = map.top();
    (2..=top).all(|order| (0..=top - order).all(|i| toda_bracket(map, order, i).map_or(false, |t| t.vanishes())))
}

fn c5_extension_iff_brackets_vanish() -> Outcome {
    let mut family: Vec<(String, HomotopySimplicialMap)> = Vec::new();
    family.push(("surrogate".into(), surrogate_counterexample()));
    family.push(("absorbed".into(), absorbed()));
    for seed in 0..8 {
        let mut r = rng(2000 + seed);
        let top = 2 + seed as usize % 2;
        let pieces = random_pieces(top, 3, &mut r);
        let p = planted(top, pieces, &mut r);
        let b = p.bicomplex.clone();
        let f = (0..=top).map(|n| perturb(&ChainMap::identity(b.column(n).clone()), &mut r)).collect();
        let coherent = HomotopySimplicialMap::with_solved_witnesses(b.clone(), b, f).map_err(|e| e.to_string())?;
        let mut obstructed = direct_sum_map(&surrogate_counterexample(), &coherent.clone());
        if top == 3 {
            obstructed = direct_sum_map(&pad_column(&surrogate_counterexample()), &coherent.clone());
        }
        if top == 2 {
            family.push((format!("absorbed + coherent {seed}"), direct_sum_map(&absorbed(), &coherent)));
        }
        family.push((format!("coherent {seed}"), coherent));
        family.push((format!("obstructed {seed}"), obstructed));
    }
    let (mut extended, mut searched, mut found_small) = (0, 0, 0);
    for (name, map) in &family {
        let ext = extend_full(map).map_err(|e| format!("{name}: {e}"))?.is_extended();
        let vanish = required_brackets_vanish(map);
        let system = ExtensionSystem::new(map);
        let direct = system.solvable();
        ensure!(ext == vanish, "{name}: extension {ext}, brackets vanish {vanish}");
        ensure!(ext == direct, "{name}: extension {ext}, direct block solve {direct}");
        if system.unknowns() <= 8 {
            searched += 1;
            let found = system.exhaustive();
            // A hit proves existence; a miss only rules out small entries.
            ensure!(!found || ext, "{name}: search found an extension the tower missed");
            found_small += usize::from(found);
        }
        extended += usize::from(ext);
    }
    Ok(format!(
        "{} maps, {extended} extend (direct solve agrees); {searched} searched exhaustively, {found_small} with entries in {{-1,0,1}}",
        family.len()
    ))
}

fn fixture_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))
}

fn c6_surrogate_fixture() -> Outcome {
    let path = fixture_dir().join("surrogate.json");
    let Document::HomotopyMap(map) = read_document(&path).map_err(|e| e.to_string())? else {
        return Err("fixture is not a homotopy simplicial map".into());
    };
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    ensure!(to_canonical_string(&Document::HomotopyMap(map.clone())) == text, "fixture is not canonical");
    ensure!(map.is_degreewise_quasi_iso(), "columns are not quasi-isomorphisms");
    for c in 1..=map.top() {
        let w = map.witness(c);
        let left = map.source().horizontal(c).then(map.f(c - 1)).unwrap();
        let right = map.f(c).then(map.target().horizontal(c)).unwrap();
        ensure!(*left.sub(&right).unwrap().graded() == w.s().boundary(), "witness at column {c} fails");
    }
    let t = toda_bracket(&map, 2, 0).map_err(|e| e.to_string())?;
    ensure!(!t.vanishes(), "first bracket vanishes");
    let c = map.source().totalize();
    let d = map.target().totalize();
    ensure!(c.total().betti_numbers() != d.total().betti_numbers(), "total homology agrees");
    Ok(format!(
        "bracket class {:?} modulo a {}-dimensional indeterminacy",
        t.class.iter().map(|(_, v)| v.to_string()).collect::<Vec<_>>(),
        t.indeterminacy.dim()
    ))
}

fn c7_spectral_sequences() -> Outcome {
    let mut cells = 0;
    for seed in 0..50 {
        let p = random_planted(3000 + seed, 3, 7);
        let b = &p.bicomplex;
        let filt = b.totalize();
        let ss = pages(&filt, &ProbeComplex::unit(), p.top + 1);
        let e1 = ss.page(1).unwrap();
        for n in 0..=p.top {
            for q in b.column(n).degrees() {
                ensure!(e1.dim(n as i64, q) == b.column(n).betti(q), "seed {seed}: E_1({n},{q}) vs column homology");
                if n >= 1 {
                    let induced = rank(&b.horizontal(n).induced_on_homology(q));
                    ensure!(rank(&e1.d(n as i64, q)) == induced, "seed {seed}: d_1 at ({n},{q}) vs induced map");
                }
            }
        }
        for pg in &ss.pages {
            let r = pg.r as i64;
            for ((a, q), _) in pg.cells() {
                let twice = pg.d(a - r, q + r - 1).compose(&pg.d(a, q));
                ensure!(twice.is_zero(), "seed {seed}: d_{r}² ≠ 0 at ({a},{q})");
            }
            for a in 0..=p.top as i64 {
                for q in -1..8 {
                    let want = p.expected_page_dim(pg.r, a, q);
                    ensure!(pg.dim(a, q) == want, "seed {seed}: E_{r}({a},{q}) = {} vs planted {want}", pg.dim(a, q));
                    cells += 1;
                }
            }
        }
        ensure!(abutment_check(&ss).is_ok(), "seed {seed}: abutment fails");
        let (lo, hi) = b.total_range();
        for m in lo..=hi {
            let einf: usize = (0..=p.top as i64).map(|a| ss.e_infinity().dim(a, m - a)).sum();
            ensure!(einf == filt.total().betti(m), "seed {seed}: E_inf vs H(Tot) in degree {m}");
            ensure!(einf == p.expected_tot_betti(m), "seed {seed}: E_inf vs planted in degree {m}");
        }
    }
    Ok(format!("50 filtered complexes, {cells} page cells checked"))
}

fn c8_page_maps() -> Outcome {
    let mut nonzero = 0;
    for seed in 0..20 {
        let mut r = rng(4000 + seed);
        let top = 3;
        let pieces = random_pieces(top, 6, &mut r);
        let src = planted(top, pieces.clone(), &mut r);
        let kept: Vec<usize> = (0..pieces.len()).filter(|_| r.gen_bool(0.7)).collect();
        let tgt = sub_planted(&src, &kept, &mut r);
        let scale: Vec<i64> = (0..pieces.len()).map(|_| if r.gen_bool(0.5) { 1 } else { -2 }).collect();
        let f = src.projection(&tgt, &kept, &scale);
        let map = HomotopySimplicialMap::strict(src.bicomplex.clone(), tgt.bicomplex.clone(), f).map_err(|e| e.to_string())?;
        let tot = map.assemble(0, top, &BTreeMap::new()).map_err(|e| e.to_string())?;
        let (sc, sd) = (pages(&map.source().totalize(), &ProbeComplex::unit(), 3), pages(&map.target().totalize(), &ProbeComplex::unit(), 3));
        let tables = induced_page_maps(&tot, &sc, &sd).map_err(|e| e.to_string())?;
        for (k, table) in tables.iter().enumerate() {
            let r = (k + 1) as i64;
            let (pc, pd) = (&sc.pages[k], &sd.pages[k]);
            for ((a, q), fm) in table {
                let target_cell = (a - r, q + r - 1);
                let f_next = table.get(&target_cell).cloned().unwrap_or_else(|| {
                    SparseMatrix::zeros(pd.dim(target_cell.0, target_cell.1), pc.dim(target_cell.0, target_cell.1))
                });
                let lhs = f_next.compose(&pc.d(*a, *q));
                let rhs = pd.d(*a, *q).compose(fm);
                ensure!(lhs == rhs, "seed {seed}: page {r} at ({a},{q}) does not commute");
                nonzero += usize::from(!fm.is_zero());
            }
        }
    }
    ensure!(nonzero > 0, "every induced page map vanished");
    Ok(format!("20 strict maps, {nonzero} nonzero page components"))
}

fn c9_bn_tower() -> Outcome {
    for seed in 0..20 {
        let p = random_planted(5000 + seed, 3, 6);
        let b = &p.bicomplex;
        let tower = bn_totalization_tower(&HomotopyChainObject::from_bicomplex(b));
        ensure!(tower.brackets.iter().all(|t| t.phi.is_zero() && t.vanishes), "seed {seed}: nonzero bracket");
        let TowerVerdict::Totalizable(t) = &tower.verdict else {
            return Err(format!("seed {seed}: strict input obstructed"));
        };
        let tot = b.totalize();
        let (lo, hi) = b.total_range();
        for m in lo..=hi {
            ensure!(t.betti(m) == tot.total().betti(m), "seed {seed}: H_{m}(T) vs H_{m}(Tot)");
        }
    }
    // Four terms with h_2 planted so that the third bracket is a nonzero map.
    let c0 = single(1);
    let c1 = std::sync::Arc::new(ChainComplex::zero());
    let c2 = single(0);
    let c3 = single(0);
    let d1 = ChainMap::zero(c1.clone(), c0.clone());
    let d2 = ChainMap::zero(c2.clone(), c1.clone());
    let d3 = ChainMap::identity(c3.clone());
    let h2 = GradedMap::new(c2.clone(), c0.clone(), 1, BTreeMap::from([(0, m(&[&[1]]))])).unwrap();
    let h3 = GradedMap::zero(c3.clone(), c1.clone(), 1);
    let x = HomotopyChainObject::new(vec![c0, c1, c2, c3], vec![d1, d2, d3], vec![h2, h3]).map_err(|e| e.to_string())?;
    let tower = bn_totalization_tower(&x);
    ensure!(tower.verdict == TowerVerdict::Obstructed { n: 3 }, "planted input: {:?}", tower.verdict);
    let last = tower.brackets.last().unwrap();
    ensure!(last.n == 3 && !last.phi.is_zero(), "planted input: phi_3 vanishes");
    Ok("20 strict inputs totalize; planted input has phi_3 != 0".into())
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn c10_gamma() -> Outcome {
    for mm in [2, 4] {
        let g = gamma_truncation(mm, 6).map_err(|e| e.to_string())?;
        g.verify().map_err(|e| e.to_string())?;
        for n in 0..=6 {
            ensure!(g.rank(n) == binomial(n, mm - 1), "m = {mm}: rank {} in degree {n}", g.rank(n));
        }
        // Face identities on words, not only on generators.
        let mut r = rng(6000 + mm as u64);
        for n in 2..=6 {
            for _ in 0..20 {
                let len = r.gen_range(0..6);
                let letters: Vec<i32> = (0..len)
                    .map(|_| {
                        let x = r.gen_range(1..=g.rank(n).max(1)) as i32;
                        if r.gen_bool(0.5) { x } else { -x }
                    })
                    .collect();
                if g.rank(n) == 0 {
                    continue;
                }
                let w = FreeWord::new(g.rank(n), letters).unwrap();
                for j in 1..=n {
                    for i in 0..j {
                        let a = g.face(n - 1, i, &g.face(n, j, &w));
                        let b = g.face(n - 1, j - 1, &g.face(n, i, &w));
                        ensure!(a == b, "m = {mm}: ∂_{i}∂_{j} on a word in degree {n}");
                    }
                }
            }
        }
    }
    Ok("ranks n and C(n,3) for n <= 6; identities hold".into())
}

fn c11_windowed_class() -> Outcome {
    let (minimal, tried) = minimal_window(2, 4, 3).map_err(|e| e.to_string())?;
    ensure!(minimal == Some(3), "minimal window {minimal:?}");
    let at = tried.last().unwrap();
    ensure!(at.c_fate.survives_to(3), "source class dies at L = 3");
    ensure!(at.d_fate.killed_on_page == Some(2), "target class killed on page {:?}", at.d_fate.killed_on_page);
    let next = window_verdict(2, 4, 4).map_err(|e| e.to_string())?;
    ensure!(next.separates(), "L = 4 does not separate");
    ensure!(next.c_fate.alive == at.c_fate.alive && next.d_fate.alive == at.d_fate.alive, "verdicts differ at L = 4");
    ensure!(next.d_fate.killed_from == at.d_fate.killed_from, "killing cell differs at L = 4");
    Ok(format!("minimal L = 3, killed by d_2 from {:?}; same at L = 4", at.d_fate.killed_from.unwrap()))
}

fn c12_abelian_strictness() -> Outcome {
    let pair = build_abelian_pair(WindowParams::new(2, 4, 3)).map_err(|e| e.to_string())?;
    ensure!(pair.squares_commute(), "a comparison square does not commute");
    ensure!(pair.map.is_degreewise_quasi_iso(), "a column map is not a quasi-isomorphism");
    let tot = pair.tot_map().map_err(|e| e.to_string())?;
    ensure!(tot.is_quasi_iso(), "the windowed total map is not a quasi-isomorphism");
    let bettis: Vec<usize> = (0..4).map(|k| tot.source().betti(k)).collect();
    Ok(format!("strict; Tot homology {bettis:?} on both sides"))
}

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

#[test]
fn acceptance() {
    let criteria = [
        Criterion { name: "semisimple cyclic homology", budget: Duration::from_secs(10), run: c1_semisimple_cyclic_homology },
        Criterion { name: "conjugacy-class decomposition", budget: Duration::from_secs(60), run: c2_component_decomposition },
        Criterion { name: "HC_1 of Q[Z] from the small model", budget: Duration::from_secs(1), run: c3_hc1_of_integers },
        Criterion { name: "planted homotopy-commuting squares", budget: Duration::from_secs(60), run: c4_planted_squares },
        Criterion { name: "extension iff brackets vanish", budget: Duration::from_secs(300), run: c5_extension_iff_brackets_vanish },
        Criterion { name: "surrogate fixture", budget: Duration::from_secs(10), run: c6_surrogate_fixture },
        Criterion { name: "spectral sequences of filtered complexes", budget: Duration::from_secs(120), run: c7_spectral_sequences },
        Criterion { name: "page maps commute with d_r", budget: Duration::from_secs(60), run: c8_page_maps },
        Criterion { name: "cone tower", budget: Duration::from_secs(60), run: c9_bn_tower },
        Criterion { name: "free simplicial group combinatorics", budget: Duration::from_secs(30), run: c10_gamma },
        Criterion { name: "windowed class separation", budget: Duration::from_secs(900), run: c11_windowed_class },
        Criterion { name: "abelian strictness", budget: Duration::from_secs(60), run: c12_abelian_strictness },
    ];
    let mut failures = Vec::new();
    let mut out = std::io::stdout();
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(note) if elapsed > c.budget => Err(format!("over budget ({note})")),
            other => other,
        };
        let (status, note) = match &result {
            Ok(n) => ("PASS", n.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        // Written to the real stdout so the lines appear even when output is captured.
        writeln!(out, "criterion {:>2} {status} [{:.2?} / {:?}] {}: {note}", k + 1, elapsed, c.budget, c.name).unwrap();
        if result.is_err() {
            failures.push(k + 1);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

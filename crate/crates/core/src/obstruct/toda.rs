use std::collections::BTreeMap;

use crate::chain::{homotopy_classes, null_witness, ChainMap, GradedMap, HomotopyClassSpace};
use crate::error::{input_err, Error, Result};
use crate::exactla::{Insertion, Reducer, SparseVec, Subspace};

use super::hsmap::HomotopySimplicialMap;
use super::window::WindowSystem;

/// The bracket `T(k, n)`: a degree `k − 1` cycle of
/// `Hom(C_{*,n+k}, D_{*,n})`, i.e. a map `Σ^{k−1} C_{n+k} → D_n`, with its
/// class and the subspace of classes reachable by re-choosing the lower
/// order data.
#[derive(Clone, Debug)]
pub struct ObstructionClass {
    pub order: usize,
    pub position: usize,
    pub representative: GradedMap,
    pub space: HomotopyClassSpace,
    pub class: SparseVec,
    pub indeterminacy: Subspace,
    /// Cycles whose classes form the basis of `indeterminacy`, in order.
    indeterminacy_reps: Vec<GradedMap>,
}

/// Evidence that a bracket vanishes: a re-chosen representative, which
/// differs from the original by an element of the indeterminacy, and a
/// nullhomotopy of it.
#[derive(Clone, Debug)]
pub struct VanishingWitness {
    pub adjusted: GradedMap,
    pub nullhomotopy: GradedMap,
}

impl ObstructionClass {
    /// Class coordinates modulo the indeterminacy are zero.
    pub fn vanishes(&self) -> bool {
        self.indeterminacy.contains(&self.class)
    }

    pub fn indeterminacy_representatives(&self) -> &[GradedMap] {
        &self.indeterminacy_reps
    }

    /// Whether two representatives of brackets in the same space give the
    /// same coset.
    pub fn same_coset(&self, other: &ObstructionClass) -> bool {
        let diff = self.class.sub(&other.class);
        self.indeterminacy.contains(&diff) && other.indeterminacy.contains(&diff)
    }

    /// The representative as a chain map out of `Σ^{k−1} C_{n+k}`.
    pub fn representative_map(&self) -> ChainMap {
        crate::chain::cycle_to_chain_map(&self.representative).expect("representative is a cycle")
    }
}

/// Computes `T(k, n)` for `k ≥ 2` on the window of columns `n..=n+k`.
///
/// The lower-order data `g_q` (`q < k`) on the window is the solution of the
/// extension system that keeps the recorded stage-1 witnesses when possible;
/// fails with a precondition error when no lower-order data exists, i.e. a
/// lower bracket does not vanish.
pub fn toda_bracket(map: &HomotopySimplicialMap, k: usize, n: usize) -> Result<ObstructionClass> {
    if k < 2 {
        return input_err("brackets start at order 2");
    }
    if n + k > map.top() {
        return input_err(format!("T({k},{n}) needs columns up to {}, only {} available", n + k, map.top()));
    }
    let sys = WindowSystem::new(map, n, n + k, k - 1);
    let u0 = sys
        .solve()
        .ok_or_else(|| Error::Precondition(format!("lower-order brackets below T({k},{n}) do not vanish")))?;
    let (hom, r) = sys.next_order_matrix(k, n + k);
    let space = homotopy_classes(hom.source().clone(), hom.target().clone(), k as i64 - 1);
    let rep_vec = r.mul_vec(&u0);
    let representative = hom.devectorize(k as i64 - 1, &rep_vec);
    let class = space.class_of(&representative).expect("bracket representative is a cycle");

    let mut red = Reducer::new(space.dim(), false);
    let mut reps = Vec::new();
    let mut classes = Vec::new();
    for z in sys.kernel() {
        let change = hom.devectorize(k as i64 - 1, &r.mul_vec(&z));
        let cz = space.class_of(&change).expect("indeterminacy elements are cycles");
        if red.insert(&cz) == Insertion::Pivot {
            classes.push(cz);
            reps.push(change);
        }
    }
    let indeterminacy = Subspace::span(space.dim(), classes);
    Ok(ObstructionClass {
        order: k,
        position: n,
        representative,
        space,
        class,
        indeterminacy,
        indeterminacy_reps: reps,
    })
}

/// Exact vanishing decision, with a witness when the class lies in the
/// indeterminacy.
pub fn bracket_vanishes(t: &ObstructionClass) -> (bool, Option<VanishingWitness>) {
    if !t.vanishes() {
        return (false, None);
    }
    // The basis of `indeterminacy` is the class list of `indeterminacy_reps`.
    let coords = t.indeterminacy.coordinates(&t.class).expect("class lies in the indeterminacy");
    let mut adjusted = t.representative.clone();
    for (i, a) in coords.iter() {
        let scaled = scale(&t.indeterminacy_reps[*i], a);
        adjusted = adjusted.sub(&scaled).expect("same Hom complex");
    }
    let nullhomotopy = null_witness(&adjusted).expect("adjusted representative is a boundary");
    (true, Some(VanishingWitness { adjusted, nullhomotopy }))
}

fn scale(g: &GradedMap, a: &crate::exactla::Q) -> GradedMap {
    let comps = g.components().iter().map(|(n, m)| (*n, m.scaled(a))).collect();
    GradedMap::new(g.source().clone(), g.target().clone(), g.degree(), comps).expect("same shapes")
}

/// Outcome of trying to extend `f` over a window of columns.
#[derive(Clone, Debug)]
pub enum Extension {
    /// A chain map of the window quotients of both totalizations, agreeing
    /// with `f` on every column, and the correction terms used.
    Extended { map: ChainMap, corrections: BTreeMap<(usize, usize), GradedMap> },
    /// The first bracket, ordered by order then position, that does not
    /// vanish.
    Obstructed(Box<ObstructionClass>),
}

impl Extension {
    pub fn is_extended(&self) -> bool {
        matches!(self, Extension::Extended { .. })
    }
}

/// Tries to extend `f` to the window of `k` columns `n..=n+k−1` (the
/// quotient `F_{n+k−1} / F_{n−1}`). The required brackets are `T(N, i)` with
/// `2 ≤ N < k`, `n ≤ i`, `N + i < n + k`.
pub fn extend_tower(map: &HomotopySimplicialMap, k: usize, n: usize) -> Result<Extension> {
    if k < 1 || n + k - 1 > map.top() {
        return input_err(format!("window of {k} columns from {n} exceeds the {} available", map.top() + 1));
    }
    let hi = n + k - 1;
    let sys = WindowSystem::new(map, n, hi, k - 1);
    if let Some(x) = sys.solve() {
        let corrections = sys.decode(&x);
        let chain = map.assemble(n, hi, &corrections)?;
        return Ok(Extension::Extended { map: chain, corrections });
    }
    for order in 2..k {
        for i in n..=hi - order {
            match toda_bracket(map, order, i) {
                Ok(t) if !t.vanishes() => return Ok(Extension::Obstructed(Box::new(t))),
                _ => {}
            }
        }
    }
    Err(Error::Precondition(format!(
        "extension over columns {n}..={hi} fails although every bracket vanishes separately"
    )))
}

/// The full extension `Tot(C) → Tot(D)` when every bracket vanishes.
pub fn extend_full(map: &HomotopySimplicialMap) -> Result<Extension> {
    extend_tower(map, map.top() + 1, 0)
}

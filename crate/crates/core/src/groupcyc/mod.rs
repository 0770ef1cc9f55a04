//! Group algebra side: free-group words and conjugacy, finite groups, the
//! cyclic bar construction with its conjugacy-class components, Hochschild
//! and cyclic chains, the Connes operator, centralizer comparison maps and
//! the small rational model of cyclic chains of a free group.

mod bar;
mod cyclic;
mod finite;
mod smallmodel;
mod word;

pub use bar::{
    burghelea_maps, cyclic_homology, ncy_to_pair, ncy_truncated, nerve, pair_to_ncy, BurgheleaMaps, CyclicHomology,
    Ncy,
};
pub use cyclic::{cyclic_bar, CyclicSetTrunc, LambdaComplex, Selection};
pub use finite::FiniteGroup;
pub use smallmodel::{free_group_classifying_model, unit_cyclic_complex, wtcc_small_model};
pub use word::{
    classes_up_to, conj_class, free_reduce_and_conjugacy, primitive_root, words_of_length, ConjClassRep,
    ConjugacyReport, ConjugatorWitness, FreeWord,
};

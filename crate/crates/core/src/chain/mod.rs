//! Bounded chain complexes over the rationals: maps, homotopies, cones,
//! suspensions, tensor products and Hom complexes.

mod complex;
mod hom;
mod map;
mod ops;

pub use complex::{ChainComplex, Homology};
pub use hom::{cycle_to_chain_map, homotopy_classes, null_witness, nullhomotopy, HomComplex, HomotopyClassSpace};
pub use map::{ChainHomotopy, ChainMap, GradedMap};
pub use ops::{mapping_cone, suspend, suspend_chain_map, suspend_map, tensor, Cone};

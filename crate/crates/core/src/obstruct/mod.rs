//! Obstructions to totalizing maps and objects that are simplicial only up to
//! homotopy: stage-1 homotopies, the two-column map, higher brackets,
//! window extension, and the cone tower of a homotopy chain complex.

mod hsmap;
mod toda;
mod tower;
mod window;

pub use hsmap::{gr2_map, solve_stage1, HomotopySimplicialMap};
pub use toda::{bracket_vanishes, extend_full, extend_tower, toda_bracket, Extension, ObstructionClass, VanishingWitness};
pub use tower::{bn_totalization_tower, HomotopyChainObject, Tower, TowerBracket, TowerStage, TowerVerdict};

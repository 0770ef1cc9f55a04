//! Simplicial objects in chain complexes, their alternating-sum double
//! complexes, totalization and the filtration by simplicial degree.

mod bicomplex;
mod filtered;
mod simplicial;

pub use bicomplex::{alternating_sum, Bicomplex};
pub use filtered::{FilteredComplex, FiltrationQuotient};
pub use simplicial::SimplicialChainObject;

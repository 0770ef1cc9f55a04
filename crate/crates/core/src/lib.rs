//! Exact computations for totalizations of simplicial chain complexes over
//! the rationals: obstruction classes for extending degreewise maps across the
//! skeletal filtration, spectral sequences of filtered complexes, cyclic
//! homology of group algebras, and free simplicial groups.
//!
//! Every computation is carried out with arbitrary-precision rationals, so all
//! verdicts (vanishing, quasi-isomorphism, page dimensions) are exact.

pub mod chain;
pub mod cli;
pub mod error;
pub mod exactla;
pub mod freesimp;
pub mod groupcyc;
pub mod io;
pub mod obstruct;
pub mod simpfilt;
pub mod specseq;

pub use error::{Error, Result};
pub use exactla::{Q, SparseMatrix, SparseVec, Subspace};

//! Free simplicial groups, their abelianizations, windowed example pairs and
//! a small counterexample fixture.

mod abelian;
mod gamma;
mod lambda;
mod surrogate;
mod window;

#[cfg(test)]
mod tests;

pub use abelian::{build_abelian_pair, AbelianWindowPair};
pub use gamma::{
    abelianize, abelianize_word, gamma_truncation, surjections, AbelianTrunc, FreeSimplicialGroupTrunc,
    SurjectionGenerator,
};
pub use lambda::LambdaWindow;
pub use surrogate::{surrogate_counterexample, surrogate_source, surrogate_target};
pub use window::{
    build_example_bicomplexes, minimal_window, track_class, window_verdict, ClassFate, CyclicWindow, SmallColumn, WindowParams, WindowVerdict, WindowedBicomplexPair,
};

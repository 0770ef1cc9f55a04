//! Spectral sequences of bounded filtered complexes, optionally seen through
//! a probe `[S, −]` or `[−, S]`, and the maps between pages induced by
//! filtration-preserving chain maps.
//!
//! Pages are computed directly from the filtration as
//! `E^r_p = Z^r_p / (Z^{r−1}_{p−1} + d Z^{r−1}_{p+r−1})` with
//! `Z^r_p = {x ∈ F_p : dx ∈ F_{p−r}}`.

mod pages;
mod probe;

pub use pages::{
    abutment_check, class_on_page, induced_page_maps, page, pages, preserves_filtration, stable_index, AbutmentReport, Page,
    PageRow, SpectralSequence,
};
pub use probe::{ProbeComplex, Variance};

//! Structure of tensor products `L(λ) ⊗ F` of a simple gl(∞)-module with a
//! multiplicity-free module F, computed from a finite presentation of λ.

pub mod error;
pub mod fmodule;
pub mod pieri;
pub mod profile;
pub mod structure;

pub use error::{Error, Result};
pub use fmodule::{
    dual_lift, dual_reduction, highest_weight_element, is_b_highest_weight, validate_module,
    FModuleSpec, Kind, Setup,
};
pub use pieri::{
    dominance_leq, ggcurly, ggcurly_by_h, linf_extrema, linf_rank, pieri_contains, pieri_enumerate,
    potential, reference_element, LinfExtrema, PieriElement, Window,
};
pub use profile::{
    h, h_inf, merges, validate_profile, ClassKey, ClassShape, ClassSpec, DeltaVector, Extent, Part,
    Position, Profile, Run, RunTable, Side, TailSpec, WeightProfile,
};
pub use structure::{
    analyze_dual, constituents, decomposability, filtration_layers, hasse_dot, linked,
    module_length, structure_report, structure_report_in, Decomposability, FiltrationLayer,
    LoewyLength, StructureReport,
};

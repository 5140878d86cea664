//! Cusp geometry at d = 2: the smooth fan, the boundary cell complex and
//! integral homology.

pub mod cells;
pub mod fan;
pub mod quadratic;
pub mod snf;

pub use cells::{
    boundary_complex, extract_circle, homology, link_homology, CellComplex, Circle, HomologyGroup,
    LinkHomology,
};
pub use fan::{
    build_cusp_fan, build_cusp_fan_with, canonical_seed, CuspFan, FanChecks, UnitChoice,
};
pub use quadratic::{minus_cf, QuadIrrational};
pub use snf::{smith_normal_form, IntMatrix, Smith};

//! The `p`-hyperfocal subgroup `P̃ = P ∩ O^p(G)`, inertial indices, and the
//! character families of the principal block when `P̃` is cyclic.
//!
//! `E` is realized concretely as the image of a `p`-complement `T` of `N_G(P)`
//! acting on `P̃`, so `e = |T : T ∩ C_G(P)|`. Linear characters of `P̃ = ⟨x⟩`
//! are indexed by exponents: `ν_k(x^j) = ζ_{p^n}^{jk}`.

mod chars;
mod ctx;
mod families;

pub use chars::{BlockSide, ElementFn, LinearCharData};
pub use ctx::{
    focal_form, fusion_equal, hyperfocal_subgroup, op_of, FusionVerdict, HyperfocalCtx, HyperfocalForms, Inertia,
    PElementData, Shape, SUBGROUP_SCAN_CAP,
};
pub use families::{
    check_dade_shape, check_trivial_inertia_values, construct_families, quotient_chars, CharFamily, Exceptional,
    LinearChar,
};

//! Integer linear algebra and finitely generated abelian groups.

pub mod group;
pub mod hnf;
pub mod intmat;
pub mod snf;

pub use group::{
    group_from_presentation, int_json, same_subgroup, subgroup_coefficients, subgroup_contains,
    subgroup_group, subgroup_order, AbelianHom, Coords, IntMatrix, PresentedAbelianGroup,
};
pub use hnf::{hermite_normal_form, lattice_basis, left_kernel, HermiteForm};
pub use intmat::IntMat;
pub use snf::{smith_normal_form, SmithForm};

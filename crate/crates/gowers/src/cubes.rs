//! Discrete cubes, cube morphisms, cubespaces and their algebra.

pub mod abelian;
pub mod cocycle;
pub mod morphism;
pub mod space;
pub mod three_cube;

pub use abelian::{
    degree_k_membership, duality_check, linear_cube_membership, linear_cube_sample,
    z_nk_span_check, AbelianCubeStructure, StructureKind, ZnkReport,
};
pub use cocycle::{
    check_cocycle, coboundary_additive, coboundary_multiplicative, Cocycle, CocycleData,
    CocycleWitness,
};
pub use morphism::{
    cube_automorphisms, enumerate_cube_morphisms, CoordSym, CubeMorphism,
};
pub use space::{concatenate, AxiomReport, Cubespace, GluingWitness};
pub use three_cube::{omega, omega_closure_check, phi_v, tn_index, tn_points};

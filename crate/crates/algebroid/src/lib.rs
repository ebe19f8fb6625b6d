//! Exact computer algebra for Hopf algebroids over prime fields.
//!
//! This crate represents finite-dimensional commutative algebras over F_p
//! by structure constants and builds, on top of exact linear algebra:
//!
//! - [`hopf`]: Hopf algebroids `(A0, A1, η_L, η_R, ε, κ, ∇)` with full
//!   axiom verification, the unit and group-action constructors, and
//!   homomorphisms of Hopf algebroids;
//! - [`comodule`]: comodules `(M, ψ)`, extended comodules, kernels and
//!   cokernels, and the generator-witness construction;
//! - [`descent`]: descent data `(M, τ)` and the isomorphism of categories
//!   with comodules, including the explicit inverse built from κ;
//! - [`functor`]: induction `B0 ⊗_{A0} -` and co-induction `U^φ` along a
//!   homomorphism of Hopf algebroids, with the adjunction made explicit;
//! - [`equivariant`]: finite group actions, equivariant modules, and the
//!   exhaustive-enumeration oracle for the comodule correspondence;
//! - [`flat`]: the Amitsur equalizer for faithfully flat maps and the
//!   Cartesian condition on finite diagrams of algebras.
//!
//! All arithmetic is exact; every categorical identity is checked as a
//! matrix identity over F_p, with no tolerances anywhere.

pub mod algebra;
pub mod error;
pub mod field;
pub mod linalg;
pub mod module;
pub mod tensor;

pub use algebra::{AlgebraHom, FiniteAlgebra};
pub use error::{Error, Result};
pub use field::PrimeField;
pub use linalg::Matrix;
pub use module::{
    cokernel, hom_space, is_faithfully_flat, is_projective, kernel, FModule, ModuleHom,
};
pub use tensor::{tensor_over, tensor_over_with_ceiling, TensorSpace, TwistedModule};
pub mod comodule;
pub mod descent;
pub mod flat;
pub mod functor;
pub mod equivariant;
pub mod hopf;
pub mod report;
pub use equivariant::{
    comodule_from_equivariant, enumerate_equivariant, equivariant_from_comodule,
    EquivariantModule, FiniteGroup, GroupAction,
};
pub use comodule::{
    comodule_cokernel, comodule_hom_space, comodule_image, comodule_kernel, generator_witness,
    Comodule, ComoduleHom, GeneratorWitness,
};
pub use descent::{comodule_of_descent, descent_of_comodule, is_descent_morphism, DescentDatum};
pub use flat::{amitsur_check, cartesian_check, cartesianize, AmitsurReport, CartesianReport, FinitePresheaf};
pub use functor::{adjunction_check, coinduce, coinduce_extended, coinduce_map, induce, AdjunctionReport, Induced};
pub use hopf::{group_action_algebroid, unit_algebroid, AlgebroidHom, HopfAlgebroid, HopfParts};
pub use report::{CheckItem, CheckReport};

//! SU(2): group elements, irreducible representations, invariant
//! derivative operators, Clebsch–Gordan coupling and intertwiners.

mod coupling;
mod group;
mod haar;
mod halfint;
mod wigner;

pub use coupling::{
    clebsch_gordan, clebsch_gordan_coefficient, intertwiner_basis, invariant_basis, CouplingBlock, IntertwinerBasis,
};
pub use group::{
    levi_civita, mat2_distance, mat2_mul, mat2_sub, multiply, pauli, tau, Axis, GroupElement, LieVector, Mat2,
};
pub use haar::haar_sample;
pub use halfint::{casimir_eigenvalue, HalfInt};
pub use wigner::{
    conjugation_intertwiner, conjugation_signs, invariant_generator, invariant_vector_field, lie_generator, represent,
    smeared_generator, spin_matrix, wigner, wigner_entry, Side, WignerMatrix,
};

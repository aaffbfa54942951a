//! Exact algebraic Poisson cohomology of quadratic toric Poisson structures
//! `pi_B = Σ B_pq z_p w_q ∂_{z_p} ^ ∂_{w_q}` on `C^{2n}`.
//!
//! The cochain complex of polynomial multivector fields splits into finite
//! cells `R_[d] ⊗ Λ^p V`; each differential `sigma: (d, p) -> (d+1, p+1)` is
//! assembled as a sparse matrix over `Q(i)` and reduced exactly.

pub mod cli;
pub mod coeff;
pub mod complex;
pub mod dense;
pub mod error;
pub mod exterior;
pub mod schouten;
pub mod toric;

pub use coeff::GaussianRational;
pub use dense::DenseMatrix;
pub use error::{Error, Result};
pub use exterior::{cell_dimension, enumerate_cell, lambda_decompose, GradedCell, Monomial, MultiVector, WedgeIndex};
pub use schouten::{closed_sigma_monomial, closed_sigma_vector, schouten_bracket, sigma, PoissonBivector, Side};
pub use complex::{
    assemble_sigma_matrix, classify_generator, cohomology_dim, cohomology_representatives, full_table, rref,
    CellCohomology, CohomologySummary, GeneratorType, SigmaMatrix, TableOptions,
};
pub use toric::{
    build_pi, congruence_transform, hamiltonian_classify, preset, HamiltonianClass, Hamiltonicity, HermitianForm,
    PRESET_NAMES,
};

//! Exact computer algebra for the graded Poisson algebra H = S((V⊕V*)[−1]),
//! bialgebra deformation complexes, and the resolutions that compare them.
//!
//! Everything is computed over ℚ with arbitrary-precision rationals; there
//! is no floating point anywhere and every check is an exact identity.

pub mod bracket;
pub mod formality;
pub mod graded;
pub mod gs;
pub mod linalg;
pub mod resolution;
pub mod scalar;

pub use bracket::{
    bracket, bracket_oracle, bracket_scaled, infer_dimension, pairing_gram,
    random_degree3_element, verify_poisson, verify_poisson_with, BracketError, Classification,
    PoissonReport, PoissonViolation, ProtoStructure,
};
pub use formality::{
    boundary_construct, boundary_construct_with_gram, ce_differential, degree_census, e1_dim,
    e1_target_power, endo_to_cochain_vec, gl_action_matrix, h1_vanishing_check,
    invariant_form_space, random_symmetric_form, w_multisets, DegreeCensus, FormalityError,
    H1Report, InvariantFormReport, SymmetricForm,
};
pub use graded::{
    dim_by_degree, enumerate_basis, koszul_sign, mul_monomials, Dimension, Element, Generator,
    GradedError, Homogeneity, Monomial, MAX_DIM,
};
pub use gs::{
    d1_operator, d2_operator, gs_cohomology, gs_d1, gs_d2, gs_differential,
    verify_gs_anticommute, FiniteBialgebra, GSCochain, GsError, GsReport,
};
pub use linalg::{kron, ChainComplexRep, ComplexError, LinalgError, RationalMatrix, SolveOutcome};
pub use resolution::{
    abelian_transport_check, abelian_transport_check_mutated, coinduced_differential,
    exponent_vectors, hom_complex, hom_complex_cohomology, induced_differential, lambda_element,
    tetra_basis, wedge_basis, yoneda_product, HomComplexElement, LieAlgebraData, ResolutionError,
    StructureConstants, TetraBasisElem, TransportReport,
};
pub use scalar::{format_rat, parse_rat, Rat, ScalarError};

//! Cohomology, minimal Sullivan models and formality checks for finitely
//! presented rational CDGAs.
//!
//! Everything is generic over an exact [`Scalar`] field; the aliases at the
//! crate root fix it to arbitrary-precision rationals.

pub mod dga;
pub mod expr;
pub mod formality;
pub mod gca;
pub mod groebner;
pub mod invariants;
pub mod linalg;
pub mod model;
pub mod scalar;

pub use dga::{CohomologyBasis, Dga, ValidationReport, Violation};
pub use expr::ExprError;
pub use formality::{cohomology_algebra, is_formal, CohomologyPresentation, FormalityVerdict, Outcome};
pub use gca::{AlgebraError, Element, GeneratorTable, Monomial};
pub use groebner::{GroebnerBasis, QuotientAlgebra};
pub use invariants::intrinsic_invariants;
pub use linalg::{LinalgError, Matrix, Subspace};
pub use model::{
    minimal_model, verify_minimality, verify_quasi_isomorphism, GeneratorKind, InvariantTable, MinimalModel,
    ModelError, ModelGenerator, Stage, DEFAULT_MAX_ITERATIONS,
};
pub use scalar::Scalar;

/// Arbitrary-precision rationals, the coefficient field of every computation.
pub type Rational = num_rational::BigRational;
pub type QMatrix = Matrix<Rational>;
pub type QSubspace = Subspace<Rational>;
pub type QElement = Element<Rational>;
pub type QDga = Dga<Rational>;
pub type QMinimalModel = MinimalModel<Rational>;

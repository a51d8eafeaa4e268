//! Dimensions of linear systems of hypersurfaces in `P^n` with assigned
//! fat points in very general position.
//!
//! Classes `dH - sum m_i E_i` on the blow-up are moved by the Weyl group
//! (permutations of the points and the Cremona reflection) to standard form,
//! where dimension formulas apply: non-speciality in the plane, and quadric
//! peeling plus a pair-correction formula in space. An interpolation oracle
//! over a prime field checks the results independently.

pub mod cli;
pub mod dimension;
pub mod lattice;
pub mod minus_one;
pub mod modp;
pub mod notation;
pub mod oracle;
pub mod reduction;

pub use dimension::{chi, dim2, dim3, quad, Basis, DimensionError, DimensionResult, QuadOutcome, QuadStatus};
pub use lattice::{DivisorClass, LatticeError, Move, RootClass, RootLatticeType, WeylWord};
pub use minus_one::{enumerate_minus_one, is_minus_one_class, MinusOneCertificate, MinusOneSet};
pub use notation::{parse_class, ClassExpression, ParseError};
pub use oracle::{h0_interpolation, verify_class, InterpolationProblem, OracleError, VerifyReport};
pub use reduction::{pre_standard_form, standardize, ReductionReport, ReductionStatus};

//! Exact symbolic engine for the projectively equivariant star products
//! `⋆_λ` on polynomial symbols over `T*R^n`, their coefficients `C_p^λ`,
//! and the invariant bidifferential operators `Z_p`.

pub mod diffop;
pub mod error;
pub mod euler;
pub mod extract;
pub mod invariant;
pub mod lie;
pub mod poly;
pub mod quantization;
pub mod sample;
pub mod suites;

pub use diffop::{BiDiffOp, DiffOp};
pub use error::{Error, Result};
pub use euler::EulerRational;
pub use extract::{extract_bidiff, ExtractBounds, Witness};
pub use invariant::{
    c2_closed_form, c_p_via_zp, cor_last_check, equivariance_check, l_m_closed, l_x, z_p_defining, z_p_direct,
};
pub use lie::{check_homomorphism, momentum, vector_field, LieElement, MomentumFunction, MOMENTUM_BRACKET_SIGN};
pub use poly::{rat, GradedPoly, Exponent, Poly, Rational, Var};
pub use suites::{run_suite, Failure, Status, SuiteConfig, VerificationReport, SUITES};
pub use quantization::{associativity_residual, bg, bh, c_p, normal_star, special_value, star, StarExpansion};

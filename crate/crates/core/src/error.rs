use thiserror::Error;

use crate::extract::Witness;
use crate::poly::Rational;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A denominator factor `E + shift + root` vanishes on an occupied ξ-degree.
    #[error("singular component: factor (E{}) vanishes on xi-degree {degree}", signed(.root))]
    SingularComponent { degree: u32, root: Rational },

    #[error("operator is not polynomial in the Euler operator ({0} denominator factors remain)")]
    NotPolynomial(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("bilinear map is not bidifferential within the given bounds: {0}")]
    NotBidifferential(Box<Witness>),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

fn signed(r: &Rational) -> String {
    use num_traits::Signed;
    if r.is_negative() {
        format!("-{}", -r)
    } else {
        format!("+{r}")
    }
}

pub type Result<T> = std::result::Result<T, Error>;

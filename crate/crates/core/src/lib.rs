//! Symmetric polynomials of eigenvalues, evaluated from matrix entries.
//!
//! For a symmetric polynomial `Σ p_i a₁^{i₁}⋯aₙ^{iₙ}` in the eigenvalues of an
//! `n×n` matrix `A`, substitute the matrix for its eigenvalues and replace the
//! product by a determinant of columns:
//!
//! ```text
//! Σ p_i a₁^{i₁}⋯aₙ^{iₙ} = Σ p_i det(A^{i₁}_1, …, A^{iₙ}_n)
//! ```
//!
//! where `A^{k}_j` is the j-th column of `Aᵏ`. The same holds for families of
//! commuting matrices indexed by exponent vectors, and with negative powers.
//!
//! ```
//! use symdet::{eval_det, MatrixFamily, Matrix, Rational, SymmetricCoefficients};
//!
//! let r = |x: i64| Rational::from_integer(x.into());
//! let a = Matrix::from_rows(vec![vec![r(2), r(1)], vec![r(0), r(3)]]).unwrap();
//! let fam = MatrixFamily::new(vec![a]).unwrap();
//!
//! // a₁a₂² + a₁²a₂ with eigenvalues 2 and 3
//! let p = SymmetricCoefficients::monomial_univariate(&[2, 1]).unwrap();
//! assert_eq!(eval_det(&p, &fam).unwrap(), r(30));
//! ```
//!
//! The accompanying guide lives in `book/` at the repository root; its code
//! listings are compiled and run as doctests of this crate.

pub mod error;
pub mod evaluator;
pub mod family;
pub mod fixtures;
pub mod linalg;
pub mod scalar;
pub mod sympoly;

pub use error::{Error, Result};
pub use evaluator::{
    companion, eval_det, eval_det_with_stats, eval_eigen, eval_eigen_for, eval_on_roots, eval_symbolic,
    scaling_check, EigenvalueTable, EvalStats, MonicPolynomial, Naming, SymbolicPolynomial,
};
pub use family::{MatrixFamily, MemberSource};
pub use linalg::{det_columns, leibniz_det, Matrix};
pub use scalar::{parse_rational, Rational, Scalar};
pub use sympoly::{orbit, ExponentVector, SymmetricCoefficients};

// Run the guide's code listings under `cargo test --doc`.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/coefficients.md")]
    mod coefficients {}
    #[doc = include_str!("../../../book/src/determinant-formula.md")]
    mod determinant_formula {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/companion.md")]
    mod companion {}
    #[doc = include_str!("../../../book/src/invariance.md")]
    mod invariance {}
    #[doc = include_str!("../../../book/src/float-mode.md")]
    mod float_mode {}
}

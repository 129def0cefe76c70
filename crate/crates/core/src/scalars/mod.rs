//! Exact scalars: rationals, Gaussian rationals, polynomials and linear algebra over them.

pub mod gaussian;
pub mod linalg;
pub mod poly;
pub mod rational;

pub use gaussian::Gq;
pub use linalg::{exact_linear_solve, Echelon, Inertia, LinearSolve, Matrix, SparseVec};
pub use poly::{Monomial, Polynomial};
pub use rational::Rational;

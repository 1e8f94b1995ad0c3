//! Exact arithmetic kernel: Laurent polynomials and rational functions over Q.

pub mod factor;
pub mod gcd;
pub mod matrix;
pub mod mono;
pub mod poly;
pub mod rat;
pub mod text;
pub mod var;

pub use matrix::SymMatrix;
pub use mono::Mono;
pub use poly::{coeff, coeff_ratio, Coeff, Poly};
pub use rat::{ArithError, RatExpr};
pub use var::{Var, VarKind};

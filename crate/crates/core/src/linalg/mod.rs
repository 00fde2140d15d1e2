//! Exact linear algebra over F_p and Q.

pub mod fp;
pub mod rational;

pub use fp::{Echelon, FpMatrix, Subquotient};
pub use rational::Q;

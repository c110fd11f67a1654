//! Coefficient rings: the universal ring ℤ[α, ω^{±1}, ε]/(ε²−1) and its
//! specialization targets.

mod coefficient;
mod gaussian;
mod poly;
mod scalar;
mod specialization;

pub use coefficient::{Coefficient, Euclidean, Field};
pub use gaussian::{GaussInt, GaussRational, Gaussian};
pub use poly::{AlphaPoly, GaussPoly, IntPoly};
pub use scalar::{Monomial, SymbolicScalar};
pub use specialization::{AlphaImage, EpsilonImage, OmegaImage, SpecTarget, Specialization};

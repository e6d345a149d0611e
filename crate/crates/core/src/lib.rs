//! Laplace transforms of the invariant measure on the positive hypersphere
//! `M_{n,r} = { y ∈ R^n_+ : Π y_k = r^n }`.
//!
//! The transform reduces to the Mellin–Barnes function
//!
//! ```text
//! F_n(λ) = ∫_{Σx = 0} exp(−λ Σ_k e^{x_k}) dx_1 … dx_{n−1}
//! ```
//!
//! whose Mellin transform is `Γ(s)^n`. The crate provides
//!
//! * [`specfun`]: `lnΓ` (real and complex), `ψ`, `ψ′`, `ln K₀`;
//! * [`saddle`]: the inverse digamma, the rate function
//!   `L(λ) = Γ(γ)/λ^γ` with `ψ(γ) = ln λ`, and the critical point `L = 1`;
//! * [`oracles`]: independent evaluators of `ln F_n` (closed forms,
//!   hyperplane quadrature, inverse-Mellin contour, saddle asymptotic,
//!   importance sampling);
//! * [`hypersphere`]: `D_n(f) = F_n(ρ_n(f)·r)`, regime classification and the
//!   finite-vs-infinite dimensional ensemble comparison.

mod error;
mod log_value;

pub mod hypersphere;
pub mod oracles;
pub mod quadrature;
pub mod saddle;
pub mod specfun;

pub use error::{Error, Result};
pub use log_value::LogValue;

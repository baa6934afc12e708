//! Exact symbolic computation in noncommutative rings presented by rewrite rules.
//!
//! The crate builds up from exact scalars (rationals and Gaussian rationals) to free
//! associative algebras, then adds the three presentation styles the calculator
//! understands:
//!
//! * **Ore extensions** `A[x; alpha, delta]` — a new generator `x` rewriting past the
//!   base ring by `x·a -> alpha(a)·x + delta(a)`, iterated into skewed Weyl towers;
//! * **Lie presentations** — structure constants driving Poincare–Birkhoff–Witt
//!   normal forms, with the Lorentz algebra `so(1,3)` and the Poincare algebra
//!   `iso(1,3)` shipped as builtins;
//! * **skewed canonical commutation contexts** — `p·l -> alpha(l)·p − i·hbar` with a
//!   formal central `hbar` and a `*`-structure (adjoint) on top.
//!
//! Every computation is exact; every canonical form is deterministic. An independent
//! matrix-representation oracle (`rep`) certifies the rewriting engines against
//! 4- and 5-dimensional representations with exact Gaussian-rational entries.

pub mod error;
pub mod scalar;
pub mod report;
pub mod freealg;
pub mod morphism;
pub mod rewrite;
pub mod lie;
pub mod rep;
pub mod ore;
pub mod skewquant;
pub mod expr;
pub mod deffile;
pub mod builtin;
pub mod cli;

pub use error::Error;
pub use scalar::{Ring, Scalar};
pub use freealg::{Element, FreeAlgebra, Word};

//! Finite quandles and racks as operation tables.
//!
//! The central invariant is the quandle polynomial
//! `qp_Q(s, t) = Σ_x s^{r(x)} t^{c(x)}`, where `r(x)` counts the elements that
//! act trivially on `x` and `c(x)` the elements `x` acts trivially on. Around
//! it the crate provides axiom checks, isomorphism testing, the standard
//! families, enumeration by order, homomorphisms with `K_qp`, and link
//! coloring invariants.

pub mod cli;
pub mod constructors;
pub mod enumeration;
pub mod error;
pub mod homomorphism;
pub mod iso;
pub mod link;
pub mod polynomial;
pub mod table;

pub use error::{Error, Result};
pub use polynomial::{BivariatePoly, PolyMultiset, ZPoly};
pub use table::{AlgebraClass, CountProfile, QuandleTable};

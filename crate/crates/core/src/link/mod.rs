//! Link diagrams, their quandle colorings, and the coloring invariants.

mod coloring;
mod diagram;

pub use coloring::{
    colorings, counting_invariant, phi_qp, phi_qp_specialized, satisfies, ColoringSet,
};
pub use diagram::{Crossing, LinkDiagram, Sign};

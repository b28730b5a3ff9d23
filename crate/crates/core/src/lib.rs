//! Linearly-ordered coloring of 2-LO colorable 3-uniform hypergraphs by
//! rounding a vector relaxation.
//!
//! The pipeline linearizes the input, solves the relaxation, colors every
//! unbalanced vertex by interval bisection of `γ_a = ⟨v_a, v∅⟩`, and then
//! colors the balanced remainder either by alternating even/odd independent
//! sets ([`pipeline::Strategy::N15`]) or by a Gaussian perturbation followed
//! by another bisection pass ([`pipeline::Strategy::LogN`]).

pub mod combround;
pub mod error;
pub mod evenset;
pub mod gaussround;
pub mod hypergraph;
pub mod instances;
pub mod io;
pub mod oracle;
pub mod pipeline;
pub mod rng;
pub mod sdp;

pub use error::{Error, Result};
pub use hypergraph::{lift_coloring, validate_hypergraph, Edge, Hypergraph, MergeMap, RankedColoring};

//! Non-well-founded sets as regular coalgebras.
//!
//! Elements of the greatest fixed point `U = {1} ∪ (I →̃ U)` are represented
//! by finite pointed coalgebras ([`coalg::RegularElement`]), compared by
//! bisimulation, and expanded into ordinary hereditarily finite sets
//! ([`hfs::HfSet`]) through the approximation chain `π_n`. On top of that sit a
//! solver for systems of set equations ([`eqsolve`]), final coalgebras for
//! functors that are uniform on maps ([`functors`]) and a small text format
//! for equation systems ([`dsl`]).

pub mod coalg;
pub mod commands;
pub mod dsl;
pub mod eqsolve;
pub mod error;
pub mod functors;
pub mod hfs;
pub mod variant;

pub use error::{Error, Result};

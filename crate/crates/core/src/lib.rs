//! Extremal graph families, Perron spectra and exact Hamiltonicity deciders
//! for checking spectral sufficient conditions for k-Hamiltonian and
//! k-edge-Hamiltonian graphs.
//!
//! The spectral layer is generic over the floating-point scalar ([`Real`]);
//! the closed-form edge bounds are exact rationals ([`Rational`]).

pub mod closure;
pub mod error;
pub mod families;
pub mod graph;
pub mod hamiltonicity;
pub mod scalar;
pub mod spectral;
pub mod verifier;

pub use error::{Error, Result};
pub use graph::{Adjacency, DenseGraph, Graph, VertexSet};
pub use scalar::Real;

/// Exact rational used by the edge-count lower bounds.
pub type Rational = num_rational::Ratio<i64>;

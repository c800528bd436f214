//! Discrete Morse theory on finite simplicial complexes: gradients, collapses,
//! erasability, exact and approximate solvers, and the reduction from
//! acyclic subgraph problems to Morse matching.

pub mod collapse;
pub mod complex;
pub mod graph;
pub mod hasse;
pub mod homology;
pub mod morse;
pub mod reductions;
pub mod solvers;
pub mod families;
pub mod io;
pub mod cli;

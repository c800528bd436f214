//! The constructions behind the hardness results: the MAS to OMAS reduction,
//! the gadget complexes built from directed graphs, the maps between their
//! solutions, and the amplified complex.

mod amplify;
mod audit;
mod construction;
mod gadget;
mod omas;
mod solution;

use thiserror::Error;

use crate::complex::{ComplexError, Simplex, VertexId};
use crate::graph::{Edge, GraphError};
use crate::morse::{GradientError, MorseError};
use crate::solvers::SolverError;

pub use amplify::{amplified_size, amplify, AmplifyError, MAX_AMPLIFIED_SIMPLICES};
pub use audit::{hardness_factor, l_reduction_audit, nu, AuditReport, MU};
pub use construction::{build_k, build_k_full, build_k_tilde, GadgetAtlas};
pub use gadget::{
    classic_dunce_hat, dunce_gradient, modified_dunce_hat, Gadget, Role, CLASSIC_DUNCE_HAT, GADGET_TRIANGLES,
    GADGET_VERTICES,
};
pub use omas::{mas_to_omas_f, mas_to_omas_g, Oriented};
pub use solution::{critical_edges, solution_map_a, witness_gradient};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Morse(#[from] MorseError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("edge {0} is not in the graph")]
    NotASubgraph(Edge),
    #[error("subgraph has a directed cycle")]
    Cyclic,
    #[error("removing the given edges leaves a directed cycle")]
    NotFeedbackArcSet,
    #[error("vertex {0} is not in the complex")]
    MissingVertex(VertexId),
    #[error("gadget for {0} degenerated under the identifications")]
    Degenerate(Edge),
    #[error("triangle {0} lies in the gadgets of both {1} and {2}")]
    SharedTriangle(Simplex, Edge, Edge),
    #[error("gadget for {0} has no vertex {1}")]
    MissingRole(Edge, String),
    #[error("complex left after removing the chosen triangles is not erasable")]
    NotErasable,
}

impl From<GradientError> for ReductionError {
    fn from(e: GradientError) -> Self {
        ReductionError::Morse(e.into())
    }
}

//! Exact and approximate solvers. Exponential ones run under a [`SolverConfig`]
//! budget and fail with [`SolverError::BudgetExhausted`] rather than guess.

mod algorithm_b;
mod collapsible;
mod er;
mod fas;
mod matching;

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::GraphError;
use crate::morse::{DiscreteGradient, GradientError, MorseError};
use crate::reductions::AmplifyError;

pub use algorithm_b::{algorithm_b, AlgorithmBOutcome};
pub use collapsible::{is_collapsible_exact, is_collapsible_exact_with, Collapsibility};
pub use er::{er_exact, ErCertificate};
pub use fas::{mas_half_approx, max_acyclic_exact, min_fas_exact, MAX_FAS_VERTICES};
pub use matching::{
    branch_and_bound_matching, greedy_gradient, optimal_matching, optimal_matching_with, random_gradient,
    GradientSampler, OptimalMatching,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Search nodes before giving up.
    pub node_budget: u64,
    pub time_budget: Option<Duration>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            node_budget: 50_000_000,
            time_budget: None,
        }
    }
}

impl SolverConfig {
    pub fn with_nodes(node_budget: u64) -> Self {
        SolverConfig {
            node_budget,
            time_budget: None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    /// The budget ran out. `best` holds the best gradient found so far, which is
    /// not known to be optimal.
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted {
        nodes: u64,
        best: Option<Box<DiscreteGradient>>,
    },
    #[error(transparent)]
    Morse(#[from] MorseError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("exact solver supports at most {max} vertices, graph has {got}")]
    TooManyVertices { max: usize, got: usize },
    #[error("exponent c must be at least 1")]
    BadExponent,
    #[error(transparent)]
    Amplify(#[from] AmplifyError),
}

impl From<GradientError> for SolverError {
    fn from(e: GradientError) -> Self {
        SolverError::Morse(e.into())
    }
}

pub(crate) struct Budget {
    nodes: u64,
    limit: u64,
    deadline: Option<Instant>,
}

impl Budget {
    pub fn new(config: &SolverConfig) -> Self {
        Budget {
            nodes: 0,
            limit: config.node_budget,
            deadline: config.time_budget.map(|d| Instant::now() + d),
        }
    }

    pub fn tick(&mut self) -> Result<(), SolverError> {
        self.nodes += 1;
        let out_of_time = self.nodes % 1024 == 0 && self.deadline.is_some_and(|d| Instant::now() >= d);
        if self.nodes > self.limit || out_of_time {
            return Err(SolverError::BudgetExhausted {
                nodes: self.nodes,
                best: None,
            });
        }
        Ok(())
    }
}

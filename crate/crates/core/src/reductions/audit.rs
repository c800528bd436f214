use num_rational::Ratio;

use super::{solution_map_a, GadgetAtlas, ReductionError};
use crate::complex::SimplicialComplex;
use crate::homology::betti_gf2;
use crate::morse::DiscreteGradient;
use crate::graph::OrientedDeg3Graph;
use crate::solvers::{min_fas_exact, SolverConfig};

/// Size constant of the reduction: `OPT_MaxMM(K(G)) ≤ μ·OPT(G)`.
pub const MU: i64 = 78;

/// Error constant as a fraction: `ν = 1/2`.
pub fn nu() -> Ratio<i64> {
    Ratio::new(1, 2)
}

/// `1 − δ/(μν)`: the inapproximability factor transferred through the reduction.
pub fn hardness_factor(delta: Ratio<i64>) -> Ratio<i64> {
    Ratio::from_integer(1) - delta / (Ratio::from_integer(MU) * nu())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub vertices: usize,
    pub edges: usize,
    pub simplices: usize,
    pub betti_sum: usize,
    pub min_fas: usize,
    pub opt_3omas: usize,
    pub opt_maxmm: usize,
    /// Regular simplices of the audited gradient.
    pub m_maxmm: usize,
    /// Edges of the mapped acyclic subgraph.
    pub m_3omas: usize,
    /// `μ·OPT_3OMAS − OPT_MaxMM`.
    pub mu_slack: i64,
    /// `(OPT_MaxMM − m_MaxMM) − 2·(OPT_3OMAS − m_3OMAS)`, twice the ν slack.
    pub nu_slack_doubled: i64,
}

impl AuditReport {
    pub fn holds(&self) -> bool {
        self.mu_slack >= 0 && self.nu_slack_doubled >= 0
    }

    pub fn to_key_value(&self) -> String {
        let rows: [(&str, i64); 11] = [
            ("vertices", self.vertices as i64),
            ("edges", self.edges as i64),
            ("simplices", self.simplices as i64),
            ("betti_sum", self.betti_sum as i64),
            ("min_fas", self.min_fas as i64),
            ("opt_3omas", self.opt_3omas as i64),
            ("opt_maxmm", self.opt_maxmm as i64),
            ("m_maxmm", self.m_maxmm as i64),
            ("m_3omas", self.m_3omas as i64),
            ("mu_slack", self.mu_slack),
            ("nu_slack_doubled", self.nu_slack_doubled),
        ];
        let mut out: String = rows.iter().map(|(k, v)| format!("{k}={v}\n")).collect();
        out.push_str(&format!("holds={}\n", self.holds()));
        out
    }
}

/// Checks both L-reduction inequalities for one gradient on `K(G)`.
///
/// `OPT_3OMAS` comes from the exact feedback arc set solver and `OPT_MaxMM` from
/// `n − 2·minFAS − Σβ`.
pub fn l_reduction_audit(
    g: &OrientedDeg3Graph,
    k: &SimplicialComplex,
    atlas: &GadgetAtlas,
    v: &DiscreteGradient,
    config: &SolverConfig,
) -> Result<AuditReport, ReductionError> {
    let min_fas = min_fas_exact(g, config)?.len();
    let betti_sum: usize = betti_gf2(k).iter().sum();
    let opt_3omas = g.edge_count() - min_fas;
    let opt_maxmm = k.len() - 2 * min_fas - betti_sum;
    let m_maxmm = 2 * v.len();
    let m_3omas = solution_map_a(g, k, atlas, v)?.edge_count();
    Ok(AuditReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        simplices: k.len(),
        betti_sum,
        min_fas,
        opt_3omas,
        opt_maxmm,
        m_maxmm,
        m_3omas,
        mu_slack: MU * opt_3omas as i64 - opt_maxmm as i64,
        nu_slack_doubled: (opt_maxmm as i64 - m_maxmm as i64) - 2 * (opt_3omas as i64 - m_3omas as i64),
    })
}

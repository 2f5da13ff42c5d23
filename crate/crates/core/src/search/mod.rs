//! Global exploration of the equilateral-polygon space.

mod consistency;
mod optimize;
mod p2;

pub use consistency::{spectral_vs_diag_consistency, ConsistencyReport, ConsistencyRow};
pub use optimize::{
    classify, maximize_objective, maximize_objective_with_reference, reverify, AnnealingOptions,
    ChainSummary, Reverification, SearchConfig, SearchOutcome, TracePoint, Verdict,
    CANDIDATE_THRESHOLD, REVERIFY_TOL,
};
pub use p2::{verify_p2_global, P2Report, P2_BOUND_TOL, P2_CHART_TOL};

//! Both sides of the assembly map for `F wr F_n`, truncated to finite balls:
//! the `psi` matrix and its kernel, K-group bases with constructive
//! coinvariance witnesses, the label-wise assembly bijection, and the trace
//! image.

mod assembly;
mod kgroups;
mod module;
mod report;

use thiserror::Error;

use crate::grouprep::GroupSpecError;
use crate::orbits::OrbitError;

pub use assembly::{
    assembly_map, mu_config, path_config, rational_gcd, trace_image, trace_of, AssemblyReport, TraceReport,
};
pub use kgroups::{
    check_witness, coinvariance_witness, k0_report, k1_generator_names, k1_report, k_report, random_config,
    K0Report, K1Report, KGroupReport, Witness,
};
pub use module::{
    psi_apply, psi_matrix, truncation_size, verify_kernel_lemma, KernelCertificate, PsiMatrix, TruncatedModule,
    MAX_BASIS,
};
pub use report::{fmt_rational, reports_to_csv, reports_to_json, ReportDocument, TraceEntry};

#[derive(Debug, Error)]
pub enum BcError {
    #[error(transparent)]
    Group(#[from] GroupSpecError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("truncation has {} configurations (limit {limit})", configs.map_or("too many".to_string(), |c| c.to_string()))]
    TooLarge { configs: Option<u128>, limit: u128 },
    #[error("no coinvariance witness for {0}")]
    WitnessFailure(String),
    #[error("kernel of psi has rank {found}, expected {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("assembly image changes the support at {0}")]
    SupportMismatch(String),
}

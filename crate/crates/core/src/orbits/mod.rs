//! Finitely supported configurations `F^(F_n)` under left translation by the
//! free group: support trees, barycentres, admissibility and canonical orbit
//! representatives, plus a brute-force union-find oracle to check them.

mod config;
mod enumerate;
mod oracle;
mod tree;

use thiserror::Error;

use crate::freegroup::FreeGroupError;

pub use config::{translate, Config};
pub use enumerate::{count_canonical, enumerate_canonical, for_each_config};
pub use oracle::{orbit_oracle, orbit_oracle_within, OrbitPartition, UnionFind};
pub use tree::{
    barycentre, canonicalize, centre_of_support, is_admissible, is_canonical, support_tree, Barycentre,
    SupportTree,
};

#[derive(Debug, Error)]
pub enum OrbitError {
    #[error("the basepoint configuration has no support tree")]
    EmptyConfig,
    #[error("word of rank {found} in a rank-{expected} configuration")]
    RankMismatch { expected: u32, found: u32 },
    #[error("word {0} appears twice")]
    DuplicateWord(String),
    #[error("entry at {0} carries the basepoint label")]
    BasepointEntry(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("malformed configuration: {0}")]
    Syntax(String),
    #[error(transparent)]
    Word(#[from] FreeGroupError),
    #[error("truncation too large ({words} words, limit {limit})")]
    TooLarge { words: usize, limit: usize },
}

//! Finite truncations of the two-dimensional model for the classifying space
//! of proper actions: trees `T_w` of cosets over the Cayley tree of `F_n`,
//! joined by mapping cylinders of the gluing maps `phi`, with the actions
//! `theta` (of the base group) and `eta` (of `F_n`) and cellular homology.

mod action;
mod build;
mod cells;
mod export;
mod group;

use thiserror::Error;

use crate::freegroup::FreeGroupError;
use crate::orbits::OrbitError;

pub use action::{
    check_boundary_equivariance, check_conjugation, check_phi_equivariance, fundamental_domain_cells, predicted_stabilizer_order,
    single_site_elements, stabilizer_order, truncated_group, Census, CheckOutcome, Move, EXHAUSTIVE_LIMIT,
};
pub use build::{
    build_telescope, build_tree, cylinder_steps, homology, CellComplex, ChainComplex, GluingScheme, Homology,
    HomologyGroup, MAX_CELLS,
};
pub use cells::{erase, glue_map_phi, pointwise, Cell, CellKind, TreeVertex};
pub use export::{CellRecord, ComplexDocument};
pub use group::GroupLaw;

#[derive(Debug, Error)]
pub enum TelescopeError {
    #[error("no multiplication table for group {0:?} (built-in groups only)")]
    NoGroupLaw(String),
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("levels must be at least {min}, got {levels}")]
    LevelsTooSmall { levels: usize, min: usize },
    #[error("radius {radius} must be below the level cap {levels}")]
    RadiusExceedsLevels { radius: usize, levels: usize },
    #[error("no level above {level} (cap {levels})")]
    LevelOverflow { level: usize, levels: usize },
    #[error("inconsistent gluing: {0}")]
    Gluing(String),
    #[error("boundary of a boundary is not zero")]
    BoundaryNotZero,
    #[error("complex would have about {} cells (limit {limit})", cells.map_or("too many".to_string(), |c| c.to_string()))]
    TooLarge { cells: Option<u128>, limit: u128 },
    #[error(transparent)]
    Word(#[from] FreeGroupError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error("malformed complex document: {0}")]
    Parse(String),
}

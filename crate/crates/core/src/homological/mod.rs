//! Fixed points, Hom spaces, first cohomology and composition factors.

mod cohomology;
mod fixed;
mod hom;
mod meataxe;

use thiserror::Error;

use crate::partition::Partition;
use crate::specht::ModuleError;

pub use cohomology::h1_dimension;
pub use fixed::{
    fixed_point_dim, fixed_points, fixed_subspace, specht_fixed_dim, specht_fixed_module,
    AveragingOptions, FixedPoints,
};
pub use hom::{find_isomorphism, head_mult, hom_space, is_homomorphism, socle_mult, HomSpace};
pub use meataxe::{
    chop, chop_raw, spin, Chopped, CompositionFactors, Factor, SimpleCatalog, DEFAULT_BUDGET,
};

#[derive(Debug, Error)]
pub enum HomologicalError {
    #[error("subgroup size m={m} out of range for degree {n}")]
    SubgroupRange { m: usize, n: usize },
    #[error("modules are not over the same group and field: {left} vs {right}")]
    Incompatible { left: String, right: String },
    #[error("averaged polytabloids of {lambda} have rank {found}, expected {expected}")]
    AveragingRank {
        lambda: Partition,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Module(#[from] ModuleError),
}

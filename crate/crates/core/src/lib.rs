//! Planning and simulation of distributed data layouts for a
//! five-dimensional spectral simulation domain.
//!
//! The data domain carries five compounded indices (`x`, `y`, `l`, `e`, `s`)
//! plus two further indices (`ig`, `isgn`). Three inter-convertible layouts
//! exist:
//!
//! * `g_lo` — the k-space layout; `ig` and `isgn` are local to each rank,
//!   `x,y,l,e,s` are compounded and distributed.
//! * `xxf_lo` — intermediate FFT layout; the full `x` extent is local,
//!   `y,ig,isgn,l,e,s` are compounded.
//! * `yxf_lo` — position-space layout; the full `y` extent is local,
//!   `x,ig,isgn,l,e,s` are compounded.
//!
//! The crate computes balanced (uniform blocksize) and unbalanced
//! (two-blocksize) decomposition plans over these compound index spaces,
//! predicts the inter-rank communication volume of a layout change
//! analytically, and checks the prediction against an exact brute-force
//! redistribution oracle.

pub mod error;
pub mod layout;
pub mod plan;
pub mod shape;
pub mod space;
pub mod sweetspot;
pub mod transfer;

pub use error::Error;
pub use layout::Layout;
pub use plan::{
    balanced_blocksize, balanced_plan, idle_report, unbalanced_plan, DecompositionPlan,
    FallbackReason, IdleReport, PlanKind, DEFAULT_MAX_IMBALANCE,
};
pub use shape::GridShape;
pub use space::{total_size, Axis, Coordinate, Indexer, Space};
pub use sweetspot::{sweetspots, SweetSpots};
pub use transfer::{
    analytic_estimate, compare_estimate, exact_transfer_map, shared_domain, trans_data_from_delta,
    ComparisonReport, SharedDomain, Transform, TransferEstimate, TransferMap, DEFAULT_SIZE_GUARD,
};

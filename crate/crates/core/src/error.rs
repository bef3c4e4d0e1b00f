use crate::space::Axis;
use thiserror::Error;

/// Errors reported by the planning and redistribution routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid grid shape: {0}")]
    InvalidShape(String),

    #[error("unknown layout `{0}`; expected one of xyles, yxles, lyxes, yxels, lxyes, lexys")]
    UnknownLayout(String),

    #[error("unknown space `{0}`; expected one of g_lo, xxf_lo, yxf_lo")]
    UnknownSpace(String),

    #[error("unknown transform `{0}`; expected one of g2xxf, xxf2g, xxf2yxf, yxf2xxf")]
    UnknownTransform(String),

    #[error("coordinate {axis} = {value} outside extent {extent}")]
    CoordinateOutOfRange {
        axis: Axis,
        value: usize,
        extent: usize,
    },

    #[error("flat index {flat} outside compound space of size {total}")]
    FlatIndexOutOfRange { flat: usize, total: usize },

    #[error("mismatched plans: {0}")]
    PlanMismatch(String),

    #[error("shared domain has {cells} elements, exceeding the size guard of {guard}")]
    SizeGuardExceeded { cells: usize, guard: usize },
}

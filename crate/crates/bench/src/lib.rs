//! Shared fixtures for the benchmark suite.

use decomp_core::GridShape;

/// Production-scale domain used by the planning benchmarks.
pub fn large_shape() -> GridShape {
    GridShape {
        nakx: 32,
        naky: 32,
        inx: 48,
        iny: 48,
        nig: 31,
        nsign: 2,
        nlambda: 32,
        negrid: 8,
        nspec: 2,
        element_bytes: 16,
    }
}

/// Smaller domain that keeps the exact transfer map affordable.
pub fn medium_shape() -> GridShape {
    GridShape {
        nakx: 12,
        naky: 10,
        inx: 18,
        iny: 15,
        nig: 13,
        nsign: 2,
        nlambda: 4,
        negrid: 4,
        nspec: 2,
        element_bytes: 16,
    }
}

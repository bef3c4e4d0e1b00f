//! Recommended process counts at which each layout's total size divides
//! exactly, avoiding balanced-plan overspill.

use crate::layout::Layout;
use crate::shape::GridShape;
use crate::space::{total_size, Space};

/// Divisor lists per space, plus the prefix-product counts that keep the
/// k-space decomposition aligned to whole slow-dimension slices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweetSpots {
    pub g_lo: Vec<usize>,
    pub xxf_lo: Vec<usize>,
    pub yxf_lo: Vec<usize>,
    /// Products of the layout's slowest `g_lo` dimensions, slowest first;
    /// at these counts the slow dimensions are split without remainder.
    pub linear_flags: Vec<usize>,
}

/// All process counts up to `max_procs` that divide each space's total size.
pub fn sweetspots(shape: &GridShape, layout: Layout, max_procs: usize) -> SweetSpots {
    assert!(max_procs >= 1);
    let divisors = |space: Space| {
        let total = total_size(space, shape, layout);
        (1..=max_procs).filter(|p| total.is_multiple_of(*p)).collect()
    };

    let mut linear_flags = Vec::new();
    let mut product = 1;
    for &(_, extent) in Space::GLo.compound_dims(shape, layout).iter().rev() {
        product *= extent;
        if product <= max_procs && !linear_flags.contains(&product) {
            linear_flags.push(product);
        }
    }

    SweetSpots {
        g_lo: divisors(Space::GLo),
        xxf_lo: divisors(Space::XxfLo),
        yxf_lo: divisors(Space::YxfLo),
        linear_flags,
    }
}

//! Balanced and unbalanced per-rank decomposition plans.
//!
//! A plan assigns each rank a contiguous range of the flattened compound
//! index space. Balanced plans use a single rounded-up blocksize, which can
//! leave trailing ranks truncated or empty when the total does not divide
//! evenly. Unbalanced plans use at most two blocksizes aligned to whole
//! fast-dimension units so that every rank receives data.

use crate::error::Error;
use crate::layout::Layout;
use crate::shape::GridShape;
use crate::space::{total_size, Space};
use num_rational::Ratio;
use num_traits::ToPrimitive;

/// Default cap on the two-blocksize imbalance fraction.
pub const DEFAULT_MAX_IMBALANCE: f64 = 0.25;

/// Why an unbalanced plan fell back to uniform blocksizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FallbackReason {
    /// The rank count divides the compound extents exactly; the balanced
    /// plan is already optimal.
    ExactDivision,
    /// The two-blocksize imbalance would exceed the requested threshold.
    ImbalanceExceeded,
    /// More ranks than indivisible units; not every rank can receive data.
    TooFewUnits,
}

impl FallbackReason {
    pub fn as_str(self) -> &'static str {
        match self {
            FallbackReason::ExactDivision => "exact-division",
            FallbackReason::ImbalanceExceeded => "imbalance-exceeded",
            FallbackReason::TooFewUnits => "too-few-units",
        }
    }
}

/// How a plan's ranges were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanKind {
    Balanced,
    Unbalanced,
    /// Unbalanced was requested but the balanced ranges were returned.
    FallbackToBalanced(FallbackReason),
}

impl PlanKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PlanKind::Balanced => "balanced",
            PlanKind::Unbalanced => "unbalanced",
            PlanKind::FallbackToBalanced(_) => "unbalanced-fallback-to-balanced",
        }
    }
}

/// Per-rank contiguous ranges over a flattened compound index space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionPlan {
    pub space: Space,
    pub shape: GridShape,
    pub layout: Layout,
    pub nprocs: usize,
    /// Half-open `(low, high)` range per rank, ordered and contiguous.
    pub ranges: Vec<(usize, usize)>,
    pub kind: PlanKind,
    /// Smaller of the two block extents (equal to `large_block` when balanced).
    pub small_block: usize,
    /// Larger of the two block extents.
    pub large_block: usize,
    /// Indivisible fast-dimension unit; unbalanced block extents are
    /// multiples of this. 1 for balanced plans, which may split units.
    pub unit: usize,
}

impl DecompositionPlan {
    pub fn total_size(&self) -> usize {
        total_size(self.space, &self.shape, self.layout)
    }

    pub fn extent(&self, rank: usize) -> usize {
        let (lo, hi) = self.ranges[rank];
        hi - lo
    }

    pub fn empty_ranks(&self) -> usize {
        self.ranges.iter().filter(|(lo, hi)| lo == hi).count()
    }

    /// Fractional surplus of the large block over the small one.
    pub fn imbalance(&self) -> f64 {
        if self.small_block == 0 {
            0.0
        } else {
            (self.large_block - self.small_block) as f64 / self.small_block as f64
        }
    }

    /// Rank owning a flat compound index.
    pub fn owner_of(&self, flat: usize) -> Result<usize, Error> {
        let total = self.total_size();
        if flat >= total {
            return Err(Error::FlatIndexOutOfRange { flat, total });
        }
        Ok(self.ranges.partition_point(|&(_, hi)| hi <= flat))
    }
}

/// Uniform blocksize: the total divided by the rank count, rounded up.
pub fn balanced_blocksize(total: usize, nprocs: usize) -> usize {
    assert!(total >= 1 && nprocs >= 1);
    (total - 1) / nprocs + 1
}

/// Uniform-blocksize plan; trailing ranks may be truncated or empty.
pub fn balanced_plan(
    space: Space,
    shape: &GridShape,
    layout: Layout,
    nprocs: usize,
) -> DecompositionPlan {
    let total = total_size(space, shape, layout);
    let block = balanced_blocksize(total, nprocs);
    let ranges = (0..nprocs)
        .map(|r| ((r * block).min(total), ((r + 1) * block).min(total)))
        .collect();
    DecompositionPlan {
        space,
        shape: *shape,
        layout,
        nprocs,
        ranges,
        kind: PlanKind::Balanced,
        small_block: block,
        large_block: block,
        // balanced plans may split units, so the unit is a single cell
        unit: 1,
    }
}

/// Real-valued used/idle rank counts for a balanced plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdleReport {
    pub nprocs: usize,
    pub total_size: usize,
    pub blocksize: usize,
    /// `total_size / blocksize`, exact.
    pub used_procs: Ratio<u64>,
    /// `nprocs - used_procs`; fractional values indicate a partially
    /// filled trailing rank.
    pub idle_procs: Ratio<u64>,
}

impl IdleReport {
    pub fn used_f64(&self) -> f64 {
        self.used_procs.to_f64().unwrap()
    }

    pub fn idle_f64(&self) -> f64 {
        self.idle_procs.to_f64().unwrap()
    }
}

pub fn idle_report(space: Space, shape: &GridShape, layout: Layout, nprocs: usize) -> IdleReport {
    let total = total_size(space, shape, layout);
    let blocksize = balanced_blocksize(total, nprocs);
    let used = Ratio::new(total as u64, blocksize as u64);
    IdleReport {
        nprocs,
        total_size: total,
        blocksize,
        used_procs: used,
        idle_procs: Ratio::from_integer(nprocs as u64) - used,
    }
}

/// Two-blocksize plan that never splits the fast-dimension unit.
///
/// The rank count is divided through the compound extents from slowest to
/// fastest while the division stays exact; each fully divided combination
/// forms a rank group. The first undivided extent (merged with faster
/// extents until it reaches the group's rank count) is then split into
/// near-equal unit counts, large blocks first. Falls back to the balanced
/// plan when the division is exact, when the imbalance would exceed
/// `max_imbalance`, or when there are fewer units than ranks.
pub fn unbalanced_plan(
    space: Space,
    shape: &GridShape,
    layout: Layout,
    nprocs: usize,
    max_imbalance: f64,
) -> DecompositionPlan {
    assert!(nprocs >= 1);
    let total = total_size(space, shape, layout);

    // Slowest to fastest.
    let dims: Vec<usize> = space
        .compound_dims(shape, layout)
        .iter()
        .rev()
        .map(|&(_, e)| e)
        .collect();

    let fallback = |reason| {
        let mut plan = balanced_plan(space, shape, layout, nprocs);
        plan.kind = PlanKind::FallbackToBalanced(reason);
        plan
    };

    let mut running = nprocs;
    let mut idx = 0;
    while idx < dims.len() && running.is_multiple_of(dims[idx]) {
        running /= dims[idx];
        idx += 1;
    }
    if idx == dims.len() {
        return fallback(if running == 1 {
            FallbackReason::ExactDivision
        } else {
            FallbackReason::TooFewUnits
        });
    }

    let groups = nprocs / running;
    let ranks_per_group = running;

    // Merge the first undivided extent with faster ones until it can cover
    // the group's ranks.
    let mut units = dims[idx];
    idx += 1;
    while units < ranks_per_group && idx < dims.len() {
        units *= dims[idx];
        idx += 1;
    }
    if units < ranks_per_group {
        return fallback(FallbackReason::TooFewUnits);
    }
    let unit: usize = dims[idx..].iter().product();

    let large_units = units.div_ceil(ranks_per_group);
    let small_units = units / ranks_per_group;
    let remainder = units % ranks_per_group;
    let small_block = small_units * unit;
    let large_block = large_units * unit;
    let imbalance = (large_block - small_block) as f64 / small_block as f64;
    if imbalance > max_imbalance {
        return fallback(FallbackReason::ImbalanceExceeded);
    }

    let mut ranges = Vec::with_capacity(nprocs);
    let mut offset = 0;
    for _ in 0..groups {
        for j in 0..ranks_per_group {
            let block = if j < remainder { large_block } else { small_block };
            ranges.push((offset, offset + block));
            offset += block;
        }
    }
    debug_assert_eq!(offset, total);

    DecompositionPlan {
        space,
        shape: *shape,
        layout,
        nprocs,
        ranges,
        kind: PlanKind::Unbalanced,
        small_block,
        large_block,
        unit,
    }
}

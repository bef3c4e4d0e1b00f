//! Exact and analytic modelling of the data redistribution between plans.
//!
//! [`exact_transfer_map`] is a brute-force oracle: it resolves the owner of
//! every shared-domain element in both plans and accumulates a per
//! (source rank, destination rank) element-count matrix.
//! [`analytic_estimate`] evaluates the closed-form transfer prediction
//! driven by the difference in idle-process counts between the two FFT
//! layouts, and [`compare_estimate`] reports the relative error between the
//! two.

use crate::error::Error;
use crate::layout::Layout;
use crate::plan::{balanced_plan, idle_report, DecompositionPlan};
use crate::shape::GridShape;
use crate::space::{total_size, Axis, Indexer, Space};
use num_rational::Ratio;
use num_traits::ToPrimitive;

/// Default cap on the shared-domain element count for the exhaustive oracle.
pub const DEFAULT_SIZE_GUARD: usize = 100_000_000;

/// A redistribution between two of the three spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    GToXxf,
    XxfToG,
    XxfToYxf,
    YxfToXxf,
}

impl Transform {
    pub const ALL: [Transform; 4] = [
        Transform::GToXxf,
        Transform::XxfToG,
        Transform::XxfToYxf,
        Transform::YxfToXxf,
    ];

    pub fn src(self) -> Space {
        match self {
            Transform::GToXxf => Space::GLo,
            Transform::XxfToG | Transform::XxfToYxf => Space::XxfLo,
            Transform::YxfToXxf => Space::YxfLo,
        }
    }

    pub fn dst(self) -> Space {
        match self {
            Transform::GToXxf | Transform::YxfToXxf => Space::XxfLo,
            Transform::XxfToG => Space::GLo,
            Transform::XxfToYxf => Space::YxfLo,
        }
    }

    pub fn inverse(self) -> Transform {
        match self {
            Transform::GToXxf => Transform::XxfToG,
            Transform::XxfToG => Transform::GToXxf,
            Transform::XxfToYxf => Transform::YxfToXxf,
            Transform::YxfToXxf => Transform::XxfToYxf,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Transform::GToXxf => "g2xxf",
            Transform::XxfToG => "xxf2g",
            Transform::XxfToYxf => "xxf2yxf",
            Transform::YxfToXxf => "yxf2xxf",
        }
    }
}

impl std::fmt::Display for Transform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Transform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Transform::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::UnknownTransform(s.to_string()))
    }
}

/// Per-axis extents of the element set both endpoints of a transform
/// actually store. Dealiasing padding beyond these extents is generated
/// locally and never communicated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SharedDomain {
    pub x: usize,
    pub y: usize,
    pub ig: usize,
    pub isgn: usize,
    pub l: usize,
    pub e: usize,
    pub s: usize,
}

impl SharedDomain {
    pub fn extent(&self, axis: Axis) -> usize {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Ig => self.ig,
            Axis::Isgn => self.isgn,
            Axis::L => self.l,
            Axis::E => self.e,
            Axis::S => self.s,
        }
    }

    /// Total number of shared elements.
    pub fn size(&self) -> usize {
        self.x * self.y * self.ig * self.isgn * self.l * self.e * self.s
    }
}

/// Shared element set of a transform.
///
/// Between `g_lo` and `xxf_lo` only the dealiased `x < nakx` modes exist on
/// both sides; between `xxf_lo` and `yxf_lo` the full `x < inx` range is
/// shared but only `y < naky` is.
pub fn shared_domain(transform: Transform, shape: &GridShape) -> SharedDomain {
    let x = match transform {
        Transform::GToXxf | Transform::XxfToG => shape.nakx,
        Transform::XxfToYxf | Transform::YxfToXxf => shape.inx,
    };
    SharedDomain {
        x,
        y: shape.naky,
        ig: shape.nig,
        isgn: shape.nsign,
        l: shape.nlambda,
        e: shape.negrid,
        s: shape.nspec,
    }
}

/// Exact per-(source rank, destination rank) element counts for a
/// redistribution between two plans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferMap {
    pub nprocs_src: usize,
    pub nprocs_dst: usize,
    counts: Vec<usize>,
}

impl TransferMap {
    fn zeros(nprocs_src: usize, nprocs_dst: usize) -> Self {
        TransferMap {
            nprocs_src,
            nprocs_dst,
            counts: vec![0; nprocs_src * nprocs_dst],
        }
    }

    pub fn count(&self, src: usize, dst: usize) -> usize {
        self.counts[src * self.nprocs_dst + dst]
    }

    fn add(&mut self, src: usize, dst: usize, n: usize) {
        self.counts[src * self.nprocs_dst + dst] += n;
    }

    /// Total elements covered by the map (the shared-domain size).
    pub fn total_elements(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Elements that stay on their rank.
    pub fn diagonal_elements(&self) -> usize {
        (0..self.nprocs_src.min(self.nprocs_dst))
            .map(|r| self.count(r, r))
            .sum()
    }

    /// Elements that move between ranks.
    pub fn off_diagonal_elements(&self) -> usize {
        self.total_elements() - self.diagonal_elements()
    }

    /// Nonzero off-diagonal (src, dst) pairs.
    pub fn message_count(&self) -> usize {
        let mut n = 0;
        for src in 0..self.nprocs_src {
            for dst in 0..self.nprocs_dst {
                if src != dst && self.count(src, dst) > 0 {
                    n += 1;
                }
            }
        }
        n
    }

    /// Bytes moved between ranks.
    pub fn bytes(&self, element_bytes: usize) -> usize {
        self.off_diagonal_elements() * element_bytes
    }

    /// Fraction of the shared domain that stays on its rank.
    pub fn diagonal_fraction(&self) -> f64 {
        let total = self.total_elements();
        if total == 0 {
            1.0
        } else {
            self.diagonal_elements() as f64 / total as f64
        }
    }

    /// Elements each source rank sends to other ranks.
    pub fn sends_per_rank(&self) -> Vec<usize> {
        (0..self.nprocs_src)
            .map(|src| {
                let stays = if src < self.nprocs_dst {
                    self.count(src, src)
                } else {
                    0
                };
                self.row_sum(src) - stays
            })
            .collect()
    }

    pub fn row_sum(&self, src: usize) -> usize {
        (0..self.nprocs_dst).map(|dst| self.count(src, dst)).sum()
    }

    pub fn col_sum(&self, dst: usize) -> usize {
        (0..self.nprocs_src).map(|src| self.count(src, dst)).sum()
    }

    /// Largest per-rank send volume.
    pub fn max_send(&self) -> usize {
        self.sends_per_rank().into_iter().max().unwrap_or(0)
    }

    pub fn transposed(&self) -> TransferMap {
        let mut out = TransferMap::zeros(self.nprocs_dst, self.nprocs_src);
        for src in 0..self.nprocs_src {
            for dst in 0..self.nprocs_dst {
                let n = self.count(src, dst);
                if n > 0 {
                    out.add(dst, src, n);
                }
            }
        }
        out
    }

    /// Nonzero entries as `(src, dst, elements)`, row-major order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.nprocs_src).flat_map(move |src| {
            (0..self.nprocs_dst).filter_map(move |dst| {
                let n = self.count(src, dst);
                (n > 0).then_some((src, dst, n))
            })
        })
    }
}

// Mixed-radix odometer over the given extents. Returns false once all
// combinations have been visited.
fn advance(digits: &mut [usize], extents: &[usize]) -> bool {
    for (d, &e) in digits.iter_mut().zip(extents) {
        *d += 1;
        if *d < e {
            return true;
        }
        *d = 0;
    }
    false
}

/// Brute-force redistribution oracle.
///
/// Every shared-domain element is attributed to its owner in both plans.
/// Axes compounded in only one of the two spaces are histogrammed per plan
/// and combined as an outer product, which is exact because ownership does
/// not depend on the other plan's axes.
pub fn exact_transfer_map(
    src_plan: &DecompositionPlan,
    dst_plan: &DecompositionPlan,
    transform: Transform,
    size_guard: usize,
) -> Result<TransferMap, Error> {
    if src_plan.space != transform.src() || dst_plan.space != transform.dst() {
        return Err(Error::PlanMismatch(format!(
            "transform {} needs plans over {} -> {}, got {} -> {}",
            transform,
            transform.src(),
            transform.dst(),
            src_plan.space,
            dst_plan.space
        )));
    }
    if src_plan.shape != dst_plan.shape {
        return Err(Error::PlanMismatch(
            "plans were built over different shapes".into(),
        ));
    }
    if src_plan.layout != dst_plan.layout {
        return Err(Error::PlanMismatch(
            "plans were built over different layouts".into(),
        ));
    }

    let shape = &src_plan.shape;
    let layout = src_plan.layout;
    let shared = shared_domain(transform, shape);
    if shared.size() > size_guard {
        return Err(Error::SizeGuardExceeded {
            cells: shared.size(),
            guard: size_guard,
        });
    }

    let src_ix = Indexer::new(src_plan.space, shape, layout);
    let dst_ix = Indexer::new(dst_plan.space, shape, layout);

    // (axis, shared extent, stride) per category. Strides are taken over
    // each space's own compound dims; shared extents never exceed them.
    let mut common = Vec::new(); // (extent, src_stride, dst_stride)
    let mut src_only = Vec::new(); // (extent, src_stride)
    let mut dst_only = Vec::new(); // (extent, dst_stride)
    let mut multiplier = 1usize;
    for axis in Axis::ALL {
        let extent = shared.extent(axis);
        match (src_ix.stride_of(axis), dst_ix.stride_of(axis)) {
            (Some(ss), Some(ds)) => common.push((extent, ss, ds)),
            (Some(ss), None) => src_only.push((extent, ss)),
            (None, Some(ds)) => dst_only.push((extent, ds)),
            (None, None) => multiplier *= extent,
        }
    }

    let mut map = TransferMap::zeros(src_plan.nprocs, dst_plan.nprocs);
    let common_extents: Vec<usize> = common.iter().map(|&(e, _, _)| e).collect();
    let mut digits = vec![0usize; common.len()];

    // Reused owner histograms, kept as small sorted-insertion vectors.
    let mut src_hist: Vec<(usize, usize)> = Vec::new();
    let mut dst_hist: Vec<(usize, usize)> = Vec::new();

    loop {
        let src_base: usize = digits
            .iter()
            .zip(&common)
            .map(|(&d, &(_, ss, _))| d * ss)
            .sum();
        let dst_base: usize = digits
            .iter()
            .zip(&common)
            .map(|(&d, &(_, _, ds))| d * ds)
            .sum();

        owner_histogram(src_plan, src_base, &src_only, &mut src_hist)?;
        owner_histogram(dst_plan, dst_base, &dst_only, &mut dst_hist)?;
        for &(src_rank, src_n) in &src_hist {
            for &(dst_rank, dst_n) in &dst_hist {
                map.add(src_rank, dst_rank, src_n * dst_n * multiplier);
            }
        }

        if !advance(&mut digits, &common_extents) {
            break;
        }
    }

    Ok(map)
}

// Histogram of plan owners over all combinations of the given axes,
// offset by a fixed base flat index.
fn owner_histogram(
    plan: &DecompositionPlan,
    base: usize,
    axes: &[(usize, usize)],
    hist: &mut Vec<(usize, usize)>,
) -> Result<(), Error> {
    hist.clear();
    let extents: Vec<usize> = axes.iter().map(|&(e, _)| e).collect();
    let mut digits = vec![0usize; axes.len()];
    loop {
        let flat = base
            + digits
                .iter()
                .zip(axes)
                .map(|(&d, &(_, stride))| d * stride)
                .sum::<usize>();
        let rank = plan.owner_of(flat)?;
        match hist.iter_mut().find(|(r, _)| *r == rank) {
            Some((_, n)) => *n += 1,
            None => hist.push((rank, 1)),
        }
        if !advance(&mut digits, &extents) {
            return Ok(());
        }
    }
}

/// Closed-form prediction of the `xxf_lo` to `yxf_lo` transfer volume.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferEstimate {
    pub xxf_idle: f64,
    pub yxf_idle: f64,
    /// `|yxf_idle - xxf_idle|`.
    pub delta_idle_proc: f64,
    /// `inx * xxf_totalsize`, the full redistribution volume in elements.
    pub total_redist_data: usize,
    /// Predicted elements inserted into the network.
    pub total_trans_data: f64,
}

/// The two-branch transfer formula. Both branches agree at `delta = 1`,
/// where half of the redistribution volume moves.
pub fn trans_data_from_delta(delta: f64, total_redist_data: f64) -> f64 {
    if delta <= 1.0 {
        0.5 * delta * total_redist_data
    } else {
        (1.0 - 1.0 / (2.0 * delta)) * total_redist_data
    }
}

/// Evaluates the analytic transfer estimate for balanced decompositions of
/// `xxf_lo` and `yxf_lo` at the given rank count.
pub fn analytic_estimate(shape: &GridShape, layout: Layout, nprocs: usize) -> TransferEstimate {
    let xxf = idle_report(Space::XxfLo, shape, layout, nprocs);
    let yxf = idle_report(Space::YxfLo, shape, layout, nprocs);
    let delta_exact = if yxf.idle_procs >= xxf.idle_procs {
        yxf.idle_procs - xxf.idle_procs
    } else {
        xxf.idle_procs - yxf.idle_procs
    };
    let delta = delta_exact.to_f64().unwrap();
    let total_redist_data = shape.inx * total_size(Space::XxfLo, shape, layout);
    let total_trans_data = if delta_exact <= Ratio::from_integer(1) {
        0.5 * delta * total_redist_data as f64
    } else {
        (1.0 - 1.0 / (2.0 * delta)) * total_redist_data as f64
    };
    TransferEstimate {
        xxf_idle: xxf.idle_f64(),
        yxf_idle: yxf.idle_f64(),
        delta_idle_proc: delta,
        total_redist_data,
        total_trans_data,
    }
}

/// Analytic estimate versus the exhaustive oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub estimate: TransferEstimate,
    /// Off-diagonal element count of the exact `xxf_lo` to `yxf_lo` map
    /// under balanced plans.
    pub oracle_off_diagonal: usize,
    /// `(estimate - oracle) / oracle`, signed.
    pub relative_error: f64,
}

/// Runs the oracle on balanced plans and compares it with the estimate.
pub fn compare_estimate(
    shape: &GridShape,
    layout: Layout,
    nprocs: usize,
    size_guard: usize,
) -> Result<ComparisonReport, Error> {
    let estimate = analytic_estimate(shape, layout, nprocs);
    let src = balanced_plan(Space::XxfLo, shape, layout, nprocs);
    let dst = balanced_plan(Space::YxfLo, shape, layout, nprocs);
    let map = exact_transfer_map(&src, &dst, Transform::XxfToYxf, size_guard)?;
    let oracle = map.off_diagonal_elements();
    let relative_error = if oracle == 0 {
        if estimate.total_trans_data == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (estimate.total_trans_data - oracle as f64) / oracle as f64
    };
    Ok(ComparisonReport {
        estimate,
        oracle_off_diagonal: oracle,
        relative_error,
    })
}

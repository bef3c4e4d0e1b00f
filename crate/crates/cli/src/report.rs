//! Report documents emitted by every subcommand.
//!
//! All real values are rounded to six fractional digits before
//! serialization so that identical invocations produce byte-identical
//! output in every format.

use decomp_core::{
    DecompositionPlan, GridShape, IdleReport, PlanKind, SweetSpots, TransferEstimate, TransferMap,
};
use serde::{Serialize, Serializer};
use std::fmt::Write as _;

/// Real value with fixed six-digit decimal precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl Real {
    fn rounded(self) -> f64 {
        (self.0 * 1e6).round() / 1e6
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.rounded())
    }
}

impl std::fmt::Display for Real {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:.6}", self.0)
    }
}

#[derive(Debug, Serialize)]
pub struct ShapeReport {
    pub nakx: usize,
    pub naky: usize,
    pub inx: usize,
    pub iny: usize,
    pub nig: usize,
    pub nsign: usize,
    pub nlambda: usize,
    pub negrid: usize,
    pub nspec: usize,
    pub element_bytes: usize,
}

impl From<&GridShape> for ShapeReport {
    fn from(s: &GridShape) -> Self {
        ShapeReport {
            nakx: s.nakx,
            naky: s.naky,
            inx: s.inx,
            iny: s.iny,
            nig: s.nig,
            nsign: s.nsign,
            nlambda: s.nlambda,
            negrid: s.negrid,
            nspec: s.nspec,
            element_bytes: s.element_bytes,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SpaceReport {
    pub space: String,
    pub total_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocksize: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub used_procs: Option<Real>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub idle_procs: Option<Real>,
}

impl SpaceReport {
    pub fn with_idle(report: &IdleReport, space: decomp_core::Space) -> Self {
        SpaceReport {
            space: space.to_string(),
            total_size: report.total_size,
            blocksize: Some(report.blocksize),
            used_procs: Some(Real(report.used_f64())),
            idle_procs: Some(Real(report.idle_f64())),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RankRange {
    pub rank: usize,
    pub lo: usize,
    pub hi: usize,
    pub extent: usize,
}

#[derive(Debug, Serialize)]
pub struct PlanReport {
    pub space: String,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fallback_reason: Option<String>,
    pub blocksize_small: usize,
    pub blocksize_large: usize,
    pub unit: usize,
    pub imbalance: Real,
    pub empty_ranks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ranks: Option<Vec<RankRange>>,
}

impl PlanReport {
    pub fn new(plan: &DecompositionPlan, verbose: bool) -> Self {
        let fallback_reason = match plan.kind {
            PlanKind::FallbackToBalanced(reason) => Some(reason.as_str().to_string()),
            _ => None,
        };
        let ranks = verbose.then(|| {
            plan.ranges
                .iter()
                .enumerate()
                .map(|(rank, &(lo, hi))| RankRange {
                    rank,
                    lo,
                    hi,
                    extent: hi - lo,
                })
                .collect()
        });
        PlanReport {
            space: plan.space.to_string(),
            kind: plan.kind.as_str().to_string(),
            fallback_reason,
            blocksize_small: plan.small_block,
            blocksize_large: plan.large_block,
            unit: plan.unit,
            imbalance: Real(plan.imbalance()),
            empty_ranks: plan.empty_ranks(),
            ranks,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SweetSpotsReport {
    pub max_procs: usize,
    pub g_lo: Vec<usize>,
    pub xxf_lo: Vec<usize>,
    pub yxf_lo: Vec<usize>,
    pub linear_flags: Vec<usize>,
}

impl SweetSpotsReport {
    pub fn new(spots: &SweetSpots, max_procs: usize) -> Self {
        SweetSpotsReport {
            max_procs,
            g_lo: spots.g_lo.clone(),
            xxf_lo: spots.xxf_lo.clone(),
            yxf_lo: spots.yxf_lo.clone(),
            linear_flags: spots.linear_flags.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EstimateReport {
    pub xxf_idle: Real,
    pub yxf_idle: Real,
    pub delta_idle_proc: Real,
    pub total_redist_data: usize,
    pub total_trans_data: Real,
    /// Fraction of the redistribution volume predicted to move.
    pub transferred_fraction: Real,
}

impl From<&TransferEstimate> for EstimateReport {
    fn from(e: &TransferEstimate) -> Self {
        EstimateReport {
            xxf_idle: Real(e.xxf_idle),
            yxf_idle: Real(e.yxf_idle),
            delta_idle_proc: Real(e.delta_idle_proc),
            total_redist_data: e.total_redist_data,
            total_trans_data: Real(e.total_trans_data),
            transferred_fraction: Real(e.total_trans_data / e.total_redist_data as f64),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TransferReport {
    pub transform: String,
    pub mode: String,
    pub total_elements: usize,
    pub off_diagonal_elements: usize,
    pub bytes: usize,
    pub message_count: usize,
    pub max_send: usize,
    pub diagonal_fraction: Real,
    /// Nonzero matrix entries, emitted only by the CSV format.
    #[serde(skip)]
    pub matrix: Vec<(usize, usize, usize)>,
}

impl TransferReport {
    pub fn new(map: &TransferMap, transform: &str, mode: &str, element_bytes: usize) -> Self {
        TransferReport {
            transform: transform.to_string(),
            mode: mode.to_string(),
            total_elements: map.total_elements(),
            off_diagonal_elements: map.off_diagonal_elements(),
            bytes: map.bytes(element_bytes),
            message_count: map.message_count(),
            max_send: map.max_send(),
            diagonal_fraction: Real(map.diagonal_fraction()),
            matrix: map.nonzero_entries().collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CompareSection {
    pub oracle_off_diagonal: usize,
    pub estimated_trans_data: Real,
    pub relative_error: Real,
}

#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub command: String,
    pub layout: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nprocs: Option<usize>,
    pub shape: ShapeReport,
    pub spaces: Vec<SpaceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<PlanReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweetspots: Option<SweetSpotsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<EstimateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transfer: Option<TransferReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<CompareSection>,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serialization");
        out.push('\n');
        out
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let s = &self.shape;
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "layout:  {}", self.layout);
        if let Some(nprocs) = self.nprocs {
            let _ = writeln!(out, "nprocs:  {nprocs}");
        }
        let _ = writeln!(
            out,
            "shape:   nakx={} naky={} inx={} iny={} nig={} nsign={} nlambda={} negrid={} nspec={} element_bytes={}",
            s.nakx, s.naky, s.inx, s.iny, s.nig, s.nsign, s.nlambda, s.negrid, s.nspec, s.element_bytes
        );
        if !self.spaces.is_empty() {
            let _ = writeln!(out, "spaces:");
            for sp in &self.spaces {
                let mut line = format!("  {:<7} total_size={}", sp.space, sp.total_size);
                if let Some(b) = sp.blocksize {
                    let _ = write!(line, " blocksize={b}");
                }
                if let (Some(u), Some(i)) = (sp.used_procs, sp.idle_procs) {
                    let _ = write!(line, " used_procs={u} idle_procs={i}");
                }
                let _ = writeln!(out, "{line}");
            }
        }
        if let Some(p) = &self.plan {
            let _ = writeln!(out, "plan:");
            let _ = writeln!(out, "  space: {}", p.space);
            let _ = writeln!(out, "  kind: {}", p.kind);
            if let Some(reason) = &p.fallback_reason {
                let _ = writeln!(out, "  fallback_reason: {reason}");
            }
            let _ = writeln!(
                out,
                "  blocksizes: small={} large={} unit={}",
                p.blocksize_small, p.blocksize_large, p.unit
            );
            let _ = writeln!(out, "  imbalance: {}", p.imbalance);
            let _ = writeln!(out, "  empty_ranks: {}", p.empty_ranks);
            if let Some(ranks) = &p.ranks {
                let _ = writeln!(out, "  rank ranges:");
                for r in ranks {
                    let _ = writeln!(
                        out,
                        "    rank {:>6}: [{}, {}) extent {}",
                        r.rank, r.lo, r.hi, r.extent
                    );
                }
            }
        }
        if let Some(sw) = &self.sweetspots {
            let _ = writeln!(out, "sweetspots (max_procs {}):", sw.max_procs);
            let _ = writeln!(out, "  g_lo:   {:?}", sw.g_lo);
            let _ = writeln!(out, "  xxf_lo: {:?}", sw.xxf_lo);
            let _ = writeln!(out, "  yxf_lo: {:?}", sw.yxf_lo);
            let _ = writeln!(out, "  linear_flags: {:?}", sw.linear_flags);
        }
        if let Some(e) = &self.estimate {
            let _ = writeln!(out, "estimate:");
            let _ = writeln!(out, "  xxf_idle: {}", e.xxf_idle);
            let _ = writeln!(out, "  yxf_idle: {}", e.yxf_idle);
            let _ = writeln!(out, "  delta_idle_proc: {}", e.delta_idle_proc);
            let _ = writeln!(out, "  total_redist_data: {}", e.total_redist_data);
            let _ = writeln!(out, "  total_trans_data: {}", e.total_trans_data);
            let _ = writeln!(out, "  transferred_fraction: {}", e.transferred_fraction);
        }
        if let Some(t) = &self.transfer {
            let _ = writeln!(out, "transfer ({} {}):", t.transform, t.mode);
            let _ = writeln!(out, "  total_elements: {}", t.total_elements);
            let _ = writeln!(out, "  off_diagonal_elements: {}", t.off_diagonal_elements);
            let _ = writeln!(out, "  bytes: {}", t.bytes);
            let _ = writeln!(out, "  message_count: {}", t.message_count);
            let _ = writeln!(out, "  max_send: {}", t.max_send);
            let _ = writeln!(out, "  diagonal_fraction: {}", t.diagonal_fraction);
        }
        if let Some(c) = &self.comparison {
            let _ = writeln!(out, "comparison:");
            let _ = writeln!(out, "  oracle_off_diagonal: {}", c.oracle_off_diagonal);
            let _ = writeln!(out, "  estimated_trans_data: {}", c.estimated_trans_data);
            let _ = writeln!(out, "  relative_error: {}", c.relative_error);
        }
        out
    }

    pub fn to_csv(&self, element_bytes: usize) -> String {
        let mut out = String::new();
        if let Some(t) = &self.transfer {
            let _ = writeln!(out, "src_rank,dst_rank,elements,bytes");
            for &(src, dst, elements) in &t.matrix {
                let _ = writeln!(out, "{src},{dst},{elements},{}", elements * element_bytes);
            }
        } else if let Some(p) = &self.plan {
            let _ = writeln!(out, "rank,lo,hi,extent");
            if let Some(ranks) = &p.ranks {
                for r in ranks {
                    let _ = writeln!(out, "{},{},{},{}", r.rank, r.lo, r.hi, r.extent);
                }
            }
        } else if let Some(sw) = &self.sweetspots {
            let _ = writeln!(out, "list,nprocs");
            for (name, list) in [
                ("g_lo", &sw.g_lo),
                ("xxf_lo", &sw.xxf_lo),
                ("yxf_lo", &sw.yxf_lo),
                ("linear_flags", &sw.linear_flags),
            ] {
                for p in list {
                    let _ = writeln!(out, "{name},{p}");
                }
            }
        } else {
            let _ = writeln!(out, "key,value");
            if let Some(e) = &self.estimate {
                let _ = writeln!(out, "xxf_idle,{}", e.xxf_idle);
                let _ = writeln!(out, "yxf_idle,{}", e.yxf_idle);
                let _ = writeln!(out, "delta_idle_proc,{}", e.delta_idle_proc);
                let _ = writeln!(out, "total_redist_data,{}", e.total_redist_data);
                let _ = writeln!(out, "total_trans_data,{}", e.total_trans_data);
                let _ = writeln!(out, "transferred_fraction,{}", e.transferred_fraction);
            }
            if let Some(c) = &self.comparison {
                let _ = writeln!(out, "oracle_off_diagonal,{}", c.oracle_off_diagonal);
                let _ = writeln!(out, "estimated_trans_data,{}", c.estimated_trans_data);
                let _ = writeln!(out, "relative_error,{}", c.relative_error);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_rounds_to_six_digits() {
        let v = serde_json::to_string(&Real(1.546_827_794_561_933_5)).unwrap();
        assert_eq!(v, "1.546828");
        assert_eq!(Real(0.05).to_string(), "0.050000");
    }
}

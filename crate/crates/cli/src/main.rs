//! Command-line front end for decomposition planning and redistribution
//! modelling.
//!
//! Exit codes: 0 success, 2 usage error, 3 size-guard error, 4 config
//! validation error.

mod config;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use decomp_core::{
    analytic_estimate, balanced_plan, compare_estimate, exact_transfer_map, idle_report,
    sweetspots, unbalanced_plan, DecompositionPlan, Error as CoreError, GridShape, Layout, Space,
    Transform, DEFAULT_MAX_IMBALANCE, DEFAULT_SIZE_GUARD,
};
use std::path::PathBuf;
use std::process::ExitCode;

use config::DomainConfig;
use report::{
    CompareSection, EstimateReport, PlanReport, ReportDocument, SpaceReport, SweetSpotsReport,
    TransferReport,
};

#[derive(Debug)]
pub enum CliError {
    /// Bad flag combination or unknown token; exit code 2.
    Usage(String),
    /// Transfer simulation would exceed the size guard; exit code 3.
    SizeGuard(String),
    /// Unreadable or invalid configuration; exit code 4.
    Config(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::SizeGuard(_) => 3,
            CliError::Config(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::SizeGuard(m) | CliError::Config(m) => m,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::SizeGuardExceeded { .. } => CliError::SizeGuard(e.to_string()),
            CoreError::InvalidShape(_) => CliError::Config(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Path to the JSON domain configuration.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Data layout token; overrides the config default.
    #[arg(long, value_name = "TOKEN")]
    layout: Option<String>,
    /// Number of ranks; overrides the config default.
    #[arg(long, value_name = "N")]
    nprocs: Option<usize>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Include per-rank detail where applicable.
    #[arg(long)]
    verbose: bool,
}

#[derive(Debug, Args)]
struct UnbalancedArgs {
    /// Use the two-blocksize decomposition instead of the balanced one.
    #[arg(long)]
    unbalanced: bool,
    /// Largest tolerated relative block-size spread before falling back.
    #[arg(long, value_name = "F", default_value_t = DEFAULT_MAX_IMBALANCE)]
    max_imbalance: f64,
}

#[derive(Debug, Parser)]
#[command(
    name = "decomp",
    about = "Plan 5-D domain decompositions and model redistribution traffic",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the block decomposition of one index space.
    Plan {
        #[command(flatten)]
        common: CommonArgs,
        /// Index space to decompose.
        #[arg(long, default_value = "g_lo", value_name = "SPACE")]
        space: String,
        #[command(flatten)]
        unbalanced: UnbalancedArgs,
    },
    /// List rank counts that divide each space without remainder.
    Sweetspots {
        #[command(flatten)]
        common: CommonArgs,
        /// Largest rank count to consider.
        #[arg(long, value_name = "N", default_value_t = 4096)]
        max_procs: usize,
    },
    /// Analytic transfer-volume estimate for the xxf/yxf redistribution.
    Estimate {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Exact rank-to-rank transfer matrix for one redistribution.
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
        /// Redistribution to simulate.
        #[arg(long, default_value = "xxf2yxf", value_name = "TRANSFORM")]
        transform: String,
        #[command(flatten)]
        unbalanced: UnbalancedArgs,
        /// Refuse shared domains larger than this many elements.
        #[arg(long, value_name = "N", default_value_t = DEFAULT_SIZE_GUARD)]
        size_guard: usize,
    },
    /// Analytic estimate checked against the exact transfer matrix.
    Compare {
        #[command(flatten)]
        common: CommonArgs,
        /// Refuse shared domains larger than this many elements.
        #[arg(long, value_name = "N", default_value_t = DEFAULT_SIZE_GUARD)]
        size_guard: usize,
    },
}

struct Resolved {
    shape: GridShape,
    layout: Layout,
    nprocs: Option<usize>,
}

fn resolve(common: &CommonArgs) -> Result<Resolved, CliError> {
    let cfg = DomainConfig::load(&common.config)?;
    let shape = cfg.shape()?;
    let layout = match &common.layout {
        Some(token) => token
            .parse()
            .map_err(|e: CoreError| CliError::Usage(e.to_string()))?,
        None => cfg.default_layout()?.unwrap_or(Layout::Lexys),
    };
    let nprocs = common.nprocs.or(cfg.nprocs);
    Ok(Resolved {
        shape,
        layout,
        nprocs,
    })
}

fn require_nprocs(r: &Resolved) -> Result<usize, CliError> {
    match r.nprocs {
        Some(n) if n >= 1 => Ok(n),
        Some(_) => Err(CliError::Usage("--nprocs must be at least 1".into())),
        None => Err(CliError::Usage(
            "--nprocs is required (or set nprocs in the config)".into(),
        )),
    }
}

fn space_reports(r: &Resolved) -> Vec<SpaceReport> {
    Space::ALL
        .into_iter()
        .map(|space| match r.nprocs {
            Some(n) if n >= 1 => {
                SpaceReport::with_idle(&idle_report(space, &r.shape, r.layout, n), space)
            }
            _ => SpaceReport {
                space: space.to_string(),
                total_size: decomp_core::total_size(space, &r.shape, r.layout),
                blocksize: None,
                used_procs: None,
                idle_procs: None,
            },
        })
        .collect()
}

fn base_document(command: &str, r: &Resolved) -> ReportDocument {
    ReportDocument {
        command: command.to_string(),
        layout: r.layout.to_string(),
        nprocs: r.nprocs,
        shape: (&r.shape).into(),
        spaces: space_reports(r),
        plan: None,
        sweetspots: None,
        estimate: None,
        transfer: None,
        comparison: None,
    }
}

fn build_plan(
    space: Space,
    r: &Resolved,
    nprocs: usize,
    unbalanced: &UnbalancedArgs,
) -> Result<DecompositionPlan, CliError> {
    if !(unbalanced.max_imbalance.is_finite() && unbalanced.max_imbalance >= 0.0) {
        return Err(CliError::Usage(
            "--max-imbalance must be a non-negative finite number".into(),
        ));
    }
    Ok(if unbalanced.unbalanced {
        unbalanced_plan(space, &r.shape, r.layout, nprocs, unbalanced.max_imbalance)
    } else {
        balanced_plan(space, &r.shape, r.layout, nprocs)
    })
}

fn run(cli: Cli) -> Result<(ReportDocument, Format, usize), CliError> {
    match &cli.command {
        Command::Plan {
            common,
            space,
            unbalanced,
        } => {
            let r = resolve(common)?;
            let nprocs = require_nprocs(&r)?;
            let space: Space = space
                .parse()
                .map_err(|e: CoreError| CliError::Usage(e.to_string()))?;
            let plan = build_plan(space, &r, nprocs, unbalanced)?;
            let mut doc = base_document("plan", &r);
            // the CSV format always needs the rank table
            doc.plan = Some(PlanReport::new(
                &plan,
                common.verbose || common.format == Format::Csv,
            ));
            Ok((doc, common.format, r.shape.element_bytes))
        }
        Command::Sweetspots { common, max_procs } => {
            let r = resolve(common)?;
            if *max_procs < 1 {
                return Err(CliError::Usage("--max-procs must be at least 1".into()));
            }
            let spots = sweetspots(&r.shape, r.layout, *max_procs);
            let mut doc = base_document("sweetspots", &r);
            doc.sweetspots = Some(SweetSpotsReport::new(&spots, *max_procs));
            Ok((doc, common.format, r.shape.element_bytes))
        }
        Command::Estimate { common } => {
            let r = resolve(common)?;
            let nprocs = require_nprocs(&r)?;
            let estimate = analytic_estimate(&r.shape, r.layout, nprocs);
            let mut doc = base_document("estimate", &r);
            doc.estimate = Some((&estimate).into());
            Ok((doc, common.format, r.shape.element_bytes))
        }
        Command::Simulate {
            common,
            transform,
            unbalanced,
            size_guard,
        } => {
            let r = resolve(common)?;
            let nprocs = require_nprocs(&r)?;
            let transform: Transform = transform
                .parse()
                .map_err(|e: CoreError| CliError::Usage(e.to_string()))?;
            let src = build_plan(transform.src(), &r, nprocs, unbalanced)?;
            let dst = build_plan(transform.dst(), &r, nprocs, unbalanced)?;
            let map = exact_transfer_map(&src, &dst, transform, *size_guard)?;
            let mode = if unbalanced.unbalanced {
                "unbalanced"
            } else {
                "balanced"
            };
            let mut doc = base_document("simulate", &r);
            doc.transfer = Some(TransferReport::new(
                &map,
                transform.as_str(),
                mode,
                r.shape.element_bytes,
            ));
            Ok((doc, common.format, r.shape.element_bytes))
        }
        Command::Compare { common, size_guard } => {
            let r = resolve(common)?;
            let nprocs = require_nprocs(&r)?;
            let cmp = compare_estimate(&r.shape, r.layout, nprocs, *size_guard)?;
            let mut doc = base_document("compare", &r);
            doc.estimate = Some(EstimateReport::from(&cmp.estimate));
            doc.comparison = Some(CompareSection {
                oracle_off_diagonal: cmp.oracle_off_diagonal,
                estimated_trans_data: report::Real(cmp.estimate.total_trans_data),
                relative_error: report::Real(cmp.relative_error),
            });
            Ok((doc, common.format, r.shape.element_bytes))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((doc, format, element_bytes)) => {
            let rendered = match format {
                Format::Human => doc.to_human(),
                Format::Json => doc.to_json(),
                Format::Csv => doc.to_csv(element_bytes),
            };
            print!("{rendered}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

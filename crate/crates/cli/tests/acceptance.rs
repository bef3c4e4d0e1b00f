//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see every line.

use decomp_core::{
    analytic_estimate, balanced_blocksize, balanced_plan, compare_estimate, exact_transfer_map,
    idle_report, sweetspots, total_size, trans_data_from_delta, unbalanced_plan, GridShape,
    Indexer, Layout, PlanKind, Space, Transform, DEFAULT_MAX_IMBALANCE, DEFAULT_SIZE_GUARD,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::Write as _;
use std::process::Command;

fn verdict(criterion: usize, what: &str, ok: bool) {
    println!(
        "{} criterion {}: {}",
        if ok { "PASS" } else { "FAIL" },
        criterion,
        what
    );
    assert!(ok, "criterion {criterion} failed: {what}");
}

fn reference_shape() -> GridShape {
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

fn desk_shape() -> GridShape {
    GridShape {
        nakx: 8,
        naky: 8,
        inx: 12,
        iny: 12,
        nig: 7,
        nsign: 2,
        nlambda: 4,
        negrid: 2,
        nspec: 2,
        element_bytes: 16,
    }
}

#[test]
fn criterion_1_balanced_blocksizes() {
    let shape = reference_shape();
    let total = total_size(Space::XxfLo, &shape, Layout::Lexys);
    let ok = total == 1_015_808
        && balanced_blocksize(total, 2048) == 496
        && balanced_blocksize(total, 1536) == 662;
    verdict(1, "xxf_lo blocksizes 496 at 2048 ranks, 662 at 1536 ranks", ok);
}

#[test]
fn criterion_2_fractional_idle_processors() {
    let shape = reference_shape();
    let report = idle_report(Space::XxfLo, &shape, Layout::Lexys, 1536);
    let exact = report.idle_procs == num_rational::Ratio::new(512u64, 331u64);
    let near = (report.idle_f64() - 1.5).abs() <= 0.06;
    verdict(
        2,
        "xxf_lo idle processors at 1536 ranks equal 512/331 (about 1.55, within 0.06 of 1.5)",
        exact && near,
    );
}

#[test]
fn criterion_3_unbalanced_imbalances() {
    let shape = reference_shape();
    let a = unbalanced_plan(Space::XxfLo, &shape, Layout::Yxles, 1536, DEFAULT_MAX_IMBALANCE);
    let b = unbalanced_plan(Space::XxfLo, &shape, Layout::Xyles, 2048, DEFAULT_MAX_IMBALANCE);
    let ok = a.kind == PlanKind::Unbalanced
        && b.kind == PlanKind::Unbalanced
        && (a.imbalance() - 0.05).abs() <= 0.01
        && (b.imbalance() - 0.07).abs() <= 0.01
        && a.small_block == 640
        && a.large_block == 672
        && b.small_block == 480
        && b.large_block == 512;
    verdict(
        3,
        "unbalanced imbalance 5.0% (yxles at 1536) and 6.7% (xyles at 2048)",
        ok,
    );
}

#[test]
fn criterion_4_sweet_spot_rank_counts() {
    let shape = reference_shape();
    let spots = sweetspots(&shape, Layout::Lexys, 1100);
    let ok = [256usize, 512, 1024].iter().all(|p| {
        spots.xxf_lo.contains(p) && spots.yxf_lo.contains(p)
    });
    verdict(4, "256, 512, and 1024 ranks divide both xxf_lo and yxf_lo", ok);
}

#[test]
fn criterion_5_matched_unbalanced_plans_eliminate_traffic() {
    let shape = desk_shape();
    let layout = Layout::Xyles;
    let nprocs = 48;

    let xu = unbalanced_plan(Space::XxfLo, &shape, layout, nprocs, DEFAULT_MAX_IMBALANCE);
    let yu = unbalanced_plan(Space::YxfLo, &shape, layout, nprocs, DEFAULT_MAX_IMBALANCE);
    let unbal =
        exact_transfer_map(&xu, &yu, Transform::XxfToYxf, DEFAULT_SIZE_GUARD).unwrap();

    let xb = balanced_plan(Space::XxfLo, &shape, layout, nprocs);
    let yb = balanced_plan(Space::YxfLo, &shape, layout, nprocs);
    let bal = exact_transfer_map(&xb, &yb, Transform::XxfToYxf, DEFAULT_SIZE_GUARD).unwrap();

    let ok = xu.kind == PlanKind::Unbalanced
        && yu.kind == PlanKind::Unbalanced
        && unbal.off_diagonal_elements() == 0
        && (bal.off_diagonal_elements() as f64 / bal.total_elements() as f64) > 0.10;
    verdict(
        5,
        "matched unbalanced xxf/yxf plans at 48 ranks move nothing; balanced plans move >10%",
        ok,
    );
}

#[test]
fn criterion_6_estimate_tracks_the_oracle() {
    let shape_a = GridShape {
        nakx: 8,
        naky: 5,
        inx: 12,
        iny: 8,
        nig: 7,
        nsign: 2,
        nlambda: 4,
        negrid: 2,
        nspec: 2,
        element_bytes: 16,
    };
    let shape_b = GridShape {
        nakx: 12,
        naky: 10,
        inx: 18,
        iny: 15,
        nig: 13,
        nsign: 2,
        nlambda: 2,
        negrid: 2,
        nspec: 2,
        element_bytes: 16,
    };
    let cases: Vec<(&GridShape, usize)> = [64, 72, 80, 88, 96, 104, 120, 128, 136, 144]
        .iter()
        .map(|&n| (&shape_a, n))
        .chain(
            [48, 56, 76, 92, 96, 100, 108, 112, 116, 120, 124, 128]
                .iter()
                .map(|&n| (&shape_b, n)),
        )
        .collect();

    let mut worst: f64 = 0.0;
    let mut ok = true;
    for &(shape, nprocs) in &cases {
        let cmp = compare_estimate(shape, Layout::Xyles, nprocs, DEFAULT_SIZE_GUARD).unwrap();
        let e = analytic_estimate(shape, Layout::Xyles, nprocs);
        ok &= e.delta_idle_proc >= 0.5;
        ok &= cmp.relative_error.abs() <= 0.25;
        worst = worst.max(cmp.relative_error.abs());
    }
    // both branches of the formula agree at delta = 1
    ok &= trans_data_from_delta(1.0, 100.0) == 100.0 * (1.0 - 1.0 / 2.0);

    verdict(
        6,
        &format!(
            "analytic estimate within 25% of the oracle over {} cases (worst {:.1}%)",
            cases.len(),
            100.0 * worst
        ),
        ok,
    );
}

#[test]
fn criterion_7_randomized_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut ok = true;

    for _ in 0..200 {
        let nakx = rng.gen_range(1..=5);
        let naky = rng.gen_range(1..=5);
        let shape = GridShape {
            nakx,
            naky,
            inx: nakx + rng.gen_range(0..=3),
            iny: naky + rng.gen_range(0..=3),
            nig: 2 * rng.gen_range(0..=2) + 1,
            nsign: 2,
            nlambda: rng.gen_range(1..=4),
            negrid: rng.gen_range(1..=3),
            nspec: rng.gen_range(1..=2),
            element_bytes: 16,
        };
        let layout = Layout::ALL[rng.gen_range(0..Layout::ALL.len())];
        let nprocs = rng.gen_range(1..=32);

        // compound-to-coordinate round trip over every space
        for space in Space::ALL {
            let ix = Indexer::new(space, &shape, layout);
            ok &= ix.total_size() <= 1_000_000;
            for flat in 0..ix.total_size() {
                let coord = ix.coordinate_of(flat).unwrap();
                ok &= ix.compound_index(&coord).unwrap() == flat;
            }
            // plans partition [0, total)
            for plan in [
                balanced_plan(space, &shape, layout, nprocs),
                unbalanced_plan(space, &shape, layout, nprocs, DEFAULT_MAX_IMBALANCE),
            ] {
                let mut cursor = 0;
                for &(lo, hi) in &plan.ranges {
                    ok &= lo == cursor && hi >= lo;
                    cursor = hi;
                }
                ok &= cursor == ix.total_size();
            }
        }

        // transfer conservation and transpose symmetry
        let transform = Transform::ALL[rng.gen_range(0..Transform::ALL.len())];
        let src = balanced_plan(transform.src(), &shape, layout, nprocs);
        let dst = balanced_plan(transform.dst(), &shape, layout, nprocs);
        let fwd = exact_transfer_map(&src, &dst, transform, DEFAULT_SIZE_GUARD).unwrap();
        let bwd =
            exact_transfer_map(&dst, &src, transform.inverse(), DEFAULT_SIZE_GUARD).unwrap();
        ok &= fwd.transposed() == bwd;

        let shared = decomp_core::shared_domain(transform, &shape);
        ok &= fwd.total_elements() == shared.size();

        if !ok {
            break;
        }
    }
    verdict(
        7,
        "200 seeded random shapes keep indexing bijective, plans exhaustive, transfers conservative and symmetric",
        ok,
    );
}

#[test]
fn criterion_8_cli_output_is_deterministic() {
    let mut cfg = tempfile::NamedTempFile::new().unwrap();
    cfg.write_all(
        br#"{"naky": 32, "nakx": 32, "ntgrid": 15, "nlambda": 32, "negrid": 8, "nspec": 2}"#,
    )
    .unwrap();
    cfg.flush().unwrap();

    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_decomp"))
            .args(args)
            .arg("--config")
            .arg(cfg.path())
            .args(["--format", "json"])
            .output()
            .expect("binary runs")
    };
    let mut ok = true;
    for args in [
        vec!["plan", "--layout", "lexys", "--nprocs", "1536", "--space", "xxf_lo"],
        vec!["estimate", "--layout", "yxles", "--nprocs", "1536"],
        vec!["sweetspots", "--layout", "lexys", "--max-procs", "1100"],
    ] {
        let first = run(&args);
        let second = run(&args);
        ok &= first.status.success() && first.stdout == second.stdout && !first.stdout.is_empty();
    }
    verdict(8, "repeated CLI invocations produce byte-identical JSON", ok);
}

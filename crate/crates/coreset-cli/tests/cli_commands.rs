//! End-to-end behavior of the five subcommands: artifacts written, report
//! contents, determinism of reruns, and the binary's exit-code contract.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command as Process;

use coreset_cli::commands::{cmd_audit, cmd_build, cmd_curve, cmd_genhard, cmd_solve};
use coreset_cli::config::{
    Algo, AuditArgs, AuditKind, BuildArgs, CurveArgs, GenhardArgs, SolveArgs, Variant,
};
use coreset_cli::report::without_timing;
use coreset_cli::Outcome;
use coreset_core::{from_csv, to_csv, WeightedPointSet};
use coreset_hardgen::gen_interval_instance;
use serde_json::Value;
use tempfile::TempDir;

fn build_args(input: &str, output: PathBuf) -> BuildArgs {
    BuildArgs {
        input: input.to_string(),
        output,
        algo: Algo::Alg1,
        eps: 0.1,
        k: 1,
        z: 2.0,
        seed: 0,
        audit: None,
    }
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn build_on_a_single_point_file_returns_the_point_itself() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("point.csv");
    let single = WeightedPointSet::new(1, vec![0.5], vec![2.0]).unwrap();
    fs::write(&input, to_csv(&single)).unwrap();

    let args = build_args(input.to_str().unwrap(), dir.path().join("out"));
    assert_eq!(cmd_build(&args).unwrap(), Outcome::Success);

    let report = read_json(&dir.path().join("out.json"));
    assert_eq!(report["schema"], 1);
    assert_eq!(report["coreset_size"], 1);
    assert_eq!(report["audit"]["max_rel_error"], 0.0);
    assert_eq!(report["passed"], true);
    let coreset = from_csv(&fs::read_to_string(dir.path().join("out.csv")).unwrap()).unwrap();
    assert_eq!(coreset, single);
}

#[test]
fn alg1_build_meets_its_target_on_the_documented_uniform_input() {
    let dir = TempDir::new().unwrap();
    let mut args = build_args("uniform:100000", dir.path().join("run"));
    args.eps = 0.05;
    args.seed = 42;
    assert_eq!(cmd_build(&args).unwrap(), Outcome::Success);

    let report = read_json(&dir.path().join("run.json"));
    assert_eq!(report["algo"], "alg1");
    assert_eq!(report["n"], 100000);
    assert_eq!(report["seed"], 42);
    assert_eq!(report["audit"]["method"], "exact-k1");
    let err = report["audit"]["max_rel_error"].as_f64().unwrap();
    assert!(err <= 0.05, "audited error {err}");
    let size = report["coreset_size"].as_u64().unwrap();
    assert!(size >= 1 && size < 100000, "size {size}");
}

#[test]
fn baseline_build_respects_the_per_center_size_budget() {
    let dir = TempDir::new().unwrap();
    let mut args = build_args("uniform:1500", dir.path().join("base"));
    args.algo = Algo::Baseline;
    args.k = 2;
    args.seed = 9;
    assert_eq!(cmd_build(&args).unwrap(), Outcome::Success);

    let report = read_json(&dir.path().join("base.json"));
    let size = report["coreset_size"].as_u64().unwrap();
    let budget = (4.0 * 2.0 / 0.1) as u64;
    assert!(size <= budget, "size {size} over c_b·k/eps = {budget}");
    // 1500 reference points with a small summary fit the exact two-center
    // arrangement, so the default audit is exact.
    assert_eq!(report["audit"]["method"], "exact-k2");
    assert_eq!(report["passed"], true);
}

#[test]
fn mixed_build_reports_the_halving_budget() {
    let dir = TempDir::new().unwrap();
    let mut args = build_args("ball:256:2", dir.path().join("mix"));
    args.algo = Algo::Mixed;
    args.z = 2.0;
    args.seed = 5;
    assert_eq!(cmd_build(&args).unwrap(), Outcome::Success);

    let report = read_json(&dir.path().join("mix.json"));
    assert_eq!(report["audit"]["method"], "mixed-violation");
    let violation = report["audit"]["empirical_violation"].as_f64().unwrap();
    assert!(violation <= 1.0, "violation {violation}");
    let rounds = report["audit"]["rounds"].as_u64().unwrap();
    assert!(rounds >= 1);
    // Survivors carry the count-preserving reweighting of the halving.
    let coreset = from_csv(&fs::read_to_string(dir.path().join("mix.csv")).unwrap()).unwrap();
    let expected = 2f64.powi(rounds as i32);
    assert!(coreset.weights().iter().all(|&w| w == expected));
}

#[test]
fn genhard_interval_quarter_accuracy_lays_out_four_intervals() {
    let dir = TempDir::new().unwrap();
    let args = GenhardArgs {
        variant: Variant::Interval,
        output: dir.path().join("hard"),
        eps: 0.25,
        k: 2,
        d: 8,
        z: 2.0,
        seed: 0,
    };
    assert_eq!(cmd_genhard(&args).unwrap(), Outcome::Success);

    let report = read_json(&dir.path().join("hard.json"));
    let cert = &report["certificate"];
    assert_eq!(cert["variant"], "interval-1d");
    assert_eq!(cert["params"]["interval_count"], 4);
    assert_eq!(cert["expected_costs"]["pair_cost_ceiling"], 8.0);

    // Endpoints follow the geometric law r_i = (4^i − 1)/3.
    let inst = gen_interval_instance(0.25, 16).unwrap();
    let rights: Vec<f64> = inst.intervals().iter().map(|iv| iv.right).collect();
    assert_eq!(rights, vec![1.0, 5.0, 21.0, 85.0]);
    let csv = from_csv(&fs::read_to_string(dir.path().join("hard.csv")).unwrap()).unwrap();
    assert_eq!(&csv, inst.points());
}

#[test]
fn genhard_subspace_layouts_have_the_documented_sizes() {
    let dir = TempDir::new().unwrap();
    let main = GenhardArgs {
        variant: Variant::SubspaceMain,
        output: dir.path().join("main"),
        eps: 0.25,
        k: 4,
        d: 8,
        z: 2.0,
        seed: 0,
    };
    cmd_genhard(&main).unwrap();
    let report = read_json(&dir.path().join("main.json"));
    // The main layout plants half a basis (d/2 axes) on each of k/2 far
    // apart subspaces: kd/4 points in ambient dimension d + 1.
    assert_eq!(report["n"], 8);
    assert_eq!(report["dim"], 9);

    let appendix = GenhardArgs {
        variant: Variant::SubspaceAppendix,
        output: dir.path().join("app"),
        eps: 0.25,
        k: 2,
        d: 3,
        z: 2.0,
        seed: 0,
    };
    cmd_genhard(&appendix).unwrap();
    let report = read_json(&dir.path().join("app.json"));
    // The appendix layout plants the full basis (d axes) on each of k
    // subspaces: kd points.
    assert_eq!(report["n"], 6);
    assert_eq!(report["dim"], 4);
}

fn replay_args(input: &Path, certificate: &Path, output: PathBuf) -> AuditArgs {
    AuditArgs {
        input: input.to_str().unwrap().to_string(),
        summary: None,
        certificate: Some(certificate.to_path_buf()),
        output: Some(output),
        audit: AuditKind::Exact,
        k: 1,
        z: 1.0,
        seed: 0,
        eps: None,
    }
}

#[test]
fn certificates_replay_cleanly_for_every_variant() {
    let dir = TempDir::new().unwrap();
    for (name, variant, k, d) in [
        ("interval", Variant::Interval, 2, 8),
        ("copies", Variant::Copies, 2, 8),
        ("main", Variant::SubspaceMain, 4, 8),
        ("app", Variant::SubspaceAppendix, 2, 3),
    ] {
        let stem = dir.path().join(name);
        let gen = GenhardArgs {
            variant,
            output: stem.clone(),
            eps: 0.25,
            k,
            d,
            z: 2.0,
            seed: 0,
        };
        cmd_genhard(&gen).unwrap();

        let report_path = dir.path().join(format!("{name}-replay.json"));
        let args = replay_args(
            &stem.with_extension("csv"),
            &stem.with_extension("json"),
            report_path.clone(),
        );
        assert_eq!(cmd_audit(&args).unwrap(), Outcome::Success, "{name}");
        let replay = read_json(&report_path);
        assert_eq!(replay["mode"], "replay", "{name}");
        assert_eq!(replay["passed"], true, "{name}");
        let checks = replay["checks"].as_array().unwrap();
        assert!(checks.len() >= 3, "{name}: {checks:?}");
        assert!(checks.iter().all(|c| c["ok"] == true), "{name}: {checks:?}");
    }
}

#[test]
fn tampered_instances_fail_their_certificate_replay() {
    let dir = TempDir::new().unwrap();
    let stem = dir.path().join("hard");
    let gen = GenhardArgs {
        variant: Variant::Interval,
        output: stem.clone(),
        eps: 0.25,
        k: 2,
        d: 8,
        z: 2.0,
        seed: 0,
    };
    cmd_genhard(&gen).unwrap();

    // Doubling one weight breaks both the bitwise match and the mass check.
    let mut points = from_csv(&fs::read_to_string(stem.with_extension("csv")).unwrap()).unwrap();
    let mut weights = points.weights().to_vec();
    weights[0] *= 2.0;
    points = WeightedPointSet::new(1, points.coords().to_vec(), weights).unwrap();
    let tampered = dir.path().join("tampered.csv");
    fs::write(&tampered, to_csv(&points)).unwrap();

    let report_path = dir.path().join("replay.json");
    let args = replay_args(&tampered, &stem.with_extension("json"), report_path.clone());
    assert_eq!(cmd_audit(&args).unwrap(), Outcome::AuditFailed);
    let replay = read_json(&report_path);
    assert_eq!(replay["passed"], false);
}

#[test]
fn audit_of_identical_files_reports_zero_error() {
    let dir = TempDir::new().unwrap();
    let data = dir.path().join("data.csv");
    let points = coreset_cli::dataset::generate(coreset_cli::Family::Uniform, 500, 1, 3).unwrap();
    fs::write(&data, to_csv(&points)).unwrap();

    let report_path = dir.path().join("audit.json");
    let args = AuditArgs {
        input: data.to_str().unwrap().to_string(),
        summary: Some(data.to_str().unwrap().to_string()),
        certificate: None,
        output: Some(report_path.clone()),
        audit: AuditKind::Exact,
        k: 1,
        z: 1.0,
        seed: 0,
        eps: None,
    };
    assert_eq!(cmd_audit(&args).unwrap(), Outcome::Success);
    let report = read_json(&report_path);
    assert_eq!(report["audit"]["max_rel_error"], 0.0);
    // No target was given, so the verdict is informational.
    assert_eq!(report["passed"], Value::Null);
}

#[test]
fn audit_with_a_target_flags_failures() {
    let dir = TempDir::new().unwrap();
    let data = dir.path().join("data.csv");
    let points = coreset_cli::dataset::generate(coreset_cli::Family::Uniform, 400, 1, 3).unwrap();
    fs::write(&data, to_csv(&points)).unwrap();
    // One far away point of the full mass is a terrible summary.
    let bad = dir.path().join("bad.csv");
    let summary = WeightedPointSet::new(1, vec![50.0], vec![400.0]).unwrap();
    fs::write(&bad, to_csv(&summary)).unwrap();

    let args = AuditArgs {
        input: data.to_str().unwrap().to_string(),
        summary: Some(bad.to_str().unwrap().to_string()),
        certificate: None,
        output: Some(dir.path().join("audit.json")),
        audit: AuditKind::Exact,
        k: 1,
        z: 1.0,
        seed: 0,
        eps: Some(0.1),
    };
    assert_eq!(cmd_audit(&args).unwrap(), Outcome::AuditFailed);
    let report = read_json(&dir.path().join("audit.json"));
    assert_eq!(report["passed"], false);
    assert!(report["audit"]["max_rel_error"].as_f64().unwrap() > 0.1);
}

#[test]
fn reports_are_byte_identical_across_reruns_once_timing_is_removed() {
    let dir = TempDir::new().unwrap();
    let stem = dir.path().join("rerun");
    let mut args = build_args("gaussian:5000", stem.clone());
    args.eps = 0.05;
    args.seed = 123;

    cmd_build(&args).unwrap();
    let first = read_json(&stem.with_extension("json"));
    let first_csv = fs::read_to_string(stem.with_extension("csv")).unwrap();
    cmd_build(&args).unwrap();
    let second = read_json(&stem.with_extension("json"));
    let second_csv = fs::read_to_string(stem.with_extension("csv")).unwrap();

    assert_ne!(first, second, "timing should differ between runs");
    assert_eq!(
        serde_json::to_string(&without_timing(&first)).unwrap(),
        serde_json::to_string(&without_timing(&second)).unwrap()
    );
    assert_eq!(first_csv, second_csv);

    let curve = CurveArgs {
        input: "gaussian:5000".into(),
        output: dir.path().join("sweep"),
        algo: Algo::Alg1,
        eps: vec![0.1, 0.05],
        k: 1,
        z: 2.0,
        seed: 123,
        audit: None,
    };
    cmd_curve(&curve).unwrap();
    let first = read_json(&dir.path().join("sweep.json"));
    cmd_curve(&curve).unwrap();
    let second = read_json(&dir.path().join("sweep.json"));
    assert_eq!(
        serde_json::to_string(&without_timing(&first)).unwrap(),
        serde_json::to_string(&without_timing(&second)).unwrap()
    );
}

#[test]
fn curve_with_no_accuracies_writes_only_the_header() {
    let dir = TempDir::new().unwrap();
    let args = CurveArgs {
        input: "uniform:100".into(),
        output: dir.path().join("empty"),
        algo: Algo::Alg1,
        eps: vec![],
        k: 1,
        z: 2.0,
        seed: 0,
        audit: None,
    };
    assert_eq!(cmd_curve(&args).unwrap(), Outcome::Success);
    let csv = fs::read_to_string(dir.path().join("empty.csv")).unwrap();
    assert_eq!(csv, "eps,size,max_rel_error,runtime_seconds\n");
    let report = read_json(&dir.path().join("empty.json"));
    assert_eq!(report["rows"], serde_json::json!([]));
}

/// Runs a sweep and returns its (eps, size) pairs in order.
fn sweep_sizes(input: &str, algo: Algo, eps: Vec<f64>, dir: &Path, name: &str) -> Vec<(f64, u64)> {
    let args = CurveArgs {
        input: input.into(),
        output: dir.join(name),
        algo,
        eps,
        k: 1,
        z: 2.0,
        seed: 77,
        audit: None,
    };
    cmd_curve(&args).unwrap();
    let report = read_json(&dir.join(format!("{name}.json")));
    report["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| {
            (
                row["eps"].as_f64().unwrap(),
                row["size"].as_u64().unwrap(),
            )
        })
        .collect()
}

#[test]
fn alg1_curve_sizes_double_per_accuracy_quartering() {
    let dir = TempDir::new().unwrap();
    let sweep = vec![0.1, 0.05, 0.02, 0.01];
    let quarters: Vec<f64> = sweep.iter().map(|e| e / 4.0).collect();
    let coarse = sweep_sizes("uniform:100000", Algo::Alg1, sweep, dir.path(), "coarse");
    let fine = sweep_sizes("uniform:100000", Algo::Alg1, quarters, dir.path(), "fine");
    for ((eps, size), (_, quarter_size)) in coarse.iter().zip(&fine) {
        let ratio = *quarter_size as f64 / *size as f64;
        assert!(
            (1.5..=3.0).contains(&ratio),
            "eps {eps}: sizes {size} -> {quarter_size}, ratio {ratio}"
        );
    }
}

#[test]
fn baseline_curve_ratio_matches_the_documented_inverse_law() {
    let dir = TempDir::new().unwrap();
    let sweep = vec![0.1, 0.05, 0.02, 0.01];
    let quarters: Vec<f64> = sweep.iter().map(|e| e / 4.0).collect();
    let coarse = sweep_sizes("uniform:20000", Algo::Baseline, sweep, dir.path(), "coarse");
    let fine = sweep_sizes("uniform:20000", Algo::Baseline, quarters, dir.path(), "fine");
    let mut ratios: Vec<f64> = coarse
        .iter()
        .zip(&fine)
        .map(|((_, size), (_, quarter_size))| *quarter_size as f64 / *size as f64)
        .collect();
    ratios.sort_by(f64::total_cmp);
    let median = 0.5 * (ratios[ratios.len() / 2 - 1] + ratios[ratios.len() / 2]);
    assert!(
        (3.0..=5.0).contains(&median),
        "quartering the accuracy should quadruple the baseline size, got ratios {ratios:?} (median {median})"
    );
}

#[test]
fn solve_reports_the_documented_two_center_optimum() {
    let dir = TempDir::new().unwrap();
    let data = dir.path().join("pairs.csv");
    let points = WeightedPointSet::unit_weights(1, vec![0.0, 1.0, 10.0, 11.0]).unwrap();
    fs::write(&data, to_csv(&points)).unwrap();

    let report_path = dir.path().join("solve.json");
    let args = SolveArgs {
        input: data.to_str().unwrap().to_string(),
        k: 2,
        seed: 0,
        output: Some(report_path.clone()),
    };
    assert_eq!(cmd_solve(&args).unwrap(), Outcome::Success);
    let report = read_json(&report_path);
    assert_eq!(report["opt_cost"], 2.0);
    let centers: Vec<f64> = report["centers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_f64().unwrap())
        .collect();
    assert_eq!(centers.len(), 2);
    assert!(centers[0] == 0.0 || centers[0] == 1.0);
    assert!(centers[1] == 10.0 || centers[1] == 11.0);
}

#[test]
fn binary_exit_codes_follow_the_contract() {
    let bin = env!("CARGO_BIN_EXE_coreset-cli");
    let dir = TempDir::new().unwrap();

    // 0: a build that meets its target.
    let ok = Process::new(bin)
        .args(["build", "--input", "uniform:2000", "--eps", "0.1"])
        .args(["--output", dir.path().join("ok").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));

    // 2: an audit that ran and found its target violated.
    let data = dir.path().join("data.csv");
    let points = WeightedPointSet::unit_weights(1, (0..100).map(f64::from).collect()).unwrap();
    fs::write(&data, to_csv(&points)).unwrap();
    let bad = dir.path().join("bad.csv");
    let summary = WeightedPointSet::new(1, vec![1000.0], vec![100.0]).unwrap();
    fs::write(&bad, to_csv(&summary)).unwrap();
    let failed = Process::new(bin)
        .args(["audit", "--input", data.to_str().unwrap()])
        .args(["--summary", bad.to_str().unwrap()])
        .args(["--eps", "0.5", "--output", dir.path().join("a.json").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(failed.status.code(), Some(2));

    // 1: usage errors and unreadable inputs.
    let usage = Process::new(bin).arg("--no-such-flag").output().unwrap();
    assert_eq!(usage.status.code(), Some(1));
    let missing = Process::new(bin)
        .args(["solve", "--input", dir.path().join("absent.csv").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(1));
    let bad_eps = Process::new(bin)
        .args(["build", "--input", "uniform:10", "--eps", "1.5"])
        .args(["--output", dir.path().join("x").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(bad_eps.status.code(), Some(1));

    // 0: help is not an error.
    let help = Process::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}

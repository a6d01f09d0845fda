use std::f64::consts::E;

use stabilab::bounds::Statistic;
use stabilab::datagen::{DataSpec, XFamily};
use stabilab::harness::{
    emit_report, run_bounds_table, run_coverage, run_efron_stein, run_experiment, run_rate, run_stability_sweep,
    AlgorithmConfig, EmitFormat, ExperimentConfig, ExperimentKind, Report,
};
use stabilab::stability::{knn_gamma_1, JPolicy};
use stabilab::Error;

fn zero_spec() -> DataSpec {
    DataSpec::linear_clipped(XFamily::UniformBall, 1.0, vec![0.0, 0.0], 0.0, 1.0)
}

fn noisy_spec() -> DataSpec {
    DataSpec::linear_clipped(XFamily::UniformBall, 1.0, vec![0.5, -0.3, 0.2], 0.3, 1.0)
}

fn config(kind: ExperimentKind, spec: DataSpec, algorithm: AlgorithmConfig) -> ExperimentConfig {
    ExperimentConfig {
        kind,
        spec,
        algorithm,
        n_grid: vec![40],
        q_grid: vec![2.0],
        x_grid: vec![1.0, 2.0, 3.0],
        reps: 60,
        test_m: 1000,
        base_seed: 5,
        out_dir: "unused".into(),
        lambda_grid: None,
        k_grid: None,
        statistics: None,
        j_policy: JPolicy::AverageAll,
    }
}

const RIDGE: AlgorithmConfig = AlgorithmConfig::Ridge { lambda: 1.0, eta: 0.5 };

#[test]
fn coverage_with_zero_labels_never_exceeds() {
    let report = run_coverage(&config(ExperimentKind::Coverage, zero_spec(), RIDGE)).unwrap();
    assert_eq!(report.rows.len(), 3);
    for row in &report.rows {
        assert_eq!(row.exceedances, 0);
        assert_eq!(row.max_ratio, 0.0);
    }
    assert!(report.samples.iter().all(|s| s.deviations.iter().all(|&d| d == 0.0)));
}

#[test]
fn coverage_beyond_the_trivial_scale_is_vacuous_and_clean() {
    let mut cfg = config(ExperimentKind::Coverage, noisy_spec(), RIDGE);
    cfg.x_grid = vec![50.0];
    let report = run_coverage(&cfg).unwrap();
    let row = &report.rows[0];
    assert!(row.threshold > cfg.spec.squared_scale());
    assert_eq!(row.exceedances, 0);
}

#[test]
fn coverage_rows_cover_the_grid_and_flag_vacuous_levels() {
    let mut cfg = config(ExperimentKind::Coverage, noisy_spec(), RIDGE);
    cfg.n_grid = vec![30, 60];
    cfg.x_grid = vec![0.5, 1.0, 2.0];
    let report = run_coverage(&cfg).unwrap();
    assert_eq!(report.rows.len(), 6);
    for row in &report.rows {
        assert!((0.0..=1.0).contains(&row.exceedance_rate));
        assert_eq!(row.vacuous, row.x <= 1.0, "x = {}", row.x);
        assert!((row.failure_bound - E * (-row.x).exp()).abs() < 1e-15);
    }
    assert_eq!(report.bound, "bounded");
}

/// Seeded outcome of the reference coverage run at x = 3.
#[test]
fn coverage_reference_run_is_pinned() {
    let mut cfg = config(ExperimentKind::Coverage, noisy_spec(), RIDGE);
    cfg.n_grid = vec![200];
    cfg.x_grid = vec![3.0];
    cfg.reps = 500;
    cfg.base_seed = 20_240_601;
    cfg.test_m = 2000;
    let report = run_coverage(&cfg).unwrap();
    let row = &report.rows[0];
    assert_eq!(row.exceedances, 0);
    assert!((row.failure_bound - 0.135_335_283_236_612_7).abs() < 1e-15);
    assert!(row.sound && row.max_ratio < 1e-2);
}

#[test]
fn coverage_preconditions() {
    let mut cfg = config(ExperimentKind::Coverage, noisy_spec(), RIDGE);
    cfg.x_grid.clear();
    assert!(matches!(run_coverage(&cfg), Err(Error::Config(_))));

    let cfg = config(ExperimentKind::Coverage, noisy_spec(), AlgorithmConfig::Ridge { lambda: 0.01, eta: 0.5 });
    assert!(matches!(run_coverage(&cfg), Err(Error::Domain(_))));

    let mut cfg = config(ExperimentKind::Coverage, noisy_spec(), AlgorithmConfig::Ridge { lambda: 100.0, eta: 0.5 });
    cfg.x_grid = vec![0.01];
    cfg.test_m = 2;
    cfg.reps = 50;
    match run_coverage(&cfg) {
        Err(Error::Precondition(msg)) => assert!(msg.contains("test_m"), "{msg}"),
        other => panic!("expected the precision gate to fire, got {other:?}"),
    }
}

fn rate_config(spec: DataSpec, lambda: f64) -> ExperimentConfig {
    let mut cfg = config(ExperimentKind::Rate, spec, AlgorithmConfig::Ridge { lambda, eta: 0.5 });
    cfg.n_grid = vec![32, 64, 128, 256];
    cfg.reps = 100;
    cfg.test_m = 20_000;
    cfg
}

#[test]
fn rate_with_zero_labels_is_degenerate() {
    match run_rate(&rate_config(zero_spec(), 1.0)) {
        Err(Error::Precondition(msg)) => assert!(msg.contains("degenerate"), "{msg}"),
        other => panic!("expected a degenerate-median error, got {other:?}"),
    }
}

#[test]
fn rate_noise_free_slope_is_negative() {
    let spec = DataSpec::linear_clipped(XFamily::UniformBall, 1.0, vec![0.5, 0.5], 0.0, 1.0);
    let report = run_rate(&rate_config(spec, 0.01)).unwrap();
    assert!(report.slope < 0.0, "slope {}", report.slope);
    assert!(report.slope_ci.0 <= report.slope_ci.1);
}

#[test]
fn rate_grid_must_be_geometric() {
    let mut cfg = rate_config(noisy_spec(), 1.0);
    cfg.n_grid = vec![32, 64, 100, 256];
    assert!(matches!(run_rate(&cfg), Err(Error::Config(_))));
    cfg.n_grid = vec![32, 64, 128];
    assert!(matches!(run_rate(&cfg), Err(Error::Config(_))));
}

#[test]
fn sweep_zero_labels_and_skipped_rows() {
    let mut cfg = config(ExperimentKind::StabilitySweep, zero_spec(), RIDGE);
    cfg.q_grid = vec![1.0, 2.0];
    cfg.lambda_grid = Some(vec![0.01, 1.0]);
    let report = run_stability_sweep(&cfg).unwrap();
    assert_eq!(report.rows.len(), 4);
    for row in &report.rows {
        if row.lambda_or_k == 0.01 {
            assert_eq!(row.dominated, None);
            assert!(row.note.as_deref().unwrap().contains("violated"));
        } else {
            assert_eq!(row.s_q_hat, Some(0.0));
            assert_eq!(row.dominated, Some(true));
        }
    }
}

#[test]
fn knn_sweep_passes_the_constant_through() {
    let spec = DataSpec::bernoulli(XFamily::UniformCube, 1.0, vec![0.2, 0.1], 0.4);
    let mut cfg = config(ExperimentKind::StabilitySweep, spec, AlgorithmConfig::Knn { k: 3 });
    cfg.n_grid = vec![20, 40];
    cfg.q_grid = vec![1.0, 2.0];
    let report = run_stability_sweep(&cfg).unwrap();
    for row in &report.rows {
        if row.q == 1.0 {
            assert_eq!(row.gamma_theory, Some(knn_gamma_1(3, row.n).unwrap()));
        } else {
            assert_eq!(row.dominated, None);
        }
    }
}

#[test]
fn efron_stein_constant_rows_are_zero() {
    let mut cfg = config(ExperimentKind::EfronStein, noisy_spec(), RIDGE);
    cfg.statistics = Some(vec![Statistic::Constant, Statistic::Max]);
    cfg.q_grid = vec![2.0, 3.0];
    let report = run_efron_stein(&cfg).unwrap();
    assert_eq!(report.rows.len(), 4);
    for row in report.rows.iter().filter(|r| r.f == "constant") {
        assert_eq!((row.lhs, row.rhs), (0.0, 0.0));
        assert!(row.pass);
    }
}

#[test]
fn bounds_table_reference_row_values() {
    let mut cfg = config(ExperimentKind::BoundsTable, noisy_spec(), RIDGE);
    cfg.n_grid = vec![2, 100];
    cfg.q_grid = vec![1.0, 2.0];
    let report = run_bounds_table(&cfg).unwrap();
    let find = |name: &str| report.rows.iter().find(|r| r.bound_name == name).unwrap();
    assert!((find("gamma1").value - 9.019_090_863).abs() < 1e-8);
    assert!((find("gamma2").value - 221.288_209_7).abs() < 1e-6);
    assert_eq!(find("gamma3").value, 20.0);
    // n = 2 is outside the domain, so every n-specific row is for n = 100
    assert!(report.rows.iter().all(|r| r.n.is_none() || r.n == Some(100)));
    let pac: Vec<_> = report.rows.iter().filter(|r| r.bound_name == "pac_bounded").collect();
    assert_eq!(pac.len(), 3);
    assert!(pac.iter().all(|r| r.vacuous));
}

fn rate_report() -> Report {
    let mut cfg = rate_config(noisy_spec(), 0.5);
    cfg.n_grid = vec![16, 32, 64, 128, 256];
    run_experiment(&cfg).unwrap()
}

#[test]
fn emission_is_byte_identical_and_named_by_kind_and_seed() {
    let report = rate_report();
    let formats = [EmitFormat::Csv, EmitFormat::Json, EmitFormat::Svg];
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let pa = emit_report(&report, &formats, a.path()).unwrap();
    let pb = emit_report(&report, &formats, b.path()).unwrap();
    let names: Vec<_> = pa.iter().map(|p| p.file_name().unwrap().to_str().unwrap().to_string()).collect();
    assert_eq!(names, ["rate_5.csv", "rate_5.json", "rate_5.svg"]);
    for (x, y) in pa.iter().zip(&pb) {
        assert_eq!(std::fs::read(x).unwrap(), std::fs::read(y).unwrap());
    }
    let svg = std::fs::read_to_string(&pa[2]).unwrap();
    assert_eq!(svg.matches("<circle").count(), 5);
}

#[test]
fn csv_values_round_trip_exactly() {
    let report = rate_report();
    let Report::Rate(rate) = &report else { unreachable!() };
    let dir = tempfile::tempdir().unwrap();
    let paths = emit_report(&report, &[EmitFormat::Csv], dir.path()).unwrap();
    let mut reader = csv::Reader::from_path(&paths[0]).unwrap();
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        ["n", "median_deviation", "mean_deviation", "reps", "slope", "slope_ci_low", "slope_ci_high"]
    );
    for (rec, row) in reader.records().zip(&rate.rows) {
        let rec = rec.unwrap();
        assert_eq!(rec[1].parse::<f64>().unwrap(), row.median_deviation);
        assert_eq!(rec[4].parse::<f64>().unwrap(), rate.slope);
    }
}

#[test]
fn sweep_csv_uses_the_export_schema() {
    let mut cfg = config(ExperimentKind::StabilitySweep, noisy_spec(), RIDGE);
    cfg.q_grid = vec![1.0];
    let report = run_experiment(&cfg).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let paths = emit_report(&report, &[EmitFormat::Csv, EmitFormat::Svg], dir.path()).unwrap();
    assert_eq!(paths.len(), 1, "sweeps have no figure");
    let text = std::fs::read_to_string(&paths[0]).unwrap();
    assert!(text.starts_with("algo,q,n,lambda_or_k,s_q_hat,std_error,gamma_theory,dominated\n"));
}

#[test]
fn emission_errors() {
    let report = rate_report();
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("not_a_dir");
    std::fs::write(&file, b"x").unwrap();
    assert!(emit_report(&report, &[EmitFormat::Json], &file).is_err());

    let Report::Rate(mut empty) = report else { unreachable!() };
    empty.rows.clear();
    let err = emit_report(&Report::Rate(empty), &[EmitFormat::Csv], dir.path()).unwrap_err();
    assert!(matches!(err, Error::Precondition(_)));
}

#[test]
fn config_file_round_trip() {
    let mut cfg = config(ExperimentKind::EfronStein, noisy_spec(), RIDGE);
    cfg.statistics = Some(vec![Statistic::Mean, Statistic::RidgeLoo { lambda: 0.25 }]);
    cfg.j_policy = JPolicy::FixedLast;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(&path, cfg.to_json().unwrap()).unwrap();
    assert_eq!(ExperimentConfig::from_path(&path).unwrap(), cfg);
}

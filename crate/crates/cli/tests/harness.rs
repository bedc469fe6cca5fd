//! Pipeline tests: config parsing, grid execution, the correctness gate,
//! statistics, property verdicts and emission.

use std::fs;
use std::path::Path;
use std::time::Duration;

use bnb_cli::config::InstanceSpec;
use bnb_cli::{
    cdf_points, correctness_gate, emit_results, parse_bench_config, property_report,
    render_records_csv, run_grid, summarise, BenchConfig, ConfigError, GridError, OutputFormat,
    ProblemKind, PropertyConfig, RunRecord, Skeleton, Verdict,
};
use bnb_core::{OrderedMode, SearchStats};
use bnb_problems::clique::Graph;
use bnb_problems::io::{serialise_dimacs, serialise_pisinger};
use bnb_problems::knapsack::{Item, KnapsackInstance};

const EDGES: [(u32, u32); 15] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 5),
    (0, 6),
    (0, 7),
    (1, 2),
    (1, 6),
    (2, 4),
    (2, 5),
    (3, 4),
    (3, 5),
    (3, 6),
    (4, 7),
    (5, 6),
];

fn write_clique(dir: &Path) -> String {
    let graph = Graph::from_edges(8, &EDGES).unwrap();
    let path = dir.join("example.clq");
    fs::write(&path, serialise_dimacs(&graph)).unwrap();
    path.to_str().unwrap().to_string()
}

fn write_knapsacks(dir: &Path) -> String {
    let items_a = [
        Item { profit: 45, weight: 3 },
        Item { profit: 30, weight: 5 },
        Item { profit: 45, weight: 9 },
        Item { profit: 10, weight: 5 },
    ];
    let items_b = [
        Item { profit: 7, weight: 2 },
        Item { profit: 9, weight: 4 },
        Item { profit: 4, weight: 3 },
    ];
    let mut a = KnapsackInstance::new(16, &items_a).unwrap();
    a.name = Some("desk".to_string());
    let mut b = KnapsackInstance::new(6, &items_b).unwrap();
    b.name = Some("mini".to_string());
    let path = dir.join("pairs.kp");
    fs::write(&path, serialise_pisinger(&[a, b])).unwrap();
    path.to_str().unwrap().to_string()
}

fn grid_config(instances: Vec<InstanceSpec>) -> BenchConfig {
    BenchConfig {
        instances,
        timeout: None,
        ..BenchConfig::default()
    }
}

fn record(
    instance: &str,
    skeleton: Skeleton,
    workers: usize,
    repeat: usize,
    secs: f64,
) -> RunRecord {
    RunRecord {
        instance: instance.to_string(),
        skeleton,
        workers,
        spawn_depth: 1,
        diversify: false,
        seed: 1,
        repeat,
        censored: false,
        wall_time: Duration::from_secs_f64(secs),
        objective: Some(42),
        stats: SearchStats::default(),
    }
}

fn approx(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-9
}

#[test]
fn empty_config_is_all_defaults() {
    let config = parse_bench_config("").unwrap();
    assert!(config.instances.is_empty());
    assert_eq!(config.skeletons, vec![Skeleton::Ordered]);
    assert_eq!(config.workers, vec![1, 2, 4, 8]);
    assert_eq!(config.repeats, 10);
    assert_eq!(config.timeout, Some(Duration::from_secs(600)));
    assert_eq!(config.spawn_depth, 1);
    assert!(!config.diversify);
    assert_eq!(config.mode, OrderedMode::Deterministic);
    assert_eq!(config.seed, 1);
    assert!(approx(config.epsilon, 0.15));
    assert!(approx(config.rsd_threshold, 0.10));
    assert!(approx(config.min_runtime, 5.0));
}

#[test]
fn config_comments_skip_and_last_key_wins() {
    let text = "\
# full-line comment

repeats = 3
skeletons = seq, ordered   # trailing comment
repeats = 7
instance = clique:a.clq
instance = tsp:rand_tsp:10:7
timeout = 0
mode = live
diversify = true
";
    let config = parse_bench_config(text).unwrap();
    assert_eq!(config.repeats, 7);
    assert_eq!(config.skeletons, vec![Skeleton::Seq, Skeleton::Ordered]);
    assert_eq!(config.timeout, None);
    assert_eq!(config.mode, OrderedMode::LiveBounds);
    assert!(config.diversify);
    assert_eq!(config.instances.len(), 2);
    assert_eq!(config.instances[0].kind, ProblemKind::Clique);
    assert_eq!(config.instances[0].source, "a.clq");
    assert_eq!(config.instances[1].kind, ProblemKind::Tsp);
    assert_eq!(config.instances[1].source, "rand_tsp:10:7");
}

#[test]
fn config_rejects_malformed_lines() {
    let err = |text: &str| parse_bench_config(text).unwrap_err();
    assert_eq!(err("just words"), ConfigError::NotKeyValue(1, "just words".to_string()));
    assert_eq!(err("nonsense = 1"), ConfigError::UnknownKey(1, "nonsense".to_string()));
    assert_eq!(err("workers = 1,x"), ConfigError::BadValue(1, "workers", "x".to_string()));
    assert_eq!(
        err("instance = example.clq"),
        ConfigError::BadValue(1, "instance", "example.clq".to_string())
    );
    assert_eq!(err("mode = never"), ConfigError::BadValue(1, "mode", "never".to_string()));
}

#[test]
fn sequential_skeleton_collapses_the_worker_axis() {
    let dir = tempfile::tempdir().unwrap();
    let clq = write_clique(dir.path());
    let config = BenchConfig {
        skeletons: vec![Skeleton::Seq],
        workers: vec![1, 2, 4],
        repeats: 3,
        ..grid_config(vec![InstanceSpec { kind: ProblemKind::Clique, source: clq }])
    };
    let records = run_grid(&config).unwrap();
    assert_eq!(records.len(), 3);
    for (i, r) in records.iter().enumerate() {
        assert_eq!(r.workers, 1);
        assert_eq!(r.repeat, i);
        assert_eq!(r.objective, Some(4));
    }
    assert!(correctness_gate(&records).is_ok());
}

#[test]
fn example_graph_agrees_across_skeletons_and_workers() {
    let dir = tempfile::tempdir().unwrap();
    let clq = write_clique(dir.path());
    let config = BenchConfig {
        skeletons: vec![Skeleton::Ordered, Skeleton::Unordered],
        workers: vec![1, 2, 4],
        repeats: 10,
        ..grid_config(vec![InstanceSpec { kind: ProblemKind::Clique, source: clq }])
    };
    let records = run_grid(&config).unwrap();
    assert_eq!(records.len(), 60);
    assert!(records.iter().all(|r| r.objective == Some(4)));
    assert!(correctness_gate(&records).is_ok());
}

#[test]
fn knapsack_blocks_become_separate_instances() {
    let dir = tempfile::tempdir().unwrap();
    let kp = write_knapsacks(dir.path());
    let config = BenchConfig {
        skeletons: vec![Skeleton::Seq],
        repeats: 1,
        ..grid_config(vec![InstanceSpec { kind: ProblemKind::Knapsack, source: kp.clone() }])
    };
    let records = run_grid(&config).unwrap();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0].instance, format!("{kp}#desk"));
    assert_eq!(records[1].instance, format!("{kp}#mini"));
    assert_eq!(records[0].objective, Some(90));
    assert_eq!(records[1].objective, Some(16));
}

#[test]
fn unordered_repeats_vary_the_seed_and_ordered_repeats_do_not() {
    let dir = tempfile::tempdir().unwrap();
    let clq = write_clique(dir.path());
    let config = BenchConfig {
        skeletons: vec![Skeleton::Ordered, Skeleton::Unordered],
        workers: vec![2],
        repeats: 3,
        seed: 10,
        ..grid_config(vec![InstanceSpec { kind: ProblemKind::Clique, source: clq }])
    };
    let records = run_grid(&config).unwrap();
    let seeds = |s: Skeleton| -> Vec<u64> {
        records.iter().filter(|r| r.skeleton == s).map(|r| r.seed).collect()
    };
    assert_eq!(seeds(Skeleton::Ordered), vec![10, 10, 10]);
    assert_eq!(seeds(Skeleton::Unordered), vec![10, 11, 12]);
}

#[test]
fn timed_out_cells_become_censored_records() {
    let config = BenchConfig {
        skeletons: vec![Skeleton::Seq],
        repeats: 2,
        timeout: Some(Duration::from_nanos(1)),
        ..grid_config(vec![InstanceSpec {
            kind: ProblemKind::Tsp,
            source: "rand_tsp:10:5".to_string(),
        }])
    };
    let records = run_grid(&config).unwrap();
    assert_eq!(records.len(), 2);
    for r in &records {
        assert!(r.censored);
        assert_eq!(r.objective, None);
    }
    assert!(correctness_gate(&records).is_ok());

    let summary = summarise(&records);
    assert_eq!(summary.len(), 1);
    assert_eq!(summary[0].repeats, 0);
    assert_eq!(summary[0].censored, 2);
    assert_eq!(summary[0].rsd, None);
}

#[test]
fn grid_rejects_degenerate_configs() {
    let missing = grid_config(vec![]);
    assert!(matches!(run_grid(&missing), Err(GridError::NoInstances)));

    let spec = InstanceSpec { kind: ProblemKind::Clique, source: "nowhere.clq".to_string() };
    let unreadable = grid_config(vec![spec.clone()]);
    assert!(matches!(run_grid(&unreadable), Err(GridError::Load { .. })));

    let zero = BenchConfig { repeats: 0, ..grid_config(vec![spec.clone()]) };
    assert!(matches!(run_grid(&zero), Err(GridError::ZeroRepeats)));

    let no_skeletons = BenchConfig { skeletons: vec![], ..grid_config(vec![spec.clone()]) };
    assert!(matches!(run_grid(&no_skeletons), Err(GridError::NoSkeletons)));

    let no_workers = BenchConfig { workers: vec![], ..grid_config(vec![spec]) };
    assert!(matches!(run_grid(&no_workers), Err(GridError::NoWorkers)));
}

#[test]
fn gate_reports_disagreeing_objectives() {
    let mut records = vec![
        record("i", Skeleton::Seq, 1, 0, 1.0),
        record("i", Skeleton::Ordered, 2, 0, 1.0),
        record("j", Skeleton::Seq, 1, 0, 1.0),
    ];
    records[1].objective = Some(41);
    let mut censored = record("i", Skeleton::Unordered, 2, 0, 1.0);
    censored.censored = true;
    censored.objective = None;
    records.push(censored);

    let failures = correctness_gate(&records).unwrap_err();
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0].instance, "i");
    assert_eq!(failures[0].values, vec![42, 41]);
}

#[test]
fn identical_runtimes_summarise_to_zero_spread() {
    let records: Vec<RunRecord> =
        (0..10).map(|i| record("i", Skeleton::Ordered, 1, i, 2.0)).collect();
    let summary = summarise(&records);
    assert_eq!(summary.len(), 1);
    let s = &summary[0];
    assert_eq!(s.repeats, 10);
    assert!(approx(s.mean, 2.0));
    assert!(approx(s.median, 2.0));
    assert!(approx(s.sd, 0.0));
    assert!(approx(s.rsd.unwrap(), 0.0));
    assert!(approx(s.min, 2.0));
    assert!(approx(s.max, 2.0));
}

#[test]
fn summary_statistics_match_hand_computation() {
    let times = [1.0, 2.0, 3.0, 4.0];
    let records: Vec<RunRecord> = times
        .iter()
        .enumerate()
        .map(|(i, &t)| record("i", Skeleton::Ordered, 2, i, t))
        .collect();
    let s = &summarise(&records)[0];
    assert!(approx(s.mean, 2.5));
    assert!(approx(s.median, 2.5));
    let sd = (5.0f64 / 3.0).sqrt();
    assert!(approx(s.sd, sd));
    assert!(approx(s.rsd.unwrap(), sd / 2.5));
    assert!(approx(s.min, 1.0));
    assert!(approx(s.max, 4.0));
}

#[test]
fn censored_repeats_are_left_out_of_the_statistics() {
    let mut records = vec![
        record("i", Skeleton::Ordered, 1, 0, 3.0),
        record("i", Skeleton::Ordered, 1, 1, 5.0),
    ];
    let mut lost = record("i", Skeleton::Ordered, 1, 2, 600.0);
    lost.censored = true;
    lost.objective = None;
    records.push(lost);

    let s = &summarise(&records)[0];
    assert_eq!(s.repeats, 2);
    assert_eq!(s.censored, 1);
    assert!(approx(s.mean, 4.0));
    assert!(approx(s.max, 5.0));
}

fn batch(instance: &str, skeleton: Skeleton, workers: usize, times: &[f64]) -> Vec<RunRecord> {
    times
        .iter()
        .enumerate()
        .map(|(i, &t)| record(instance, skeleton, workers, i, t))
        .collect()
}

#[test]
fn flat_runtime_curves_pass_both_properties() {
    let mut records = Vec::new();
    for workers in [1, 2, 4] {
        records.extend(batch("i", Skeleton::Ordered, workers, &[10.0; 5]));
    }
    let report = property_report(&records, &PropertyConfig::default());
    assert_eq!(report.pairs.len(), 1);
    assert!(report.pairs[0].sequential_bound.passed());
    assert!(report.pairs[0].non_increasing.passed());
    assert_eq!(report.repeatability.len(), 1);
    assert!(report.repeatability[0].verdict.passed());
    assert!(approx(report.repeatability[0].median_rsd.unwrap(), 0.0));
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn runtime_blowup_fails_both_runtime_properties() {
    let mut records = Vec::new();
    records.extend(batch("i", Skeleton::Ordered, 1, &[10.0; 5]));
    records.extend(batch("i", Skeleton::Ordered, 2, &[10.0; 5]));
    records.extend(batch("i", Skeleton::Ordered, 4, &[35.0; 5]));
    let report = property_report(&records, &PropertyConfig::default());
    let pair = &report.pairs[0];
    match &pair.sequential_bound {
        Verdict::Fail(why) => assert!(why.contains("4 workers"), "{why}"),
        other => panic!("expected a failure, got {other:?}"),
    }
    assert!(pair.non_increasing.failed());
    assert_eq!(report.exit_code(), 2);
}

#[test]
fn too_few_repeats_is_inconclusive_not_a_failure() {
    let mut records = Vec::new();
    for workers in [1, 2] {
        records.extend(batch("i", Skeleton::Ordered, workers, &[10.0; 3]));
    }
    let report = property_report(&records, &PropertyConfig::default());
    let pair = &report.pairs[0];
    assert!(matches!(pair.sequential_bound, Verdict::Inconclusive(_)));
    assert!(matches!(pair.non_increasing, Verdict::Inconclusive(_)));
    assert!(!report.any_failure());
    assert_eq!(report.exit_code(), 4);
}

#[test]
fn single_worker_count_is_inconclusive() {
    let records = batch("i", Skeleton::Unordered, 4, &[10.0; 5]);
    let report = property_report(&records, &PropertyConfig::default());
    assert!(matches!(report.pairs[0].sequential_bound, Verdict::Inconclusive(_)));
    assert_eq!(report.exit_code(), 4);
}

#[test]
fn runtimes_below_the_floor_are_inconclusive_until_the_floor_is_lowered() {
    let mut records = Vec::new();
    for workers in [1, 2, 4] {
        records.extend(batch("i", Skeleton::Ordered, workers, &[0.001; 5]));
    }
    let report = property_report(&records, &PropertyConfig::default());
    match &report.pairs[0].sequential_bound {
        Verdict::Inconclusive(why) => assert!(why.contains("floor"), "{why}"),
        other => panic!("expected inconclusive below the floor, got {other:?}"),
    }

    let lowered = PropertyConfig { min_runtime: 0.0005, ..PropertyConfig::default() };
    let report = property_report(&records, &lowered);
    assert!(report.pairs[0].sequential_bound.passed());
    assert!(report.pairs[0].non_increasing.passed());
    assert!(report.repeatability[0].verdict.passed());
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn noisy_repeats_fail_the_repeatability_property() {
    let tight = [10.0, 10.1, 9.9, 10.0, 10.0];
    let noisy = [5.0, 15.0, 5.0, 15.0, 10.0];
    let mut records = Vec::new();
    for workers in [1, 2] {
        records.extend(batch("i", Skeleton::Ordered, workers, &tight));
        records.extend(batch("i", Skeleton::Unordered, workers, &noisy));
    }
    let report = property_report(&records, &PropertyConfig::default());
    let verdict = |s: Skeleton| {
        report
            .repeatability
            .iter()
            .find(|r| r.skeleton == s)
            .map(|r| r.verdict.clone())
            .unwrap()
    };
    assert!(verdict(Skeleton::Ordered).passed());
    assert!(verdict(Skeleton::Unordered).failed());
}

#[test]
fn sequential_records_are_baseline_only() {
    let records = batch("i", Skeleton::Seq, 1, &[10.0; 5]);
    let report = property_report(&records, &PropertyConfig::default());
    assert!(report.pairs.is_empty());
    assert_eq!(report.repeatability.len(), 1);
    assert_eq!(report.repeatability[0].skeleton, Skeleton::Seq);
}

#[test]
fn cdf_points_rise_to_one_within_each_group() {
    let mut records = Vec::new();
    for instance in ["a", "b", "c"] {
        records.extend(batch(instance, Skeleton::Ordered, 2, &[10.0, 11.0, 9.0, 10.5, 9.5]));
    }
    let points = cdf_points(&summarise(&records));
    assert_eq!(points.len(), 3);
    for pair in points.windows(2) {
        assert!(pair[0].rsd <= pair[1].rsd);
        assert!(pair[0].fraction < pair[1].fraction);
    }
    assert!(approx(points.last().unwrap().fraction, 1.0));
}

#[test]
fn emission_is_byte_stable() {
    let mut records = Vec::new();
    for workers in [1, 2] {
        records.extend(batch("i", Skeleton::Ordered, workers, &[1.5, 2.5, 2.0]));
    }
    let dir = tempfile::tempdir().unwrap();
    let once = emit_results(&records, OutputFormat::Csv, true, &dir.path().join("one")).unwrap();
    let twice = emit_results(&records, OutputFormat::Csv, true, &dir.path().join("two")).unwrap();
    assert_eq!(once.len(), 3);
    assert_eq!(twice.len(), 3);
    for (a, b) in once.iter().zip(&twice) {
        assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
    }
}

#[test]
fn csv_quotes_awkward_ids_and_leaves_censored_objectives_blank() {
    let mut tricky = record("runs/a,\"b\".kp#x", Skeleton::Seq, 1, 0, 1.0);
    tricky.censored = true;
    tricky.objective = None;
    let csv = render_records_csv(&[tricky]);
    let body = csv.lines().nth(1).unwrap();
    assert!(body.starts_with("\"runs/a,\"\"b\"\".kp#x\","));
    assert!(body.contains(",true,"));
    assert!(body.contains(",1.000000,,"));
}

#[test]
fn json_bundle_holds_records_summary_and_cdf() {
    let mut records = Vec::new();
    for workers in [1, 2] {
        records.extend(batch("i", Skeleton::Ordered, workers, &[1.0, 2.0]));
    }
    let dir = tempfile::tempdir().unwrap();
    let written = emit_results(&records, OutputFormat::Json, true, &dir.path().join("out")).unwrap();
    assert_eq!(written.len(), 1);
    let value: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&written[0]).unwrap()).unwrap();
    assert_eq!(value["records"].as_array().unwrap().len(), 4);
    assert_eq!(value["summary"].as_array().unwrap().len(), 2);
    assert_eq!(value["cdf"].as_array().unwrap().len(), 2);
    assert_eq!(value["records"][0]["objective"], serde_json::json!(42));
    assert_eq!(value["summary"][0]["workers"], serde_json::json!(1));
}

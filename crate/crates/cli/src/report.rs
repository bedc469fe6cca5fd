//! Per-configuration statistics and the three replicability verdicts.

use std::fmt;

use crate::grid::{RunRecord, Skeleton};

/// Runtime statistics for one (instance, skeleton, workers) configuration,
/// over its non-censored repeats. All durations are seconds. `rsd` is
/// sd/mean and is absent (flagged) when the mean is zero or no repeat
/// finished.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigStats {
    pub instance: String,
    pub skeleton: Skeleton,
    pub workers: usize,
    pub repeats: usize,
    pub censored: usize,
    pub mean: f64,
    pub median: f64,
    pub sd: f64,
    pub rsd: Option<f64>,
    pub min: f64,
    pub max: f64,
}

fn median_of(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

/// Groups records by (instance, skeleton, workers) and reduces each group.
/// The output is sorted by the group key, so identical records give
/// identical summaries. No outliers are removed; the median sits alongside
/// the mean instead.
pub fn summarise(records: &[RunRecord]) -> Vec<ConfigStats> {
    let mut keys: Vec<(&str, Skeleton, usize)> = records
        .iter()
        .map(|r| (r.instance.as_str(), r.skeleton, r.workers))
        .collect();
    keys.sort();
    keys.dedup();

    keys.into_iter()
        .map(|(instance, skeleton, workers)| {
            let group: Vec<&RunRecord> = records
                .iter()
                .filter(|r| r.instance == instance && r.skeleton == skeleton && r.workers == workers)
                .collect();
            let censored = group.iter().filter(|r| r.censored).count();
            let mut times: Vec<f64> = group
                .iter()
                .filter(|r| !r.censored)
                .map(|r| r.wall_time.as_secs_f64())
                .collect();
            times.sort_by(|a, b| a.total_cmp(b));
            let repeats = times.len();
            if repeats == 0 {
                return ConfigStats {
                    instance: instance.to_string(),
                    skeleton,
                    workers,
                    repeats,
                    censored,
                    mean: 0.0,
                    median: 0.0,
                    sd: 0.0,
                    rsd: None,
                    min: 0.0,
                    max: 0.0,
                };
            }
            let mean = times.iter().sum::<f64>() / repeats as f64;
            let sd = if repeats >= 2 {
                let var = times.iter().map(|t| (t - mean).powi(2)).sum::<f64>()
                    / (repeats - 1) as f64;
                var.sqrt()
            } else {
                0.0
            };
            let rsd = if mean > 0.0 { Some(sd / mean) } else { None };
            ConfigStats {
                instance: instance.to_string(),
                skeleton,
                workers,
                repeats,
                censored,
                mean,
                median: median_of(&times),
                sd,
                rsd,
                min: times[0],
                max: times[repeats - 1],
            }
        })
        .collect()
}

/// Thresholds for the replicability verdicts.
#[derive(Debug, Clone)]
pub struct PropertyConfig {
    /// Relative slack on the two runtime properties.
    pub epsilon: f64,
    /// Ceiling on the median RSD for the repeatability verdict.
    pub rsd_threshold: f64,
    /// Configurations whose mean runtime is below this many seconds are
    /// left out of RSD aggregation.
    pub min_runtime: f64,
    /// Fewest finished repeats per configuration for a conclusive verdict.
    pub min_repeats: usize,
}

impl Default for PropertyConfig {
    fn default() -> Self {
        PropertyConfig {
            epsilon: 0.15,
            rsd_threshold: 0.10,
            min_runtime: 5.0,
            min_repeats: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Pass,
    Fail(String),
    Inconclusive(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn failed(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail(why) => write!(f, "FAIL ({why})"),
            Verdict::Inconclusive(why) => write!(f, "inconclusive ({why})"),
        }
    }
}

/// Runtime verdicts for one instance under one parallel skeleton.
#[derive(Debug, Clone)]
pub struct PairReport {
    pub instance: String,
    pub skeleton: Skeleton,
    /// Mean runtime at every worker count stays within (1+ε) of the
    /// one-worker mean.
    pub sequential_bound: Verdict,
    /// Mean runtime never increases (beyond ε) as workers are added.
    pub non_increasing: Verdict,
    /// (workers, mean seconds) pairs the verdicts were computed from.
    pub means: Vec<(usize, f64)>,
}

/// Median-RSD verdict for one skeleton across its configurations.
#[derive(Debug, Clone)]
pub struct RepeatabilityReport {
    pub skeleton: Skeleton,
    pub included: usize,
    pub excluded: usize,
    pub median_rsd: Option<f64>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub pairs: Vec<PairReport>,
    pub repeatability: Vec<RepeatabilityReport>,
    pub epsilon: f64,
    pub rsd_threshold: f64,
}

impl PropertyReport {
    pub fn any_failure(&self) -> bool {
        self.pairs
            .iter()
            .any(|p| p.sequential_bound.failed() || p.non_increasing.failed())
            || self.repeatability.iter().any(|r| r.verdict.failed())
    }

    pub fn any_inconclusive(&self) -> bool {
        let pair = |v: &Verdict| matches!(v, Verdict::Inconclusive(_));
        self.pairs
            .iter()
            .any(|p| pair(&p.sequential_bound) || pair(&p.non_increasing))
            || self
                .repeatability
                .iter()
                .any(|r| matches!(r.verdict, Verdict::Inconclusive(_)))
    }

    /// 0 when everything passed, 2 on a property failure, 4 when some
    /// verdict could not be reached (insufficient repeats or coverage).
    pub fn exit_code(&self) -> i32 {
        if self.any_failure() {
            2
        } else if self.any_inconclusive() {
            4
        } else {
            0
        }
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        writeln!(f, "runtime properties (epsilon {:.0}%):", self.epsilon * 100.0)?;
        for pair in &self.pairs {
            let means: Vec<String> = pair
                .means
                .iter()
                .map(|(w, m)| format!("{w}w {m:.3}s"))
                .collect();
            writeln!(
                f,
                "  {} / {}: sequential-bound {}, non-increasing {} [{}]",
                pair.instance,
                pair.skeleton,
                pair.sequential_bound,
                pair.non_increasing,
                means.join(", ")
            )?;
        }
        writeln!(
            f,
            "repeatability (median RSD threshold {:.0}%):",
            self.rsd_threshold * 100.0
        )?;
        for r in &self.repeatability {
            let rsd = match r.median_rsd {
                Some(v) => format!("{:.2}%", v * 100.0),
                None => "n/a".to_string(),
            };
            writeln!(
                f,
                "  {}: median RSD {} over {} configurations ({} excluded): {}",
                r.skeleton, rsd, r.included, r.excluded, r.verdict
            )?;
        }
        Ok(())
    }
}

/// Evaluates the two runtime properties per (instance, parallel skeleton)
/// and the repeatability property per skeleton. The sequential skeleton is
/// the baseline reference only; it carries no verdicts of its own.
pub fn property_report(records: &[RunRecord], config: &PropertyConfig) -> PropertyReport {
    let summary = summarise(records);

    let mut pair_keys: Vec<(String, Skeleton)> = summary
        .iter()
        .filter(|s| s.skeleton != Skeleton::Seq)
        .map(|s| (s.instance.clone(), s.skeleton))
        .collect();
    pair_keys.sort();
    pair_keys.dedup();

    let pairs = pair_keys
        .into_iter()
        .map(|(instance, skeleton)| {
            let mut configs: Vec<&ConfigStats> = summary
                .iter()
                .filter(|s| s.instance == instance && s.skeleton == skeleton)
                .collect();
            configs.sort_by_key(|s| s.workers);
            let means: Vec<(usize, f64)> =
                configs.iter().map(|s| (s.workers, s.mean)).collect();

            let thin: Vec<&&ConfigStats> = configs
                .iter()
                .filter(|s| s.repeats < config.min_repeats)
                .collect();
            if let Some(s) = thin.first() {
                let why = format!(
                    "{} of {} repeats finished at {} workers",
                    s.repeats,
                    s.repeats + s.censored,
                    s.workers
                );
                return PairReport {
                    instance,
                    skeleton,
                    sequential_bound: Verdict::Inconclusive(why.clone()),
                    non_increasing: Verdict::Inconclusive(why),
                    means,
                };
            }
            if configs.len() < 2 {
                let why = "fewer than two worker counts".to_string();
                return PairReport {
                    instance,
                    skeleton,
                    sequential_bound: Verdict::Inconclusive(why.clone()),
                    non_increasing: Verdict::Inconclusive(why),
                    means,
                };
            }
            let reference = configs[0].mean;
            if reference < config.min_runtime {
                let why = format!(
                    "reference mean {:.3}s is below the {:.1}s floor, so overhead \
                     dominates the measurement",
                    reference, config.min_runtime
                );
                return PairReport {
                    instance,
                    skeleton,
                    sequential_bound: Verdict::Inconclusive(why.clone()),
                    non_increasing: Verdict::Inconclusive(why),
                    means,
                };
            }

            let sequential_bound = match configs.iter().find(|s| s.workers == 1) {
                None => Verdict::Inconclusive("no one-worker baseline".to_string()),
                Some(base) => {
                    let limit = base.mean * (1.0 + config.epsilon);
                    match configs.iter().find(|s| s.mean > limit) {
                        Some(s) => Verdict::Fail(format!(
                            "{} workers: mean {:.3}s exceeds {:.3}s × (1+ε) = {:.3}s",
                            s.workers, s.mean, base.mean, limit
                        )),
                        None => Verdict::Pass,
                    }
                }
            };
            let non_increasing = configs
                .windows(2)
                .find(|w| w[1].mean > w[0].mean * (1.0 + config.epsilon))
                .map(|w| {
                    Verdict::Fail(format!(
                        "mean rises from {:.3}s at {} workers to {:.3}s at {} workers",
                        w[0].mean, w[0].workers, w[1].mean, w[1].workers
                    ))
                })
                .unwrap_or(Verdict::Pass);

            PairReport { instance, skeleton, sequential_bound, non_increasing, means }
        })
        .collect();

    let mut skeletons: Vec<Skeleton> = summary.iter().map(|s| s.skeleton).collect();
    skeletons.sort();
    skeletons.dedup();
    let repeatability = skeletons
        .into_iter()
        .map(|skeleton| {
            let (included, excluded): (Vec<&ConfigStats>, Vec<&ConfigStats>) = summary
                .iter()
                .filter(|s| s.skeleton == skeleton)
                .partition(|s| s.rsd.is_some() && s.mean >= config.min_runtime);
            let mut rsds: Vec<f64> = included.iter().filter_map(|s| s.rsd).collect();
            rsds.sort_by(|a, b| a.total_cmp(b));
            let median_rsd = (!rsds.is_empty()).then(|| median_of(&rsds));
            let verdict = match median_rsd {
                None => Verdict::Inconclusive(format!(
                    "no configuration reached the {:.1}s RSD cutoff",
                    config.min_runtime
                )),
                Some(v) if v <= config.rsd_threshold => Verdict::Pass,
                Some(v) => Verdict::Fail(format!(
                    "median RSD {:.2}% exceeds {:.2}%",
                    v * 100.0,
                    config.rsd_threshold * 100.0
                )),
            };
            RepeatabilityReport {
                skeleton,
                included: included.len(),
                excluded: excluded.len(),
                median_rsd,
                verdict,
            }
        })
        .collect();

    PropertyReport {
        pairs,
        repeatability,
        epsilon: config.epsilon,
        rsd_threshold: config.rsd_threshold,
    }
}

/// One point of the RSD distribution for a skeleton × worker-count group:
/// `fraction` of that group's configurations have RSD ≤ `rsd`.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfPoint {
    pub skeleton: Skeleton,
    pub workers: usize,
    pub rsd: f64,
    pub fraction: f64,
}

/// RSD cumulative-distribution points per skeleton × worker count, ready
/// for plotting. Configurations without an RSD are skipped.
pub fn cdf_points(summary: &[ConfigStats]) -> Vec<CdfPoint> {
    let mut groups: Vec<(Skeleton, usize)> =
        summary.iter().map(|s| (s.skeleton, s.workers)).collect();
    groups.sort();
    groups.dedup();

    let mut points = Vec::new();
    for (skeleton, workers) in groups {
        let mut rsds: Vec<f64> = summary
            .iter()
            .filter(|s| s.skeleton == skeleton && s.workers == workers)
            .filter_map(|s| s.rsd)
            .collect();
        rsds.sort_by(|a, b| a.total_cmp(b));
        let n = rsds.len();
        points.extend(rsds.into_iter().enumerate().map(|(i, rsd)| CdfPoint {
            skeleton,
            workers,
            rsd,
            fraction: (i + 1) as f64 / n as f64,
        }));
    }
    points
}

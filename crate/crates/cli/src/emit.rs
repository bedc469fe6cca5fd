//! Serialises records, summaries and CDF points for external tools.
//!
//! Emission is a pure function of its inputs: the same records always
//! produce byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde_json::json;

use crate::grid::RunRecord;
use crate::report::{cdf_points, summarise, CdfPoint, ConfigStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown output format {other:?}")),
        }
    }
}

fn csv_field(value: &str) -> String {
    if value.contains([',', '"', '\n']) {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}

pub fn render_records_csv(records: &[RunRecord]) -> String {
    let mut out = String::from(
        "instance,skeleton,workers,spawn_depth,diversify,seed,repeat,censored,wall_time_s,\
         objective,nodes_expanded,prunes,incumbent_updates,tasks_generated,tasks_executed,\
         tasks_pruned\n",
    );
    for r in records {
        let objective = r.objective.map(|v| v.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{:.6},{},{},{},{},{},{},{}",
            csv_field(&r.instance),
            r.skeleton,
            r.workers,
            r.spawn_depth,
            r.diversify,
            r.seed,
            r.repeat,
            r.censored,
            r.wall_time.as_secs_f64(),
            objective,
            r.stats.nodes_expanded,
            r.stats.prunes,
            r.stats.incumbent_updates,
            r.stats.tasks_generated,
            r.stats.tasks_executed,
            r.stats.tasks_pruned,
        )
        .unwrap();
    }
    out
}

pub fn render_summary_csv(summary: &[ConfigStats]) -> String {
    let mut out =
        String::from("instance,skeleton,workers,repeats,censored,mean_s,median_s,sd_s,rsd,min_s,max_s\n");
    for s in summary {
        let rsd = s.rsd.map(|v| format!("{v:.6}")).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{:.6},{:.6},{:.6},{},{:.6},{:.6}",
            csv_field(&s.instance),
            s.skeleton,
            s.workers,
            s.repeats,
            s.censored,
            s.mean,
            s.median,
            s.sd,
            rsd,
            s.min,
            s.max,
        )
        .unwrap();
    }
    out
}

fn render_cdf_csv(points: &[CdfPoint]) -> String {
    let mut out = String::from("skeleton,workers,rsd,cumulative_fraction\n");
    for p in points {
        writeln!(out, "{},{},{:.6},{:.6}", p.skeleton, p.workers, p.rsd, p.fraction).unwrap();
    }
    out
}

fn record_value(r: &RunRecord) -> serde_json::Value {
    json!({
        "instance": r.instance,
        "skeleton": r.skeleton.to_string(),
        "workers": r.workers,
        "spawn_depth": r.spawn_depth,
        "diversify": r.diversify,
        "seed": r.seed,
        "repeat": r.repeat,
        "censored": r.censored,
        "wall_time_s": r.wall_time.as_secs_f64(),
        "objective": r.objective,
        "stats": {
            "nodes_expanded": r.stats.nodes_expanded,
            "prunes": r.stats.prunes,
            "incumbent_updates": r.stats.incumbent_updates,
            "tasks_generated": r.stats.tasks_generated,
            "tasks_executed": r.stats.tasks_executed,
            "tasks_pruned": r.stats.tasks_pruned,
        },
    })
}

/// Records alone as a pretty-printed JSON array (the `solve` output shape).
pub fn render_records_json(records: &[RunRecord]) -> String {
    let values: Vec<_> = records.iter().map(record_value).collect();
    let mut text = serde_json::to_string_pretty(&serde_json::Value::Array(values))
        .expect("plain data serialises");
    text.push('\n');
    text
}

fn json_value(records: &[RunRecord], summary: &[ConfigStats], cdf: Option<&[CdfPoint]>) -> serde_json::Value {
    let records: Vec<_> = records.iter().map(record_value).collect();
    let summary: Vec<_> = summary
        .iter()
        .map(|s| {
            json!({
                "instance": s.instance,
                "skeleton": s.skeleton.to_string(),
                "workers": s.workers,
                "repeats": s.repeats,
                "censored": s.censored,
                "mean_s": s.mean,
                "median_s": s.median,
                "sd_s": s.sd,
                "rsd": s.rsd,
                "min_s": s.min,
                "max_s": s.max,
            })
        })
        .collect();
    let mut value = json!({ "records": records, "summary": summary });
    if let Some(points) = cdf {
        let points: Vec<_> = points
            .iter()
            .map(|p| {
                json!({
                    "skeleton": p.skeleton.to_string(),
                    "workers": p.workers,
                    "rsd": p.rsd,
                    "cumulative_fraction": p.fraction,
                })
            })
            .collect();
        value["cdf"] = serde_json::Value::Array(points);
    }
    value
}

/// Writes the record set (plus derived summary, plus optional CDF points)
/// next to `prefix` and returns the paths written. CSV output spans one
/// file per table; JSON bundles everything into `<prefix>.json`.
pub fn emit_results(
    records: &[RunRecord],
    format: OutputFormat,
    cdf: bool,
    prefix: &Path,
) -> io::Result<Vec<PathBuf>> {
    let summary = summarise(records);
    let with_suffix = |suffix: &str| -> PathBuf {
        let mut name = prefix.file_name().unwrap_or_default().to_os_string();
        name.push(suffix);
        prefix.with_file_name(name)
    };
    let mut written = Vec::new();
    match format {
        OutputFormat::Csv => {
            let records_path = with_suffix(".records.csv");
            fs::write(&records_path, render_records_csv(records))?;
            written.push(records_path);
            let summary_path = with_suffix(".summary.csv");
            fs::write(&summary_path, render_summary_csv(&summary))?;
            written.push(summary_path);
            if cdf {
                let cdf_path = with_suffix(".cdf.csv");
                fs::write(&cdf_path, render_cdf_csv(&cdf_points(&summary)))?;
                written.push(cdf_path);
            }
        }
        OutputFormat::Json => {
            let points = cdf.then(|| cdf_points(&summary));
            let value = json_value(records, &summary, points.as_deref());
            let path = with_suffix(".json");
            let mut text = serde_json::to_string_pretty(&value).expect("plain data serialises");
            text.push('\n');
            fs::write(&path, text)?;
            written.push(path);
        }
    }
    Ok(written)
}

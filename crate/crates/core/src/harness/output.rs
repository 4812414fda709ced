//! CSV and SVG emission of scenario results.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::config::{ScenarioConfig, ScenarioKind};
use super::plot::{svg_line_chart, PlotSeries};
use super::{CurvePoint, HarnessError, PatternResult, ScenarioResult};

pub const CSV_HEADER: &str = "algorithm,n,m,sir_db,sinr_out_db,trials";

fn create(path: &Path) -> Result<fs::File, HarnessError> {
    fs::File::create(path).map_err(|e| HarnessError::io(path, e))
}

fn write_all(path: &Path, bytes: &[u8]) -> Result<(), HarnessError> {
    create(path)?.write_all(bytes).map_err(|e| HarnessError::io(path, e))
}

/// Writes curve points with the standard header.
pub fn emit_csv(rows: &[CurvePoint], path: &Path) -> Result<(), HarnessError> {
    let mut text = String::from(CSV_HEADER);
    text.push('\n');
    for r in rows {
        text.push_str(&format!(
            "{},{},{},{},{:.6},{}\n",
            r.series.label(),
            r.n,
            r.m,
            r.sir_db,
            r.sinr_out_db,
            r.trials
        ));
    }
    write_all(path, text.as_bytes())
}

/// Which column of a curve set goes on the horizontal axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XAxis {
    N,
    M,
}

/// Writes an SVG chart of output SINR against `N` or `M`, one line per
/// algorithm and secondary sweep value.
pub fn emit_plot(title: &str, rows: &[CurvePoint], x_axis: XAxis, path: &Path) -> Result<(), HarnessError> {
    let mut lines: BTreeMap<(super::Series, usize), Vec<(f64, f64)>> = BTreeMap::new();
    for r in rows {
        let (x, key) = match x_axis {
            XAxis::N => (r.n as f64, ((r.m as f64 / r.n as f64) * 1000.0).round() as usize),
            XAxis::M => (r.m as f64, r.n),
        };
        lines.entry((r.series, key)).or_default().push((x, r.sinr_out_db));
    }
    let multi = lines.keys().map(|k| k.1).collect::<std::collections::BTreeSet<_>>().len() > 1;
    let series: Vec<PlotSeries> = lines
        .into_iter()
        .map(|((s, key), points)| {
            let label = match (multi, x_axis) {
                (false, _) => s.label().to_string(),
                (true, XAxis::N) => format!("{} M/N={}", s.label(), key as f64 / 1000.0),
                (true, XAxis::M) => format!("{} N={key}", s.label()),
            };
            PlotSeries { label, points }
        })
        .collect();
    let x_label = match x_axis {
        XAxis::N => "N",
        XAxis::M => "training snapshots M",
    };
    write_all(path, svg_line_chart(title, x_label, "output SINR, dB", &series).as_bytes())
}

fn group_by<K: Ord>(rows: &[CurvePoint], key: impl Fn(&CurvePoint) -> K) -> BTreeMap<K, Vec<CurvePoint>> {
    let mut map: BTreeMap<K, Vec<CurvePoint>> = BTreeMap::new();
    for r in rows {
        map.entry(key(r)).or_default().push(r.clone());
    }
    map
}

fn write_pattern(result: &PatternResult, dir: &Path, plot: bool) -> Result<Vec<PathBuf>, HarnessError> {
    let mut written = Vec::new();
    for (series, grid) in &result.grids {
        let path = dir.join(format!("quad_pattern_{}.csv", series.label()));
        let mut buf = Vec::new();
        grid.write_csv(&mut buf).map_err(|e| HarnessError::io(&path, e))?;
        write_all(&path, &buf)?;
        written.push(path);
    }
    let path = dir.join("quad_pattern_directions.csv");
    let mut text = String::from("algorithm,angle_deg,role,gain_db,trials\n");
    for d in &result.directions {
        let role = if d.is_target { "target" } else { "jammer" };
        text.push_str(&format!("{},{},{role},{:.6},{}\n", d.series.label(), d.angle_deg, d.gain_db, result.trials));
    }
    write_all(&path, text.as_bytes())?;
    written.push(path);
    if plot {
        let series: Vec<PlotSeries> = result
            .grids
            .iter()
            .map(|(s, g)| PlotSeries {
                label: s.label().to_string(),
                points: g.angles.iter().copied().zip(g.gains_db.iter().map(|v| v.max(-80.0))).collect(),
            })
            .collect();
        let path = dir.join("quad_pattern.svg");
        let title = format!("Averaged beampatterns, N = {}, M = {}", result.n, result.m);
        write_all(&path, svg_line_chart(&title, "angle, deg", "gain, dB", &series).as_bytes())?;
        written.push(path);
    }
    Ok(written)
}

/// Writes one CSV per figure-equivalent (and optional SVG charts) into `dir`.
pub fn write_outputs(
    cfg: &ScenarioConfig,
    result: &ScenarioResult,
    dir: &Path,
    plot: bool,
) -> Result<Vec<PathBuf>, HarnessError> {
    fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    let prefix = cfg.kind.section();
    let rows = match result {
        ScenarioResult::Patterns(p) => return write_pattern(p, dir, plot),
        ScenarioResult::Curves(rows) => rows,
    };
    let mut written = Vec::new();
    match cfg.kind {
        ScenarioKind::QuadLearn => {
            let groups = group_by(rows, |r| (r.n, ordered(r.sir_db)));
            for ((n, _), group) in groups {
                let sir = group[0].sir_db;
                let stem = format!("{prefix}_N{n}_SIR{sir}");
                let path = dir.join(format!("{stem}.csv"));
                emit_csv(&group, &path)?;
                written.push(path);
                if plot {
                    let path = dir.join(format!("{stem}.svg"));
                    emit_plot(&format!("Learning curves, N = {n}, SIR = {sir} dB"), &group, XAxis::M, &path)?;
                    written.push(path);
                }
            }
        }
        _ => {
            let mut order: Vec<f64> = Vec::new();
            for r in rows {
                if !order.contains(&r.sir_db) {
                    order.push(r.sir_db);
                }
            }
            for sir in order {
                let group: Vec<CurvePoint> = rows.iter().filter(|r| r.sir_db == sir).cloned().collect();
                let stem = format!("{prefix}_SIR{sir}");
                let path = dir.join(format!("{stem}.csv"));
                emit_csv(&group, &path)?;
                written.push(path);
                if plot {
                    let path = dir.join(format!("{stem}.svg"));
                    emit_plot(&format!("Output SINR, SIR = {sir} dB"), &group, XAxis::N, &path)?;
                    written.push(path);
                }
            }
        }
    }
    Ok(written)
}

/// Total order key for finite floats.
fn ordered(x: f64) -> i64 {
    (x * 1e6).round() as i64
}

//! Command-line front end.
//!
//! Exit codes: `0` success, `1` I/O, parse or validation failure, `2` the
//! instance (or requested radius) admits no admissible curve.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::curves::{validate_membership, PiecewisePath};
use crate::discrete::{chain_to_path, DiscreteArcChain, CLOSURE_TOL};
use crate::exact::{baseline_parabola, build_arc_segment, build_dubins, CaseTag};
use crate::export::{
    chain_csv, parabola_samples, presented_samples, samples_csv, svg_document, PathDocument,
    SvgLayer,
};
use crate::geometry::{
    feasibility_check, length_bounds, BoundsReport, InstanceSpec, ProblemInstance,
};
use crate::lp::{solve_maxmin, solve_minlength};
use crate::{Error, Result};

/// Default discretization sweep of `report`.
pub const REPORT_SWEEP: [usize; 6] = [2, 5, 10, 50, 100, 300];
const CSV_SAMPLES: usize = 1001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Arc+segment curve of maximal smallest radius.
    Exact,
    /// Arc-segment-arc curve of a given radius.
    Dubins,
    /// Quadratic Bézier through the corner.
    Baseline,
    /// Equal-angle arc chain maximizing the smallest radius.
    Discrete,
    /// Everything above, summarized.
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Svg,
    Csv,
    Json,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "cornercurve",
    version,
    about = "Nonnegative-curvature curves around a corner"
)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Instance JSON: {"A":[x,y],"B":[x,y],"alpha":[dx,dy],"beta":[dx,dy]} and optional "O".
    #[arg(long)]
    pub instance: PathBuf,
    /// Number of arcs (discrete).
    #[arg(long)]
    pub p: Option<usize>,
    /// Arc radius (dubins).
    #[arg(long)]
    pub radius: Option<f64>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Validation tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

/// Summary printed by `report`.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub r_a: f64,
    pub case_tag: CaseTag,
    pub baseline_min_radius: f64,
    pub baseline_t_min: f64,
    pub discrete_min_radius_by_p: BTreeMap<usize, Option<f64>>,
    pub lengths: Lengths,
    pub bounds: BoundsReport,
    pub improvement_ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Lengths {
    pub exact: f64,
    pub baseline: f64,
    pub discrete_by_p: BTreeMap<usize, Option<f64>>,
    /// Shortest chain at the largest `p` with the max-min radius as floor.
    pub min_length_chain: Option<f64>,
}

pub fn main() -> i32 {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    run(&config)
}

pub fn run(config: &RunConfig) -> i32 {
    match execute(config) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_infeasible() {
        2
    } else {
        1
    }
}

fn load_instance(path: &Path) -> Result<ProblemInstance> {
    let text = fs::read_to_string(path)?;
    let inst = InstanceSpec::from_json(&text)?.normalize()?;
    let f = feasibility_check(&inst);
    if !f.feasible {
        return Err(Error::InfeasibleGeometry { u0: f.u0, v0: f.v0 });
    }
    Ok(inst)
}

fn emit(config: &RunConfig, body: &str) -> Result<()> {
    match &config.out {
        Some(path) => fs::write(path, body)?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn checked(path: &PiecewisePath, inst: &ProblemInstance, tol: f64) -> Result<()> {
    validate_membership(path, inst, tol).into_result()
}

fn render_path(
    config: &RunConfig,
    inst: &ProblemInstance,
    kind: &'static str,
    path: &PiecewisePath,
    extra: serde_json::Value,
) -> Result<String> {
    Ok(match config.format {
        Format::Csv => samples_csv(&presented_samples(path, inst, CSV_SAMPLES)),
        Format::Svg => svg_document(&[SvgLayer::from_path(kind, path, inst)]),
        Format::Json => {
            let mut doc = serde_json::to_value(PathDocument::new(kind, path, inst))?;
            if let (Some(obj), serde_json::Value::Object(more)) = (doc.as_object_mut(), extra) {
                obj.extend(more);
            }
            serde_json::to_string_pretty(&doc)? + "\n"
        }
    })
}

fn execute(config: &RunConfig) -> Result<()> {
    if config.tol.is_nan() || config.tol <= 0.0 {
        return Err(Error::InvalidInput("--tol must be positive".into()));
    }
    let inst = load_instance(&config.instance)?;
    match config.command {
        Command::Exact => {
            let sol = build_arc_segment(&inst)?;
            checked(&sol.path, &inst, config.tol)?;
            let extra = serde_json::json!({
                "r_a": sol.r_a,
                "case_tag": sol.case_tag,
                "segment_length": sol.segment_length,
            });
            emit(
                config,
                &render_path(config, &inst, "exact", &sol.path, extra)?,
            )
        }
        Command::Dubins => {
            let radius = config
                .radius
                .ok_or_else(|| Error::InvalidInput("dubins requires --radius".into()))?;
            let path = build_dubins(&inst, radius)?;
            checked(&path, &inst, config.tol)?;
            let extra = serde_json::json!({ "radius": radius });
            emit(config, &render_path(config, &inst, "dubins", &path, extra)?)
        }
        Command::Baseline => {
            let par = baseline_parabola(&inst)?;
            let body = match config.format {
                Format::Json => serde_json::to_string_pretty(&par)? + "\n",
                Format::Csv => samples_csv(&parabola_samples(&par, &inst, CSV_SAMPLES)),
                Format::Svg => {
                    svg_document(&[SvgLayer::polyline("parabola", &par.sample(CSV_SAMPLES))])
                }
            };
            emit(config, &body)
        }
        Command::Discrete => {
            let p = config
                .p
                .ok_or_else(|| Error::InvalidInput("discrete requires --p".into()))?;
            let chain = solve_maxmin(&inst, p)?;
            let path = chain_to_path(&chain, &inst)?;
            checked(&path, &inst, discrete_tol(config, &inst))?;
            let body = match config.format {
                Format::Json => {
                    serde_json::to_string_pretty(&ChainDocument::new(&chain, &inst))? + "\n"
                }
                Format::Csv => chain_csv(&chain),
                Format::Svg => svg_document(&[SvgLayer::from_path("discrete", &path, &inst)]),
            };
            emit(config, &body)
        }
        Command::Report => report(config, &inst),
    }
}

/// Chain tolerance: the looser of `--tol` and the LP closure tolerance.
fn discrete_tol(config: &RunConfig, inst: &ProblemInstance) -> f64 {
    config
        .tol
        .max(CLOSURE_TOL * (1.0 + inst.a().distance(inst.b())))
}

/// JSON form of a solved chain. The radii are listed from the start of the
/// normalized traversal, which is the caller's `B` end when `flipped`.
#[derive(Debug, Clone, Serialize)]
pub struct ChainDocument<'a> {
    #[serde(flatten)]
    pub chain: &'a DiscreteArcChain,
    pub flipped: bool,
    pub min_radius: f64,
    pub length: f64,
}

impl<'a> ChainDocument<'a> {
    pub fn new(chain: &'a DiscreteArcChain, inst: &ProblemInstance) -> Self {
        Self {
            chain,
            flipped: inst.flipped(),
            min_radius: chain.min_radius(),
            length: chain.length(),
        }
    }
}

struct SweepEntry {
    p: usize,
    chain: Result<DiscreteArcChain>,
}

fn sweep(inst: &ProblemInstance, ps: &[usize]) -> Vec<SweepEntry> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = ps
            .iter()
            .map(|&p| {
                scope.spawn(move || SweepEntry {
                    p,
                    chain: solve_maxmin(inst, p),
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("solver thread panicked"))
            .collect()
    })
}

pub fn build_report(inst: &ProblemInstance, tol: f64) -> Result<(SolveReport, Vec<SvgLayer>)> {
    let exact = build_arc_segment(inst)?;
    checked(&exact.path, inst, tol)?;
    let par = baseline_parabola(inst)?;
    let bounds = length_bounds(inst)?;
    let chain_tol = tol.max(CLOSURE_TOL * (1.0 + inst.a().distance(inst.b())));

    let mut radius_by_p = BTreeMap::new();
    let mut length_by_p = BTreeMap::new();
    let mut largest = None;
    for entry in sweep(inst, &REPORT_SWEEP) {
        match entry.chain {
            Ok(chain) => {
                let path = chain_to_path(&chain, inst)?;
                checked(&path, inst, chain_tol)?;
                radius_by_p.insert(entry.p, Some(chain.min_radius()));
                length_by_p.insert(entry.p, Some(chain.length()));
                largest = Some((chain, path));
            }
            Err(Error::DiscreteInfeasible { .. }) => {
                radius_by_p.insert(entry.p, None);
                length_by_p.insert(entry.p, None);
            }
            Err(e) => return Err(e),
        }
    }

    let mut layers = vec![SvgLayer::from_path("exact", &exact.path, inst)];
    let mut min_length_chain = None;
    if let Some((chain, path)) = &largest {
        layers.push(SvgLayer::from_path("discrete", path, inst));
        if let Ok(short) = solve_minlength(inst, chain.p(), chain.min_radius()) {
            if let Ok(short_path) = chain_to_path(&short, inst) {
                checked(&short_path, inst, chain_tol)?;
                min_length_chain = Some(short.length());
                layers.push(SvgLayer::from_path("minlength", &short_path, inst));
            }
        }
    }
    layers.push(SvgLayer::polyline("parabola", &par.sample(CSV_SAMPLES)));

    let report = SolveReport {
        r_a: exact.r_a,
        case_tag: exact.case_tag,
        baseline_min_radius: par.min_radius,
        baseline_t_min: par.t_min,
        discrete_min_radius_by_p: radius_by_p,
        lengths: Lengths {
            exact: exact.path.total_length(),
            baseline: par.approx_length(20_001),
            discrete_by_p: length_by_p,
            min_length_chain,
        },
        bounds,
        improvement_ratio: exact.r_a / par.min_radius,
    };
    Ok((report, layers))
}

pub fn report_table(r: &SolveReport) -> String {
    let mut out = String::new();
    let fmt_opt =
        |v: Option<f64>| v.map_or_else(|| "infeasible".to_string(), |x| format!("{x:.10}"));
    out.push_str(&format!("{:<28}{:>18}\n", "quantity", "value"));
    out.push_str(&format!("{:<28}{:>18.10}\n", "R_a (arc+segment)", r.r_a));
    out.push_str(&format!(
        "{:<28}{:>18.10}\n",
        "parabola min radius", r.baseline_min_radius
    ));
    out.push_str(&format!(
        "{:<28}{:>18.10}\n",
        "improvement ratio", r.improvement_ratio
    ));
    out.push_str(&format!(
        "{:<28}{:>18.10}\n",
        "length bound mu", r.bounds.mu
    ));
    out.push_str(&format!(
        "{:<28}{:>18.10}\n",
        "length bound nu", r.bounds.nu
    ));
    out.push_str(&format!(
        "{:<28}{:>18.10}\n",
        "curvature floor delta", r.bounds.delta
    ));
    out.push_str(&format!(
        "{:<28}{:>18.10}\n",
        "length arc+segment", r.lengths.exact
    ));
    out.push_str(&format!(
        "{:<28}{:>18.10}\n",
        "length parabola", r.lengths.baseline
    ));
    out.push_str(&format!(
        "\n{:>6}{:>18}{:>18}\n",
        "p", "min radius", "length"
    ));
    for (p, t) in &r.discrete_min_radius_by_p {
        let len = r.lengths.discrete_by_p.get(p).copied().flatten();
        out.push_str(&format!("{p:>6}{:>18}{:>18}\n", fmt_opt(*t), fmt_opt(len)));
    }
    out.push_str(&format!(
        "{:<28}{:>18}\n",
        "\nshortest chain length",
        fmt_opt(r.lengths.min_length_chain)
    ));
    out
}

fn report(config: &RunConfig, inst: &ProblemInstance) -> Result<()> {
    let (report, layers) = build_report(inst, config.tol)?;
    let json = serde_json::to_string_pretty(&report)? + "\n";
    let mut stdout = std::io::stdout();
    stdout.write_all(report_table(&report).as_bytes())?;
    stdout.write_all(b"\n")?;
    stdout.write_all(json.as_bytes())?;
    if let Some(path) = &config.out {
        let body = match config.format {
            Format::Json => json,
            Format::Svg => svg_document(&layers),
            Format::Csv => {
                let mut csv = String::from("p,min_radius,length\n");
                for (p, t) in &report.discrete_min_radius_by_p {
                    let len = report.lengths.discrete_by_p.get(p).copied().flatten();
                    let cell = |v: Option<f64>| v.map_or(String::new(), |x| x.to_string());
                    csv.push_str(&format!("{p},{},{}\n", cell(*t), cell(len)));
                }
                csv
            }
        };
        fs::write(path, body)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::reference_instance;

    #[test]
    fn reference_report() {
        let (r, layers) = build_report(&reference_instance(), 1e-9).unwrap();
        assert!((r.r_a - 0.207_106_8).abs() < 1e-7);
        assert!((r.baseline_min_radius - 0.089_442_7).abs() < 1e-7);
        assert!((r.improvement_ratio - 2.3156).abs() < 1e-4);
        assert_eq!(r.discrete_min_radius_by_p.len(), REPORT_SWEEP.len());
        assert!(r.lengths.min_length_chain.is_some());
        assert_eq!(layers.len(), 4);
        let table = report_table(&r);
        assert!(table.contains("improvement ratio"));
    }

    #[test]
    fn parse_flags() {
        let c = RunConfig::try_parse_from([
            "cornercurve",
            "dubins",
            "--instance",
            "x.json",
            "--radius",
            "0.1",
            "--format",
            "svg",
        ])
        .unwrap();
        assert_eq!(c.command, Command::Dubins);
        assert_eq!(c.radius, Some(0.1));
        assert_eq!(c.format, Format::Svg);
        assert_eq!(c.tol, 1e-9);
        assert!(RunConfig::try_parse_from(["cornercurve", "exact"]).is_err());
    }
}

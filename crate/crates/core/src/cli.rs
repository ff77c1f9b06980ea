//! `scan`, `fuzz` and `witness` commands.
//!
//! Each command returns a [`CommandOutput`] with the exit code and the
//! rendered report. Exit codes: `0` all applicable checks pass, `1` input
//! error, `2` an inequality (or equality) was violated beyond tolerance.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blaschke;
use crate::bounds::{BoundContext, BoundKind, BoundReport, BoundSet, ReportOptions};
use crate::error::Error;
use crate::oracle;
use crate::polynomial::{Polynomial, RootForm, UnitCirclePoint};
use crate::rational::{RationalChecker, RationalFunction, RationalReport};
use crate::roots::ZoneSummary;
use crate::sampling::{self, RootZone};
use crate::tol;
use crate::witness::{self, WitnessSpec};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

pub const CSV_HEADER: &str =
    "theta,lambda,classic,coeff,sqrt_weak,value_thm1,coeff2_thm2,arc_thm3,upper_zero_free,status";
pub const RATIONAL_CSV_HEADER: &str = "theta,arg_derivative,rhs,lower,upper,status";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn input_error(msg: impl Into<String>) -> Self {
        CommandOutput { code: EXIT_INPUT, stdout: String::new(), stderr: msg.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    #[default]
    Json,
}

/// How to interpret the JSON input of `scan`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InputMode {
    /// Array means coefficients; object with `leading` means root form;
    /// object with `numerator` means rational function.
    #[default]
    Auto,
    Coeffs,
    Roots,
    Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScanInput {
    Polynomial(Polynomial),
    Rational(RationalFunction),
}

pub fn parse_input(text: &str, mode: InputMode) -> Result<ScanInput, String> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| format!("malformed JSON input: {e}"))?;
    let mode = match mode {
        InputMode::Auto if value.is_array() => InputMode::Coeffs,
        InputMode::Auto if value.get("numerator").is_some() => InputMode::Rational,
        InputMode::Auto if value.get("leading").is_some() => InputMode::Roots,
        InputMode::Auto => return Err("unrecognized input object".into()),
        m => m,
    };
    let err = |e: serde_json::Error| format!("invalid input: {e}");
    Ok(match mode {
        InputMode::Coeffs => ScanInput::Polynomial(serde_json::from_value(value).map_err(err)?),
        InputMode::Roots => {
            let rf: RootForm = serde_json::from_value(value).map_err(err)?;
            ScanInput::Polynomial(rf.to_polynomial().map_err(|e| e.to_string())?)
        }
        InputMode::Rational => ScanInput::Rational(serde_json::from_value(value).map_err(err)?),
        InputMode::Auto => unreachable!(),
    })
}

/// Angle grid: `count` equally spaced points, or an explicit list.
#[derive(Clone, Debug, PartialEq)]
pub enum ThetaGrid {
    Count(usize),
    List(Vec<f64>),
}

impl ThetaGrid {
    pub fn angles(&self) -> Vec<f64> {
        match self {
            ThetaGrid::Count(n) => (0..*n).map(|k| TAU * k as f64 / *n as f64).collect(),
            ThetaGrid::List(v) => v.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    pub input: ScanInput,
    pub grid: ThetaGrid,
    pub checks: BoundSet<bool>,
    pub arc_half_width: Option<f64>,
    pub format: OutputFormat,
    pub tolerance: f64,
}

impl ScanConfig {
    pub fn new(input: ScanInput) -> Self {
        ScanConfig {
            input,
            grid: ThetaGrid::Count(360),
            checks: ReportOptions::default().enabled,
            arc_half_width: None,
            format: OutputFormat::Json,
            tolerance: tol::CHECK_SLACK,
        }
    }

    fn validate(&self) -> Result<(), String> {
        match &self.grid {
            ThetaGrid::Count(0) => return Err("grid count must be at least 1".into()),
            ThetaGrid::List(v) if v.is_empty() => return Err("empty theta list".into()),
            ThetaGrid::List(v) if v.iter().any(|t| !t.is_finite()) => {
                return Err("non-finite theta".into())
            }
            _ => {}
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(format!("tolerance must be positive, got {}", self.tolerance));
        }
        if let Some(a) = self.arc_half_width {
            if !(a > 0.0 && a < std::f64::consts::PI) {
                return Err(format!("arc half-width {a} outside (0, π)"));
            }
        }
        Ok(())
    }
}

/// Parses `--checks` values such as `coeff,value_thm1`.
pub fn parse_checks(list: &str) -> Result<BoundSet<bool>, String> {
    let mut set = BoundSet::splat(false);
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let kind = BoundKind::from_name(name).ok_or_else(|| format!("unknown check {name:?}"))?;
        set.set(kind, true);
    }
    Ok(set)
}

pub fn parse_theta_list(list: &str) -> Result<Vec<f64>, String> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|e| format!("bad theta {s:?}: {e}")))
        .collect()
}

/// 17 significant digits.
fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Pass,
    Fail,
    Skipped,
}

impl RowStatus {
    fn as_str(self) -> &'static str {
        match self {
            RowStatus::Pass => "pass",
            RowStatus::Fail => "fail",
            RowStatus::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub theta: f64,
    pub status: RowStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub report: Option<BoundReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalScanRow {
    pub theta: f64,
    pub status: RowStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub report: Option<RationalReport>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub points: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl ScanSummary {
    fn add(&mut self, status: RowStatus) {
        self.points += 1;
        match status {
            RowStatus::Pass => self.passed += 1,
            RowStatus::Fail => self.failed += 1,
            RowStatus::Skipped => self.skipped += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanDocument<R> {
    pub degree: usize,
    pub zones: ZoneSummary,
    pub rows: Vec<R>,
    pub summary: ScanSummary,
}

fn scan_row(ctx: &BoundContext, theta: f64, opts: &ReportOptions) -> Result<ScanRow, Error> {
    match ctx.report(UnitCirclePoint::new(theta), opts) {
        Ok(report) => {
            let status = if report.passes() { RowStatus::Pass } else { RowStatus::Fail };
            Ok(ScanRow { theta, status, reason: None, report: Some(report) })
        }
        Err(e @ Error::ZeroProximity { .. }) => Ok(ScanRow {
            theta,
            status: RowStatus::Skipped,
            reason: Some(e.to_string()),
            report: None,
        }),
        Err(e) => Err(e),
    }
}

pub fn scan_polynomial(
    p: &Polynomial,
    cfg: &ScanConfig,
) -> Result<ScanDocument<ScanRow>, Error> {
    let ctx = BoundContext::new(p.clone())?;
    let opts = ReportOptions {
        enabled: cfg.checks,
        arc_half_width: cfg.arc_half_width,
        arc_samples: tol::DEFAULT_ARC_SAMPLES,
        tolerance: cfg.tolerance,
    };
    let rows: Vec<ScanRow> = cfg
        .grid
        .angles()
        .into_par_iter()
        .map(|theta| scan_row(&ctx, theta, &opts))
        .collect::<Result<_, _>>()?;
    let mut summary = ScanSummary::default();
    rows.iter().for_each(|r| summary.add(r.status));
    Ok(ScanDocument { degree: p.degree(), zones: ctx.zones().clone(), rows, summary })
}

pub fn scan_rational(
    r: &RationalFunction,
    cfg: &ScanConfig,
) -> Result<ScanDocument<RationalScanRow>, Error> {
    let checker = RationalChecker::new(r.clone())?;
    let rows: Vec<RationalScanRow> = cfg
        .grid
        .angles()
        .into_par_iter()
        .map(|theta| match checker.check(UnitCirclePoint::new(theta), cfg.tolerance) {
            Ok(report) => {
                let status = if report.passes() { RowStatus::Pass } else { RowStatus::Fail };
                Ok(RationalScanRow { theta, status, reason: None, report: Some(report) })
            }
            Err(e @ Error::ZeroProximity { .. }) => Ok(RationalScanRow {
                theta,
                status: RowStatus::Skipped,
                reason: Some(e.to_string()),
                report: None,
            }),
            Err(e) => Err(e),
        })
        .collect::<Result<_, _>>()?;
    let mut summary = ScanSummary::default();
    rows.iter().for_each(|r| summary.add(r.status));
    Ok(ScanDocument {
        degree: r.numerator_degree(),
        zones: checker.zones().clone(),
        rows,
        summary,
    })
}

pub fn render_scan_csv(doc: &ScanDocument<ScanRow>) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &doc.rows {
        let (lambda, b) = match &row.report {
            Some(r) => (Some(r.lambda.0), r.bounds),
            None => (None, BoundSet::default()),
        };
        let mut fields = vec![fmt_num(row.theta), fmt_opt(lambda)];
        fields.extend(b.values().iter().map(|v| fmt_opt(*v)));
        fields.push(row.status.as_str().to_string());
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn render_rational_csv(doc: &ScanDocument<RationalScanRow>) -> String {
    let mut out = String::from(RATIONAL_CSV_HEADER);
    out.push('\n');
    for row in &doc.rows {
        let r = row.report.as_ref();
        let fields = [
            fmt_num(row.theta),
            fmt_opt(r.map(|r| r.arg_derivative)),
            fmt_opt(r.map(|r| r.rhs)),
            fmt_opt(r.and_then(|r| r.lower.as_ref().map(|c| c.margin))),
            fmt_opt(r.and_then(|r| r.upper.as_ref().map(|c| c.margin))),
            row.status.as_str().to_string(),
        ];
        let _ = writeln!(out, "{}", fields.join(","));
    }
    out
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

pub fn cmd_scan(cfg: &ScanConfig) -> CommandOutput {
    if let Err(e) = cfg.validate() {
        return CommandOutput::input_error(e);
    }
    let (stdout, failed) = match &cfg.input {
        ScanInput::Polynomial(p) => match scan_polynomial(p, cfg) {
            Ok(doc) => {
                let out = match cfg.format {
                    OutputFormat::Csv => render_scan_csv(&doc),
                    OutputFormat::Json => to_json(&doc),
                };
                (out, doc.summary.failed)
            }
            Err(e) => return CommandOutput::input_error(e.to_string()),
        },
        ScanInput::Rational(r) => match scan_rational(r, cfg) {
            Ok(doc) => {
                let out = match cfg.format {
                    OutputFormat::Csv => render_rational_csv(&doc),
                    OutputFormat::Json => to_json(&doc),
                };
                (out, doc.summary.failed)
            }
            Err(e) => return CommandOutput::input_error(e.to_string()),
        },
    };
    let code = if failed > 0 { EXIT_VIOLATION } else { EXIT_PASS };
    CommandOutput { code, stdout, stderr: String::new() }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzConfig {
    pub count: usize,
    pub degree_min: usize,
    pub degree_max: usize,
    pub zone: RootZone,
    pub seed: u64,
    pub points_per_case: usize,
    pub tolerance: f64,
    /// Also build a rational function over each polynomial.
    pub rational: bool,
    pub format: OutputFormat,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            count: 1000,
            degree_min: 1,
            degree_max: 10,
            zone: RootZone::InDisk,
            seed: 42,
            points_per_case: 4,
            tolerance: tol::CHECK_SLACK,
            rational: true,
            format: OutputFormat::Json,
        }
    }
}

/// Aggregate over every evaluation of one check.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckStats {
    pub evaluated: usize,
    pub violations: usize,
    /// Smallest signed margin seen (inequalities).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub min_margin: Option<f64>,
    /// Largest deviation seen (equalities).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_deviation: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub case: usize,
    pub theta: Option<f64>,
    pub check: String,
    pub value: f64,
    pub root_form: RootForm,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub seed: u64,
    pub count: usize,
    pub zone: RootZone,
    pub degree_min: usize,
    pub degree_max: usize,
    pub points_per_case: usize,
    pub generation_failures: usize,
    pub skipped_points: usize,
    pub checks: BTreeMap<String, CheckStats>,
    pub total_violations: usize,
    /// The first few violations, for reproduction.
    pub violations: Vec<Violation>,
}

const MAX_REPORTED_VIOLATIONS: usize = 20;
const MAX_POINT_DRAWS: usize = 16;

#[derive(Default)]
struct CaseOutcome {
    generation_failed: bool,
    skipped: usize,
    /// (check, margin or deviation, is_equality, holds, theta)
    records: Vec<(&'static str, f64, bool, bool, Option<f64>)>,
    root_form: Option<RootForm>,
}

impl CaseOutcome {
    fn inequality(&mut self, name: &'static str, margin: f64, holds: bool, theta: Option<f64>) {
        self.records.push((name, margin, false, holds, theta));
    }

    fn equality(&mut self, name: &'static str, deviation: f64, holds: bool, theta: Option<f64>) {
        self.records.push((name, deviation, true, holds, theta));
    }
}

fn fuzz_case(cfg: &FuzzConfig, index: usize) -> CaseOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let degree = rng.gen_range(cfg.degree_min..=cfg.degree_max);
    let mut out = CaseOutcome::default();
    let (rf, p) = match sampling::random_polynomial(&mut rng, degree, cfg.zone) {
        Ok(v) => v,
        Err(_) => {
            out.generation_failed = true;
            return out;
        }
    };
    let ctx = match BoundContext::new(p.clone()) {
        Ok(c) => c,
        Err(_) => {
            out.generation_failed = true;
            return out;
        }
    };
    let zones = ctx.zones().clone();
    let solved = RootForm { leading: p.leading(), roots: zones.roots.clone() };
    let opts = ReportOptions { tolerance: cfg.tolerance, ..ReportOptions::default() };

    let rational = if cfg.rational {
        let count = rng.gen_range(1..=3);
        let poles = sampling::random_poles(&mut rng, count);
        RationalFunction::new(p.clone(), poles)
            .ok()
            .map(|r| RationalChecker::with_zones(r, zones.clone()))
    } else {
        None
    };

    if zones.all_in_closed_disk {
        let c = blaschke::mercer_remark_unchecked(&p);
        out.inequality("mercer_remark", c.margin, c.holds, None);
    }

    for _ in 0..cfg.points_per_case {
        let theta = match (0..MAX_POINT_DRAWS)
            .map(|_| rng.gen_range(0.0..TAU))
            .find(|&t| oracle::is_valid_point(&zones.roots, t))
        {
            Some(t) => t,
            None => {
                out.skipped += 1;
                continue;
            }
        };
        let pt = UnitCirclePoint::new(theta);
        let report = match ctx.report(pt, &opts) {
            Ok(r) => r,
            Err(_) => {
                out.skipped += 1;
                continue;
            }
        };
        for kind in BoundKind::ALL {
            if let (Some(m), Some(ok)) = (report.margins.get(kind), report.flags.get(kind)) {
                out.inequality(kind.name(), m, ok, Some(theta));
            }
        }
        let lam = report.lambda;
        if zones.all_on_circle {
            let dev = lam.0.abs();
            out.equality("unimodular_equality", dev, dev <= cfg.tolerance, Some(theta));
        }
        if zones.all_in_closed_disk {
            if let Ok(c) = blaschke::goryainov_at(&solved, pt) {
                out.inequality("goryainov", c.margin, c.holds, Some(theta));
            }
            let fp0 = blaschke::f_prime_0_coeffs(&p);
            let fpp0 = blaschke::f_second_0_coeffs(&p);
            if let Ok(c) = blaschke::check_mercer(fp0, fpp0, lam.0 + 1.0) {
                out.inequality("mercer", c.margin, c.holds, Some(theta));
            }
        }
        if let Some(checker) = &rational {
            if let Ok(rep) = checker.check(pt, cfg.tolerance) {
                if let Some(c) = rep.lower {
                    out.inequality("rational_lower", c.margin, c.holds, Some(theta));
                }
                if let Some(c) = rep.upper {
                    out.inequality("rational_upper", c.margin, c.holds, Some(theta));
                }
            }
        }
    }
    out.root_form = Some(rf);
    out
}

pub fn run_fuzz(cfg: &FuzzConfig) -> Result<FuzzSummary, String> {
    if cfg.degree_min == 0 || cfg.degree_min > cfg.degree_max {
        return Err(format!("bad degree range {}..={}", cfg.degree_min, cfg.degree_max));
    }
    if cfg.tolerance.is_nan() || cfg.tolerance <= 0.0 {
        return Err("tolerance must be positive".into());
    }
    let outcomes: Vec<CaseOutcome> = (0..cfg.count).into_par_iter().map(|i| fuzz_case(cfg, i)).collect();

    let mut summary = FuzzSummary {
        seed: cfg.seed,
        count: cfg.count,
        zone: cfg.zone,
        degree_min: cfg.degree_min,
        degree_max: cfg.degree_max,
        points_per_case: cfg.points_per_case,
        generation_failures: 0,
        skipped_points: 0,
        checks: BTreeMap::new(),
        total_violations: 0,
        violations: Vec::new(),
    };
    for (case, outcome) in outcomes.into_iter().enumerate() {
        summary.generation_failures += outcome.generation_failed as usize;
        summary.skipped_points += outcome.skipped;
        for (name, value, is_equality, holds, theta) in outcome.records {
            let stats = summary.checks.entry(name.to_string()).or_default();
            stats.evaluated += 1;
            if is_equality {
                stats.max_deviation = Some(stats.max_deviation.map_or(value, |m| m.max(value)));
            } else {
                stats.min_margin = Some(stats.min_margin.map_or(value, |m| m.min(value)));
            }
            if !holds {
                stats.violations += 1;
                summary.total_violations += 1;
                if summary.violations.len() < MAX_REPORTED_VIOLATIONS {
                    summary.violations.push(Violation {
                        case,
                        theta,
                        check: name.to_string(),
                        value,
                        root_form: outcome.root_form.clone().expect("generated"),
                    });
                }
            }
        }
    }
    Ok(summary)
}

pub fn render_fuzz_csv(s: &FuzzSummary) -> String {
    let mut out = String::from("check,evaluated,violations,min_margin,max_deviation\n");
    for (name, st) in &s.checks {
        let _ = writeln!(
            out,
            "{name},{},{},{},{}",
            st.evaluated,
            st.violations,
            fmt_opt(st.min_margin),
            fmt_opt(st.max_deviation)
        );
    }
    out
}

pub fn cmd_fuzz(cfg: &FuzzConfig) -> CommandOutput {
    match run_fuzz(cfg) {
        Ok(summary) => {
            let stdout = match cfg.format {
                OutputFormat::Json => to_json(&summary),
                OutputFormat::Csv => render_fuzz_csv(&summary),
            };
            let code = if summary.total_violations > 0 { EXIT_VIOLATION } else { EXIT_PASS };
            CommandOutput { code, stdout, stderr: String::new() }
        }
        Err(e) => CommandOutput::input_error(e),
    }
}

pub fn parse_witness_spec(text: &str) -> Result<WitnessSpec, String> {
    serde_json::from_str(text).map_err(|e| format!("invalid witness spec: {e}"))
}

pub fn cmd_witness(spec: &WitnessSpec, format: OutputFormat) -> CommandOutput {
    match witness::run_witness(spec) {
        Ok(report) => {
            let stdout = match format {
                OutputFormat::Json => to_json(&report),
                OutputFormat::Csv => {
                    let mut out = String::from("check,lhs,rhs,deviation,tolerance,holds\n");
                    for c in &report.equalities {
                        let _ = writeln!(
                            out,
                            "{},{},{},{},{},{}",
                            c.name,
                            fmt_num(c.lhs),
                            fmt_num(c.rhs),
                            fmt_num(c.deviation),
                            fmt_num(c.tolerance),
                            c.holds
                        );
                    }
                    out
                }
            };
            let code = if report.passes() { EXIT_PASS } else { EXIT_VIOLATION };
            CommandOutput { code, stdout, stderr: String::new() }
        }
        Err(e) => CommandOutput::input_error(e.to_string()),
    }
}

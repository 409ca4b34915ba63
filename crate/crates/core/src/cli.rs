//! Command-line front end. `run` takes the full argument vector and writes
//! the report to `out` and diagnostics to `err`.
//!
//! Exit codes: 0 success, 1 usage error, 2 parse error, 3 domain error,
//! 4 a check (golden comparison or fixture) did not pass.

use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::ade::{wall_map, weights_of};
use crate::boundary::{
    boundary_table, torus_stability_verdict, BoundaryRow, Certificate, StabilityVerdict, Verdict,
};
use crate::fixtures::{parse_fixtures, run_fixtures, shipped_fixtures, FixtureError};
use crate::lattice::{Monomial, OneParameterSubgroup};
use crate::onepsgen::{default_cache_dir, load_or_generate, FundamentalSet, FundamentalSetError};
use crate::polyio::{parse_form_any, support_pair, ParseError};
use crate::rational::Rational;
use crate::reference::{reference_lambdas, FIXTURES_JSONL};
use crate::report::{join_monomials, regenerate, Status};
use crate::stability::{
    coordinate_permutations, mu, Atlas, DestabilizingConfiguration, StabilityError, SupportPair,
    TInterval,
};
use crate::walls::{candidate_walls, decompose, WallChamberDecomposition};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Md,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Frames {
    None,
    Permutations,
}

#[derive(Debug, Parser)]
#[command(
    name = "vgit",
    version,
    about = "Exact variational GIT for pairs of a hypersurface and a hyperplane"
)]
pub struct Cli {
    /// Degree d of the hypersurface.
    #[arg(long, global = true, default_value_t = 3)]
    pub degree: i64,
    /// Dimension n of the ambient projective space.
    #[arg(long, global = true, default_value_t = 3)]
    pub dim: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Critical one-parameter subgroups, with a comparison against the reference list.
    FundamentalSet,
    /// Confirmed GIT walls in [0,1].
    Walls {
        /// Also list the candidate walls before confirmation.
        #[arg(long)]
        candidates: bool,
    },
    /// Chambers between consecutive walls, with a probe point in each.
    Chambers,
    /// Maximal destabilizing configurations, over (0,1) or at one t.
    MaximalSets {
        #[arg(long)]
        t: Option<String>,
    },
    /// Closed strictly semistable orbit configurations, over (0,1) or at one t.
    Boundary {
        #[arg(long)]
        t: Option<String>,
    },
    /// Torus verdict for a pair given by its equations.
    CheckPair {
        /// Equation of the hypersurface, as text or as a JSON form.
        #[arg(long)]
        surface: String,
        /// Equation of the hyperplane, as text or as a JSON form.
        #[arg(long)]
        divisor: String,
        /// Defaults to every chamber probe and interior wall.
        #[arg(long)]
        t: Option<String>,
        #[arg(long, value_enum, default_value_t = Frames::None)]
        frames: Frames,
    },
    /// Singularity types and their walls `4/w(T) - 3`.
    AdeWalls,
    /// Checks the C^*-invariant fixture pairs at their walls.
    Fixtures {
        /// JSON-lines fixture file; defaults to the shipped table.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Regenerates every artifact and compares it with the golden files.
    Report {
        /// Directory holding golden files; defaults to the shipped copies.
        #[arg(long)]
        golden_dir: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    CheckFailed(String),
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Domain(_) | CliError::Io(_) => EXIT_DOMAIN,
            CliError::CheckFailed(_) => EXIT_CHECK_FAILED,
        }
    }
}

impl From<StabilityError> for CliError {
    fn from(e: StabilityError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<FundamentalSetError> for CliError {
    fn from(e: FundamentalSetError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<FixtureError> for CliError {
    fn from(e: FixtureError) -> Self {
        match e {
            FixtureError::Format { .. } | FixtureError::Parse { .. } => {
                CliError::Parse(e.to_string())
            }
            FixtureError::Domain { .. } => CliError::Domain(e.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Domain(format!("csv output: {e}"))
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let color = out_is_color();
    let mut cx = Context {
        cli: &cli,
        out,
        err,
        color,
    };
    match cx.dispatch() {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(cx.err, "error: {e}");
            e.code()
        }
    }
}

fn out_is_color() -> bool {
    std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal()
}

struct Context<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    color: bool,
}

fn parse_t(text: &str) -> Result<Rational, CliError> {
    text.parse()
        .map_err(|e| CliError::Parse(format!("invalid value for --t {text:?}: {e}")))
}

fn open_t(text: &str) -> Result<Rational, CliError> {
    let t = parse_t(text)?;
    if !t.in_open_unit_interval() {
        return Err(StabilityError::OutsideOpenInterval(t).into());
    }
    Ok(t)
}

fn md_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = format!("| {} |\n", headers.join(" | "));
    s.push_str(&format!("|{}\n", "---|".repeat(headers.len())));
    for r in rows {
        s.push_str(&format!("| {} |\n", r.join(" | ")));
    }
    s
}

fn csv_text(headers: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Domain(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn strings(ms: &[Monomial]) -> Vec<String> {
    ms.iter().map(Monomial::to_string).collect()
}

fn interval_json(i: &TInterval) -> Value {
    json!({
        "lo": i.lo, "lo_closed": i.lo_closed,
        "hi": i.hi, "hi_closed": i.hi_closed,
        "text": i.to_string(),
    })
}

fn configuration_json(c: &DestabilizingConfiguration) -> Value {
    json!({
        "label": c.name(),
        "lambda": c.lambda,
        "pivot": c.pivot,
        "interval": interval_json(&c.t_interval),
        "monomials": strings(&c.v_plus),
        "divisor": strings(&c.b_plus),
    })
}

fn boundary_json(r: &BoundaryRow) -> Value {
    let c = &r.configuration;
    json!({
        "label": c.name(),
        "lambda": c.lambda,
        "pivot": c.pivot,
        "interval": interval_json(&r.t_interval),
        "monomials": strings(&c.v_zero),
        "divisor": strings(&c.b_zero),
    })
}

const ROW_HEADERS: [&str; 5] = ["λ", "pivot", "t", "monomials", "divisor"];

impl Context<'_> {
    fn paint(&self, text: &str, good: bool) -> String {
        if self.color {
            let code = if good { 32 } else { 31 };
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    fn emit(&mut self, text: &str) -> Result<(), CliError> {
        self.out.write_all(text.as_bytes())?;
        Ok(())
    }

    fn emit_json(&mut self, value: &impl Serialize) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(value).expect("output serializes");
        self.emit(&text)?;
        self.emit("\n")
    }

    fn emit_rows(&mut self, headers: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
        let text = match self.cli.format {
            Format::Csv => csv_text(headers, rows)?,
            _ => md_table(headers, rows),
        };
        self.emit(&text)
    }

    fn fundamental_set(&self) -> Result<FundamentalSet, CliError> {
        Ok(load_or_generate(
            self.cli.degree,
            self.cli.dim,
            default_cache_dir().as_deref(),
        )?)
    }

    fn atlas(&self) -> Result<Atlas, CliError> {
        Ok(Atlas::new(&self.fundamental_set()?)?)
    }

    fn require_cubic_surfaces(&self, what: &str) -> Result<(), CliError> {
        if (self.cli.degree, self.cli.dim) != (3, 3) {
            return Err(CliError::Domain(format!(
                "{what} is only defined for --degree 3 --dim 3"
            )));
        }
        Ok(())
    }

    fn dispatch(&mut self) -> Result<(), CliError> {
        match &self.cli.command {
            Command::FundamentalSet => self.cmd_fundamental_set(),
            Command::Walls { candidates } => self.cmd_walls(*candidates),
            Command::Chambers => self.cmd_chambers(),
            Command::MaximalSets { t } => self.cmd_maximal_sets(t.as_deref()),
            Command::Boundary { t } => self.cmd_boundary(t.as_deref()),
            Command::CheckPair {
                surface,
                divisor,
                t,
                frames,
            } => self.cmd_check_pair(surface, divisor, t.as_deref(), *frames),
            Command::AdeWalls => self.cmd_ade_walls(),
            Command::Fixtures { file } => self.cmd_fixtures(file.as_deref()),
            Command::Report { golden_dir } => self.cmd_report(golden_dir.as_deref()),
        }
    }

    fn cmd_fundamental_set(&mut self) -> Result<(), CliError> {
        let fs = self.fundamental_set()?;
        let reference = reference_lambdas(fs.degree, fs.dim);
        let diff = reference.as_ref().map(|r| fs.reference_diff(r));
        let rows: Vec<Vec<String>> = fs
            .members()
            .iter()
            .map(|m| {
                vec![
                    m.label.clone().unwrap_or_default(),
                    m.lambda.to_string(),
                ]
            })
            .collect();
        match self.cli.format {
            Format::Json => {
                let members: Vec<Value> = fs
                    .members()
                    .iter()
                    .map(|m| json!({"label": m.label, "weights": m.lambda}))
                    .collect();
                let reference = diff.as_ref().map(|d| {
                    json!({
                        "missing": d.missing.iter().map(|n| n.label.clone()).collect::<Vec<_>>(),
                        "extra": d.extra.len(),
                        "exact": d.is_exact(),
                    })
                });
                self.emit_json(&json!({
                    "degree": fs.degree,
                    "dim": fs.dim,
                    "members": members,
                    "reference": reference,
                    "provenance": fs.provenance,
                }))?;
            }
            _ => self.emit_rows(&["label", "weights"], &rows)?,
        }
        match (&reference, &diff) {
            (Some(r), Some(d)) => {
                let found = r.len() - d.missing.len();
                writeln!(
                    self.err,
                    "reference: {found}/{} contained, {} additional members, exact equality: {}",
                    r.len(),
                    d.extra.len(),
                    if d.is_exact() { "yes" } else { "no" }
                )?;
                if !d.missing.is_empty() {
                    return Err(CliError::CheckFailed(format!(
                        "missing reference members: {}",
                        d.missing
                            .iter()
                            .map(|n| n.label.as_str())
                            .collect::<Vec<_>>()
                            .join(", ")
                    )));
                }
            }
            _ => writeln!(self.err, "no reference for (d={}, n={})", fs.degree, fs.dim)?,
        }
        Ok(())
    }

    fn decomposition(&self) -> Result<(Atlas, WallChamberDecomposition), CliError> {
        let atlas = self.atlas()?;
        let dec = decompose(&atlas)?;
        Ok((atlas, dec))
    }

    fn cmd_walls(&mut self, with_candidates: bool) -> Result<(), CliError> {
        let fs = self.fundamental_set()?;
        let atlas = Atlas::new(&fs)?;
        let dec = decompose(&atlas)?;
        let candidates = if with_candidates {
            Some(candidate_walls(&fs).map_err(StabilityError::from)?)
        } else {
            None
        };
        match self.cli.format {
            Format::Json => match &candidates {
                Some(c) => self.emit_json(&json!({"walls": dec.walls, "candidates": c})),
                None => self.emit_json(&json!({"walls": dec.walls})),
            },
            _ => {
                let mut rows: Vec<Vec<String>> = dec
                    .walls
                    .iter()
                    .map(|w| vec![w.to_string(), "wall".to_string()])
                    .collect();
                if let Some(c) = &candidates {
                    rows = c
                        .iter()
                        .map(|w| {
                            let kind = if dec.walls.contains(w) { "wall" } else { "candidate" };
                            vec![w.to_string(), kind.to_string()]
                        })
                        .collect();
                }
                self.emit_rows(&["t", "kind"], &rows)
            }
        }
    }

    fn cmd_chambers(&mut self) -> Result<(), CliError> {
        let (_, dec) = self.decomposition()?;
        let rows: Vec<Vec<String>> = dec
            .chambers
            .iter()
            .zip(&dec.probes)
            .map(|(c, p)| vec![c.lo.to_string(), c.hi.to_string(), p.to_string()])
            .collect();
        match self.cli.format {
            Format::Json => {
                let chambers: Vec<Value> = dec
                    .chambers
                    .iter()
                    .zip(&dec.probes)
                    .map(|(c, p)| json!({"lo": c.lo, "hi": c.hi, "probe": p}))
                    .collect();
                self.emit_json(&json!({"walls": dec.walls, "chambers": chambers}))
            }
            _ => self.emit_rows(&["lo", "hi", "probe"], &rows),
        }
    }

    fn cmd_maximal_sets(&mut self, t: Option<&str>) -> Result<(), CliError> {
        let t = t.map(open_t).transpose()?;
        let atlas = self.atlas()?;
        let configs = match &t {
            Some(t) => atlas.maximal_configurations(t)?,
            None => atlas.table(),
        };
        match self.cli.format {
            Format::Json => {
                let rows: Vec<Value> = configs.iter().map(configuration_json).collect();
                self.emit_json(&json!({"t": t, "rows": rows}))
            }
            _ => {
                let rows: Vec<Vec<String>> = configs
                    .iter()
                    .map(|c| {
                        vec![
                            c.name(),
                            format!("x{}", c.pivot),
                            c.t_interval.to_string(),
                            join_monomials(&c.v_plus),
                            join_monomials(&c.b_plus),
                        ]
                    })
                    .collect();
                self.emit_rows(&ROW_HEADERS, &rows)
            }
        }
    }

    fn cmd_boundary(&mut self, t: Option<&str>) -> Result<(), CliError> {
        let t = t.map(open_t).transpose()?;
        let atlas = self.atlas()?;
        let mut rows = boundary_table(&atlas)?;
        if let Some(t) = &t {
            rows.retain(|r| r.t_interval.contains(t));
        }
        match self.cli.format {
            Format::Json => {
                let rows: Vec<Value> = rows.iter().map(boundary_json).collect();
                self.emit_json(&json!({"t": t, "rows": rows}))
            }
            _ => {
                let rows: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| {
                        let c = &r.configuration;
                        vec![
                            c.name(),
                            format!("x{}", c.pivot),
                            r.t_interval.to_string(),
                            join_monomials(&c.v_zero),
                            join_monomials(&c.b_zero),
                        ]
                    })
                    .collect();
                self.emit_rows(&ROW_HEADERS, &rows)
            }
        }
    }

    fn cmd_check_pair(
        &mut self,
        surface: &str,
        divisor: &str,
        t: Option<&str>,
        frames: Frames,
    ) -> Result<(), CliError> {
        let degree = u32::try_from(self.cli.degree)
            .map_err(|_| CliError::Domain(format!("invalid degree {}", self.cli.degree)))?;
        let f = parse_form_any(surface, self.cli.dim, Some(degree))?;
        let h = parse_form_any(divisor, self.cli.dim, Some(1))?;
        let pair = support_pair(&f, &h)?;
        let fs = self.fundamental_set()?;
        let ts = match t {
            Some(t) => vec![open_t(t)?],
            None => {
                let dec = decompose(&Atlas::new(&fs)?)?;
                let mut ts: Vec<Rational> = dec
                    .probes
                    .iter()
                    .chain(dec.interior_walls())
                    .cloned()
                    .collect();
                ts.sort();
                ts
            }
        };
        let frame_list = match frames {
            Frames::None => vec![(0..pair.coordinates()).collect::<Vec<usize>>()],
            Frames::Permutations => coordinate_permutations(pair.coordinates()),
        };
        let mut results = Vec::new();
        for t in &ts {
            results.push(check_at(&pair, &fs, t, &frame_list)?);
        }
        let frames_text = match frames {
            Frames::None => "identity".to_string(),
            Frames::Permutations => format!("{} coordinate permutations", frame_list.len()),
        };
        match self.cli.format {
            Format::Json => self.emit_json(&json!({
                "surface": f.to_string(),
                "divisor": h.to_string(),
                "scope": "torus verdict in tested frames",
                "frames": frame_list,
                "results": results,
            })),
            _ => {
                if self.cli.format == Format::Md {
                    self.emit(&format!(
                        "surface: {f}\ndivisor: {h}\ntorus verdict in tested frames: {frames_text}\n\n"
                    ))?;
                }
                let rows: Vec<Vec<String>> = results
                    .iter()
                    .map(|r| {
                        let verdict = if self.cli.format == Format::Md {
                            self.paint(&r.verdict.to_string(), r.verdict == Verdict::Stable)
                        } else {
                            r.verdict.to_string()
                        };
                        vec![
                            r.t.to_string(),
                            verdict,
                            r.certificate_summary.clone(),
                            r.certificate_verified.to_string(),
                            r.max_mu.to_string(),
                            r.maximizer_text(),
                        ]
                    })
                    .collect();
                self.emit_rows(
                    &["t", "verdict", "certificate", "verified", "max μ", "μ-maximizers"],
                    &rows,
                )
            }
        }
    }

    fn cmd_ade_walls(&mut self) -> Result<(), CliError> {
        self.require_cubic_surfaces("the singularity wall map")?;
        let entries = wall_map();
        match self.cli.format {
            Format::Json => self.emit_json(&json!({"entries": entries})),
            _ => {
                let rows: Vec<Vec<String>> = entries
                    .iter()
                    .map(|e| {
                        let weights: Vec<String> =
                            weights_of(&e.singularity).iter().map(|w| w.to_string()).collect();
                        vec![
                            e.singularity.to_string(),
                            format!("({})", weights.join(", ")),
                            e.weight_sum.to_string(),
                            e.wall.to_string(),
                            e.milnor.map_or("infinite".to_string(), |m| m.to_string()),
                        ]
                    })
                    .collect();
                self.emit_rows(&["T", "weights", "w(T)", "Wall(T)", "Milnor number"], &rows)
            }
        }
    }

    fn cmd_fixtures(&mut self, file: Option<&Path>) -> Result<(), CliError> {
        self.require_cubic_surfaces("the fixture table")?;
        let fixtures = match file {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Domain(format!("cannot read {}: {e}", path.display()))
                })?;
                parse_fixtures(&text)?
            }
            None if FIXTURES_JSONL.is_empty() => {
                return Err(CliError::Domain("no fixture data".into()))
            }
            None => shipped_fixtures(),
        };
        let (_, dec) = self.decomposition()?;
        let outcomes = run_fixtures(&fixtures, &dec.probes)?;
        let failed: Vec<&str> = outcomes
            .iter()
            .filter(|o| !o.passed)
            .map(|o| o.name.as_str())
            .collect();
        match self.cli.format {
            Format::Json => self.emit_json(&json!({"fixtures": outcomes}))?,
            _ => {
                let md = self.cli.format == Format::Md;
                let rows: Vec<Vec<String>> = outcomes
                    .iter()
                    .map(|o| {
                        let verdicts: Vec<String> =
                            o.verdicts.iter().map(|v| v.to_string()).collect();
                        let mut verdicts = verdicts;
                        verdicts.dedup();
                        let status = if o.passed { "pass" } else { "fail" };
                        vec![
                            o.name.clone(),
                            o.wall.to_string(),
                            o.mu_line.clone(),
                            o.mu_vanishes.to_string(),
                            verdicts.join(" "),
                            if md {
                                self.paint(status, o.passed)
                            } else {
                                status.to_string()
                            },
                        ]
                    })
                    .collect();
                self.emit_rows(&["pair", "wall", "μ", "μ = 0", "verdict", "status"], &rows)?;
            }
        }
        if failed.is_empty() {
            Ok(())
        } else {
            Err(CliError::CheckFailed(format!(
                "fixtures failed: {}",
                failed.join(", ")
            )))
        }
    }

    fn cmd_report(&mut self, golden_dir: Option<&Path>) -> Result<(), CliError> {
        let fs = self.fundamental_set()?;
        let artifacts = regenerate(&fs, golden_dir)?;
        let compared: Vec<_> = artifacts
            .iter()
            .filter(|a| a.status != Status::NoReference)
            .collect();
        let matched = compared.iter().filter(|a| a.status == Status::Match).count();
        let summary = if compared.is_empty() {
            format!("{} artifacts generated, no reference", artifacts.len())
        } else {
            format!("{matched}/{} artifacts match", compared.len())
        };
        match self.cli.format {
            Format::Json => {
                let list: Vec<Value> = artifacts
                    .iter()
                    .map(|a| {
                        json!({
                            "name": a.name,
                            "file": a.file,
                            "status": a.status,
                            "text": a.text,
                            "diff": a.diff(),
                        })
                    })
                    .collect();
                self.emit_json(&json!({
                    "artifacts": list,
                    "matched": matched,
                    "compared": compared.len(),
                    "summary": summary,
                }))?;
            }
            Format::Csv => {
                let rows: Vec<Vec<String>> = artifacts
                    .iter()
                    .map(|a| vec![a.name.to_string(), a.file.to_string(), status_text(&a.status)])
                    .collect();
                self.emit_rows(&["artifact", "file", "status"], &rows)?;
            }
            Format::Md => {
                for a in &artifacts {
                    let status = status_text(&a.status);
                    let painted = self.paint(&status, a.status != Status::Mismatch);
                    self.emit(&format!("{} ({}): {painted}\n", a.name, a.file))?;
                    if a.status == Status::NoReference {
                        self.emit(&format!("```\n{}```\n", a.text))?;
                    }
                }
                self.emit(&format!("{summary}\n"))?;
            }
        }
        for a in &artifacts {
            if let Some(diff) = a.diff() {
                self.err.write_all(diff.as_bytes())?;
            }
        }
        if matched == compared.len() {
            Ok(())
        } else {
            Err(CliError::CheckFailed(summary))
        }
    }
}

fn status_text(s: &Status) -> String {
    match s {
        Status::Match => "match",
        Status::Mismatch => "mismatch",
        Status::NoReference => "no reference",
    }
    .to_string()
}

#[derive(Debug, Serialize)]
struct Maximizer {
    label: String,
    weights: OneParameterSubgroup,
    frame: Vec<usize>,
}

#[derive(Debug, Serialize)]
struct CheckResult {
    t: Rational,
    verdict: Verdict,
    certificate: Certificate,
    certificate_summary: String,
    certificate_verified: bool,
    /// Largest `μ_t` over the fundamental set in the tested frames.
    max_mu: Rational,
    maximizers: Vec<Maximizer>,
}

impl CheckResult {
    fn maximizer_text(&self) -> String {
        const SHOWN: usize = 6;
        let identity = |f: &[usize]| f.iter().enumerate().all(|(i, &j)| i == j);
        let mut names: Vec<String> = self
            .maximizers
            .iter()
            .map(|m| {
                if identity(&m.frame) {
                    m.label.clone()
                } else {
                    let f: Vec<String> = m.frame.iter().map(|i| i.to_string()).collect();
                    format!("{}@[{}]", m.label, f.join(","))
                }
            })
            .collect();
        if names.len() > SHOWN {
            let rest = names.len() - SHOWN;
            names.truncate(SHOWN);
            names.push(format!("+{rest} more"));
        }
        names.join(" ")
    }
}

fn summarize(v: &StabilityVerdict) -> String {
    let weights = |w: &[num_bigint::BigInt]| {
        let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
        format!("({})", w.join(","))
    };
    match &v.certificate {
        Certificate::SeparatingFunctional(f) => {
            format!("separating {} with μ = {}", weights(&f.weights), f.mu)
        }
        Certificate::HullMembership(h) => match &h.supporting {
            Some(s) => format!(
                "hull of {} points, supporting {}",
                h.terms.len(),
                weights(&s.weights)
            ),
            None => format!("hull of {} points", h.terms.len()),
        },
    }
}

fn check_at(
    pair: &SupportPair,
    fs: &FundamentalSet,
    t: &Rational,
    frames: &[Vec<usize>],
) -> Result<CheckResult, CliError> {
    let verdict = torus_stability_verdict(pair, t)?;
    let verified = verdict.verify(pair, t);
    let mut values = Vec::new();
    for frame in frames {
        let moved = pair.permuted(frame);
        for m in fs.members() {
            values.push((mu(&moved, &m.lambda, t)?, m, frame));
        }
    }
    let max_mu = values
        .iter()
        .map(|v| v.0.clone())
        .max()
        .expect("non-empty fundamental set");
    let maximizers = values
        .iter()
        .filter(|v| v.0 == max_mu)
        .map(|(_, m, frame)| Maximizer {
            label: m.name(),
            weights: m.lambda.clone(),
            frame: frame.to_vec(),
        })
        .collect();
    Ok(CheckResult {
        t: t.clone(),
        verdict: verdict.verdict,
        certificate_summary: summarize(&verdict),
        certificate: verdict.certificate,
        certificate_verified: verified,
        max_mu,
        maximizers,
    })
}

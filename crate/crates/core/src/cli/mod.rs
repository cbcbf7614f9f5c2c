//! Command implementations behind the `gshds` binary. Every command returns
//! its rendered output and an exit code, so tests can drive the same code
//! path as the executable.
//!
//! Exit codes: 0 verified or complete, 1 verified negative, 2 partial
//! (budget exhausted), 3 input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::arith::smallest_qnr;
use crate::conditions::{build_L0, exponent_bound_report, l0_artifact, lambda_matrix_for, power_coeffs};
use crate::error::{Error, Result};
use crate::galgebra::{character_dichotomy, check_gshds, GshdsCertificate, Pairing};
use crate::galois::{make_ring, nth_primitive_spec, paley_gshds};
use crate::incidence::verify_A_square;
use crate::pgroup::{orbit_tables, GroupSpec};
use crate::qrs::{certify, is_gshds, qrs_encode, search, QrsContext, SearchConfig, SearchMode, SignVector};

pub const SCHEMA: &str = "gshds/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_PARTIAL: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Sample,
    Pruned,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exhaustive => SearchMode::Exhaustive,
            ModeArg::Sample => SearchMode::Sample,
            ModeArg::Pruned => SearchMode::Pruned,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(name = "gshds", version, about = "Construct, search and verify generalized skew Hadamard difference sets")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Group description, e.g. `p=3;exps=2,2,1`.
    #[arg(long, global = true)]
    pub group: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Candidate budget for searches.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Unit-orbit table of a group.
    Group,
    /// Orbit incidence matrix and its square.
    Amatrix,
    /// Paley set in `F_{p^m}` checked by convolution, divisibility and characters.
    VerifyPaley {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
    },
    /// Search quadratic residue slices for GSHDS.
    Search {
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Gray-code index to resume an exhaustive search from.
        #[arg(long, default_value_t = 0)]
        start: u64,
        /// Run the convolution check on every candidate.
        #[arg(long)]
        verify_all: bool,
    },
    /// Lambda matrix and `L0` artifact for `GR(p^2, 2 alpha + 1)`.
    L0 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        alpha: u32,
        /// Index of the primitive modulus (0 is the lexicographically first).
        #[arg(long, default_value_t = 0)]
        embedding: usize,
    },
    /// Power coefficients of the Paley set in `F_{p^m}`.
    Power {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
    },
    /// Exponent-bound exclusion report.
    Bounds,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Group => "group",
            Command::Amatrix => "amatrix",
            Command::VerifyPaley { .. } => "verify-paley",
            Command::Search { .. } => "search",
            Command::L0 { .. } => "l0",
            Command::Power { .. } => "power",
            Command::Bounds => "bounds",
        }
    }
}

impl RunConfig {
    pub fn try_from_args<I, T>(args: I) -> std::result::Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        RunConfig::try_parse_from(args)
    }

    /// Command line that parses back to `self`.
    pub fn to_args(&self) -> Vec<String> {
        let mut a = vec!["gshds".to_string(), self.command.name().to_string()];
        match &self.command {
            Command::Group | Command::Amatrix | Command::Bounds => {}
            Command::VerifyPaley { p, m } => a.extend(["--p".into(), p.to_string(), "--m".into(), m.to_string()]),
            Command::Search { mode, start, verify_all } => {
                let m = mode.to_possible_value().expect("no skipped variants");
                a.extend(["--mode".into(), m.get_name().to_string(), "--start".into(), start.to_string()]);
                if *verify_all {
                    a.push("--verify-all".into());
                }
            }
            Command::L0 { p, alpha, embedding } => {
                a.extend(["--p".into(), p.to_string(), "--alpha".into(), alpha.to_string(), "--embedding".into(), embedding.to_string()])
            }
            Command::Power { p, m, k } => a.extend(["--p".into(), p.to_string(), "--m".into(), m.to_string(), "--k".into(), k.to_string()]),
        }
        if let Some(g) = &self.group {
            a.extend(["--group".into(), g.clone()]);
        }
        let f = self.format.to_possible_value().expect("no skipped variants");
        a.extend(["--format".into(), f.get_name().to_string(), "--seed".into(), self.seed.to_string(), "--jobs".into(), self.jobs.to_string()]);
        if let Some(b) = self.budget {
            a.extend(["--budget".into(), b.to_string()]);
        }
        if let Some(o) = &self.out {
            a.extend(["--out".into(), o.display().to_string()]);
        }
        a
    }

    fn group_spec(&self) -> Result<GroupSpec> {
        self.group.as_deref().ok_or_else(|| Error::Parse("--group is required".into()))?.parse()
    }
}

// ----------------------------------------------------------------------
// output

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub text: String,
    pub exit_code: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Negative,
    Partial,
    Error,
}

impl Verdict {
    fn exit_code(self) -> i32 {
        match self {
            Verdict::Verified => EXIT_OK,
            Verdict::Negative => EXIT_NEGATIVE,
            Verdict::Partial => EXIT_PARTIAL,
            Verdict::Error => EXIT_INPUT,
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Verified
        } else {
            Verdict::Negative
        }
    }
}

#[derive(Serialize)]
struct ConfigEcho<'a> {
    group: Option<&'a str>,
    seed: u64,
    budget: Option<u64>,
    jobs: usize,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: &'static str,
    command: &'static str,
    config: ConfigEcho<'a>,
    verdict: Verdict,
    exit_code: i32,
    result: Value,
}

struct Outcome {
    verdict: Verdict,
    result: Value,
    /// Command-specific CSV table; falls back to flattened key/value rows.
    csv: Option<String>,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

/// Run a parsed configuration.
pub fn run(cfg: &RunConfig) -> RunOutput {
    let outcome = execute(cfg).unwrap_or_else(|e| Outcome {
        verdict: match e {
            Error::NotGshds(_) => Verdict::Negative,
            _ => Verdict::Error,
        },
        result: serde_json::json!({ "error": e.to_string() }),
        csv: None,
    });
    let exit_code = outcome.verdict.exit_code();
    let env = Envelope {
        schema: SCHEMA,
        command: cfg.command.name(),
        config: ConfigEcho { group: cfg.group.as_deref(), seed: cfg.seed, budget: cfg.budget, jobs: cfg.jobs },
        verdict: outcome.verdict,
        exit_code,
        result: outcome.result,
    };
    let text = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&env).expect("envelope serializes") + "\n",
        Format::Csv => outcome.csv.unwrap_or_else(|| flat_rows(&to_value(&env), ",")),
        Format::Text => {
            let mut s = format!("{} {}: {:?}\n", SCHEMA, env.command, env.verdict);
            s.push_str(&flat_rows(&to_value(&env), " = "));
            s
        }
    };
    RunOutput { text, exit_code }
}

/// Parse arguments, run, and write the output. Returns the exit code.
pub fn main_entry<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_from_args(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let out = run(&cfg);
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out.text) {
                eprintln!("cannot write {}: {e}", path.display());
                return EXIT_INPUT;
            }
        }
        None => print!("{}", out.text),
    }
    out.exit_code
}

fn flat_rows(v: &Value, sep: &str) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let mut s = String::new();
    for (k, x) in rows {
        let _ = writeln!(s, "{k}{sep}{x}");
    }
    s
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&key(k), x, out)),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = a.iter().map(scalar).collect();
            out.push((prefix.to_string(), parts.join(" ")));
        }
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| flatten(&key(&i.to_string()), x, out)),
        x => out.push((prefix.to_string(), scalar(x))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        x => x.to_string(),
    }
}

// ----------------------------------------------------------------------
// commands

fn execute(cfg: &RunConfig) -> Result<Outcome> {
    match &cfg.command {
        Command::Group => cmd_group(&cfg.group_spec()?),
        Command::Amatrix => cmd_amatrix(&cfg.group_spec()?),
        Command::VerifyPaley { p, m } => cmd_verify_paley(*p, *m),
        Command::Search { mode, start, verify_all } => {
            let sc = SearchConfig { mode: (*mode).into(), budget: cfg.budget, seed: cfg.seed, jobs: cfg.jobs, verify_all: *verify_all, start: *start };
            cmd_search(&cfg.group_spec()?, &sc)
        }
        Command::L0 { p, alpha, embedding } => cmd_l0(*p, *alpha, *embedding),
        Command::Power { p, m, k } => cmd_power(*p, *m, *k),
        Command::Bounds => cmd_bounds(&cfg.group_spec()?),
    }
}

fn coords(g: &crate::pgroup::GroupElement) -> String {
    g.coords.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_group(g: &GroupSpec) -> Result<Outcome> {
    let t = orbit_tables(g, &Pairing::diagonal(g));
    let sum = t.summary();
    let mut csv = String::from("index,rep,order,size\n");
    for (i, &x) in t.reps().iter().enumerate() {
        let _ = writeln!(csv, "{i},{},{},{}", coords(&g.element(x)), g.order_idx(x), t.orbit_size(i));
    }
    Ok(Outcome { verdict: Verdict::Verified, result: to_value(&sum), csv: Some(csv) })
}

#[derive(Serialize)]
struct AmatrixResult {
    group: String,
    r: usize,
    row_labels: Vec<crate::pgroup::GroupElement>,
    col_labels: Vec<crate::pgroup::GroupElement>,
    matrix: Vec<Vec<i64>>,
    square: crate::incidence::SquareProof,
}

fn cmd_amatrix(g: &GroupSpec) -> Result<Outcome> {
    let ctx = QrsContext::new(g)?;
    let sq = verify_A_square(&ctx.a)?;
    let res = AmatrixResult {
        group: g.dsl(),
        r: ctx.r(),
        row_labels: ctx.a.row_labels.clone(),
        col_labels: ctx.a.col_labels.clone(),
        matrix: ctx.a.matrix.to_rows(),
        square: sq.clone(),
    };
    Ok(Outcome { verdict: Verdict::from_bool(sq.holds), result: to_value(&res), csv: Some(ctx.a.matrix.to_csv()) })
}

#[derive(Debug, Clone, Serialize)]
pub struct PaleyReport {
    pub p: u64,
    pub m: u32,
    pub group: String,
    pub n0: u64,
    pub convolution: GshdsCertificate,
    pub by_convolution: bool,
    pub by_divisibility: bool,
    pub agree: bool,
    pub sign_vector: SignVector,
    pub diff_coeffs: Vec<i64>,
    pub characters: crate::galgebra::CharacterDichotomy,
    pub verified_by: Vec<&'static str>,
}

impl PaleyReport {
    pub fn holds(&self) -> bool {
        self.by_convolution && self.by_divisibility && self.agree && self.characters.holds
    }
}

/// Paley set in `F_{p^m}` checked along all three paths.
pub fn verify_paley(p: u64, m: u32) -> Result<PaleyReport> {
    let d = paley_gshds(p, m)?;
    let n0 = smallest_qnr(p);
    let conv = check_gshds(&d, n0)?;
    let ctx = QrsContext::new(d.group())?;
    let sv = qrs_encode(&ctx, &d)?;
    let v = is_gshds(&ctx, &sv)?;
    let characters = character_dichotomy(&d, &ctx.pairing)?;
    let mut verified_by = Vec::new();
    if v.by_convolution {
        verified_by.push("convolution");
    }
    if v.by_divisibility {
        verified_by.push("divisibility");
    }
    if characters.holds {
        verified_by.push("characters");
    }
    Ok(PaleyReport {
        p,
        m,
        group: ctx.group.dsl(),
        n0,
        by_convolution: conv.is_gshds(),
        by_divisibility: v.by_divisibility,
        agree: v.agree && conv.is_gshds() == v.by_convolution,
        convolution: conv,
        sign_vector: sv,
        diff_coeffs: v.diff_coeffs.values,
        characters,
        verified_by,
    })
}

fn cmd_verify_paley(p: u64, m: u32) -> Result<Outcome> {
    let rep = verify_paley(p, m)?;
    Ok(Outcome { verdict: Verdict::from_bool(rep.holds()), result: to_value(&rep), csv: None })
}

fn cmd_search(g: &GroupSpec, sc: &SearchConfig) -> Result<Outcome> {
    let ctx = QrsContext::new(g)?;
    let rep = search(&ctx, sc)?;
    let certs = if rep.square_order { Vec::new() } else { rep.hits.iter().map(|d| certify(&ctx, d)).collect::<Result<Vec<_>>>()? };
    let verdict = if !rep.complete && sc.mode != SearchMode::Sample {
        Verdict::Partial
    } else if !rep.hits.is_empty() {
        Verdict::Verified
    } else if rep.complete {
        Verdict::Negative
    } else {
        Verdict::Partial
    };
    let mut csv = String::from("hit,sign_vector\n");
    for (i, h) in rep.hits.iter().enumerate() {
        let s: Vec<String> = h.d.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(csv, "{i},{}", s.join(" "));
    }
    let result = serde_json::json!({ "report": to_value(&rep), "certificates": to_value(&certs) });
    Ok(Outcome { verdict, result, csv: Some(csv) })
}

fn cmd_l0(p: u64, alpha: u32, embedding: usize) -> Result<Outcome> {
    if alpha == 0 {
        return Err(Error::OutOfRange("alpha must be at least 1".into()));
    }
    let spec = if embedding == 0 { make_ring(p, 2 * alpha + 1)? } else { nth_primitive_spec(p, 2 * alpha + 1, 2, embedding)? };
    let lm = lambda_matrix_for(&spec)?;
    let l0 = build_L0(&lm)?;
    let art = l0_artifact(&lm, &l0);
    let ok = lm.all_hold() && l0.all_hold();
    Ok(Outcome { verdict: Verdict::from_bool(ok), result: to_value(&art), csv: None })
}

fn cmd_power(p: u64, m: u32, k: u32) -> Result<Outcome> {
    let d = paley_gshds(p, m)?;
    let rep = power_coeffs(&d, smallest_qnr(p), k)?;
    Ok(Outcome { verdict: Verdict::from_bool(rep.all_hold()), result: to_value(&rep), csv: None })
}

fn cmd_bounds(g: &GroupSpec) -> Result<Outcome> {
    let rep = exponent_bound_report(g)?;
    Ok(Outcome { verdict: Verdict::from_bool(!rep.excluded), result: to_value(&rep), csv: None })
}

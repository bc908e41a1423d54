use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gcdlab_core::harness::{self, ScanConfig, ScanMode, SampleConfig};
use gcdlab_core::hilbert::hilbert_sweep;
use gcdlab_core::lrs::PowerSum;
use gcdlab_core::{parse_rational, Error, LogReal, Place, PlaceSet, Rational};
use serde::Deserialize;

#[derive(Parser)]
#[command(name = "gcdlab", version, about = "Exact gcd, height and recurrence experiments over Q")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
    /// JSON configuration for the subcommand
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// CSV destination, `-` for stdout
    #[arg(long, global = true, default_value = "-")]
    out: String,
    /// Interval precision in bits for decimal output
    #[arg(long, global = true, default_value_t = 128)]
    prec: u32,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Grid scan of the gcd of two recurrences outside S0 plus extra places
    LrsScan(ScanArgs),
    /// Sample almost-S-unit points and audit the polynomial gcd bounds
    PolyGcd,
    /// The (p^k, p^k + k) family where m p^m + 1 meets p^n + 1
    ExamplePk(PkArgs),
    /// The linear-in-delta lower bound construction
    Sharpness(SharpArgs),
    /// Scan -log|F(n)|_v against eps * n
    Rec1Scan(Rec1Args),
    /// Enumerate S-unit solutions of x0 + ... + xn = 1
    UnitEq(UnitArgs),
    /// Hilbert function formula against brute-force rank on random coprime forms
    HilbertVerify(HilbertArgs),
}

#[derive(Args)]
struct ScanArgs {
    /// Override epsilon
    #[arg(long)]
    epsilon: Option<String>,
    /// Override the grid bound
    #[arg(long = "grid")]
    grid: Option<u64>,
    #[arg(long)]
    diagonal: bool,
}

#[derive(Args, Deserialize)]
struct PkArgs {
    #[arg(long, default_value_t = 2)]
    p: u64,
    #[arg(long, default_value = "3/5")]
    epsilon: String,
    #[arg(long, default_value_t = 10)]
    kmax: u32,
}

#[derive(Args, Deserialize)]
struct SharpArgs {
    #[arg(long, default_value_t = 2)]
    p: u64,
    #[arg(long, default_value = "1/5")]
    delta: String,
    #[arg(long, default_value_t = 10)]
    trials: u64,
}

#[derive(Args)]
struct Rec1Args {
    /// Place, `inf` or a prime (overrides the config)
    #[arg(long)]
    place: Option<String>,
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long = "grid")]
    grid: Option<u64>,
}

#[derive(Deserialize)]
struct Rec1Config {
    #[serde(rename = "F")]
    f: PowerSum,
    place: Place,
    epsilon: String,
    #[serde(rename = "N")]
    n: u64,
}

#[derive(Args, Deserialize)]
struct UnitArgs {
    /// Places, e.g. `inf,2,3`
    #[arg(long, default_value = "inf,2,3")]
    s: String,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    bound: u32,
    #[arg(long)]
    #[serde(default)]
    delta: Option<String>,
    /// Maximum number of candidate prefixes to examine
    #[arg(long, default_value_t = 10_000_000)]
    #[serde(default = "default_budget")]
    budget: u64,
}

fn default_budget() -> u64 {
    10_000_000
}

#[derive(Args)]
struct HilbertArgs {
    /// Random coprime pairs per (n, d1, d2) cell
    #[arg(long, default_value_t = 5)]
    pairs: usize,
}

enum Failure {
    Precondition(String),
    Budget(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget(m) => Failure::Budget(m),
            other => Failure::Precondition(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Precondition(format!("bad config: {e}"))
    }
}

type Run = Result<(), Failure>;

struct Ctx {
    config: Option<PathBuf>,
    out: String,
    prec: u32,
    seed: u64,
}

impl Ctx {
    fn writer(&self) -> Result<csv::Writer<Box<dyn Write>>, Failure> {
        let sink: Box<dyn Write> = if self.out == "-" {
            Box::new(io::stdout().lock())
        } else {
            Box::new(io::BufWriter::new(File::create(&self.out)?))
        };
        Ok(csv::Writer::from_writer(sink))
    }

    fn config_text(&self) -> Result<Option<String>, Failure> {
        self.config.as_ref().map(std::fs::read_to_string).transpose().map_err(Failure::from)
    }

    fn need_config<T: serde::de::DeserializeOwned>(&self) -> Result<T, Failure> {
        let text = self.config_text()?.ok_or_else(|| Failure::Precondition("--config is required".into()))?;
        Ok(serde_json::from_str(&text)?)
    }

    fn config_or<T: serde::de::DeserializeOwned>(&self, flags: T) -> Result<T, Failure> {
        match self.config_text()? {
            Some(text) => Ok(serde_json::from_str(&text)?),
            None => Ok(flags),
        }
    }

    fn dec(&self, x: &LogReal) -> String {
        if x.is_zero() {
            "0".into()
        } else {
            x.decimal(6, self.prec)
        }
    }
}

fn q(s: &str) -> Result<Rational, Failure> {
    Ok(parse_rational(s)?)
}

fn q_dec(x: &Rational) -> String {
    gcdlab_core::interval::Interval::from_rational(x, 64).decimal(6)
}

fn lrs_scan(ctx: &Ctx, args: ScanArgs) -> Run {
    let mut cfg: ScanConfig = ctx.need_config()?;
    if let Some(e) = &args.epsilon {
        cfg.epsilon = q(e)?;
    }
    if let Some(n) = args.grid {
        cfg.n = n;
    }
    if args.diagonal {
        cfg.mode = ScanMode::Diagonal;
    }
    let rep = harness::run_lrs_scan(&cfg)?;
    let mut w = ctx.writer()?;
    w.write_record(["m", "n", "lhs_logreal", "lhs_decimal", "threshold_decimal", "flagged", "cluster_id", "notes"])?;
    for r in &rep.rows {
        let note = if r.zero {
            "zero value"
        } else if r.flagged && r.cluster.is_none() {
            "sporadic"
        } else {
            ""
        };
        w.write_record([
            r.m.to_string(),
            r.n.to_string(),
            r.lhs.to_string(),
            ctx.dec(&r.lhs),
            q_dec(&rep.threshold(r)),
            r.flagged.to_string(),
            r.cluster.map(|c| c.to_string()).unwrap_or_default(),
            note.to_string(),
        ])?;
    }
    w.flush()?;
    eprintln!("S0 = {}, S = {}", rep.s0, rep.s);
    eprintln!("flagged: {}, zero rows: {}", rep.flagged().count(), rep.zeros().count());
    for c in &rep.clusters {
        eprintln!("cluster {}: direction ({}, {}), kappa {}, {} pairs", c.id, c.a, c.b, c.kappa, c.size);
    }
    eprintln!("sporadic: {:?}", rep.sporadic);
    match rep.flagged_bound() {
        Some(b) => eprintln!("largest flagged max(m,n): {b}"),
        None => eprintln!("no flagged pairs"),
    }
    Ok(())
}

fn poly_gcd(ctx: &Ctx) -> Run {
    let cfg: SampleConfig = ctx.need_config()?;
    let rep = harness::run_poly_gcd_experiment(&cfg, ctx.seed)?;
    let mut w = ctx.writer()?;
    w.write_record([
        "index", "u", "sum_h", "lhs_outside", "lhs_within", "rhs_main", "rhs_spart", "rhs_combined", "main", "spart",
        "combined", "notes",
    ])?;
    let verdict = |v: Option<harness::Verdict>| v.map(|v| format!("{v:?}").to_lowercase()).unwrap_or_default();
    for r in &rep.rows {
        let u: Vec<String> = r.u.iter().map(|x| x.to_string()).collect();
        w.write_record([
            r.index.to_string(),
            u.join(";"),
            ctx.dec(&r.sum_h),
            r.lhs_outside.as_ref().map(|x| ctx.dec(x)).unwrap_or_default(),
            r.lhs_within.as_ref().map(|x| ctx.dec(x)).unwrap_or_default(),
            format!("{:.6}", r.rhs_main),
            r.rhs_spart.map(|x| format!("{x:.6}")).unwrap_or_default(),
            format!("{:.6}", r.rhs_combined),
            verdict(r.main),
            verdict(r.spart),
            verdict(r.combined),
            r.degenerate.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    let c = &rep.constants;
    eprintln!("C_main = {}, m = {}, C_combined = {}, 4nd = {}", c.c_main, c.m_main, c.c_combined, c.c_spart);
    eprintln!("sampler failures: {}, exceptional candidates: {:?}", rep.sampler_failures, rep.candidates);
    Ok(())
}

fn example_pk(ctx: &Ctx, args: PkArgs) -> Run {
    let a = ctx.config_or(args)?;
    let rep = harness::run_example_pk(a.p, &q(&a.epsilon)?, a.kmax)?;
    let mut w = ctx.writer()?;
    w.write_record(["k", "m", "n", "equal", "lhs_decimal", "threshold_decimal", "flagged", "offset", "kappa"])?;
    for r in &rep.rows {
        w.write_record([
            r.k.to_string(),
            r.m.to_string(),
            r.n.to_string(),
            r.equal.to_string(),
            ctx.dec(&r.lhs),
            q_dec(&r.threshold),
            r.flagged.to_string(),
            r.offset.to_string(),
            r.kappa.to_string(),
        ])?;
    }
    w.flush()?;
    eprintln!("offsets strictly increasing (no fixed line): {}", rep.off_every_line);
    Ok(())
}

fn sharpness(ctx: &Ctx, args: SharpArgs) -> Run {
    let a = ctx.config_or(args)?;
    let rep = harness::run_sharpness(a.p, &q(&a.delta)?, a.trials)?;
    let mut w = ctx.writer()?;
    w.write_record(["m", "n", "height", "h_sbar", "lhs", "holds", "at_most_delta", "ratio"])?;
    for r in &rep.rows {
        w.write_record([
            r.m.to_string(),
            r.n.to_string(),
            ctx.dec(&r.height),
            ctx.dec(&r.h_sbar),
            ctx.dec(&r.lhs),
            r.holds.to_string(),
            r.at_most_delta.to_string(),
            format!("{:.6}", r.ratio),
        ])?;
    }
    w.flush()?;
    if !rep.failures.is_empty() {
        eprintln!("window unsatisfiable for m in {:?}", rep.failures);
    }
    Ok(())
}

fn rec1_scan(ctx: &Ctx, args: Rec1Args) -> Run {
    let mut cfg: Rec1Config = ctx.need_config()?;
    if let Some(p) = &args.place {
        cfg.place = p.parse()?;
    }
    if let Some(e) = args.epsilon {
        cfg.epsilon = e;
    }
    if let Some(n) = args.grid {
        cfg.n = n;
    }
    let eps = q(&cfg.epsilon)?;
    let rep = harness::run_rec1_scan(&cfg.f, cfg.place, &eps, cfg.n)?;
    let mut w = ctx.writer()?;
    w.write_record(["n", "value_logreal", "value_decimal", "threshold_decimal", "violator"])?;
    for r in &rep.rows {
        w.write_record([
            r.n.to_string(),
            r.value.to_string(),
            ctx.dec(&r.value),
            q_dec(&(&eps * Rational::from_integer(r.n.into()))),
            r.violator.to_string(),
        ])?;
    }
    w.flush()?;
    eprintln!("zeros skipped: {:?}", rep.zeros);
    match rep.max_violator() {
        Some(n) => eprintln!("{} violators, largest n = {n}", rep.violators.len()),
        None => eprintln!("no violators"),
    }
    Ok(())
}

fn unit_eq(ctx: &Ctx, args: UnitArgs) -> Run {
    let a = ctx.config_or(args)?;
    let s: PlaceSet = a.s.parse()?;
    let delta = a.delta.as_deref().map(q).transpose()?;
    let rep = harness::solve_unit_equation(&s, a.n, a.bound, delta.as_ref(), a.budget)?;
    let mut w = ctx.writer()?;
    let mut header = vec!["kind".to_string()];
    header.extend((0..=a.n).map(|i| format!("x{i}")));
    w.write_record(&header)?;
    for (kind, list) in [("solution", &rep.solutions), ("degenerate", &rep.degenerate)] {
        for x in list {
            let mut rec = vec![kind.to_string()];
            rec.extend(x.iter().map(|c| c.to_string()));
            w.write_record(&rec)?;
        }
    }
    w.flush()?;
    eprintln!("{} solutions, {} with vanishing subsums", rep.solutions.len(), rep.degenerate.len());
    for (v, c, almost) in &rep.frequency {
        let tag = almost.map(|b| if b { " (almost unit)" } else { "" }).unwrap_or("");
        eprintln!("  {v}: {c}{tag}");
    }
    if rep.truncated {
        return Err(Failure::Budget(format!("budget exhausted after {} candidates; output is partial", rep.examined)));
    }
    Ok(())
}

fn hilbert_verify(ctx: &Ctx, args: HilbertArgs) -> Run {
    let rep = hilbert_sweep(ctx.seed, args.pairs);
    let mut w = ctx.writer()?;
    w.write_record(["cells", "formula_checks", "ord_checks", "mismatches", "ord_failures"])?;
    w.write_record([
        rep.cells.to_string(),
        rep.formula_checks.to_string(),
        rep.ord_checks.to_string(),
        rep.mismatches.len().to_string(),
        rep.ord_failures.len().to_string(),
    ])?;
    w.flush()?;
    for m in rep.mismatches.iter().chain(&rep.ord_failures) {
        eprintln!("{m}");
    }
    if rep.mismatches.is_empty() && rep.ord_failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Other("hilbert sweep found discrepancies".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global().expect("thread pool");
    }
    let ctx = Ctx { config: cli.config, out: cli.out, prec: cli.prec, seed: cli.seed };
    let res = match cli.cmd {
        Command::LrsScan(a) => lrs_scan(&ctx, a),
        Command::PolyGcd => poly_gcd(&ctx),
        Command::ExamplePk(a) => example_pk(&ctx, a),
        Command::Sharpness(a) => sharpness(&ctx, a),
        Command::Rec1Scan(a) => rec1_scan(&ctx, a),
        Command::UnitEq(a) => unit_eq(&ctx, a),
        Command::HilbertVerify(a) => hilbert_verify(&ctx, a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Precondition(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("truncated: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

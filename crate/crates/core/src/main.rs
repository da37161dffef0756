use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ballout::eval::{class_f1, inlier_rows};
use ballout::multiclass::class_counts;
use ballout::report::{
    AnyReport, ClassEval, ClassReport, Counts, FitReport, MultiEval, MultiReport, ParamsEcho,
};
use ballout::{bench, f1, io as bio, synth};
use ballout::{derive_params, peel, recognize_with, ClassSpec, Error, Params, Result};

#[derive(Parser)]
#[command(name = "ballout", version, about = "Outlier recognition with approximate enclosing balls")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a labeled synthetic dataset.
    Gen(GenArgs),
    /// Fit one ball and report its inliers.
    Fit(FitArgs),
    /// Peel several inlier classes one ball at a time.
    Multifit(MultiArgs),
    /// Score a fit or multifit result against labels.
    Eval(EvalArgs),
    /// Time fits over a grid of sizes and dimensions.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Toy2d,
    Highdim,
    Multiclass,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 10_000)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    d: usize,
    #[arg(long, default_value_t = 0.1)]
    gamma: f64,
    /// Comma-separated class fractions (multiclass only).
    #[arg(long, value_delimiter = ',')]
    fractions: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    labels: PathBuf,
}

#[derive(Args)]
struct Knobs {
    #[arg(long, default_value_t = Params::default().gamma)]
    gamma: f64,
    #[arg(long, default_value_t = Params::default().epsilon)]
    epsilon: f64,
    #[arg(long, default_value_t = Params::default().delta)]
    delta: f64,
    #[arg(long, default_value_t = Params::default().mu)]
    mu: f64,
    #[arg(long, default_value_t = Params::default().meb_iters.unwrap_or(64))]
    meb_iters: usize,
    /// Independently rooted trees.
    #[arg(long, default_value_t = 1)]
    forest: usize,
    /// Extra trees re-rooted at the best center so far.
    #[arg(long, default_value_t = 0)]
    rounds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl Knobs {
    fn params(&self) -> Params {
        Params {
            gamma: self.gamma,
            epsilon: self.epsilon,
            delta: self.delta,
            mu: self.mu,
            meb_iters: Some(self.meb_iters),
            forest_size: self.forest,
            sequential_rounds: self.rounds,
            seed: self.seed,
        }
    }
}

#[derive(Args)]
struct FitArgs {
    points: PathBuf,
    #[command(flatten)]
    knobs: Knobs,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock milliseconds in the JSON.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct MultiArgs {
    points: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    fractions: Vec<f64>,
    #[command(flatten)]
    knobs: Knobs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct EvalArgs {
    result: PathBuf,
    labels: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "5000,10000,20000,40000")]
    sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "50")]
    dims: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    #[command(flatten)]
    knobs: Knobs,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(Error::file(p))?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit_json<T: serde::Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    if threads == 0 {
        return Err(Error::InvalidArgs("--threads must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgs(e.to_string()))?;
    pool.install(f)
}

fn gen(a: &GenArgs) -> Result<()> {
    let (ds, labels) = match a.kind {
        Kind::Toy2d => synth::gen_toy_2d(a.seed),
        Kind::Highdim => synth::gen_highdim(a.n, a.d, a.gamma, a.seed)?,
        Kind::Multiclass => synth::gen_multiclass(a.n, a.d, &a.fractions, a.gamma, a.seed)?,
    };
    bio::write_points(&a.points, &ds)?;
    bio::write_labels(&a.labels, &labels)
}

fn fit(a: &FitArgs) -> Result<()> {
    let p = a.knobs.params();
    p.validate()?;
    let ds = bio::read_points(&a.points)?;
    let dp = derive_params(&p, ds.n())?;
    let start = Instant::now();
    let r = with_threads(a.knobs.threads, || recognize_with(&ds, &p, &dp))?;
    let millis = start.elapsed().as_millis() as u64;
    let report = FitReport {
        fit: r.into(),
        counts: (&dp).into(),
        params_echo: ParamsEcho::new(&p),
        millis: a.timing.then_some(millis),
    };
    emit_json(&report, a.out.as_deref())
}

fn multifit(a: &MultiArgs) -> Result<()> {
    let p = a.knobs.params();
    let spec = ClassSpec::new(a.fractions.clone());
    p.validate_knobs()?;
    spec.validate(p.gamma)?;
    let ds = bio::read_points(&a.points)?;
    let start = Instant::now();
    let fits = with_threads(a.knobs.threads, || peel(&ds, &spec, &p))?;
    let millis = start.elapsed().as_millis() as u64;
    let mut remaining = ds.n();
    let mut classes = Vec::with_capacity(fits.len());
    for (fit, &fraction) in fits.into_iter().zip(&a.fractions) {
        let counts = Counts::from(&class_counts(&p, fraction, ds.n(), remaining)?);
        remaining -= fit.inliers.len();
        classes.push(ClassReport {
            fraction,
            fit: fit.into(),
            counts,
        });
    }
    let report = MultiReport {
        classes,
        params_echo: ParamsEcho::new(&p),
        millis: a.timing.then_some(millis),
    };
    emit_json(&report, a.out.as_deref())
}

fn eval(a: &EvalArgs) -> Result<()> {
    let report: AnyReport = serde_json::from_reader(io::BufReader::new(
        File::open(&a.result).map_err(Error::file(&a.result))?,
    ))?;
    let labels = bio::read_labels(&a.labels)?;
    let n = labels.len();
    match report {
        AnyReport::Single { inliers } => {
            emit_json(&f1(&inliers, &inlier_rows(&labels), n)?, a.out.as_deref())
        }
        AnyReport::Multi { classes } => {
            let mut evals = Vec::with_capacity(classes.len());
            for c in &classes {
                let (label, metrics) = class_f1(&c.inliers, &labels)?;
                evals.push(ClassEval { label, metrics });
            }
            let average_f1 =
                evals.iter().map(|e| e.metrics.f1).sum::<f64>() / evals.len().max(1) as f64;
            emit_json(&MultiEval { classes: evals, average_f1 }, a.out.as_deref())
        }
    }
}

fn bench(a: &BenchArgs) -> Result<()> {
    let p = a.knobs.params();
    let rows = with_threads(a.knobs.threads, || {
        bench::run_grid(&a.sizes, &a.dims, &p, a.repeats)
    })?;
    bench::write_csv(sink(a.out.as_deref())?, &rows)
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.cmd {
        Cmd::Gen(a) => gen(a),
        Cmd::Fit(a) => fit(a),
        Cmd::Multifit(a) => multifit(a),
        Cmd::Eval(a) => eval(a),
        Cmd::Bench(a) => bench(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

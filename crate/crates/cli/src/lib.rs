//! `bposd` command-line front end: code generation, single-shot decoding,
//! Monte Carlo sweeps and threshold runs.
//!
//! Exit codes are a stable contract:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | no crossing found (data is still written) |
//! | 2 | usage: bad flags, malformed strings, length mismatches, I/O |
//! | 3 | validation: invalid distance, code file failing its checks |

pub mod manifest;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use bposd_core::bp4::Schedule;
use bposd_core::codes::{load_code_file, xzzx_code, CodeError, Family, StabilizerCode};
use bposd_core::pauli_algebra::{syndrome_of, Pauli, PauliVector, Syndrome};
use bposd_core::simulator::output::to_csv;
use bposd_core::simulator::{
    estimate_threshold, sweep, DecoderConfig, Pipeline, RunStats, SimError, StopRule, ThresholdError,
    ThresholdEstimate,
};
use bposd_core::Real;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

pub use manifest::{decoder_label, parse_decoder, parse_epsilons, CodeSpec, Command, Format, Precision, RunManifest};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_CROSSING: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;

#[derive(Debug)]
pub struct CliError {
    pub exit: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            exit: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn validation(message: impl Into<String>) -> Self {
        CliError {
            exit: EXIT_VALIDATION,
            message: message.into(),
        }
    }
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::Io { .. } => CliError::usage(e.to_string()),
            other => CliError::validation(other.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Bp(_) | SimError::InvalidEpsilon(_) | SimError::InvalidStop | SimError::EmptySweep => {
                CliError::usage(e.to_string())
            }
            other => CliError::validation(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "bposd", version, about = "Quaternary BP + OSD decoding of stabilizer codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Emit a built-in code (or re-validate a code file) in check-matrix format
    GenCode(GenCodeArgs),
    /// Decode one syndrome, or one injected error
    Decode(DecodeArgs),
    /// Monte Carlo logical error rates over codes × ε
    Sweep(SweepArgs),
    /// Sweep, then estimate pairwise threshold crossings
    Threshold(SweepArgs),
    /// Re-run the manifest embedded in a CSV or JSON artifact
    Replay(ReplayArgs),
}

#[derive(Args, Debug, Clone)]
#[command(group(ArgGroup::new("code").required(true).args(["family", "code_file"])))]
pub struct CodeArgs {
    /// toric, surface, color666 or xzzx
    #[arg(long)]
    pub family: Option<Family>,
    /// Distance(s), comma separated
    #[arg(long, requires = "family")]
    pub d: Option<String>,
    /// Boundary twist for xzzx
    #[arg(long, requires = "family")]
    pub twist: Option<usize>,
    /// Check-matrix file(s), comma separated
    #[arg(long)]
    pub code_file: Option<String>,
}

impl CodeArgs {
    fn spec(&self) -> CliResult<CodeSpec> {
        if let Some(paths) = &self.code_file {
            let paths: Vec<String> = paths
                .split(',')
                .map(str::trim)
                .filter(|p| !p.is_empty())
                .map(String::from)
                .collect();
            if paths.is_empty() {
                return Err(CliError::usage("--code-file: empty path list"));
            }
            return Ok(CodeSpec::File { paths });
        }
        let family = self.family.expect("clap enforces the code group");
        let d = self.d.as_deref().ok_or_else(|| CliError::usage("--family needs --d"))?;
        let distances = manifest::parse_usize_list(d).map_err(|e| CliError::usage(format!("--d: {e}")))?;
        if self.twist.is_some() && family != Family::Xzzx {
            return Err(CliError::usage("--twist applies to xzzx only"));
        }
        Ok(CodeSpec::Family {
            family,
            distances,
            twist: self.twist,
        })
    }
}

pub fn build_codes(spec: &CodeSpec) -> CliResult<Vec<StabilizerCode>> {
    match spec {
        CodeSpec::Family {
            family,
            distances,
            twist,
        } => distances
            .iter()
            .map(|&d| match (family, twist) {
                (Family::Xzzx, Some(t)) => xzzx_code(d, Some(*t)),
                _ => family.build(d),
            })
            .map(|r| r.map_err(CliError::from))
            .collect(),
        CodeSpec::File { paths } => paths.iter().map(|p| load_code_file(p).map_err(CliError::from)).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScheduleArg {
    Serial,
    Parallel,
}

#[derive(Args, Debug, Clone)]
pub struct DecoderArgs {
    /// bp4 | mbp4, optionally `+osdW` / `+mosdW` where W is the search order
    /// (so `bp4+osd2` is BP₄ then order-2 OSD₄, not an "OSD-2" variant)
    #[arg(long, default_value = "bp4+osd2")]
    pub decoder: String,
    /// Memory exponent for mbp4: a number, or `eps` for the ε-scaled rule
    #[arg(long)]
    pub alpha: Option<String>,
    /// BP iteration cap (default: 60 for built-in lattices, 100 for files)
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long, value_enum, default_value = "serial")]
    pub schedule: ScheduleArg,
    #[arg(long, value_enum, default_value = "f64")]
    pub precision: Precision,
}

impl DecoderArgs {
    fn config(&self) -> CliResult<DecoderConfig> {
        let mut cfg = parse_decoder(&self.decoder, self.alpha.as_deref()).map_err(CliError::usage)?;
        if self.max_iter == Some(0) {
            return Err(CliError::usage("--max-iter must be at least 1"));
        }
        cfg.max_iterations = self.max_iter;
        cfg.schedule = match self.schedule {
            ScheduleArg::Serial => Schedule::Serial,
            ScheduleArg::Parallel => Schedule::Parallel,
        };
        Ok(cfg)
    }
}

#[derive(Args, Debug)]
pub struct GenCodeArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Output file; `-` writes the matrix to stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["syndrome", "error"])))]
pub struct DecodeArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub decoder: DecoderArgs,
    /// Syndrome bit string, one bit per check row
    #[arg(long)]
    pub syndrome: Option<String>,
    /// Error to inject: a full letter string (`IXZI…`) or sparse `X4,Z7`
    #[arg(long)]
    pub error: Option<String>,
    /// Depolarizing rate used for the BP prior
    #[arg(long, default_value_t = 0.05)]
    pub eps: f64,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub decoder: DecoderArgs,
    /// ε values: `0.1`, `0.1,0.12`, or `start:stop:step`
    #[arg(long)]
    pub eps: String,
    /// Stop a point after this many logical errors
    #[arg(long, default_value_t = 100)]
    pub events: u64,
    /// ... or after this many trials
    #[arg(long, default_value_t = 1_000_000)]
    pub max_trials: u64,
    #[arg(long, env = "QEC_BPOSD_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Worker threads (default: all cores); never changes the data
    #[arg(long)]
    pub workers: Option<usize>,
    /// Output file (default: stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Suppress the per-point log on stderr
    #[arg(long, short)]
    pub quiet: bool,
}

#[derive(Args, Debug)]
pub struct ReplayArgs {
    /// CSV or JSON artifact written by `sweep`/`threshold`
    pub artifact: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.exit
        }
    }
}

fn dispatch(cmd: Cmd, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    match cmd {
        Cmd::GenCode(a) => cmd_gen_code(&a, out),
        Cmd::Decode(a) => cmd_decode(&a, out),
        Cmd::Sweep(a) => cmd_sweep(Command::Sweep, &a, out, err),
        Cmd::Threshold(a) => cmd_sweep(Command::Threshold, &a, out, err),
        Cmd::Replay(a) => cmd_replay(&a, out, err),
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::usage(format!("cannot write {}: {e}", path.display()))
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) if p != Path::new("-") => std::fs::write(p, text).map_err(|e| io_err(p, e)),
        _ => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::usage(format!("stdout: {e}"))),
    }
}

pub fn cmd_gen_code(a: &GenCodeArgs, out: &mut dyn Write) -> CliResult<i32> {
    let codes = build_codes(&a.code.spec()?)?;
    if codes.len() != 1 {
        return Err(CliError::usage("gen-code takes exactly one code"));
    }
    let code = &codes[0];
    let text = code.to_text();
    match a.out.as_deref() {
        Some(p) if p == Path::new("-") => emit(&text, None, out)?,
        Some(p) => emit(&text, Some(p), out)?,
        None => {}
    }
    let line = format!(
        "code={} n={} k={} rank={} m={}\n",
        code.name,
        code.n,
        code.k,
        code.check.rank(),
        code.m()
    );
    // Keep stdout parseable when the matrix itself went there.
    if a.out.as_deref() == Some(Path::new("-")) {
        return Ok(EXIT_OK);
    }
    emit(&line, None, out)?;
    Ok(EXIT_OK)
}

/// Accepts `IXZY…` (one letter per qubit) or sparse `X4,Z7` / `X4 Z7`.
pub fn parse_error_string(s: &str, n: usize) -> CliResult<PauliVector> {
    let s = s.trim();
    if s.chars().any(|c| c.is_ascii_digit()) {
        let mut entries = Vec::new();
        for tok in s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let mut chars = tok.chars();
            let letter = chars
                .next()
                .and_then(|c| Pauli::from_char(c).ok())
                .ok_or_else(|| CliError::usage(format!("bad error term {tok:?} (expected e.g. X4)")))?;
            let q: usize = chars
                .as_str()
                .parse()
                .map_err(|_| CliError::usage(format!("bad qubit index in {tok:?}")))?;
            if q >= n {
                return Err(CliError::usage(format!("qubit {q} out of range for n = {n}")));
            }
            entries.push((q, letter));
        }
        return Ok(PauliVector::from_sparse(n, &entries));
    }
    let p: PauliVector = s
        .parse()
        .map_err(|e| CliError::usage(format!("bad error string: {e}")))?;
    if p.n() != n {
        return Err(CliError::usage(format!(
            "error string has {} letters, code has n = {n} qubits",
            p.n()
        )));
    }
    Ok(p)
}

pub fn cmd_decode(a: &DecodeArgs, out: &mut dyn Write) -> CliResult<i32> {
    let codes = build_codes(&a.code.spec()?)?;
    if codes.len() != 1 {
        return Err(CliError::usage("decode takes exactly one code"));
    }
    let code = &codes[0];
    let cfg = a.decoder.config()?;
    if !(0.0..=1.0).contains(&a.eps) {
        return Err(CliError::usage(format!("--eps {} outside [0, 1]", a.eps)));
    }
    let (syndrome, error) = match (&a.syndrome, &a.error) {
        (Some(s), _) => {
            let z = Syndrome::parse(s).map_err(|e| CliError::usage(e.to_string()))?;
            if z.len() != code.m() {
                return Err(CliError::usage(format!(
                    "syndrome has {} bits, code has m = {} checks",
                    z.len(),
                    code.m()
                )));
            }
            (z, None)
        }
        (None, Some(e)) => {
            let e = parse_error_string(e, code.n)?;
            let z = syndrome_of(&code.check, &e).expect("error length checked");
            (z, Some(e))
        }
        (None, None) => unreachable!("clap enforces the input group"),
    };
    let report = match a.decoder.precision {
        Precision::F64 => decode_report::<f64>(code, &cfg, a.eps, &syndrome, error.as_ref())?,
        Precision::F32 => decode_report::<f32>(code, &cfg, a.eps, &syndrome, error.as_ref())?,
    };
    emit(&report, None, out)?;
    Ok(EXIT_OK)
}

fn decode_report<T: Real>(
    code: &StabilizerCode,
    cfg: &DecoderConfig,
    eps: f64,
    syndrome: &Syndrome,
    error: Option<&PauliVector>,
) -> CliResult<String> {
    let pipe = Pipeline::<T>::new(code, cfg, eps)?;
    let res = pipe.decode(syndrome)?;
    let valid = syndrome_of(&code.check, &res.estimate).expect("estimate has length n") == *syndrome;
    let mut s = String::new();
    s += &format!("code={} n={} k={} decoder={}\n", code.name, code.n, code.k, decoder_label(cfg));
    s += &format!("syndrome={syndrome}\n");
    s += &format!("converged={} iters={}\n", res.bp_converged, res.iterations_used);
    s += &format!("osd={}\n", res.osd_invoked);
    s += &format!("estimate={}\n", res.estimate);
    s += &format!("weight={}\n", res.estimate.weight());
    s += &format!("valid={valid}\n");
    if let Some(e) = error {
        let class = if !valid {
            "syndrome-mismatch"
        } else if code.is_logical_error(&res.estimate.mul(e)) {
            "logical-error"
        } else {
            "stabilizer-equivalent"
        };
        s += &format!("class={class}\n");
    }
    Ok(s)
}

fn manifest_from_args(command: Command, a: &SweepArgs) -> CliResult<RunManifest> {
    let decoder = a.decoder.config()?;
    let epsilons = parse_epsilons(&a.eps).map_err(|e| CliError::usage(format!("--eps: {e}")))?;
    if a.events == 0 || a.max_trials == 0 {
        return Err(CliError::usage("--events and --max-trials must be at least 1"));
    }
    Ok(RunManifest {
        command,
        code: a.code.spec()?,
        decoder_spec: decoder_label(&decoder),
        decoder,
        epsilons,
        stop: StopRule {
            min_logical_errors: a.events,
            max_trials: a.max_trials,
        },
        seed: a.seed,
        precision: a.decoder.precision,
    })
}

fn cmd_sweep(command: Command, a: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let m = manifest_from_args(command, a)?;
    execute(&m, &a.output, out, err)
}

fn cmd_replay(a: &ReplayArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let text = std::fs::read_to_string(&a.artifact)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", a.artifact.display())))?;
    let m = RunManifest::from_artifact(&text).map_err(CliError::usage)?;
    execute(&m, &a.output, out, err)
}

/// Outcome of a manifest run: the table and, for `threshold`, the estimate.
pub struct RunOutput {
    pub table: Vec<RunStats>,
    pub threshold: Option<Result<ThresholdEstimate, ThresholdError>>,
}

/// Runs a manifest. `log` receives one line per finished point.
pub fn run_manifest(m: &RunManifest, workers: usize, log: &mut dyn FnMut(&RunStats)) -> CliResult<RunOutput> {
    let codes = build_codes(&m.code)?;
    if m.command == Command::Threshold {
        let with_d = codes.iter().filter_map(|c| c.d).collect::<std::collections::BTreeSet<_>>();
        if with_d.len() < 2 || m.epsilons.len() < 3 {
            return Err(CliError::usage(
                "threshold needs >= 2 distinct family distances and >= 3 epsilons",
            ));
        }
    }
    let table = match m.precision {
        Precision::F64 => sweep::<f64>(&codes, &m.epsilons, &m.decoder, m.stop, m.seed, workers, &mut *log)?,
        Precision::F32 => sweep::<f32>(&codes, &m.epsilons, &m.decoder, m.stop, m.seed, workers, &mut *log)?,
    };
    let threshold = (m.command == Command::Threshold).then(|| estimate_threshold(&table));
    Ok(RunOutput { table, threshold })
}

/// Renders a finished run, manifest embedded.
pub fn render(m: &RunManifest, run: &RunOutput, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = to_csv(&run.table, Some(&format!("manifest {}", m.to_json_line())));
            match &run.threshold {
                Some(Ok(est)) => s += &format!("# threshold {est}\n"),
                Some(Err(e)) => s += &format!("# threshold {e}\n"),
                None => {}
            }
            s
        }
        Format::Json => {
            let mut obj = serde_json::json!({
                "manifest": m,
                "points": run.table,
            });
            match &run.threshold {
                Some(Ok(est)) => {
                    obj["threshold"] = serde_json::json!({
                        "summary": est.to_string(),
                        "estimate": est,
                    })
                }
                Some(Err(e)) => obj["threshold"] = serde_json::json!({ "summary": e.to_string() }),
                None => {}
            }
            let mut s = serde_json::to_string_pretty(&obj).expect("JSON value serializes");
            s.push('\n');
            s
        }
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn execute(m: &RunManifest, o: &OutputArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let workers = o.workers.unwrap_or_else(default_workers);
    if workers == 0 {
        return Err(CliError::usage("--workers must be at least 1"));
    }
    let quiet = o.quiet;
    let mut log = |s: &RunStats| {
        if !quiet {
            let _ = writeln!(
                err,
                "{} eps={} trials={} errors={} ler={:.5e}",
                s.code, s.epsilon, s.trials, s.logical_errors, s.ler
            );
        }
    };
    let run = run_manifest(m, workers, &mut log)?;
    emit(&render(m, &run, o.format), o.out.as_deref(), out)?;
    match &run.threshold {
        Some(Err(e)) => {
            let _ = writeln!(err, "threshold: {e}");
            Ok(EXIT_NO_CROSSING)
        }
        Some(Ok(est)) => {
            let _ = writeln!(err, "threshold: {est}");
            Ok(EXIT_OK)
        }
        None => Ok(EXIT_OK),
    }
}

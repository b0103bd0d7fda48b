mod checkpoint;
mod io;
mod matrix_file;
mod report_file;
mod table;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use markov_complexity::bases::{graver_basis, minimal_markov_basis, universal_markov_basis};
use markov_complexity::complexity::PipelineOptions;
use markov_complexity::{
    build_model_matrix, model_complexities, parse_complex, BasisSet, Caps, Error, IntMatrix, ProfileMode, TableDims,
};

use crate::checkpoint::CheckpointDir;
use crate::io::{with_suffix, write_atomic, CliError, EXIT_CAP, EXIT_OTHER};
use crate::report_file::ReportFile;

/// Model matrices, Graver and Markov bases, and the Markov and Graver
/// complexities of hierarchical models with one varying dimension.
#[derive(Parser)]
#[command(name = "mcx", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the model matrix of a complex and a `.labels` legend.
    Matrix {
        #[arg(long)]
        complex: String,
        /// Table dimensions d_1,…,d_n.
        #[arg(long)]
        dims: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graver basis of a matrix.
    Graver(BasisArgs),
    /// Greedy minimal Markov basis.
    Markov(BasisArgs),
    /// Universal Markov basis.
    Universal(BasisArgs),
    /// Markov and Graver complexity and the lower bound, with d_1 varying.
    Complexity {
        #[arg(long)]
        complex: String,
        /// Dimensions d_2,…,d_n.
        #[arg(long)]
        dims_rest: String,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[command(flatten)]
        caps: CapArgs,
        /// Resume and save Graver completions in this directory.
        #[arg(long)]
        checkpoint_dir: Option<PathBuf>,
        /// Record wall-clock time in the report.
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce rows of the binary four-vertex table.
    Table {
        #[arg(long, default_value = "core")]
        suite: String,
        /// Worker threads; falls back to MCX_JOBS, then 1.
        #[arg(long, env = "MCX_JOBS")]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[command(flatten)]
        caps: CapArgs,
        #[arg(long)]
        checkpoint_dir: Option<PathBuf>,
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct BasisArgs {
    /// Matrix file.
    #[arg(long, conflicts_with_all = ["complex", "dims"])]
    matrix: Option<PathBuf>,
    #[arg(long, requires = "dims")]
    complex: Option<String>,
    #[arg(long, requires = "complex")]
    dims: Option<String>,
    #[command(flatten)]
    caps: CapArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CapArgs {
    #[arg(long)]
    max_fiber_points: Option<usize>,
    #[arg(long)]
    max_basis_elements: Option<usize>,
    /// Highest lifting level of the Markov profile.
    #[arg(long)]
    max_r: Option<usize>,
    /// Seconds.
    #[arg(long)]
    time_limit: Option<f64>,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(n) = self.max_fiber_points {
            caps = caps.with_fiber_points(n);
        }
        if let Some(n) = self.max_basis_elements {
            caps = caps.with_basis_elements(n);
        }
        if let Some(r) = self.max_r {
            caps = caps.with_max_r(r);
        }
        if let Some(t) = self.time_limit {
            caps = caps.with_time_limit(Duration::from_secs_f64(t));
        }
        caps.started()
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Heuristic,
}

impl From<Mode> for ProfileMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => ProfileMode::Exact,
            Mode::Heuristic => ProfileMode::Heuristic,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("mcx: {e}");
            ExitCode::from(e.code)
        }
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Matrix { complex, dims, out } => cmd_matrix(&complex, &dims, out.as_deref()),
        Command::Graver(args) => cmd_basis(&args, |m, caps| graver_basis(m, caps)),
        Command::Markov(args) => cmd_basis(&args, |m, caps| minimal_markov_basis(m, caps)),
        Command::Universal(args) => cmd_basis(&args, |m, caps| universal_markov_basis(m, caps)),
        Command::Complexity { complex, dims_rest, mode, caps, checkpoint_dir, timings, out } => {
            cmd_complexity(&complex, &dims_rest, mode.into(), &caps, checkpoint_dir.as_deref(), timings, out.as_deref())
        }
        Command::Table { suite, jobs, mode, caps, checkpoint_dir, timings, out } => {
            let rows = table::suite(&suite)?;
            let opts = table::TableOptions {
                mode: mode.into(),
                caps: caps.caps(),
                out: &out,
                checkpoints: checkpoint_dir.as_deref(),
                timings,
            };
            let agree = table::run(&rows, jobs.unwrap_or(1).max(1), &opts)?;
            println!("{}", out.join("summary.csv").display());
            Ok(if agree { 0 } else { EXIT_OTHER })
        }
    }
}

fn cmd_matrix(complex: &str, dims: &str, out: Option<&Path>) -> Result<u8, CliError> {
    let delta = parse_complex(complex)?;
    let dims = TableDims::parse(dims)?;
    let model = build_model_matrix(&delta, &dims)?;
    let Some(out) = out else {
        print!("{}", matrix_file::render(&model.matrix));
        return Ok(0);
    };
    matrix_file::write(out, &model.matrix)?;
    let mut labels = String::from("rows\n");
    for (k, l) in model.row_labels.iter().enumerate() {
        writeln!(labels, "{k} {l}").unwrap();
    }
    labels.push_str("columns\n");
    for (k, c) in model.col_labels.iter().enumerate() {
        let cell: Vec<String> = c.iter().map(|i| i.to_string()).collect();
        writeln!(labels, "{k} ({})", cell.join(",")).unwrap();
    }
    let labels_path = with_suffix(out, ".labels");
    write_atomic(&labels_path, &labels)?;
    if std::fs::read_to_string(&labels_path).map_err(|e| CliError::io(&labels_path, e))? != labels {
        return Err(CliError::internal(format!("{} does not read back", labels_path.display())));
    }
    Ok(0)
}

fn input_matrix(args: &BasisArgs) -> Result<IntMatrix, CliError> {
    match (&args.matrix, &args.complex, &args.dims) {
        (Some(path), _, _) => matrix_file::read(path),
        (None, Some(c), Some(d)) => Ok(build_model_matrix(&parse_complex(c)?, &TableDims::parse(d)?)?.matrix),
        _ => Err(CliError::parse("pass --matrix, or --complex with --dims")),
    }
}

fn cmd_basis(args: &BasisArgs, compute: impl Fn(&IntMatrix, &Caps) -> markov_complexity::Result<BasisSet>) -> Result<u8, CliError> {
    let m = input_matrix(args)?;
    match compute(&m, &args.caps.caps()) {
        Ok(basis) => {
            let out = IntMatrix::from_rows(basis.vectors(), m.cols())?;
            match &args.out {
                Some(path) => matrix_file::write(path, &out)?,
                None => print!("{}", matrix_file::render(&out)),
            }
            Ok(0)
        }
        Err(Error::CapExceeded { kind, detail, partial }) => {
            let e = Error::CapExceeded { kind, detail, partial: None };
            eprintln!("mcx: {e}");
            if let (Some(path), Some(partial)) = (&args.out, partial) {
                let set = BasisSet::new(markov_complexity::BasisKind::Graver, "partial", partial);
                let path = with_suffix(path, ".partial");
                matrix_file::write(&path, &IntMatrix::from_rows(set.vectors(), m.cols())?)?;
                eprintln!("mcx: partial result in {}", path.display());
            }
            Ok(EXIT_CAP)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_complexity(
    complex: &str,
    dims_rest: &str,
    mode: ProfileMode,
    caps: &CapArgs,
    checkpoint_dir: Option<&Path>,
    timings: bool,
    out: Option<&Path>,
) -> Result<u8, CliError> {
    let start = Instant::now();
    let delta = parse_complex(complex)?;
    let dims = TableDims::parse(dims_rest)?;
    let store = checkpoint_dir.map(CheckpointDir::new).transpose().map_err(|e| CliError::internal(e.to_string()))?;
    let opts = PipelineOptions { mode, caps: caps.caps(), checkpoints: store.as_ref().map(|s| s as _) };
    let report = model_complexities(&delta, &dims, &opts)?;
    let file = ReportFile::new(&report, mode, timings.then(|| start.elapsed().as_secs_f64()));
    if let Some(path) = out {
        file.write(path)?;
    }
    println!("{}", file.summary());
    for (name, reason) in [
        ("m", report.markov.reason()),
        ("g", report.graver.reason()),
        ("lb", report.lower_bound.reason()),
    ] {
        if let Some(r) = reason {
            eprintln!("mcx: {name} missing: {r}");
        }
    }
    for m in &report.markers {
        eprintln!("mcx: note: {}", m.describe());
    }
    let capped = [report.markov.cap(), report.graver.cap(), report.lower_bound.cap()].iter().any(Option::is_some);
    Ok(if capped { EXIT_CAP } else { 0 })
}

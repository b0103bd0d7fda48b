//! Binary hierarchical models on four vertices with `d_1` varying and
//! `d_2 = d_3 = d_4 = 2`, with reference `(m, g)`.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use markov_complexity::complexity::PipelineOptions;
use markov_complexity::{model_complexities, parse_complex, Caps, ProfileMode, TableDims};
use rayon::prelude::*;

use crate::checkpoint::CheckpointDir;
use crate::io::{write_atomic, CliError};
use crate::report_file::ReportFile;

pub struct Row {
    pub model: &'static str,
    /// Blank where no value is known.
    pub m: Option<usize>,
    pub g: usize,
}

const fn row(model: &'static str, m: Option<usize>, g: usize) -> Row {
    Row { model, m, g }
}

pub const ALL: [Row; 35] = [
    row("[123][124][134][234]", Some(2), 2),
    row("[123][124][134]", Some(2), 2),
    row("[123][124][234]", Some(2), 2),
    row("[123][124][34]", Some(2), 2),
    row("[123][234][14]", Some(4), 4),
    row("[123][14][24][34]", Some(4), 4),
    row("[234][12][13][14]", None, 12),
    row("[12][13][14][23][24][34]", None, 10),
    row("[123][124]", Some(2), 2),
    row("[123][234]", Some(2), 2),
    row("[123][24][34]", Some(4), 4),
    row("[234][12][13]", Some(2), 10),
    row("[123][14][24]", Some(2), 2),
    row("[12][13][23][24][34]", Some(4), 16),
    row("[12][13][14][23][24]", Some(2), 4),
    row("[123][34]", Some(2), 2),
    row("[123][14]", Some(2), 2),
    row("[234][12]", Some(2), 4),
    row("[12][13][23][34]", Some(2), 10),
    row("[12][13][23][14]", Some(2), 2),
    row("[12][23][24][34]", Some(4), 8),
    row("[12][14][23][34]", Some(4), 5),
    row("[123][4]", Some(2), 2),
    row("[234][1]", Some(2), 8),
    row("[12][13][23][4]", Some(2), 8),
    row("[23][24][34][1]", Some(4), 16),
    row("[12][23][34]", Some(2), 6),
    row("[12][14][23]", Some(2), 4),
    row("[12][23][4]", Some(2), 6),
    row("[12][13][4]", Some(2), 3),
    row("[23][34][1]", Some(2), 14),
    row("[12][34]", Some(2), 4),
    row("[12][3][4]", Some(2), 4),
    row("[34][1][2]", Some(2), 12),
    row("[1][2][3][4]", Some(2), 10),
];

pub const CORE: [&str; 9] = [
    "[123][124][134][234]",
    "[123][34]",
    "[123][14]",
    "[234][12]",
    "[12][34]",
    "[12][13][4]",
    "[12][14][23]",
    "[234][1]",
    "[123][4]",
];

pub const EXTENDED: [&str; 4] = ["[12][13][23][24][34]", "[234][12][13]", "[34][1][2]", "[1][2][3][4]"];

pub fn suite(name: &str) -> Result<Vec<&'static Row>, CliError> {
    let pick = |models: &[&str]| models.iter().map(|m| ALL.iter().find(|r| r.model == *m).expect("row listed")).collect();
    match name {
        "core" => Ok(pick(&CORE)),
        "extended" => Ok(pick(&EXTENDED)),
        "full" => Ok(ALL.iter().collect()),
        other => Err(CliError::parse(format!("unknown suite {other:?} (core, extended, full)"))),
    }
}

/// `[12][13][4]` → `12-13-4`.
pub fn file_stem(model: &str) -> String {
    model.trim_start_matches('[').trim_end_matches(']').replace("][", "-")
}

pub struct Outcome {
    pub csv_line: String,
    pub agrees: bool,
}

pub struct TableOptions<'a> {
    pub mode: ProfileMode,
    pub caps: Caps,
    pub out: &'a Path,
    pub checkpoints: Option<&'a Path>,
    pub timings: bool,
}

fn show(v: Option<usize>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

fn run_row(row: &Row, opts: &TableOptions<'_>) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let store = opts.checkpoints.map(CheckpointDir::new).transpose().map_err(|e| CliError::internal(e.to_string()))?;
    let pipeline = PipelineOptions {
        mode: opts.mode,
        caps: opts.caps.clone(),
        checkpoints: store.as_ref().map(|s| s as _),
    };
    let delta = parse_complex(row.model)?;
    let dims = TableDims::new(vec![2, 2, 2]);
    let (m, g, status) = match model_complexities(&delta, &dims, &pipeline) {
        Ok(report) => {
            let elapsed = opts.timings.then(|| start.elapsed().as_secs_f64());
            let file = ReportFile::new(&report, opts.mode, elapsed);
            file.write(&opts.out.join(format!("{}.json", file_stem(row.model))))?;
            let (m, g) = (report.m(), report.g());
            let status = if m.is_none() || g.is_none() {
                let reason = report.markov.reason().or(report.graver.reason()).unwrap_or_default();
                format!("missing: {reason}")
            } else if g != Some(row.g) || (row.m.is_some() && m != row.m) {
                "mismatch".to_string()
            } else {
                "ok".to_string()
            };
            (m, g, status)
        }
        Err(e) => (None, None, format!("error: {e}")),
    };
    eprintln!("{}: {status}", row.model);
    let agrees = status == "ok";
    let mut csv_line = String::new();
    write!(csv_line, "{},{},{},{},{},{}", row.model, show(row.m), row.g, show(m), show(g), csv_field(&status)).unwrap();
    Ok(Outcome { csv_line, agrees })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Runs the rows in parallel, writes one report per row and `summary.csv`.
/// Returns whether every row agreed with the reference values.
pub fn run(rows: &[&Row], jobs: usize, opts: &TableOptions<'_>) -> Result<bool, CliError> {
    std::fs::create_dir_all(opts.out).map_err(|e| CliError::io(opts.out, e))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::internal(e.to_string()))?;
    let outcomes: Vec<Result<Outcome, CliError>> = pool.install(|| rows.par_iter().map(|r| run_row(r, opts)).collect());
    let mut csv = String::from("model,m_expected,g_expected,m_computed,g_computed,status\n");
    let mut all_agree = true;
    for o in outcomes {
        let o = o?;
        all_agree &= o.agrees;
        csv.push_str(&o.csv_line);
        csv.push('\n');
    }
    let path = opts.out.join("summary.csv");
    write_atomic(&path, &csv)?;
    let back = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
    if back != csv {
        return Err(CliError::internal(format!("{} does not read back to the written summary", path.display())));
    }
    Ok(all_agree)
}

//! Library side of the `twkit` command: file formats, reports and the
//! commands themselves, kept out of `main` so they can be tested.

pub mod pace;
pub mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;
use twkit::exact::exact_treewidth;
use twkit::generators::{cycle_graph, grid_graph, path_graph, random_k_tree, random_partial_k_tree};
use twkit::td::validate;
use twkit::{approximate_with_stats, search_min_k, DecomposeError, DecomposeOutcome, DecomposerConfig, Graph, Mode, TreeDecomposition};

use crate::pace::{emit_gr, emit_td, parse_gr, parse_td, ParseError};
use crate::report::{Counters, Outcome, RunReport};

/// Largest graph `exact` accepts.
pub const EXACT_LIMIT: usize = 20;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("treewidth exceeds {0}")]
    TwExceeds(usize),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Input(String),
    #[error("internal invariant failure: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::TwExceeds(_) => 1,
            CliError::Parse { .. } | CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<DecomposeError> for CliError {
    fn from(e: DecomposeError) -> Self {
        CliError::Internal(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_graph(path: &Path) -> Result<Graph, CliError> {
    parse_gr(&read(path)?).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

pub fn load_td(path: &Path) -> Result<TreeDecomposition, CliError> {
    parse_td(&read(path)?).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

pub fn parse_mode(name: &str, alpha: usize) -> Result<Mode, CliError> {
    match name {
        "rs4" => Ok(Mode::Rs4),
        "three" => Ok(Mode::Three),
        "five" if alpha >= 1 => Ok(Mode::Five { alpha }),
        "five" => Err(CliError::Input("alpha must be at least 1".into())),
        other => Err(CliError::Input(format!("unknown mode `{other}`"))),
    }
}

fn mode_name(mode: Mode) -> String {
    match mode {
        Mode::Rs4 => "rs4".into(),
        Mode::Three => "three".into(),
        Mode::Five { alpha } => format!("five({alpha})"),
    }
}

/// Which `k` a run uses.
#[derive(Clone, Copy, Debug)]
pub enum KChoice {
    Fixed(usize),
    Search,
}

/// Decomposes `g` and renders the `.td` text. The text is parsed back and
/// validated against `g` before it is returned.
pub fn decompose(g: &Graph, k: KChoice, mode: Mode) -> Result<(String, RunReport), CliError> {
    let config = DecomposerConfig::default();
    let start = Instant::now();
    let (k, outcome, stats) = match k {
        KChoice::Fixed(k) => {
            let (out, stats) = approximate_with_stats(g, k, mode, &config)?;
            (k, out, stats)
        }
        KChoice::Search => {
            let (k, td) = search_min_k(g, mode, &config)?;
            (k, DecomposeOutcome::Decomposition(td), Default::default())
        }
    };
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let mut report = RunReport {
        input: String::new(),
        n: g.n(),
        m: g.m(),
        k,
        mode: mode_name(mode),
        outcome: Outcome::TwExceeds,
        bags: None,
        wall_time_ms: elapsed,
        peak_table_entries: stats.peak_entries,
        counters: Counters::from(&stats),
    };
    let td = match outcome {
        DecomposeOutcome::Decomposition(td) => td,
        DecomposeOutcome::TwExceeds(_) => return Ok((String::new(), report)),
    };
    let text = emit_td(&td, g.n());
    let reread = parse_td(&text).map_err(|e| CliError::Internal(format!("emitted decomposition unreadable: {e}")))?;
    validate(g, &reread).map_err(|e| CliError::Internal(format!("emitted decomposition invalid: {e}")))?;
    report.outcome = Outcome::Decomposition { width: td.width().max(0) as usize };
    report.bags = Some(td.len());
    Ok((text, report))
}

/// Checks `td` against `g` and returns its width.
pub fn check(g: &Graph, td: &TreeDecomposition) -> Result<usize, CliError> {
    validate(g, td).map_err(|e| CliError::Input(format!("invalid decomposition: {e}")))?;
    Ok(td.width().max(0) as usize)
}

pub fn exact(g: &Graph) -> Result<usize, CliError> {
    if g.n() > EXACT_LIMIT {
        return Err(CliError::Input(format!("exact needs n <= {EXACT_LIMIT}, got {}", g.n())));
    }
    exact_treewidth(g).map_err(|e| CliError::Input(e.to_string()))
}

/// Default benchmark fixtures.
pub fn generate_suite(dir: &Path, seed: u64) -> Result<Vec<PathBuf>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fixtures: Vec<(String, Graph)> = vec![
        ("path_1000".into(), path_graph(1000)),
        ("cycle_500".into(), cycle_graph(500)),
        ("grid_4x5".into(), grid_graph(4, 5)),
        ("grid_3x100".into(), grid_graph(3, 100)),
        ("ktree2_2000".into(), random_k_tree(2000, 2, &mut rng).0),
        ("partial3tree_2000".into(), random_partial_k_tree(2000, 3, 0.8, &mut rng).0),
    ];
    std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let mut out = Vec::new();
    for (name, g) in fixtures {
        let path = dir.join(format!("{name}.gr"));
        std::fs::write(&path, emit_gr(&g)).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        out.push(path);
    }
    Ok(out)
}

/// The `.gr` files of `dir` in name order; the default suite is generated
/// into `dir` when there are none.
pub fn suite_files(dir: &Path, seed: u64) -> Result<Vec<PathBuf>, CliError> {
    let mut files: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(entries) => entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "gr"))
            .collect(),
        Err(_) => Vec::new(),
    };
    if files.is_empty() {
        files = generate_suite(dir, seed)?;
    }
    files.sort();
    Ok(files)
}

pub fn bench(dir: &Path, seed: u64, k: KChoice, mode: Mode) -> Result<Vec<RunReport>, CliError> {
    let mut reports = Vec::new();
    for path in suite_files(dir, seed)? {
        let g = load_graph(&path)?;
        let (_, mut report) = decompose(&g, k, mode)?;
        report.input = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        log::info!("{}", report.table_row());
        reports.push(report);
    }
    Ok(reports)
}

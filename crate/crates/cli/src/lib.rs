//! Command implementations behind the `expwell` binary.
//!
//! Every command returns data ([`Table`], [`VerifyReport`], ...) and leaves
//! printing and file handling to the caller, so the same code paths serve the
//! binary and the tests.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use expwell::refspec::{laguerre_spectrum, LaguerreBasisConfig, DEFAULT_K, DEFAULT_NU};
use expwell::tra::{
    morse_spectrum, morse_wavefunction, tra_capacity, tra_spectrum, tra_wavefunction_at_energy,
};
use expwell::{PotentialParams, WavefunctionGrid};

pub mod reference;
pub mod verify;

pub use verify::{run_verify, Check, VerifyReport};

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Compute(#[from] expwell::Error),
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use expwell::Error as E;
        match self {
            CliError::Invalid(_) => EXIT_INVALID_INPUT,
            CliError::Compute(
                E::Domain(_) | E::Range(_) | E::MorseBranch(_) | E::EmptySpectrum(_) | E::OutOfRange { .. },
            ) => EXIT_INVALID_INPUT,
            CliError::Compute(_) | CliError::Io { .. } => EXIT_VERIFY_FAILED,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    Tra,
    Laguerre,
    Morse,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Uniform sampling grid `xmin..=xmax`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub xmin: f64,
    pub xmax: f64,
    pub points: usize,
}

impl Grid {
    pub const POTENTIAL: Grid = Grid {
        xmin: -3.0,
        xmax: 4.0,
        points: 701,
    };
    pub const WAVEFUNCTION: Grid = Grid {
        xmin: -5.0,
        xmax: 10.0,
        points: 1501,
    };

    pub fn validate(&self) -> CliResult<()> {
        if self.points < 2 {
            return Err(CliError::Invalid(format!(
                "grid needs at least 2 points, got {}",
                self.points
            )));
        }
        if !(self.xmin.is_finite() && self.xmax.is_finite() && self.xmin < self.xmax) {
            return Err(CliError::Invalid(format!(
                "grid bounds must be finite with xmin < xmax, got [{}, {}]",
                self.xmin, self.xmax
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let step = (self.xmax - self.xmin) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.xmax
                } else {
                    self.xmin + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub lambda: f64,
    pub a_minus: f64,
    pub a_plus: f64,
    pub method: MethodChoice,
    pub nu: f64,
    pub k: usize,
    /// Number of levels requested from the Laguerre route.
    pub count: usize,
    pub grid: Grid,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            lambda: 1.0,
            a_minus: 8.0,
            a_plus: 2.0,
            method: MethodChoice::Tra,
            nu: DEFAULT_NU,
            k: DEFAULT_K,
            count: 8,
            grid: Grid::WAVEFUNCTION,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        self.grid.validate()?;
        if self.k < 1 {
            return Err(CliError::Invalid("K must be at least 1".into()));
        }
        if self.nu.is_nan() || self.nu <= -1.0 {
            return Err(CliError::Invalid(format!("nu must exceed -1, got {}", self.nu)));
        }
        Ok(())
    }

    pub fn params(&self) -> CliResult<PotentialParams> {
        Ok(PotentialParams::new(self.lambda, self.a_minus, self.a_plus)?)
    }

    fn basis(&self) -> CliResult<LaguerreBasisConfig> {
        Ok(LaguerreBasisConfig::new(self.nu, self.k)?)
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(usize),
    /// Fixed six decimals.
    Fixed(f64),
    /// Scientific notation, for values spanning many decades.
    Sci(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Fixed(v) => fixed6(*v),
            Cell::Sci(v) => format!("{v:.9e}"),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(n) => json!(n),
            Cell::Fixed(v) | Cell::Sci(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

/// Six decimals, ties to even, without a sign on zero.
pub fn fixed6(v: f64) -> String {
    let s = format!("{v:.6}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
}

impl Table {
    fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            ..Self::default()
        }
    }

    /// Header row, then data rows, then one `# note` line per note. LF endings.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let line = row.iter().map(Cell::csv).collect::<Vec<_>>().join(",");
            out.push_str(&line);
            out.push('\n');
        }
        for note in &self.notes {
            let _ = writeln!(out, "# note: {note}");
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "header": self.header,
            "rows": self
                .rows
                .iter()
                .map(|r| r.iter().map(Cell::json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("table serializes");
                s.push('\n');
                s
            }
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }
}

fn energy_cell(v: Option<&f64>) -> Cell {
    v.map_or(Cell::Empty, |e| Cell::Fixed(*e))
}

struct Levels {
    label: &'static str,
    energies: Vec<f64>,
    note: Option<String>,
}

fn levels(cfg: &RunConfig, method: MethodChoice, count: usize) -> CliResult<Levels> {
    let p = cfg.params()?;
    match method {
        MethodChoice::Tra => {
            let s = tra_spectrum(&p)?;
            Ok(Levels {
                label: s.method.as_str(),
                energies: s.energies,
                note: s.meta.note,
            })
        }
        MethodChoice::Morse => {
            if !p.is_morse() {
                return Err(CliError::Invalid(format!(
                    "--method morse needs --aplus 0, got {}",
                    cfg.a_plus
                )));
            }
            let s = morse_spectrum(p.lambda(), p.a_minus());
            Ok(Levels {
                label: s.method.as_str(),
                energies: s.energies,
                note: s.meta.note,
            })
        }
        MethodChoice::Laguerre => {
            let s = laguerre_spectrum(&p, &cfg.basis()?, count.min(cfg.k))?;
            Ok(Levels {
                label: s.method.as_str(),
                energies: s.energies,
                note: None,
            })
        }
        MethodChoice::Both => unreachable!("expanded by the caller"),
    }
}

/// Energy levels for the configured method.
///
/// `both` lines up the Bessel-basis and Laguerre-basis levels with their
/// absolute difference.
pub fn cmd_spectrum(cfg: &RunConfig) -> CliResult<Table> {
    cfg.validate()?;
    if cfg.method != MethodChoice::Both {
        let lv = levels(cfg, cfg.method, cfg.count)?;
        let mut table = Table::new(["n", "method", "energy"]);
        table.rows = lv
            .energies
            .iter()
            .enumerate()
            .map(|(n, e)| vec![Cell::Int(n), Cell::Text(lv.label.into()), Cell::Fixed(*e)])
            .collect();
        table.notes.extend(lv.note);
        return Ok(table);
    }

    let tra = levels(cfg, MethodChoice::Tra, 0)?;
    let lag = levels(cfg, MethodChoice::Laguerre, cfg.count.max(tra.energies.len()))?;
    let mut table = Table::new(["n", tra.label, "laguerre", "abs_diff"]);
    let rows = tra.energies.len().max(lag.energies.len());
    table.rows = (0..rows)
        .map(|n| {
            let (a, b) = (tra.energies.get(n), lag.energies.get(n));
            let diff = match (a, b) {
                (Some(a), Some(b)) => Cell::Fixed((a - b).abs()),
                _ => Cell::Empty,
            };
            vec![Cell::Int(n), energy_cell(a), energy_cell(b), diff]
        })
        .collect();
    table.notes.extend(tra.note);
    Ok(table)
}

pub const TABLE1_A_MINUS: [f64; 3] = [8.0, 6.0, 4.0];
pub const TABLE1_A_PLUS: f64 = 2.0;
pub const TABLE2_A_MINUS: f64 = 6.0;
pub const TABLE2_A_PLUS: [f64; 4] = [0.0, 4.0, 8.0, 12.0];
pub const TABLE3_LEVELS: usize = 8;
pub const TABLE4_LEVELS: usize = 6;

fn column_table(header: Vec<String>, columns: &[Vec<f64>]) -> Table {
    let rows = columns.iter().map(Vec::len).max().unwrap_or(0);
    let mut table = Table::new(header);
    table.rows = (0..rows)
        .map(|n| {
            std::iter::once(Cell::Int(n))
                .chain(columns.iter().map(|c| energy_cell(c.get(n))))
                .collect()
        })
        .collect();
    table
}

fn parallel_columns<F>(params: &[PotentialParams], f: F) -> CliResult<Vec<Vec<f64>>>
where
    F: Fn(&PotentialParams) -> CliResult<Vec<f64>> + Sync,
{
    std::thread::scope(|s| {
        let handles: Vec<_> = params.iter().map(|p| s.spawn(|| f(p))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("table worker panicked"))
            .collect()
    })
}

/// The four energy tables as `(file name, table)`.
pub fn build_tables() -> CliResult<Vec<(&'static str, Table)>> {
    let set1 = TABLE1_A_MINUS
        .iter()
        .map(|&am| PotentialParams::new(1.0, am, TABLE1_A_PLUS))
        .collect::<Result<Vec<_>, _>>()?;
    let set2 = TABLE2_A_PLUS
        .iter()
        .map(|&ap| PotentialParams::new(1.0, TABLE2_A_MINUS, ap))
        .collect::<Result<Vec<_>, _>>()?;
    let head1 = || {
        std::iter::once("n".to_string())
            .chain(TABLE1_A_MINUS.iter().map(|a| format!("aminus={a}")))
            .collect::<Vec<_>>()
    };
    let head2 = || {
        std::iter::once("n".to_string())
            .chain(TABLE2_A_PLUS.iter().map(|a| format!("aplus={a}")))
            .collect::<Vec<_>>()
    };

    let tra = |p: &PotentialParams| -> CliResult<Vec<f64>> {
        let mut e = tra_spectrum(p)?.energies;
        // the closed-form column is shown over the same rows as the others
        e.truncate(tra_capacity(p.a_minus()));
        Ok(e)
    };
    let basis = LaguerreBasisConfig::new(DEFAULT_NU, DEFAULT_K)?;
    let lag = |count: usize| {
        move |p: &PotentialParams| -> CliResult<Vec<f64>> {
            Ok(laguerre_spectrum(p, &basis, count)?.energies)
        }
    };

    Ok(vec![
        (
            "table1.csv",
            column_table(head1(), &parallel_columns(&set1, tra)?),
        ),
        (
            "table2.csv",
            column_table(head2(), &parallel_columns(&set2, tra)?),
        ),
        (
            "table3.csv",
            column_table(head1(), &parallel_columns(&set1, lag(TABLE3_LEVELS))?),
        ),
        (
            "table4.csv",
            column_table(head2(), &parallel_columns(&set2, lag(TABLE4_LEVELS))?),
        ),
    ])
}

/// Writes `table1.csv`..`table4.csv` into `dir`, creating it if needed.
pub fn cmd_tables(dir: &Path) -> CliResult<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    build_tables()?
        .into_iter()
        .map(|(name, table)| {
            let path = dir.join(name);
            write_file(&path, &table.to_csv())?;
            Ok(path)
        })
        .collect()
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub const POTENTIAL_A_MINUS: [f64; 6] = [-4.0, 0.0, 4.0, 6.0, 8.0, 10.0];

/// `V(x)` traces over the grid, one column per `A-`.
pub fn cmd_potential(cfg: &RunConfig, a_minus: &[f64]) -> CliResult<Table> {
    cfg.validate()?;
    let params = a_minus
        .iter()
        .map(|&am| PotentialParams::new(cfg.lambda, am, cfg.a_plus))
        .collect::<Result<Vec<_>, _>>()?;
    let mut table =
        Table::new(std::iter::once("x".to_string()).chain(a_minus.iter().map(|a| format!("aminus={a}"))));
    table.rows = cfg
        .grid
        .values()
        .into_iter()
        .map(|x| {
            std::iter::once(Cell::Fixed(x))
                .chain(params.iter().map(|p| Cell::Fixed(p.potential(x))))
                .collect()
        })
        .collect();
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WavefunctionSidecar {
    pub params: PotentialParams,
    pub method: MethodChoice,
    pub energies: Vec<f64>,
    pub normalized: bool,
    pub x: Vec<f64>,
    pub potential: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionOutput {
    pub table: Table,
    pub states: Vec<WavefunctionGrid>,
    pub sidecar: WavefunctionSidecar,
}

/// Wavefunctions of states `0..states` sampled on the grid.
///
/// With `A+ > 0` the Bessel-basis series is evaluated at energies from the
/// configured method (`laguerre` by default, `tra` for the basis's own
/// eigenvalues). With `A+ = 0` the Morse eigenfunctions are used.
pub fn cmd_wavefunction(cfg: &RunConfig, states: usize, normalize: bool) -> CliResult<WavefunctionOutput> {
    cfg.validate()?;
    let p = cfg.params()?;
    let x = cfg.grid.values();

    let (method, mut grids) = if p.is_morse() {
        let available = morse_spectrum(p.lambda(), p.a_minus()).len();
        check_state_range(states, available)?;
        let grids = (0..states)
            .map(|n| morse_wavefunction(p.lambda(), p.a_minus(), n, &x))
            .collect::<Result<Vec<_>, _>>()?;
        (MethodChoice::Morse, grids)
    } else {
        let capacity = tra_capacity(p.a_minus());
        check_state_range(states, capacity)?;
        let (method, energies) = match cfg.method {
            MethodChoice::Tra => (MethodChoice::Tra, tra_spectrum(&p)?.energies),
            MethodChoice::Laguerre | MethodChoice::Both => (
                MethodChoice::Laguerre,
                laguerre_spectrum(&p, &cfg.basis()?, states.min(cfg.k))?.energies,
            ),
            MethodChoice::Morse => {
                return Err(CliError::Invalid(format!(
                    "--method morse needs --aplus 0, got {}",
                    cfg.a_plus
                )))
            }
        };
        if energies.len() < states {
            return Err(CliError::Invalid(format!(
                "only {} energies available for {} states",
                energies.len(),
                states
            )));
        }
        let grids = energies[..states]
            .iter()
            .map(|&e| tra_wavefunction_at_energy(&p, e, &x))
            .collect::<Result<Vec<_>, _>>()?;
        (method, grids)
    };
    if normalize {
        grids.iter_mut().for_each(|g| g.normalize_trapezoid(p.lambda()));
    }

    let mut table =
        Table::new(std::iter::once("x".to_string()).chain((0..states).map(|m| format!("psi{m}"))));
    table.rows = x
        .iter()
        .enumerate()
        .map(|(i, &xi)| {
            std::iter::once(Cell::Fixed(xi))
                .chain(grids.iter().map(|g| Cell::Sci(g.psi[i])))
                .collect()
        })
        .collect();

    let sidecar = WavefunctionSidecar {
        params: p,
        method,
        energies: grids.iter().map(|g| g.energy).collect(),
        normalized: grids.iter().all(|g| g.normalized),
        potential: x.iter().map(|&xi| p.potential(xi)).collect(),
        x,
    };
    Ok(WavefunctionOutput {
        table,
        states: grids,
        sidecar,
    })
}

fn check_state_range(states: usize, available: usize) -> CliResult<()> {
    if states == 0 || states > available {
        let range = if available == 0 {
            "none".to_string()
        } else {
            format!("0..={}", available - 1)
        };
        return Err(CliError::Invalid(format!(
            "requested states 0..{states}, but the valid state indices are {range}"
        )));
    }
    Ok(())
}

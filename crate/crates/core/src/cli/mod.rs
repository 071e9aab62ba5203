//! Command-line front end: tabulates kernels and transforms on grids, runs
//! round trips and the identity suite, and writes CSV or JSON.
//!
//! Every subcommand produces a [`Table`]. CSV output has a header row and
//! one line per grid point; JSON output is
//! `{"command", "ok", "columns", "rows": [{column: value}]}`. Floats carry
//! 17 significant digits; non-finite values are `NaN`/`inf` in CSV and
//! `null` in JSON. Rows are computed in parallel but always written in grid
//! order, so repeated runs give identical bytes.
//!
//! Exit status: 0 when every row converged (and passed, for `roundtrip` and
//! `verify`), 1 when some row failed numerically, 2 for usage or input
//! errors.

mod input;
mod table;

pub use input::{parse_grid, parse_sequence, read_sequence_file, Builtin, FunctionSource, Spacing};
pub use table::{format_float, write_json_value, Cell, Table};

use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::identities::{run_suite, GridSpec, IdentityId};
use crate::kernels::{default_kernel_tolerance, forward_kernel, inverse_kernel, TransformKind};
use crate::quad::{QuadratureResult, Tolerance};
use crate::transforms::{
    analyze, closed_form_coefficient, default_tolerance, invert_to_function, invert_to_sequence,
    synthesize, synthesized_function, CoefficientSequence, TrigPolynomial,
};

/// Environment variable holding the number of worker threads.
pub const THREADS_ENV: &str = "INDEX_TRANSFORMS_THREADS";

/// Tolerance used by `roundtrip` and `invert-seq` unless overridden.
pub const ROUNDTRIP_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "index-transforms",
    version,
    about = "Discrete index transforms with Bessel kernels of imaginary order"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; `verify` defaults to json, everything else to csv.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,

    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,

    #[arg(long, global = true)]
    pub max_evals: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the forward kernel (or with --inverse the inversion kernel).
    Kernel {
        #[arg(long)]
        kind: TransformKind,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Synthesize f(x) from a coefficient sequence.
    Synth {
        #[arg(long)]
        kind: TransformKind,
        #[command(flatten)]
        seq: SequenceArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Transform coefficients a_n of a function.
    Coeffs {
        #[arg(long)]
        kind: TransformKind,
        #[command(flatten)]
        function: FunctionArgs,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Recover a_n from a function with the inversion formula.
    InvertSeq {
        #[arg(long)]
        kind: TransformKind,
        #[command(flatten)]
        function: FunctionArgs,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Rebuild f(x) from a sequence with the inversion kernels.
    InvertFunc {
        #[arg(long)]
        kind: TransformKind,
        #[command(flatten)]
        seq: SequenceArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Synthesize a sequence, invert it again and compare.
    Roundtrip {
        #[arg(long)]
        kind: TransformKind,
        #[command(flatten)]
        seq: SequenceArgs,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Run the identity checks.
    Verify {
        /// Comma-separated identity tags; all when omitted.
        #[arg(long, value_delimiter = ',')]
        ids: Vec<IdentityId>,
        /// Grid points per parameter axis (3 to 5).
        #[arg(long, default_value_t = 3)]
        per_axis: usize,
        /// Wall-clock budget in seconds.
        #[arg(long, default_value_t = 300)]
        budget_secs: u64,
    },
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// `min:max:points`, a comma list, or one value.
    #[arg(long)]
    pub grid: String,
    #[arg(long, value_enum, default_value = "linear")]
    pub spacing: Spacing,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SeqSource {
    /// Comma-separated values.
    #[arg(long)]
    pub seq: Option<String>,
    /// One value per line, or JSON `{"start": k, "values": [...]}`.
    #[arg(long)]
    pub seq_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SequenceArgs {
    #[command(flatten)]
    pub source: SeqSource,
    /// Index of the first value; defaults to 0 for re-jk and 1 otherwise.
    /// Ignored for JSON files, which carry their own start.
    #[arg(long)]
    pub seq_start: Option<i64>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct FunctionArgs {
    /// Trigonometric density, e.g. `sin:1:1+sin:3:0.5`.
    #[arg(long)]
    pub psi: Option<String>,
    #[arg(long, value_enum)]
    pub builtin: Option<Builtin>,
    /// Function synthesized from these comma-separated coefficients.
    #[arg(long = "from-seq")]
    pub from_seq: Option<String>,
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    #[arg(long, default_value_t = 1)]
    pub n_min: i64,
    #[arg(long, default_value_t = 8)]
    pub n_max: i64,
}

impl RangeArgs {
    fn indices(&self) -> Result<Vec<i64>> {
        if self.n_min < 0 || self.n_max < self.n_min || self.n_max - self.n_min >= 10_000 {
            return Err(Error::Parse(format!(
                "index range {}..={} must satisfy 0 <= n-min <= n-max < n-min + 10000",
                self.n_min, self.n_max
            )));
        }
        Ok((self.n_min..=self.n_max).collect())
    }
}

impl SequenceArgs {
    fn load(&self, kind: TransformKind) -> Result<CoefficientSequence> {
        let start = self.seq_start.unwrap_or(kind.synthesis_start());
        match (&self.source.seq, &self.source.seq_file) {
            (Some(text), _) => parse_sequence(text, start),
            (None, Some(path)) => read_sequence_file(path, start),
            (None, None) => Err(Error::Parse("a sequence is required".into())),
        }
    }
}

impl FunctionArgs {
    fn source(&self, kind: TransformKind) -> Result<FunctionSource> {
        if let Some(p) = &self.psi {
            return Ok(FunctionSource::Psi(TrigPolynomial::parse(p)?));
        }
        if let Some(b) = self.builtin {
            return Ok(FunctionSource::Builtin(b));
        }
        if let Some(s) = &self.from_seq {
            return Ok(FunctionSource::Synthesized(parse_sequence(
                s,
                kind.synthesis_start(),
            )?));
        }
        Err(Error::Parse("a function source is required".into()))
    }
}

impl Cli {
    fn tolerance(&self, default: Tolerance) -> Result<Tolerance> {
        Tolerance::new(
            self.abs_tol.unwrap_or(default.abs_tol()),
            self.rel_tol.unwrap_or(default.rel_tol()),
            self.max_evals.unwrap_or(default.max_evals()),
        )
    }

    fn format(&self) -> Format {
        self.format.unwrap_or(match self.command {
            Command::Verify { .. } => Format::Json,
            _ => Format::Csv,
        })
    }
}

fn status(e: Option<&Error>) -> Cell {
    Cell::Text(e.map_or_else(|| "ok".to_string(), ToString::to_string))
}

fn quad_row(key: Cell, r: &Result<QuadratureResult>) -> (Vec<Cell>, bool) {
    match r {
        Ok(q) => (
            vec![
                key,
                q.value.into(),
                q.error_estimate.into(),
                q.evaluations.into(),
                q.converged.into(),
                status(None),
            ],
            q.converged,
        ),
        Err(e) => (
            vec![
                key,
                f64::NAN.into(),
                Cell::Empty,
                Cell::Empty,
                false.into(),
                status(Some(e)),
            ],
            false,
        ),
    }
}

fn collect(table: &mut Table, rows: Vec<(Vec<Cell>, bool)>) {
    for (row, ok) in rows {
        table.ok &= ok;
        table.push(row);
    }
}

const QUAD_COLUMNS: [&str; 5] = [
    "value",
    "error_estimate",
    "evaluations",
    "converged",
    "status",
];

fn columns(key: &'static str) -> Vec<&'static str> {
    let mut c = vec![key];
    c.extend(QUAD_COLUMNS);
    c
}

/// Runs the subcommand and returns its table. Input errors come back as
/// `Err`; numeric failures are rows with a non-`ok` status.
pub fn run(cli: &Cli) -> Result<Table> {
    match &cli.command {
        Command::Kernel {
            kind,
            n,
            inverse,
            grid,
        } => {
            let xs = parse_grid(&grid.grid, grid.spacing)?;
            let tol = cli.tolerance(default_kernel_tolerance())?;
            let mut table = Table::new("kernel", &columns("x"));
            let rows = xs
                .par_iter()
                .map(|&x| {
                    let r = if *inverse {
                        inverse_kernel(*kind, *n, x, &tol)
                    } else {
                        forward_kernel(*kind, *n, x).map(|v| QuadratureResult {
                            value: v,
                            ..QuadratureResult::exact_zero()
                        })
                    };
                    quad_row(x.into(), &r)
                })
                .collect();
            collect(&mut table, rows);
            Ok(table)
        }
        Command::Synth { kind, seq, grid } => {
            let xs = parse_grid(&grid.grid, grid.spacing)?;
            let a = seq.load(*kind)?;
            a.check_kind(*kind)?;
            let mut table = Table::new("synth", &["x", "value", "status"]);
            let rows = xs
                .par_iter()
                .map(|&x| match synthesize(*kind, &a, x) {
                    Ok(v) => (vec![x.into(), v.into(), status(None)], true),
                    Err(e) => (vec![x.into(), f64::NAN.into(), status(Some(&e))], false),
                })
                .collect();
            collect(&mut table, rows);
            Ok(table)
        }
        Command::Coeffs {
            kind,
            function,
            range,
        } => {
            let source = function.source(*kind)?;
            let f = source.function(*kind)?;
            let ns = range.indices()?;
            let tol = cli.tolerance(default_tolerance())?;
            let mut cols = columns("n");
            cols.insert(5, "closed_form");
            let mut table = Table::new("coeffs", &cols);
            let rows = ns
                .par_iter()
                .map(|&n| {
                    let (mut row, ok) = quad_row(n.into(), &analyze(*kind, &f, n, &tol));
                    let closed = match &source {
                        FunctionSource::Psi(p) => closed_form_coefficient(*kind, p, n),
                        _ => None,
                    };
                    row.insert(5, closed.into());
                    (row, ok)
                })
                .collect();
            collect(&mut table, rows);
            Ok(table)
        }
        Command::InvertSeq {
            kind,
            function,
            range,
        } => {
            let f = function.source(*kind)?.function(*kind)?;
            let ns = range.indices()?;
            let tol = cli.tolerance(roundtrip_tolerance())?;
            let mut cols = columns("n");
            cols.insert(5, "amplification");
            let mut table = Table::new("invert-seq", &cols);
            let rows = ns
                .par_iter()
                .map(|&n| {
                    let (mut row, ok) = quad_row(n.into(), &invert_to_sequence(*kind, &f, n, &tol));
                    row.insert(5, amplification(*kind, n).into());
                    (row, ok)
                })
                .collect();
            collect(&mut table, rows);
            Ok(table)
        }
        Command::InvertFunc { kind, seq, grid } => {
            let xs = parse_grid(&grid.grid, grid.spacing)?;
            let a = seq.load(*kind)?;
            a.check_kind(*kind)?;
            let tol = cli.tolerance(default_tolerance())?;
            let mut table = Table::new("invert-func", &columns("x"));
            let rows = xs
                .par_iter()
                .map(|&x| quad_row(x.into(), &invert_to_function(*kind, &a, x, &tol)))
                .collect();
            collect(&mut table, rows);
            Ok(table)
        }
        Command::Roundtrip { kind, seq, range } => {
            let a = seq.load(*kind)?;
            let tol = cli.tolerance(roundtrip_tolerance())?;
            roundtrip(*kind, &a, &range.indices()?, &tol)
        }
        Command::Verify {
            ids,
            per_axis,
            budget_secs,
        } => {
            let grid = GridSpec::new(*per_axis, Duration::from_secs(*budget_secs))?;
            verify_table(ids, &grid)
        }
    }
}

/// Factor `c · sinh(πn)` applied to the inversion integral.
fn amplification(kind: TransformKind, n: i64) -> f64 {
    kind.inversion_constant() * (PI * n as f64).sinh()
}

fn roundtrip_tolerance() -> Tolerance {
    Tolerance::new(
        ROUNDTRIP_TOL,
        ROUNDTRIP_TOL,
        default_tolerance().max_evals(),
    )
    .expect("valid constant tolerance")
}

/// Synthesizes `a`, inverts at every `n` and compares. A row passes when the
/// inversion succeeded and `|â_n − a_n| <= tol.target(a_n)`.
pub fn roundtrip(
    kind: TransformKind,
    a: &CoefficientSequence,
    ns: &[i64],
    tol: &Tolerance,
) -> Result<Table> {
    a.check_kind(kind)?;
    if a.get(0) != 0.0 {
        return Err(Error::InvalidSequence(
            "a_0 cannot be recovered by the inversion formula; round trips need a_0 = 0".into(),
        ));
    }
    if let Some(&n) = ns.iter().find(|&&n| n < 1) {
        return Err(Error::IndexOutOfRange { kind, n });
    }
    let f = synthesized_function(kind, a)?;
    let mut table = Table::new(
        "roundtrip",
        &[
            "n",
            "a_in",
            "a_recovered",
            "abs_err",
            "quad_err_estimate",
            "amplification",
            "pass",
            "status",
        ],
    );
    let rows = ns
        .par_iter()
        .map(|&n| {
            let a_in = a.get(n);
            match invert_to_sequence(kind, &f, n, tol) {
                Ok(q) => {
                    let err = (q.value - a_in).abs();
                    let pass = q.converged && err <= tol.target(a_in);
                    let row = vec![
                        n.into(),
                        a_in.into(),
                        q.value.into(),
                        err.into(),
                        q.error_estimate.into(),
                        amplification(kind, n).into(),
                        pass.into(),
                        status(None),
                    ];
                    (row, pass)
                }
                Err(e) => {
                    let row = vec![
                        n.into(),
                        a_in.into(),
                        f64::NAN.into(),
                        f64::NAN.into(),
                        Cell::Empty,
                        amplification(kind, n).into(),
                        false.into(),
                        status(Some(&e)),
                    ];
                    (row, false)
                }
            }
        })
        .collect();
    collect(&mut table, rows);
    Ok(table)
}

fn verify_table(ids: &[IdentityId], grid: &GridSpec) -> Result<Table> {
    let filter = (!ids.is_empty()).then_some(ids);
    let suite = run_suite(filter, grid)?;
    let mut table = Table::new(
        "verify",
        &[
            "id",
            "n",
            "tau",
            "u",
            "x",
            "t",
            "big_n",
            "gamma",
            "constant",
            "lhs",
            "rhs",
            "lhs_imag",
            "abs_residual",
            "rel_residual",
            "converged",
            "pass",
            "tolerance_used",
            "evaluations",
            "diagnostic",
        ],
    );
    for r in &suite.reports {
        let p = r.params;
        table.push(vec![
            r.id.tag().into(),
            p.n.into(),
            p.tau.into(),
            p.u.into(),
            p.x.into(),
            p.t.into(),
            p.big_n.into(),
            p.gamma.into(),
            p.constant.into(),
            r.lhs.into(),
            r.rhs.into(),
            r.lhs_imag.into(),
            r.abs_residual.into(),
            r.rel_residual.into(),
            r.converged.into(),
            r.pass.into(),
            r.tolerance_used.into(),
            r.evaluations.into(),
            r.diagnostic.clone().into(),
        ]);
    }
    table.ok = suite.all_passed();
    Ok(table)
}

/// Writes `table` in `format` to `out`.
pub fn write_table<W: Write>(table: &Table, format: Format, out: W) -> io::Result<()> {
    match format {
        Format::Csv => table.write_csv(out),
        Format::Json => table.write_json(out),
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        // A pool that already exists keeps its size.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

/// Parses `args`, runs the command, writes the output and returns the exit
/// status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    configure_threads();
    let table = match run(&cli) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let written = match &cli.output {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            write_table(&table, cli.format(), &mut w)?;
            w.flush()
        }),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_table(&table, cli.format(), &mut lock).and_then(|_| lock.flush())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return 2;
    }
    if table.ok {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("index-transforms").chain(args.iter().copied()))
            .unwrap()
    }

    #[test]
    fn zero_index_inverse_kernel_rows() {
        let t = run(&parse(&[
            "kernel",
            "--kind",
            "re-jk",
            "--inverse",
            "--n",
            "0",
            "--grid",
            "1:10:5",
        ]))
        .unwrap();
        assert!(t.ok);
        assert_eq!(t.rows.len(), 5);
        for row in &t.rows {
            assert_eq!(row[1], Cell::Float(0.0));
        }
    }

    #[test]
    fn usage_errors() {
        let base = ["index-transforms", "synth", "--kind", "re-i", "--grid", "1"];
        assert!(Cli::try_parse_from(base).is_err());
        assert!(Cli::try_parse_from([
            "index-transforms",
            "kernel",
            "--kind",
            "re-k",
            "--n",
            "1",
            "--grid",
            "1"
        ])
        .is_err());
        let bad_grid = parse(&["synth", "--kind", "re-i", "--seq", "1", "--grid", "0:1:3"]);
        assert!(run(&bad_grid).is_err());
    }

    #[test]
    fn numeric_failures_are_rows() {
        let t = run(&parse(&[
            "kernel", "--kind", "im-jk", "--n", "0", "--grid", "1,2",
        ]))
        .unwrap();
        assert!(!t.ok);
        assert!(matches!(&t.rows[0][5], Cell::Text(s) if s.contains("not admissible")));
    }

    #[test]
    fn roundtrip_rejects_nonzero_a0() {
        let cli = parse(&["roundtrip", "--kind", "re-jk", "--seq", "1,1"]);
        assert!(run(&cli).is_err());
    }

    #[test]
    fn format_defaults() {
        assert_eq!(parse(&["verify"]).format(), Format::Json);
        assert_eq!(
            parse(&["synth", "--kind", "re-i", "--seq", "1", "--grid", "1"]).format(),
            Format::Csv
        );
        assert_eq!(parse(&["verify", "--format", "csv"]).format(), Format::Csv);
    }
}

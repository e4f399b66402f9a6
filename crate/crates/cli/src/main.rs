//! `gtcalc`: command-line access to patterns, binary words, invariants and coupling coefficients.

mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gt_core::bfr::{complement, enumerate_bfr, phi_monomial, BinaryWord};
use gt_core::coupling::{
    coupled_irreps, su2_3j, su3_isospin_labels, su3_states, IsoscalarQuery, Su2Triple, Su3Coupling, TY,
};
use gt_core::gt::{conjugate, dimension, enumerate_patterns, phase, validate};
use gt_core::invariants::{
    canonical_table, count_invariants, enumerate_compositions, gelfand_from_k, solve_k_su3,
};
use gt_core::{Error, GtPattern, Half, IrrepLabel, Mode, Su3State};
use output::{Format, Record, RowWriter, Value};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "gtcalc", version, about = "Exact Gel'fand-Tsetlin, invariant and SU(2)/SU(3) coupling calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gel'fand-Tsetlin patterns written as "2,1,0;2,1;1".
    #[command(subcommand)]
    Pattern(PatternCmd),
    /// Binary words of fundamental representations.
    #[command(subcommand)]
    Bfr(BfrCmd),
    /// Elementary invariants of triple products.
    #[command(subcommand)]
    Invariants(InvariantsCmd),
    /// SU(2) coupling coefficients.
    #[command(subcommand)]
    Su2(Su2Cmd),
    /// SU(3) isoscalar factors and Wigner symbols for (l1,0) x (l2,m2) -> (l3,m3).
    #[command(subcommand)]
    Su3(Su3Cmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Un,
    Sun,
}

#[derive(Subcommand)]
enum PatternCmd {
    /// Check betweenness; exits 1 and lists violations when invalid.
    Validate {
        pattern: GtPattern,
        #[arg(long, value_enum, default_value = "un")]
        mode: ModeArg,
    },
    /// Conjugate pattern h^c_{i,j} = h_{1,n} - h_{j-i+1,j}.
    Conjugate { pattern: GtPattern },
    /// Phase exponent: sum of entries minus h_{1,n}.
    Phase { pattern: GtPattern },
    /// All patterns of a top row such as "2,1,0", lexicographically descending.
    Enumerate {
        label: IrrepLabel,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Dimension of the irrep with the given top row.
    Dim { label: IrrepLabel },
}

#[derive(Subcommand)]
enum BfrCmd {
    /// Words of length n and weight m.
    List {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Parameter monomial of a word.
    Phi { word: BinaryWord },
    /// Bitwise complement of a word.
    Complement { word: BinaryWord },
}

#[derive(Subcommand)]
enum InvariantsCmd {
    /// Number of elementary invariants (n-1)(n+4)/2.
    Count {
        #[arg(long)]
        n: usize,
    },
    /// Canonical tables, one per occupancy composition.
    List {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Exponent vectors k and invariant pattern indices for SU(3) couplings.
    Ktable {
        #[command(flatten)]
        reps: Reps,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum Su2Cmd {
    /// 3j symbol (j1 j2 j3; m1 m2 m3); labels like "1/2" or "-1".
    Threej {
        #[arg(long, num_args = 3, allow_hyphen_values = true, required = true)]
        j: Vec<Half>,
        #[arg(long, num_args = 3, allow_hyphen_values = true, required = true)]
        m: Vec<Half>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

#[derive(Args)]
struct Reps {
    /// First irrep (l1 0).
    #[arg(long, num_args = 2, required = true)]
    rep1: Vec<u32>,
    /// Second irrep (l2 m2).
    #[arg(long, num_args = 2, required = true)]
    rep2: Vec<u32>,
    /// Coupled irrep (l3 m3); all allowed irreps when omitted in table commands.
    #[arg(long, num_args = 2)]
    rep3: Option<Vec<u32>>,
}

impl Reps {
    fn pair(v: &[u32]) -> (u32, u32) {
        (v[0], v[1])
    }

    fn rep1(&self) -> (u32, u32) {
        Self::pair(&self.rep1)
    }

    fn rep2(&self) -> (u32, u32) {
        Self::pair(&self.rep2)
    }

    fn rep3(&self) -> Option<(u32, u32)> {
        self.rep3.as_deref().map(Self::pair)
    }

    fn required_rep3(&self) -> Result<(u32, u32), Error> {
        self.rep3()
            .ok_or_else(|| Error::Domain("--rep3 is required for single coefficients".into()))
    }

    fn coupled(&self) -> Vec<(u32, u32)> {
        match self.rep3() {
            Some(r) => vec![r],
            None => coupled_irreps(self.rep1(), self.rep2()),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Isoscalar,
    Wigner,
}

#[derive(Subcommand)]
enum Su3Cmd {
    /// Unitary isoscalar factor; give --state T Y three times (y = 3Y).
    Isoscalar {
        #[command(flatten)]
        reps: Reps,
        #[arg(long, num_args = 2, allow_hyphen_values = true, required = true)]
        state: Vec<String>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Wigner symbol; give --state T TZ Y three times (y = 3Y).
    Wigner {
        #[command(flatten)]
        reps: Reps,
        #[arg(long, num_args = 3, allow_hyphen_values = true, required = true)]
        state: Vec<String>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// All nonzero coefficients of a coupling, streamed in deterministic order.
    Table {
        #[command(flatten)]
        reps: Reps,
        #[arg(long, value_enum, default_value = "isoscalar")]
        kind: TableKind,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Worker threads; output order does not depend on it.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Domain(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout().lock();
    match run(cli.command, stdout) {
        Ok(code) => code,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command, mut out: impl Write) -> Outcome {
    match cmd {
        Command::Pattern(c) => pattern(c, out),
        Command::Bfr(c) => bfr(c, out),
        Command::Invariants(c) => invariants(c, out),
        Command::Su2(Su2Cmd::Threej { j, m, format }) => {
            let t = Su2Triple::new([j[0], j[1], j[2]], [m[0], m[1], m[2]])?;
            let v = su2_3j(&t);
            single(&mut out, format, &t, &v)
        }
        Command::Su3(c) => su3(c, out),
    }
}

fn single<Q: Serialize>(out: &mut impl Write, format: Format, query: &Q, v: &gt_core::SqrtRational) -> Outcome {
    match format {
        Format::Json => {
            let rec = Record {
                query,
                value: Value::new(v),
            };
            writeln!(out, "{}", serde_json::to_string(&rec).map_err(io::Error::other)?)?;
        }
        Format::Table | Format::Csv => writeln!(out, "{}", v.to_compact_string())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn pattern(cmd: PatternCmd, mut out: impl Write) -> Outcome {
    match cmd {
        PatternCmd::Validate { pattern, mode } => {
            let mode = match mode {
                ModeArg::Un => Mode::Un,
                ModeArg::Sun => Mode::Sun,
            };
            let v = validate(&pattern, mode);
            if v.is_empty() {
                writeln!(out, "valid")?;
                return Ok(ExitCode::SUCCESS);
            }
            writeln!(out, "invalid")?;
            for x in v {
                writeln!(out, "violation at {x}")?;
            }
            Ok(ExitCode::from(1))
        }
        PatternCmd::Conjugate { pattern } => {
            writeln!(out, "{}", conjugate(&pattern)?)?;
            Ok(ExitCode::SUCCESS)
        }
        PatternCmd::Phase { pattern } => {
            writeln!(out, "{}", phase(&pattern))?;
            Ok(ExitCode::SUCCESS)
        }
        PatternCmd::Enumerate { label, format } => {
            let mut w = RowWriter::new(out, format, vec![])?;
            for p in enumerate_patterns(&label) {
                w.row(&[p.to_string()], &p)?;
            }
            w.finish()?;
            Ok(ExitCode::SUCCESS)
        }
        PatternCmd::Dim { label } => {
            writeln!(out, "{}", dimension(&label))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn bfr(cmd: BfrCmd, mut out: impl Write) -> Outcome {
    match cmd {
        BfrCmd::List { n, m, format } => {
            let mut w = RowWriter::new(out, format, vec![])?;
            for word in enumerate_bfr(n, m)? {
                w.row(&[word.to_string()], &word)?;
            }
            w.finish()?;
        }
        BfrCmd::Phi { word } => writeln!(out, "{}", phi_monomial(&word))?,
        BfrCmd::Complement { word } => writeln!(out, "{}", complement(&word))?,
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TableRecord {
    alphas: [usize; 3],
    word: String,
}

#[derive(Serialize)]
struct KRecord {
    rep1: (u32, u32),
    rep2: (u32, u32),
    rep3: (u32, u32),
    k: [u32; 7],
    total: u32,
    gelfand: [i64; 7],
}

fn invariants(cmd: InvariantsCmd, mut out: impl Write) -> Outcome {
    match cmd {
        InvariantsCmd::Count { n } => writeln!(out, "{}", count_invariants(n)?)?,
        InvariantsCmd::List { n, format } => {
            let header = if format == Format::Csv { vec!["alphas", "word"] } else { vec![] };
            let mut w = RowWriter::new(out, format, header)?;
            for c in enumerate_compositions(n)? {
                let t = canonical_table(&c);
                let a = c.alphas();
                let cells = if format == Format::Csv {
                    vec![format!("{} {} {}", a[0], a[1], a[2]), t.to_string()]
                } else {
                    vec![t.to_string()]
                };
                w.row(&cells, &TableRecord { alphas: a, word: t.to_string() })?;
            }
            w.finish()?;
        }
        InvariantsCmd::Ktable { reps, format } => {
            let (r1, r2) = (reps.rep1(), reps.rep2());
            let header = vec!["rep3", "k", "P", "h13,h24,h34,h23,h33,h12,h22"];
            let mut w = RowWriter::new(out, format, header)?;
            for r3 in reps.coupled() {
                for k in solve_k_su3(r1.0, r1.1, r2.0, r2.1, r3.0, r3.1) {
                    let g = gelfand_from_k(&k);
                    let gelfand = [g.h13, g.h24, g.h34, g.h23, g.h33, g.h12, g.h22];
                    let cells = vec![
                        format!("({},{})", r3.0, r3.1),
                        k.to_string(),
                        k.total().to_string(),
                        gelfand.map(|x| x.to_string()).join(","),
                    ];
                    let rec = KRecord {
                        rep1: r1,
                        rep2: r2,
                        rep3: r3,
                        k: k.as_array(),
                        total: k.total(),
                        gelfand,
                    };
                    w.row(&cells, &rec)?;
                }
            }
            w.finish()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_half(s: &str) -> Result<Half, Error> {
    s.parse()
}

fn parse_y(s: &str) -> Result<i64, Error> {
    s.parse()
        .map_err(|_| Error::Parse(format!("y must be an integer (3Y), got '{s}'")))
}

fn ty_states(v: &[String]) -> Result<[TY; 3], Error> {
    if v.len() != 6 {
        return Err(Error::Parse("give --state T Y exactly three times".into()));
    }
    let mut out = [TY { t: Half::ZERO, y: 0 }; 3];
    for (k, c) in v.chunks(2).enumerate() {
        out[k] = TY {
            t: parse_half(&c[0])?,
            y: parse_y(&c[1])?,
        };
    }
    Ok(out)
}

fn full_states(v: &[String], reps: [(u32, u32); 3]) -> Result<[Su3State; 3], Error> {
    if v.len() != 9 {
        return Err(Error::Parse("give --state T TZ Y exactly three times".into()));
    }
    let mut out = Vec::with_capacity(3);
    for (k, c) in v.chunks(3).enumerate() {
        out.push(Su3State::new(
            reps[k].0,
            reps[k].1,
            parse_half(&c[0])?,
            parse_half(&c[1])?,
            parse_y(&c[2])?,
        )?);
    }
    Ok([out[0], out[1], out[2]])
}

#[derive(Serialize)]
struct WignerQuery {
    rep1: (u32, u32),
    rep2: (u32, u32),
    rep3: (u32, u32),
    states: [Su3State; 3],
}

fn su3(cmd: Su3Cmd, mut out: impl Write) -> Outcome {
    match cmd {
        Su3Cmd::Isoscalar { reps, state, format } => {
            let q = IsoscalarQuery {
                rep1: reps.rep1(),
                rep2: reps.rep2(),
                rep3: reps.required_rep3()?,
                states: ty_states(&state)?,
            };
            let v = gt_core::coupling::isoscalar(&q)?;
            single(&mut out, format, &q, &v)
        }
        Su3Cmd::Wigner { reps, state, format } => {
            let r = [reps.rep1(), reps.rep2(), reps.required_rep3()?];
            let states = full_states(&state, r)?;
            let q = IsoscalarQuery {
                rep1: r[0],
                rep2: r[1],
                rep3: r[2],
                states: states.map(|s| TY::of(&s)),
            };
            let v = gt_core::coupling::wigner_su3(&q, states.map(|s| s.tz))?;
            let echo = WignerQuery {
                rep1: r[0],
                rep2: r[1],
                rep3: r[2],
                states,
            };
            single(&mut out, format, &echo, &v)
        }
        Su3Cmd::Table {
            reps,
            kind,
            format,
            jobs,
        } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
            table(&reps, kind, format, &pool, out)
        }
    }
}

#[derive(Serialize)]
struct IsoRow<'a> {
    rep1: (u32, u32),
    rep2: (u32, u32),
    rep3: (u32, u32),
    states: [TY; 3],
    value: Value<'a>,
}

#[derive(Serialize)]
struct WignerRow<'a> {
    rep1: (u32, u32),
    rep2: (u32, u32),
    rep3: (u32, u32),
    states: [Su3State; 3],
    value: Value<'a>,
}

fn table(reps: &Reps, kind: TableKind, format: Format, pool: &rayon::ThreadPool, out: impl Write) -> Outcome {
    let chunk_len = 4 * pool.current_num_threads();
    let (r1, r2) = (reps.rep1(), reps.rep2());
    let rep = |r: (u32, u32)| format!("({},{})", r.0, r.1);
    match kind {
        TableKind::Isoscalar => {
            let header = vec!["rep3", "t1", "y1", "t2", "y2", "t3", "y3", "exact", "decimal"];
            let mut w = RowWriter::new(out, format, header)?;
            for r3 in reps.coupled() {
                let c = Su3Coupling::new(r1, r2, r3)?;
                let labels = su3_isospin_labels(r3.0, r3.1);
                for chunk in labels.chunks(chunk_len) {
                    let rows: Vec<_> = pool.install(|| {
                        chunk
                            .par_iter()
                            .map(|&third| c.isoscalar_rows(third))
                            .collect::<Result<_, _>>()
                    })?;
                    for e in rows.iter().flatten() {
                        let [a, b, d] = e.states;
                        let value = Value::new(&e.value);
                        let cells = vec![
                            rep(r3),
                            a.t.to_string(),
                            a.y.to_string(),
                            b.t.to_string(),
                            b.y.to_string(),
                            d.t.to_string(),
                            d.y.to_string(),
                            value.exact.clone(),
                            value.decimal.clone(),
                        ];
                        let rec = IsoRow {
                            rep1: r1,
                            rep2: r2,
                            rep3: r3,
                            states: e.states,
                            value,
                        };
                        w.row(&cells, &rec)?;
                    }
                }
            }
            w.finish()?;
        }
        TableKind::Wigner => {
            let header = vec![
                "rep3", "t1", "tz1", "y1", "t2", "tz2", "y2", "t3", "tz3", "y3", "exact", "decimal",
            ];
            let mut w = RowWriter::new(out, format, header)?;
            for r3 in reps.coupled() {
                let c = Su3Coupling::new(r1, r2, r3)?;
                let thirds = su3_states(r3.0, r3.1);
                for chunk in thirds.chunks(chunk_len) {
                    let rows: Vec<_> = pool.install(|| {
                        chunk
                            .par_iter()
                            .map(|third| c.wigner_rows(third))
                            .collect::<Result<_, _>>()
                    })?;
                    for e in rows.iter().flatten() {
                        let value = Value::new(&e.value);
                        let mut cells = vec![rep(r3)];
                        for s in &e.states {
                            cells.extend([s.t.to_string(), s.tz.to_string(), s.y.to_string()]);
                        }
                        cells.extend([value.exact.clone(), value.decimal.clone()]);
                        let rec = WignerRow {
                            rep1: r1,
                            rep2: r2,
                            rep3: r3,
                            states: e.states,
                            value,
                        };
                        w.row(&cells, &rec)?;
                    }
                }
            }
            w.finish()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

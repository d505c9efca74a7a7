//! Command implementations and output formatting for the `dnaswap` binary.
//!
//! Every command renders to an [`Outcome`] holding its output and exit code,
//! so it can be tested without spawning a process.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dnaswap::encodings::{recognize_partners, wc_initial_state, Base, BaseCode, EdgePattern};
use dnaswap::metrics::{verify_against_reference, VerificationReport};
use dnaswap::protocol::{
    assemble_pair, canonical_table, run_pair, sample, CanonicalRow, Entangler,
};
use dnaswap::reference::{reference, reference_json};
use dnaswap::{ConfigF64, EnsembleF64, StateVectorF64, C64};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "dnaswap",
    version,
    about = "Base pairing as entanglement swapping: exact simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the swap protocol for a base pair.
    Run(RunArgs),
    /// Check computed ensembles against the embedded published data.
    Verify(VerifyArgs),
    /// Print the register at one stage of the pipeline.
    Inspect(InspectArgs),
    /// List the bases a Hoogsteen-edge pattern would pair with.
    Recognize(RecognizeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairArg {
    #[value(name = "AT")]
    At,
    #[value(name = "GC")]
    Gc,
}

impl PairArg {
    pub fn bases(self) -> (BaseCode, BaseCode) {
        match self {
            PairArg::At => (Base::A.into(), Base::T.into()),
            PairArg::Gc => (Base::G.into(), Base::C.into()),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PairArg::At => "AT",
            PairArg::Gc => "GC",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Sample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EntanglerArg {
    Equality,
    Identity,
}

impl From<EntanglerArg> for Entangler {
    fn from(e: EntanglerArg) -> Self {
        match e {
            EntanglerArg::Equality => Entangler::Equality,
            EntanglerArg::Identity => Entangler::Identity,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StageArg {
    #[value(name = "I")]
    I,
    #[value(name = "Q")]
    Q,
    #[value(name = "O")]
    O,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub pair: PairArg,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: Mode,
    /// Number of sampled trajectories (sample mode only).
    #[arg(long)]
    pub shots: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Gate used in step 1 (identity gives a deliberately broken model).
    #[arg(long, value_enum, default_value = "equality")]
    pub entangler: EntanglerArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// Print the embedded reference data and exit.
    #[arg(long)]
    pub dump_reference: bool,
    #[arg(long, value_enum, default_value = "equality")]
    pub entangler: EntanglerArg,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    #[arg(long, value_enum)]
    pub pair: PairArg,
    #[arg(long, value_enum, ignore_case = true)]
    pub stage: StageArg,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct RecognizeArgs {
    /// Two-bit Hoogsteen-edge pattern of the template base, e.g. 01.
    #[arg(long)]
    pub pattern: String,
    /// Include rare tautomers among the candidates.
    #[arg(long)]
    pub tautomers: bool,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

/// Rendered output of a command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Inspect(a) => cmd_inspect(a),
        Command::Recognize(a) => cmd_recognize(a),
    }
}

/// Rounds to 15 significant digits; `-0` becomes `0`.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Shortest round-trip rendering of [`round15`].
pub fn fmt_num(x: f64) -> String {
    format!("{}", round15(x))
}

fn num(x: f64) -> Value {
    json!(round15(x))
}

/// Canonical JSON text: sorted keys, two-space indent, trailing newline.
pub fn to_canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn config(entangler: EntanglerArg) -> ConfigF64 {
    ConfigF64 {
        entangler: entangler.into(),
        ..ConfigF64::default()
    }
}

fn ensemble_for(pair: PairArg, entangler: EntanglerArg) -> dnaswap::Result<EnsembleF64> {
    let (t, i) = pair.bases();
    run_pair(t, i, &config(entangler))
}

pub fn ensemble_json(pair: &str, e: &EnsembleF64) -> Value {
    let branches: Vec<Value> = e
        .branches
        .iter()
        .map(|b| {
            let (a, bb) = b.third_pair;
            json!({
                "bell_12": b.final_bell_12().code(),
                "bell_34": b.final_bell_34().code(),
                "corrections": b.corrections.labels(),
                "probability": num(b.probability),
                "third_pair": {
                    "a_re": num(a.re),
                    "a_im": num(a.im),
                    "b_re": num(bb.re),
                    "b_im": num(bb.im),
                },
            })
        })
        .collect();
    json!({
        "pair": pair,
        "mode": "exact",
        "branches": branches,
        "dropped_mass": num(e.dropped_mass),
    })
}

fn fmt_amp(z: C64) -> String {
    if z.im.abs() <= 1e-12 {
        fmt_num(z.re)
    } else {
        format!("{}{:+}i", fmt_num(z.re), round15(z.im))
    }
}

const TABLE_HEADER: [&str; 6] = ["group_j", "group_m", "rank_l", "a", "b", "P"];

fn table_fields(r: &CanonicalRow<f64>) -> [String; 6] {
    [
        r.group.0.to_string(),
        r.group.1.to_string(),
        r.rank.to_string(),
        fmt_amp(r.a),
        fmt_amp(r.b),
        fmt_num(r.probability),
    ]
}

fn write_csv<const N: usize>(
    header: [&str; N],
    rows: impl IntoIterator<Item = [String; N]>,
) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(vec![]);
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(&row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn write_table<const N: usize>(
    header: [&str; N],
    rows: impl IntoIterator<Item = [String; N]>,
) -> String {
    let rows: Vec<[String; N]> = rows.into_iter().collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut out, header.to_vec());
    for row in &rows {
        line(&mut out, row.iter().map(String::as_str).collect());
    }
    out
}

pub fn cmd_run(a: &RunArgs) -> Outcome {
    match (a.mode, a.shots) {
        (Mode::Sample, None) => return Outcome::usage("--shots is required with --mode sample"),
        (Mode::Sample, Some(0)) => return Outcome::usage("--shots must be positive"),
        (Mode::Exact, Some(_)) => {
            return Outcome::usage("--shots is only valid with --mode sample")
        }
        _ => {}
    }
    let e = match ensemble_for(a.pair, a.entangler) {
        Ok(e) => e,
        Err(err) => return Outcome::usage(err.to_string()),
    };
    let label = a.pair.label();
    match a.mode {
        Mode::Exact => {
            let stdout = match a.format {
                Format::Json => to_canonical_json(&ensemble_json(label, &e)),
                Format::Csv => {
                    write_csv(TABLE_HEADER, canonical_table(&e).iter().map(table_fields))
                }
                Format::Table => {
                    write_table(TABLE_HEADER, canonical_table(&e).iter().map(table_fields))
                }
            };
            Outcome::ok(stdout)
        }
        Mode::Sample => {
            let shots = a.shots.expect("checked above");
            let counts = match sample(&e, shots, a.seed) {
                Ok(c) => c,
                Err(err) => return Outcome::usage(err.to_string()),
            };
            let stdout = match a.format {
                Format::Json => {
                    let rows: Vec<Value> = counts
                        .rows
                        .iter()
                        .map(|r| {
                            json!({
                                "bell_12": r.final_bell_12.code(),
                                "bell_34": r.final_bell_34.code(),
                                "measured_12": r.bell_12.code(),
                                "measured_34": r.bell_34.code(),
                                "probability": num(r.probability),
                                "count": r.count,
                            })
                        })
                        .collect();
                    to_canonical_json(&json!({
                        "pair": label,
                        "mode": "sample",
                        "shots": shots,
                        "seed": a.seed,
                        "counts": rows,
                    }))
                }
                Format::Csv | Format::Table => {
                    let header = [
                        "bell_12",
                        "bell_34",
                        "measured_12",
                        "measured_34",
                        "probability",
                        "count",
                    ];
                    let rows = counts.rows.iter().map(|r| {
                        [
                            r.final_bell_12.code(),
                            r.final_bell_34.code(),
                            r.bell_12.code(),
                            r.bell_34.code(),
                            fmt_num(r.probability),
                            r.count.to_string(),
                        ]
                    });
                    if a.format == Format::Csv {
                        write_csv(header, rows)
                    } else {
                        write_table(header, rows)
                    }
                }
            };
            Outcome::ok(stdout)
        }
    }
}

/// Verification reports for A·T and G·C under the given entangler.
pub fn verification_reports(entangler: EntanglerArg) -> dnaswap::Result<Vec<VerificationReport>> {
    [PairArg::At, PairArg::Gc]
        .into_iter()
        .map(|p| verify_against_reference(&ensemble_for(p, entangler)?))
        .collect()
}

pub fn cmd_verify(a: &VerifyArgs) -> Outcome {
    if a.dump_reference {
        return Outcome::ok(reference_json().to_owned());
    }
    let reports = match verification_reports(a.entangler) {
        Ok(r) => r,
        Err(err) => return Outcome::usage(err.to_string()),
    };
    let overall = reports.iter().all(|r| r.overall);
    let stdout = match a.format {
        Format::Json => to_canonical_json(&json!({
            "reference_version": reference().version,
            "overall": overall,
            "reports": reports.iter().map(|r| json!({
                "pair": r.pair,
                "overall": r.overall,
                "checks": r.checks.iter().map(|c| json!({
                    "name": c.name,
                    "expected": num(c.expected),
                    "actual": if c.actual.is_finite() { num(c.actual) } else { Value::Null },
                    "tolerance": c.tolerance,
                    "pass": c.pass,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv | Format::Table => {
            let header = ["status", "check", "expected", "actual", "tolerance"];
            let rows = reports.iter().flat_map(|r| {
                r.checks.iter().map(|c| {
                    [
                        if c.pass { "PASS" } else { "FAIL" }.to_owned(),
                        c.name.clone(),
                        fmt_num(c.expected),
                        fmt_num(c.actual),
                        format!("{:e}", c.tolerance),
                    ]
                })
            });
            if a.format == Format::Csv {
                write_csv(header, rows)
            } else {
                let mut s = write_table(header, rows);
                let total: usize = reports.iter().map(|r| r.checks.len()).sum();
                let failed: usize = reports.iter().map(|r| r.failures().count()).sum();
                let _ = writeln!(
                    s,
                    "{} checks, {} passed, {} failed: {}",
                    total,
                    total - failed,
                    failed,
                    if overall { "PASS" } else { "FAIL" }
                );
                s
            }
        }
    };
    Outcome {
        code: if overall { EXIT_OK } else { EXIT_VERIFY_FAILED },
        stdout,
        stderr: String::new(),
    }
}

fn state_rows(label: &str, s: &StateVectorF64) -> Vec<[String; 4]> {
    s.support()
        .into_iter()
        .map(|(ket, z)| [label.to_owned(), ket, fmt_num(z.re), fmt_num(z.im)])
        .collect()
}

pub fn cmd_inspect(a: &InspectArgs) -> Outcome {
    let (t, i) = a.pair.bases();
    let cfg = ConfigF64::default();
    if a.stage == StageArg::O {
        let e = match run_pair(t, i, &cfg) {
            Ok(e) => e,
            Err(err) => return Outcome::usage(err.to_string()),
        };
        let rows = canonical_table(&e);
        let stdout = match a.format {
            Format::Json => {
                let mut v = ensemble_json(a.pair.label(), &e);
                v["table"] = Value::Array(
                    rows.iter()
                        .map(|r| {
                            json!({
                                "group_j": r.group.0,
                                "group_m": r.group.1,
                                "rank_l": r.rank,
                                "a_re": num(r.a.re),
                                "a_im": num(r.a.im),
                                "b_re": num(r.b.re),
                                "b_im": num(r.b.im),
                                "P": num(r.probability),
                            })
                        })
                        .collect(),
                );
                v["stage"] = json!("O");
                to_canonical_json(&v)
            }
            Format::Csv => write_csv(TABLE_HEADER, rows.iter().map(table_fields)),
            Format::Table => write_table(TABLE_HEADER, rows.iter().map(table_fields)),
        };
        return Outcome::ok(stdout);
    }
    let states: Vec<(String, StateVectorF64)> = match a.stage {
        StageArg::I => {
            let mut v = Vec::new();
            for b in [t, i] {
                match wc_initial_state::<f64>(b) {
                    Ok(s) => v.push((format!("{b}"), s)),
                    Err(err) => return Outcome::usage(err.to_string()),
                }
            }
            v
        }
        StageArg::Q => match assemble_pair(t, i, &cfg) {
            Ok(s) => vec![(format!("{t}{i}"), s)],
            Err(err) => return Outcome::usage(err.to_string()),
        },
        StageArg::O => unreachable!("handled above"),
    };
    let stage = match a.stage {
        StageArg::I => "I",
        StageArg::Q => "Q",
        StageArg::O => "O",
    };
    let header = ["state", "ket", "re", "im"];
    let rows = states.iter().flat_map(|(l, s)| state_rows(l, s));
    let stdout = match a.format {
        Format::Json => to_canonical_json(&json!({
            "pair": a.pair.label(),
            "stage": stage,
            "states": states.iter().map(|(l, s)| json!({
                "label": l,
                "num_qubits": s.num_qubits(),
                "amplitudes": s.support().into_iter().map(|(ket, z)| json!({
                    "ket": ket,
                    "re": num(z.re),
                    "im": num(z.im),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => write_csv(header, rows),
        Format::Table => write_table(header, rows),
    };
    Outcome::ok(stdout)
}

pub fn cmd_recognize(a: &RecognizeArgs) -> Outcome {
    let pattern = match EdgePattern::parse(&a.pattern) {
        Ok(p) if p.edge.width() == 2 => p,
        _ => return Outcome::usage(format!("pattern must be two bits, got {:?}", a.pattern)),
    };
    let matches = match recognize_partners(pattern, a.tautomers) {
        Ok(m) => m,
        Err(err) => return Outcome::usage(err.to_string()),
    };
    let rows = matches
        .iter()
        .map(|b| [b.to_string(), dnaswap::encodings::h_edge_pattern(*b).ket()]);
    let stdout = match a.format {
        Format::Json => to_canonical_json(&json!({
            "pattern": a.pattern,
            "tautomers": a.tautomers,
            "matches": matches.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })),
        Format::Csv => write_csv(["base", "h_edge"], rows),
        Format::Table => write_table(["base", "h_edge"], rows),
    };
    Outcome::ok(stdout)
}

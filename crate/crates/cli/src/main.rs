mod render;

use std::fs::OpenOptions;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qrat::fractions::{negative_cf, regular_cf, regular_cf_odd};
use qrat::knots::{self, JonesRoute};
use qrat::qmod::{self, GenWord};
use qrat::qrat::{left_qrat, right_qrat, Route, Side};
use qrat::quivers::{self, ClosureMethod, QuiverSpec};
use qrat::scan::write_jsonl;
use qrat::verify::{self, Bounds, Suite};
use qrat::{Error, Fraction, LaurentPoly};

use render::Format;

const OUT_DIR_VAR: &str = "QRAT_OUT_DIR";

#[derive(Parser)]
#[command(name = "qrat", version, about = "q-deformed rationals, q-modular matrices, quiver closures and Jones polynomials")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Regular,
    Negative,
    Closure,
}

#[derive(Clone, Copy, ValueEnum)]
enum CfKindArg {
    Regular,
    Odd,
    Negative,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixOp {
    None,
    Tq,
    Oq,
    Trace,
    Det,
    Inverse,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Dp,
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum JonesRouteArg {
    Flat,
    Sharp,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanKind {
    Oguz,
    Iota,
}

#[derive(Subcommand)]
enum Command {
    /// Left or right q-rational of a fraction.
    Qrat {
        #[arg(long)]
        frac: Fraction,
        #[arg(long, default_value = "right")]
        side: Side,
        #[arg(long, value_enum, default_value_t = RouteArg::Regular)]
        route: RouteArg,
    },
    /// Continued fraction expansion.
    Cf {
        #[arg(long)]
        frac: Fraction,
        #[arg(long, value_enum, default_value_t = CfKindArg::Regular)]
        kind: CfKindArg,
    },
    /// Matrix of a generator word, optionally transformed.
    Matrix {
        /// "R^1 L^2 S" or "cf:1,2,1,2"
        #[arg(long, allow_hyphen_values = true)]
        word: GenWord,
        #[arg(long, value_enum, default_value_t = MatrixOp::None)]
        op: MatrixOp,
    },
    /// Canonical trace of a word and its trace type.
    Trace {
        #[arg(long, allow_hyphen_values = true)]
        word: GenWord,
    },
    /// Closure polynomial of a quiver.
    Closure {
        /// fence:b1,..  flat:b1,..  circ:a1,..  edges:n;s>t,..
        #[arg(long)]
        quiver: QuiverSpec,
        #[arg(long)]
        table: bool,
        #[arg(long, value_enum, default_value_t = MethodArg::Dp)]
        method: MethodArg,
    },
    /// Normalized Jones polynomial of the rational link of r/s > 1.
    Jones {
        #[arg(long)]
        frac: Fraction,
        #[arg(long, value_enum, default_value_t = JonesRouteArg::Flat)]
        route: JonesRouteArg,
    },
    /// Palindromicity defect I of r/s > 1.
    Iota {
        #[arg(long)]
        frac: Fraction,
        /// Also list this many members of the trace-preserving family.
        #[arg(long)]
        family: Option<usize>,
    },
    /// Run an invariant suite.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long, default_value_t = 60)]
        max_den: i64,
        #[arg(long, default_value_t = 12)]
        max_sum: i64,
        #[arg(long, default_value_t = 500)]
        words: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Conjecture scan written as JSON lines.
    Scan {
        #[arg(long, value_enum)]
        kind: ScanKind,
        #[arg(long, default_value_t = 14)]
        max_sum: i64,
        #[arg(long, default_value_t = 40)]
        max_r: i64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: u32,
        /// Output file; relative paths resolve against $QRAT_OUT_DIR when set.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        append: bool,
    },
}

/// Outcome of a command: printed text and exit status.
struct Done {
    text: String,
    violation: bool,
}

impl Done {
    fn ok(text: String) -> Self {
        Self { text, violation: false }
    }
}

enum Failure {
    Domain(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Domain(e) => write!(f, "{e}"),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
            Failure::Usage(m) => f.write_str(m),
        }
    }
}

fn poly_json(label: &str, p: &LaurentPoly) -> serde_json::Value {
    json!({ label: p })
}

fn run(cli: Cli) -> Result<Done, Failure> {
    let fmt = cli.format;
    match cli.command {
        Command::Qrat { frac, side, route } => {
            let route = match route {
                RouteArg::Regular => Route::RegularCf,
                RouteArg::Negative => Route::NegativeCf,
                RouteArg::Closure => Route::Closure,
            };
            let q = match side {
                Side::Left => left_qrat(frac, route)?,
                Side::Right => right_qrat(frac, route)?,
            };
            Ok(Done::ok(render::polys(fmt, &[("num", &q.num), ("den", &q.den)], render::to_json(&q))))
        }
        Command::Cf { frac, kind } => {
            let cf = match kind {
                CfKindArg::Regular => regular_cf(frac),
                CfKindArg::Odd => regular_cf_odd(frac)?,
                CfKindArg::Negative => negative_cf(frac),
            };
            let terms: Vec<String> = cf.terms.iter().map(|t| t.to_string()).collect();
            let kind_name = match kind {
                CfKindArg::Regular => "regular",
                CfKindArg::Odd => "odd",
                CfKindArg::Negative => "negative",
            };
            Ok(Done::ok(match fmt {
                Format::Text => format!("{cf}\n"),
                Format::Json => format!("{}\n", json!({"fraction": frac, "kind": kind_name, "terms": cf.terms})),
                Format::Csv => format!("fraction,kind,terms\n{frac},{kind_name},{}\n", terms.join(" ")),
            }))
        }
        Command::Matrix { word, op } => {
            let m = qmod::word_to_matrix(&word)?;
            let single = |label: &str, p: LaurentPoly| render::polys(fmt, &[(label, &p)], poly_json(label, &p));
            let m = match op {
                MatrixOp::Trace => return Ok(Done::ok(single("trace", m.trace()?))),
                MatrixOp::Det => return Ok(Done::ok(single("det", m.det()?))),
                MatrixOp::None => m,
                MatrixOp::Tq => qmod::q_transpose(&m)?,
                MatrixOp::Oq => qmod::orthogonal_q_transpose(&m)?,
                MatrixOp::Inverse => m.inverse()?,
            };
            let [[a, b], [c, d]] = &m.entries;
            Ok(Done::ok(match fmt {
                Format::Text => format!("[{a}, {b}]\n[{c}, {d}]\n"),
                Format::Json => format!("{}\n", json!({"word": word.to_string(), "entries": [[a, b], [c, d]]})),
                Format::Csv => render::polys(fmt, &[("a11", a), ("a12", b), ("a21", c), ("a22", d)], json!(null)),
            }))
        }
        Command::Trace { word } => {
            let m = qmod::word_to_matrix(&word)?;
            let canonical = qmod::canonical_trace(&m)?;
            let ty = qmod::reduce_trace_type(&m)?;
            Ok(Done::ok(match fmt {
                Format::Text => format!("trace: {}\ncanonical: {canonical}\ntype: {ty}\n", m.trace()?),
                Format::Json => format!(
                    "{}\n",
                    json!({"word": word.to_string(), "trace": m.trace()?, "canonical": canonical, "type": ty.to_string()})
                ),
                Format::Csv => render::polys(fmt, &[("trace", &m.trace()?), ("canonical", &canonical)], json!(null)),
            }))
        }
        Command::Closure { quiver, table, method } => {
            let q = quiver.build()?;
            if table {
                return Ok(Done::ok(render::closure_table(fmt, &quivers::closure_table(&q)?)));
            }
            let method = match method {
                MethodArg::Dp if q.layout.is_some() => ClosureMethod::Dp,
                _ => ClosureMethod::BruteForce,
            };
            let cl = quivers::closure_poly(&q, method)?;
            Ok(Done::ok(render::polys(
                fmt,
                &[("closure", &cl)],
                json!({"quiver": quiver.to_string(), "closure": cl}),
            )))
        }
        Command::Jones { frac, route } => {
            let route = match route {
                JonesRouteArg::Flat => JonesRoute::FlatReciprocal,
                JonesRouteArg::Sharp => JonesRoute::SharpFormula,
            };
            let j = knots::jones(frac, route)?;
            Ok(Done::ok(render::polys(fmt, &[("J", &j.j)], render::to_json(&j))))
        }
        Command::Iota { frac, family } => {
            let rec = knots::iota_record(frac)?;
            let fam = family.map(|n| knots::trace_preserving_family(frac, n)).transpose()?;
            let mut out = match fmt {
                Format::Json => {
                    let mut v = render::to_json(&rec);
                    if let Some(f) = &fam {
                        v["family"] = render::to_json(f);
                    }
                    format!("{v}\n")
                }
                _ => render::polys(fmt, &[("I", &rec.i)], json!(null)),
            };
            if let (Format::Text, Some(f)) = (fmt, &fam) {
                let list: Vec<String> = f.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!("family: {}\n", list.join(" ")));
            }
            Ok(Done::ok(out))
        }
        Command::Verify { suite, max_den, max_sum, words, seed } => {
            let bounds = Bounds { max_den, max_sum, words, seed, ..Bounds::default() };
            let reports = verify::run_suite(suite, &bounds)?;
            let violation = reports.iter().any(|r| !r.passed());
            let text = match fmt {
                Format::Json => format!("{}\n", render::to_json(&reports)),
                Format::Csv => {
                    let mut s = String::from("suite,checked,failed\n");
                    for r in &reports {
                        s.push_str(&format!("{},{},{}\n", r.suite, r.checked, r.failed));
                    }
                    s
                }
                Format::Text => reports.iter().map(|r| format!("{r}\n")).collect(),
            };
            Ok(Done { text, violation })
        }
        Command::Scan { kind, max_sum, max_r, jobs, out, append } => scan(fmt, kind, max_sum, max_r, jobs as usize, out, append),
    }
}

fn resolve_out(out: PathBuf) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if out.is_relative() => PathBuf::from(dir).join(out),
        _ => out,
    }
}

fn scan(
    fmt: Format,
    kind: ScanKind,
    max_sum: i64,
    max_r: i64,
    jobs: usize,
    out: Option<PathBuf>,
    append: bool,
) -> Result<Done, Failure> {
    if max_sum < 2 || max_r < 2 {
        return Err(Failure::Usage("scan bounds must be at least 2".into()));
    }
    let mut buf = Vec::new();
    let (summary, violation) = match kind {
        ScanKind::Oguz => {
            let s = knots::oguz_scan(max_sum, jobs)?;
            write_jsonl(&mut buf, &s.records)?;
            let non_uni: Vec<String> = s
                .records
                .iter()
                .filter(|r| r.modality > 1)
                .map(|r| format!("({})", r.a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                .collect();
            (
                json!({"kind": "oguz", "max_sum": max_sum, "records": s.records.len(),
                       "non_unimodal": non_uni, "violations": s.violations}),
                !s.violations.is_empty(),
            )
        }
        ScanKind::Iota => {
            let s = knots::iota_scan(max_r, jobs)?;
            write_jsonl(&mut buf, &s.records)?;
            let count = |e: knots::Exception| s.records.iter().filter(|r| r.exception == e && r.modality > 1).count();
            (
                json!({"kind": "iota", "max_r": max_r, "records": s.records.len(),
                       "max_modality": s.records.iter().map(|r| r.modality).max().unwrap_or(0),
                       "one_plus_qn": count(knots::Exception::OnePlusQn),
                       "staircase": count(knots::Exception::Staircase),
                       "violations": s.violations}),
                !s.violations.is_empty(),
            )
        }
    };
    let mut text = String::new();
    match out {
        Some(path) => {
            let path = resolve_out(path);
            OpenOptions::new()
                .create(true)
                .write(true)
                .append(append)
                .truncate(!append)
                .open(&path)
                .and_then(|mut f| f.write_all(&buf))
                .map_err(|e| Failure::Io(path, e))?;
        }
        None => text.push_str(&String::from_utf8_lossy(&buf)),
    }
    match fmt {
        Format::Text | Format::Csv => {
            if let Some(obj) = summary.as_object() {
                for (k, v) in obj {
                    text.push_str(&format!("{k}: {v}\n"));
                }
            }
        }
        Format::Json => text.push_str(&format!("{summary}\n")),
    }
    Ok(Done { text, violation })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                eprint!("{e}");
                return ExitCode::from(2);
            }
            let msg = e.to_string();
            eprintln!("{}", msg.lines().next().unwrap_or("usage error"));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(done) => {
            print!("{}", done.text);
            if done.violation {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

//! Argument parsing and dispatch for the `bsorder` binary.
//!
//! [`run`] never touches the process: it returns the exit code and the text
//! destined for stdout and stderr, so tests can call it directly.

use std::fmt::Write as _;
use std::path::PathBuf;

use bsorder_core::equivariant::{supernatural_equivariant_report, EqRootCertificate, TwistCheck};
use bsorder_core::es::{reduced_hom_witness, twist_table};
use bsorder_core::supernatural::{default_window, table};
use bsorder_core::*;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "bsorder", version, about = "Boij-Soderberg partial orders with explicit Hom certificates")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Normalized pure Betti diagram of a degree sequence.
    Pure {
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// Greedy decomposition of a Betti diagram read from a JSON file.
    Decompose { file: PathBuf },
    /// Compare two sequences in the partial order.
    Order {
        #[command(subcommand)]
        kind: OrderKind,
    },
    /// Certificate for a nonzero homomorphism.
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
    /// Eisenbud-Schreyer construction data.
    Es {
        #[command(subcommand)]
        kind: EsKind,
    },
    /// Equivariant resolutions and bundles.
    Eq {
        #[command(subcommand)]
        kind: EqKind,
    },
    /// Supernatural cohomology tables.
    Snat {
        #[command(subcommand)]
        kind: SnatKind,
    },
}

#[derive(Debug, Subcommand)]
enum OrderKind {
    /// Degree sequences, e.g. `0,2,4,5,6 1,2,4,7,inf`.
    Deg {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Root sequences, e.g. `-2,-3,-4,-inf -1,-2,-3,-4`.
    Root {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Debug, Subcommand)]
enum WitnessKind {
    /// Shift `d'` to touch `d`, then exhibit `ν_j ≠ 0`.
    Deg {
        #[arg(allow_hyphen_values = true)]
        d: String,
        #[arg(allow_hyphen_values = true)]
        dp: String,
    },
    /// Lower bound for `dim Hom(E', E)`, plus the exact value when both split.
    Root {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        fp: String,
    },
}

#[derive(Debug, Subcommand)]
enum EsKind {
    /// Twists of the two Koszul complexes.
    Table {
        #[arg(allow_hyphen_values = true)]
        d: String,
        #[arg(allow_hyphen_values = true)]
        dp: String,
    },
}

#[derive(Debug, Subcommand)]
enum EqKind {
    /// Highest weights of the equivariant resolution.
    Shapes {
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// Pieri chain certifying an equivariant morphism.
    Witness {
        #[arg(allow_hyphen_values = true)]
        d: String,
        #[arg(allow_hyphen_values = true)]
        dp: String,
    },
    /// Cohomology of `S_w Q ⊗ O(e)` on `P^{n-1}`.
    Bwb {
        #[arg(allow_hyphen_values = true)]
        weight: String,
        #[arg(allow_hyphen_values = true)]
        e: i64,
        n: usize,
    },
    /// Equivariant supernatural bundle of type `f`, checked against its
    /// table; with `f'` also the equivariant Hom inequality.
    Supernatural {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        fp: Option<String>,
        /// Twist window `a:b`.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum SnatKind {
    /// Cohomology table of the rank-s! supernatural sheaf.
    Table {
        #[arg(allow_hyphen_values = true)]
        f: String,
        /// Column window `a:b`.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// One successful computation: a verb name, its parsed input, a short
/// result, an optional certificate, and a text rendering.
struct Report {
    verb: &'static str,
    input: Value,
    result: Value,
    certificate: Option<Value>,
    text: String,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn parse_window(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Usage(format!("window must look like a:b, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn parse_weight(s: &str) -> Result<GLWeight, Failure> {
    let parts = s
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Failure::Usage(format!("weight must be comma-separated integers, got {s:?}")))?;
    Ok(GLWeight::new(parts)?)
}

fn bwb_text(r: &BWBResult) -> String {
    match (&r.degree, &r.weight) {
        (Some(i), Some(w)) => format!("H^{i} = S_{w} V, dimension {}; all other cohomology vanishes", r.dim),
        _ => "all cohomology vanishes".to_string(),
    }
}

fn root_cert_text(c: &EqRootCertificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "N = {:?}", c.increments);
    let _ = writeln!(s, "lambda = {}, lambda' = {}, lambda'' = {}, lambda^c = {}", c.lambda, c.lambda_p, c.lambda_pp, c.lambda_c);
    let _ = writeln!(s, "bound lambda_1 + N_1 = {}, lhs = {:?}, slack = {:?}", c.bound, c.lhs, c.slack);
    let _ = write!(s, "equivariant Hom nonzero: {}", c.exists);
    s
}

fn report_text(rep: &[TwistCheck]) -> String {
    let mut s = String::new();
    for c in rep {
        let row = c.table_row.map_or("-".to_string(), |i| i.to_string());
        let _ = writeln!(
            s,
            "t={:>4}  bott: {:<64} table row {row:>2} value {:>8}  {}",
            c.t,
            bwb_text(&c.bwb),
            c.table_value,
            if c.agrees { "ok" } else { "MISMATCH" }
        );
    }
    s
}

fn dispatch(verb: Verb) -> Result<Report, Failure> {
    let deg = |s: &str| DegreeSequence::parse(s);
    let root = |s: &str| RootSequence::parse(s);
    Ok(match verb {
        Verb::Pure { d } => {
            let d = deg(&d)?;
            let p = pure_diagram(&d);
            Report {
                verb: "pure",
                input: json!({ "d": to_value(&d) }),
                result: to_value(&p),
                certificate: None,
                text: format!("{}", p),
            }
        }
        Verb::Decompose { file } => {
            let raw = std::fs::read_to_string(&file)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
            let b: BettiDiagram = serde_json::from_str(&raw)
                .map_err(|e| Failure::Lib(Error::Parse(format!("{}: {e}", file.display()))))?;
            let dec = decompose(&b)?;
            Report {
                verb: "decompose",
                input: to_value(&b),
                result: to_value(&dec),
                certificate: None,
                text: format!("{b}\n{dec}"),
            }
        }
        Verb::Order { kind: OrderKind::Deg { a, b } } => {
            let (a, b) = (deg(&a)?, deg(&b)?);
            let ans = deg_leq(&a, &b);
            Report {
                verb: "order deg",
                input: json!({ "d": to_value(&a), "d'": to_value(&b) }),
                result: json!(ans),
                certificate: None,
                text: ans.to_string(),
            }
        }
        Verb::Order { kind: OrderKind::Root { a, b } } => {
            let (a, b) = (root(&a)?, root(&b)?);
            let ans = root_leq(&a, &b);
            Report {
                verb: "order root",
                input: json!({ "f": to_value(&a), "f'": to_value(&b) }),
                result: json!(ans),
                certificate: None,
                text: ans.to_string(),
            }
        }
        Verb::Witness { kind: WitnessKind::Deg { d, dp } } => {
            let (d, dp) = (deg(&d)?, deg(&dp)?);
            let (t, cert) = reduced_hom_witness(&d, &dp)?;
            Report {
                verb: "witness deg",
                input: json!({ "d": to_value(&d), "d'": to_value(&dp) }),
                result: json!({ "hom_nonzero_in_degree": -t, "shift": t, "j": cert.j }),
                text: format!("shift t = {t}: certificate for Hom(M', M)_{}\n{cert}", -t),
                certificate: Some(to_value(&cert)),
            }
        }
        Verb::Witness { kind: WitnessKind::Root { f, fp } } => {
            let (f, fp) = (root(&f)?, root(&fp)?);
            if !root_leq(&f, &fp) {
                return Err(Error::NotComparable.into());
            }
            let bound = hom_lower_bound(&f, &fp);
            let split = split_hom_dim(&f, &fp).ok();
            let mut text = format!("dim Hom(E', E) >= {bound}");
            if let Some(s) = &split {
                let _ = write!(text, "\nboth bundles split: dim Hom(E', E) = {s}");
            }
            Report {
                verb: "witness root",
                input: json!({ "f": to_value(&f), "f'": to_value(&fp) }),
                result: json!({
                    "lower_bound": bound.to_string(),
                    "split_dim": split.map(|s| s.to_string()),
                }),
                certificate: None,
                text,
            }
        }
        Verb::Es { kind: EsKind::Table { d, dp } } => {
            let (d, dp) = (deg(&d)?, deg(&dp)?);
            let e = es_setup(&d, &dp)?;
            let (t, tp) = (twist_table(&e, Side::Unprimed), twist_table(&e, Side::Primed));
            Report {
                verb: "es table",
                input: json!({ "d": to_value(&d), "d'": to_value(&dp) }),
                result: json!({ "setup": to_value(&e), "unprimed": to_value(&t), "primed": to_value(&tp) }),
                certificate: None,
                text: format!(
                    "r = {}, delta = {:?}, a = {:?}, delta' = {:?}, a' = {:?}, c = {}\n\n{t}\n{tp}",
                    e.r,
                    e.delta,
                    e.a,
                    e.delta_p,
                    e.a_p,
                    e.c.as_ref().map_or("undefined".to_string(), |c| format!("{c:?}"))
                )
                .trim_end()
                .to_string(),
            }
        }
        Verb::Eq { kind: EqKind::Shapes { d } } => {
            let d = deg(&d)?;
            let sh = efw_shapes(&d)?;
            Report {
                verb: "eq shapes",
                input: json!({ "d": to_value(&d) }),
                result: to_value(&sh),
                certificate: None,
                text: sh.to_string().trim_end().to_string(),
            }
        }
        Verb::Eq { kind: EqKind::Witness { d, dp } } => {
            let (d, dp) = (deg(&d)?, deg(&dp)?);
            let (t, dpp) = shift_reduction(&d, &dp)?;
            let cert = eq_hom_witness(&d, &dpp)?;
            Report {
                verb: "eq witness",
                input: json!({ "d": to_value(&d), "d'": to_value(&dp) }),
                result: json!({ "shift": t, "touching_index": cert.touching_index, "chain_length": cert.chain.len() }),
                text: format!("shift t = {t}\n{cert}"),
                certificate: Some(to_value(&cert)),
            }
        }
        Verb::Eq { kind: EqKind::Bwb { weight, e, n } } => {
            let w = parse_weight(&weight)?;
            let r = bwb(&w, e, n)?;
            Report {
                verb: "eq bwb",
                input: json!({ "weight": to_value(&w), "e": e, "n": n }),
                result: to_value(&r),
                certificate: None,
                text: bwb_text(&r),
            }
        }
        Verb::Eq { kind: EqKind::Supernatural { f, fp, window } } => {
            let f = root(&f)?;
            let window = window.as_deref().map(parse_window).transpose()?.unwrap_or_else(|| default_window(&f));
            let (lambda, twist) = eq_supernatural_weight(&f)?;
            let rep = supernatural_equivariant_report(&f, window)?;
            let agrees = rep.iter().all(|c| c.agrees);
            let mut text = format!("E = S_{lambda} Q ⊗ O({twist}), rank {}\n{}", weyl_dim(&lambda), report_text(&rep));
            let mut result = json!({ "weight": to_value(&lambda), "twist": twist, "agrees": agrees });
            let mut input = json!({ "f": to_value(&f), "window": [window.0, window.1] });
            if let Some(fp) = fp {
                let fp = root(&fp)?;
                let c = eq_root_hom_exists(&f, &fp)?;
                text.push_str(&root_cert_text(&c));
                result["hom"] = to_value(&c);
                input["f'"] = to_value(&fp);
            }
            Report {
                verb: "eq supernatural",
                input,
                result,
                certificate: Some(to_value(&rep)),
                text: text.trim_end().to_string(),
            }
        }
        Verb::Snat { kind: SnatKind::Table { f, window } } => {
            let f = root(&f)?;
            let window = window.as_deref().map(parse_window).transpose()?;
            let t = table(&f, window);
            Report {
                verb: "snat table",
                input: json!({ "f": to_value(&f), "window": window.map(|w| [w.0, w.1]) }),
                result: to_value(&t),
                certificate: None,
                text: t.to_string().trim_end().to_string(),
            }
        }
    })
}

fn error_record(code: &str, message: &str) -> String {
    let v = json!({ "error": { "code": code, "message": message } });
    serde_json::to_string_pretty(&v).unwrap() + "\n"
}

/// Parses `argv` (including the program name) and runs one verb.
///
/// Exit codes: 0 on success, 2 when the library refuses on mathematical
/// grounds (incomparable sequences, diagram outside the cone), 1 on usage
/// and input errors.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let structured = argv.windows(2).any(|w| w[0] == "--format" && w[1] == "structured")
        || argv.iter().any(|a| a == "--format=structured");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::*;
            let rendered = e.render().to_string();
            if matches!(e.kind(), DisplayHelp | DisplayVersion | DisplayHelpOnMissingArgumentOrSubcommand)
                && e.exit_code() == 0
            {
                return Output { code: 0, stdout: rendered, stderr: String::new() };
            }
            return if structured {
                Output { code: 1, stdout: error_record("Usage", rendered.trim()), stderr: String::new() }
            } else {
                Output { code: 1, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let (code, body, stderr) = match dispatch(cli.verb) {
        Ok(rep) => {
            let body = match cli.format {
                Format::Text => rep.text + "\n",
                Format::Structured => {
                    let mut v = json!({ "verb": rep.verb, "input": rep.input, "result": rep.result });
                    if let Some(c) = rep.certificate {
                        v["certificate"] = c;
                    }
                    serde_json::to_string_pretty(&v).unwrap() + "\n"
                }
            };
            (0, body, String::new())
        }
        Err(f) => {
            let (code, name, msg) = match f {
                Failure::Usage(m) => (1, "Usage", m),
                Failure::Lib(e) => (if e.is_refusal() { 2 } else { 1 }, e.code(), e.to_string()),
            };
            match cli.format {
                Format::Structured => (code, error_record(name, &msg), String::new()),
                Format::Text => (code, String::new(), format!("error[{name}]: {msg}\n")),
            }
        }
    };
    match (&cli.out, code) {
        (Some(path), 0) => match std::fs::write(path, &body) {
            Ok(()) => Output { code, stdout: String::new(), stderr },
            Err(e) => Output { code: 1, stdout: String::new(), stderr: format!("cannot write {}: {e}\n", path.display()) },
        },
        _ => Output { code, stdout: body, stderr },
    }
}

//! Command-line front end.
//!
//! Every subcommand wraps exactly one library operation, reads Dyer graphs
//! as JSON files, and writes a deterministic payload to stdout.  Exit codes:
//! 0 success, 1 domain error (invalid input or mathematical precondition),
//! 2 usage error, 3 resource budget exceeded.

use crate::analysis::{
    check_monotonicity, continuity_experiment, default_tol, growth_rate, GraphFamily,
};
use crate::model::{
    classify_dyer, graph_to_matrix, induced_coxeter_graph, DyerGraph, RawGraph,
};
use crate::series::{growth_series, series_coefficients};
use crate::words::{
    ball, compress, marking_agreement_radius, normal_form, Budgets, GrowthTable,
};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::FromPrimitive;
use serde_json::json;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "dyer", version, about = "Exact computations with marked Dyer systems")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct Common {
    /// Dyer graph JSON file.
    #[arg(long)]
    graph: PathBuf,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Cap on BFS states and rewriting-closure sizes.
    #[arg(long, default_value_t = 1_000_000)]
    budget: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a graph file against the Dyer conditions and report violations.
    Validate(Common),
    /// Classify as Spherical, Euclidean, or Neither, with component types.
    Classify(Common),
    /// Print the Dyer matrix of the graph.
    Matrix(Common),
    /// Print the induced Coxeter graph and the generator map.
    Induce(Common),
    /// ShortLex normal form of a word, e.g. --word "v1^3 v2^-1".
    Nf {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
    },
    /// Word length of the element represented by --word.
    Wordlen {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
    },
    /// Sphere and ball sizes up to radius --max by Cayley-graph BFS.
    Ball {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max: usize,
    },
    /// Exact growth series from the parabolic recursion.
    Series(Common),
    /// Expansion coefficients of the growth series up to degree --max.
    Coeffs {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max: usize,
    },
    /// Certified growth-rate interval.
    Rate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Monotonicity check of --graph against --graph2.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        graph2: PathBuf,
        #[arg(long, default_value_t = 15)]
        max: usize,
    },
    /// Marking agreement radius of --graph and --graph2 up to --max.
    Distance {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        graph2: PathBuf,
        #[arg(long, default_value_t = 10)]
        max: usize,
    },
    /// Growth rates along a weight-monotone family and at its limit.
    Converge {
        /// Family JSON file: {"base":…, "growing":[{"slot":…}], "limit":…}.
        #[arg(long)]
        family: PathBuf,
        /// Comma-separated parameter values, e.g. 7,10,15.
        #[arg(long)]
        ks: String,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))
}

fn load_raw(path: &Path) -> Result<RawGraph> {
    serde_json::from_str(&read_file(path)?)
        .map_err(|e| Error::Domain(format!("bad graph JSON in {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<DyerGraph> {
    load_raw(path)?.compile()
}

fn parse_tol(tol: Option<f64>) -> Result<BigRational> {
    match tol {
        None => Ok(default_tol()),
        Some(t) if t > 0.0 => BigRational::from_f64(t)
            .ok_or_else(|| Error::Domain(format!("unrepresentable tolerance {t}"))),
        Some(t) => Err(Error::Domain(format!("tolerance must be positive, got {t}"))),
    }
}

/// Parses the surface syntax `v1^3 v2^-1`; bare ids mean exponent 1.
fn parse_word(g: &DyerGraph, text: &str) -> Result<Vec<(usize, i64)>> {
    let mut out = Vec::new();
    for token in text.split_whitespace() {
        let (id, exp) = match token.split_once('^') {
            Some((id, e)) => {
                let exp: i64 = e
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad exponent in token {token:?}")))?;
                (id, exp)
            }
            None => (token, 1),
        };
        let gen = g
            .ids()
            .iter()
            .position(|x| x == id)
            .ok_or_else(|| Error::Domain(format!("unknown generator {id:?}")))?;
        out.push((gen, exp));
    }
    Ok(out)
}

fn budgets(n: usize) -> Budgets {
    Budgets { states: n, closure: n }
}

fn table_payload(t: &GrowthTable, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::new();
            for (m, a) in t.a.iter().enumerate() {
                out.push_str(&format!("{m},{a}\n"));
            }
            out
        }
        _ => {
            let a: Vec<String> = t.a.iter().map(|x| x.to_string()).collect();
            let b: Vec<String> = t.b.iter().map(|x| x.to_string()).collect();
            json!({ "a": a, "b": b }).to_string()
        }
    }
}

fn run_cmd(cmd: Cmd) -> Result<String> {
    match cmd {
        Cmd::Validate(c) => {
            let report = load_raw(&c.graph)?.validate();
            let payload = match c.format {
                Format::Text => {
                    if report.is_valid() {
                        "valid\n".to_string()
                    } else {
                        report.violations.join("\n") + "\n"
                    }
                }
                _ => json!({
                    "valid": report.is_valid(),
                    "violations": report.violations,
                })
                .to_string(),
            };
            if report.is_valid() {
                Ok(payload)
            } else {
                // Payload still goes to stdout; the exit code carries failure.
                Err(Error::InvalidGraph(payload))
            }
        }
        Cmd::Classify(c) => {
            let g = load_graph(&c.graph)?;
            let v = classify_dyer(&g);
            let components: Vec<_> = v
                .components
                .iter()
                .map(|comp| {
                    json!({
                        "vertices": comp.vertices.iter().map(|&i| g.ids()[i].clone()).collect::<Vec<_>>(),
                        "label": comp.label,
                        "classified": comp.ty.is_some() || comp.label.starts_with('C'),
                    })
                })
                .collect();
            Ok(json!({ "kind": format!("{:?}", v.kind), "components": components }).to_string())
        }
        Cmd::Matrix(c) => {
            let m = graph_to_matrix(&load_graph(&c.graph)?);
            Ok(serde_json::to_string(&m).expect("matrix serialization"))
        }
        Cmd::Induce(c) => {
            let g = load_graph(&c.graph)?;
            let (cox, map) = induced_coxeter_graph(&g);
            let raw = cox.as_dyer().to_raw();
            Ok(json!({
                "graph": serde_json::to_value(&raw).expect("graph serialization"),
                "generator_map": map,
            })
            .to_string())
        }
        Cmd::Nf { common: c, word } => {
            let g = load_graph(&c.graph)?;
            let letters = parse_word(&g, &word)?;
            let w = compress(&g, &letters)?;
            let nf = normal_form(&g, &w, c.budget)?;
            let word_json: Vec<_> = nf
                .word
                .0
                .iter()
                .map(|s| json!([g.ids()[s.gen as usize], s.exp]))
                .collect();
            Ok(json!({
                "word": word_json,
                "syllabic_length": nf.syllabic_length,
                "word_length": nf.word_length,
            })
            .to_string())
        }
        Cmd::Wordlen { common: c, word } => {
            let g = load_graph(&c.graph)?;
            let letters = parse_word(&g, &word)?;
            let w = compress(&g, &letters)?;
            let nf = normal_form(&g, &w, c.budget)?;
            Ok(json!({ "word_length": nf.word_length }).to_string())
        }
        Cmd::Ball { common: c, max } => {
            let g = load_graph(&c.graph)?;
            let t = ball(&g, max, &budgets(c.budget))?;
            Ok(table_payload(&t, c.format))
        }
        Cmd::Series(c) => {
            let f = growth_series(&load_graph(&c.graph)?)?;
            Ok(serde_json::to_string(&f).expect("series serialization"))
        }
        Cmd::Coeffs { common: c, max } => {
            let f = growth_series(&load_graph(&c.graph)?)?;
            let t = series_coefficients(&f, max)?;
            Ok(table_payload(&t, c.format))
        }
        Cmd::Rate { common: c, tol } => {
            let g = load_graph(&c.graph)?;
            let kind = classify_dyer(&g).kind;
            let r = growth_rate(&g, &parse_tol(tol)?)?;
            match c.format {
                Format::Text => {
                    let (lo, hi) = r.approx();
                    Ok(format!("kind {kind:?}\ntau in [{lo}, {hi}]\n"))
                }
                _ => {
                    let mut v = serde_json::to_value(&r).expect("rate serialization");
                    v["kind"] = json!(format!("{kind:?}"));
                    Ok(v.to_string())
                }
            }
        }
        Cmd::Compare { common: c, graph2, max } => {
            let g = load_graph(&c.graph)?;
            let g2 = load_graph(&graph2)?;
            let v = check_monotonicity(&g, &g2, None, max)?;
            Ok(serde_json::to_string(&v).expect("verdict serialization"))
        }
        Cmd::Distance { common: c, graph2, max } => {
            let g = load_graph(&c.graph)?;
            let g2 = load_graph(&graph2)?;
            let r = marking_agreement_radius(&g, &g2, max, &budgets(c.budget))?;
            Ok(json!({
                "agreement_radius": r,
                "r_max": max,
                // Exact when a disagreement was found below r_max; otherwise
                // the true radius is at least r_max and the metric at most this.
                "exact": r < max,
                "metric_upper_bound": (-(r as f64)).exp(),
            })
            .to_string())
        }
        Cmd::Converge { family, ks, tol, format } => {
            let fam = GraphFamily::from_json(&read_file(&family)?)?;
            let ks: Vec<u64> = ks
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| Error::Domain(format!("bad parameter {s:?} in --ks")))
                })
                .collect::<Result<Vec<_>>>()?;
            let report = continuity_experiment(&fam, &ks, &parse_tol(tol)?)?;
            match format {
                Format::Csv => Ok(report.to_csv()),
                _ => Ok(serde_json::to_string(&report).expect("report serialization")),
            }
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget(_) => 3,
        _ => 1,
    }
}

/// Parses `argv` (including the program name), runs one command, and
/// returns the process exit code.  Payload on stdout, diagnostics on stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help and version through the same path.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_cmd(cli.cmd) {
        Ok(payload) => {
            if payload.ends_with('\n') {
                print!("{payload}");
            } else {
                println!("{payload}");
            }
            0
        }
        Err(Error::InvalidGraph(payload)) if payload.starts_with('{') || payload.ends_with('\n') => {
            // validate: the report is the payload even on failure.
            if payload.ends_with('\n') {
                print!("{payload}");
            } else {
                println!("{payload}");
            }
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fgroup_core::experiments::{
    build_pocket_element, lemma_suites, nonac_lengths, pocket_depth_at_least_with, upper_bound_suite,
};
use fgroup_core::length::{bfs_ball, length_with};
use fgroup_core::{Error, SearchLimits, TreePair, Word};
use serde::Serialize;

mod dot;

#[derive(Parser)]
#[command(name = "fgroup", version, about = "Word length in Thompson's group F over X_n = {x_0, ..., x_n}")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,

    /// Largest caret count handed to the exact minimizer.
    #[arg(long, global = true, default_value_t = 40)]
    search_bound: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// l_inf, p_n and l_n of an element given as a word or as `neg;pos`.
    Length {
        element: String,
        #[arg(short, default_value_t = 1)]
        n: usize,
    },
    /// Normal form of an element.
    NormalForm { element: String },
    /// Product of two elements.
    Multiply { left: String, right: String },
    /// A minimal penalty tree as a DOT digraph.
    PenaltyDot {
        element: String,
        #[arg(short, default_value_t = 1)]
        n: usize,
    },
    /// Compare the formula with breadth-first distance on a ball.
    OracleCheck {
        #[arg(short, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        radius: usize,
    },
    #[command(subcommand)]
    Experiments(Experiment),
}

#[derive(Subcommand)]
enum Experiment {
    /// Check that every word of length at most k keeps g_k inside its ball.
    Pocket {
        #[arg(short, default_value_t = 1)]
        k: usize,
        #[arg(short, default_value_t = 4)]
        n: usize,
    },
    /// Length drops for g x_n and g x_n^-1 on the non-convexity witness.
    Nonac {
        #[arg(short, default_value_t = 2)]
        n: usize,
        #[arg(short = 'L', default_value_t = 1)]
        big_l: usize,
    },
    /// Look for a bounded escape from random elements.
    UpperBound {
        #[arg(short, default_value_t = 1)]
        n: usize,
        #[command(flatten)]
        sample: Sample,
    },
    /// The +-1 step and descent properties on random elements, for 1..=n.
    Lemmas {
        #[arg(short, default_value_t = 3)]
        n: usize,
        #[command(flatten)]
        sample: Sample,
    },
}

#[derive(Args)]
struct Sample {
    #[arg(long, default_value_t = 500)]
    sample: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 12)]
    max_carets: usize,
}

enum Failure {
    Core(Error),
    Property(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn parse_element(text: &str) -> Result<TreePair, Error> {
    if text.contains(';') {
        Ok(TreePair::parse_pair(text)?.reduce())
    } else {
        Ok(Word::parse(text)?.evaluate())
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

#[derive(Serialize)]
struct ElementReport {
    pair: String,
    normal_form: String,
}

impl ElementReport {
    fn new(g: &TreePair) -> Result<Self, Error> {
        Ok(ElementReport { pair: g.canonical_key(), normal_form: g.normal_form()?.to_string() })
    }
}

#[derive(Serialize)]
struct Mismatch {
    element: String,
    distance: usize,
    formula: usize,
}

#[derive(Serialize)]
struct OracleReport {
    n: usize,
    radius: usize,
    elements: usize,
    sphere_sizes: Vec<usize>,
    mismatches: Vec<Mismatch>,
}

#[derive(Serialize)]
struct PocketSummary {
    p_n: usize,
    #[serde(flatten)]
    report: fgroup_core::experiments::PocketReport,
}

fn run(cli: Cli) -> Result<String, Failure> {
    let limits = SearchLimits { max_carets: cli.search_bound, ..SearchLimits::default() };
    let out = cli.output;
    let no_dot = |what: &str| Failure::Usage(format!("{what} has no dot output"));
    match cli.command {
        Command::Length { element, n } => {
            let g = parse_element(&element)?;
            let r = length_with(&g, n, limits)?;
            Ok(match out {
                Output::Text => format!(
                    "l_inf {}\np_n {}\nl_n {}\nwitness {}\n",
                    r.l_infty, r.p_n, r.l_n, r.witness
                ),
                Output::Json => json(&r),
                Output::Dot => dot::render(&r.witness, n),
            })
        }
        Command::NormalForm { element } => {
            let g = parse_element(&element)?;
            let r = ElementReport::new(&g)?;
            match out {
                Output::Text => Ok(format!("{}\n", r.normal_form)),
                Output::Json => Ok(json(&r)),
                Output::Dot => Err(no_dot("normal-form")),
            }
        }
        Command::Multiply { left, right } => {
            let g = parse_element(&left)?.multiply(&parse_element(&right)?);
            let r = ElementReport::new(&g)?;
            match out {
                Output::Text => Ok(format!("{}\n{}\n", r.pair, r.normal_form)),
                Output::Json => Ok(json(&r)),
                Output::Dot => Err(no_dot("multiply")),
            }
        }
        Command::PenaltyDot { element, n } => {
            let g = parse_element(&element)?;
            let r = length_with(&g, n, limits)?;
            Ok(dot::render(&r.witness, n))
        }
        Command::OracleCheck { n, radius } => {
            let ball = bfs_ball(n, radius)?;
            let mut mismatches = Vec::new();
            for (g, d) in &ball.elements {
                let l = length_with(g, n, limits)?.l_n;
                if l != *d {
                    mismatches.push(Mismatch { element: g.canonical_key(), distance: *d, formula: l });
                }
            }
            let report =
                OracleReport { n, radius, elements: ball.len(), sphere_sizes: ball.sphere_sizes(), mismatches };
            let text = match out {
                Output::Text => {
                    let mut s = format!(
                        "n={n} radius={radius} elements={} spheres={:?} mismatches={}\n",
                        report.elements,
                        report.sphere_sizes,
                        report.mismatches.len()
                    );
                    for m in &report.mismatches {
                        s.push_str(&format!("  {} distance {} formula {}\n", m.element, m.distance, m.formula));
                    }
                    s
                }
                Output::Json => json(&report),
                Output::Dot => return Err(no_dot("oracle-check")),
            };
            if report.mismatches.is_empty() {
                Ok(text)
            } else {
                Err(Failure::Property(text))
            }
        }
        Command::Experiments(e) => experiment(e, out, limits),
    }
}

fn experiment(e: Experiment, out: Output, limits: SearchLimits) -> Result<String, Failure> {
    if out == Output::Dot {
        return Err(Failure::Usage("experiments have no dot output".into()));
    }
    let (text, ok) = match e {
        Experiment::Pocket { k, n } => {
            let g = build_pocket_element(k, n)?;
            let p_n = length_with(&g, n, limits)?.p_n;
            let report = pocket_depth_at_least_with(&g, n, k, limits)?;
            let ok = report.confirmed;
            let text = match out {
                Output::Json => json(&PocketSummary { p_n, report }),
                _ => format!("p_n={p_n}\n{report}"),
            };
            (text, ok)
        }
        Experiment::Nonac { n, big_l } => {
            let r = nonac_lengths(n, big_l)?;
            let text = match out {
                Output::Json => json(&r),
                _ => format!(
                    "element {}\nl_n(g)={} l_n(g x_{n})={} l_n(g x_{n}^-1)={} holds={}\n",
                    r.element, r.l_n, r.l_n_times_x, r.l_n_times_x_inverse, r.holds
                ),
            };
            (text, r.holds)
        }
        Experiment::UpperBound { n, sample } => {
            let r = upper_bound_suite(sample.sample, &[n], sample.seed, sample.max_carets)?;
            let ok = r.violations.is_empty();
            let text = match out {
                Output::Json => json(&r),
                _ => {
                    let mut s = format!("checked={} violations={}\n", r.checked, r.violations.len());
                    for v in &r.violations {
                        s.push_str(&format!("  {v}\n"));
                    }
                    s
                }
            };
            (text, ok)
        }
        Experiment::Lemmas { n, sample } => {
            let ns: Vec<usize> = (1..=n).collect();
            let r = lemma_suites(sample.sample, &ns, sample.seed, sample.max_carets)?;
            let ok = r.passed();
            let text = match out {
                Output::Json => json(&r),
                _ => {
                    let mut s = format!(
                        "products={} step_violations={} descent_violations={}\n",
                        r.products,
                        r.step_violations.len(),
                        r.descent_violations.len()
                    );
                    for v in r.step_violations.iter().chain(&r.descent_violations) {
                        s.push_str(&format!("  n={} {} {:?}\n", v.n, v.element, v.letter));
                    }
                    s
                }
            };
            (text, ok)
        }
    };
    if ok {
        Ok(text)
    } else {
        Err(Failure::Property(text))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Property(text)) => {
            print!("{text}");
            ExitCode::from(4)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            let code = if e.is_parse() || matches!(e, Error::UnequalCarets { .. }) {
                2
            } else if e.is_resource() {
                3
            } else {
                1
            };
            ExitCode::from(code)
        }
    }
}

//! Command-line front end. Every subcommand reads networks/codes from
//! catalog names or JSON files and writes exactly one machine-readable JSON
//! document to stdout; human-oriented summaries go to stderr.
//!
//! Exit codes: 0 = success or witness found; 1 = verified negative (a code
//! fails verification, or an exhaustive search proves non-existence);
//! 2 = usage or format error; 3 = budget exceeded (gave up, no claim made).

use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{Alphabet, AlphabetSpec};
use crate::capacity;
use crate::catalog;
use crate::codec::Code;
use crate::duality;
use crate::netgraph::SumNetwork;
use crate::schemes::{self, FieldPolicy};
use crate::search::{self, SearchStatus};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser)]
#[command(
    name = "sumnet",
    version,
    about = "Sum-network coding workbench: bounds, verification, search, schemes"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Capacity report for a network.
    Bound {
        /// Catalog name or path to a network file.
        net: String,
    },
    /// Min-cut values: the overall bound or one source-terminal pair.
    Mincut {
        net: String,
        /// Evaluate a single pair instead of the full bound.
        #[arg(long, num_args = 2, value_names = ["SOURCE", "TARGET"])]
        pair: Option<Vec<String>>,
    },
    /// Verify a code file against a network.
    Verify { net: String, code: String },
    /// Search for a (k,l) code.
    Search {
        net: String,
        /// Alphabet spec: `z6`, `z2x3`, `gf4`, ...
        #[arg(long)]
        alphabet: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        /// Enumerate linear codes instead of general tables.
        #[arg(long)]
        linear: bool,
        /// Sample random linear codes instead of enumerating.
        #[arg(long, requires = "linear")]
        random: bool,
        /// Candidate budget (defaults depend on the search kind).
        #[arg(long)]
        budget: Option<u64>,
        /// Trials for --random.
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; the output is independent of this.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Construct an achievability scheme and emit the code file.
    Scheme {
        net: String,
        #[arg(long)]
        name: SchemeName,
        /// Field spec, e.g. `gf2`.
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Permit escalating to larger fields of the same characteristic.
        #[arg(long)]
        escalate: bool,
    },
    /// Emit the reverse network.
    Reverse { net: String },
    /// Transform a verified code into a code for the reverse network.
    Dual { net: String, code: String },
    /// Built-in networks.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeName {
    ThreeTerminal,
    Pairing,
    HalfMincut,
    OneTerminal,
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List the built-in networks and their known facts.
    List,
    /// Emit one catalog network as a network file.
    Show { name: String },
}

#[derive(Debug)]
struct CliError {
    message: String,
    exit: i32,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError { message: message.into(), exit: EXIT_USAGE }
    }

    fn budget(message: impl Into<String>) -> CliError {
        CliError { message: message.into(), exit: EXIT_BUDGET }
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> CliError {
        CliError::usage(e.to_string())
    }
}

/// Parses `z6`, `z2x3x4`, `gf8` style alphabet specs.
pub fn parse_alphabet_spec(text: &str) -> Result<AlphabetSpec, String> {
    let lower = text.trim().to_ascii_lowercase();
    if let Some(rest) = lower.strip_prefix("gf") {
        let order: u32 = rest.parse().map_err(|_| format!("bad field order `{rest}`"))?;
        // Factor the order as p^r.
        for p in 2..=order {
            if order.is_multiple_of(p) {
                let mut q = order;
                let mut r = 0;
                while q.is_multiple_of(p) {
                    q /= p;
                    r += 1;
                }
                if q != 1 {
                    return Err(format!("{order} is not a prime power"));
                }
                return Ok(AlphabetSpec::Field { p, r });
            }
        }
        Err(format!("bad field order `{rest}`"))
    } else if let Some(rest) = lower.strip_prefix('z') {
        let factors: Result<Vec<u32>, _> = rest.split('x').map(|f| f.parse::<u32>()).collect();
        match factors {
            Ok(f) if !f.is_empty() => Ok(AlphabetSpec::Group { factors: f }),
            _ => Err(format!("bad group spec `{text}`")),
        }
    } else {
        Err(format!(
            "unrecognized alphabet `{text}` (expected e.g. z2, z2x3, gf4)"
        ))
    }
}

fn load_network(arg: &str) -> Result<SumNetwork, CliError> {
    if let Some(net) = catalog::lookup(arg) {
        return Ok(net);
    }
    let text = std::fs::read_to_string(arg)
        .map_err(|e| CliError::usage(format!("cannot read network `{arg}`: {e}")))?;
    let net = SumNetwork::from_json(&text)
        .map_err(|e| CliError::usage(format!("cannot parse network `{arg}`: {e}")))?;
    let violations = net.validate();
    if !violations.is_empty() {
        return Err(CliError::usage(format!(
            "network `{arg}` is not well formed: {}",
            violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
        )));
    }
    Ok(net)
}

fn load_code(arg: &str) -> Result<Code, CliError> {
    let text = std::fs::read_to_string(arg)
        .map_err(|e| CliError::usage(format!("cannot read code `{arg}`: {e}")))?;
    Code::from_json(&text).map_err(|e| CliError::usage(format!("cannot parse code `{arg}`: {e}")))
}

fn load_field(spec_text: &str) -> Result<Arc<Alphabet>, CliError> {
    let spec = parse_alphabet_spec(spec_text).map_err(CliError::usage)?;
    let alphabet = Alphabet::from_spec(&spec)?;
    if !alphabet.is_field() {
        return Err(CliError::usage(format!(
            "`{spec_text}` is not a field; use a gf spec"
        )));
    }
    Ok(alphabet)
}

fn print_doc(doc: &str) {
    print!("{doc}");
}

#[derive(Serialize)]
struct PairCut {
    source: String,
    terminal: String,
    min_cut: usize,
}

#[derive(Serialize)]
struct MincutDoc {
    min_cut_bound: usize,
    pairs: Vec<PairCut>,
}

#[derive(Serialize)]
struct SinglePairDoc {
    source: String,
    target: String,
    min_cut: usize,
}

#[derive(Serialize)]
struct VerifyDoc {
    verified: bool,
    kind: &'static str,
    k: usize,
    l: usize,
    rate: String,
}

#[derive(Serialize)]
struct CatalogEntryDoc {
    name: String,
    sources: usize,
    terminals: usize,
    edges: usize,
    confidence: &'static str,
    facts: Vec<CatalogFactDoc>,
}

#[derive(Serialize)]
struct CatalogFactDoc {
    statement: String,
    provenance: String,
}

#[derive(Serialize)]
struct CatalogListDoc {
    entries: Vec<CatalogEntryDoc>,
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("document serialization");
    s.push('\n');
    s
}

fn run_command(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Bound { net } => {
            let net = load_network(&net)?;
            let report = capacity::report(&net)?;
            print_doc(&report.to_canonical_json());
            eprint!("{}", report.render_text());
            Ok(EXIT_OK)
        }
        Command::Mincut { net, pair } => {
            let net = load_network(&net)?;
            match pair {
                Some(pair) => {
                    let cut = net.min_cut(&pair[0], &pair[1])?;
                    print_doc(&pretty(&SinglePairDoc {
                        source: pair[0].clone(),
                        target: pair[1].clone(),
                        min_cut: cut,
                    }));
                    eprintln!("min-cut({}, {}) = {cut}", pair[0], pair[1]);
                    Ok(EXIT_OK)
                }
                None => {
                    let mut pairs = Vec::new();
                    for s in &net.sources {
                        for t in &net.terminals {
                            pairs.push(PairCut {
                                source: s.clone(),
                                terminal: t.clone(),
                                min_cut: net.min_cut(s, t)?,
                            });
                        }
                    }
                    let bound = net.min_cut_bound()?;
                    print_doc(&pretty(&MincutDoc { min_cut_bound: bound, pairs }));
                    eprintln!("min-cut bound = {bound}");
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Verify { net, code } => {
            let net = load_network(&net)?;
            let code = load_code(&code)?;
            let verified = code.verify(&net)?;
            let (kind, k, l) = match &code {
                Code::Linear(c) => ("linear", c.k, c.l),
                Code::Table(c) => ("table", c.k, c.l),
            };
            print_doc(&pretty(&VerifyDoc {
                verified,
                kind,
                k,
                l,
                rate: code.rate().to_string(),
            }));
            eprintln!(
                "{kind} ({k},{l}) code: {}",
                if verified { "verified" } else { "does NOT verify" }
            );
            Ok(if verified { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Search { net, alphabet, k, l, linear, random, budget, trials, seed, jobs } => {
            let net = load_network(&net)?;
            let spec = parse_alphabet_spec(&alphabet).map_err(CliError::usage)?;
            let alphabet = Alphabet::from_spec(&spec)?;
            let outcome = if random {
                let trials = trials.unwrap_or(schemes::DEFAULT_SCHEME_TRIALS);
                search::search_random_linear(&net, &alphabet, k, l, trials, seed, jobs)?
            } else if linear {
                let budget = budget.unwrap_or(search::DEFAULT_LINEAR_BUDGET);
                search::search_linear(&net, &alphabet, k, l, budget, jobs)?
            } else {
                let budget = budget.unwrap_or(search::DEFAULT_TABLE_SEARCH_BUDGET);
                search::search_table(&net, &alphabet, k, l, budget, jobs)?
            };
            print_doc(&outcome.to_canonical_json());
            let (exit, word) = match outcome.status {
                SearchStatus::Found => (EXIT_OK, "found"),
                SearchStatus::ExhaustedNone => (EXIT_NEGATIVE, "exhausted, none exists"),
                SearchStatus::BudgetExceeded => (EXIT_BUDGET, "budget exceeded"),
            };
            eprintln!(
                "search: {word} after {} candidates",
                outcome.candidates_examined
            );
            Ok(exit)
        }
        Command::Scheme { net, name, field, seed, escalate } => {
            let net = load_network(&net)?;
            let field = load_field(&field)?;
            let policy = if escalate { FieldPolicy::Escalate } else { FieldPolicy::Exact };
            let map_scheme_err = |e: schemes::SchemeError| match e {
                schemes::SchemeError::ConstructionFailed(msg) => CliError::budget(msg),
                other => CliError::usage(other.to_string()),
            };
            let (code, plan) = match name {
                SchemeName::ThreeTerminal => {
                    let (code, plan) = schemes::scheme_three_terminal(&net, &field, policy, seed)
                        .map_err(map_scheme_err)?;
                    (code, Some(plan))
                }
                SchemeName::Pairing => {
                    let (code, plan) = schemes::scheme_pairing(&net, &field, policy, seed)
                        .map_err(map_scheme_err)?;
                    (code, Some(plan))
                }
                SchemeName::HalfMincut => (
                    schemes::scheme_two_source_halfmincut(&net, &field, policy, seed)
                        .map_err(map_scheme_err)?,
                    None,
                ),
                SchemeName::OneTerminal => (
                    schemes::scheme_one_terminal(&net, &field, policy, seed)
                        .map_err(map_scheme_err)?,
                    None,
                ),
            };
            eprintln!(
                "({},{}) code over {}, rate {}",
                code.k,
                code.l,
                code.field().spec(),
                code.rate()
            );
            if let Some(plan) = plan {
                eprint!("{}", plan.summary());
            }
            print_doc(&Code::Linear(code).to_canonical_json());
            Ok(EXIT_OK)
        }
        Command::Reverse { net } => {
            let net = load_network(&net)?;
            print_doc(&net.reverse_network().to_canonical_json());
            Ok(EXIT_OK)
        }
        Command::Dual { net, code } => {
            let net = load_network(&net)?;
            let code = load_code(&code)?;
            let Code::Linear(code) = code else {
                return Err(CliError::usage("the dual transform applies to linear codes"));
            };
            let dual = match duality::dual_code(&net, &code) {
                Ok(dual) => dual,
                Err(duality::DualityError::InputNotVerified) => {
                    return Err(CliError {
                        message: "input code does not verify on the network".into(),
                        exit: EXIT_NEGATIVE,
                    })
                }
                Err(e) => return Err(CliError::usage(e.to_string())),
            };
            print_doc(&Code::Linear(dual).to_canonical_json());
            eprintln!("dual code emitted for the reverse network");
            Ok(EXIT_OK)
        }
        Command::Catalog { command } => match command {
            CatalogCommand::List => {
                let entries: Vec<CatalogEntryDoc> = catalog::entries()
                    .into_iter()
                    .map(|e| CatalogEntryDoc {
                        name: e.name,
                        sources: e.network.source_count(),
                        terminals: e.network.terminal_count(),
                        edges: e.network.edges.len(),
                        confidence: match e.confidence {
                            catalog::Confidence::Textual => "textual",
                            catalog::Confidence::Derived => "derived",
                        },
                        facts: e
                            .facts
                            .into_iter()
                            .map(|f| CatalogFactDoc {
                                statement: f.statement,
                                provenance: f.provenance,
                            })
                            .collect(),
                    })
                    .collect();
                print_doc(&pretty(&CatalogListDoc { entries }));
                Ok(EXIT_OK)
            }
            CatalogCommand::Show { name } => match catalog::lookup(&name) {
                Some(net) => {
                    print_doc(&net.to_canonical_json());
                    Ok(EXIT_OK)
                }
                None => Err(CliError::usage(format!("unknown catalog network `{name}`"))),
            },
        },
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message (also for --help/--version).
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run_command(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.exit
        }
    }
}

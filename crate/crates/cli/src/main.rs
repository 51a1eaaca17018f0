//! `dm`: command-line access to the delta-matroid library.
//!
//! Exit codes: 0 for success or an affirmative verdict, 1 for a negative
//! verdict, 2 for unusable input, 3 when the two binary tests disagree.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use delta_matroid::binary::{enumerate_minors, find_excluded_minor, find_minor, find_representation};
use delta_matroid::census::{counts, enumerate_classes_with_jobs, write_catalog, CENSUS_LIMIT};
use delta_matroid::iso::isomorphism_code;
use delta_matroid::text::{format_compact, format_dm, format_graph, parse_dm, parse_set_list, Style};
use delta_matroid::twistpoly::{characterize_monomial, make_free, make_odd_complete, twist_polynomial};
use delta_matroid::{DeltaMatroid, Error, Subset};

#[derive(Parser)]
#[command(name = "dm", version, about = "Delta-matroid operations, twist polynomials, binary tests and census")]
struct Cli {
    /// Print delta-matroids as `n:<hex>` codes instead of blocks.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a delta-matroid file.
    Check {
        file: PathBuf,
    },
    /// Apply an operation; sets are 1-based comma lists, `0` for the empty set.
    Op {
        op: OpKind,
        #[arg(long = "args", value_name = "SET")]
        args: Option<String>,
        file: PathBuf,
    },
    /// Direct sum; the second file's elements follow the first's.
    Sum {
        first: PathBuf,
        second: PathBuf,
    },
    Width {
        file: PathBuf,
    },
    /// Twist polynomial.
    Poly {
        file: PathBuf,
    },
    /// Whether the twist polynomial is a monomial.
    Monomial {
        file: PathBuf,
    },
    Binary {
        #[arg(long, value_enum, default_value_t = Method::Matrix)]
        method: Method,
        file: PathBuf,
    },
    /// Graph of a representing matrix, or NOT-BINARY.
    Graph {
        file: PathBuf,
    },
    /// Minors up to isomorphism, one code per line.
    Minors {
        file: PathBuf,
    },
    FindMinor {
        file: PathBuf,
        target: PathBuf,
    },
    /// Classes up to relabeling and twisting on `n` elements.
    Census {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    #[command(subcommand)]
    Gen(Generator),
}

#[derive(Clone, Copy, ValueEnum)]
enum OpKind {
    Twist,
    Delete,
    Contract,
    Restrict,
    Dual,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Matrix,
    Minor,
    Both,
}

#[derive(Subcommand)]
enum Generator {
    /// Even subsets of a (2k+1)-element set.
    OddComplete { k: usize },
    /// All subsets of an n-element set.
    Free { n: usize },
}

/// Result of a command: text for stdout and the exit status.
struct Outcome {
    stdout: String,
    code: u8,
}

impl Outcome {
    fn yes(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }

    fn no(stdout: String) -> Self {
        Outcome { stdout, code: 1 }
    }
}

enum Failure {
    /// Unusable input: exit 2.
    Input(String),
    /// A well-formed request with a negative answer: exit 1.
    Negative(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let read =
        if path == Path::new("-") { io::stdin().read_to_string(&mut text).map(|_| ()) } else { fs::read_to_string(path).map(|t| text = t) };
    read.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn load(path: &Path) -> Result<DeltaMatroid, Failure> {
    parse_dm(&read_input(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn style(compact: bool) -> Style {
    if compact {
        Style::Compact
    } else {
        Style::Block
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let style = style(cli.compact);
    match cli.command {
        Command::Check { file } => match parse_dm(&read_input(&file)?) {
            Ok(d) => Ok(Outcome::yes(format!("delta-matroid n={} |F|={}\n", d.n(), d.family().len()))),
            Err(e @ (Error::EmptyFamily | Error::ExchangeViolation(_))) => Ok(Outcome::no(format!("not a delta-matroid: {e}\n"))),
            Err(e) => Err(Failure::Input(format!("{}: {e}", file.display()))),
        },
        Command::Op { op, args, file } => {
            let d = load(&file)?;
            let set = match (op, args) {
                (OpKind::Dual, None) => Subset::EMPTY,
                (OpKind::Dual, Some(_)) => return Err(Failure::Input("dual takes no --args".into())),
                (_, None) => return Err(Failure::Input("--args <set> is required".into())),
                (_, Some(a)) => parse_set_list(&a, d.n())?,
            };
            let result = match op {
                OpKind::Twist => Ok(d.twist(set)),
                OpKind::Dual => Ok(d.dual()),
                OpKind::Delete => d.delete_set(set),
                OpKind::Contract => d.contract_set(set),
                OpKind::Restrict => d.restrict(set),
            };
            match result {
                Ok(r) => Ok(Outcome::yes(format_dm(&r, style))),
                Err(Error::EmptyFamily) => Err(Failure::Negative("the result has no feasible sets".into())),
                Err(e) => Err(e.into()),
            }
        }
        Command::Sum { first, second } => Ok(Outcome::yes(format_dm(&load(&first)?.direct_sum(&load(&second)?)?, style))),
        Command::Width { file } => Ok(Outcome::yes(format!("{}\n", load(&file)?.width()))),
        Command::Poly { file } => Ok(Outcome::yes(format!("{}\n", twist_polynomial(&load(&file)?)))),
        Command::Monomial { file } => {
            let d = load(&file)?;
            let poly = twist_polynomial(&d);
            if !poly.is_monomial() {
                return Ok(Outcome::no(format!("not monomial: {poly}\n")));
            }
            let mut out = format!("monomial: {poly}\n");
            if d.is_normal() {
                if let Some(p) = characterize_monomial(&d)? {
                    write!(out, "free: {}\nblocks:", p.free_part).unwrap();
                    for b in &p.odd_blocks {
                        write!(out, " {b}").unwrap();
                    }
                    out.push('\n');
                }
            }
            Ok(Outcome::yes(out))
        }
        Command::Binary { method, file } => binary(&load(&file)?, method),
        Command::Graph { file } => {
            let d = load(&file)?;
            match find_representation(&d) {
                Some(w) => {
                    eprintln!("twist: {}", w.twist_set);
                    Ok(Outcome::yes(format_graph(&w.matrix)))
                }
                None => Ok(Outcome::no("NOT-BINARY\n".into())),
            }
        }
        Command::Minors { file } => {
            let mut out = String::new();
            for m in enumerate_minors(&load(&file)?)? {
                writeln!(out, "{}", format_compact(&isomorphism_code(&m))).unwrap();
            }
            Ok(Outcome::yes(out))
        }
        Command::FindMinor { file, target } => {
            let (d, target) = (load(&file)?, load(&target)?);
            match find_minor(&d, &target) {
                Some(w) => {
                    let relabel: Vec<String> = w.relabeling.iter().map(|t| (t + 1).to_string()).collect();
                    Ok(Outcome::yes(format!("twist: {}\ndeleted: {}\nrelabel: {}\n", w.twist_set, w.deleted, relabel.join(" "))))
                }
                None => Ok(Outcome::no("no minor\n".into())),
            }
        }
        Command::Census { n, out, jobs } => {
            if n > CENSUS_LIMIT {
                return Err(Failure::Input(format!("census supports n <= {CENSUS_LIMIT}")));
            }
            let records = enumerate_classes_with_jobs(n, jobs)?;
            let c = counts(&records);
            let summary = format!("n={n} classes={} binary={} monomial={}\n", c.classes, c.binary, c.monomial);
            match out {
                Some(path) => {
                    let file = fs::File::create(&path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    write_catalog(n, &records, io::BufWriter::new(file)).map_err(|e| Failure::Input(e.to_string()))?;
                    Ok(Outcome::yes(summary))
                }
                None => {
                    let mut buf = Vec::new();
                    write_catalog(n, &records, &mut buf).expect("writing to memory");
                    eprint!("{summary}");
                    Ok(Outcome::yes(String::from_utf8(buf).expect("catalog is UTF-8")))
                }
            }
        }
        Command::Gen(Generator::OddComplete { k }) => Ok(Outcome::yes(format_dm(&make_odd_complete(k)?, style))),
        Command::Gen(Generator::Free { n }) => Ok(Outcome::yes(format_dm(&make_free(n)?, style))),
    }
}

fn binary(d: &DeltaMatroid, method: Method) -> Result<Outcome, Failure> {
    let by_matrix = (method != Method::Minor).then(|| find_representation(d).is_some());
    let by_minor = match method {
        Method::Matrix => None,
        _ => Some(find_excluded_minor(d)?),
    };
    let verdict = match (by_matrix, &by_minor) {
        (Some(m), Some(x)) if m != x.is_none() => {
            return Ok(Outcome {
                stdout: format!("methods disagree: matrix={} minor={}\n", verdict_word(m), verdict_word(x.is_none())),
                code: 3,
            })
        }
        (Some(m), _) => m,
        (None, Some(x)) => x.is_none(),
        (None, None) => unreachable!("at least one method runs"),
    };
    if verdict {
        return Ok(Outcome::yes("BINARY\n".into()));
    }
    let mut out = String::from("NOT-BINARY\n");
    if let Some(Some(hit)) = by_minor {
        writeln!(out, "excluded minor {}: twist {} delete {}", hit.index + 1, hit.witness.twist_set, hit.witness.deleted).unwrap();
    }
    Ok(Outcome::no(out))
}

fn verdict_word(binary: bool) -> &'static str {
    if binary {
        "binary"
    } else {
        "not-binary"
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.code)
        }
        Err(Failure::Negative(msg)) => {
            eprintln!("dm: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("dm: {msg}");
            ExitCode::from(2)
        }
    }
}

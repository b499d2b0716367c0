//! The `indep` command-line tool.
//!
//! Exit status: 0 for an affirmative verdict (separated, derivable, I-map,
//! check passed), 1 for a negative one, 2 for usage or parse errors, 3 when a
//! resource limit refuses the input.

pub mod args;
pub mod checks;

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;
use indep_core::axioms::{closure_with_limit, derive_with_limit};
use indep_core::protocol::witness_protocol;
use indep_core::separation::{
    dsep, dsep_model_with_limit, idsep, is_imap, undirected_minimal_imap, usep, DsepOracle,
};
use indep_core::text::{self, Graph};
use indep_core::{dot, DependencyModel, Error, IndependenceOracle, Mode, StratifiedProtocol, Universe};

use args::{Cli, Command, OracleSource};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

/// A failure with the exit status it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::LimitExceeded { .. } => EXIT_LIMIT,
            Error::NotAffirmed(_) => EXIT_NO,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<i32, Failure>;

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

impl Io<'_> {
    /// Reads a file, or stdin for `-`.
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let res = if path == Path::new("-") {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map(|_| s)
        } else {
            fs::read_to_string(path)
        };
        res.map_err(|e| Failure {
            code: EXIT_USAGE,
            message: format!("{}: {e}", path.display()),
        })
    }

    /// Reads and parses, prefixing errors with the file name.
    fn load<T>(&mut self, path: &Path, parse: impl Fn(&str) -> Result<T, Error>) -> Result<T, Failure> {
        let content = self.read(path)?;
        parse(&content).map_err(|e| {
            let mut f = Failure::from(e);
            f.message = format!("{}: {}", path.display(), f.message);
            f
        })
    }
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    return EXIT_YES;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(stderr, "{e}");
            return code;
        }
    };
    let mut io = Io { stdin, out: stdout };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn verdict(out: &mut dyn Write, yes: bool, yes_word: &str, no_word: &str) -> Outcome {
    writeln!(out, "{}", if yes { yes_word } else { no_word })?;
    Ok(if yes { EXIT_YES } else { EXIT_NO })
}

fn parse_query(universe: &Universe, literal: &str, flag: &str) -> Result<indep_core::Triplet, Failure> {
    text::parse_triplet(universe, literal).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("{flag} {literal:?}: {e}"),
    })
}

/// The oracle named by `--graph` / `--model`.
enum Oracle {
    Dag(indep_core::Dag),
    Model(DependencyModel),
}

impl Oracle {
    fn load(io: &mut Io, source: &OracleSource, mode: Mode, limit: usize) -> Result<Oracle, Failure> {
        match (&source.graph, &source.model) {
            (Some(g), _) => Ok(Oracle::Dag(io.load(g, text::parse_dag)?)),
            (None, Some(m)) => {
                let m = io.load(m, text::parse_model)?;
                Ok(Oracle::Model(closure_with_limit(&m, mode, limit)?))
            }
            (None, None) => unreachable!("clap requires one source"),
        }
    }

    fn with<R>(&self, f: impl FnOnce(&dyn IndependenceOracle) -> R) -> R {
        match self {
            Oracle::Dag(g) => f(&DsepOracle::new(g)),
            Oracle::Model(m) => f(m),
        }
    }
}

/// `g` relabelled onto `universe`, matching variables by name.
fn reindex(g: &indep_core::Dag, universe: &std::sync::Arc<Universe>) -> Result<indep_core::Dag, Failure> {
    let mismatch = || Failure {
        code: EXIT_USAGE,
        message: "candidate graph and model declare different variables".into(),
    };
    if g.len() != universe.len() {
        return Err(mismatch());
    }
    let map = |v: indep_core::VarId| universe.id(g.universe().name(v)).map_err(|_| mismatch());
    let edges = g
        .edges()
        .into_iter()
        .map(|(p, c)| Ok((map(p)?, map(c)?)))
        .collect::<Result<Vec<_>, Failure>>()?;
    let det = g.deterministic().iter().map(map).collect::<Result<indep_core::VarSet, Failure>>()?;
    Ok(indep_core::Dag::from_edges(universe.clone(), &edges, det)?)
}

fn dispatch(command: Command, io: &mut Io) -> Outcome {
    match command {
        Command::Closure { model, mode, limit } => {
            let m = io.load(&model, text::parse_model)?;
            let c = closure_with_limit(&m, mode.into(), limit)?;
            write!(io.out, "{}", text::write_model(&c))?;
            Ok(EXIT_YES)
        }
        Command::Derive {
            model,
            target,
            mode,
            limit,
        } => {
            let m = io.load(&model, text::parse_model)?;
            let target = parse_query(m.universe(), &target, "--target")?;
            match derive_with_limit(&m, &target, mode.into(), limit)? {
                Some(trace) => {
                    let steps = trace.steps.len();
                    writeln!(io.out, "DERIVABLE in {steps} step{}", if steps == 1 { "" } else { "s" })?;
                    for (i, step) in trace.steps.iter().enumerate() {
                        writeln!(io.out, "{}. {}", i + 1, step.display(m.universe()))?;
                    }
                    Ok(EXIT_YES)
                }
                None => verdict(io.out, false, "", "NOT DERIVABLE"),
            }
        }
        Command::Dsep { graph, query } => {
            let g = io.load(&graph, text::parse_dag)?;
            let q = parse_query(g.universe(), &query, "--query")?;
            verdict(io.out, dsep(&g, &q)?, "SEPARATED", "NOT SEPARATED")
        }
        Command::Idsep { graph, query } => {
            let g = io.load(&graph, text::parse_dag)?;
            let q = parse_query(g.universe(), &query, "--query")?;
            verdict(io.out, idsep(&g, &q)?, "SEPARATED", "NOT SEPARATED")
        }
        Command::Usep { graph, query } => {
            let g = io.load(&graph, text::parse_undirected)?;
            let q = parse_query(g.universe(), &query, "--query")?;
            verdict(io.out, usep(&g, &q)?, "SEPARATED", "NOT SEPARATED")
        }
        Command::Compile { protocol } => {
            let p = io.load(&protocol, text::parse_protocol)?;
            let g = p.compile()?;
            write!(io.out, "{}", text::write_dag(&g))?;
            Ok(EXIT_YES)
        }
        Command::Extract { graph } => {
            let g = io.load(&graph, text::parse_dag)?;
            write!(io.out, "{}", text::write_protocol(&StratifiedProtocol::extract(&g)))?;
            Ok(EXIT_YES)
        }
        Command::Triplets { protocol } => {
            let p = io.load(&protocol, text::parse_protocol)?;
            let ts = p.triplets()?;
            write!(io.out, "{}", text::write_triplets(p.universe(), &ts))?;
            Ok(EXIT_YES)
        }
        Command::MinimalImap { source, mode, limit } => {
            let oracle = Oracle::load(io, &source, mode.into(), limit)?;
            let u = oracle.with(|o| undirected_minimal_imap(o))?;
            write!(io.out, "{}", text::write_undirected(&u))?;
            Ok(EXIT_YES)
        }
        Command::Witness {
            source,
            target,
            mode,
            limit,
        } => {
            let oracle = Oracle::load(io, &source, mode.into(), limit)?;
            let p = oracle.with(|o| -> Result<_, Failure> {
                let t = parse_query(o.universe(), &target, "--target")?;
                Ok(witness_protocol(o, &t.canonical())?)
            })?;
            write!(io.out, "{}", text::write_protocol(&p))?;
            Ok(EXIT_YES)
        }
        Command::VerifyImap {
            graph,
            protocol,
            model,
            mode,
            limit,
        } => {
            let candidate = match (graph, protocol) {
                (Some(g), _) => io.load(&g, text::parse_dag)?,
                (None, Some(p)) => io.load(&p, text::parse_protocol)?.compile()?,
                (None, None) => unreachable!("clap requires a candidate"),
            };
            let mut target = io.load(&model, text::parse_model)?;
            let candidate = reindex(&candidate, target.universe())?;
            if let Some(mode) = mode {
                target = closure_with_limit(&target, mode.into(), limit)?;
            }
            let separated = dsep_model_with_limit(&candidate, limit)?;
            match is_imap(&separated, &target)? {
                Ok(()) => verdict(io.out, true, "I-MAP", ""),
                Err(t) => {
                    writeln!(io.out, "NOT I-MAP")?;
                    writeln!(io.out, "counterexample: indep {}", t.display(target.universe()))?;
                    Ok(EXIT_NO)
                }
            }
        }
        Command::Check { name, n, trials, seed } => {
            let results = checks::run_check(name, n, trials, seed)?;
            let mut passed = 0;
            for (i, trial) in results.iter().enumerate() {
                match &trial.failure {
                    None => {
                        passed += 1;
                        writeln!(io.out, "trial {}: PASS", i + 1)?;
                    }
                    Some(repro) => {
                        writeln!(io.out, "trial {}: FAIL (trial seed {})", i + 1, trial.seed)?;
                        for line in repro.lines() {
                            writeln!(io.out, "  {line}")?;
                        }
                    }
                }
            }
            let status = if passed == results.len() { "PASS" } else { "FAIL" };
            writeln!(
                io.out,
                "{} n={n} seed={seed}: {passed}/{} {status}",
                name.as_str(),
                results.len()
            )?;
            Ok(if passed == results.len() { EXIT_YES } else { EXIT_NO })
        }
        Command::ExportDot { graph } => {
            let out = match io.load(&graph, text::parse_graph)? {
                Graph::Directed(g) => dot::dag_to_dot(&g),
                Graph::Undirected(u) => dot::undirected_to_dot(&u),
            };
            write!(io.out, "{out}")?;
            Ok(EXIT_YES)
        }
    }
}

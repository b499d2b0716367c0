//! Golden CLI cases shared by the golden and acceptance test targets.

use std::fs;
use std::path::{Path, PathBuf};

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], exit: i32) -> Case {
    Case { name, args, exit }
}

pub const CASES: &[Case] = &[
    // DOT export
    case("dot_chain", &["export-dot", "--graph", "tests/fixtures/chain.dag"], 0),
    case("dot_collider", &["export-dot", "--graph", "tests/fixtures/collider.dag"], 0),
    case("dot_collider_plus", &["export-dot", "--graph", "tests/fixtures/collider_plus.dag"], 0),
    case("dot_detfork", &["export-dot", "--graph", "tests/fixtures/detfork.dag"], 0),
    case("dot_pair", &["export-dot", "--graph", "tests/fixtures/pair.ug"], 0),
    // closure listings
    case("closure_decomposable", &["closure", "--model", "tests/fixtures/decomposable.ind", "--mode", "semigraphoid"], 0),
    case("closure_contractible", &["closure", "--model", "tests/fixtures/contractible.ind"], 0),
    case("closure_limit", &["closure", "--model", "tests/fixtures/decomposable.ind", "--limit", "3"], 3),
    // derivation traces
    case("derive_weak_union", &["derive", "--model", "tests/fixtures/decomposable.ind", "--target", "x | z,y | w"], 0),
    case("derive_contraction", &["derive", "--model", "tests/fixtures/contractible.ind", "--target", "x | z,w | y"], 0),
    case("derive_premise", &["derive", "--model", "tests/fixtures/decomposable.ind", "--target", "y,w | z | x"], 0),
    case("derive_missing", &["derive", "--model", "tests/fixtures/decomposable.ind", "--target", "x | - | y"], 1),
    // separation verdicts on the shared fixtures
    case("dsep_chain_given_b", &["dsep", "--graph", "tests/fixtures/chain.dag", "--query", "a | b | c"], 0),
    case("dsep_chain_marginal", &["dsep", "--graph", "tests/fixtures/chain.dag", "--query", "a | - | c"], 1),
    case("dsep_collider_marginal", &["dsep", "--graph", "tests/fixtures/collider.dag", "--query", "a | - | b"], 0),
    case("dsep_collider_given_c", &["dsep", "--graph", "tests/fixtures/collider.dag", "--query", "a | c | b"], 1),
    case("dsep_collider_plus_given_d", &["dsep", "--graph", "tests/fixtures/collider_plus.dag", "--query", "a | d | b"], 1),
    case("dsep_detfork", &["dsep", "--graph", "tests/fixtures/detfork.dag", "--query", "x | w | y"], 1),
    case("idsep_detfork", &["idsep", "--graph", "tests/fixtures/detfork.dag", "--query", "x | w | y"], 0),
    case("idsep_detfork_marginal", &["idsep", "--graph", "tests/fixtures/detfork.dag", "--query", "x | - | y"], 1),
    case("usep_pair", &["usep", "--graph", "tests/fixtures/pair.ug", "--query", "a | - | b"], 1),
    // protocols
    case("compile_chain", &["compile", "--protocol", "tests/fixtures/chain.prot"], 0),
    case("extract_collider", &["extract", "--graph", "tests/fixtures/collider.dag"], 0),
    case("triplets_chain", &["triplets", "--protocol", "tests/fixtures/chain.prot"], 0),
    case("witness_chain", &["witness", "--graph", "tests/fixtures/chain.dag", "--target", "a | b | c"], 0),
    case("witness_refused", &["witness", "--graph", "tests/fixtures/chain.dag", "--target", "a | - | c"], 1),
    case("witness_model", &["witness", "--model", "tests/fixtures/decomposable.ind", "--target", "x | z | y"], 0),
    case("minimal_imap_chain", &["minimal-imap", "--graph", "tests/fixtures/chain.dag"], 0),
    case("minimal_imap_collider_plus", &["minimal-imap", "--graph", "tests/fixtures/collider_plus.dag"], 0),
    case("verify_imap_chain", &["verify-imap", "--protocol", "tests/fixtures/chain.prot", "--model", "tests/fixtures/chain.ind"], 0),
    case("verify_imap_collider", &["verify-imap", "--graph", "tests/fixtures/collider.dag", "--model", "tests/fixtures/chain.ind"], 1),
    // checks
    case("check_protocol_closure", &["check", "corollary1", "--n", "4", "--trials", "50", "--seed", "7"], 0),
    case("check_oracle_eq", &["check", "oracle-eq", "--n", "8", "--trials", "100", "--seed", "1"], 0),
    case("check_limit", &["check", "corollary1", "--n", "20", "--trials", "5", "--seed", "7"], 3),
    // errors
    case("parse_error", &["dsep", "--graph", "tests/fixtures/bad_edge.dag", "--query", "a | - | b"], 2),
    case("bad_query", &["dsep", "--graph", "tests/fixtures/chain.dag", "--query", "a | b"], 2),
    case("unknown_flag", &["dsep", "--graph", "tests/fixtures/chain.dag", "--query", "a | b | c", "--fast"], 2),
];

pub struct Output {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    /// Exit code, stdout and stderr in one comparable document.
    pub fn render(&self) -> String {
        format!("exit {}\n--- stdout\n{}--- stderr\n{}", self.exit, self.stdout, self.stderr)
    }
}

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Runs the CLI in-process from the crate directory with the given stdin.
pub fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    std::env::set_current_dir(crate_dir()).unwrap();
    let mut argv = vec!["indep"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let exit = indep_cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Output {
        exit,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

pub fn run(args: &[&str]) -> Output {
    run_with_stdin(args, "")
}

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests/golden").join(format!("{name}.out"))
}

/// Compares a case against its golden file and against a second run.
/// With `UPDATE_GOLDEN=1` the golden file is rewritten instead.
pub fn check_case(case: &Case) -> Result<(), String> {
    let first = run(case.args);
    let second = run(case.args);
    let rendered = first.render();
    if rendered != second.render() {
        return Err(format!("{}: output differs between runs", case.name));
    }
    if first.exit != case.exit {
        return Err(format!("{}: exit {} (expected {})\n{rendered}", case.name, first.exit, case.exit));
    }
    let path = golden_path(case.name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &rendered).unwrap();
        return Ok(());
    }
    let expected = read(&path)?;
    if expected != rendered {
        return Err(format!(
            "{}: output differs from {}\n--- expected\n{expected}--- actual\n{rendered}",
            case.name,
            path.display()
        ));
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

//! Command-line front end. [`run`] never panics on bad input and never
//! touches the process state, so it can be driven from tests directly.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cocycle::{
    find_coboundary, permute_kappa, product_sign_counterexample, verify_table, Bits,
    CocycleTable, CocycleViolation, Permutation,
};
use crate::error::Error;
use crate::fgab::{direct_limit_stationary, FgAbGroup, FgAbHom, Presentation};
use crate::gallery::run_gallery;
use crate::gradedk::{
    clifford_kgr, cuntz_kgr, inner_potential, kgr_graph, kgr_matrix, pv_solve, shift_cl1,
    GradedKPair, PvFile,
};
use crate::pgraph::{
    decompose, graph_checks, validate_skeleton, ActionFile, DeltaLabeling, FiniteCategoryTable,
    GraphFile, KGraphFile, OneGraph,
};
use crate::zmat::{snf, ZMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "kgr", version, about = "Graded K-theory of graph algebras and P-graph tools")]
struct Cli {
    /// Evaluate formulas even when their hypotheses fail.
    #[arg(long, global = true)]
    force: bool,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Print Smith normal form witnesses U, D, V.
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// K^gr of a graph file with delta labels.
    Kgr { graph: PathBuf },
    /// Ungraded K-theory (delta ignored).
    Ungraded { graph: PathBuf },
    /// Closed form for the bouquet with P odd and Q even loops.
    Cuntz {
        #[arg(long)]
        odd: u64,
        #[arg(long)]
        even: u64,
    },
    /// K^gr of the Clifford algebra Cl_n.
    Clifford { n: u64 },
    /// Tensor a pair (K0, K1) with Cl_1, e.g. `shift "Z/2" 0`.
    Shift { k0: String, k1: String },
    /// Graded Pimsner-Voiculescu short exact sequences.
    Pv { problem: PathBuf },
    /// Smith normal form of a matrix file.
    Snf { matrix: PathBuf },
    /// Stationary direct limit of {"group": presentation, "map": matrix}.
    Limit { problem: PathBuf },
    /// Check the 2-cocycle identity on a Z/2-valued table.
    CocycleVerify(CocycleVerifyArgs),
    /// Search for b with c1 = c2 * delta(b).
    Coboundary(CoboundaryArgs),
    /// Product sign factorisation for (N^k x Z_2^a) x (N^l x Z_2^b).
    Product { k: usize, a: usize, l: usize, b: usize },
    /// Split a finite category table into a k-graph and an action.
    Decompose { table: PathBuf },
    /// Look for a vertex potential implementing the grading.
    CheckInner { graph: PathBuf },
    /// Factorisation-square and cube checks for a k-graph file.
    Validate { kgraph: PathBuf },
    /// Run the worked examples.
    Gallery,
}

#[derive(Args, Debug)]
struct CocycleVerifyArgs {
    table: Option<PathBuf>,
    /// Use kappa on Z_2^L instead of a file.
    #[arg(long, value_name = "L", conflicts_with = "table")]
    kappa: Option<usize>,
}

#[derive(Args, Debug)]
struct CoboundaryArgs {
    c1: Option<PathBuf>,
    c2: Option<PathBuf>,
    /// Compare kappa on Z_2^L with its permuted form.
    #[arg(long, value_name = "L", conflicts_with_all = ["c1", "c2"])]
    kappa: Option<usize>,
    /// One-based permutation for --kappa, e.g. 2,1,3.
    #[arg(long, value_delimiter = ',', requires = "kappa")]
    perm: Vec<usize>,
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
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
}

/// A failure already carrying its exit code and message.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::HypothesisViolated(_) => EXIT_HYPOTHESIS,
            _ => EXIT_INPUT,
        };
        let mut message = e.to_string();
        if code == EXIT_HYPOTHESIS {
            message.push_str(" (use --force to evaluate anyway)");
        }
        Failure { code, message }
    }
}

fn input_error(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

type Run = std::result::Result<Outcome, Failure>;

/// Parse `argv` (program name first) and execute.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match dispatch(&cli) {
        Ok(o) => o,
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> std::result::Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: crate::Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn render<T: Serialize>(cli: &Cli, v: &T, text: impl FnOnce() -> String) -> String {
    if cli.json {
        to_json(v)
    } else {
        text()
    }
}

fn snf_text(m: &ZMatrix) -> String {
    let d = snf(m);
    format!("U =\n{}\nD =\n{}\nV =\n{}\n", d.u, d.d, d.v)
}

fn dispatch(cli: &Cli) -> Run {
    match &cli.command {
        Command::Kgr { graph } => graph_k(cli, graph, true),
        Command::Ungraded { graph } => graph_k(cli, graph, false),
        Command::Cuntz { odd, even } => {
            let k = cuntz_kgr(*odd, *even)?;
            Ok(Outcome::ok(render(cli, &k, || format!("{k}\n"))))
        }
        Command::Clifford { n } => {
            let k = clifford_kgr(*n);
            Ok(Outcome::ok(render(cli, &k, || format!("{k}\n"))))
        }
        Command::Shift { k0, k1 } => {
            let parse = |s: &str| {
                s.parse::<FgAbGroup>()
                    .map_err(|e| input_error(format!("cannot read group {s:?}: {e}")))
            };
            let k = shift_cl1(&GradedKPair::new(parse(k0)?, parse(k1)?));
            Ok(Outcome::ok(render(cli, &k, || format!("{k}\n"))))
        }
        Command::Pv { problem } => {
            let file: PvFile = read_json(problem)?;
            let p = in_file(problem, file.into_problem())?;
            let sol = pv_solve(&p)?;
            let mut out = render(cli, &sol, || format!("{sol}\n"));
            if !cli.json {
                for (j, ext) in [(0, &sol.k0), (1, &sol.k1)] {
                    if ext.resolved.is_none() || cli.verbose {
                        let _ = writeln!(
                            out,
                            "K{j}^gr: 0 -> {} -> K{j}^gr -> {} -> 0 ({})",
                            ext.sub, ext.quot, ext.split_reason
                        );
                    }
                }
            }
            Ok(Outcome::ok(out))
        }
        Command::Snf { matrix } => {
            let m: ZMatrix = read_json(matrix)?;
            let d = snf(&m);
            let out = render(cli, &d, || {
                let diag: Vec<String> = d.diagonal().iter().map(ToString::to_string).collect();
                let mut s = format!("rank = {}\ndiagonal = [{}]\n", d.rank(), diag.join(", "));
                if cli.verbose {
                    s.push_str(&snf_text(&m));
                }
                s
            });
            Ok(Outcome::ok(out))
        }
        Command::Limit { problem } => {
            #[derive(Deserialize)]
            struct LimitFile {
                group: Presentation,
                map: ZMatrix,
            }
            let file: LimitFile = read_json(problem)?;
            let f = in_file(problem, FgAbHom::endo(&file.group, file.map))?;
            let c = in_file(problem, direct_limit_stationary(&file.group, &f))?;
            Ok(Outcome::ok(render(cli, &c, || format!("{c}\n"))))
        }
        Command::CocycleVerify(args) => cocycle_verify(cli, args),
        Command::Coboundary(args) => coboundary(cli, args),
        Command::Product { k, a, l, b } => {
            if k + a + l + b > 12 {
                return Err(input_error(format!(
                    "total dimension {} is too large for an exhaustive check (at most 12)",
                    k + a + l + b
                )));
            }
            let bad = product_sign_counterexample((*k, *a), (*l, *b));
            let v = json!({
                "holds": bad.is_none(),
                "counterexample": bad.map(|(x, y)| [x.coords(), y.coords()]),
            });
            let out = render(cli, &v, || match bad {
                None => format!(
                    "product sign identity holds for (N^{k} x Z_2^{a}) x (N^{l} x Z_2^{b})\n"
                ),
                Some((x, y)) => format!("product sign identity fails at x = {x}, y = {y}\n"),
            });
            Ok(Outcome::ok(out))
        }
        Command::Decompose { table } => {
            let t: FiniteCategoryTable = read_json(table)?;
            let d = in_file(table, decompose(&t))?;
            let p = &d.presentation;
            let kgraph = KGraphFile::from_skeleton(p.skeleton());
            let action = ActionFile::from_action(p.skeleton(), p.action());
            let v = json!({ "kgraph": kgraph, "action": action });
            let out = render(cli, &v, || {
                let s = p.skeleton();
                let mut o = format!(
                    "{}-graph with {} vertices, {} edges, {} squares; F = Z_2^{}\n",
                    p.k(),
                    s.vertices().len(),
                    s.edges().len(),
                    s.squares().len(),
                    p.l()
                );
                for (i, g) in action.generators.iter().enumerate() {
                    let moved: Vec<String> = g
                        .vertices
                        .iter()
                        .chain(&g.edges)
                        .filter(|(a, b)| a != b)
                        .map(|(a, b)| format!("{a}->{b}"))
                        .collect();
                    let shown = if moved.is_empty() {
                        "identity".to_string()
                    } else {
                        moved.join(" ")
                    };
                    let _ = writeln!(o, "generator {}: {shown}", i + 1);
                }
                o
            });
            Ok(Outcome::ok(out))
        }
        Command::CheckInner { graph } => {
            let (g, d) = read_graph(graph)?;
            let eps = in_file(graph, inner_potential(&g, &d))?;
            let named = eps.as_ref().map(|e| {
                g.vertices()
                    .iter()
                    .cloned()
                    .zip(e.iter().copied())
                    .collect::<std::collections::BTreeMap<String, u8>>()
            });
            let v = json!({ "inner": named.is_some(), "potential": named });
            let out = render(cli, &v, || match &eps {
                Some(e) => {
                    let parts: Vec<String> = g
                        .vertices()
                        .iter()
                        .zip(e)
                        .map(|(v, x)| format!("{v}:{x}"))
                        .collect();
                    format!("inner: eps = {}\n", parts.join(", "))
                }
                None => "not inner: no vertex potential exists\n".to_string(),
            });
            Ok(Outcome::ok(out))
        }
        Command::Validate { kgraph } => {
            let file: KGraphFile = read_json(kgraph)?;
            let s = in_file(kgraph, file.into_skeleton())?;
            let diag = validate_skeleton(&s);
            if diag.is_valid() {
                Ok(Outcome::ok(render(cli, &diag, || "valid\n".to_string())))
            } else {
                let mut message = format!("{}: invalid k-graph", kgraph.display());
                for v in &diag.violations {
                    let _ = write!(message, "\n  {v}");
                }
                Err(Failure {
                    code: EXIT_INPUT,
                    message,
                })
            }
        }
        Command::Gallery => {
            let mut out = String::new();
            let mut all = true;
            for e in run_gallery() {
                let (mark, note) = match &e.outcome {
                    Ok(true) => ("PASS", String::new()),
                    Ok(false) => ("FAIL", String::new()),
                    Err(err) => ("FAIL", format!(" ({err})")),
                };
                all &= mark == "PASS";
                let _ = writeln!(out, "{mark} {}{note}", e.name);
            }
            Ok(Outcome {
                code: if all { EXIT_OK } else { EXIT_FAILED },
                stdout: out,
                stderr: String::new(),
            })
        }
    }
}

fn read_graph(path: &Path) -> std::result::Result<(OneGraph, DeltaLabeling), Failure> {
    let file: GraphFile = read_json(path)?;
    in_file(path, file.into_parts())
}

fn graph_k(cli: &Cli, path: &Path, graded: bool) -> Run {
    let (g, mut d) = read_graph(path)?;
    if !graded {
        d = DeltaLabeling::constant(&g, 0);
    }
    let k = in_file(path, kgr_graph(&g, &d, cli.force))?;
    let checks = graph_checks(&g);
    let outside = !(checks.no_sources && checks.no_sinks);
    let mut out = Outcome::ok(render(cli, &k, || format!("{k}\n")));
    if cli.force && outside {
        let note = "note: formula applied outside stated hypotheses (the graph has sources or sinks)\n";
        if cli.json {
            out.stderr.push_str(note);
        } else {
            out.stdout.push_str(note);
        }
    }
    if cli.verbose {
        let m = in_file(path, kgr_matrix(&g, &d))?;
        let text = format!("1 - A^t =\n{m}\n{}", snf_text(&m));
        if cli.json {
            out.stderr.push_str(&text);
        } else {
            out.stdout.push_str(&text);
        }
    }
    Ok(out)
}

fn cocycle_verify(cli: &Cli, args: &CocycleVerifyArgs) -> Run {
    let table = match (&args.table, args.kappa) {
        (Some(p), None) => read_json::<CocycleTable>(p)?,
        (None, Some(l)) if l <= 6 => CocycleTable::kappa(l),
        (None, Some(l)) => {
            return Err(input_error(format!("--kappa {l} is too large (at most 6)")))
        }
        _ => return Err(input_error("give a table file or --kappa L".into())),
    };
    let check = verify_table(&table);
    let bad = check.counterexample.as_ref().map(|v| match v {
        CocycleViolation::Normalisation { arrow } => {
            json!({ "kind": "normalisation", "element": arrow.coords() })
        }
        CocycleViolation::Identity { triple: (a, b, c) } => {
            json!({ "kind": "identity", "triple": [a.coords(), b.coords(), c.coords()] })
        }
    });
    let v = json!({ "holds": check.holds(), "checked": check.checked, "counterexample": bad });
    let out = render(cli, &v, || match &check.counterexample {
        None => format!(
            "2-cocycle identity holds on Z_2^{} ({} triples checked)\n",
            table.l(),
            check.checked
        ),
        Some(CocycleViolation::Normalisation { arrow }) => {
            format!("not normalised: c(0, {arrow}) or c({arrow}, 0) is nonzero\n")
        }
        Some(CocycleViolation::Identity { triple: (a, b, c) }) => {
            format!("2-cocycle identity fails at ({a}, {b}, {c})\n")
        }
    });
    Ok(Outcome::ok(out))
}

fn coboundary(cli: &Cli, args: &CoboundaryArgs) -> Run {
    let (c1, c2) = match (&args.c1, &args.c2, args.kappa) {
        (Some(a), Some(b), None) => (read_json::<CocycleTable>(a)?, read_json::<CocycleTable>(b)?),
        (None, None, Some(l)) => {
            if l > 4 {
                return Err(Error::SearchSpaceTooLarge(l).into());
            }
            let perm = if args.perm.is_empty() {
                Permutation::identity(l)
            } else {
                Permutation::from_one_based(&args.perm)?
            };
            let k = CocycleTable::kappa(l);
            let ks = permute_kappa(&k, &perm)?;
            (k, ks)
        }
        _ => return Err(input_error("give two table files or --kappa L".into())),
    };
    if c1.l() != c2.l() {
        return Err(Error::LengthMismatch {
            left: c1.l(),
            right: c2.l(),
        }
        .into());
    }
    let l = c1.l();
    let b = find_coboundary(&c1, &c2, l)?;
    let out = render(cli, &json!({ "found": b.is_some(), "b": b }), || match &b {
        None => "no coboundary relates the two cocycles\n".to_string(),
        Some(b) => {
            let parts: Vec<String> = Bits::all(l)
                .map(|m| format!("{m}: {}", b.sign(&m)))
                .collect();
            format!("b = {{{}}}\n", parts.join(", "))
        }
    });
    Ok(Outcome::ok(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("kgr").chain(args.iter().copied()))
    }

    #[test]
    fn closed_forms() {
        assert_eq!(go(&["clifford", "3"]).stdout, "K0^gr = 0, K1^gr = Z\n");
        assert_eq!(
            go(&["cuntz", "--odd", "2", "--even", "0"]).stdout,
            "K0^gr = Z/3, K1^gr = 0\n"
        );
        assert_eq!(
            go(&["shift", "Z/2", "0"]).stdout,
            "K0^gr = 0, K1^gr = Z/2\n"
        );
    }

    #[test]
    fn usage_errors_exit_two() {
        let o = go(&["cuntz", "--odd", "x"]);
        assert_eq!(o.code, EXIT_INPUT);
        assert!(o.stdout.is_empty());
        assert_eq!(go(&[]).code, EXIT_INPUT);
    }

    #[test]
    fn missing_file_named() {
        let o = go(&["kgr", "/nonexistent/g.json"]);
        assert_eq!(o.code, EXIT_INPUT);
        assert!(o.stderr.contains("/nonexistent/g.json"));
    }

    #[test]
    fn kappa_flags() {
        let o = go(&["cocycle-verify", "--kappa", "3"]);
        assert!(o.stdout.starts_with("2-cocycle identity holds"), "{o:?}");
        let o = go(&["coboundary", "--kappa", "3", "--perm", "2,1,3"]);
        assert!(o.stdout.starts_with("b = {"), "{o:?}");
        let o = go(&["coboundary", "--kappa", "5"]);
        assert_eq!(o.code, EXIT_INPUT);
    }
}

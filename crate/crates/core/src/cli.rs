//! Command-line front end.
//!
//! One binary, eight subcommands. Every command resolves `-a` first against the
//! builtin table and then as a definition-file path, applies the
//! `ORECALC_MAX_REWRITES` override, and prints byte-deterministic output: reports
//! iterate `BTreeMap`s and the randomized oracle seeds its generator with a fixed
//! constant.
//!
//! Exit codes: `0` success, `1` a requested check failed, `2` usage or parse
//! error (including malformed definition files and unknown symbols), `3` engine
//! error (rewrite cap exceeded, ring mismatches, …).

use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::builtin::{builtin, builtin_summaries, BUILTIN_NAMES};
use crate::deffile::{load_algebra_file, AlgebraEntry, PresentationKind};
use crate::error::{Error, Result};
use crate::freealg::{random_element, Element, Word};
use crate::lie::{LiePresentation, Metric, MOSTLY_MINUS};
use crate::ore::build_weyl_tower;
use crate::rep::{
    adjoint_rep, iso13_affine_rep, rep_validate, so13_vector_rep, Representation,
};
use crate::report::Report;
use crate::rewrite::rewrite_cap_from_env;
use crate::scalar::{Ring, Scalar};

/// Seed for the randomized oracle; fixed so that two runs emit identical bytes.
const ORACLE_SEED: u64 = 271_828;
/// Random elements per oracle run.
const ORACLE_CASES: usize = 200;

macro_rules! outln {
    ($w:expr) => {{
        let _ = writeln!($w);
    }};
    ($w:expr, $($t:tt)*) => {{
        let _ = writeln!($w, $($t)*);
    }};
}

fn parse_metric(s: &str) -> std::result::Result<Metric, String> {
    Metric::from_name(s)
        .ok_or_else(|| format!("unknown metric `{s}` (expected mostly-minus or mostly-plus)"))
}

#[derive(Parser, Debug)]
#[command(
    name = "orecalc",
    version,
    about = "exact normal forms in free algebras, Ore extensions, and enveloping algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Load a definition file, validate it, and report every declared map.
    Define {
        /// Path to a JSON definition file.
        file: PathBuf,
    },
    /// Evaluate an expression and print its canonical normal form.
    Normalize {
        /// Builtin name or definition-file path.
        #[arg(short = 'a', long = "algebra")]
        algebra: String,
        /// Signature for the metric-sensitive builtins.
        #[arg(long, value_parser = parse_metric, default_value = "mostly-minus")]
        metric: Metric,
        /// Expression, e.g. "[L01, L12]" or "skewL(p, l; parity)".
        expr: String,
    },
    /// Normalize both sides and compare them exactly.
    Check {
        #[arg(short = 'a', long = "algebra")]
        algebra: String,
        #[arg(long, value_parser = parse_metric, default_value = "mostly-minus")]
        metric: Metric,
        lhs: String,
        rhs: String,
    },
    /// Print the dimension of the degree-n graded slice (optionally the basis).
    Grade {
        #[arg(short = 'a', long = "algebra")]
        algebra: String,
        #[arg(long, value_parser = parse_metric, default_value = "mostly-minus")]
        metric: Metric,
        /// Degree of the slice.
        #[arg(short = 'n', long = "degree")]
        degree: usize,
        /// Also list the basis monomials, one per line.
        #[arg(long)]
        basis: bool,
    },
    /// Build an iterated skewed Weyl tower and print its commutation rules.
    Tower {
        /// Number of (t_k, x_k) levels.
        #[arg(long)]
        height: usize,
        /// `plain` (default) or `q=<rational>` for the uniform deformation.
        #[arg(long = "level-spec")]
        level_spec: Option<String>,
    },
    /// Run the exchange-relation suite for a paired algebra.
    CheckSkewCcr {
        #[arg(short = 'a', long = "algebra")]
        algebra: String,
        #[arg(long, value_parser = parse_metric, default_value = "mostly-minus")]
        metric: Metric,
    },
    /// Cross-check normal forms against a matrix representation or golden cases.
    Oracle {
        #[arg(short = 'a', long = "algebra")]
        algebra: String,
        #[arg(long, value_parser = parse_metric, default_value = "mostly-minus")]
        metric: Metric,
        /// Golden-case file: one `expr<TAB>expected<TAB>tag` per line.
        #[arg(long)]
        cases: Option<PathBuf>,
    },
    /// Line-oriented interactive session (`:load`, `:algebra`, `:quit`).
    Repl {
        /// Starting algebra (defaults to so13).
        #[arg(short = 'a', long = "algebra")]
        algebra: Option<String>,
        #[arg(long, value_parser = parse_metric, default_value = "mostly-minus")]
        metric: Metric,
    },
}

/// Maps an engine error onto the documented exit codes.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse { .. }
        | Error::Io(_)
        | Error::InvalidDefinition(_)
        | Error::UnknownGenerator { .. }
        | Error::UnknownEndomorphism { .. }
        | Error::NoStarStructure { .. }
        | Error::NeedsComplexRing { .. } => 2,
        _ => 3,
    }
}

/// Resolves `-a`: builtin names first, then definition-file paths. The rewrite-cap
/// override from the environment is applied to whatever comes back.
fn resolve_entry(name: &str, metric: Metric) -> Result<AlgebraEntry> {
    let mut entry = if BUILTIN_NAMES.contains(&name) {
        builtin(name, metric)?
    } else {
        load_algebra_file(std::path::Path::new(name))?
    };
    entry.kind.set_rewrite_cap(rewrite_cap_from_env());
    Ok(entry)
}

/// Parses, elaborates, and normalizes one expression against an entry.
fn eval_in(entry: &AlgebraEntry, src: &str) -> Result<Element> {
    entry.eval(src)
}

/// All nondecreasing generator sequences of the given degree, lexicographically.
fn nondecreasing_words(generators: usize, degree: usize) -> Vec<Word> {
    fn rec(generators: usize, left: usize, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(Word::from_letters(cur.clone()));
            return;
        }
        for g in start..generators as u32 {
            cur.push(g);
            rec(generators, left - 1, g, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(generators, degree, 0, &mut Vec::with_capacity(degree), &mut out);
    out
}

/// All generator sequences of the given degree (free-algebra basis), lexicographic.
fn all_words(generators: usize, degree: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..degree {
        let mut next = Vec::with_capacity(out.len() * generators);
        for w in &out {
            for g in 0..generators as u32 {
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(Word::from_letters).collect()
}

fn cmd_define(file: &PathBuf, out: &mut dyn Write) -> Result<i32> {
    let entry = load_algebra_file(file)?;
    let alg = entry.kind.algebra();
    outln!(out, "algebra {} ({}) over {}", entry.name, entry.kind.kind_name(), alg.ring());
    outln!(out, "generators: {}", alg.generator_names().join(" "));
    outln!(out, "relations: {}", entry.kind.relations().len());
    if let Some(metric) = entry.metric {
        outln!(out, "metric: {metric}");
    }
    if entry.star.is_some() {
        outln!(out, "star structure: present");
    }
    if !entry.aliases.is_empty() {
        outln!(out, "aliases: {}", entry.aliases.keys().cloned().collect::<Vec<_>>().join(" "));
    }
    if !entry.twists.is_empty() {
        outln!(out, "twists: {}", entry.twists.keys().cloned().collect::<Vec<_>>().join(" "));
    }
    let mut all_passed = true;
    for report in entry.endo_reports.values() {
        outln!(out);
        let _ = write!(out, "{report}");
        outln!(out);
        all_passed &= report.passed();
    }
    Ok(if all_passed { 0 } else { 1 })
}

fn cmd_normalize(algebra: &str, metric: Metric, expr: &str, out: &mut dyn Write) -> Result<i32> {
    let entry = resolve_entry(algebra, metric)?;
    let nf = eval_in(&entry, expr)?;
    outln!(out, "{nf}");
    Ok(0)
}

fn cmd_check(
    algebra: &str,
    metric: Metric,
    lhs: &str,
    rhs: &str,
    out: &mut dyn Write,
) -> Result<i32> {
    let entry = resolve_entry(algebra, metric)?;
    let left = eval_in(&entry, lhs)?;
    let right = eval_in(&entry, rhs)?;
    if left == right {
        outln!(out, "PASS: both sides normalize to {left}");
        Ok(0)
    } else {
        outln!(out, "FAIL");
        outln!(out, "  left:  {left}");
        outln!(out, "  right: {right}");
        Ok(1)
    }
}

fn cmd_grade(
    algebra: &str,
    metric: Metric,
    degree: usize,
    basis: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let entry = resolve_entry(algebra, metric)?;
    let alg = entry.kind.algebra();
    let k = alg.generator_count();
    let free = matches!(entry.kind, PresentationKind::Free { .. });
    let dimension = entry.kind.graded_dimension(degree)?;
    outln!(out, "{dimension}");
    if basis {
        if dimension > 1_000_000 {
            return Err(Error::InvalidPresentation(format!(
                "refusing to enumerate {dimension} basis monomials"
            )));
        }
        let words = if free { all_words(k, degree) } else { nondecreasing_words(k, degree) };
        debug_assert_eq!(words.len() as u128, dimension);
        for w in words {
            outln!(out, "{}", w.render(alg));
        }
    }
    Ok(0)
}

fn cmd_tower(height: usize, level_spec: Option<&str>, out: &mut dyn Write) -> Result<i32> {
    let q = match level_spec {
        None | Some("plain") => None,
        Some(spec) => match spec.strip_prefix("q=") {
            Some(value) => Some(Scalar::parse(value, Ring::Rational)?),
            None => {
                return Err(Error::InvalidDefinition(format!(
                    "unrecognized level spec `{spec}` (expected `plain` or `q=<rational>`)"
                )))
            }
        },
    };
    let pres = build_weyl_tower(Ring::Rational, height, q.as_ref())?;
    let alg = pres.algebra();
    match &q {
        None => outln!(out, "skewed Weyl tower: height {height} over Q (plain)"),
        Some(v) => outln!(out, "skewed Weyl tower: height {height} over Q (q = {v})"),
    }
    outln!(out, "generators: {}", alg.generator_names().join(" "));
    for (&(hi, lo), rhs) in pres.system().rules() {
        outln!(out, "{}*{} -> {}", alg.generator_name(hi), alg.generator_name(lo), rhs);
    }
    Ok(0)
}

fn cmd_check_skew_ccr(algebra: &str, metric: Metric, out: &mut dyn Write) -> Result<i32> {
    let entry = resolve_entry(algebra, metric)?;
    let ctx = match &entry.kind {
        PresentationKind::SkewCcr(ctx) => ctx,
        other => {
            return Err(Error::InvalidDefinition(format!(
                "`{}` is a {} presentation, not an exchange algebra",
                entry.name,
                other.kind_name()
            )))
        }
    };
    let mut reports = vec![ctx.ccr_check()?, ctx.hermiticity_check()?];
    if ctx.pairs() == 4 {
        reports.push(ctx.bilinear_invariance_check()?);
        reports.push(ctx.lorentz_realization_check()?);
        reports.push(ctx.skewed_closure_counterexample()?);
    }
    let mut failed = 0usize;
    for report in &reports {
        let _ = write!(out, "{report}");
        outln!(out);
        if !report.passed() {
            failed += 1;
        }
    }
    if failed == 0 {
        outln!(out, "all {} reports passed", reports.len());
        Ok(0)
    } else {
        outln!(out, "{failed} of {} reports failed", reports.len());
        Ok(1)
    }
}

/// The shipped matrix for an entry, if any: the vector and affine representations
/// for the two builtin names that carry them, otherwise the adjoint when the
/// bracket table allows it.
fn pick_rep(entry: &AlgebraEntry, pres: &LiePresentation) -> Option<(String, Representation)> {
    let metric = entry.metric.unwrap_or(MOSTLY_MINUS);
    match entry.name.as_str() {
        "so13" => {
            if let Ok(rep) = so13_vector_rep(pres.algebra(), metric) {
                return Some(("vector, dim 4".into(), rep));
            }
        }
        "iso13" => {
            if let Ok(rep) = iso13_affine_rep(pres.algebra(), metric) {
                return Some(("affine, dim 5".into(), rep));
            }
        }
        _ => {}
    }
    adjoint_rep(pres).ok().map(|rep| ("adjoint".to_string(), rep))
}

fn cmd_oracle(
    algebra: &str,
    metric: Metric,
    cases: Option<&PathBuf>,
    out: &mut dyn Write,
) -> Result<i32> {
    let entry = resolve_entry(algebra, metric)?;
    if let Some(path) = cases {
        return run_golden_cases(&entry, path, out);
    }

    let alg = Arc::clone(entry.kind.algebra());
    let mut rng = StdRng::seed_from_u64(ORACLE_SEED);
    let rep = match &entry.kind {
        PresentationKind::Lie(pres) => pick_rep(&entry, pres),
        _ => None,
    };

    if let (Some((label, rep)), PresentationKind::Lie(pres)) = (&rep, &entry.kind) {
        outln!(out, "representation: {label}");
        let validation = rep_validate(pres, rep)?;
        let _ = write!(out, "{validation}");
        outln!(out);
        if !validation.passed() {
            return Ok(1);
        }
    }

    let mut report = Report::new(format!(
        "normal-form oracle: {} ({ORACLE_CASES} seeded cases, degree <= 4)",
        entry.name
    ));
    let mut matrix_ok = 0usize;
    let mut idem_ok = 0usize;
    let mut order_ok = 0usize;
    for case in 0..ORACLE_CASES {
        let e = random_element(&alg, 5, 4, &mut rng);
        let nf = entry.kind.normalize(&e)?;

        if let (Some((_, rep)), PresentationKind::Lie(_)) = (&rep, &entry.kind) {
            if rep.evaluate(&e)? == rep.evaluate(&nf)? {
                matrix_ok += 1;
            } else {
                report.fail(
                    format!("matrix agreement, case {case}"),
                    format!("representation separates {e} from its normal form {nf}"),
                );
            }
        }
        if entry.kind.normalize(&nf)? == nf {
            idem_ok += 1;
        } else {
            report.fail(format!("idempotence, case {case}"), format!("normal form {nf} moved"));
        }
        if entry.kind.system().normalize_random_order(&e, &mut rng)? == nf {
            order_ok += 1;
        } else {
            report.fail(
                format!("order independence, case {case}"),
                format!("a shuffled reduction of {e} missed {nf}"),
            );
        }
    }
    if let Some((label, _)) = &rep {
        if matrix_ok == ORACLE_CASES {
            report.pass_with(
                format!("matrix agreement ({label})"),
                format!("{matrix_ok}/{ORACLE_CASES} exact"),
            );
        }
    }
    if idem_ok == ORACLE_CASES {
        report.pass_with("idempotence", format!("{idem_ok}/{ORACLE_CASES} fixed points"));
    }
    if order_ok == ORACLE_CASES {
        report.pass_with(
            "order independence",
            format!("{order_ok}/{ORACLE_CASES} shuffled reductions agree"),
        );
    }
    let _ = write!(out, "{report}");
    outln!(out);
    Ok(if report.passed() { 0 } else { 1 })
}

fn run_golden_cases(entry: &AlgebraEntry, path: &PathBuf, out: &mut dyn Write) -> Result<i32> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut passed = 0usize;
    let mut total = 0usize;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() < 2 {
            return Err(Error::InvalidDefinition(format!(
                "{}:{}: expected `expr<TAB>expected[<TAB>tag]`",
                path.display(),
                lineno + 1
            )));
        }
        let (expr, expected) = (fields[0], fields[1]);
        let tag = fields.get(2).copied().unwrap_or("-");
        total += 1;
        match eval_in(entry, expr) {
            Ok(nf) => {
                let got = nf.to_string();
                if got == expected {
                    outln!(out, "PASS [{tag}] {expr} -> {got}");
                    passed += 1;
                } else {
                    outln!(out, "FAIL [{tag}] {expr} -> {got} (expected {expected})");
                }
            }
            Err(e) => {
                outln!(out, "FAIL [{tag}] {expr}: {e}");
            }
        }
    }
    outln!(out, "{passed}/{total} cases passed");
    Ok(if passed == total { 0 } else { 1 })
}

fn cmd_repl(
    start: Option<&str>,
    metric: Metric,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let mut entry = resolve_entry(start.unwrap_or("so13"), metric)?;
    outln!(err, "orecalc repl — :algebra NAME [METRIC], :load FILE, :quit");
    outln!(err, "active algebra: {}", entry.name);
    let mut line = String::new();
    loop {
        let _ = write!(err, "orecalc> ");
        let _ = err.flush();
        line.clear();
        match input.read_line(&mut line) {
            Ok(0) => break,
            Ok(_) => {}
            Err(e) => {
                outln!(err, "error: {e}");
                break;
            }
        }
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(meta) = trimmed.strip_prefix(':') {
            let mut parts = meta.split_whitespace();
            match parts.next() {
                Some("quit") | Some("q") => break,
                Some("algebra") => match parts.next() {
                    Some(name) => {
                        let m = match parts.next() {
                            Some(word) => match Metric::from_name(word) {
                                Some(m) => m,
                                None => {
                                    outln!(err, "error: unknown metric `{word}`");
                                    continue;
                                }
                            },
                            None => metric,
                        };
                        match resolve_entry(name, m) {
                            Ok(next) => {
                                entry = next;
                                outln!(err, "active algebra: {}", entry.name);
                            }
                            Err(e) => outln!(err, "error: {e}"),
                        }
                    }
                    None => {
                        outln!(err, "active algebra: {}", entry.name);
                        outln!(err, "builtins:");
                        for (name, summary) in builtin_summaries() {
                            outln!(err, "  {name} — {summary}");
                        }
                    }
                },
                Some("load") => match parts.next() {
                    Some(path) => match resolve_entry(path, metric) {
                        Ok(next) => {
                            entry = next;
                            outln!(err, "active algebra: {}", entry.name);
                        }
                        Err(e) => outln!(err, "error: {e}"),
                    },
                    None => outln!(err, "error: :load needs a file path"),
                },
                _ => outln!(err, "error: unknown meta-command `:{meta}`"),
            }
            continue;
        }
        match eval_in(&entry, trimmed) {
            Ok(nf) => outln!(out, "{nf}"),
            Err(e) => outln!(err, "error: {e}"),
        }
    }
    Ok(0)
}

/// Runs one parsed command against the given streams and returns the exit code.
pub fn run(
    cli: Cli,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let outcome = match &cli.command {
        Command::Define { file } => cmd_define(file, out),
        Command::Normalize { algebra, metric, expr } => cmd_normalize(algebra, *metric, expr, out),
        Command::Check { algebra, metric, lhs, rhs } => {
            cmd_check(algebra, *metric, lhs, rhs, out)
        }
        Command::Grade { algebra, metric, degree, basis } => {
            cmd_grade(algebra, *metric, *degree, *basis, out)
        }
        Command::Tower { height, level_spec } => cmd_tower(*height, level_spec.as_deref(), out),
        Command::CheckSkewCcr { algebra, metric } => cmd_check_skew_ccr(algebra, *metric, out),
        Command::Oracle { algebra, metric, cases } => {
            cmd_oracle(algebra, *metric, cases.as_ref(), out)
        }
        Command::Repl { algebra, metric } => cmd_repl(algebra.as_deref(), *metric, input, out, err),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            outln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cmd(args: &[&str]) -> (i32, String, String) {
        let cli = Cli::try_parse_from(args).expect("test arguments parse");
        let mut input: &[u8] = b"";
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(cli, &mut input, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn run_repl(args: &[&str], stdin: &str) -> (i32, String, String) {
        let cli = Cli::try_parse_from(args).expect("test arguments parse");
        let mut input: &[u8] = stdin.as_bytes();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(cli, &mut input, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn normalize_straightens_a_swapped_pair() {
        // Aliases expand into the generator basis: J2*J1 = (-L13)(L23) is already
        // an ordered monomial there.
        let (code, out, _) = run_cmd(&["orecalc", "normalize", "-a", "so13", "J2*J1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "-L13*L23\n");

        // Over a presentation whose generators *are* the J's, the same input
        // straightens into the familiar display.
        let (code, out, _) = run_cmd(&["orecalc", "normalize", "-a", "su2su2", "N2*N1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "N1*N2 + i*N3\n");
    }

    #[test]
    fn check_passes_and_fails_with_the_documented_codes() {
        let (code, out, _) =
            run_cmd(&["orecalc", "check", "-a", "so13", "[L01,L01]", "0"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("PASS"));

        let (code, out, _) = run_cmd(&["orecalc", "check", "-a", "iso13", "[P0,P1]", "P2"]);
        assert_eq!(code, 1);
        assert!(out.starts_with("FAIL"));
    }

    #[test]
    fn parse_and_engine_errors_use_exit_codes_two_and_three() {
        let (code, _, err) = run_cmd(&["orecalc", "normalize", "-a", "so13", "J1 +"]);
        assert_eq!(code, 2, "parse error: {err}");

        let (code, _, err) = run_cmd(&["orecalc", "normalize", "-a", "nosuch", "J1"]);
        assert_eq!(code, 2, "unknown algebra resolves as a missing file: {err}");
    }

    #[test]
    fn grade_matches_the_stars_and_bars_count() {
        let (code, out, _) = run_cmd(&["orecalc", "grade", "-a", "so13", "-n", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "21\n");

        let (code, out, _) = run_cmd(&["orecalc", "grade", "-a", "so13", "-n", "2", "--basis"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 22);
        assert_eq!(lines[0], "21");
        assert_eq!(lines[1], "L01^2");
        assert!(lines.contains(&"L01*L23"));
    }

    #[test]
    fn tower_prints_the_deformed_rules() {
        let (code, out, _) =
            run_cmd(&["orecalc", "tower", "--height", "2", "--level-spec", "q=2"]);
        assert_eq!(code, 0);
        assert!(out.contains("generators: t1 t2 x1 x2"));
        assert!(out.contains("x1*t1 -> 2*t1*x1 + 1"));
        assert!(out.contains("x2*t2 -> 2*t2*x2 + 1"));
        assert!(out.contains("x2*x1 -> x1*x2"));
    }

    #[test]
    fn skew_ccr_suite_passes_on_the_twisted_builtin() {
        let (code, out, _) = run_cmd(&["orecalc", "check-skew-ccr", "-a", "skewccr1"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("all "));

        let (code, _, err) = run_cmd(&["orecalc", "check-skew-ccr", "-a", "so13"]);
        assert_eq!(code, 2);
        assert!(err.contains("not an exchange algebra"));
    }

    #[test]
    fn oracle_reports_are_deterministic() {
        let (code_a, out_a, _) = run_cmd(&["orecalc", "oracle", "-a", "su2su2"]);
        let (code_b, out_b, _) = run_cmd(&["orecalc", "oracle", "-a", "su2su2"]);
        assert_eq!(code_a, 0, "{out_a}");
        assert_eq!(code_b, 0);
        assert_eq!(out_a, out_b);
        assert!(out_a.contains("matrix agreement (adjoint)"));
    }

    #[test]
    fn golden_case_files_drive_the_oracle() {
        let dir = std::env::temp_dir().join("orecalc-cli-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cases.txt");
        std::fs::write(
            &path,
            "# comment line\nJ2*J1\t-L13*L23\tstraighten\n[L01,L01]\t0\tdiag\n",
        )
        .unwrap();
        let (code, out, _) =
            run_cmd(&["orecalc", "oracle", "-a", "so13", "--cases", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("2/2 cases passed"));

        std::fs::write(&path, "J2*J1\tJ2*J1\twrong\n").unwrap();
        let (code, out, _) =
            run_cmd(&["orecalc", "oracle", "-a", "so13", "--cases", path.to_str().unwrap()]);
        assert_eq!(code, 1);
        assert!(out.contains("FAIL [wrong]"));
    }

    #[test]
    fn repl_output_matches_batch_normalize_byte_for_byte() {
        let (_, batch, _) = run_cmd(&["orecalc", "normalize", "-a", "so13", "J2*J1"]);
        let (code, repl, err) = run_repl(&["orecalc", "repl"], "J2*J1\n:quit\n");
        assert_eq!(code, 0);
        assert_eq!(repl, batch);
        assert!(err.contains("orecalc> "), "prompts go to stderr");
    }

    #[test]
    fn repl_switches_algebras_and_survives_errors() {
        let stdin = "bogus +\n:algebra weyl\nx*t\n:quit\n";
        let (code, out, err) = run_repl(&["orecalc", "repl"], stdin);
        assert_eq!(code, 0);
        assert_eq!(out, "t*x + 1\n");
        assert!(err.contains("error: "));
        assert!(err.contains("active algebra: weyl"));
    }

    #[test]
    fn define_reports_on_a_file_with_a_broken_map() {
        let dir = std::env::temp_dir().join("orecalc-cli-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("su2-broken.json");
        std::fs::write(
            &path,
            r#"{
  "schema_version": 1,
  "name": "su2",
  "ground_ring": "Qi",
  "generators": [
    {"name": "J1", "hermitian": true},
    {"name": "J2", "hermitian": true},
    {"name": "J3", "hermitian": true}
  ],
  "relations": {
    "kind": "lie",
    "brackets": [
      {"left": "J1", "right": "J2", "value": "i*J3"},
      {"left": "J2", "right": "J3", "value": "i*J1"},
      {"left": "J3", "right": "J1", "value": "i*J2"}
    ]
  },
  "endomorphisms": [
    {"name": "swap", "images": {"J1": "J2", "J2": "J1"}}
  ]
}
"#,
        )
        .unwrap();
        let (code, out, _) = run_cmd(&["orecalc", "define", path.to_str().unwrap()]);
        assert_eq!(code, 1, "{out}");
        assert!(out.contains("FAIL"));
        assert!(out.contains("swap"));

        let (code2, out2, _) =
            run_cmd(&["orecalc", "normalize", "-a", path.to_str().unwrap(), "J2*J1"]);
        assert_eq!(code2, 0, "a broken map is quarantined, not fatal");
        assert_eq!(out2, "J1*J2 - i*J3\n");
    }
}

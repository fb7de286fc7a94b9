//! Command-line front end over the finite-embeddability toolkit.
//!
//! Subcommands: `check`, `classify`, `construct-pair`, `chain`, `minimal`,
//! `laws`. Every subcommand has a text mode and a `--json` mode reporting
//! identical verdicts. Exit codes: 0 success (or definite Yes for
//! `check`), 1 definite No, 2 Unknown, 3 usage or evaluation error,
//! 4 law or verification failure.

pub mod dsl;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use fekit_core::combinatorics;
use fekit_core::constructions;
use fekit_core::fe;
use fekit_core::laws::{self, InstanceConfig, LawOutcome};
use fekit_core::{GroundSet, Outcome, SampledPrefix};

const GRAMMAR_HELP: &str = "\
Set expressions (whitespace-insensitive, '&' binds tighter than '|'):
  expr  := inter ('|' inter)*
  inter := term ('&' term)*
  term  := atom ('+' NAT)?
  atom  := '{}' | '{' NAT (',' NAT)* '}'
         | 'up(' BITS ';' NAT ';' NAT (',' NAT)* ')'
         | 'evens' | 'odds' | 'nat'
         | 'diff(' expr ')' | 'shift(' expr ';' NAT (',' NAT)* ')'
         | '(' expr ')'
Examples: \"evens + 1\"   \"up(01;3;0,2)\"   \"{0,3,11} & nat\"   \"diff(evens)\"";

#[derive(Parser)]
#[command(name = "fekit", about = "Finite-embeddability toolkit", after_help = GRAMMAR_HELP)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether the first set finitely embeds in the second
    Check {
        expr_a: String,
        expr_b: String,
        /// Window for horizon-limited operations and the oracle prefix scan
        #[arg(long, default_value_t = 10_000)]
        horizon: u64,
        /// Largest translate the oracle tries
        #[arg(long, default_value_t = 10_000)]
        kmax: u64,
        /// Cross-check the verdict with the brute-force oracle
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Density, thickness, syndeticity, piecewise syndeticity, longest AP
    Classify {
        expr: String,
        /// Window for the progression search and sampled-set estimates
        #[arg(long, default_value_t = 200)]
        window: u64,
        #[arg(long)]
        json: bool,
    },
    /// Build and verify a strongly mutually unembeddable pair inside a set
    ConstructPair {
        expr_x: String,
        /// Terms to generate on each side
        #[arg(long)]
        count: u64,
        #[arg(long)]
        json: bool,
    },
    /// Build a descending chain with per-step oracle certificates
    Chain {
        expr_x: String,
        /// Number of certified steps
        #[arg(long)]
        depth: u64,
        /// Elements materialized for the deepest level
        #[arg(long)]
        count: u64,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the minimal sets of size n drawn from {0,...,m}
    Minimal {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run every law checker over a seeded corpus
    Laws {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of corpus sets
        #[arg(long, default_value_t = 50)]
        corpus: u64,
        #[arg(long = "max-period", default_value_t = 10)]
        max_period: u64,
        #[arg(long = "max-preperiod", default_value_t = 6)]
        max_preperiod: u64,
        /// Emit one JSON report per line instead of a text summary
        #[arg(long)]
        json: bool,
        /// Also write the line-oriented JSON report to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Captured run of the CLI: output plus exit code.
pub struct CmdOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl CmdOutput {
    fn ok(stdout: String) -> Self {
        CmdOutput { stdout, stderr: String::new(), code: 0 }
    }

    fn usage(message: String) -> Self {
        CmdOutput { stdout: String::new(), stderr: message, code: 3 }
    }
}

/// Runs the CLI on the given argv (including the program name).
pub fn run<I, S>(args: I) -> CmdOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes, anything else is a
            // usage error.
            let rendered = e.render().to_string();
            return if e.exit_code() == 0 {
                CmdOutput::ok(rendered)
            } else {
                CmdOutput::usage(rendered)
            };
        }
    };
    match cli.cmd {
        Cmd::Check { expr_a, expr_b, horizon, kmax, oracle, json } => {
            check(&expr_a, &expr_b, horizon, kmax, oracle, json)
        }
        Cmd::Classify { expr, window, json } => classify(&expr, window, json),
        Cmd::ConstructPair { expr_x, count, json } => construct_pair(&expr_x, count, json),
        Cmd::Chain { expr_x, depth, count, json } => chain(&expr_x, depth, count, json),
        Cmd::Minimal { n, m, json } => minimal(n, m, json),
        Cmd::Laws { seed, corpus, max_period, max_preperiod, json, out } => {
            run_laws(seed, corpus, max_period, max_preperiod, json, out)
        }
    }
}

fn eval_arg(label: &str, text: &str, horizon: u64) -> Result<GroundSet, CmdOutput> {
    let expr = dsl::parse(text)
        .map_err(|e| CmdOutput::usage(format!("{label}: parse error at {e}\n")))?;
    dsl::eval(&expr, horizon).map_err(|e| CmdOutput::usage(format!("{label}: {e}\n")))
}

fn check(
    expr_a: &str,
    expr_b: &str,
    horizon: u64,
    kmax: u64,
    oracle: bool,
    json: bool,
) -> CmdOutput {
    let a = match eval_arg("first expression", expr_a, horizon) {
        Ok(s) => s,
        Err(e) => return e,
    };
    let b = match eval_arg("second expression", expr_b, horizon) {
        Ok(s) => s,
        Err(e) => return e,
    };
    let verdict = fe::decide(&a, &b);
    let mut code = match verdict.outcome {
        Outcome::Yes => 0,
        Outcome::No => 1,
        Outcome::Unknown => 2,
    };

    let oracle_verdict = oracle.then(|| fe::oracle_bruteforce(&a, &b, horizon, kmax));
    let agreement = oracle_verdict
        .as_ref()
        .map(|o| !((verdict.is_yes() && o.is_no()) || (verdict.is_no() && o.is_yes())));
    if agreement == Some(false) {
        code = 4;
    }

    if json {
        let doc = json!({
            "command": "check",
            "a": a.to_string(),
            "b": b.to_string(),
            "verdict": verdict,
            "oracle": oracle_verdict,
            "agreement": agreement,
        });
        let mut out = CmdOutput::ok(format!("{doc}\n"));
        out.code = code;
        return out;
    }

    let mut text = format!("{verdict}\n");
    if let Some(o) = &oracle_verdict {
        text.push_str(&format!("oracle: {o}\n"));
        text.push_str(if agreement == Some(false) {
            "agreement: CONTRADICTION between decision procedure and oracle\n"
        } else {
            "agreement: ok\n"
        });
    }
    let mut out = CmdOutput::ok(text);
    out.code = code;
    out
}

fn classify(expr: &str, window: u64, json: bool) -> CmdOutput {
    let s = match eval_arg("expression", expr, window.max(1)) {
        Ok(s) => s,
        Err(e) => return e,
    };
    let density = combinatorics::upper_banach_density(&s, window);
    let thick = combinatorics::is_thick(&s, window);
    let syndetic = combinatorics::is_syndetic(&s);
    let ps = combinatorics::is_piecewise_syndetic(&s);
    let ap = combinatorics::longest_ap(&s, window);

    if json {
        let doc = json!({
            "command": "classify",
            "set": s.to_string(),
            "density": {
                "value": density.value.to_string(),
                "numerator": *density.value.numer(),
                "denominator": *density.value.denom(),
                "method": match density.method {
                    combinatorics::DensityMethod::Exact => "exact",
                    combinatorics::DensityMethod::Windowed => "windowed",
                },
                "window": density.window,
            },
            "thick": thick,
            "syndetic": syndetic,
            "piecewise_syndetic": ps,
            "longest_ap": ap.map(|w| json!({
                "start": w.start,
                "difference": w.difference,
                "length": w.length,
            })),
        });
        return CmdOutput::ok(format!("{doc}\n"));
    }

    // Classifier witnesses are run/gap lengths, not translates, so render
    // outcome plus reason rather than the `k=` form used by `check`.
    let classifier_line = |v: &fekit_core::TriVerdict| -> String {
        if v.reason.is_empty() {
            v.outcome.to_string()
        } else if v.is_unknown() {
            format!("{}: {}", v.outcome, v.reason)
        } else {
            format!("{} ({})", v.outcome, v.reason)
        }
    };
    let mut text = format!("set: {s}\n");
    text.push_str(&format!("density: {density}\n"));
    text.push_str(&format!("thick: {}\n", classifier_line(&thick)));
    text.push_str(&format!("syndetic: {}\n", classifier_line(&syndetic)));
    text.push_str(&format!("piecewise syndetic: {}\n", classifier_line(&ps)));
    match ap {
        Some(w) => text.push_str(&format!("longest AP below {window}: {w}\n")),
        None => text.push_str(&format!("longest AP below {window}: none\n")),
    }
    CmdOutput::ok(text)
}

fn construct_pair(expr_x: &str, count: u64, json: bool) -> CmdOutput {
    let x = match eval_arg("source expression", expr_x, 10_000) {
        Ok(s) => s,
        Err(e) => return e,
    };
    let pair = match constructions::unembeddable_pair(&x, count) {
        Ok(p) => p,
        Err(e) => return CmdOutput::usage(format!("construction failed: {e}\n")),
    };
    let report = constructions::verify_pair(&pair);
    let code = if report.outcome == LawOutcome::Pass { 0 } else { 4 };

    if json {
        let doc = json!({
            "command": "construct-pair",
            "source": x.to_string(),
            "a": pair.a_elements,
            "b": pair.b_elements,
            "window": pair.horizon,
            "verification": report,
        });
        let mut out = CmdOutput::ok(format!("{doc}\n"));
        out.code = code;
        return out;
    }

    let mut text = format!("source: {x}\n");
    text.push_str(&format!("A = {:?}\n", pair.a_elements));
    text.push_str(&format!("B = {:?}\n", pair.b_elements));
    text.push_str(&format!("verification: {}\n", report.outcome));
    for e in &report.witness {
        text.push_str(&format!("  {}\n", evidence_text(e)));
    }
    let mut out = CmdOutput::ok(text);
    out.code = code;
    out
}

fn evidence_text(e: &fekit_core::Evidence) -> String {
    match e {
        fekit_core::Evidence::Translate { k } => format!("translate k={k}"),
        fekit_core::Evidence::Counterexample { elements } => format!("counterexample {elements:?}"),
        fekit_core::Evidence::Density { side, value } => format!("density[{side}] = {value}"),
        fekit_core::Evidence::CommonDifference { difference } => {
            format!("common difference {difference}")
        }
        fekit_core::Evidence::Note { text } => text.clone(),
    }
}

fn chain(expr_x: &str, depth: u64, count: u64, json: bool) -> CmdOutput {
    let x = match eval_arg("source expression", expr_x, 10_000) {
        Ok(s) => s,
        Err(e) => return e,
    };
    let chain = match constructions::descending_chain(&x, depth, count) {
        Ok(c) => c,
        Err(e) => return CmdOutput::usage(format!("chain construction failed: {e}\n")),
    };
    let code = if chain.truncated.is_some() {
        3
    } else if chain.certified() {
        0
    } else {
        4
    };

    let level_json =
        |l: &SampledPrefix| json!({ "elements": l.elements(), "horizon": l.horizon() });
    if json {
        let doc = json!({
            "command": "chain",
            "source": x.to_string(),
            "levels": chain.levels.iter().map(level_json).collect::<Vec<_>>(),
            "steps": chain.steps.iter().map(|s| json!({
                "side": s.side.to_string(),
                "refusal": s.refusal,
                "window": s.window,
                "kmax": s.kmax,
            })).collect::<Vec<_>>(),
            "truncated": chain.truncated,
            "certified": chain.certified(),
        });
        let mut out = CmdOutput::ok(format!("{doc}\n"));
        out.code = code;
        return out;
    }

    let mut text = format!("source: {x}\n");
    for (i, level) in chain.levels.iter().enumerate() {
        let elems = level.elements();
        let shown: Vec<u64> = elems.iter().copied().take(12).collect();
        let ellipsis = if elems.len() > 12 { ", ..." } else { "" };
        text.push_str(&format!(
            "X{i}: {shown:?}{ellipsis} (|known| = {}, horizon = {})\n",
            elems.len(),
            level.horizon()
        ));
    }
    for (i, step) in chain.steps.iter().enumerate() {
        text.push_str(&format!(
            "step {}: kept the {}-side; X{} <=_fe X{} refused: {} [window {}, kmax {}]\n",
            i + 1,
            step.side,
            i,
            i + 1,
            step.refusal,
            step.window,
            step.kmax
        ));
    }
    match &chain.truncated {
        Some(msg) => text.push_str(&format!("TRUNCATED: {msg}\n")),
        None => text.push_str(&format!(
            "certified: {}\n",
            if chain.certified() { "yes" } else { "NO" }
        )),
    }
    let mut out = CmdOutput::ok(text);
    out.code = code;
    out
}

fn minimal(n: u64, m: u64, json: bool) -> CmdOutput {
    let sets = constructions::minimal_sets(n, m);
    let count = sets.len() as u64;
    let expected = if n == 0 { 0 } else { constructions::binomial(m, n - 1) };

    if json {
        let doc = json!({
            "command": "minimal",
            "n": n,
            "m": m,
            "sets": sets.iter().map(|s| s.elements().to_vec()).collect::<Vec<_>>(),
            "count": count,
            "binomial": expected,
        });
        return CmdOutput::ok(format!("{doc}\n"));
    }

    let mut text = String::new();
    for s in &sets {
        text.push_str(&format!("{s}\n"));
    }
    text.push_str(&format!("count={count}=C({m},{})\n", n.saturating_sub(1)));
    CmdOutput::ok(text)
}

fn run_laws(
    seed: u64,
    corpus: u64,
    max_period: u64,
    max_preperiod: u64,
    json: bool,
    out_path: Option<PathBuf>,
) -> CmdOutput {
    let cfg = InstanceConfig {
        seed,
        corpus_size: corpus,
        max_period,
        max_preperiod,
        ..InstanceConfig::default()
    };
    let report = laws::run_corpus(&cfg);
    let code = if report.summary.fail > 0 { 4 } else { 0 };

    let mut stderr = String::new();
    if let Some(path) = out_path {
        if let Err(e) = std::fs::write(&path, report.to_json_lines()) {
            return CmdOutput::usage(format!("cannot write report to {}: {e}\n", path.display()));
        }
        stderr.push_str(&format!(
            "wrote {} reports to {}\n",
            report.reports.len(),
            path.display()
        ));
    }

    let s = report.summary;
    let text = if json {
        // Line-oriented: one report per line, then a summary line.
        let mut t = report.to_json_lines();
        t.push_str(&format!("{}\n", json!({ "summary": s })));
        t
    } else {
        let mut t = format!(
            "corpus: {corpus} sets (seed {seed}, preperiod <= {max_preperiod}, period <= {max_period})\n"
        );
        t.push_str(&format!(
            "pass={} fail={} vacuous={} unknown={} total={}\n",
            s.pass,
            s.fail,
            s.vacuous,
            s.unknown,
            s.total()
        ));
        for r in report.reports.iter().filter(|r| r.outcome == LawOutcome::Fail) {
            t.push_str(&format!("FAIL {} on {}\n", r.law, r.instance));
        }
        t
    };
    CmdOutput { stdout: text, stderr, code }
}

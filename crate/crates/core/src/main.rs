//! Batch command-line front end: every computation in the library behind a
//! JSON-in/JSON-out interface.  Exit codes: 0 computed/verified, 1 usage or
//! invalid input, 2 verification violation.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use parhilb::cells;
use parhilb::fock::{self, CohModel};
use parhilb::genfun::{self, BettiData};
use parhilb::lattice::{
    classify_generator, g_value, mu, shift_index, sgn, GeneratorClass, IndexVector,
    ShiftConvention, Window,
};
use parhilb::series::TruncationOrder;
use parhilb::weights;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "parhilb",
    version,
    about = "Cell counts, tangent weights, generating functions, and Fock-model checks for parabolic Hilbert schemes"
)]
struct Cli {
    /// Write the JSON result to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cap the number of worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SeriesOpts {
    /// Level window as lo:hi with lo < 0 < hi (write --window=-2:3).
    #[arg(long, default_value = "-2:3", allow_hyphen_values = true)]
    window: String,
    /// Truncation order N0[,M]: x₀ up to N0, each level variable up to M
    /// (default M = 2).
    #[arg(long, default_value = "6")]
    order: String,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the cells of the punctual scheme at an index vector.
    Cells {
        /// Index vector as JSON, e.g. '{"0":2,"1":1}'.
        #[arg(long)]
        v: String,
    },
    /// Parabolic Poincaré product series, or one coefficient with --v.
    Genfun {
        /// Betti numbers: X=b0,b1,b2,b3,b4 and optionally D=b0,b1,b2.
        #[arg(long, required = true, num_args = 1..=2)]
        betti: Vec<String>,
        #[command(flatten)]
        series: SeriesOpts,
        #[arg(long)]
        v: Option<String>,
    },
    /// Punctual local class series in L, or one coefficient with --v.
    Local {
        #[command(flatten)]
        series: SeriesOpts,
        #[arg(long)]
        v: Option<String>,
    },
    /// Tangent-weight decompositions for every cell label of an index vector.
    Weights {
        #[arg(long)]
        v: String,
        /// Level window; defaults to the smallest window containing v.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Apply the index shift at a level β and report the relabelled vector.
    Shift {
        #[arg(long)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: i64,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// paper | d-preserving
        #[arg(long, default_value = "d-preserving")]
        convention: String,
    },
    /// Evaluate μ, sgn, and g on a generator.
    Mu {
        /// Generator as JSON, e.g. '{"0":2}' or '{"0":1,"-1":1}'.
        #[arg(long)]
        v: String,
    },
    /// Run a verification suite; exits 2 on any violation.
    Verify {
        /// lemmas | cells-vs-product | weights | fock | shift
        suite: String,
        /// Size bound (integer, or small/medium/large).
        #[arg(long)]
        bound: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long)]
        max_n: Option<i64>,
        #[arg(long, num_args = 1..=2)]
        betti: Option<Vec<String>>,
    },
}

fn parse_window(text: &str) -> Result<Window, String> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| format!("window must be lo:hi, got {text:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad window bound {lo:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad window bound {hi:?}"))?;
    Window::new(lo, hi).map_err(|e| e.to_string())
}

fn parse_order(text: &str, window: &Window) -> Result<TruncationOrder, String> {
    let mut parts = text.split(',');
    let n0: u32 = parts
        .next()
        .unwrap()
        .trim()
        .parse()
        .map_err(|_| format!("bad order {text:?}"))?;
    let cap: u32 = match parts.next() {
        Some(m) => m.trim().parse().map_err(|_| format!("bad order {text:?}"))?,
        None => 2,
    };
    if parts.next().is_some() {
        return Err(format!("order must be N0[,M], got {text:?}"));
    }
    Ok(TruncationOrder::for_window(n0, window.lo, window.hi, cap))
}

fn parse_betti(parts: &[String]) -> Result<BettiData, String> {
    let mut surface = None;
    let mut divisor = [1u32, 0, 1];
    for part in parts {
        let (key, values) = part
            .split_once('=')
            .ok_or_else(|| format!("betti part must be X=... or D=..., got {part:?}"))?;
        let numbers: Result<Vec<u32>, _> =
            values.split(',').map(|x| x.trim().parse::<u32>()).collect();
        let numbers = numbers.map_err(|_| format!("bad betti numbers {values:?}"))?;
        match key.trim() {
            "X" => {
                surface = Some(
                    <[u32; 5]>::try_from(numbers)
                        .map_err(|_| "X needs exactly 5 Betti numbers".to_string())?,
                )
            }
            "D" => {
                divisor = <[u32; 3]>::try_from(numbers)
                    .map_err(|_| "D needs exactly 3 Betti numbers".to_string())?
            }
            other => return Err(format!("unknown betti key {other:?}")),
        }
    }
    Ok(BettiData {
        surface: surface.ok_or_else(|| "betti must include X=...".to_string())?,
        divisor,
    })
}

fn parse_vector(text: &str) -> Result<IndexVector, String> {
    serde_json::from_str(text).map_err(|e| format!("bad index vector {text:?}: {e}"))
}

fn parse_convention(text: &str) -> Result<ShiftConvention, String> {
    match text {
        "paper" => Ok(ShiftConvention::PaperLiteral),
        "d-preserving" => Ok(ShiftConvention::DPreserving),
        other => Err(format!("convention must be paper or d-preserving, got {other:?}")),
    }
}

/// Bound presets for `verify --bound`.
fn parse_bound(text: Option<&str>, default: i64) -> Result<i64, String> {
    match text {
        None => Ok(default),
        Some("small") => Ok(2),
        Some("medium") => Ok(3),
        Some("large") => Ok(4),
        Some(n) => n.parse().map_err(|_| format!("bad bound {n:?}")),
    }
}

fn emit(value: &Value, out: &Option<PathBuf>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("write {path:?}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_cells(v: &str) -> Result<Value, String> {
    let v = parse_vector(v)?;
    if !v.is_admissible() {
        return Err(format!("{v} is not admissible"));
    }
    let labels = cells::enumerate_labels(&v);
    let top = labels.iter().map(|l| l.cell_dimension()).max();
    Ok(json!({
        "v": v,
        "count": labels.len(),
        "top_dimension": top,
        "labels": labels
            .iter()
            .map(|l| json!({"label": l, "dimension": l.cell_dimension()}))
            .collect::<Vec<_>>(),
        "poincare": cells::punctual_poincare(&v).display("z"),
        "motive": cells::punctual_motive(&v).display("L"),
    }))
}

fn cmd_genfun(betti: &[String], series: &SeriesOpts, v: &Option<String>) -> Result<Value, String> {
    let betti = parse_betti(betti)?;
    let window = parse_window(&series.window)?;
    let order = parse_order(&series.order, &window)?;
    let s = genfun::parabolic_poincare_series(&betti, &window, &order);
    match v {
        Some(v) => {
            let v = parse_vector(v)?;
            let c = s.coefficient(&v).map_err(|e| e.to_string())?;
            Ok(json!({"v": v, "poincare": c.display("z")}))
        }
        None => Ok(serde_json::to_value(&s).expect("serializable")),
    }
}

fn cmd_local(series: &SeriesOpts, v: &Option<String>) -> Result<Value, String> {
    let window = parse_window(&series.window)?;
    let order = parse_order(&series.order, &window)?;
    let s = genfun::local_punctual_series(&window, &order);
    match v {
        Some(v) => {
            let v = parse_vector(v)?;
            let c = s.coefficient(&v).map_err(|e| e.to_string())?;
            Ok(json!({"v": v, "motive": c.display("L")}))
        }
        None => Ok(serde_json::to_value(&s).expect("serializable")),
    }
}

fn cmd_weights(v: &str, window: &Option<String>) -> Result<Value, String> {
    let v = parse_vector(v)?;
    if !v.is_admissible() {
        return Err(format!("{v} is not admissible"));
    }
    let alpha_minus = match window {
        Some(w) => parse_window(w)?.lo,
        None => v.support().min().unwrap_or(0).min(-1),
    };
    let mut labels = Vec::new();
    for label in cells::enumerate_labels(&v) {
        let t = weights::tangent_weights(&label, alpha_minus).map_err(|e| e.to_string())?;
        let positive = weights::positive_weight_count(&label).map_err(|e| e.to_string())?;
        labels.push(json!({
            "label": label,
            "dimension": label.cell_dimension(),
            "weights": t,
            "total": t.total(),
            "positive_count": positive,
        }));
    }
    Ok(json!({"v": v, "degree": v.degree(), "labels": labels}))
}

fn cmd_shift(v: &str, beta: i64, window: &str, convention: &str) -> Result<Value, String> {
    let v = parse_vector(v)?;
    let window = parse_window(window)?;
    let convention = parse_convention(convention)?;
    let shifted = shift_index(&v, beta, window, convention).map_err(|e| e.to_string())?;
    Ok(json!({
        "input": {"v": v, "window": window, "beta": beta, "convention": convention},
        "shifted": {"v": shifted.v, "window": shifted.window},
        "degree_before": v.degree(),
        "degree_after": shifted.v.degree(),
    }))
}

fn cmd_mu(v: &str) -> Result<Value, String> {
    let u = parse_vector(v)?;
    if classify_generator(&u) == GeneratorClass::NotGenerator {
        return Err(format!("{u} is not a generator"));
    }
    Ok(json!({
        "u": u,
        "mu": mu(&u).map_err(|e| e.to_string())?,
        "sgn": sgn(&u).map_err(|e| e.to_string())?,
        "g": g_value(&u).map_err(|e| e.to_string())?,
    }))
}

/// Degree bookkeeping of the shift maps over a whole range: the d-preserving
/// convention must keep `d` fixed, the verbatim one must change it by
/// `−ρ_β(v)` at negative β.
fn verify_shift(window: &Window, max_n: i64) -> (usize, Vec<String>) {
    let mut checked = 0usize;
    let mut violations = Vec::new();
    for v in genfun::admissible_vectors(window, max_n, max_n.max(1)) {
        for beta in window.levels().chain(std::iter::once(1)) {
            for convention in [ShiftConvention::DPreserving, ShiftConvention::PaperLiteral] {
                let shifted = match shift_index(&v, beta, *window, convention) {
                    Ok(s) => s,
                    Err(_) => continue,
                };
                checked += 1;
                let expected = match convention {
                    ShiftConvention::DPreserving => v.degree(),
                    ShiftConvention::PaperLiteral if beta < 0 => v.degree() - v.get(beta),
                    ShiftConvention::PaperLiteral => v.degree(),
                };
                if shifted.v.degree() != expected {
                    violations.push(format!(
                        "{v} at β={beta} ({convention:?}): degree {} ≠ {expected}",
                        shifted.v.degree()
                    ));
                }
                if !shifted.window.contains_support(&shifted.v) {
                    violations.push(format!("{v} at β={beta}: support escapes the window"));
                }
            }
        }
    }
    (checked, violations)
}

fn cmd_verify(
    suite: &str,
    bound: Option<&str>,
    window: &Option<String>,
    max_n: Option<i64>,
    betti: &Option<Vec<String>>,
) -> Result<(Value, bool), String> {
    match suite {
        "lemmas" => {
            let bound = parse_bound(bound, 3)?;
            let report = parhilb::lattice::verify_dimension_lemmas(bound);
            let passed = report.passed();
            Ok((
                json!({
                    "suite": suite,
                    "passed": passed,
                    "single_cases": report.single_cases,
                    "pair_cases": report.pair_cases,
                    "violations": report.violations,
                }),
                passed,
            ))
        }
        "cells-vs-product" => {
            let window = parse_window(window.as_deref().unwrap_or("-1:2"))?;
            let max_n = max_n.unwrap_or(4);
            let report = genfun::verify_cell_vs_product(&window, max_n);
            let passed = report.passed();
            Ok((
                json!({
                    "suite": suite,
                    "passed": passed,
                    "cases": report.cases,
                    "mismatches": report.mismatches,
                }),
                passed,
            ))
        }
        "weights" => {
            let window = parse_window(window.as_deref().unwrap_or("-2:3"))?;
            let bound = parse_bound(bound, 3)?;
            let report = weights::verify_coherence(&window, bound, 2);
            let passed = report.passed();
            Ok((
                json!({
                    "suite": suite,
                    "passed": passed,
                    "labels_checked": report.labels_checked,
                    "violations": report.violations,
                }),
                passed,
            ))
        }
        "fock" => {
            let window = parse_window(window.as_deref().unwrap_or("-2:3"))?;
            let bound = parse_bound(bound, 3)?;
            let betti = match betti {
                Some(parts) => parse_betti(parts)?,
                None => BettiData::rational(),
            };
            let model = CohModel::hyperbolic(&betti).map_err(|e| e.to_string())?;
            let gen_order =
                TruncationOrder::for_window(bound as u32, window.lo, window.hi, 1);
            // Generators range over the full bound; the basis-state sweep is
            // capped at ρ₀ ≤ 2, which already contains every interaction
            // pattern (double factors, odd duplicates, mixed Koszul signs).
            let state_order =
                TruncationOrder::for_window(bound.min(2) as u32, window.lo, window.hi, 1);
            let report = fock::verify_heisenberg(&model, &gen_order, &state_order);
            let passed = report.passed();
            Ok((
                json!({
                    "suite": suite,
                    "passed": passed,
                    "pairs_checked": report.generator_pairs,
                    "states_checked": report.states,
                    "violations": report.failures,
                }),
                passed,
            ))
        }
        "shift" => {
            let window = parse_window(window.as_deref().unwrap_or("-2:3"))?;
            let bound = parse_bound(bound, 3)?;
            let (checked, violations) = verify_shift(&window, bound);
            let passed = violations.is_empty();
            Ok((
                json!({
                    "suite": suite,
                    "passed": passed,
                    "cases": checked,
                    "violations": violations,
                }),
                passed,
            ))
        }
        other => Err(format!(
            "unknown suite {other:?}; expected lemmas, cells-vs-product, weights, fock, or shift"
        )),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        // Ignore the error if a global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let result: Result<(Value, bool), String> = match &cli.command {
        Command::Cells { v } => cmd_cells(v).map(|j| (j, true)),
        Command::Genfun { betti, series, v } => cmd_genfun(betti, series, v).map(|j| (j, true)),
        Command::Local { series, v } => cmd_local(series, v).map(|j| (j, true)),
        Command::Weights { v, window } => cmd_weights(v, window).map(|j| (j, true)),
        Command::Shift {
            v,
            beta,
            window,
            convention,
        } => cmd_shift(v, *beta, window, convention).map(|j| (j, true)),
        Command::Mu { v } => cmd_mu(v).map(|j| (j, true)),
        Command::Verify {
            suite,
            bound,
            window,
            max_n,
            betti,
        } => cmd_verify(suite, bound.as_deref(), window, *max_n, betti),
    };
    match result {
        Ok((value, passed)) => {
            if let Err(e) = emit(&value, &cli.out) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

use std::collections::HashSet;
use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use sylow::eval::{catalog_rows, fingerprint_text, sylow_text, Evaluator};
use sylow::expr::{parse, Expr};
use sylow::suite::{acceptance_cases, run_suite, sweep_cases, to_json, CaseSpec, SuiteConfig};
use sylow_core::catalog::{default_entry, lookup, ModelOptions};
use sylow_core::classical::{ClassicalSpec, Family, Sign};
use sylow_core::iso::{is_isomorphic, Disproof, IsoOutcome};
use sylow_core::verify::{verify_claim, Verdict};
use sylow_core::{Error, Limits};

#[derive(Parser)]
#[command(name = "sylow", version, about = "Sylow subgroups of small classical groups")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum number of elements of any enumerated group.
    #[arg(long, global = true, default_value_t = Limits::default().elements)]
    max_elements: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order of a group expression.
    Order { expr: String },
    /// Isomorphism invariants of a group expression.
    Fingerprint { expr: String },
    /// A Sylow subgroup of a group expression.
    Sylow { prime: u64, expr: String },
    /// Decide whether two expressions give isomorphic groups.
    Iso { left: String, right: String },
    /// Catalog entries with applicability and constants.
    ListCatalog,
    /// Check one catalog claim against a brute-force Sylow subgroup.
    Verify {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        prime: u64,
        /// Matrix dimension.
        #[arg(long)]
        dim: usize,
        /// Order of the field the matrices live over (q^2 for U, SU, PSU).
        #[arg(long)]
        q: u64,
        /// Orthogonal sign, `+` or `-`.
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        eps: Option<Sign>,
        /// Catalog entry; defaults to the one covering the family and prime.
        #[arg(long)]
        entry: Option<String>,
        #[arg(long)]
        allow_l2_psl: bool,
    },
    /// Run a batch of verifications.
    VerifySuite {
        /// Only cases whose ambient group has at most this order; also adds
        /// every default-entry case up to this order.
        #[arg(long)]
        max_order: Option<u128>,
        /// Worker threads (default: available parallelism).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<String>,
        /// Run a JSON list of cases instead of the built-in list.
        #[arg(long)]
        cases: Option<String>,
        /// Apply the `l = 2` override to the PSL-l and SL-l entries.
        #[arg(long)]
        allow_l2_psl: bool,
        /// Record wall time per case (reports are then not reproducible).
        #[arg(long)]
        timings: bool,
        /// Print the selected cases as a case file instead of running them.
        #[arg(long)]
        dry_run: bool,
    },
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        _ => Err(format!("expected + or -, got {s:?}")),
    }
}

const USAGE: u8 = 2;
const BUDGET: u8 = 3;

/// Exit status for a library error.
fn error_code(e: &Error) -> u8 {
    match e {
        e if e.is_budget() => BUDGET,
        Error::Inapplicable(_) | Error::InvalidSpec(_) | Error::InvalidParameter(_) | Error::NotPrime(_) => USAGE,
        _ => 1,
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(error_code(&e))
}

fn parse_arg(text: &str) -> Result<Expr, ExitCode> {
    parse(text).map_err(|e| {
        eprintln!("{}", e.render(text));
        ExitCode::from(USAGE)
    })
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits { elements: cli.max_elements, ..Limits::default() };
    match run(cli, limits) {
        Ok(code) | Err(code) => code,
    }
}

fn run(cli: Cli, limits: Limits) -> Result<ExitCode, ExitCode> {
    let ev = Evaluator { limits, options: ModelOptions::default() };
    match cli.command {
        Command::Order { expr } => {
            let e = parse_arg(&expr)?;
            let g = ev.eval(&e).map_err(fail)?;
            if cli.json {
                print_json(&json!({ "expr": e.to_string(), "order": g.order() }));
            } else {
                println!("{}", g.order());
            }
        }
        Command::Fingerprint { expr } => {
            let e = parse_arg(&expr)?;
            let d = ev.describe(&e).map_err(fail)?;
            if cli.json {
                print_json(&d);
            } else {
                println!("{}", fingerprint_text(&d.fingerprint));
                if let Some(s) = &d.sylow {
                    println!("{}", sylow_text(s));
                }
            }
        }
        Command::Sylow { prime, expr } => {
            let e = parse_arg(&expr)?;
            let syl = Expr::Syl(prime, Box::new(e));
            // route through the parser so the prime is validated the same way
            let syl = parse_arg(&syl.to_string())?;
            let d = ev.describe(&syl).map_err(fail)?;
            if cli.json {
                print_json(&d);
            } else {
                println!("{}", sylow_text(d.sylow.as_ref().expect("Syl node")));
                println!("{}", fingerprint_text(&d.fingerprint));
            }
        }
        Command::Iso { left, right } => {
            let (a, b) = (parse_arg(&left)?, parse_arg(&right)?);
            let (g, h) = (ev.eval(&a).map_err(fail)?, ev.eval(&b).map_err(fail)?);
            let out = is_isomorphic(&g, &h, &limits).map_err(fail)?;
            let (iso, detail) = match &out {
                IsoOutcome::Isomorphic(w) => (true, json!({ "witness": w.pairs })),
                IsoOutcome::NotIsomorphic(Disproof::Invariant { name, left, right }) => {
                    (false, json!({ "invariant": name, "left": left, "right": right }))
                }
                IsoOutcome::NotIsomorphic(Disproof::Exhausted { nodes }) => (false, json!({ "exhausted": nodes })),
            };
            if cli.json {
                print_json(&json!({ "left": a.to_string(), "right": b.to_string(), "isomorphic": iso, "detail": detail }));
            } else if let IsoOutcome::Isomorphic(w) = &out {
                let pairs: Vec<String> = w.pairs.iter().map(|(x, y)| format!("{} -> {}", g.label(*x), h.label(*y))).collect();
                println!("isomorphic\n{}", pairs.join("\n"));
            } else {
                println!("not isomorphic: {detail}");
            }
            if !iso {
                return Err(ExitCode::from(1));
            }
        }
        Command::ListCatalog => {
            let rows = catalog_rows();
            if cli.json {
                print_json(&rows);
            } else {
                for r in rows {
                    println!("{}\t{}\t{}\t{}\t{}", r["id"], r["family"], r["locator"], r["applies"], r["constants"]);
                }
            }
        }
        Command::Verify { family, prime, dim, q, eps, entry, allow_l2_psl } => {
            let spec = ClassicalSpec::new(family, dim, q, eps).map_err(fail)?;
            let entry = match entry {
                Some(id) => lookup(&id).ok_or_else(|| fail(Error::InvalidSpec(format!("unknown catalog entry {id:?}"))))?,
                None => default_entry(&spec, prime).map_err(fail)?,
            };
            let report = verify_claim(&spec, prime, entry, ModelOptions { allow_l2_psl }, &limits).map_err(fail)?;
            if cli.json {
                print_json(&report);
            } else {
                println!("{} {}", report.case, report.verdict);
                let show = |o: Option<u64>| o.map_or("-".to_string(), |x| x.to_string());
                println!("model {} order {}", report.model.as_deref().unwrap_or("-"), show(report.expected_order));
                println!("Sylow order {}", show(report.actual_order));
                for r in &report.reductions {
                    println!("reduction {r}");
                }
                if let Some(d) = &report.detail {
                    println!("{d}");
                }
            }
            return Ok(match report.verdict {
                Verdict::Pass => ExitCode::SUCCESS,
                Verdict::FailOrder | Verdict::FailIso => ExitCode::from(1),
                Verdict::Inapplicable => ExitCode::from(USAGE),
                Verdict::Budget => ExitCode::from(BUDGET),
            });
        }
        Command::VerifySuite { max_order, jobs, out, cases, allow_l2_psl, timings, dry_run } => {
            let mut list: Vec<CaseSpec> = match &cases {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| {
                        eprintln!("error: {path}: {e}");
                        ExitCode::from(USAGE)
                    })?;
                    serde_json::from_str(&text).map_err(|e| {
                        eprintln!("error: {path}: {e}");
                        ExitCode::from(USAGE)
                    })?
                }
                None => acceptance_cases(),
            };
            if allow_l2_psl {
                list.iter_mut().for_each(|c| c.allow_l2_psl = true);
            }
            if let Some(max) = max_order {
                list.retain(|c| c.spec().is_ok_and(|s| sylow_core::classical::order_formula(&s).is_some_and(|o| o <= max)));
                if cases.is_none() {
                    let key = |c: &CaseSpec| (c.family, c.dim, c.q, c.eps, c.prime, c.entry.clone());
                    let mut seen: HashSet<_> = list.iter().map(key).collect();
                    list.extend(sweep_cases(max, allow_l2_psl).into_iter().filter(|c| seen.insert(key(c))));
                }
            }
            if dry_run {
                print_json(&list);
                return Ok(ExitCode::SUCCESS);
            }
            let config = SuiteConfig { jobs, timings, limits };
            let report = run_suite(&list, &config).map_err(fail)?;
            let text = to_json(&report);
            if let Some(path) = &out {
                fs::write(path, format!("{text}\n")).map_err(|e| {
                    eprintln!("error: {path}: {e}");
                    ExitCode::from(1)
                })?;
            }
            if cli.json {
                println!("{text}");
            } else {
                for c in &report.cases {
                    let tag = if c.quarantined { " (quarantined)" } else { "" };
                    let ms = c.ms.map_or(String::new(), |ms| format!(" {ms} ms"));
                    println!("{:<13} {}{tag}{ms}", c.report.verdict.as_str(), c.report.case);
                }
                let counts: Vec<String> = report.summary.verdicts.iter().map(|(k, v)| format!("{k} {v}")).collect();
                println!("{} cases: {}", report.summary.total, counts.join(", "));
            }
            return Ok(ExitCode::from(report.exit_code() as u8));
        }
    }
    Ok(ExitCode::SUCCESS)
}

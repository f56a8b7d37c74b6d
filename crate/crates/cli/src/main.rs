//! `linklab`: invariants of ideals and their links from the command line.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 for bad
//! input or a failed computation.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use linklab_core::frobenius::DEFAULT_E_MAX;
use linklab_core::harness::ledger;
use linklab_core::harness::report::{invariant_report_any, ReportOptions, SCHEMA_VERSION};
use linklab_core::harness::suites::{self, SuiteOptions};
use linklab_core::linkage::{self, DepthSnapshot, LinkChain, LinkageRecord};
use linklab_core::par::Execution;
use linklab_core::parse::{self, format_ideal};
use linklab_core::{AnyIdeal, Error, Field, Ideal, Result};

#[derive(Parser)]
#[command(
    name = "linklab",
    version,
    about = "Depth and cohomological dimension under linkage"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, height, depth, pd, Betti table, cd and formal grade of R/I
    Invariants {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Largest Frobenius exponent tried by the cd probe
        #[arg(long, default_value_t = DEFAULT_E_MAX)]
        e_max: u32,
    },
    /// Link `a` by the complete intersection in `--ci`
    Link {
        a: PathBuf,
        #[arg(long)]
        ci: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Link `a` by a random complete intersection inside it
    FindLink {
        a: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// An even chain of links starting at `a`
    Chain {
        a: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Re-derive the worked examples
    VerifyPaper {
        /// Also run the twelve-variable determinantal example
        #[arg(long)]
        heavy: bool,
        #[arg(long)]
        json: bool,
    },
    /// Randomized linkage properties on squarefree monomial ideals
    PropertyTest {
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        vars: usize,
        /// 0 for the rationals
        #[arg(long = "char", default_value_t = 32003)]
        characteristic: u64,
        /// Run trials one at a time
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<AnyIdeal> {
    parse::parse_ideal_file(path).map_err(|e| match e {
        Error::Parse {
            line,
            column,
            message,
        } => Error::Parse {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        Error::Io(m) => Error::Io(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn print_json(v: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("json values serialize")
    );
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Invariants { file, json, e_max } => {
            let ideal = load(&file)?;
            let report = invariant_report_any(&ideal, &ReportOptions { e_max });
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            Ok(report.is_consistent())
        }
        Command::Link { a, ci, json } => match (load(&a)?, load(&ci)?) {
            (AnyIdeal::Prime(a), AnyIdeal::Prime(c)) => link_cmd(&a, &c, json),
            (AnyIdeal::Rational(a), AnyIdeal::Rational(c)) => link_cmd(&a, &c, json),
            _ => Err(Error::RingMismatch),
        },
        Command::FindLink { a, seed, json } => {
            let a = load(&a)?;
            linklab_core::with_ideal!(&a, i => {
                let rec = linkage::find_ci_link(i, seed)?;
                report_link(&rec, json)
            })
        }
        Command::Chain {
            a,
            steps,
            seed,
            json,
        } => {
            let a = load(&a)?;
            linklab_core::with_ideal!(&a, i => {
                let chain = linkage::even_link_chain(i, steps, seed)?;
                report_chain(&chain, steps, json)
            })
        }
        Command::VerifyPaper { heavy, json } => {
            let l = ledger::verify_paper_suite(heavy);
            if json {
                print_json(
                    &json!({ "schema": SCHEMA_VERSION, "entries": l.entries, "passed": l.all_passed() }),
                );
            } else {
                print!("{}", l.to_text());
            }
            Ok(l.all_passed())
        }
        Command::PropertyTest {
            trials,
            seed,
            vars,
            characteristic,
            sequential,
            json,
        } => {
            let opts = SuiteOptions {
                exec: if sequential {
                    Execution::Sequential
                } else {
                    Execution::Auto
                },
                ..Default::default()
            };
            let r = suites::random_property_suite_with(trials, seed, vars, characteristic, opts)?;
            if json {
                println!("{}", r.to_json());
            } else {
                print!("{}", r.to_text());
            }
            Ok(r.passed())
        }
    }
}

fn link_cmd<F: Field>(a: &Ideal<F>, c: &Ideal<F>, json: bool) -> Result<bool> {
    let rec = linkage::link(a, c)?;
    report_link(&rec, json)
}

fn gens<F: Field>(i: &Ideal<F>) -> Vec<String> {
    i.generators().iter().map(|g| g.to_string()).collect()
}

fn snapshot_text(name: &str, s: &DepthSnapshot) -> String {
    format!(
        "{name}: dim {}, height {}, depth {}, pd {}{}",
        s.dim,
        s.height,
        s.depth,
        s.pd,
        if s.is_cohen_macaulay() {
            ", Cohen-Macaulay"
        } else {
            ""
        }
    )
}

fn report_link<F: Field>(rec: &LinkageRecord<F>, json: bool) -> Result<bool> {
    let check = linkage::verify_link(&rec.a, &rec.b, &rec.c);
    let canonical = linkage::canonical_depth(rec);
    let ok = rec.verified && check.ok;
    if json {
        let canonical = match &canonical {
            Ok(d) => json!({ "value": d }),
            Err(e) => json!({ "value": null, "reason": e.to_string() }),
        };
        print_json(&json!({
            "schema": SCHEMA_VERSION,
            "a": gens(&rec.a),
            "c": gens(&rec.c),
            "b": gens(&rec.b),
            "verified": rec.verified,
            "unmixed": rec.unmixed,
            "invariants_a": rec.invariants_a,
            "invariants_b": rec.invariants_b,
            "canonical_depth": canonical,
            "check": check,
        }));
    } else {
        println!("c = {}", rec.c);
        println!("{}", snapshot_text("R/a", &rec.invariants_a));
        println!("{}", snapshot_text("R/b", &rec.invariants_b));
        match &canonical {
            Ok(d) => println!("depth of the canonical module of R/a: {d}"),
            Err(e) => println!("depth of the canonical module of R/a: unknown ({e})"),
        }
        println!("unmixedness of a: {:?}", rec.unmixed);
        println!("verified: {}", if ok { "yes" } else { "no" });
        for r in &check.reasons {
            println!("  {r}");
        }
        println!("# linked ideal b = c : a");
        print!("{}", format_ideal(&rec.b));
    }
    Ok(ok)
}

fn report_chain<F: Field>(chain: &LinkChain<F>, steps: usize, json: bool) -> Result<bool> {
    let depths_agree = chain.depths.windows(3).all(|w| w[0] == w[2]);
    let complete = chain.is_complete(steps);
    if json {
        let stages: Vec<Value> = chain
            .ideals
            .iter()
            .zip(&chain.depths)
            .map(|(i, d)| json!({ "generators": gens(i), "depth": d }))
            .collect();
        let cis: Vec<Vec<String>> = chain.records.iter().map(|r| gens(&r.c)).collect();
        print_json(&json!({
            "schema": SCHEMA_VERSION,
            "steps": steps,
            "stages": stages,
            "links": cis,
            "complete": complete,
            "failure": chain.failure.as_ref().map(|e| json!({ "kind": e.kind(), "reason": e.to_string() })),
            "even_distance_depths_agree": depths_agree,
        }));
    } else {
        for (k, (i, d)) in chain.ideals.iter().zip(&chain.depths).enumerate() {
            println!("stage {k}: depth {d}  {i}");
        }
        if let Some(e) = &chain.failure {
            println!("stopped after {} links: {e}", chain.records.len());
        }
        println!(
            "depths at even distance agree: {}",
            if depths_agree { "yes" } else { "no" }
        );
    }
    Ok(complete && depths_agree)
}

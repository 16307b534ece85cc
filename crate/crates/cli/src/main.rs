//! `syat`: batch front end for the seven-valued logic engine.
//!
//! Exit status: 0 for an affirmative result, 1 for a negative result with
//! its witness printed, 2 for usage or input errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use syat::bridge::derive_triplet;
use syat::dynamics::{parse_program, EventKind, Scenario};
use syat::quantlogic::ContextSlot;
use syat::valuation::{check_sequent, verify_countermodel, ContextId, EnumerationOptions, Sequent};
use syat::{
    check_all_forms, check_form, check_laws, check_named_properties, find_joint_model, parse, parse_list, Atom,
    Connective, DistinctnessMode, Execution, FiniteModel, Form, Valuation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "syat", version, about = "Seven-valued context-indexed logic engine")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Maximum number of distinct atoms in an enumerated sequent.
    #[arg(long, global = true, default_value_t = syat::valuation::DEFAULT_ATOM_CAP)]
    cap: usize,
    /// Closure of the distinctness clause: disjoint, notcoext or xor.
    #[arg(long, global = true, default_value = "disjoint")]
    distinctness: DistinctnessMode,
    /// Enumeration strategy: sequential or parallel.
    #[arg(long, global = true, default_value_t = Execution::default())]
    execution: Execution,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Print the truth table of a connective (neg, and, or, implies).
    Table { connective: Connective },
    /// Check the sequent GAMMA => DELTA [CONTEXT] over all valuations.
    Entail {
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        delta: String,
        #[arg(long, default_value = "c")]
        context: String,
        /// Restrict atoms to (1,0,0) and (0,1,0).
        #[arg(long)]
        classical: bool,
    },
    /// Run a program against a scenario file.
    Scenario {
        file: PathBuf,
        /// Comma-separated commands, e.g. "step,switch:open_alive".
        #[arg(long, default_value = "")]
        program: String,
        /// Formula evaluated in the final state and in every context.
        #[arg(long)]
        query: Option<String>,
    },
    /// Evaluate quantified forms on a finite model file.
    Qmodel {
        file: PathBuf,
        /// "all" or a comma-separated list of roman numerals.
        #[arg(long, default_value = "all")]
        form: String,
    },
    /// Derive the triple a model context assigns to its predicate.
    Bridge {
        file: PathBuf,
        #[arg(long)]
        context: ContextSlot,
        /// Name reported for the predicate `p`.
        #[arg(long, default_value = "p")]
        predicate: String,
    },
    /// Run the named sequent battery and the exhaustive connective laws.
    Properties,
    /// Search for a model of the given size satisfying forms jointly.
    Search {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value = "iv,v,vi,vii")]
        form: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn out(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn emit(format: Format, text: impl FnOnce() -> String, value: impl FnOnce() -> Value) {
    match format {
        Format::Text => out(&text()),
        Format::Json => out(&json_line(&value())),
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Cmd::Table { connective } => {
            let table = syat::truth::truth_table(*connective);
            emit(cli.format, || table.render_text(), || json!(table.names()));
            Ok(0)
        }
        Cmd::Entail {
            gamma,
            delta,
            context,
            classical,
        } => entail(cli, gamma, delta, context, *classical),
        Cmd::Scenario { file, program, query } => scenario(cli, file, program, query.as_deref()),
        Cmd::Qmodel { file, form } => qmodel(cli, file, form),
        Cmd::Bridge {
            file,
            context,
            predicate,
        } => {
            let model = FiniteModel::load(file).with_context(|| format!("loading {}", file.display()))?;
            let predicate = Atom::new(predicate.as_str())?;
            let triplet = derive_triplet(&model, *context, &predicate)?;
            out(&json_line(&json!(triplet)));
            Ok(0)
        }
        Cmd::Properties => Ok(properties(cli)),
        Cmd::Search { size, form } => {
            let forms = parse_forms(form)?;
            let found = find_joint_model(*size, &forms, cli.distinctness, cli.execution)?;
            match found {
                Some(m) => {
                    out(&json_line(&json!(m)));
                    Ok(0)
                }
                None => {
                    out("null\n");
                    Ok(1)
                }
            }
        }
    }
}

fn entail(cli: &Cli, gamma: &str, delta: &str, context: &str, classical: bool) -> Result<u8> {
    let g = parse_list(gamma).context("in --gamma")?;
    let d = parse_list(delta).context("in --delta")?;
    let context = ContextId::new(context).map_err(anyhow::Error::msg)?;
    let sequent = Sequent::new(g, d, context);
    let opts = EnumerationOptions {
        cap: cli.cap,
        classical_only: classical,
        execution: cli.execution,
    };
    let result = check_sequent(&sequent, &opts)?;
    if let Some(cm) = &result.countermodel {
        if !verify_countermodel(&sequent, cm)? {
            bail!("internal error: countermodel failed re-evaluation");
        }
    }
    emit(
        cli.format,
        || {
            let mut out = format!(
                "{}: {sequent} ({} valuations checked)\n",
                if result.valid { "VALID" } else { "INVALID" },
                result.valuations_checked
            );
            if let Some(cm) = &result.countermodel {
                out.push_str(&format!("countermodel [{}]: {}\n", cm.context, cm.assignment));
            }
            out
        },
        || {
            json!({
                "sequent": sequent.to_string(),
                "valid": result.valid,
                "valuations_checked": result.valuations_checked,
                "countermodel": result.countermodel,
            })
        },
    );
    Ok(if result.valid { 0 } else { 1 })
}

fn state_json(v: &Valuation) -> Value {
    json!({ "context": v.context, "valuation": v.assignment })
}

fn scenario(cli: &Cli, file: &PathBuf, program: &str, query: Option<&str>) -> Result<u8> {
    let scenario = Scenario::load(file).with_context(|| format!("loading {}", file.display()))?;
    let program = parse_program(program)?;
    let query = query.map(parse).transpose().context("in --query")?;
    let trace = scenario.run(&program)?;
    let last = trace.final_state();
    let answer = match &query {
        Some(f) => Some((f, syat::evaluate(f, &last)?, scenario.assert_no_global_valuation(f)?)),
        None => None,
    };
    emit(
        cli.format,
        || {
            let mut out = format!("initial [{}]: {}\n", trace.initial.context, trace.initial.assignment);
            for (i, e) in trace.events.iter().enumerate() {
                let what = match e.kind {
                    EventKind::Step => format!("step (tick {})", e.tick.unwrap_or_default()),
                    EventKind::Switch => format!("switch {}", e.label.as_deref().unwrap_or_default()),
                };
                out.push_str(&format!(
                    "{:>3}. {what}: {} -> {}: {}\n",
                    i + 1,
                    e.before,
                    e.after,
                    e.valuation
                ));
            }
            out.push_str(&format!("final [{}]: {}\n", last.context, last.assignment));
            if let Some((f, v, report)) = &answer {
                out.push_str(&format!("query {f} in {}: {} {v}\n", last.context, v.name()));
                for (c, v) in &report.per_context {
                    out.push_str(&format!("  {c}: {} {v}\n", v.name()));
                }
                out.push_str(&format!("globally uniform: {}\n", report.globally_uniform));
            }
            out
        },
        || {
            let mut doc = json!({
                "initial": state_json(&trace.initial),
                "events": trace.events,
                "final": state_json(&last),
            });
            if let Some((f, v, report)) = &answer {
                let per_context: serde_json::Map<String, Value> = report
                    .per_context
                    .iter()
                    .map(|(c, v)| (c.to_string(), json!(v)))
                    .collect();
                doc["query"] = json!({
                    "formula": f.to_string(),
                    "final": v,
                    "per_context": per_context,
                    "globally_uniform": report.globally_uniform,
                });
            }
            doc
        },
    );
    Ok(0)
}

fn parse_forms(spec: &str) -> Result<Vec<Form>> {
    if spec.trim().eq_ignore_ascii_case("all") {
        return Ok(Form::ALL.to_vec());
    }
    let forms = spec
        .split(',')
        .map(|s| s.trim().parse::<Form>().map_err(anyhow::Error::msg))
        .collect::<Result<Vec<_>>>()?;
    if forms.is_empty() {
        bail!("no forms requested");
    }
    Ok(forms)
}

fn qmodel(cli: &Cli, file: &PathBuf, form: &str) -> Result<u8> {
    let model = FiniteModel::load(file).with_context(|| format!("loading {}", file.display()))?;
    let forms = parse_forms(form)?;
    let verdicts = if forms == Form::ALL {
        check_all_forms(&model, cli.distinctness)?
    } else {
        forms
            .iter()
            .map(|&f| check_form(&model, f, cli.distinctness))
            .collect::<Result<Vec<_>, _>>()?
    };
    let all_hold = verdicts.iter().all(|v| v.holds);
    emit(
        cli.format,
        || {
            let mut out = String::new();
            for v in &verdicts {
                out.push_str(&format!(
                    "{:<4} {}",
                    v.form.as_str(),
                    if v.holds { "holds" } else { "fails" }
                ));
                if let Some(w) = &v.witness {
                    out.push_str(&format!("  witness: {w}"));
                }
                if let Some((a, b)) = v.pair {
                    out.push_str(&format!("  not distinct ({}): {a}, {b}", cli.distinctness));
                }
                out.push('\n');
            }
            out
        },
        || json!(verdicts),
    );
    Ok(if all_hold { 0 } else { 1 })
}

fn properties(cli: &Cli) -> u8 {
    let battery = check_named_properties();
    let laws = check_laws();
    let ok = battery.all_passed() && laws.iter().all(|l| l.passed());
    emit(
        cli.format,
        || {
            let mut out = String::new();
            for c in &battery.checks {
                out.push_str(&format!(
                    "{} {:<24} {} expected {}",
                    if c.passed() { "PASS" } else { "FAIL" },
                    c.name,
                    c.sequent,
                    if c.expected_valid { "valid" } else { "invalid" },
                ));
                if let Some(cm) = &c.result.countermodel {
                    out.push_str(&format!("; countermodel {}", cm.assignment));
                }
                out.push('\n');
            }
            for l in &laws {
                out.push_str(&format!(
                    "{} {:<24} {} cases, {} failures\n",
                    if l.passed() { "PASS" } else { "FAIL" },
                    l.name,
                    l.cases,
                    l.failures
                ));
            }
            out
        },
        || {
            let checks: Vec<Value> = battery
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "sequent": c.sequent.to_string(),
                        "expected_valid": c.expected_valid,
                        "valid": c.result.valid,
                        "countermodel": c.result.countermodel,
                        "witness_verified": c.witness_verified,
                        "passed": c.passed(),
                    })
                })
                .collect();
            json!({ "battery": checks, "laws": laws, "passed": ok })
        },
    );
    if ok {
        0
    } else {
        1
    }
}

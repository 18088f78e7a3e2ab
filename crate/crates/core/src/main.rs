use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use corel::dot::{corelation_dot, term_dot};
use corel::normalform::{
    decide_equal, enumerate_corelations, enumerate_relations, synth, synth_rel, Decidable,
};
use corel::semantics::{check_axioms_in, eval_in, AnyArrow, Target};
use corel::syntax::{format_term, is_arrow_text, parse_term};
use corel::theory::{random_term, PresetTheory, Signature, Term, Theory};

/// Corelations, cospans, spans and relations: evaluate, synthesize and
/// compare string diagrams.
#[derive(Debug, Parser)]
#[command(name = "corel", version)]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether two terms are equal; exit 0 if equal, 1 if not.
    Check {
        left: String,
        right: String,
        #[arg(long, value_enum)]
        theory: TheoryArg,
    },
    /// Evaluate a term in one of the standard models.
    Eval {
        term: String,
        #[arg(long, value_enum)]
        model: ModelArg,
    },
    /// Synthesize a normal-form term from a corelation (or relation).
    Synth { arrow: String },
    /// List every corelation (or relation) N -> M.
    Enumerate {
        n: usize,
        m: usize,
        #[arg(long)]
        count_only: bool,
        /// Enumerate relations instead of corelations.
        #[arg(long)]
        relations: bool,
    },
    /// Print a preset theory, optionally checking it against a model.
    Axioms {
        #[arg(long)]
        theory: String,
        #[arg(long, requires = "model")]
        verify: bool,
        #[arg(long, value_enum)]
        model: Option<ModelArg>,
    },
    /// Render a term or corelation as a Graphviz diagram.
    Render {
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Sample a random well-typed term over mu, eta, delta, epsilon.
    Random {
        #[arg(long, default_value_t = 12)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TheoryArg {
    Escfm,
    Sbb,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    Corel,
    Cospan,
    Rel,
    Span,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Dot,
}

impl From<ModelArg> for Target {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Corel => Target::Corel,
            ModelArg::Cospan => Target::Cospan,
            ModelArg::Rel => Target::Rel,
            ModelArg::Span => Target::Span,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "error": format!("{e:#}") }));
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(2)
        }
    }
}

fn term(text: &str) -> Result<Term> {
    parse_term(text).with_context(|| format!("parsing term `{text}`"))
}

fn arrow_json(a: &AnyArrow) -> Value {
    let mut v = serde_json::to_value(a).expect("arrows serialize");
    v["text"] = Value::String(a.to_string());
    v
}

fn emit(json_mode: bool, value: Value, text: impl FnOnce() -> String) {
    if json_mode {
        println!("{value}");
    } else {
        print!("{}", text());
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let sig = Signature::frobenius();
    match &cli.command {
        Command::Check {
            left,
            right,
            theory,
        } => {
            let theory = match theory {
                TheoryArg::Escfm => Decidable::Escfm,
                TheoryArg::Sbb => Decidable::Sbb,
            };
            let verdict = decide_equal(&term(left)?, &term(right)?, theory)?;
            emit(
                cli.json,
                json!({
                    "theory": theory.to_string(),
                    "equal": verdict.equal,
                    "left": arrow_json(&verdict.left),
                    "right": arrow_json(&verdict.right),
                }),
                || {
                    let head = if verdict.equal { "equal" } else { "not equal" };
                    format!(
                        "{head}\n  left:  {}\n  right: {}\n",
                        verdict.left, verdict.right
                    )
                },
            );
            Ok(if verdict.equal {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Eval { term: text, model } => {
            let t = term(text)?;
            let arrow = eval_in(&t, (*model).into())?;
            let (n, m) = arrow.arity();
            emit(
                cli.json,
                json!({
                    "term": format_term(&t),
                    "model": Target::from(*model).to_string(),
                    "type": [n, m],
                    "arrow": arrow_json(&arrow),
                }),
                || format!("{arrow}\n"),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Synth { arrow } => {
            let parsed: AnyArrow = arrow
                .parse()
                .with_context(|| format!("parsing arrow `{arrow}`"))?;
            let t = match &parsed {
                AnyArrow::Corel(c) => synth(c),
                AnyArrow::Rel(r) => synth_rel(r),
                other => bail!("synth accepts a corelation or a relation, not `{other}`"),
            };
            emit(
                cli.json,
                json!({ "arrow": arrow_json(&parsed), "term": format_term(&t), "size": t.size() }),
                || format!("{t}\n"),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate {
            n,
            m,
            count_only,
            relations,
        } => {
            let items: Vec<String> = if *relations {
                enumerate_relations(*n, *m)?
                    .map(|r| r.to_string())
                    .collect()
            } else {
                enumerate_corelations(*n, *m)?
                    .map(|c| c.to_string())
                    .collect()
            };
            let mut value = json!({ "dom": n, "cod": m, "count": items.len() });
            if !count_only {
                value["arrows"] = json!(items);
            }
            emit(cli.json, value, || {
                if *count_only {
                    format!("{}\n", items.len())
                } else {
                    items.iter().map(|s| format!("{s}\n")).collect()
                }
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Axioms {
            theory,
            verify,
            model,
        } => {
            let which: PresetTheory = theory.parse()?;
            let th = Theory::preset(which);
            if !verify {
                let eqs: Vec<Value> = th
                    .equations
                    .iter()
                    .map(|e| json!({ "name": e.name, "lhs": format_term(&e.lhs), "rhs": format_term(&e.rhs) }))
                    .collect();
                emit(
                    cli.json,
                    json!({ "theory": th.name, "equations": eqs }),
                    || {
                        th.equations
                            .iter()
                            .map(|e| format!("{}: {} = {}\n", e.name, e.lhs, e.rhs))
                            .collect()
                    },
                );
                return Ok(ExitCode::SUCCESS);
            }
            let target: Target = model.expect("clap enforces --model with --verify").into();
            let report = check_axioms_in(&th, target)?;
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "holds": c.holds,
                        "lhs": arrow_json(&c.lhs),
                        "rhs": arrow_json(&c.rhs),
                    })
                })
                .collect();
            emit(
                cli.json,
                json!({
                    "theory": th.name,
                    "model": target.to_string(),
                    "all_hold": report.all_hold(),
                    "failures": report.failures(),
                    "checks": checks,
                }),
                || {
                    let mut out = String::new();
                    for c in &report.checks {
                        if c.holds {
                            out.push_str(&format!("holds  {}\n", c.name));
                        } else {
                            out.push_str(&format!("FAILS  {}: {}  vs  {}\n", c.name, c.lhs, c.rhs));
                        }
                    }
                    out
                },
            );
            Ok(if report.all_hold() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Render {
            input,
            format: Format::Dot,
        } => {
            let dot = if is_arrow_text(input) {
                match input.parse::<AnyArrow>()? {
                    AnyArrow::Corel(c) => corelation_dot(&c),
                    other => bail!("render accepts a term or a corelation, not `{other}`"),
                }
            } else {
                term_dot(&term(input)?, &sig)?
            };
            emit(cli.json, json!({ "format": "dot", "dot": dot }), || {
                dot.clone()
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Random { size, seed } => {
            let t = random_term(&sig, *size, *seed);
            let (n, m) = t.typecheck(&sig)?;
            emit(
                cli.json,
                json!({ "term": format_term(&t), "type": [n, m], "seed": seed }),
                || format!("{t}\n"),
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

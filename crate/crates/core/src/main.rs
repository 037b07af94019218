use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hhbes::atomic::AtomicSystem;
use hhbes::bes::{self, build_n, Naf, SupportQuery};
use hhbes::engine::{Engine, Outcome};
use hhbes::fixpoint::{lfp, satisfies};
use hhbes::oracle::{Oracle, Status};
use hhbes::suite::{self, Mode, Scale};
use hhbes::syntax::{parse_context, parse_formula, parse_program, parse_sequent, Atom, Program};

#[derive(Parser)]
#[command(name = "hhbes", version, about = "Hereditary Harrop proof search and base-extension semantics for IPL")]
struct Cli {
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Node budget for the engine and the oracle.
    #[arg(long, global = true, env = "HHBES_BUDGET", value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula or sequent and report its class.
    Parse { text: String },
    /// Run a goal against a program.
    Solve {
        #[arg(long)]
        program: PathBuf,
        #[arg(long)]
        goal: String,
        /// Write the success trace here as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Evaluate a goal in the least fixed point of a program.
    Fixpoint {
        #[arg(long)]
        program: PathBuf,
        #[arg(long)]
        goal: String,
        /// Write the interpretation table here as JSON.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Decide an IPL sequent; refutations print a countermodel.
    Oracle { sequent: String },
    /// Encode an atomic system (JSON) as a program.
    Encode {
        #[arg(long)]
        system: PathBuf,
    },
    /// Print the base N of a sequent as a program, and its flat map.
    Flatten {
        #[arg(long)]
        sequent: String,
        /// Write the flat map here instead of after the program.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Decide whether the context supports the goal in a base.
    Support {
        /// Atomic system JSON; the empty base if omitted.
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long, default_value = "")]
        ctx: String,
        #[arg(long)]
        goal: String,
    },
    /// Extract a natural deduction proof of a valid sequent.
    Extract {
        #[arg(long)]
        sequent: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Negation as failure of a formula in a base.
    Naf {
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long)]
        formula: String,
        #[arg(long, value_delimiter = ',')]
        alphabet: Vec<String>,
    },
    /// Run the acceptance criteria.
    Suite {
        #[arg(long, value_enum, default_value_t = CorpusArg::Desk)]
        corpus: CorpusArg,
        #[arg(long)]
        sequential: bool,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CorpusArg {
    Desk,
    Smoke,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_program(path: &Path) -> Result<Program> {
    Ok(parse_program(&read(path)?)?)
}

fn load_base(path: Option<&PathBuf>) -> Result<AtomicSystem> {
    match path {
        Some(p) => AtomicSystem::from_json(&read(p)?).with_context(|| format!("parsing {}", p.display())),
        None => Ok(AtomicSystem::empty()),
    }
}

fn answer(cli: &Cli, ok: bool, text: &str, value: serde_json::Value) -> bool {
    if cli.json {
        println!("{value}");
    } else {
        println!("{text}");
    }
    ok
}

fn run(cli: &Cli) -> Result<bool> {
    let budget = cli.budget.map(|b| b as usize);
    let engine = budget.map(Engine::with_budget).unwrap_or_default();
    let oracle = Oracle {
        budget: budget.unwrap_or(Oracle::default().budget),
        ..Oracle::default()
    };
    Ok(match &cli.command {
        Command::Parse { text } => {
            let value = if text.contains("|-") {
                let s = parse_sequent(text)?;
                json!({"sequent": s.to_string(), "depth": s.depth()})
            } else {
                let f = parse_formula(text)?;
                json!({"formula": f.to_string(), "class": format!("{:?}", f.classify()), "depth": f.depth()})
            };
            let text = match (&value["formula"], &value["class"]) {
                (serde_json::Value::String(f), serde_json::Value::String(c)) => format!("{f}\t{c}"),
                _ => value["sequent"].as_str().unwrap_or_default().to_string(),
            };
            answer(cli, true, &text, value)
        }
        Command::Solve { program, goal, trace } => {
            let p = load_program(program)?;
            let g = parse_formula(goal)?;
            let outcome = engine.solve(&p, &g)?;
            if let (Some(path), Outcome::Success(t)) = (trace, &outcome) {
                write(path, &serde_json::to_string_pretty(t)?)?;
            }
            let ok = outcome.is_success();
            let value = json!({"success": ok, "trace": outcome.trace()});
            answer(cli, ok, if ok { "success" } else { "failure" }, value)
        }
        Command::Fixpoint { program, goal, dump } => {
            let p = load_program(program)?;
            let g = parse_formula(goal)?;
            if !g.is_goal() {
                bail!("`{g}` is not a goal formula");
            }
            let i = lfp(&p, &g);
            if let Some(path) = dump {
                write(path, &serde_json::to_string_pretty(&i.to_json())?)?;
            }
            let ok = satisfies(&i, &p, &g)?;
            let value = json!({"satisfied": ok, "programs": i.domain().len()});
            answer(cli, ok, if ok { "satisfied" } else { "not satisfied" }, value)
        }
        Command::Oracle { sequent } => {
            let s = parse_sequent(sequent)?;
            let verdict = oracle.decide(&s)?;
            let ok = verdict.status == Status::Provable;
            if cli.json || ok {
                answer(cli, ok, "provable", serde_json::to_value(&verdict)?)
            } else {
                println!("refuted");
                if let Some(m) = &verdict.countermodel {
                    println!("{}", serde_json::to_string(m)?);
                }
                false
            }
        }
        Command::Encode { system } => {
            let sys = load_base(Some(system))?;
            print!("{}", sys.encode().to_prog());
            true
        }
        Command::Flatten { sequent, map } => {
            let s = parse_sequent(sequent)?;
            let fl = build_n(&s, &BTreeSet::new());
            let map_json = serde_json::to_string_pretty(&fl.map.to_json())?;
            if cli.json {
                println!("{}", json!({"program": fl.program.clauses(), "map": fl.map.to_json()}));
            } else {
                print!("{}", fl.program.to_prog());
            }
            match map {
                Some(path) => write(path, &map_json)?,
                None if !cli.json => println!("% map\n{map_json}"),
                None => {}
            }
            true
        }
        Command::Support { base, ctx, goal } => {
            let q = SupportQuery::new(load_base(base.as_ref())?, parse_context(ctx)?, parse_formula(goal)?);
            let ok = bes::support_with(&q, &engine)?;
            answer(cli, ok, if ok { "supported" } else { "not supported" }, json!({"supported": ok}))
        }
        Command::Extract { sequent, out } => {
            let s = parse_sequent(sequent)?;
            match bes::prove_nj(&s, &engine)? {
                Some(d) => {
                    hhbes::check_derivation(&d, &s).context("extracted derivation does not check")?;
                    let text = serde_json::to_string_pretty(&d)?;
                    match out {
                        Some(path) => write(path, &text)?,
                        None => println!("{text}"),
                    }
                    true
                }
                None => {
                    eprintln!("{s} is not valid");
                    false
                }
            }
        }
        Command::Naf { base, formula, alphabet } => {
            let base = load_base(base.as_ref())?;
            let phi = parse_formula(formula)?;
            let alphabet = alphabet.iter().map(|a| Atom::new(a.trim())).collect::<Result<BTreeSet<_>, _>>()?;
            let r = bes::naf_with(&base, &phi, &alphabet, &engine)?;
            answer(cli, r == Naf::Supported, &r.to_string(), json!({"result": r}))
        }
        Command::Suite { corpus, sequential, only } => {
            let cfg = suite::Config {
                mode: if *sequential { Mode::Sequential } else { Mode::Parallel },
                scale: match corpus {
                    CorpusArg::Desk => Scale::Desk,
                    CorpusArg::Smoke => Scale::Smoke,
                },
                engine,
                oracle,
            };
            let ids: Vec<usize> = match only.as_slice() {
                [] => (1..=suite::CRITERIA.len()).collect(),
                ids => ids.to_vec(),
            };
            if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > suite::CRITERIA.len()) {
                bail!("no criterion {bad}");
            }
            let mut all = true;
            let mut rows = Vec::new();
            for id in ids {
                let r = suite::run(id, &cfg);
                all &= r.passed();
                if cli.json {
                    rows.push(json!({
                        "id": r.id, "name": r.name, "passed": r.passed(), "cases": r.cases,
                        "failures": r.failures, "example": r.example, "seconds": r.elapsed.as_secs_f64(),
                    }));
                } else {
                    println!("{r}");
                }
            }
            if cli.json {
                println!("{}", serde_json::Value::Array(rows));
            }
            all
        }
    })
}

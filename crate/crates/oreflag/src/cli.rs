//! Argument parsing and dispatch. Exit codes: 0 success, 1 mathematical
//! failure, 2 usage or I/O error, 3 undecided.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use oreflag_core::corpus::{self, EXAMPLES};
use oreflag_core::extract::{extract_ore_datum, pointed_ideal_chain, ChainOutcome};
use oreflag_core::lab::{
    check_genlie, check_genlie2, check_na1, check_t3, enumerate_characters, ext1_characters, orbit_classify, LabError,
    DEFAULT_ORBIT_BOUND,
};
use oreflag_core::ore::{overlap_consistency_check, parse_expression, to_dsl, OrePresentation};
use oreflag_core::rep::{check_module, regular_module, FDModule};
use oreflag_core::triangularize::{
    loewy_series, nilpotency_ladder, strict_triangularize, triangularize, triangularize_matrices_with_order,
};
use oreflag_core::Scalar;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::format::{load_module, load_presentation, module_to_file, parse_character, BUILTIN_PREFIX};
use crate::report::{self, Outcome, Report};

#[derive(Parser, Debug)]
#[command(name = "oreflag", version, about = "Exact triangularization and Ore-extension tools")]
pub struct Cli {
    /// Presentation file, inline text, or builtin:<name>.
    #[arg(long, global = true)]
    pub presentation: Option<String>,
    /// Module file (JSON).
    #[arg(long, global = true)]
    pub module: Option<PathBuf>,
    /// Use a built-in example's presentation and module.
    #[arg(long, global = true)]
    pub example: Option<String>,
    /// Use the left regular module of the presentation as the module.
    #[arg(long, global = true)]
    pub regular: bool,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized search orders.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Search bound (orbit length, twist power, nilpotency index).
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    /// Number of leading generators forming the subalgebra of interest.
    #[arg(long, global = true)]
    pub level: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    Genlie,
    Genlie2,
    T3,
    Na1,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a presentation and run the overlap check.
    Validate,
    /// Normal form of an expression such as "y x".
    Nf { expr: String },
    /// Product of two expressions.
    Mul { left: String, right: String },
    /// Check a module's matrices against the defining relations.
    CheckModule,
    /// Search for a flag of invariant subspaces.
    Triangularize,
    /// Search for a flag on which every generator acts nilpotently.
    Strict,
    /// Pointed socle series.
    Loewy,
    /// Least N with every product of N generators zero.
    Ladder,
    /// All characters of the first --level generators.
    Characters,
    /// Orbit of a character under the twist of generator --level.
    Orbit {
        #[arg(long)]
        character: String,
    },
    /// Dimension of Ext^1 between two characters of the first --level generators.
    Ext1 {
        #[arg(long)]
        lam: String,
        #[arg(long)]
        mu: String,
    },
    /// Check the hypotheses of one of the triangularization theorems.
    Verify {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
    },
    /// Left regular module of a presentation with power relations everywhere.
    Regular,
    /// Ideal chain and Lie-type presentation of the algebra a module's matrices generate.
    Extract,
    /// Built-in examples.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExamplesAction {
    List,
    /// Print an example's presentation, or its module with --module-json.
    Emit {
        name: String,
        #[arg(long)]
        module_json: bool,
    },
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let written = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report.json).expect("json values serialize"))
            } else {
                write!(out, "{}", report.text)
            };
            if written.is_err() {
                return 2;
            }
            report.outcome.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn presentation(cli: &Cli) -> Result<OrePresentation> {
    if let Some(src) = &cli.presentation {
        return load_presentation(src, None);
    }
    if let Some(name) = &cli.example {
        return load_presentation(&format!("{BUILTIN_PREFIX}{name}"), None);
    }
    if let Some(path) = &cli.module {
        return Ok(load_module(path, None)?.presentation().clone());
    }
    bail!("this command needs --presentation or --example")
}

fn module(cli: &Cli) -> Result<FDModule> {
    if cli.regular {
        return Ok(regular_module(&presentation(cli)?)?);
    }
    if let Some(path) = &cli.module {
        let p = cli.presentation.as_deref().map(|s| load_presentation(s, None)).transpose()?;
        return load_module(path, p);
    }
    if let Some(name) = &cli.example {
        let e = corpus::example(name).ok_or_else(|| anyhow!("unknown built-in example '{name}'"))?;
        return e.fd_module().ok_or_else(|| anyhow!("example '{name}' has no module"));
    }
    bail!("this command needs --module or --example")
}

fn has_module(cli: &Cli) -> bool {
    cli.module.is_some()
        || cli.regular
        || cli.example.as_deref().and_then(corpus::example).is_some_and(|e| e.module.is_some())
}

fn level(cli: &Cli, p: &OrePresentation) -> Result<usize> {
    let l = cli.level.unwrap_or(p.ngens());
    if l > p.ngens() {
        bail!("--level {l} exceeds the {} generators", p.ngens());
    }
    Ok(l)
}

fn twist_level(cli: &Cli, p: &OrePresentation) -> Result<usize> {
    let l = cli.level.ok_or_else(|| anyhow!("this command needs --level"))?;
    if l == 0 || l >= p.ngens() {
        bail!("--level must name a generator with a twist: 1..{}", p.ngens().saturating_sub(1));
    }
    Ok(l)
}

fn lab_report(result: std::result::Result<Report, LabError>) -> Result<Report> {
    match result {
        Ok(r) => Ok(r),
        Err(e @ LabError::Undecidable { .. }) => Ok(Report {
            outcome: Outcome::Undecided,
            json: json!({"undecided": e.to_string()}),
            text: format!("undecided: {e}\n"),
        }),
        Err(e) => Err(e.into()),
    }
}

fn plain(json: serde_json::Value, text: String) -> Report {
    Report { outcome: Outcome::Success, json, text }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Validate => {
            let p = presentation(cli)?;
            Ok(report::consistency(&p, &overlap_consistency_check(&p)))
        }
        Command::Nf { expr } => {
            let p = presentation(cli)?;
            let nf = parse_expression(&p, expr)?;
            let shown = nf.display_with(p.names()).to_string();
            Ok(plain(json!({"normal_form": shown}), format!("{shown}\n")))
        }
        Command::Mul { left, right } => {
            let p = presentation(cli)?;
            let product = p.mul(&parse_expression(&p, left)?, &parse_expression(&p, right)?);
            let shown = product.display_with(p.names()).to_string();
            Ok(plain(json!({"product": shown}), format!("{shown}\n")))
        }
        Command::CheckModule => Ok(report::relations(&check_module(&module(cli)?))),
        Command::Triangularize => {
            let m = module(cli)?;
            let names = m.presentation().names().to_vec();
            let t = match cli.seed {
                None => triangularize(&m),
                Some(seed) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let mut order = |_: usize, roots: &mut Vec<Scalar>| roots.shuffle(&mut rng);
                    triangularize_matrices_with_order(m.field(), m.dim(), m.actions(), &mut order)?
                }
            };
            Ok(report::triangularization(&t, &names))
        }
        Command::Strict => {
            let m = module(cli)?;
            Ok(report::triangularization(&strict_triangularize(&m), m.presentation().names()))
        }
        Command::Loewy => {
            let m = module(cli)?;
            Ok(report::loewy(&loewy_series(m.field(), m.dim(), m.actions())?))
        }
        Command::Ladder => {
            let m = module(cli)?;
            let bound = cli.bound.unwrap_or(m.dim()).max(1);
            Ok(report::nilpotency(&nilpotency_ladder(m.field(), m.dim(), m.actions(), bound)?, bound))
        }
        Command::Characters => {
            let p = presentation(cli)?;
            let l = level(cli, &p)?;
            lab_report(enumerate_characters(&p, l).map(|f| report::characters(&f, p.names())))
        }
        Command::Orbit { character } => {
            let p = presentation(cli)?;
            let l = twist_level(cli, &p)?;
            let lam = parse_character(&p, l, character)?;
            let bound = cli.bound.unwrap_or(DEFAULT_ORBIT_BOUND);
            lab_report(orbit_classify(&lam, &p, l, bound).map(|o| report::orbit(&o)))
        }
        Command::Ext1 { lam, mu } => {
            let p = presentation(cli)?;
            let l = level(cli, &p)?;
            let (lam, mu) = (parse_character(&p, l, lam)?, parse_character(&p, l, mu)?);
            let dim = ext1_characters(&p, l, &lam, &mu)?;
            Ok(plain(json!({"level": l, "dim": dim}), format!("{dim}\n")))
        }
        Command::Verify { theorem } => {
            let (p, m) = match theorem {
                TheoremArg::Na1 => {
                    let m = module(cli)?;
                    (m.presentation().clone(), Some(m))
                }
                _ if has_module(cli) => {
                    let m = module(cli)?;
                    (m.presentation().clone(), Some(m))
                }
                _ => (presentation(cli)?, None),
            };
            let r = match theorem {
                TheoremArg::Genlie => check_genlie(&p),
                TheoremArg::Genlie2 => check_genlie2(&p, cli.bound.unwrap_or(5)),
                TheoremArg::T3 => check_t3(&p, m.as_ref(), cli.bound.unwrap_or(DEFAULT_ORBIT_BOUND)),
                TheoremArg::Na1 => check_na1(&p, m.as_ref().expect("module loaded")),
            };
            lab_report(r.map(|r| report::hypotheses(&r, p.names())))
        }
        Command::Regular => {
            let p = presentation(cli)?;
            let m = regular_module(&p)?;
            let file = module_to_file(&m, Some(to_dsl(&p)));
            let text = format!(
                "regular module of dimension {}; relations {}\n",
                m.dim(),
                if m.is_verified() { "hold" } else { "fail (the presentation is inconsistent)" }
            );
            let json = json!({"dim": m.dim(), "verified": m.is_verified(), "module": file});
            Ok(Report { outcome: if m.is_verified() { Outcome::Success } else { Outcome::Failure }, json, text })
        }
        Command::Extract => {
            let m = module(cli)?;
            match pointed_ideal_chain(m.field(), m.dim(), m.actions())? {
                ChainOutcome::NotPointed(cert) => Ok(report::chain_failure(&cert)),
                ChainOutcome::Chain(chain) => {
                    let x = extract_ore_datum(&chain)?;
                    Ok(report::extraction(&chain, &x))
                }
            }
        }
        Command::Examples { action } => examples(action),
    }
}

fn examples(action: &ExamplesAction) -> Result<Report> {
    match action {
        ExamplesAction::List => {
            let mut text = String::new();
            for e in EXAMPLES {
                text.push_str(&format!(
                    "{:<18}{}{}\n",
                    e.name,
                    e.summary,
                    if e.module.is_some() { " [module]" } else { "" }
                ));
            }
            let json = json!(EXAMPLES
                .iter()
                .map(|e| json!({"name": e.name, "summary": e.summary, "module": e.module.is_some()}))
                .collect::<Vec<_>>());
            Ok(plain(json, text))
        }
        ExamplesAction::Emit { name, module_json } => {
            let e = corpus::example(name).ok_or_else(|| anyhow!("unknown built-in example '{name}'"))?;
            if *module_json {
                let m = e.fd_module().ok_or_else(|| anyhow!("example '{name}' has no module"))?;
                let file = module_to_file(&m, Some(e.dsl.to_string()));
                let text = serde_json::to_string_pretty(&file).context("serializing module")? + "\n";
                return Ok(plain(serde_json::to_value(&file)?, text));
            }
            Ok(plain(json!({"name": e.name, "presentation": e.dsl}), e.dsl.to_string()))
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use voa_core::coeff::parse_rational;
use voa_core::constructions::NamedElement;
use voa_core::define::{resolve_algebra, Definition};
use voa_core::linear::{commutant_basis, find_relation, nongeneric_levels, LevelStatus, RelationOutcome};
use voa_core::suites::{run_suite, SUITES};
use voa_core::va::Element;
use voa_core::Error;

#[derive(Parser)]
#[command(name = "voa", version, about = "Exact lambda-bracket calculus over Q(k)")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

/// Where expressions are interpreted: a built-in name or a definition file.
#[derive(Args, Clone)]
struct Context {
    /// Built-in algebra such as `affine:sl2@k` or `betagamma:1 & symplectic:1`.
    #[arg(long, default_value = "affine:sl2@k")]
    algebra: String,
    /// Definition file; overrides `--algebra`.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Load a definition file and run its checks.
    Define {
        #[arg(long)]
        file: PathBuf,
    },
    /// The λ-bracket of two expressions.
    Bracket {
        #[command(flatten)]
        ctx: Context,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// The n-th product `left_(n) right`; negative n gives normally ordered products.
    Nproduct {
        #[command(flatten)]
        ctx: Context,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Canonical form of an expression.
    NormalForm {
        #[command(flatten)]
        ctx: Context,
        #[arg(long)]
        expr: String,
    },
    /// Basis of the commutant of the currents at one weight.
    Commutant {
        #[command(flatten)]
        ctx: Context,
        /// Comma-separated expressions; defaults to the currents of the algebra.
        #[arg(long)]
        currents: Option<String>,
        #[arg(long)]
        weight: String,
    },
    /// Express a target through words in named generators.
    FindRelation {
        #[command(flatten)]
        ctx: Context,
        #[arg(long)]
        target: String,
        /// `NAME=EXPR`, repeatable. In a definition file, a bare name refers to `elements`.
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
    },
    /// Levels where the commutant dimension may jump at one weight.
    Nongeneric {
        #[command(flatten)]
        ctx: Context,
        #[arg(long)]
        currents: Option<String>,
        #[arg(long)]
        weight: String,
    },
    /// Run a named verification suite.
    Suite {
        name: String,
        /// Include wall times in the report.
        #[arg(long)]
        timings: bool,
    },
    /// List suites and built-in names.
    List,
}

enum Failure {
    Checks,
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

fn load(ctx: &Context) -> Result<Definition, Error> {
    match &ctx.file {
        Some(path) => Definition::from_path(path),
        None => {
            let r = resolve_algebra(&ctx.algebra)?;
            Ok(Definition { presentation: r.presentation, currents: r.currents, elements: Vec::new(), checks: Vec::new() })
        }
    }
}

fn currents(def: &Definition, list: &Option<String>) -> Result<Vec<Element>, Error> {
    match list {
        None => Ok(def.currents.clone()),
        Some(s) => s.split(',').map(|c| def.element(c.trim())).collect(),
    }
}

fn emit(format: Format, value: &Value, pretty: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("json")),
        Format::Pretty => print!("{}", pretty()),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let f = cli.format;
    match cli.command {
        Command::Define { file } => {
            let def = Definition::from_path(&file)?;
            let report = def.run_checks(&file.display().to_string())?;
            let elements: Vec<Value> = def
                .elements
                .iter()
                .map(|e| json!({"name": e.label, "element": e.element.to_text()}))
                .collect();
            let value = json!({
                "algebra": def.presentation.name,
                "generators": def.presentation.generators.iter().map(|g| g.name.clone()).collect::<Vec<_>>(),
                "elements": elements,
                "report": report.to_json(false),
            });
            emit(f, &value, || {
                let mut s = format!("algebra {}\n", def.presentation.name);
                for e in &def.elements {
                    s.push_str(&format!("  {} = {}\n", e.label, e.element.to_text()));
                }
                s + &report.to_pretty()
            });
            if !report.passed() {
                return Err(Failure::Checks);
            }
        }
        Command::Bracket { ctx, left, right } => {
            let def = load(&ctx)?;
            let br = def.element(&left)?.lambda_bracket(&def.element(&right)?)?;
            let terms: Vec<Value> =
                br.coeffs.iter().enumerate().map(|(n, x)| json!({"n": n, "product": x.to_text()})).collect();
            emit(f, &json!({"bracket": terms}), || {
                if br.is_zero() {
                    return "0\n".into();
                }
                br.coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(n, x)| format!("λ^{n}/{n}!: {}\n", x.to_text()))
                    .collect()
            });
        }
        Command::Nproduct { ctx, n, left, right } => {
            let def = load(&ctx)?;
            let x = def.element(&left)?.nth_product(&def.element(&right)?, n)?;
            emit(f, &json!({"n": n, "product": x.to_text()}), || format!("{}\n", x.to_text()));
        }
        Command::NormalForm { ctx, expr } => {
            let def = load(&ctx)?;
            let x = def.element(&expr)?;
            let weight = x.weight().map(|w| voa_core::coeff::parse::render_rational(&w)).ok();
            emit(f, &json!({"element": x.to_text(), "weight": weight}), || format!("{}\n", x.to_text()));
        }
        Command::Commutant { ctx, currents: list, weight } => {
            let def = load(&ctx)?;
            let r = commutant_basis(&def.presentation, &currents(&def, &list)?, &parse_rational(&weight)?)?;
            emit(f, &r.to_json(), || {
                let mut s = format!("dimension {} (basis size {})\n", r.dimension(), r.basis.len());
                for (i, v) in r.kernel.iter().enumerate() {
                    s.push_str(&format!("  v{i} = {}\n", v.to_text()));
                }
                s
            });
        }
        Command::FindRelation { ctx, target, gens } => {
            let def = load(&ctx)?;
            let gens = gens
                .iter()
                .map(|g| {
                    let (name, expr) = g.split_once('=').unwrap_or((g, g));
                    Ok(NamedElement { label: name.trim().to_string(), element: def.element(expr.trim())? })
                })
                .collect::<Result<Vec<_>, Error>>()?;
            match find_relation(&def.element(&target)?, &gens)? {
                RelationOutcome::Found(rel) => {
                    let value = json!({
                        "found": true,
                        "relation": rel.to_text(),
                        "multiplier": rel.multiplier.render("k"),
                    });
                    emit(f, &value, || format!("{target} = {}\n", rel.to_text()));
                }
                RelationOutcome::Obstruction { word_rank, augmented_rank } => {
                    let value = json!({"found": false, "word_rank": word_rank, "augmented_rank": augmented_rank});
                    emit(f, &value, || format!("not in the span of words (ranks {word_rank}, {augmented_rank})\n"));
                    return Err(Failure::Checks);
                }
            }
        }
        Command::Nongeneric { ctx, currents: list, weight } => {
            let def = load(&ctx)?;
            let r = commutant_basis(&def.presentation, &currents(&def, &list)?, &parse_rational(&weight)?)?;
            let ng = nongeneric_levels(&r)?;
            emit(f, &serde_json::to_value(&ng).expect("json"), || {
                let mut s = format!("generic dimension {}\n", ng.generic_dimension);
                for l in &ng.levels {
                    let tag = match l.status {
                        LevelStatus::Certified => "certified",
                        LevelStatus::Candidate => "candidate",
                        LevelStatus::Pole => "pole",
                    };
                    s.push_str(&format!("  k = {} {tag} (dimension {})\n", l.value, l.dimension));
                }
                for q in &ng.irrational_factors {
                    s.push_str(&format!("  irrational factor {q}\n"));
                }
                s
            });
        }
        Command::Suite { name, timings } => {
            let report = run_suite(&name)?;
            emit(f, &report.to_json(timings), || report.to_pretty());
            if !report.passed() {
                return Err(Failure::Checks);
            }
        }
        Command::List => {
            let value = json!({
                "suites": SUITES,
                "lie": voa_core::lie::BUILTIN_NAMES,
                "algebras": ["affine:<lie>@<level>", "heisenberg:n", "fermion:n", "bc:n", "betagamma:n",
                             "symplectic:n", "tau:n", "sigma:m", "deformable:<lie>", "limit:<lie>", "n2", "sl3-roots"],
                "families": voa_core::constructions::FAMILIES,
            });
            emit(f, &value, || {
                format!(
                    "suites: {}\nlie algebras: {}\nalgebras: {}\n",
                    SUITES.join(", "),
                    voa_core::lie::BUILTIN_NAMES.join(", "),
                    value["algebras"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect::<Vec<_>>().join(", ")
                )
            });
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

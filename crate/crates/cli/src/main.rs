//! Command line for the packed interval covering workbench.
//!
//! Exit codes follow the solver-harness convention: 10 = positive/SAT,
//! 20 = negative/UNSAT, 0 = neutral success, 1 = usage or parse error,
//! 2 = internal invariant breach.

mod bench;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use pic_core::gen::{random_b2_formula, random_instance, B2GenConfig, PicGenConfig};
use pic_core::io::{
    parse_dimacs, parse_map, parse_pic, parse_valuation, parse_witness, print_dimacs, print_map,
    print_pic, print_valuation, print_witness,
};
use pic_core::pic::PicInstance;
use pic_core::reduce::{reduce, Reduction};
use pic_core::render::render_svg;
use pic_core::sat::validate_b2;
use pic_core::solve::{
    solve_backtracking, solve_brute_force, solve_via_sat, BRUTE_FORCE_PRODUCT_LIMIT,
};

const EXIT_POSITIVE: u8 = 10;
const EXIT_NEGATIVE: u8 = 20;
const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_INTERNAL: u8 = 2;

#[derive(Parser)]
#[command(
    name = "pic",
    version,
    about = "Solve, verify, reduce, generate, render, and benchmark packed interval covering instances"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance; exit 10 if coverable, 20 if not.
    Solve {
        /// Instance file (`pic` format).
        instance: PathBuf,
        /// Decision procedure to run.
        #[arg(long, value_enum, default_value_t = SolverKind::Backtrack)]
        solver: SolverKind,
        /// Write the witness to this file instead of standard output.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Check a witness against an instance; exit 10 if it covers, 20 if not.
    Verify { instance: PathBuf, witness: PathBuf },
    /// Reduce a (3,B2) DIMACS formula to a covering instance.
    Reduce {
        /// DIMACS CNF input.
        cnf: PathBuf,
        /// Instance output path.
        #[arg(short, long)]
        output: PathBuf,
        /// Also write the reduction map needed to translate witnesses.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Translate a satisfying assignment into a covering witness.
    Lift {
        /// Reduction map file.
        map: PathBuf,
        /// Assignment file (`val` format).
        assignment: PathBuf,
    },
    /// Translate a covering witness back into a satisfying assignment.
    Extract {
        /// Reduction map file.
        map: PathBuf,
        /// Witness file (`sel` format).
        witness: PathBuf,
        /// Rewrite the witness first so the variable region is covered
        /// exactly once.
        #[arg(long)]
        normalize: bool,
    },
    /// Emit a random instance or formula on standard output.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Draw an instance (optionally with a witness) as SVG.
    Render {
        instance: PathBuf,
        /// Witness whose choices get highlighted.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// SVG output path.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Time all solvers over a seeded suite and cross-check their verdicts.
    Bench {
        /// Number of instances.
        #[arg(long, default_value_t = 50)]
        count: u64,
        /// Base seed; instance k uses seed + k.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..))]
        n_bound: u64,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        packs: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        max_pack_size: u64,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random well-formed covering instance.
    Pic {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n_bound: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        packs: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        max_pack_size: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random formula with every variable twice positive and twice negative.
    B2sat {
        /// Variable count; must be a positive multiple of 3.
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverKind {
    Brute,
    Backtrack,
    Sat,
}

enum Failure {
    Usage(anyhow::Error),
    Internal(String),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(err: E) -> Self {
        Failure::Usage(err.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Solve {
            instance,
            solver,
            witness,
        } => cmd_solve(&instance, solver, witness.as_deref()),
        Command::Verify { instance, witness } => cmd_verify(&instance, &witness),
        Command::Reduce { cnf, output, map } => cmd_reduce(&cnf, &output, map.as_deref()),
        Command::Lift { map, assignment } => cmd_lift(&map, &assignment),
        Command::Extract {
            map,
            witness,
            normalize,
        } => cmd_extract(&map, &witness, normalize),
        Command::Gen { what } => cmd_gen(what),
        Command::Render {
            instance,
            witness,
            output,
        } => cmd_render(&instance, witness.as_deref(), &output),
        Command::Bench {
            count,
            seed,
            n_bound,
            packs,
            max_pack_size,
        } => cmd_bench(count, seed, n_bound, packs as usize, max_pack_size as usize),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn load_instance(path: &Path) -> Result<PicInstance> {
    let instance =
        parse_pic(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    Ok(instance)
}

fn cmd_solve(
    instance_path: &Path,
    solver: SolverKind,
    witness_path: Option<&Path>,
) -> Result<u8, Failure> {
    let instance = load_instance(instance_path)?;
    let verdict = match solver {
        SolverKind::Brute => solve_brute_force(&instance).map_err(|e| anyhow!(e))?,
        SolverKind::Backtrack => solve_backtracking(&instance),
        SolverKind::Sat => {
            solve_via_sat(&instance).map_err(|e| Failure::Internal(e.to_string()))?
        }
    };
    match verdict {
        Some(selection) => {
            if instance.verify_cover(&selection) != Ok(true) {
                return Err(Failure::Internal(
                    "solver returned a witness that fails verification".into(),
                ));
            }
            println!("s POSITIVE");
            let text = print_witness(&selection);
            match witness_path {
                Some(path) => write(path, &text)?,
                None => print!("v {text}"),
            }
            Ok(EXIT_POSITIVE)
        }
        None => {
            println!("s NEGATIVE");
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_verify(instance_path: &Path, witness_path: &Path) -> Result<u8, Failure> {
    let instance = load_instance(instance_path)?;
    let witness = parse_witness(&read(witness_path)?, &instance)
        .with_context(|| format!("parsing {}", witness_path.display()))?;
    let covers = instance
        .verify_cover(&witness)
        .map_err(|e| Failure::Internal(e.to_string()))?;
    if covers {
        println!("s VALID COVER");
        Ok(EXIT_POSITIVE)
    } else {
        println!("s NOT A COVER");
        Ok(EXIT_NEGATIVE)
    }
}

fn cmd_reduce(cnf_path: &Path, output: &Path, map_path: Option<&Path>) -> Result<u8, Failure> {
    let formula = parse_dimacs(&read(cnf_path)?)
        .with_context(|| format!("parsing {}", cnf_path.display()))?;
    let formula = validate_b2(formula).map_err(|e| anyhow!("{e}"))?;
    let Reduction { instance, map } = reduce(&formula);
    write(output, &print_pic(&instance))?;
    if let Some(path) = map_path {
        write(path, &print_map(&map))?;
    }
    Ok(EXIT_OK)
}

fn cmd_lift(map_path: &Path, assignment_path: &Path) -> Result<u8, Failure> {
    let map =
        parse_map(&read(map_path)?).with_context(|| format!("parsing {}", map_path.display()))?;
    let valuation = parse_valuation(&read(assignment_path)?)
        .with_context(|| format!("parsing {}", assignment_path.display()))?;
    let selection = map.lift_valuation(&valuation).map_err(|e| anyhow!(e))?;
    print!("{}", print_witness(&selection));
    Ok(EXIT_OK)
}

fn cmd_extract(map_path: &Path, witness_path: &Path, normalize: bool) -> Result<u8, Failure> {
    let map =
        parse_map(&read(map_path)?).with_context(|| format!("parsing {}", map_path.display()))?;
    let instance = map.instance();
    let mut witness = parse_witness(&read(witness_path)?, &instance)
        .with_context(|| format!("parsing {}", witness_path.display()))?;
    if normalize {
        witness = map.normalize_selection(&witness).map_err(|e| anyhow!(e))?;
    }
    let valuation = map.extract_valuation(&witness).map_err(|e| anyhow!(e))?;
    print!("{}", print_valuation(&valuation));
    Ok(EXIT_OK)
}

fn cmd_gen(what: GenCommand) -> Result<u8, Failure> {
    match what {
        GenCommand::Pic {
            n_bound,
            packs,
            max_pack_size,
            seed,
        } => {
            let instance = random_instance(&PicGenConfig {
                seed,
                n_bound,
                num_packs: packs as usize,
                max_pack_size: max_pack_size as usize,
            });
            print!("{}", print_pic(&instance));
        }
        GenCommand::B2sat { n, seed } => {
            let formula = random_b2_formula(&B2GenConfig {
                seed,
                num_variables: n as usize,
            })
            .map_err(|e| anyhow!(e))?;
            print!("{}", print_dimacs(formula.formula()));
        }
    }
    Ok(EXIT_OK)
}

fn cmd_render(
    instance_path: &Path,
    witness_path: Option<&Path>,
    output: &Path,
) -> Result<u8, Failure> {
    let instance = load_instance(instance_path)?;
    let witness = witness_path
        .map(|path| {
            parse_witness(&read(path)?, &instance)
                .with_context(|| format!("parsing {}", path.display()))
        })
        .transpose()?;
    let svg =
        render_svg(&instance, witness.as_ref()).map_err(|e| Failure::Internal(e.to_string()))?;
    write(output, &svg)?;
    Ok(EXIT_OK)
}

fn cmd_bench(
    count: u64,
    seed: u64,
    n_bound: u64,
    packs: usize,
    max_pack_size: usize,
) -> Result<u8, Failure> {
    let product = (max_pack_size as u128).saturating_pow(packs as u32);
    if product > BRUTE_FORCE_PRODUCT_LIMIT {
        return Err(Failure::Usage(anyhow!(
            "per-instance search space may reach {product} selections; keep max-pack-size^packs within {BRUTE_FORCE_PRODUCT_LIMIT}"
        )));
    }

    let suite: Vec<(u64, PicInstance)> = (0..count)
        .map(|k| {
            let config = PicGenConfig {
                seed: seed + k,
                n_bound,
                num_packs: packs,
                max_pack_size,
            };
            (config.seed, random_instance(&config))
        })
        .collect();

    let solvers = vec![
        bench::SolverSpec {
            name: "brute",
            run: Box::new(|i: &PicInstance| {
                solve_brute_force(i).expect("suite sized within the oracle guard")
            }),
        },
        bench::SolverSpec {
            name: "backtrack",
            run: Box::new(solve_backtracking),
        },
        bench::SolverSpec {
            name: "sat",
            run: Box::new(|i: &PicInstance| {
                solve_via_sat(i).expect("encoding decode must succeed")
            }),
        },
    ];

    match bench::run_suite(&suite, &solvers) {
        Ok(stats) => {
            print!("{}", bench::format_table(&stats));
            Ok(EXIT_OK)
        }
        Err(failure) => Err(Failure::Internal(failure.to_string())),
    }
}

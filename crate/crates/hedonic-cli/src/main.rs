use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use hedonic::algorithms::{
    compute_cis_ir, compute_is_b, grand_coalition_if_ns, solve_ns_b_unique_favorite, NsAnswer,
};
use hedonic::dynamics::{run_dynamics, Terminal};
use hedonic::extensions::is_acceptable_coalition;
use hedonic::model::{parse_game, parse_partition, GameInstance, Partition, PlayerId, Variant};
use hedonic::oracle::{
    bell_number, find_stable, OracleOptions, SearchMode, StabilityConcept, Valuation,
    DEFAULT_PARTITION_CAP,
};
use hedonic::reductions::{
    gen_extended_stalker, gen_stalker, is_witness_from_valuation, ns_witness_from_valuation,
    parse_dimacs, random_game, reduce_sat_is_bb, reduce_sat_is_w, reduce_sat_ns, CnfFormula,
    RandomGameParams, ReductionLayout,
};
use hedonic::stability::{
    find_blocking_coalition, find_deviation, is_ir, is_stable, DeviationKind, DEFAULT_CORE_CAP,
};

const EXIT_UNSTABLE: u8 = 2;
const EXIT_NOT_EXISTS: u8 = 3;
const EXIT_SELF_CHECK: u8 = 4;

#[derive(Parser)]
#[command(
    name = "hedonic",
    version,
    about = "Stability checking, solving, and SAT gadget generation for coalition games ranked by best or worst members"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one partition against a stability concept
    Check(CheckArgs),
    /// Run a constructive solver and print the verified partition
    Solve(SolveArgs),
    /// Enumerate all partitions and list the stable ones
    Enumerate(EnumerateArgs),
    /// Simulate deviation dynamics from a start partition
    Dynamics(DynamicsArgs),
    /// Compile a DIMACS CNF into a gadget game
    Reduce(ReduceArgs),
    /// Emit a named or random game file
    Generate(GenerateArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Game file
    #[arg(long)]
    game: PathBuf,
    /// Partition file
    #[arg(long)]
    partition: PathBuf,
    /// ir, ns, is, cis, cis-and-ir, core or strict-core
    #[arg(long)]
    concept: StabilityConcept,
    /// Reinterpret the profile under another variant
    #[arg(long)]
    variant: Option<Variant>,
    /// Player cap for the core search
    #[arg(long, default_value_t = DEFAULT_CORE_CAP)]
    cap: usize,
}

#[derive(Args)]
struct SolveArgs {
    /// Game file
    #[arg(long)]
    game: PathBuf,
    /// cis-ir, is-b, ns-b-uf or grand-ns
    #[arg(long)]
    algorithm: String,
    /// Reinterpret the profile under another variant
    #[arg(long)]
    variant: Option<Variant>,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Game file
    #[arg(long)]
    game: PathBuf,
    /// ir, ns, is, cis, cis-and-ir, core or strict-core
    #[arg(long)]
    concept: StabilityConcept,
    /// all (every stable partition) or first (stop at the first hit)
    #[arg(long, default_value = "all")]
    mode: String,
    /// Reinterpret the profile under another variant
    #[arg(long)]
    variant: Option<Variant>,
    /// Player cap for the partition enumeration
    #[arg(long, default_value_t = DEFAULT_PARTITION_CAP)]
    cap: usize,
}

#[derive(Args)]
struct DynamicsArgs {
    /// Game file
    #[arg(long)]
    game: PathBuf,
    /// Start partition file
    #[arg(long)]
    start: PathBuf,
    /// ns, is or cis
    #[arg(long)]
    kind: String,
    /// Reinterpret the profile under another variant
    #[arg(long)]
    variant: Option<Variant>,
    #[arg(long, default_value_t = 10_000)]
    max_steps: usize,
}

#[derive(Args)]
struct ReduceArgs {
    /// DIMACS CNF file
    #[arg(long)]
    cnf: PathBuf,
    /// ns-bb, ns-w, is-bb or is-w
    #[arg(long)]
    reduction: String,
    /// Satisfying valuation as bits, e.g. 10 for x1=true, x2=false; emits
    /// the encoded stable partition
    #[arg(long)]
    witness: Option<String>,
}

#[derive(Args)]
struct GenerateArgs {
    /// stalker, extended-stalker or random
    #[arg(long)]
    kind: String,
    #[arg(long, default_value_t = Variant::BB)]
    variant: Variant,
    /// Player count (random games)
    #[arg(long)]
    n: Option<usize>,
    /// Chance of merging adjacent ranks into one indifference class
    #[arg(long, default_value_t = 0.3)]
    tie_prob: f64,
    /// Chance of ranking any given player below oneself
    #[arg(long, default_value_t = 0.3)]
    unacc_prob: f64,
    /// Force strict rankings (tie probability 0)
    #[arg(long)]
    strict: bool,
    /// Force every player to be acceptable (unacceptability probability 0)
    #[arg(long)]
    no_unacceptability: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Check(args) => cmd_check(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Dynamics(args) => cmd_dynamics(args),
        Command::Reduce(args) => cmd_reduce(args),
        Command::Generate(args) => cmd_generate(args),
    }
}

fn load_game(path: &PathBuf, variant: Option<Variant>) -> Result<GameInstance> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read game file {}", path.display()))?;
    let game = parse_game(&text)
        .with_context(|| format!("cannot parse game file {}", path.display()))?;
    Ok(match variant {
        Some(v) => game.with_variant(v),
        None => game,
    })
}

fn load_partition(path: &PathBuf, game: &GameInstance) -> Result<Partition> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read partition file {}", path.display()))?;
    let part = parse_partition(&text)
        .with_context(|| format!("cannot parse partition file {}", path.display()))?;
    part.check_game(game)?;
    Ok(part)
}

fn deviation_kind(name: &str) -> Result<DeviationKind> {
    match name {
        "ns" => Ok(DeviationKind::Ns),
        "is" => Ok(DeviationKind::Is),
        "cis" => Ok(DeviationKind::Cis),
        other => bail!("unknown deviation kind {other:?} (expected ns, is or cis)"),
    }
}

/// Prints why the partition fails the concept: the first deviation, the
/// first blocking coalition, or the first player stuck in an unacceptable
/// block.
fn explain_instability(
    game: &GameInstance,
    part: &Partition,
    concept: StabilityConcept,
    cap: usize,
) -> Result<()> {
    let ir_witness = |game: &GameInstance, part: &Partition| -> Result<()> {
        for i in (1..=game.n() as u32).map(PlayerId::new) {
            let block = part.block_of(i);
            if !is_acceptable_coalition(game, i, block)? {
                println!("player {i} finds {block} unacceptable");
                return Ok(());
            }
        }
        Ok(())
    };
    match concept {
        StabilityConcept::Ir => ir_witness(game, part)?,
        StabilityConcept::Ns | StabilityConcept::Is | StabilityConcept::Cis => {
            let kind = match concept {
                StabilityConcept::Ns => DeviationKind::Ns,
                StabilityConcept::Is => DeviationKind::Is,
                _ => DeviationKind::Cis,
            };
            if let Some(dev) = find_deviation(game, part, kind)? {
                println!("deviation: {dev}");
            }
        }
        StabilityConcept::CisAndIr => {
            if !is_ir(game, part)? {
                ir_witness(game, part)?;
            } else if let Some(dev) = find_deviation(game, part, DeviationKind::Cis)? {
                println!("deviation: {dev}");
            }
        }
        StabilityConcept::Core | StabilityConcept::StrictCore => {
            let strict = concept == StabilityConcept::StrictCore;
            if let Some(blocking) = find_blocking_coalition(game, part, strict, cap)? {
                println!("blocking coalition: {blocking}");
            }
        }
    }
    Ok(())
}

fn cmd_check(args: CheckArgs) -> Result<ExitCode> {
    let game = load_game(&args.game, args.variant)?;
    let part = load_partition(&args.partition, &game)?;
    let stable = match args.concept {
        StabilityConcept::Ir => is_ir(&game, &part)?,
        StabilityConcept::Ns => is_stable(&game, &part, DeviationKind::Ns)?,
        StabilityConcept::Is => is_stable(&game, &part, DeviationKind::Is)?,
        StabilityConcept::Cis => is_stable(&game, &part, DeviationKind::Cis)?,
        StabilityConcept::CisAndIr => {
            is_ir(&game, &part)? && is_stable(&game, &part, DeviationKind::Cis)?
        }
        StabilityConcept::Core => {
            find_blocking_coalition(&game, &part, false, args.cap)?.is_none()
        }
        StabilityConcept::StrictCore => {
            find_blocking_coalition(&game, &part, true, args.cap)?.is_none()
        }
    };
    if stable {
        println!("stable: yes");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("stable: no");
        explain_instability(&game, &part, args.concept, args.cap)?;
        Ok(ExitCode::from(EXIT_UNSTABLE))
    }
}

/// Verifies a solver's output with the independent checker before printing;
/// a mismatch means the build is broken and gets its own exit code.
fn print_verified(
    game: &GameInstance,
    part: &Partition,
    checks: &[DeviationKind],
    require_ir: bool,
) -> Result<ExitCode> {
    if require_ir && !is_ir(game, part)? {
        eprintln!("internal error: solver output {part} is not individually rational");
        return Ok(ExitCode::from(EXIT_SELF_CHECK));
    }
    for &kind in checks {
        if !is_stable(game, part, kind)? {
            eprintln!("internal error: solver output {part} failed the {kind} check");
            return Ok(ExitCode::from(EXIT_SELF_CHECK));
        }
    }
    println!("{part}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode> {
    let game = load_game(&args.game, args.variant)?;
    match args.algorithm.as_str() {
        "cis-ir" => {
            let run = compute_cis_ir(&game);
            print_verified(&game, &run.partition, &[DeviationKind::Cis], true)
        }
        "is-b" => {
            let run = compute_is_b(&game)?;
            print_verified(&game, &run.partition, &[DeviationKind::Is], false)
        }
        "ns-b-uf" => match solve_ns_b_unique_favorite(&game)? {
            NsAnswer::Exists(part) => print_verified(&game, &part, &[DeviationKind::Ns], false),
            NsAnswer::NotExists => {
                println!("no NS partition exists");
                Ok(ExitCode::from(EXIT_NOT_EXISTS))
            }
        },
        "grand-ns" => match grand_coalition_if_ns(&game) {
            Some(part) => print_verified(&game, &part, &[DeviationKind::Ns], false),
            None => {
                println!("grand coalition is not Nash stable here");
                Ok(ExitCode::from(EXIT_UNSTABLE))
            }
        },
        other => bail!("unknown algorithm {other:?} (expected cis-ir, is-b, ns-b-uf or grand-ns)"),
    }
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<ExitCode> {
    let game = load_game(&args.game, args.variant)?;
    let mode = match args.mode.as_str() {
        "all" => SearchMode::All,
        "first" => SearchMode::FirstWitness,
        other => bail!("unknown mode {other:?} (expected all or first)"),
    };
    let opts = OracleOptions {
        partition_cap: args.cap,
        ..OracleOptions::default()
    };
    let found = find_stable(&game, args.concept, mode, &opts)?;
    for part in &found {
        println!("{} {part}", args.concept.tag());
    }
    println!("count: {} / {}", found.len(), bell_number(game.n()));
    Ok(ExitCode::SUCCESS)
}

fn cmd_dynamics(args: DynamicsArgs) -> Result<ExitCode> {
    let game = load_game(&args.game, args.variant)?;
    let start = load_partition(&args.start, &game)?;
    let kind = deviation_kind(&args.kind)?;
    let trace = run_dynamics(&game, &start, kind, args.max_steps)?;
    for (k, step) in trace.steps.iter().enumerate() {
        println!("step {k}: {}", step.deviation);
    }
    match trace.terminal {
        Terminal::Stabilized => println!("stabilized"),
        Terminal::CycleDetected { first_repeat } => println!("cycle at {first_repeat}"),
        Terminal::Truncated => println!("truncated"),
    }
    Ok(ExitCode::SUCCESS)
}

fn reduce_game(
    f: &CnfFormula,
    reduction: &str,
) -> Result<(GameInstance, ReductionLayout, DeviationKind)> {
    Ok(match reduction {
        "ns-bb" => {
            let (game, layout) = reduce_sat_ns(f, Variant::BB)?;
            (game, layout, DeviationKind::Ns)
        }
        "ns-w" => {
            let (game, layout) = reduce_sat_ns(f, Variant::W)?;
            (game, layout, DeviationKind::Ns)
        }
        "is-bb" => {
            let (game, layout) = reduce_sat_is_bb(f)?;
            (game, layout, DeviationKind::Is)
        }
        "is-w" => {
            let (game, layout) = reduce_sat_is_w(f)?;
            (game, layout, DeviationKind::Is)
        }
        other => bail!("unknown reduction {other:?} (expected ns-bb, ns-w, is-bb or is-w)"),
    })
}

fn cmd_reduce(args: ReduceArgs) -> Result<ExitCode> {
    let text = fs::read_to_string(&args.cnf)
        .with_context(|| format!("cannot read CNF file {}", args.cnf.display()))?;
    let f = parse_dimacs(&text)
        .with_context(|| format!("cannot parse CNF file {}", args.cnf.display()))?;
    let (game, layout, kind) = reduce_game(&f, &args.reduction)?;
    print!("{}", game.to_text());
    print!("{layout}");
    if let Some(bits) = &args.witness {
        let v = Valuation::parse(bits)?;
        let witness = match kind {
            DeviationKind::Ns => ns_witness_from_valuation(&f, &layout, &v)?,
            _ => is_witness_from_valuation(&f, &layout, &v)?,
        };
        if !is_stable(&game, &witness, kind)? {
            eprintln!("internal error: witness {witness} failed the {kind} check");
            return Ok(ExitCode::from(EXIT_SELF_CHECK));
        }
        println!("# witness: {witness}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_generate(args: GenerateArgs) -> Result<ExitCode> {
    let game = match args.kind.as_str() {
        "stalker" => gen_stalker(args.variant),
        "extended-stalker" => gen_extended_stalker(args.variant),
        "random" => {
            let Some(n) = args.n else {
                bail!("random games need --n");
            };
            let params = RandomGameParams {
                n,
                variant: args.variant,
                tie_prob: if args.strict { 0.0 } else { args.tie_prob },
                unacc_prob: if args.no_unacceptability {
                    0.0
                } else {
                    args.unacc_prob
                },
            };
            random_game(&params, args.seed)?
        }
        other => bail!("unknown kind {other:?} (expected stalker, extended-stalker or random)"),
    };
    print!("{}", game.to_text());
    Ok(ExitCode::SUCCESS)
}

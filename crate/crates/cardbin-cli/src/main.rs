//! Command-line surface: generators, online runs, the exact optimum,
//! adversary duels, verifiers, and the ratio table.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cardbin::algorithms::{
    check_ff_minimality, check_ff_structure, check_tf_invariants, replay_ff, run_online,
    write_trace, AlgorithmKind, OnlineAlgorithm, ThinFat,
};
use cardbin::adversary::{
    default_delta_mid, default_eps_mid, default_eps_small, gen_batches, gen_ff_killer_large,
    gen_ff_killer_mid, gen_ff_killer_small, run_duel, AbsK3, AbsK4Plus,
};
use cardbin::analysis::{
    assign_roles, ratio_table, verify_ff_total, verify_k3_case1, verify_opt_bins, K3Case1Outcome,
};
use cardbin::io::{read_instance, read_packing, write_instance, write_packing};
use cardbin::oracle::{exact_opt, DEFAULT_NODE_BUDGET};
use cardbin::sweep::random_grid_instance;
use cardbin::{rat, validate_packing, Instance, Packing, Rational};

#[derive(Parser)]
#[command(name = "cardbin", about = "Online bin packing with cardinality constraints")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a worst-case input family with its certificate
    Gen(GenArgs),
    /// Run an online algorithm over an instance file
    Run(RunArgs),
    /// Compute the exact optimum by branch and bound
    Opt(OptArgs),
    /// Play an adversary against an online algorithm
    Duel(DuelArgs),
    /// Verify packings, weight bounds, or structural invariants
    Verify(VerifyArgs),
    /// Worst-case ratio table across a range of k
    Table(TableArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    ell: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    stop: Option<u32>,
    #[arg(long)]
    eps: Option<Rational>,
    #[arg(long)]
    delta: Option<Rational>,
    #[arg(long)]
    out: String,
    #[arg(long)]
    cert: Option<String>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    alg: String,
    #[arg(long)]
    k: u32,
    #[arg(long = "in")]
    input: String,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    trace: Option<String>,
}

#[derive(Args)]
struct OptArgs {
    #[arg(long)]
    k: u32,
    #[arg(long = "in")]
    input: String,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct DuelArgs {
    #[arg(long)]
    adversary: String,
    #[arg(long)]
    alg: String,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    eps: Option<Rational>,
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    what: String,
    #[arg(long)]
    k: u32,
    #[arg(long = "in")]
    input: Option<String>,
    #[arg(long)]
    packing: Option<String>,
    #[arg(long)]
    opt: Option<String>,
    #[arg(long)]
    random: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long = "k-from")]
    k_from: u32,
    #[arg(long = "k-to")]
    k_to: u32,
    #[arg(long, default_value_t = 8)]
    ell: u32,
}

/// Exact value with a 6-decimal approximation in parentheses.
fn show(r: &Rational) -> String {
    format!("{} ({})", r.as_fraction(), r.to_decimal(6))
}

enum Failure {
    /// exit 1: the thing being checked is wrong
    Verification(String),
    /// exit 2: the invocation or its inputs are unusable
    Usage(String),
}

impl From<cardbin::Error> for Failure {
    fn from(e: cardbin::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load_instance(path: &str, k: u32) -> Result<Instance, Failure> {
    let instance = read_instance(&fs::read_to_string(path)?)?;
    if instance.k != k {
        return Err(Failure::Usage(format!(
            "--k {k} does not match k={} in {path}",
            instance.k
        )));
    }
    Ok(instance)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Run(args) => cmd_run(args),
        Command::Opt(args) => cmd_opt(args),
        Command::Duel(args) => cmd_duel(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Table(args) => cmd_table(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("FAIL: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn cmd_gen(args: GenArgs) -> Result<(), Failure> {
    let family = match args.family.as_str() {
        "ff-small" => {
            let ell = args.ell.ok_or(Failure::Usage("--ell is required for ff-small".into()))?;
            let eps = args.eps.unwrap_or_else(|| default_eps_small(args.k));
            gen_ff_killer_small(args.k, ell, eps)?
        }
        "ff-mid" => {
            let ell = args.ell.ok_or(Failure::Usage("--ell is required for ff-mid".into()))?;
            let eps = args.eps.unwrap_or_else(default_eps_mid);
            let delta = args.delta.unwrap_or_else(|| default_delta_mid(ell));
            gen_ff_killer_mid(args.k, ell, eps, delta)?
        }
        "ff-large" => {
            let ell = args.ell.ok_or(Failure::Usage("--ell is required for ff-large".into()))?;
            let eps = args.eps.unwrap_or_else(default_eps_mid);
            let delta = args.delta.unwrap_or_else(|| default_delta_mid(ell));
            gen_ff_killer_large(args.k, ell, eps, delta)?
        }
        "batch" => {
            let n = args.n.ok_or(Failure::Usage("--n is required for batch".into()))?;
            let stop = args.stop.ok_or(Failure::Usage("--stop is required for batch".into()))?;
            let delta = args.delta.unwrap_or_else(|| rat(1, 2001));
            gen_batches(args.k, n, delta, stop)?
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown family `{other}` (expected ff-small, ff-mid, ff-large, or batch)"
            )))
        }
    };

    fs::write(&args.out, write_instance(&family.instance))?;
    if let Some(cert_path) = &args.cert {
        fs::write(cert_path, write_packing(&family.certificate.packing))?;
    }
    println!(
        "generated {}: {} items, certificate {} bins",
        family.name,
        family.instance.len(),
        family.certificate.claimed_count
    );
    if let Some(ff) = family.predicted_ff {
        println!("predicted ff bins {ff}");
    }
    Ok(())
}

fn cmd_run(args: RunArgs) -> Result<(), Failure> {
    let kind = AlgorithmKind::from_token(&args.alg)?;
    let instance = load_instance(&args.input, args.k)?;
    let run = run_online(kind, &instance)?;
    if let Some(out) = &args.out {
        fs::write(out, write_packing(&run.packing))?;
    }
    if let Some(trace) = &args.trace {
        fs::write(trace, write_trace(&run))?;
    }
    println!("bins {}", run.num_bins());
    Ok(())
}

fn cmd_opt(args: OptArgs) -> Result<(), Failure> {
    let instance = load_instance(&args.input, args.k)?;
    let result = exact_opt(&instance, args.budget);
    if let Some(out) = &args.out {
        fs::write(out, write_packing(&result.certificate().packing))?;
    }
    if result.is_exact() {
        println!("opt {}", result.count());
    } else {
        println!("upper {} (budget exceeded)", result.count());
    }
    Ok(())
}

fn cmd_duel(args: DuelArgs) -> Result<(), Failure> {
    let kind = AlgorithmKind::from_token(&args.alg)?;
    let (outcome_ratio, target, detail) = match args.adversary.as_str() {
        "abs-k3" => {
            let eps = args.eps.unwrap_or_else(|| rat(1, 100));
            let mut adv = AbsK3::new(eps)?;
            let outcome = run_duel(&mut adv, kind, args.k)?;
            let detail = format!(
                "alg bins {} vs opt {}",
                outcome.run.num_bins(),
                outcome.certificate.claimed_count
            );
            (outcome.ratio, outcome.target, detail)
        }
        "abs-k4plus" => {
            let eps = args
                .eps
                .unwrap_or_else(|| rat(1, 6 * (args.k as i64 / 2 + 3)));
            let mut adv = AbsK4Plus::new(args.k, eps)?;
            let outcome = run_duel(&mut adv, kind, args.k)?;
            let detail = format!(
                "alg bins {} vs opt {}",
                outcome.run.num_bins(),
                outcome.certificate.claimed_count
            );
            (outcome.ratio, outcome.target, detail)
        }
        "batch" => {
            let n = args.n.ok_or(Failure::Usage("--n is required for batch duels".into()))?;
            let mut best: Option<(Rational, String)> = None;
            for stop in 1..=4 {
                let family = gen_batches(args.k, n, rat(1, 2001), stop)?;
                let run = run_online(kind, &family.instance)?;
                let ratio = Rational::int(run.num_bins() as i64)
                    / Rational::int(family.certificate.claimed_count as i64);
                let detail = format!(
                    "stop {stop}: alg bins {} vs opt {}",
                    run.num_bins(),
                    family.certificate.claimed_count
                );
                if best.as_ref().map_or(true, |(r, _)| &ratio > r) {
                    best = Some((ratio, detail));
                }
            }
            let (ratio, detail) = best.expect("four stops were played");
            (ratio, cardbin::adversary::lb_value(args.k)?, detail)
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown adversary `{other}` (expected abs-k3, abs-k4plus, or batch)"
            )))
        }
    };
    println!("{detail}");
    println!("target {}", show(&target));
    println!("ratio={} ({})", outcome_ratio.as_fraction(), outcome_ratio.to_decimal(6));
    Ok(())
}

fn load_packing(path: &str, instance: &Instance) -> Result<Packing, Failure> {
    Ok(read_packing(&fs::read_to_string(path)?, instance)?)
}

/// The (instance, ff packing, certificate) triples a verify subcommand
/// operates on: one from files, or a seeded random sweep.
fn verify_inputs(args: &VerifyArgs) -> Result<Vec<(String, Instance, Packing, Packing)>, Failure> {
    if let Some(count) = args.random {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let mut out = Vec::new();
        for i in 0..count {
            let instance = random_grid_instance(&mut rng, args.k, 12);
            let ff = run_online(AlgorithmKind::Ff, &instance)?;
            let opt = exact_opt(&instance, DEFAULT_NODE_BUDGET);
            out.push((
                format!("random[{i}]"),
                instance,
                ff.packing,
                opt.certificate().packing.clone(),
            ));
        }
        return Ok(out);
    }
    let input = args
        .input
        .as_ref()
        .ok_or(Failure::Usage("--in is required without --random".into()))?;
    let instance = load_instance(input, args.k)?;
    let ff = match &args.packing {
        Some(path) => load_packing(path, &instance)?,
        None => run_online(AlgorithmKind::Ff, &instance)?.packing,
    };
    let opt = match &args.opt {
        Some(path) => load_packing(path, &instance)?,
        None => exact_opt(&instance, DEFAULT_NODE_BUDGET).certificate().packing.clone(),
    };
    Ok(vec![(input.clone(), instance, ff, opt)])
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let mut failures = 0u32;
    match args.what.as_str() {
        "packing" => {
            let input = args
                .input
                .as_ref()
                .ok_or(Failure::Usage("--in is required for packing checks".into()))?;
            let path = args
                .packing
                .as_ref()
                .ok_or(Failure::Usage("--packing is required for packing checks".into()))?;
            let instance = load_instance(input, args.k)?;
            let packing = load_packing(path, &instance)?;
            let report = validate_packing(&instance, &packing)?;
            if report.ok {
                println!("packing ok: {} bins", packing.num_bins());
            } else {
                for v in &report.violations {
                    println!("violation: {v}");
                }
                failures += 1;
            }
        }
        "weights" => {
            for (name, instance, ff, opt) in verify_inputs(&args)? {
                let outcome = if args.k == 3 {
                    match verify_k3_case1(&instance, &ff, &opt)? {
                        K3Case1Outcome::NotApplicable(why) => {
                            println!("{name}: skipped ({why})");
                            continue;
                        }
                        K3Case1Outcome::Checked(report) => report.violations,
                    }
                } else {
                    let roles = assign_roles(args.k, &instance, &ff, &opt)?;
                    let mut v = verify_opt_bins(args.k, &instance, &opt, &roles)?.violations;
                    v.extend(verify_ff_total(args.k, &instance, &ff, &roles)?.violations);
                    v
                };
                if outcome.is_empty() {
                    println!("{name}: weights ok");
                } else {
                    for v in &outcome {
                        println!("{name}: violation: {v}");
                    }
                    failures += 1;
                }
            }
        }
        "ff-invariants" => {
            for (name, instance, ff, opt) in verify_inputs(&args)? {
                let run = replay_ff(&instance, &ff)?;
                let mut violations = check_ff_minimality(&run);
                violations.extend(check_ff_structure(&instance, &ff, &opt)?.violations);
                if violations.is_empty() {
                    println!("{name}: ff invariants ok");
                } else {
                    for v in &violations {
                        println!("{name}: violation: {v}");
                    }
                    failures += 1;
                }
            }
        }
        "tf-invariants" => {
            for (name, instance, _, _) in verify_inputs(&args)? {
                let mut alg = ThinFat::new(args.k);
                let mut violations = Vec::new();
                for size in &instance.sizes {
                    alg.place(size.clone());
                    violations.extend(check_tf_invariants(
                        alg.state(),
                        &alg.run().packing,
                        args.k,
                    ));
                }
                if violations.is_empty() {
                    println!("{name}: tf invariants ok");
                } else {
                    for v in &violations {
                        println!("{name}: violation: {v}");
                    }
                    failures += 1;
                }
            }
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown check `{other}` (expected packing, weights, ff-invariants, or tf-invariants)"
            )))
        }
    }
    if failures > 0 {
        Err(Failure::Verification(format!("{failures} check(s) failed")))
    } else {
        Ok(())
    }
}

fn cmd_table(args: TableArgs) -> Result<(), Failure> {
    let rows = ratio_table(args.k_from, args.k_to, args.ell)?;
    println!(
        "{:>3} {:>6} {:>8} {:>6} {:>26} {:>26}",
        "k", "ell", "ff", "opt", "ratio", "asymptote"
    );
    for row in rows {
        println!(
            "{:>3} {:>6} {:>8} {:>6} {:>26} {:>26}",
            row.k,
            row.ell,
            row.ff_bins,
            row.cert_bins,
            show(&row.ratio),
            show(&row.asymptote)
        );
    }
    Ok(())
}

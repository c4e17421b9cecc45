//! `antipodal`: reproducible experiments on 2-coloured hypercubes.
//!
//! Exit status: 0 when everything checked out, 1 when a counterexample or a
//! violated invariant was found, 2 on usage, input or dimension errors.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use antipodal_core::construction::good_count_lower_bound;
use antipodal_core::q3::{verify_lemma6, verify_lemma7, verify_lemma8, LemmaReport};
use antipodal_core::{
    adversary_search, classify, codec, construction_report, min_antipodal_changes, monte_carlo_mean,
    Classification, EdgeColouring, FVariant, Fraction, Q3Colouring, VariantSource, Vertex,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{to_f64, CommaList, Format, Report};

#[derive(Parser)]
#[command(name = "antipodal", version, about = "Antipodal geodesics in 2-coloured hypercubes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustively check the three Q3 lemmas over all 4096 colourings
    VerifyLemmas(Common),
    /// Classify a Q3 colouring as good or bad
    Classify(InputArgs),
    /// Exact good-subcube statistics p, a, b and per-vertex good counts
    Stats(InputArgs),
    /// Exact expected colour changes of a random modified geodesic
    Expectation(ExpectationArgs),
    /// Monte Carlo estimate of the expectation, checked against the exact value
    Simulate(SimulateArgs),
    /// Minimum colour changes over all antipodal geodesics, with a witness
    MinChanges(InputArgs),
    /// Hill-climb for colourings whose minimum is as large as possible
    Adversary(AdversaryArgs),
    /// Write a seeded random colouring
    Gen(GenArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct InputArgs {
    /// Colouring file
    #[arg(long, conflicts_with = "n")]
    input: Option<PathBuf>,
    /// Dimension of a generated random colouring
    #[arg(long, required_unless_present = "input")]
    n: Option<u32>,
    /// Seed for the generated colouring (and for sampling, where used)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Copy, Clone, ValueEnum)]
enum VariantChoice {
    Auto,
    F1,
    F2,
}

impl VariantChoice {
    fn forced(self) -> Option<FVariant> {
        match self {
            VariantChoice::Auto => None,
            VariantChoice::F1 => Some(FVariant::F1),
            VariantChoice::F2 => Some(FVariant::F2),
        }
    }
}

#[derive(Args)]
struct ExpectationArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = VariantChoice::Auto)]
    variant: VariantChoice,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = VariantChoice::Auto)]
    variant: VariantChoice,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
}

#[derive(Args)]
struct AdversaryArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    iterations: u64,
    /// Also write the best colouring found to this file
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Destination file; the colouring goes to stdout when omitted
    #[arg(long)]
    output: Option<PathBuf>,
}

/// A failure that maps to exit status 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Outcome = Result<(String, bool), UsageError>;

fn load(args: &InputArgs, report: &mut Report) -> Result<EdgeColouring, UsageError> {
    match (&args.input, args.n) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
            let c = codec::parse(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            report.put("input", path.display()).put("n", c.dimension());
            Ok(c)
        }
        (None, Some(n)) => {
            let c = codec::random(n, args.seed)?;
            report.put("input", "random").put("n", n).put("seed", args.seed);
            Ok(c)
        }
        (None, None) => Err(UsageError("one of --input or --n is required".into())),
    }
}

fn lemma_lines(report: &mut Report, name: &str, r: &LemmaReport) {
    report
        .put(&format!("{name}_checked"), r.checked)
        .put(&format!("{name}_hypothesis_hits"), r.hypothesis_hits)
        .put(&format!("{name}_counterexamples"), r.counterexamples.len());
    if !r.counterexamples.is_empty() {
        let bits: Vec<String> = r.counterexamples.iter().map(|q| format!("{:#05x}", q.bits())).collect();
        report.put(&format!("{name}_counterexample_bits"), CommaList(&bits));
    }
}

fn verify_lemmas(args: &Common) -> Outcome {
    let mut report = Report::default();
    report.put("command", "verify-lemmas");
    let results = [("lemma6", verify_lemma6()), ("lemma7", verify_lemma7()), ("lemma8", verify_lemma8())];
    for (name, r) in &results {
        lemma_lines(&mut report, name, r);
    }
    let lemma6_vacuous = results[0].1.hypothesis_hits == 0;
    let ok = results.iter().all(|(_, r)| r.holds()) && !lemma6_vacuous;
    report.put("verified", ok);
    Ok((report.render(args.format), ok))
}

fn classify_cmd(args: &InputArgs) -> Outcome {
    let mut report = Report::default();
    report.put("command", "classify");
    let c = load(args, &mut report)?;
    let q = Q3Colouring::from_edge_colouring(&c)?;
    let class = classify(q);
    report.put("bits", format!("{:#05x}", q.bits())).put("kind", class.label());
    if let Classification::Good { witness, total_changes } = &class {
        report.put("witness_total_changes", total_changes);
        for (i, g) in witness.iter().enumerate() {
            report.put(&format!("witness_{i}"), g);
        }
    }
    Ok((report.render(args.common.format), true))
}

fn stats_cmd(args: &InputArgs) -> Outcome {
    let mut report = Report::default();
    report.put("command", "stats");
    let c = load(args, &mut report)?;
    let stats = antipodal_core::exact_stats(&c)?;
    report
        .put("good_subcubes", stats.good_subcubes)
        .put("total_subcubes", stats.total_subcubes)
        .fraction("p", stats.p())
        .optional_fraction("a", stats.a())
        .optional_fraction("b", stats.b());
    let identity = match (stats.a(), stats.b()) {
        (Some(a), Some(b)) => stats.p() == a + b / 2,
        _ => true,
    };
    let violations = (0..1u32 << c.dimension())
        .filter(|&v| (stats.good_count_at[v as usize] as u64) < good_count_lower_bound(&c, Vertex(v)))
        .count();
    report
        .put("identity_p_eq_a_plus_half_b", identity)
        .put("good_count_min", stats.good_count_at.iter().min().unwrap())
        .put("good_count_max", stats.good_count_at.iter().max().unwrap())
        .put("good_count_lower_bound_violations", violations)
        .put("good_count_at", CommaList(&stats.good_count_at));
    Ok((report.render(args.common.format), identity && violations == 0))
}

fn expectation_cmd(args: &ExpectationArgs) -> Outcome {
    let mut report = Report::default();
    report.put("command", "expectation");
    let c = load(&args.input, &mut report)?;
    let r = construction_report(&c, args.variant.forced())?;
    report
        .fraction("p", r.stats.p())
        .optional_fraction("a", r.stats.a())
        .optional_fraction("b", r.stats.b())
        .put(
            "variant_source",
            match r.source {
                VariantSource::Auto => "auto",
                VariantSource::Override => "override",
            },
        )
        .put("chosen", r.chosen)
        .put("blocks", r.expectation.blocks)
        .fraction("block_mean", r.expectation.block_mean)
        .fraction("junction_mean", r.expectation.junction_mean)
        .fraction("expectation", r.expectation.expectation)
        .put("expectation_floor", r.expectation.expectation.floor());
    let mut ok = true;
    if let Some(census) = &r.census {
        let chosen = r.chosen.index();
        report
            .put("junctions_total", census.total)
            .put("junctions_good_good", census.good_good)
            .put("junctions_mixed", census.mixed)
            .put("junctions_bad_bad", census.bad_bad)
            .put("good_good_changes", census.good_good_changes[chosen])
            .optional_fraction("good_good_change_fraction", census.good_good_change_fraction(r.chosen))
            .put("mixed_changes_f1", census.mixed_changes[0])
            .put("mixed_changes_f2", census.mixed_changes[1])
            .optional_fraction("mixed_change_fraction", census.mixed_change_fraction(r.chosen))
            .put("bad_bad_changes_f1", census.bad_bad_changes[0])
            .put("bad_bad_changes_f2", census.bad_bad_changes[1])
            .put("mixed_xor_violations", census.mixed_xor_violations);
        ok = census.bad_bad_changes == [0, 0] && census.mixed_xor_violations == 0;
        if r.source == VariantSource::Auto {
            ok &= census.mixed_change_fraction(r.chosen).is_none_or(|f| f <= Fraction::new(1, 2));
        }
    }
    Ok((report.render(args.input.common.format), ok))
}

const STDERR_TOLERANCE: f64 = 4.0;

fn simulate_cmd(args: &SimulateArgs) -> Outcome {
    let mut report = Report::default();
    report.put("command", "simulate");
    let c = load(&args.input, &mut report)?;
    if args.input.input.is_some() {
        report.put("seed", args.input.seed);
    }
    let r = construction_report(&c, args.variant.forced())?;
    let mc = monte_carlo_mean(&c, r.chosen, args.samples, args.input.seed)?;
    let exact = to_f64(r.expectation.expectation);
    let deviation = (mc.mean - exact).abs();
    let consistent = deviation <= STDERR_TOLERANCE * mc.stderr || deviation < 1e-12;
    report
        .put("chosen", r.chosen)
        .put("samples", mc.samples)
        .fraction("expectation", r.expectation.expectation)
        .put("mc_mean", format!("{:.6}", mc.mean))
        .put("mc_stderr", format!("{:.6}", mc.stderr))
        .put("deviation", format!("{deviation:.6}"))
        .put("tolerance_stderrs", STDERR_TOLERANCE)
        .put("consistent", consistent);
    Ok((report.render(args.input.common.format), consistent))
}

fn min_changes_cmd(args: &InputArgs) -> Outcome {
    let mut report = Report::default();
    report.put("command", "min-changes");
    let c = load(args, &mut report)?;
    let r = min_antipodal_changes(&c);
    let ceiling = c.dimension() / 2;
    report
        .put("changes", r.changes)
        .put("pair", format!("{},{}", r.pair.0, r.pair.1))
        .put("witness", &r.witness)
        .put("floor_n_over_2", ceiling);
    Ok((report.render(args.common.format), r.changes <= ceiling))
}

fn adversary_cmd(args: &AdversaryArgs) -> Outcome {
    let mut report = Report::default();
    report
        .put("command", "adversary")
        .put("n", args.n)
        .put("seed", args.seed)
        .put("iterations", args.iterations);
    let outcome = adversary_search(args.n, args.seed, args.iterations)?;
    if let Some(path) = &args.output {
        std::fs::write(path, codec::serialize(&outcome.best))
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
        report.put("output", path.display());
    }
    let ceiling = args.n / 2;
    report
        .put("steps", outcome.iterations)
        .put("restarts", outcome.restarts)
        .put("best_value", outcome.value)
        .put("floor_n_over_2", ceiling);
    Ok((report.render(args.common.format), outcome.value <= ceiling))
}

fn gen_cmd(args: &GenArgs) -> Outcome {
    let text = codec::serialize(&codec::random(args.n, args.seed)?);
    match &args.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
            Ok((String::new(), true))
        }
        None => Ok((text, true)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::VerifyLemmas(args) => verify_lemmas(args),
        Command::Classify(args) => classify_cmd(args),
        Command::Stats(args) => stats_cmd(args),
        Command::Expectation(args) => expectation_cmd(args),
        Command::Simulate(args) => simulate_cmd(args),
        Command::MinChanges(args) => min_changes_cmd(args),
        Command::Adversary(args) => adversary_cmd(args),
        Command::Gen(args) => gen_cmd(args),
    };
    match outcome {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

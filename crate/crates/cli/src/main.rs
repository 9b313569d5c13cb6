use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use realgw::euler::{locus_contribution, EdgeKRange, EulerConfig, ParityMode};
use realgw::exactmath::{sample_weight_point, Rational};
use realgw::graphgen::{census_entry, load_or_build_census, CensusKey, Involution, SignMode};
use realgw::localizer::{admissible_t_vectors, invariant_with, EngineOptions, EvalMode, InvariantQuery, SumPath};
use realgw::verify::{run_all, Outcome, VerifyOptions};
use realgw::weights::{PointWeights, WeightSystem};
use realgw::Error;

/// Exact real Gromov-Witten invariants of P^(2M-1) by torus localization.
#[derive(Parser, Debug)]
#[command(name = "realgw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Number of generic weight points the sum is evaluated at.
    #[arg(long, global = true, default_value_t = 3)]
    samples: usize,

    /// Seed of the first weight point.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    /// Directory for the graph census cache.
    #[arg(long, global = true, env = "REALGW_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Sum rational functions instead of specializing (M <= 2, d <= 3).
    #[arg(long, global = true)]
    symbolic: bool,

    /// Class-dependent half-edge signs; allows odd M.
    #[arg(long, global = true)]
    general_parity: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute one invariant N_d^phi(t).
    Compute(ComputeArgs),
    /// Tabulate invariants over all odd insertion vectors as CSV.
    Table(TableArgs),
    /// Dump the half-graph census as JSON.
    Graphs(GraphsArgs),
    /// Run the acceptance checks.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[arg(long = "M")]
    rank: usize,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    phi: Involution,
    /// Comma-separated insertion exponents.
    #[arg(long, value_delimiter = ',', required = true)]
    t: Vec<u32>,
    /// Use the plus-only sum with prefactor 2^(l-1).
    #[arg(long)]
    reduced: bool,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long = "M")]
    rank: usize,
    #[arg(long)]
    phi: Involution,
    #[arg(long)]
    dmax: u32,
    #[arg(long)]
    lmax: usize,
}

#[derive(Args, Debug)]
struct GraphsArgs {
    #[arg(long = "M")]
    rank: usize,
    #[arg(long)]
    d: u32,
    /// Number of marked pairs; defaults to the length of --t, else 0.
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    phi: Involution,
    #[arg(long)]
    c: Involution,
    #[arg(long)]
    plus_only: bool,
    /// Attach each graph's contribution at the point drawn from --seed.
    #[arg(long, requires = "t")]
    contributions: bool,
    #[arg(long, value_delimiter = ',')]
    t: Option<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EdgeRangeArg {
    Literal,
    ExcludeConjugates,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Skip the degree-5 anchor.
    #[arg(long)]
    skip_slow: bool,
    #[arg(long, value_enum, default_value = "literal", hide = true)]
    edge_k_range: EdgeRangeArg,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidQuery(_)
            | Error::CanonicalNeedsEvenRank(_)
            | Error::InsertionCountMismatch { .. }
            | Error::IndexOutOfRange { .. }
            | Error::InvalidWeightPoint(_) => Failure::Usage(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Compute(a) => compute(&cli, a),
        Command::Table(a) => table(&cli, a),
        Command::Graphs(a) => graphs(&cli, a),
        Command::Verify(a) => verify(&cli, a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

impl Cli {
    fn mode(&self) -> EvalMode {
        if self.symbolic {
            EvalMode::Symbolic
        } else {
            EvalMode::Specialized {
                samples: self.samples,
                seed: self.seed,
            }
        }
    }

    fn engine(&self) -> EngineOptions {
        EngineOptions {
            general_parity: self.general_parity,
            edge_k_range: EdgeKRange::Literal,
            cache_dir: self.cache_dir.clone(),
        }
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("output serializes"));
}

fn compute(cli: &Cli, a: &ComputeArgs) -> CmdResult {
    let q = InvariantQuery::new(a.rank, a.d, a.phi, &a.t)
        .with_mode(cli.mode())
        .with_path(if a.reduced { SumPath::Reduced } else { SumPath::General });
    let r = invariant_with(&q, &cli.engine())?;
    if cli.json {
        print_json(&r);
    } else {
        if !r.dimension_ok {
            eprintln!("note: sum of t does not match the dimension; the invariant is 0");
        }
        println!("{}", r.value);
    }
    Ok(())
}

#[derive(Serialize)]
struct TableRow {
    d: u32,
    t: Vec<u32>,
    value: Rational,
}

fn table(cli: &Cli, a: &TableArgs) -> CmdResult {
    let mut rows: Vec<(u32, Vec<u32>)> = Vec::new();
    for d in 1..=a.dmax {
        for l in 1..=a.lmax {
            rows.extend(admissible_t_vectors(a.rank, d, l, true).into_iter().map(|t| (d, t)));
        }
    }
    rows.sort();
    let mut out = Vec::with_capacity(rows.len());
    for (d, t) in rows {
        let q = InvariantQuery::new(a.rank, d, a.phi, &t).with_mode(cli.mode());
        let value = invariant_with(&q, &cli.engine())?.value;
        out.push(TableRow { d, t, value });
    }
    if cli.json {
        print_json(&out);
    } else {
        println!("d,t,value");
        for row in &out {
            let t: Vec<String> = row.t.iter().map(u32::to_string).collect();
            println!("{},\"{}\",{}", row.d, t.join(","), row.value);
        }
    }
    Ok(())
}

fn graphs(cli: &Cli, a: &GraphsArgs) -> CmdResult {
    let l = match (&a.t, a.l) {
        (Some(t), Some(l)) if t.len() != l => {
            return Err(Failure::Usage(format!("--l {l} but --t has {} entries", t.len())));
        }
        (Some(t), _) => t.len(),
        (None, l) => l.unwrap_or(0),
    };
    let key = CensusKey {
        rank: a.rank,
        d: a.d,
        l,
        phi: a.phi,
        c: a.c,
        sign_mode: if a.plus_only { SignMode::PlusOnly } else { SignMode::AllSigns },
    };
    let (census, _) = load_or_build_census(cli.cache_dir.as_deref(), &key)?;
    let mut entries = Vec::with_capacity(census.len());
    if a.contributions {
        let t = a.t.as_deref().expect("clap enforces --t");
        let point = sample_weight_point(a.rank, cli.seed);
        let w = PointWeights::new(WeightSystem::new(a.rank), &point)?;
        let cfg = EulerConfig {
            parity_mode: if cli.general_parity {
                ParityMode::General(a.c)
            } else {
                ParityMode::Canonical
            },
            edge_k_range: EdgeKRange::Literal,
        };
        for g in &census {
            let value = match locus_contribution(g, t, &w, &cfg) {
                Ok(c) => c.value,
                Err(Error::Pole) => {
                    return Err(Failure::Check(format!(
                        "pole at the weight point {:?}; try another --seed",
                        point.values()
                    )))
                }
                Err(e) => return Err(e.into()),
            };
            entries.push(census_entry(g, Some(value)));
        }
    } else {
        entries.extend(census.iter().map(|g| census_entry(g, None)));
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&entries).expect("census serializes")
    );
    Ok(())
}

fn verify(cli: &Cli, a: &VerifyArgs) -> CmdResult {
    let opts = VerifyOptions {
        skip_slow: a.skip_slow,
        edge_k_range: match a.edge_k_range {
            EdgeRangeArg::Literal => EdgeKRange::Literal,
            EdgeRangeArg::ExcludeConjugates => EdgeKRange::ExcludeConjugates,
        },
        cache_dir: cli.cache_dir.clone(),
    };
    let reports = run_all(&opts);
    if cli.json {
        print_json(&reports);
    } else {
        for r in &reports {
            let tag = match r.outcome {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::Skip => "SKIP",
            };
            println!("{tag} {:>2} {} ({:.2}s): {}", r.id, r.name, r.seconds, r.detail);
        }
    }
    let failed = reports.iter().filter(|r| r.outcome == Outcome::Fail).count();
    if failed > 0 {
        return Err(Failure::Check(format!("{failed} criteria failed")));
    }
    Ok(())
}

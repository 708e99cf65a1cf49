use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use quasigroup_core::{
    builtin, classify_type_with, equality_partition, find_anti_isotopism_with, find_isotopism_with,
    isotopy_partition_with, parastrophe, run_census_with, satisfies_permuted_identity_with,
    satisfies_plain_identity, Budget, CensusError, ClassifyError, Fixture, Isotopism, IsotopyError,
    ParastropheIndex, PermutedIdentity, PlainIdentity, Quasigroup,
};

/// Finite quasigroups as Latin squares.
#[derive(Parser)]
#[command(name = "qg", version)]
struct Cli {
    /// Write symbols and witnesses 1-based (input is detected either way).
    #[arg(long, global = true)]
    one_based: bool,

    /// Largest order the isotopy solver will attempt.
    #[arg(long, global = true, env = "QG_BUDGET", value_name = "ORDER")]
    budget: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file holds a Latin square.
    Validate { file: PathBuf },
    /// Print a conjugate (0 = Q, 1 = x\y, 2 = x/y, 3, 4, 5 = transpose).
    Parastrophe {
        #[arg(short, long, value_parser = clap::value_parser!(u8).range(0..6))]
        index: u8,
        file: PathBuf,
    },
    /// Search for an isotopism (or anti-isotopism) from FILE1 onto FILE2.
    Isotopic {
        #[arg(long)]
        anti: bool,
        file1: PathBuf,
        file2: PathBuf,
    },
    /// Print the type letter A-F.
    Classify {
        /// Also print the equality and isotopy partitions of the conjugates.
        #[arg(long)]
        partition: bool,
        file: PathBuf,
    },
    /// Test the plain and permuted identities; exits 2 if any reported one fails.
    Identities {
        /// Report a single identity, by name (comm, left-key, right-key,
        /// xyx-left, xyx-right, i1..i5).
        #[arg(long)]
        only: Option<String>,
        file: PathBuf,
    },
    /// Classify every reduced square of order N into a CSV file.
    Census {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print a builtin table.
    Fixture {
        name: String,
        #[arg(short)]
        n: Option<usize>,
    },
}

enum Identity {
    Plain(PlainIdentity),
    Permuted(PermutedIdentity),
}

impl Identity {
    fn name(&self) -> &'static str {
        match self {
            Identity::Plain(PlainIdentity::Comm) => "comm",
            Identity::Plain(PlainIdentity::LeftKey) => "left-key",
            Identity::Plain(PlainIdentity::RightKey) => "right-key",
            Identity::Plain(PlainIdentity::XyxLeft) => "xyx-left",
            Identity::Plain(PlainIdentity::XyxRight) => "xyx-right",
            Identity::Permuted(PermutedIdentity::I1) => "i1",
            Identity::Permuted(PermutedIdentity::I2) => "i2",
            Identity::Permuted(PermutedIdentity::I3) => "i3",
            Identity::Permuted(PermutedIdentity::I4) => "i4",
            Identity::Permuted(PermutedIdentity::I5) => "i5",
        }
    }

    fn formula(&self) -> &'static str {
        match self {
            Identity::Plain(id) => id.formula(),
            Identity::Permuted(id) => id.formula(),
        }
    }

    fn all() -> impl Iterator<Item = Identity> {
        PlainIdentity::ALL
            .into_iter()
            .map(Identity::Plain)
            .chain(PermutedIdentity::ALL.into_iter().map(Identity::Permuted))
    }
}

/// Result of a verb that ran to completion: a positive or negative answer.
enum Decision {
    Yes,
    No,
}

fn read_square(path: &Path) -> anyhow::Result<Quasigroup> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Quasigroup::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_witness(iso: &Isotopism, one_based: bool) -> String {
    let shift = usize::from(one_based);
    let line = |p: &quasigroup_core::Permutation| {
        p.as_slice()
            .iter()
            .map(|x| (x + shift).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        "alpha: {}\nbeta: {}\ngamma: {}",
        line(&iso.alpha),
        line(&iso.beta),
        line(&iso.gamma)
    )
}

fn run(cli: Cli) -> anyhow::Result<Decision> {
    let budget = cli
        .budget
        .map_or_else(Budget::default, |max_order| Budget { max_order });
    let one_based = cli.one_based;
    match cli.command {
        Command::Validate { file } => {
            let q = read_square(&file)?;
            println!("valid order {}", q.order());
        }
        Command::Parastrophe { index, file } => {
            let q = read_square(&file)?;
            let i = ParastropheIndex::new(index.into()).expect("range checked by clap");
            print!("{}", parastrophe(&q, i).to_text(one_based));
        }
        Command::Isotopic { anti, file1, file2 } => {
            let q = read_square(&file1)?;
            let p = read_square(&file2)?;
            if q.order() != p.order() {
                println!("none");
                return Ok(Decision::No);
            }
            let found = if anti {
                find_anti_isotopism_with(&q, &p, budget)?
            } else {
                find_isotopism_with(&q, &p, budget)?
            };
            match found {
                Some(w) => println!("{}", write_witness(&w, one_based)),
                None => {
                    println!("none");
                    return Ok(Decision::No);
                }
            }
        }
        Command::Classify { partition, file } => {
            let q = read_square(&file)?;
            println!("{}", classify_type_with(&q, budget)?);
            if partition {
                println!("equality: {}", equality_partition(&q));
                println!("isotopy: {}", isotopy_partition_with(&q, budget)?);
            }
        }
        Command::Identities { only, file } => {
            let q = read_square(&file)?;
            let selected: Vec<Identity> = match only {
                Some(name) => {
                    let Some(id) = Identity::all().find(|id| id.name() == name) else {
                        bail!("unknown identity `{name}`");
                    };
                    vec![id]
                }
                None => Identity::all().collect(),
            };
            let mut all_hold = true;
            for id in &selected {
                let holds = match id {
                    Identity::Plain(p) => satisfies_plain_identity(&q, *p),
                    Identity::Permuted(p) => satisfies_permuted_identity_with(&q, *p, budget)?,
                };
                all_hold &= holds;
                let verdict = if holds { "holds" } else { "fails" };
                println!("{:<10} {:<16} {verdict}", id.name(), id.formula());
            }
            if !all_hold {
                return Ok(Decision::No);
            }
        }
        Command::Census { n, out } => {
            let file =
                fs::File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            let mut sink = BufWriter::new(file);
            let summary = run_census_with(n, &mut sink, budget)?;
            sink.flush()?;
            print!("{summary}");
        }
        Command::Fixture { name, n } => {
            let fixture: Fixture = name.parse()?;
            let Some(order) = n.or(fixture.fixed_order()) else {
                bail!("fixture `{fixture}` needs an order (-n)");
            };
            print!("{}", builtin(fixture, order)?.to_text(one_based));
        }
    }
    Ok(Decision::Yes)
}

fn budget_exceeded(err: &anyhow::Error) -> bool {
    let isotopy = |e: &IsotopyError| matches!(e, IsotopyError::BudgetExceeded { .. });
    let classify = |e: &ClassifyError| matches!(e, ClassifyError::Isotopy(i) if isotopy(i));
    err.chain().any(|cause| {
        cause.downcast_ref::<IsotopyError>().is_some_and(isotopy)
            || cause.downcast_ref::<ClassifyError>().is_some_and(classify)
            || matches!(
                cause.downcast_ref::<CensusError>(),
                Some(CensusError::Classify { source, .. }) if classify(source)
            )
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Decision::Yes) => ExitCode::SUCCESS,
        Ok(Decision::No) => ExitCode::from(2),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(if budget_exceeded(&err) { 3 } else { 1 })
        }
    }
}

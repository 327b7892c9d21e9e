//! `latgap`: holes, Hilbert bases and `mu` invariants of lattice polytopes.
//!
//! Exit codes: 0 success, 1 invalid input, 2 budget exhausted, 3 not found
//! within the given bounds, 4 a verification check failed.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use latgap::config::DEFAULT_MAX_POINTS;
use latgap::{Arith, ComputeConfig, Engine};

use latgap_cli::commands::{self, MuBounds};
use latgap_cli::fail::{CliError, CliResult};
use latgap_cli::instance::InstanceSpec;
use latgap_cli::output::{Format, Output};
use latgap_cli::verify::{self, FacetExpectation};

#[derive(Debug, Parser)]
#[command(name = "latgap", version, about = "Exact graded lattice-point monoids of lattice polytopes")]
struct Cli {
    /// Semigroup closure engine.
    #[arg(long, global = true, value_enum, default_value_t = EngineArg::Auto)]
    engine: EngineArg,
    /// Worker threads (0 = one per core). Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Integer arithmetic. `auto` starts in checked 64-bit and promotes to big integers on overflow.
    #[arg(long, global = true, value_enum, default_value_t = ArithArg::Auto)]
    arith: ArithArg,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest number of lattice points enumerated at one degree.
    #[arg(long, global = true, env = "LATGAP_BUDGET", default_value_t = DEFAULT_MAX_POINTS)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EngineArg {
    Generic,
    Fiber,
    Auto,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ArithArg {
    Checked64,
    Big,
    Auto,
}

/// `INSTANCE` is a JSON document, a file holding one, or `-` for stdin.
#[derive(Debug, Subcommand)]
enum Command {
    /// Level counts, reachable counts and holes by degree.
    Gap {
        instance: String,
        #[arg(long)]
        max_degree: u64,
        /// List the holes (TSV: one hole per row).
        #[arg(long)]
        holes: bool,
    },
    /// Hilbert basis of the cone over the polytope.
    Hilbert {
        instance: String,
        /// Defaults to dim P - 1.
        #[arg(long)]
        max_degree: Option<u64>,
    },
    /// The invariants mu_hilb, mu_midp and mu_idp within bounds. A product
    /// of two factors is handled through the factors.
    Mu {
        instance: String,
        /// Hilbert basis degree bound; defaults to dim P - 1.
        #[arg(long, visible_alias = "D")]
        max_degree: Option<u64>,
        #[arg(long, visible_alias = "S", default_value_t = 5)]
        max_dilation: u64,
        #[arg(long, visible_alias = "M", default_value_t = 3)]
        multiples: u64,
    },
    /// Engine results against closed forms; exit 0 iff every check passes.
    Verify {
        #[command(subcommand)]
        target: Target,
    },
}

#[derive(Debug, Subcommand)]
enum Target {
    /// Gap vector, holes and Hilbert basis of P_{k,a}.
    Pka {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        a: i64,
        /// Defaults to a + 2.
        #[arg(long)]
        max_degree: Option<u64>,
    },
    /// Gap vector and holes of Q_{a,b} up to the end of the degree window.
    Qab {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        /// Inclusive window `lo..hi` scanned for non-unimodality.
        #[arg(long, value_parser = verify::parse_degrees, default_value = "9..11")]
        degrees: std::ops::RangeInclusive<u64>,
    },
    /// Normality of sP_{k,k+2} for s <= S.
    Corollary {
        #[arg(long)]
        k: u64,
        #[arg(long = "S", visible_alias = "max-dilation", default_value_t = 5)]
        max_dilation: u64,
        #[arg(long = "M", visible_alias = "multiples", default_value_t = 3)]
        multiples: u64,
    },
    /// Product laws for level and reachable counts.
    Product {
        left: String,
        right: String,
        #[arg(long, default_value_t = 5)]
        max_degree: u64,
    },
    /// Normality of every facet in its own lattice.
    NormalFacets {
        instance: String,
        #[arg(long, default_value_t = 4)]
        max_degree: u64,
        #[arg(long, value_enum, default_value_t = FacetExpectation::AllNormal)]
        expect: FacetExpectation,
    },
    /// Bounded very-ampleness through the vertex cones.
    VeryAmple {
        instance: String,
        #[arg(long, default_value_t = 40)]
        bound: u64,
    },
}

impl Cli {
    fn config(&self) -> ComputeConfig {
        let mut c = ComputeConfig::default().with_max_points(self.budget).with_threads(self.threads);
        c.engine = match self.engine {
            EngineArg::Generic => Engine::Generic,
            EngineArg::Fiber => Engine::Fiber,
            EngineArg::Auto => Engine::Auto,
        };
        c.arith = match self.arith {
            ArithArg::Checked64 => Arith::Checked64,
            ArithArg::Big => Arith::Big,
            ArithArg::Auto => Arith::Auto,
        };
        c
    }
}

/// The report, and whether a verification failed.
fn run(cli: &Cli) -> CliResult<(Output, bool)> {
    let c = cli.config();
    let ok = |o: Output| Ok((o, true));
    match &cli.command {
        Command::Gap { instance, max_degree, holes } => {
            ok(commands::gap(&InstanceSpec::load(instance)?, *max_degree, *holes, &c)?)
        }
        Command::Hilbert { instance, max_degree } => {
            ok(commands::hilbert(&InstanceSpec::load(instance)?, *max_degree, &c)?)
        }
        Command::Mu { instance, max_degree, max_dilation, multiples } => {
            let bounds = MuBounds { max_degree: *max_degree, max_dilation: *max_dilation, multiples: *multiples };
            ok(commands::mu(&InstanceSpec::load(instance)?, &bounds, &c)?)
        }
        Command::Verify { target } => {
            let v = match target {
                Target::Pka { k, a, max_degree } => verify::pka(*k, *a, *max_degree, &c)?,
                Target::Qab { a, b, degrees } => verify::qab(*a, *b, degrees.clone(), &c)?,
                Target::Corollary { k, max_dilation, multiples } => {
                    verify::corollary(*k, *max_dilation, *multiples, &c)?
                }
                Target::Product { left, right, max_degree } => {
                    verify::product(&InstanceSpec::load(left)?, &InstanceSpec::load(right)?, *max_degree, &c)?
                }
                Target::NormalFacets { instance, max_degree, expect } => {
                    verify::normal_facets(&InstanceSpec::load(instance)?, *max_degree, *expect, &c)?
                }
                Target::VeryAmple { instance, bound } => {
                    verify::very_ample(&InstanceSpec::load(instance)?, *bound, &c)?
                }
            };
            Ok((v.output, v.passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok((out, passed)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.render(cli.format).as_bytes());
            let _ = stdout.flush();
            if passed {
                ExitCode::SUCCESS
            } else {
                let e = CliError::Failed("some checks failed".into());
                eprintln!("latgap: {e}");
                ExitCode::from(e.exit_code())
            }
        }
        Err(e) => {
            eprintln!("latgap: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

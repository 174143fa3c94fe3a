mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use scissors_core::squares_k0::Caps;

use report::Format;

#[derive(Parser)]
#[command(
    name = "scissors",
    version,
    about = "Scissors congruence of surfaces, K₀ of squares, and chain-level Euler characteristics"
)]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for every randomized step.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Triangulated surfaces.
    #[command(subcommand)]
    Surface(SurfaceCmd),
    /// SK groups of surfaces.
    #[command(subcommand)]
    Sk(SkCmd),
    /// K₀ of a squares presentation, or the hypotheses of a finite category.
    K0(K0Args),
    /// Chain complexes.
    #[command(subcommand)]
    Chain(ChainCmd),
    /// Chains of surfaces and the Euler characteristic.
    #[command(subcommand)]
    Euler(EulerCmd),
    /// Run the acceptance criteria.
    Accept(AcceptArgs),
}

#[derive(Subcommand)]
pub enum SurfaceCmd {
    /// Check every triangulation invariant.
    Validate { file: PathBuf },
    /// Print the diffeomorphism class.
    Classify { file: PathBuf },
    /// Print the Euler characteristic.
    Chi { file: PathBuf },
    /// Cut along a circle given as a vertex cycle.
    Cut {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        circle: Vec<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Glue two boundary cycles.
    Paste {
        file: PathBuf,
        #[arg(long)]
        left: usize,
        #[arg(long)]
        right: usize,
        #[arg(long, default_value_t = 0)]
        offset: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Disjoint union.
    Union {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Write a standard surface: genus and boundary, or a named one.
    Build {
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long, default_value_t = 0)]
        boundary: u32,
        /// octahedron, torus, disk or annulus
        #[arg(long)]
        named: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
pub enum SkCmd {
    /// Decide equality in SK₂^∂.
    Decide { first: PathBuf, second: PathBuf },
    /// Search for a cut-and-paste sequence from the first surface to the second.
    Witness {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 6)]
        budget: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Verify the exact sequence SK₂ → SK₂^∂ → C₁.
    Exact {
        #[arg(long, default_value = "3,3,3")]
        caps: Caps,
    },
    /// K₀ of the truncated category of surfaces.
    K0 {
        #[arg(long, default_value = "2,2,2")]
        caps: Caps,
    },
    /// Check that regluing stacks of cylinders changes nothing.
    Skk {
        #[arg(long, default_value_t = 3)]
        max_circles: usize,
        #[arg(long, default_value = "2,2,2")]
        caps: Caps,
    },
    /// Doubling certificates for all generator pairs within caps.
    Double {
        #[arg(long, default_value = "3,3,3")]
        caps: Caps,
    },
    /// Evaluate SK invariants.
    Invariants {
        file: PathBuf,
        /// Only this invariant.
        #[arg(long)]
        invariant: Option<String>,
    },
}

#[derive(Args)]
pub struct K0Args {
    file: PathBuf,
    /// Read a finite category with squares and check the hypotheses.
    #[arg(long)]
    hypotheses: bool,
    /// Add identities and their trivial squares before checking.
    #[arg(long, requires = "hypotheses")]
    complete: bool,
}

#[derive(Subcommand)]
pub enum ChainCmd {
    /// Homology in every degree.
    Homology { file: PathBuf },
    /// Euler characteristic from ranks and from homology.
    Chi { file: PathBuf },
    /// Pushout of two maps out of a common source.
    Pushout {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Whether two complexes have the same homology.
    Qiso { first: PathBuf, second: PathBuf },
}

#[derive(Subcommand)]
pub enum EulerCmd {
    /// Class of the chains of a surface against its Euler characteristic.
    Chi { file: PathBuf },
    /// Push a square of surfaces through the chain functor.
    VerifySquare { file: PathBuf },
    /// Build a square by splitting a surface along a circle.
    Square {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        circle: Vec<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Chain classes against χ on generators and generated squares, and
    /// against the SK relations.
    Commute {
        #[arg(long, default_value = "3,3,3")]
        caps: Caps,
        #[arg(long, default_value_t = 20)]
        squares: usize,
    },
}

#[derive(Args)]
pub struct AcceptArgs {
    /// Run only these criteria, by name or number.
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    /// Append elapsed times; the report is then no longer byte-stable.
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Surface(c) => commands::surface(c),
        Command::Sk(c) => commands::sk(c),
        Command::K0(a) => commands::k0(a),
        Command::Chain(c) => commands::chain(c),
        Command::Euler(c) => commands::euler(c, cli.seed),
        Command::Accept(a) => commands::accept(a, cli.seed),
    };
    match result {
        Ok(r) => {
            print!("{}", r.render(cli.format));
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code() as u8)
        }
    }
}

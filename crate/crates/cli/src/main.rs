//! `cpn`: build projector towers from holomorphic vector descriptors and
//! report the geometry of the surfaces they generate.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "cpn", version, about = "Projector towers of the CP^{N-1} sigma model and their su(N) surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the tower of a holomorphic vector and verify every projector invariant.
    Tower(IoArgs),
    /// Tower, geometry and global integrals for every element; exit 0 iff all certificates pass.
    Verify {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Geometry report of the surface F_k.
    Geometry {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[command(flatten)]
        quad: QuadArgs,
        /// Skip the global integrals.
        #[arg(long)]
        no_integrals: bool,
    },
    /// Global invariants S, A, Q, Δ, W (and the vector-form action).
    Integrate {
        #[command(flatten)]
        io: IoArgs,
        /// Restrict to one tower element.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Sample F_k on a square grid and write CSV.
    ExportSurface {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 3.0)]
        grid_extent: f64,
        #[arg(long, default_value_t = 51)]
        grid_res: usize,
        /// Also write the exact matrix F_k as JSON.
        #[arg(long)]
        surface_out: Option<PathBuf>,
    },
    /// Decide whether a skew-Hermitian matrix JSON is a tower surface F_k.
    Classify(IoArgs),
}

#[derive(Args, Debug)]
struct IoArgs {
    #[arg(long)]
    input: PathBuf,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct QuadArgs {
    /// Relative tolerance between quadrature levels.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Largest per-axis node count.
    #[arg(long, default_value_t = 1024)]
    max_nodes: usize,
}

impl QuadArgs {
    fn options(&self) -> cpn_core::quadrature::QuadratureOptions {
        cpn_core::quadrature::QuadratureOptions {
            initial_nodes: 64.min(self.max_nodes / 2).max(2),
            rel_tol: self.tol,
            max_nodes: self.max_nodes,
            ..Default::default()
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("CPN_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::validation(format!("CPN_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::validation(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Tower(io) => commands::tower(&io.input, io.out.as_deref()),
        Command::Verify { io, quad } => commands::verify(&io.input, io.out.as_deref(), &quad.options()),
        Command::Geometry { io, k, quad, no_integrals } => {
            let opts = quad.options();
            commands::geometry(&io.input, io.out.as_deref(), k, (!no_integrals).then_some(&opts))
        }
        Command::Integrate { io, k, quad } => commands::integrate(&io.input, io.out.as_deref(), k, &quad.options()),
        Command::ExportSurface { io, k, grid_extent, grid_res, surface_out } => commands::export_surface(
            &io.input,
            io.out.as_deref(),
            k,
            grid_extent,
            grid_res,
            surface_out.as_deref(),
        ),
        Command::Classify(io) => commands::classify(&io.input, io.out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.diagnostic());
            ExitCode::from(e.kind.exit_code() as u8)
        }
    }
}

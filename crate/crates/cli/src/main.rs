use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ihall_cli::{
    cmd_census, cmd_cross_check, cmd_identities, cmd_verify, load_quiver, IdentityBounds, Report,
    DEFAULT_SPACE_BUDGET,
};
use ihall_core::engine::{Parity, RelationKind};
use ihall_core::quiver::{DimVector, IQuiver};

#[derive(Parser)]
#[command(name = "ihall", version, about = "Exact checks in iHall algebras of iquivers")]
struct Cli {
    /// Zero the elapsed time so reports compare byte for byte.
    #[arg(long, global = true)]
    stable: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Symbolic identity sweeps.
    Identities {
        #[arg(long, default_value_t = 4)]
        max_a: i64,
        #[arg(long, default_value_t = 4)]
        max_b: i64,
        /// Bound on a + b.
        #[arg(long, default_value_t = 4)]
        max_sum: i64,
        #[arg(long, default_value_t = 8)]
        max_d: i64,
        /// Bound on n for the alternating binomial sums.
        #[arg(long, default_value_t = 8)]
        max_n: i64,
    },
    /// Check defining relations under the generator images.
    Verify {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(i64).range(0..=1))]
        parity: i64,
        /// Comma separated: tk-b, commute, serre, orbit-serre, iserre.
        #[arg(long, value_delimiter = ',', default_values_t = RelationKind::ALL.map(|r| r.name().to_string()))]
        relations: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_SPACE_BUDGET)]
        budget: u128,
    },
    /// Isomorphism classes in one dimension vector.
    Census {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long, default_value_t = 2)]
        q: u64,
        /// Comma separated entries, one per vertex.
        #[arg(long, value_delimiter = ',', required = true)]
        dim: Vec<i64>,
        /// Use the path algebra instead of the iquiver algebra.
        #[arg(long)]
        path: bool,
        #[arg(long, default_value_t = DEFAULT_SPACE_BUDGET)]
        budget: u128,
    },
    /// Compare engine and oracle on every word in the simples.
    CrossCheck {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, default_value_t = DEFAULT_SPACE_BUDGET)]
        budget: u128,
    },
}

fn run(cmd: Command) -> ihall_core::Result<Report> {
    let quiver = |p: &PathBuf| -> ihall_core::Result<IQuiver> { load_quiver(p) };
    match cmd {
        Command::Identities {
            max_a,
            max_b,
            max_sum,
            max_d,
            max_n,
        } => cmd_identities(IdentityBounds {
            max_a,
            max_b,
            max_sum,
            max_d,
            max_n,
        }),
        Command::Verify {
            quiver: path,
            q,
            parity,
            relations,
            budget,
        } => {
            let rels = relations
                .iter()
                .map(|s| s.parse())
                .collect::<ihall_core::Result<Vec<RelationKind>>>()?;
            cmd_verify(&quiver(&path)?, q, &rels, Parity::of(parity), budget)
        }
        Command::Census {
            quiver: path,
            q,
            dim,
            path: use_path,
            budget,
        } => cmd_census(&quiver(&path)?, q, &DimVector(dim), use_path, budget),
        Command::CrossCheck {
            quiver: path,
            q,
            max_len,
            budget,
        } => cmd_cross_check(&quiver(&path)?, q, max_len, budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(mut report) => {
            if cli.stable {
                report.elapsed_ms = 0;
            }
            // a closed pipe is not an error worth a panic
            let _ = writeln!(std::io::stdout(), "{}", report.to_json());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() { 2 } else { 3 })
        }
    }
}

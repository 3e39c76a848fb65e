mod commands;
mod report;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ocl", version, about = "Exact certificates for overcommutation")]
struct Cli {
    /// Seed for sampled checks.
    #[arg(long, global = true, env = "OCL_SEED", default_value_t = 20240517)]
    seed: u64,
    /// Worker threads for sampled checks.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Verify a certificate file.
    Verify { path: PathBuf },
    /// The commutator identity for η_α(u), η_α(1−u) and its bounds.
    Ghys {
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        alpha: i64,
        /// Also build the refined certificate.
        #[arg(long)]
        refined: bool,
        /// Admit an imported lemma; only `translations-xi2` is known.
        #[arg(long)]
        axiom: Option<String>,
        /// Write the refined certificate here.
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// π-soundness of the relator schemas and the standard St₂ identities.
    SteinbergCheck {
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Divisibility of boundary classes, Alexander polynomial, cyclicity.
    Alexander {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value = "2")]
        u: String,
        /// Lines `m: ...` and `l: ...`; defaults to the last generator and the last column.
        #[arg(long)]
        boundary: Option<PathBuf>,
    },
    /// Certificates for [m, l] in the (p, q) torus knot group.
    TorusKnot {
        #[arg(short)]
        p: i64,
        #[arg(short)]
        q: i64,
        /// Write the commutator certificate here.
        #[arg(long)]
        cert_out: Option<PathBuf>,
        /// Write the relator product here.
        #[arg(long)]
        relator_out: Option<PathBuf>,
    },
    /// Transport of [x_α(s), x_α(t)] through ψ.
    Psi {
        #[arg(long, default_value = "2")]
        a: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        alpha: i64,
        /// Build translation certificates without imports.
        #[arg(long)]
        constructive: bool,
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Bounded search for a commutator certificate.
    Search {
        #[arg(long)]
        target: Option<String>,
        /// `steinberg` or `torus:p,q`.
        #[arg(long, default_value = "steinberg")]
        presentation: String,
        #[arg(long, default_value_t = 4)]
        max_cost: usize,
        /// Longest conjugator subword tried.
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 20000)]
        budget: usize,
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = commands::Opts { seed: cli.seed, jobs: cli.jobs };
    match commands::run(&cli.cmd, &opts) {
        Ok((rep, ok)) => {
            let json = rep.to_json();
            if let Some(p) = &cli.out {
                if let Err(e) = std::fs::write(p, &json) {
                    eprintln!("error: cannot write {}: {}", p.display(), e);
                    return ExitCode::from(2);
                }
            }
            if cli.json {
                print!("{}", json);
            } else {
                for l in &rep.summary {
                    println!("{}", l);
                }
                println!("digest {}", rep.digest());
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}

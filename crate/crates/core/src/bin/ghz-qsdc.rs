use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ghz_qsdc::harness::{emit_tables, run_experiment, verify_identities, RunConfig};

#[derive(Parser)]
#[command(name = "ghz-qsdc", version, about = "GHZ direct communication: experiments, identity checks, decoding tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded Monte Carlo experiment and emit a report.
    Run(RunArgs),
    /// Check every state decomposition identity.
    Verify {
        #[arg(long)]
        json: bool,
    },
    /// Derive and print the decoding tables.
    Tables {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Key-value config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_parser = ["1", "2"])]
    protocol: Option<String>,
    #[arg(long, value_parser = ["original", "revised"])]
    variant: Option<String>,
    #[arg(long, value_parser = ["honest", "attack"])]
    trent: Option<String>,
    /// Attacking Trent's announcement policy.
    #[arg(long, value_parser = ["default", "genuine", "random"])]
    announce: Option<String>,
    /// Message bits per session.
    #[arg(long)]
    bits: Option<String>,
    #[arg(long)]
    check_fraction: Option<String>,
    /// Abort threshold on the check-bit error rate.
    #[arg(long)]
    threshold: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Number of sessions.
    #[arg(long)]
    repeat: Option<String>,
    #[arg(long, value_parser = ["json", "csv"])]
    format: Option<String>,
    #[arg(long, value_parser = ["identity", "repetition3"])]
    ecc: Option<String>,
    /// Probability of flipping each decoded bit.
    #[arg(long)]
    noise: Option<String>,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn config(&self) -> ghz_qsdc::Result<RunConfig> {
        let mut config = match &self.config {
            Some(path) => {
                let mut c = RunConfig::default();
                c.merge_text(&std::fs::read_to_string(path)?)?;
                c
            }
            None => RunConfig::default(),
        };
        let flags = [
            ("protocol", &self.protocol),
            ("variant", &self.variant),
            ("trent", &self.trent),
            ("announce", &self.announce),
            ("bits", &self.bits),
            ("check_fraction", &self.check_fraction),
            ("threshold", &self.threshold),
            ("seed", &self.seed),
            ("repeat", &self.repeat),
            ("format", &self.format),
            ("ecc", &self.ecc),
            ("noise", &self.noise),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                config.set(key, v)?;
            }
        }
        if self.timing {
            config.include_timing = true;
        }
        config.validate()?;
        Ok(config)
    }
}

fn run(args: &RunArgs) -> ghz_qsdc::Result<bool> {
    let config = args.config()?;
    let report = run_experiment(&config)?;
    let text = report.render(config.output_format)?;
    match &args.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    let violations = report.violations();
    for v in &violations {
        eprintln!("invariant violated: {v}");
    }
    Ok(violations.is_empty())
}

fn verify(json: bool) -> ghz_qsdc::Result<bool> {
    let residuals = verify_identities()?;
    if json {
        println!("{}", serde_json::to_string_pretty(&residuals)?);
    } else {
        for r in &residuals {
            let mark = if r.holds() { "ok  " } else { "FAIL" };
            println!("{mark} #{:<4} residual {:.3e}  {}", r.id, r.residual, r.description);
        }
    }
    Ok(residuals.iter().all(|r| r.holds()))
}

fn tables(json: bool) -> ghz_qsdc::Result<bool> {
    let reports = emit_tables()?;
    if json {
        println!("{}", serde_json::to_string_pretty(&reports)?);
    } else {
        for r in &reports {
            println!("{}", r.render());
        }
    }
    Ok(reports.iter().all(|r| r.matches_reference != Some(false)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run(args) => run(args),
        Command::Verify { json } => verify(*json),
        Command::Tables { json } => tables(*json),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

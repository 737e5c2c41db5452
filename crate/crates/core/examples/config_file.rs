//! Loading an experiment from the key-value config format and emitting
//! both report formats.
//!
//! cargo run -p ghz-qsdc --example config_file

use ghz_qsdc::harness::{run_experiment, OutputFormat, RunConfig};

const CONFIG: &str = "
# protocol 2, phase-flip encoding, attacking Trent
protocol = 2
variant = revised
trent = attack
announce = random
bits = 400
repeat = 3
seed = 17
";

fn main() -> ghz_qsdc::Result<()> {
    let config = RunConfig::from_text(CONFIG)?;
    let report = run_experiment(&config)?;
    print!("{}", report.render(OutputFormat::Csv)?);
    println!();
    let json = report.render(OutputFormat::Json)?;
    println!("{}", json.lines().take(24).collect::<Vec<_>>().join("\n"));
    Ok(())
}

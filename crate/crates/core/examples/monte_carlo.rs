//! Seeded Monte Carlo experiments across all protocol, encoding and Trent
//! combinations, summarised from the JSON-serialisable report.
//!
//! cargo run -p ghz-qsdc --release --example monte_carlo

use ghz_qsdc::harness::{run_experiment, RunConfig, TrentMode};
use ghz_qsdc::protocol::{EncodingVariant, ProtocolId};

fn main() -> ghz_qsdc::Result<()> {
    println!("proto variant  trent   bob_err            trent_guess        z_equal  aborts");
    for protocol in ProtocolId::ALL {
        for variant in EncodingVariant::ALL {
            for trent in [TrentMode::Honest, TrentMode::Attack] {
                let config = RunConfig {
                    protocol,
                    variant,
                    trent,
                    message_length: 2_000,
                    rounds_repeat: 10,
                    seed: 42,
                    ..RunConfig::default()
                };
                let r = run_experiment(&config)?;
                let e = r.bob_error_rate;
                let guess = r.trent_guess_accuracy.map_or("-".to_string(), |g| {
                    format!("{:.4} [{:.3},{:.3}]", g.value, g.lower, g.upper)
                });
                println!(
                    "{protocol:<5} {variant:<8} {:<7} {:.4} [{:.3},{:.3}] {guess:<18} {:<8} {:.1}",
                    format!("{trent:?}").to_lowercase(),
                    e.value,
                    e.lower,
                    e.upper,
                    r.z_equal_fraction
                        .map_or("-".to_string(), |z| format!("{z:.4}")),
                    r.abort_fraction
                );
            }
        }
    }
    Ok(())
}

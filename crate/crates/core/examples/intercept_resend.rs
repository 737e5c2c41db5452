//! Trent's intercept-measure-resend attack on protocol 1, against the
//! bit-flip and the phase-flip encodings.
//!
//! cargo run -p ghz-qsdc --example intercept_resend

use ghz_qsdc::adversary::{attack_metrics, TrentStrategy};
use ghz_qsdc::protocol::{
    run_session, EncodingVariant, ErrorCorrection, ProtocolId, SessionPlan, SessionSettings,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> ghz_qsdc::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let message: Vec<bool> = (0..32).map(|_| rng.random()).collect();
    let plan = SessionPlan::generate(
        message.clone(),
        0.5,
        ErrorCorrection::Identity,
        &mut ChaCha8Rng::seed_from_u64(8),
        &mut ChaCha8Rng::seed_from_u64(9),
    )?;
    let show = |bits: &[bool]| {
        bits.iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect::<String>()
    };
    println!("Alice's message:      {}", show(&message));

    for variant in EncodingVariant::ALL {
        let settings = SessionSettings::new(
            ProtocolId::Protocol1,
            variant,
            TrentStrategy::attack_for(ProtocolId::Protocol1),
        );
        let outcome = run_session(&settings, &plan, |i| ChaCha8Rng::seed_from_u64(i as u64))?;
        let metrics = attack_metrics(&outcome.transcripts)?;
        // Check positions are revealed after the fact, so Trent drops them.
        let stolen: Vec<bool> = outcome
            .transcripts
            .iter()
            .filter(|t| !t.is_check_bit)
            .filter_map(|t| t.adversary_guess())
            .collect();
        println!("\n{variant} encoding");
        println!("  Trent's reading:    {}", show(&stolen));
        println!(
            "  guess accuracy {:.3}, z outcomes equal {:.3}, Bob's check error rate {:.3}, abort {}",
            metrics.guess_accuracy,
            metrics.z_equal_fraction,
            metrics.bob_error_rate.unwrap_or(0.0),
            outcome.abort
        );
    }
    Ok(())
}

//! Alice sends a short text to Bob through an honest Trent, with check bits
//! interleaved and a repetition code on the message.
//!
//! cargo run -p ghz-qsdc --example honest_session

use ghz_qsdc::adversary::TrentStrategy;
use ghz_qsdc::protocol::{
    run_session, EncodingVariant, ErrorCorrection, ProtocolId, SessionPlan, SessionSettings,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn to_bits(text: &str) -> Vec<bool> {
    text.bytes()
        .flat_map(|b| (0..8).rev().map(move |i| b >> i & 1 == 1))
        .collect()
}

fn to_text(bits: &[bool]) -> String {
    bits.chunks(8)
        .map(|c| c.iter().fold(0u8, |acc, &b| acc << 1 | u8::from(b)) as char)
        .collect()
}

fn main() -> ghz_qsdc::Result<()> {
    let text = "meet at noon";
    let plan = SessionPlan::generate(
        to_bits(text),
        0.5,
        ErrorCorrection::Repetition3,
        &mut ChaCha8Rng::seed_from_u64(1),
        &mut ChaCha8Rng::seed_from_u64(2),
    )?;
    for protocol in ProtocolId::ALL {
        let settings =
            SessionSettings::new(protocol, EncodingVariant::Revised, TrentStrategy::Honest);
        let outcome = run_session(&settings, &plan, |i| {
            ChaCha8Rng::seed_from_u64(1000 + i as u64)
        })?;
        println!(
            "protocol {protocol}: {} rounds, {} check rounds, error rate {:.3}, abort {}",
            outcome.transcripts.len(),
            outcome.check_rounds,
            outcome.error_rate,
            outcome.abort
        );
        if let Some(message) = outcome.message {
            println!("  Bob reads {:?}", to_text(&message));
        }
    }
    Ok(())
}

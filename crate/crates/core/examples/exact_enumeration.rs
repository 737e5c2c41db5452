//! Exact transcript distributions of single rounds, without sampling.
//!
//! cargo run -p ghz-qsdc --example exact_enumeration

use ghz_qsdc::adversary::TrentStrategy;
use ghz_qsdc::protocol::{enumerate_round, exact_error_probability, EncodingVariant, ProtocolId};

fn main() -> ghz_qsdc::Result<()> {
    let protocol = ProtocolId::Protocol1;
    let trent = TrentStrategy::attack_for(protocol);
    for variant in EncodingVariant::ALL {
        for bit in [false, true] {
            println!("protocol {protocol}, {variant}, bit {}:", u8::from(bit));
            for (t, p) in enumerate_round(protocol, variant, bit, trent)? {
                let a = t.adversary.expect("attacked round");
                println!(
                    "  p={p:.4}  z=({}, {}) guess={}  Trent {}  Bob {}  decoded {}",
                    a.z_outcome_a,
                    a.z_outcome_t,
                    u8::from(a.guessed_bit),
                    t.trent_announcement,
                    t.bob_measurement,
                    u8::from(t.decoded_bit)
                );
            }
            println!(
                "  P(Bob errs) = {:.6}",
                exact_error_probability(protocol, variant, bit, trent)?
            );
        }
    }
    Ok(())
}

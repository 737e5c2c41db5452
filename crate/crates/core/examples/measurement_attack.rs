//! Trent's measurement attack on protocol 2, where Alice's qubit reaches
//! him legitimately, under both announcement policies.
//!
//! cargo run -p ghz-qsdc --example measurement_attack

use ghz_qsdc::adversary::{attack_p2, AnnouncementPolicy};
use ghz_qsdc::protocol::{encode_bit, EncodingVariant};
use ghz_qsdc::qsim::{make_ghz, XOutcome};
use ghz_qsdc::QUBIT_B;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> ghz_qsdc::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for variant in EncodingVariant::ALL {
        for policy in [
            AnnouncementPolicy::UniformRandom,
            AnnouncementPolicy::GenuineMeasurement,
        ] {
            println!("{variant} encoding, {policy:?} announcements");
            for bit in [false, true] {
                let state = encode_bit(variant, bit, &make_ghz())?;
                let attack = attack_p2(&state, policy, &mut rng)?;
                let bob = attack.state.probabilities::<XOutcome>(&[QUBIT_B])?;
                println!(
                    "  sent {}: z(A)={} z(T)={} -> guess {}, announces {}, Bob P(+)={:.2}",
                    u8::from(bit),
                    attack.record.z_outcome_a,
                    attack.record.z_outcome_t,
                    u8::from(attack.record.guessed_bit),
                    attack.announcement,
                    bob[0]
                );
            }
        }
    }
    Ok(())
}

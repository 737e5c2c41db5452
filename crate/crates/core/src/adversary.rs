//! Trent's behaviours: honest authenticator, or insider attacker.
//!
//! Both attacks share the same core. Trent rotates Alice's qubit with a
//! Hadamard, which undoes the `H` of her encoding, and then reads qubit A
//! and his own qubit T in the computational basis. Equal outcomes are read
//! as bit 0 and different outcomes as bit 1. Against the bit-flip encoding
//! this recovers every bit; against the phase-flip encoding both outcomes
//! always agree, so the rule collapses to a constant guess.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::protocol::{ProtocolId, RoundTranscript};
use crate::qsim::{BellOutcome, Branching, Gate, Outcome, StateVector, XOutcome, ZOutcome};
use crate::{QUBIT_A, QUBIT_T};

/// What a Trent who has already measured his qubit publishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AnnouncementPolicy {
    /// Publish the outcome of actually performing the announced measurement
    /// on the (collapsed) register.
    GenuineMeasurement,
    /// Publish a uniformly random outcome.
    UniformRandom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TrentStrategy {
    Honest,
    Attack(AnnouncementPolicy),
}

impl TrentStrategy {
    /// The attack with its default announcement policy: a genuine `x`
    /// measurement against protocol 1, random Bell outcomes against protocol 2.
    pub fn attack_for(protocol: ProtocolId) -> Self {
        match protocol {
            ProtocolId::Protocol1 => TrentStrategy::Attack(AnnouncementPolicy::GenuineMeasurement),
            ProtocolId::Protocol2 => TrentStrategy::Attack(AnnouncementPolicy::UniformRandom),
        }
    }

    pub fn is_attack(self) -> bool {
        matches!(self, TrentStrategy::Attack(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AttackRecord {
    pub z_outcome_a: ZOutcome,
    pub z_outcome_t: ZOutcome,
    pub guessed_bit: bool,
}

impl AttackRecord {
    pub fn new(z_outcome_a: ZOutcome, z_outcome_t: ZOutcome) -> Self {
        AttackRecord {
            z_outcome_a,
            z_outcome_t,
            guessed_bit: z_outcome_a != z_outcome_t,
        }
    }

    pub fn outcomes_equal(&self) -> bool {
        self.z_outcome_a == self.z_outcome_t
    }
}

fn rotate_and_read<B: Branching + ?Sized>(
    state: &StateVector,
    source: &mut B,
) -> Result<(AttackRecord, StateVector)> {
    let rotated = state.apply_gate(Gate::Hadamard, QUBIT_A)?;
    let (z_a, state) = rotated.measure::<ZOutcome, _>(&[QUBIT_A], source)?;
    let (z_t, state) = state.measure::<ZOutcome, _>(&[QUBIT_T], source)?;
    Ok((AttackRecord::new(z_a, z_t), state))
}

/// Intercept-measure-resend on protocol 1.
///
/// Returns the collapsed register: qubit A travels on to Bob, qubit T stays
/// with Trent for his later announcement.
pub fn attack_p1<B: Branching + ?Sized>(
    state: &StateVector,
    source: &mut B,
) -> Result<(AttackRecord, StateVector)> {
    rotate_and_read(state, source)
}

#[derive(Debug, Clone)]
pub struct P2Attack {
    pub record: AttackRecord,
    pub announcement: BellOutcome,
    /// Register after Trent's measurements; Bob measures qubit B of it.
    pub state: StateVector,
}

/// Measurement attack on protocol 2, where Trent legitimately holds qubit A.
pub fn attack_p2<B: Branching + ?Sized>(
    state: &StateVector,
    policy: AnnouncementPolicy,
    source: &mut B,
) -> Result<P2Attack> {
    let (record, state) = rotate_and_read(state, source)?;
    let (announcement, state) = match policy {
        AnnouncementPolicy::GenuineMeasurement => {
            state.measure::<BellOutcome, _>(&[QUBIT_A, QUBIT_T], source)?
        }
        AnnouncementPolicy::UniformRandom => (uniform_choice(source), state),
    };
    Ok(P2Attack {
        record,
        announcement,
        state,
    })
}

/// Honest step-(g) behaviour: measure qubit T in the `x` basis and publish it.
pub fn honest_p1_announcement<B: Branching + ?Sized>(
    state: &StateVector,
    source: &mut B,
) -> Result<(XOutcome, StateVector)> {
    state.measure::<XOutcome, _>(&[QUBIT_T], source)
}

/// Honest step-(f') behaviour: Bell-measure (A, T) and publish it.
pub fn honest_p2_announcement<B: Branching + ?Sized>(
    state: &StateVector,
    source: &mut B,
) -> Result<(BellOutcome, StateVector)> {
    state.measure::<BellOutcome, _>(&[QUBIT_A, QUBIT_T], source)
}

/// Trent's protocol-1 announcement once he has decided how to behave.
pub(crate) fn p1_announcement<B: Branching + ?Sized>(
    trent: TrentStrategy,
    state: &StateVector,
    source: &mut B,
) -> Result<(XOutcome, StateVector)> {
    match trent {
        TrentStrategy::Honest | TrentStrategy::Attack(AnnouncementPolicy::GenuineMeasurement) => {
            honest_p1_announcement(state, source)
        }
        TrentStrategy::Attack(AnnouncementPolicy::UniformRandom) => {
            Ok((uniform_choice(source), state.clone()))
        }
    }
}

pub(crate) fn uniform_choice<O: Outcome, B: Branching + ?Sized>(source: &mut B) -> O {
    let weights = vec![1.0 / O::ALL.len() as f64; O::ALL.len()];
    O::ALL[source.pick(&weights)]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AttackMetrics {
    /// Fraction of rounds where Trent's guess equals Alice's bit.
    pub guess_accuracy: f64,
    /// Bob's error rate over check rounds; `None` if there were none.
    pub bob_error_rate: Option<f64>,
    /// Fraction of rounds where Trent's two `z` outcomes agreed.
    pub z_equal_fraction: f64,
}

pub fn attack_metrics(transcripts: &[RoundTranscript]) -> Result<AttackMetrics> {
    if transcripts.is_empty() {
        return Err(Error::InvalidArgument("no transcripts to score".into()));
    }
    let mut correct = 0usize;
    let mut equal = 0usize;
    for t in transcripts {
        let record = t.adversary.ok_or_else(|| {
            Error::InvalidArgument("transcript from a round without an attack".into())
        })?;
        correct += usize::from(record.guessed_bit == t.sent_bit);
        equal += usize::from(record.outcomes_equal());
    }
    let checks: Vec<_> = transcripts.iter().filter(|t| t.is_check_bit).collect();
    let bob_error_rate = (!checks.is_empty()).then(|| {
        checks.iter().filter(|t| t.decoded_bit != t.sent_bit).count() as f64 / checks.len() as f64
    });
    let n = transcripts.len() as f64;
    Ok(AttackMetrics {
        guess_accuracy: correct as f64 / n,
        bob_error_rate,
        z_equal_fraction: equal as f64 / n,
    })
}
